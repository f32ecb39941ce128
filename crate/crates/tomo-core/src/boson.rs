//! Optical tomography of a single bosonic mode.
//!
//! Quadrature convention: [Q, P] = i and the vacuum has <Q^2> = <P^2> = 1/2,
//! so the vacuum characteristic function is exp(-(q^2 + p^2)/4) and the
//! vacuum tomogram is the variance-1/2 Gaussian exp(-x^2)/sqrt(pi).
//!
//! The optical tomogram omega(x, phi) is the distribution of the rotated
//! quadrature X_phi = cos(phi) Q + sin(phi) P. It is linked to the
//! characteristic function F(q, p) along rays:
//!
//!   F(t cos phi, t sin phi) = integral exp(i t x) omega(x, phi) dx,
//!   omega(x, phi) = (1/2pi) integral exp(-i x t) F(t cos phi, t sin phi) dt.
//!
//! Gaussian channels scale the characteristic-function argument by k and
//! damp it by exp(-alpha (q^2+p^2)/2). On tomograms the same channel is a
//! 1-D Gaussian convolution per phase slice; the contravariant variant in
//! addition shifts the phase by a quarter turn, which on the phase grid is
//! an exact index rotation.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{gaussian_convolve, LineGrid, NumericsConfig};

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// Reference states of the mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BosonicState {
    Vacuum,
    /// Coherent state with quadrature means (q_mean, p_mean).
    Coherent { q: f64, p: f64 },
    /// Thermal state with mean photon number nbar >= 0.
    Thermal { nbar: f64 },
    /// Number state, n <= 10.
    Fock { n: u32 },
    /// Squeezed vacuum: r is the squeezing parameter, theta the axis phase;
    /// theta = 0 squeezes the Q quadrature to variance exp(-2r)/2.
    Squeezed { r: f64, theta: f64 },
}

impl BosonicState {
    pub fn validate(&self) -> Result<()> {
        match self {
            BosonicState::Thermal { nbar } if nbar.is_nan() || *nbar < 0.0 => Err(
                Error::InvalidStateParameter(format!("thermal nbar must be >= 0, got {nbar}")),
            ),
            BosonicState::Fock { n } if *n > 10 => Err(Error::InvalidStateParameter(format!(
                "fock n must be <= 10, got {n}"
            ))),
            BosonicState::Coherent { q, p } if !(q.is_finite() && p.is_finite()) => Err(
                Error::InvalidStateParameter("coherent means must be finite".into()),
            ),
            BosonicState::Squeezed { r, theta } if !(r.is_finite() && theta.is_finite()) => Err(
                Error::InvalidStateParameter("squeezing parameters must be finite".into()),
            ),
            _ => Ok(()),
        }
    }
}

/// Laguerre polynomial L_n(x) by the three-term recurrence.
pub fn laguerre(n: u32, x: f64) -> f64 {
    let mut l0 = 1.0;
    if n == 0 {
        return l0;
    }
    let mut l1 = 1.0 - x;
    for k in 1..n {
        let k = k as f64;
        let l2 = ((2.0 * k + 1.0 - x) * l1 - k * l0) / (k + 1.0);
        l0 = l1;
        l1 = l2;
    }
    l1
}

/// Characteristic function F(q, p) = Tr(rho exp(i(q Q + p P))).
///
/// F(0, 0) = 1 and F(-q, -p) = conj(F(q, p)) for any state.
#[derive(Clone)]
pub struct CharacteristicFn {
    f: Arc<dyn Fn(f64, f64) -> Complex64 + Send + Sync>,
}

impl std::fmt::Debug for CharacteristicFn {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fm.write_str("CharacteristicFn")
    }
}

impl CharacteristicFn {
    pub fn from_fn(f: impl Fn(f64, f64) -> Complex64 + Send + Sync + 'static) -> Self {
        CharacteristicFn { f: Arc::new(f) }
    }

    pub fn eval(&self, q: f64, p: f64) -> Complex64 {
        (self.f)(q, p)
    }

    /// Evaluate along the ray (t cos phi, t sin phi).
    pub fn eval_ray(&self, t: f64, phi: f64) -> Complex64 {
        self.eval(t * phi.cos(), t * phi.sin())
    }
}

/// Closed-form characteristic function of a reference state.
pub fn char_fn(state: &BosonicState) -> Result<CharacteristicFn> {
    state.validate()?;
    let state = *state;
    Ok(match state {
        BosonicState::Vacuum => CharacteristicFn::from_fn(|q, p| {
            Complex64::new((-(q * q + p * p) / 4.0).exp(), 0.0)
        }),
        BosonicState::Coherent { q: qm, p: pm } => CharacteristicFn::from_fn(move |q, p| {
            Complex64::new(0.0, q * qm + p * pm).exp() * (-(q * q + p * p) / 4.0).exp()
        }),
        BosonicState::Thermal { nbar } => CharacteristicFn::from_fn(move |q, p| {
            Complex64::new((-(2.0 * nbar + 1.0) * (q * q + p * p) / 4.0).exp(), 0.0)
        }),
        BosonicState::Fock { n } => CharacteristicFn::from_fn(move |q, p| {
            let s = (q * q + p * p) / 2.0;
            Complex64::new((-s / 2.0).exp() * laguerre(n, s), 0.0)
        }),
        BosonicState::Squeezed { r, theta } => CharacteristicFn::from_fn(move |q, p| {
            // Variance of q X + p Y for the squeezed covariance matrix
            // R(theta/2) diag(e^{-2r}, e^{2r}) R(theta/2)^T / 2.
            let half = theta / 2.0;
            let c = half.cos();
            let s = half.sin();
            // Components of (q, p) in the squeezing frame.
            let u = q * c + p * s;
            let v = -q * s + p * c;
            let var = ((-2.0 * r).exp() * u * u + (2.0 * r).exp() * v * v) / 2.0;
            Complex64::new((-var / 2.0).exp(), 0.0)
        }),
    })
}

/// Optical tomogram sampled on a quadrature line times a uniform phase grid.
#[derive(Debug, Clone, PartialEq)]
pub struct OpticalTomogram {
    xgrid: LineGrid,
    n_phi: usize,
    /// Phase-major layout: values[iphi * n_x + ix].
    values: Vec<f64>,
}

impl OpticalTomogram {
    pub fn from_values(xgrid: LineGrid, n_phi: usize, values: Vec<f64>) -> Self {
        assert_eq!(values.len(), n_phi * xgrid.n);
        OpticalTomogram {
            xgrid,
            n_phi,
            values,
        }
    }

    pub fn xgrid(&self) -> &LineGrid {
        &self.xgrid
    }

    pub fn n_phi(&self) -> usize {
        self.n_phi
    }

    pub fn phi(&self, j: usize) -> f64 {
        TWO_PI * j as f64 / self.n_phi as f64
    }

    pub fn value(&self, ix: usize, iphi: usize) -> f64 {
        self.values[iphi * self.xgrid.n + ix]
    }

    pub fn slice(&self, iphi: usize) -> &[f64] {
        &self.values[iphi * self.xgrid.n..(iphi + 1) * self.xgrid.n]
    }

    /// Trapezoid integral of one phase slice; 1 for a normalised tomogram.
    pub fn slice_integral(&self, iphi: usize) -> f64 {
        self.xgrid.trapezoid(self.slice(iphi))
    }

    /// Worst per-slice normalisation defect over all phases.
    pub fn normalisation_defect(&self) -> f64 {
        (0..self.n_phi).fold(0.0f64, |d, j| d.max((self.slice_integral(j) - 1.0).abs()))
    }

    /// Most negative value (0 if none).
    pub fn negativity(&self) -> f64 {
        self.values.iter().fold(0.0f64, |d, &v| d.max(-v))
    }

    /// Max defect of the antipodal symmetry omega(x, phi + pi) = omega(-x, phi).
    pub fn symmetry_defect(&self) -> f64 {
        let mut d: f64 = 0.0;
        let half = self.n_phi / 2;
        for j in 0..self.n_phi {
            let j2 = (j + half) % self.n_phi;
            for i in 0..self.xgrid.n {
                d = d.max((self.value(i, j2) - self.value(self.xgrid.mirror(i), j)).abs());
            }
        }
        d
    }

    /// Mean and variance of one phase slice by grid moments.
    pub fn moments(&self, iphi: usize) -> (f64, f64) {
        let s = self.slice(iphi);
        let mass = self.xgrid.trapezoid(s);
        let mut mean = 0.0;
        for (i, x) in self.xgrid.nodes().enumerate() {
            mean += self.xgrid.weight(i) * x * s[i];
        }
        mean /= mass;
        let mut var = 0.0;
        for (i, x) in self.xgrid.nodes().enumerate() {
            var += self.xgrid.weight(i) * (x - mean) * (x - mean) * s[i];
        }
        (mean, var / mass)
    }

    pub fn max_abs_diff(&self, other: &OpticalTomogram) -> f64 {
        assert_eq!(self.values.len(), other.values.len());
        self.values
            .iter()
            .zip(&other.values)
            .fold(0.0f64, |d, (a, b)| d.max((a - b).abs()))
    }
}

/// Compute the tomogram of a characteristic function on the product grid by
/// the truncated Fourier transform along each ray.
pub fn tomogram_from_charfn(
    f: &CharacteristicFn,
    xgrid: &LineGrid,
    n_phi: usize,
    config: &NumericsConfig,
) -> Result<OpticalTomogram> {
    let t_max = config.fourier_t_max;
    let steps = (2.0 * t_max / config.fourier_dt).round() as usize;
    let h = 2.0 * t_max / steps as f64;

    // Reject characteristic functions that have not decayed inside the
    // integration window on any ray.
    let mut tail: f64 = 0.0;
    for j in 0..n_phi {
        let phi = TWO_PI * j as f64 / n_phi as f64;
        tail = tail
            .max(f.eval_ray(-t_max, phi).norm())
            .max(f.eval_ray(t_max, phi).norm());
    }
    if tail > config.truncation_threshold {
        return Err(Error::InsufficientDecay {
            tail,
            threshold: config.truncation_threshold,
        });
    }

    let dx = xgrid.spacing();
    let x0 = -xgrid.half_width;
    let mut values = vec![0.0; n_phi * xgrid.n];
    let mut max_imag: f64 = 0.0;
    for j in 0..n_phi {
        let phi = TWO_PI * j as f64 / n_phi as f64;
        let ray: Vec<Complex64> = (0..=steps)
            .map(|s| {
                let t = -t_max + s as f64 * h;
                let w = if s == 0 || s == steps { 0.5 * h } else { h };
                f.eval_ray(t, phi) * w
            })
            .collect();
        for i in 0..xgrid.n {
            let x = x0 + i as f64 * dx;
            // Phase recurrence along t: exp(-i x t_{s+1}) = exp(-i x t_s) e^{-i x h}.
            let step = Complex64::new(0.0, -x * h).exp();
            let mut phase = Complex64::new(0.0, -x * (-t_max)).exp();
            let mut acc = Complex64::new(0.0, 0.0);
            for r in &ray {
                acc += *r * phase;
                phase *= step;
            }
            acc /= TWO_PI;
            max_imag = max_imag.max(acc.im.abs());
            values[j * xgrid.n + i] = acc.re;
        }
    }
    debug_assert!(max_imag < 1e-10, "imaginary residue {max_imag}");
    Ok(OpticalTomogram::from_values(xgrid.clone(), n_phi, values))
}

/// Characteristic function on a ray from the tomogram:
/// F(t cos phi, t sin phi) = integral exp(i t x) omega(x, phi) dx.
///
/// phi snaps to the nearest phase node; |t| must stay in the Nyquist-safe
/// range pi / dx of the quadrature grid.
pub fn charfn_from_tomogram(omega: &OpticalTomogram, t: f64, phi: f64) -> Result<Complex64> {
    let bound = std::f64::consts::PI / omega.xgrid().spacing();
    if t.abs() > bound {
        return Err(Error::TOutOfRange { t, bound });
    }
    let n = omega.n_phi() as f64;
    let iphi = (phi.rem_euclid(TWO_PI) / TWO_PI * n).round() as usize % omega.n_phi();
    let s = omega.slice(iphi);
    let g = omega.xgrid();
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, x) in g.nodes().enumerate() {
        acc += Complex64::new(0.0, t * x).exp() * (g.weight(i) * s[i]);
    }
    Ok(acc)
}

/// Which way the channel scales the characteristic-function argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelKind {
    Covariant,
    Contravariant,
}

/// Gaussian channel parameters (gain k, added noise alpha) with the
/// admissibility constraints enforced at construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianChannelParams {
    pub kind: ChannelKind,
    pub k: f64,
    pub alpha: f64,
}

impl GaussianChannelParams {
    pub fn new(kind: ChannelKind, k: f64, alpha: f64) -> Result<Self> {
        if k.is_nan() || k < 0.0 {
            return Err(Error::ChannelParameter(format!("k >= 0 (got k = {k})")));
        }
        match kind {
            ChannelKind::Covariant => {
                if k == 1.0 {
                    return Err(Error::ChannelParameter(
                        "k != 1 for the covariant channel".into(),
                    ));
                }
                let bound = (k * k - 1.0).abs() / 2.0;
                if alpha < bound {
                    return Err(Error::ChannelParameter(format!(
                        "alpha >= |k^2-1|/2 (k = {k} requires alpha >= {bound}, got {alpha})"
                    )));
                }
            }
            ChannelKind::Contravariant => {
                let bound = (k * k + 1.0) / 2.0;
                if alpha < bound {
                    return Err(Error::ChannelParameter(format!(
                        "alpha >= (k^2+1)/2 (k = {k} requires alpha >= {bound}, got {alpha})"
                    )));
                }
            }
        }
        Ok(GaussianChannelParams { kind, k, alpha })
    }
}

/// Action of the channel on the characteristic function:
/// covariant      F(q, p) -> F(k q, k p)  exp(-alpha (q^2+p^2)/2),
/// contravariant  F(q, p) -> F(k p, -k q) exp(-alpha (q^2+p^2)/2).
///
/// The contravariant argument map combines the k-scaled reflection with a
/// quarter turn of phase space, so that on tomograms it is exactly the
/// Gaussian convolution of the slice a quarter turn behind (see
/// `apply_gaussian_kernel`), matching the plane-representation rule
/// (x, y) -> (y, -x).
pub fn apply_gaussian_channel_direct(
    f: &CharacteristicFn,
    params: &GaussianChannelParams,
) -> CharacteristicFn {
    let inner = f.clone();
    let k = params.k;
    let alpha = params.alpha;
    match params.kind {
        ChannelKind::Covariant => CharacteristicFn::from_fn(move |q, p| {
            inner.eval(k * q, k * p) * (-alpha * (q * q + p * p) / 2.0).exp()
        }),
        ChannelKind::Contravariant => CharacteristicFn::from_fn(move |q, p| {
            inner.eval(k * p, -k * q) * (-alpha * (q * q + p * p) / 2.0).exp()
        }),
    }
}

/// Action of the channel on the tomogram: per phase slice,
///
/// out(x, phi) = (2 pi alpha)^(-1/2) integral exp(-(x - k x')^2 / (2 alpha))
///               in(x', phi') dx',
///
/// where phi' = phi for the covariant channel and phi' = phi - pi/2 for the
/// contravariant one. The quarter-turn shift is an exact index rotation and
/// requires the phase-node count to be a multiple of 4.
pub fn apply_gaussian_kernel(
    omega: &OpticalTomogram,
    params: &GaussianChannelParams,
    config: &NumericsConfig,
) -> Result<OpticalTomogram> {
    let n_phi = omega.n_phi();
    let shift = match params.kind {
        ChannelKind::Covariant => 0,
        ChannelKind::Contravariant => {
            if n_phi % 4 != 0 {
                return Err(Error::PhaseGridMisaligned(n_phi));
            }
            n_phi - n_phi / 4
        }
    };
    let mut values = vec![0.0; n_phi * omega.xgrid().n];
    for j in 0..n_phi {
        let src = (j + shift) % n_phi;
        let out = gaussian_convolve(
            omega.slice(src),
            params.k,
            params.alpha,
            omega.xgrid(),
            config.truncation_threshold,
        )?;
        values[j * omega.xgrid().n..(j + 1) * omega.xgrid().n].copy_from_slice(&out);
    }
    Ok(OpticalTomogram::from_values(
        omega.xgrid().clone(),
        n_phi,
        values,
    ))
}

/// Radial factor of the tomographic channel kernel:
/// (2 pi alpha)^(-1/2) exp(-(x - k x')^2 / (2 alpha)).
///
/// The full two-point kernel is this factor times a phase delta tying phi'
/// to phi (shifted a quarter turn back for the contravariant channel); the
/// delta is kept analytic, so only the radial part is evaluable pointwise.
/// It is strictly positive, which is what makes the map a genuine
/// stochastic kernel.
pub fn radial_kernel_value(params: &GaussianChannelParams, x: f64, xp: f64) -> f64 {
    let d = x - params.k * xp;
    (-d * d / (2.0 * params.alpha)).exp() / (TWO_PI * params.alpha).sqrt()
}

/// Marginals of the tomographic Gaussian kernel
/// K(x, phi; x', phi') = G_alpha(x - k x') delta(phi' - phi [- pi/2]):
/// integrating over the output pair gives 1 (trace preservation);
/// integrating over the input pair gives 1/k, divergent at k = 0.
///
/// The phase delta integrates to one analytically; the x-integrals are
/// trapezoid quadratures on lines sized to cover the Gaussian support.
pub fn kernel_marginals(params: &GaussianChannelParams) -> (f64, f64) {
    let sigma = params.alpha.sqrt();

    // Output integral: integral G_alpha(x - k x0') dx at x0' = 0.
    let out_grid = LineGrid::new((12.0 * sigma).max(8.0), 4001).expect("line grid");
    let output: f64 = (0..out_grid.n)
        .map(|i| out_grid.weight(i) * radial_kernel_value(params, out_grid.node(i), 0.0))
        .sum();

    // Input integral: integral G_alpha(x0 - k x') dx' at x0 = 0.
    let input = if params.k == 0.0 {
        f64::INFINITY
    } else {
        let in_grid =
            LineGrid::new((12.0 * sigma / params.k).max(8.0), 4001).expect("line grid");
        (0..in_grid.n)
            .map(|i| in_grid.weight(i) * radial_kernel_value(params, 0.0, in_grid.node(i)))
            .sum()
    };
    (output, input)
}
