//! Shared quadrature and transform engine.
//!
//! Gauss-Legendre nodes are generated by Newton iteration on the Legendre
//! recurrence; every rule checks its own polynomial exactness when built.
//! The Fourier transform of a characteristic function along a ray is a plain
//! truncated trapezoid sum: all integrands in this crate are Gaussian
//! dominated, so truncation at |t| = 12 is already far below double
//! precision roundoff.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerances and truncation parameters shared across the crate.
#[derive(Debug, Clone)]
pub struct NumericsConfig {
    /// Tolerance on Choi eigenvalues when deciding complete positivity.
    pub cp_tolerance: f64,
    /// Tolerance for quadrature-based identity checks.
    pub quadrature_tolerance: f64,
    /// Tail magnitude above which a truncated integral is rejected.
    pub truncation_threshold: f64,
    /// Half width of the t-integration window for Fourier transforms.
    pub fourier_t_max: f64,
    /// Step of the t-integration window.
    pub fourier_dt: f64,
}

impl Default for NumericsConfig {
    fn default() -> Self {
        NumericsConfig {
            cp_tolerance: 1e-9,
            quadrature_tolerance: 1e-10,
            truncation_threshold: 1e-10,
            fourier_t_max: 12.0,
            fourier_dt: 0.05,
        }
    }
}

/// Nodes and weights of a 1-D quadrature rule on [a, b].
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub a: f64,
    pub b: f64,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Gauss-Legendre rule with `n` nodes mapped to [a, b].
///
/// Exact for polynomials of degree <= 2n - 1; the constructor verifies the
/// weight sum and the highest exactly-integrable even monomial.
pub fn gauss_legendre(n: usize, a: f64, b: f64) -> Result<QuadratureRule> {
    if n < 1 {
        return Err(Error::EmptyRule);
    }

    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];

    // Newton iteration on P_n over [-1, 1]; nodes are symmetric so only the
    // lower half is solved.
    for i in 0..(n + 1) / 2 {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre recurrence: (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}.
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 1..n {
                let p2 = ((2.0 * k as f64 + 1.0) * x * p1 - k as f64 * p0) / (k as f64 + 1.0);
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { x } else { p1 };
            dp = n as f64 * (x * pn - p0) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x.abs();
        nodes[n - 1 - i] = x.abs();
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }

    // Affine map to [a, b].
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    for i in 0..n {
        nodes[i] = mid + half * nodes[i];
        weights[i] *= half;
    }

    let rule = QuadratureRule { nodes, weights, a, b };
    rule_self_test(&rule, n)?;
    Ok(rule)
}

fn rule_self_test(rule: &QuadratureRule, n: usize) -> Result<()> {
    let measure: f64 = rule.weights.iter().sum();
    if (measure - (rule.b - rule.a)).abs() > 1e-13 * (rule.b - rule.a).abs().max(1.0) {
        return Err(Error::QuadratureSelfTest(format!(
            "weight sum {measure} != interval length {}",
            rule.b - rule.a
        )));
    }
    if rule.weights.iter().any(|&w| w <= 0.0) {
        return Err(Error::QuadratureSelfTest("non-positive weight".into()));
    }
    // Highest even monomial inside the exactness degree 2n - 1.
    let deg = 2 * n - 2;
    let exact = (rule.b.powi(deg as i32 + 1) - rule.a.powi(deg as i32 + 1)) / (deg as f64 + 1.0);
    let got = rule.integrate(|x| x.powi(deg as i32));
    let scale = rule
        .nodes
        .iter()
        .fold(1.0f64, |m, &x| m.max(x.abs()))
        .powi(deg as i32)
        * (rule.b - rule.a);
    if (got - exact).abs() > 1e-12 * scale.max(1.0) {
        return Err(Error::QuadratureSelfTest(format!(
            "degree-{deg} monomial: got {got}, expected {exact}"
        )));
    }
    Ok(())
}

/// Uniform rule for periodic integrands on [0, period): nodes j*period/n,
/// equal weights. Exact for trigonometric polynomials of degree < n.
pub fn periodic_trapezoid(n: usize, period: f64) -> Result<QuadratureRule> {
    if n < 1 {
        return Err(Error::EmptyRule);
    }
    let h = period / n as f64;
    Ok(QuadratureRule {
        nodes: (0..n).map(|j| j as f64 * h).collect(),
        weights: vec![h; n],
        a: 0.0,
        b: period,
    })
}

/// Uniform symmetric grid on [-half_width, half_width] with n nodes (n odd
/// keeps 0 on the grid). Used for quadrature lines and convolutions.
#[derive(Debug, Clone, PartialEq)]
pub struct LineGrid {
    pub half_width: f64,
    pub n: usize,
}

impl LineGrid {
    pub fn new(half_width: f64, n: usize) -> Result<Self> {
        if n < 2 || half_width <= 0.0 {
            return Err(Error::EmptyRule);
        }
        Ok(LineGrid { half_width, n })
    }

    /// Default quadrature line: x in [-8, 8], 401 nodes.
    pub fn default_line() -> Self {
        LineGrid { half_width: 8.0, n: 401 }
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / (self.n - 1) as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        -self.half_width + i as f64 * self.spacing()
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.node(i))
    }

    /// Trapezoid weight of node i.
    pub fn weight(&self, i: usize) -> f64 {
        if i == 0 || i == self.n - 1 {
            0.5 * self.spacing()
        } else {
            self.spacing()
        }
    }

    pub fn trapezoid(&self, values: &[f64]) -> f64 {
        assert_eq!(values.len(), self.n);
        values
            .iter()
            .enumerate()
            .map(|(i, v)| self.weight(i) * v)
            .sum()
    }

    /// Index of the mirrored node -x_i.
    pub fn mirror(&self, i: usize) -> usize {
        self.n - 1 - i
    }
}

/// Gaussian scaling-convolution on a line grid:
///
/// out(x) = (2 pi alpha)^(-1/2) * integral exp(-(x - k x')^2 / (2 alpha)) f(x') dx'
///
/// evaluated by the trapezoid rule on the same grid. Errors out when the
/// sampled function has not decayed at the grid edges.
pub fn gaussian_convolve(
    values: &[f64],
    k: f64,
    alpha: f64,
    grid: &LineGrid,
    threshold: f64,
) -> Result<Vec<f64>> {
    assert_eq!(values.len(), grid.n);
    assert!(alpha > 0.0, "gaussian_convolve needs alpha > 0");
    let tail = values[0].abs().max(values[grid.n - 1].abs());
    if tail > threshold {
        return Err(Error::InsufficientDecay { tail, threshold });
    }
    let norm = 1.0 / (2.0 * std::f64::consts::PI * alpha).sqrt();
    let inv2a = 1.0 / (2.0 * alpha);
    let out = (0..grid.n)
        .map(|i| {
            let x = grid.node(i);
            let mut acc = 0.0;
            for j in 0..grid.n {
                let d = x - k * grid.node(j);
                acc += grid.weight(j) * (-d * d * inv2a).exp() * values[j];
            }
            norm * acc
        })
        .collect();
    Ok(out)
}

/// Truncated oscillatory transform along a ray:
///
/// (1 / 2 pi) * integral_{-T}^{T} exp(-i x t) f(t) dt
///
/// by the trapezoid rule with step dt.
pub fn fourier_line_transform(
    f: impl Fn(f64) -> Complex64,
    x: f64,
    t_max: f64,
    dt: f64,
) -> Complex64 {
    let steps = (2.0 * t_max / dt).round() as usize;
    let h = 2.0 * t_max / steps as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..=steps {
        let t = -t_max + j as f64 * h;
        let w = if j == 0 || j == steps { 0.5 * h } else { h };
        acc += w * Complex64::new(0.0, -x * t).exp() * f(t);
    }
    acc / (2.0 * std::f64::consts::PI)
}

/// Largest tail magnitude |f(-T)|, |f(T)| of the integrand; used to flag
/// transforms of functions that do not decay inside the window.
pub fn tail_magnitude(f: impl Fn(f64) -> Complex64, t_max: f64) -> f64 {
    f(-t_max).norm().max(f(t_max).norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQRT_PI: f64 = 1.772_453_850_905_516;

    #[test]
    fn gauss_legendre_one_node() {
        let r = gauss_legendre(1, -1.0, 1.0).unwrap();
        assert!((r.nodes[0]).abs() < 1e-15);
        assert!((r.weights[0] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn gauss_legendre_two_nodes_closed_form() {
        // Textbook nodes +-1/sqrt(3), weights 1, which integrate x^2 and x^3
        // exactly.
        let r = gauss_legendre(2, -1.0, 1.0).unwrap();
        let inv_sqrt3 = 1.0 / 3.0f64.sqrt();
        assert!((r.nodes[0] + inv_sqrt3).abs() < 1e-15);
        assert!((r.nodes[1] - inv_sqrt3).abs() < 1e-15);
        assert!((r.weights[0] - 1.0).abs() < 1e-15);
        assert!((r.weights[1] - 1.0).abs() < 1e-15);
        assert!((r.integrate(|x| x * x) - 2.0 / 3.0).abs() < 1e-15);
        assert!(r.integrate(|x| x * x * x).abs() < 1e-15);
    }

    #[test]
    fn gauss_legendre_four_nodes_degree_six() {
        let r = gauss_legendre(4, -1.0, 1.0).unwrap();
        assert!((r.integrate(|x| x.powi(6)) - 2.0 / 7.0).abs() < 1e-14);
    }

    #[test]
    fn gauss_legendre_mapped_interval() {
        let r = gauss_legendre(6, 0.0, 3.0).unwrap();
        // integral_0^3 x^5 dx = 3^6 / 6 = 121.5
        assert!((r.integrate(|x| x.powi(5)) - 121.5).abs() < 1e-11);
    }

    #[test]
    fn gauss_legendre_rejects_zero_nodes() {
        assert!(gauss_legendre(0, -1.0, 1.0).is_err());
    }

    #[test]
    fn periodic_rule_integrates_harmonics() {
        let r = periodic_trapezoid(8, 2.0 * std::f64::consts::PI).unwrap();
        assert!((r.integrate(|_| 1.0) - 2.0 * std::f64::consts::PI).abs() < 1e-13);
        for deg in 1..8 {
            assert!(r.integrate(|a| (deg as f64 * a).cos()).abs() < 1e-13);
            assert!(r.integrate(|a| (deg as f64 * a).sin()).abs() < 1e-13);
        }
        // cos^2 = (1 + cos 2a)/2 integrates to pi.
        assert!((r.integrate(|a| a.cos().powi(2)) - std::f64::consts::PI).abs() < 1e-13);
    }

    #[test]
    fn convolve_near_delta_limit() {
        // The grid must resolve the near-delta kernel: sigma = 0.01 needs a
        // spacing well below it.
        let grid = LineGrid::new(8.0, 4001).unwrap();
        let f: Vec<f64> = grid.nodes().map(|x| (-x * x).exp() / SQRT_PI).collect();
        let out = gaussian_convolve(&f, 1.0, 1e-4, &grid, 1e-10).unwrap();
        let dev = f
            .iter()
            .zip(&out)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        assert!(dev < 1e-3, "near-delta deviation {dev}");
    }

    #[test]
    fn convolve_gaussian_moment_law() {
        // Unit-variance Gaussian through k = 1, alpha = 1 gives variance 2.
        let grid = LineGrid::new(12.0, 601).unwrap();
        let f: Vec<f64> = grid
            .nodes()
            .map(|x| (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt())
            .collect();
        let out = gaussian_convolve(&f, 1.0, 1.0, &grid, 1e-10).unwrap();
        let mass = grid.trapezoid(&out);
        let mean: f64 = grid
            .nodes()
            .enumerate()
            .map(|(i, x)| grid.weight(i) * x * out[i])
            .sum::<f64>()
            / mass;
        let var: f64 = grid
            .nodes()
            .enumerate()
            .map(|(i, x)| grid.weight(i) * (x - mean) * (x - mean) * out[i])
            .sum::<f64>()
            / mass;
        assert!((mass - 1.0).abs() < 1e-10, "mass {mass}");
        assert!(mean.abs() < 1e-10);
        assert!((var - 2.0).abs() < 1e-8, "variance {var}");
    }

    #[test]
    fn convolve_scaled_moments() {
        // Variance-1/2 Gaussian through k = 2, alpha = 0.5: mean 0,
        // variance k^2/2 + 1/2 = 2.5.
        let grid = LineGrid::new(16.0, 801).unwrap();
        let f: Vec<f64> = grid.nodes().map(|x| (-x * x).exp() / SQRT_PI).collect();
        let out = gaussian_convolve(&f, 2.0, 0.5, &grid, 1e-10).unwrap();
        let mass = grid.trapezoid(&out);
        let var: f64 = grid
            .nodes()
            .enumerate()
            .map(|(i, x)| grid.weight(i) * x * x * out[i])
            .sum::<f64>()
            / mass;
        assert!((var - 2.5).abs() < 1e-8, "variance {var}");
    }

    #[test]
    fn convolve_rejects_undecayed_input() {
        let grid = LineGrid::default_line();
        let f = vec![1.0; grid.n];
        assert!(matches!(
            gaussian_convolve(&f, 1.0, 1.0, &grid, 1e-10),
            Err(Error::InsufficientDecay { .. })
        ));
    }

    #[test]
    fn fourier_gaussian_at_origin() {
        // (1/2pi) integral exp(-t^2/4) dt = 1/sqrt(pi).
        let v = fourier_line_transform(
            |t| Complex64::new((-t * t / 4.0).exp(), 0.0),
            0.0,
            12.0,
            0.05,
        );
        assert!((v.re - 1.0 / SQRT_PI).abs() < 1e-12);
        assert!(v.im.abs() < 1e-14);
    }

    #[test]
    fn fourier_shift_theorem() {
        // exp(2it) exp(-t^2/4) evaluated at x = 2 folds back to 1/sqrt(pi).
        let v = fourier_line_transform(
            |t| (Complex64::new(0.0, 2.0 * t).exp()) * (-t * t / 4.0).exp(),
            2.0,
            12.0,
            0.05,
        );
        assert!((v.re - 1.0 / SQRT_PI).abs() < 1e-12);
        assert!(v.im.abs() < 1e-12);
    }

    #[test]
    fn tail_magnitude_flags_non_decaying() {
        let t = tail_magnitude(|_| Complex64::new(1.0, 0.0), 12.0);
        assert!(t > 1e-10);
        let t = tail_magnitude(|t| Complex64::new((-t * t / 4.0).exp(), 0.0), 12.0);
        assert!(t < 1e-15);
    }

    #[test]
    fn real_symmetric_transform_is_real() {
        let v = fourier_line_transform(
            |t| Complex64::new((-t * t / 2.0).exp() * (1.0 + t * t), 0.0),
            0.7,
            12.0,
            0.05,
        );
        assert!(v.im.abs() < 1e-12);
    }
}
