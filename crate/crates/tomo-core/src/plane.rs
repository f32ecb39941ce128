//! Probability density on the plane associated with an optical tomogram.
//!
//! In polar coordinates the density is the rescaled tomogram
//!
//!   Omega(r cos phi, r sin phi) = 2 omega(r, phi) / r,   r > 0,
//!
//! normalised so that (1/2pi) * integral Omega dx dy = 1: averaging the
//! radial mass of the rays against the uniform phase measure gives exactly
//! the full-line normalisation of the tomogram. Unlike the tomogram itself,
//! Omega is an honest probability density (up to the 1/2pi convention) and
//! Gaussian channels act on it through positive radial kernels.
//!
//! A plane point (x, y) with r > 0 belongs to exactly one ray, so the values
//! on rays phi and phi + pi are independent; reconstructing the
//! characteristic function or applying a channel therefore always combines a
//! ray with its antipodal partner, which together carry the full quadrature
//! line of the underlying tomogram.

use num_complex::Complex64;

use crate::boson::{apply_gaussian_kernel, GaussianChannelParams, OpticalTomogram};
use crate::error::{Error, Result};
use crate::numerics::{LineGrid, NumericsConfig};

/// Plane density sampled on a polar grid: r-nodes are the positive
/// quadrature nodes of the underlying line, phases are uniform on [0, 2pi).
///
/// `center` keeps the tomogram values at x = 0 per ray; the origin is not a
/// polar node but its quadrature panel still carries mass, and channel
/// application and normalisation need it to stay consistent with the
/// line-grid trapezoid sums.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneDistribution {
    r: Vec<f64>,
    n_phi: usize,
    /// Phase-major: values[iphi * n_r + ir].
    values: Vec<f64>,
    center: Vec<f64>,
}

impl PlaneDistribution {
    pub fn n_r(&self) -> usize {
        self.r.len()
    }

    pub fn n_phi(&self) -> usize {
        self.n_phi
    }

    pub fn r(&self, ir: usize) -> f64 {
        self.r[ir]
    }

    pub fn phi(&self, j: usize) -> f64 {
        2.0 * std::f64::consts::PI * j as f64 / self.n_phi as f64
    }

    pub fn value(&self, ir: usize, iphi: usize) -> f64 {
        self.values[iphi * self.r.len() + ir]
    }

    /// Most negative density value (0 if none).
    pub fn negativity(&self) -> f64 {
        self.values.iter().fold(0.0f64, |d, &v| d.max(-v))
    }

    /// (1/2pi) * integral Omega dx dy over the plane, by radial trapezoid
    /// sums (including the origin panel) averaged over the phase nodes.
    pub fn normalisation(&self) -> f64 {
        let mut acc = 0.0;
        for j in 0..self.n_phi {
            acc += self.ray_mass(j);
        }
        acc / self.n_phi as f64
    }

    /// integral_0^R r Omega dr along one ray: the radial mass 2 * integral
    /// omega(r) dr of that ray.
    fn ray_mass(&self, j: usize) -> f64 {
        let n = self.r.len();
        // Integrand r * Omega(r), extended to the origin by 2 * omega(0).
        let spacing = self.r[0];
        let mut vals = Vec::with_capacity(n + 1);
        vals.push(2.0 * self.center[j]);
        for i in 0..n {
            vals.push(self.r[i] * self.value(i, j));
        }
        let mut acc = 0.0;
        for (i, v) in vals.iter().enumerate() {
            let w = if i == 0 || i == n { 0.5 * spacing } else { spacing };
            acc += w * v;
        }
        acc
    }

    pub fn max_abs_diff(&self, other: &PlaneDistribution) -> f64 {
        assert_eq!(self.values.len(), other.values.len());
        self.values
            .iter()
            .zip(&other.values)
            .fold(0.0f64, |d, (a, b)| d.max((a - b).abs()))
    }

    /// Node maximising the radial mass r * Omega(r, phi), as (r, phi).
    ///
    /// The density itself grows like 1/r towards the origin on every ray
    /// with on-axis mass, so the pointwise maximum always sits at the
    /// innermost radius; the radial mass is the quantity whose peak tracks
    /// where the state actually concentrates.
    pub fn radial_mass_peak(&self) -> (f64, f64) {
        let mut best = (0usize, 0usize);
        let mut best_v = f64::NEG_INFINITY;
        for j in 0..self.n_phi {
            for i in 0..self.r.len() {
                let v = self.r[i] * self.value(i, j);
                if v > best_v {
                    best_v = v;
                    best = (i, j);
                }
            }
        }
        (self.r[best.0], self.phi(best.1))
    }
}

/// Build the plane density of a tomogram. The quadrature line must contain
/// x = 0 (odd node count) and the phase grid must pair antipodal rays.
pub fn plane_distribution(omega: &OpticalTomogram) -> Result<PlaneDistribution> {
    let g = omega.xgrid();
    if g.n % 2 == 0 {
        return Err(Error::QuadratureSelfTest(
            "plane representation needs an odd node count so that x = 0 is a node".into(),
        ));
    }
    if omega.n_phi() % 2 != 0 {
        return Err(Error::PhaseGridMisaligned(omega.n_phi()));
    }
    let mid = g.n / 2;
    let n_r = g.n - mid - 1;
    let r: Vec<f64> = (1..=n_r).map(|i| g.node(mid + i)).collect();
    let mut values = Vec::with_capacity(omega.n_phi() * n_r);
    let mut center = Vec::with_capacity(omega.n_phi());
    for j in 0..omega.n_phi() {
        center.push(omega.value(mid, j));
        for i in 1..=n_r {
            values.push(2.0 * omega.value(mid + i, j) / g.node(mid + i));
        }
    }
    Ok(PlaneDistribution {
        r,
        n_phi: omega.n_phi(),
        values,
        center,
    })
}

/// Exact inverse of `plane_distribution`: reassemble the tomogram, reading
/// x < 0 from the antipodal ray.
pub fn to_tomogram(plane: &PlaneDistribution) -> OpticalTomogram {
    let n_r = plane.r.len();
    let n = 2 * n_r + 1;
    let half_width = plane.r[n_r - 1];
    let grid = LineGrid::new(half_width, n).expect("line grid");
    let half = plane.n_phi / 2;
    let mut values = vec![0.0; plane.n_phi * n];
    for j in 0..plane.n_phi {
        let anti = (j + half) % plane.n_phi;
        for i in 0..n_r {
            // x > 0 from this ray.
            values[j * n + (n_r + 1 + i)] = plane.r[i] * plane.value(i, j) / 2.0;
            // x < 0 from the antipodal ray.
            values[j * n + (n_r - 1 - i)] = plane.r[i] * plane.value(i, anti) / 2.0;
        }
        values[j * n + n_r] = plane.center[j];
    }
    OpticalTomogram::from_values(grid, plane.n_phi, values)
}

/// Apply a Gaussian channel to the plane density.
///
/// Each output ray is the positive radial kernel
/// (2 pi alpha)^(-1/2) r' exp(-(r - k r')^2 / (2 alpha)) integrated over the
/// input ray and its antipodal partner (the r' < 0 half of the quadrature
/// line); the contravariant variant reads the input rays a quarter turn
/// behind, i.e. plane coordinates (x, y) -> (y, -x).
pub fn apply_plane_channel(
    plane: &PlaneDistribution,
    params: &GaussianChannelParams,
    config: &NumericsConfig,
) -> Result<PlaneDistribution> {
    // Boundary panel mass per ray; truncation is refused beyond 1e-8.
    let n_r = plane.r.len();
    let spacing = plane.r[0];
    let mut boundary: f64 = 0.0;
    for j in 0..plane.n_phi {
        let edge = plane.r[n_r - 1] * plane.value(n_r - 1, j) / 2.0
            + plane.r[n_r - 2] * plane.value(n_r - 2, j) / 2.0;
        boundary = boundary.max((edge * spacing).abs());
    }
    if boundary > 1e-8 {
        return Err(Error::BoundaryMass {
            mass: boundary,
            threshold: 1e-8,
        });
    }
    let omega = to_tomogram(plane);
    let out = apply_gaussian_kernel(&omega, params, config)?;
    plane_distribution(&out)
}

/// Characteristic function on a ray reconstructed from the plane density:
/// the ray and its antipodal partner jointly restore the full-line
/// transform F(t cos phi, t sin phi) = integral exp(itx) omega(x, phi) dx.
pub fn charfn_from_plane(plane: &PlaneDistribution, t: f64, phi: f64) -> Result<Complex64> {
    let omega = to_tomogram(plane);
    crate::boson::charfn_from_tomogram(&omega, t, phi)
}
