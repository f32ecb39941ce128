//! Spin-1/2 tomographic representation.
//!
//! A measurement direction is parametrised by angles (alpha, beta) through
//! the unit vector n = (cos alpha sin beta, sin alpha sin beta, cos beta),
//! and the dequantizer reads
//!
//! U(m, alpha, beta) = I/2 - m cos(alpha) sin(beta) sigma_x
//!                         - m sin(alpha) sin(beta) sigma_y
//!                         + m cos(beta)  sigma_z,
//!
//! so that w(x) = Tr(rho U(x)) is the probability of outcome m along n.
//! The quantizer is D(x) = 3 U(x) - I.
//!
//! Two integration conventions coexist and both are exposed:
//!
//! * the *tomographic measure* on (alpha, beta), carrying a 1/(2 pi) factor,
//!   with total mass 2 per spin branch — tomogram slices integrate to 1
//!   against it and all kernel quadratures use it;
//! * the *duality measure* used for operator-valued integrals (state
//!   reconstruction, the reproducing identity), which halves the per-spin
//!   weight so that the integrals of U and D over all points equal the
//!   identity operator exactly.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::Mat2;
use crate::numerics::{gauss_legendre, QuadratureRule};
use crate::qstate::{pauli, Axis, DensityMatrix};

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// Spin projection outcome, m = +1/2 or -1/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    pub const BOTH: [Spin; 2] = [Spin::Up, Spin::Down];

    pub fn value(self) -> f64 {
        match self {
            Spin::Up => 0.5,
            Spin::Down => -0.5,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Spin::Up => 0,
            Spin::Down => 1,
        }
    }

    pub fn flipped(self) -> Spin {
        match self {
            Spin::Up => Spin::Down,
            Spin::Down => Spin::Up,
        }
    }
}

/// A point of the tomographic sample space: outcome and direction angles.
///
/// Construction canonicalises the angles: beta is folded into [0, pi]
/// (shifting alpha by pi when the fold reflects the direction) and alpha is
/// reduced mod 2 pi. The folding leaves the measurement direction unchanged.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TomoPoint {
    pub m: Spin,
    pub alpha: f64,
    pub beta: f64,
}

impl TomoPoint {
    pub fn new(m: Spin, alpha: f64, beta: f64) -> Self {
        let (alpha, beta) = canonical_angles(alpha, beta);
        TomoPoint { m, alpha, beta }
    }

    /// Direction cosines (cos a sin b, sin a sin b, cos b).
    pub fn direction(&self) -> [f64; 3] {
        [
            self.alpha.cos() * self.beta.sin(),
            self.alpha.sin() * self.beta.sin(),
            self.beta.cos(),
        ]
    }
}

fn canonical_angles(alpha: f64, beta: f64) -> (f64, f64) {
    let mut b = beta.rem_euclid(TWO_PI);
    let mut a = alpha;
    if b > std::f64::consts::PI {
        b = TWO_PI - b;
        a += std::f64::consts::PI;
    }
    (a.rem_euclid(TWO_PI), b)
}

/// Dequantizer U(x); Hermitian with unit trace.
pub fn dequantizer(x: &TomoPoint) -> Mat2 {
    let m = x.m.value();
    let [nx, ny, nz] = x.direction();
    let mut u = Mat2::identity().scale_re(0.5);
    u = u.add(&pauli(Axis::X).scale_re(-m * nx));
    u = u.add(&pauli(Axis::Y).scale_re(-m * ny));
    u = u.add(&pauli(Axis::Z).scale_re(m * nz));
    u
}

/// Quantizer D(x) = 3 U(x) - I; Hermitian with unit trace.
pub fn quantizer(x: &TomoPoint) -> Mat2 {
    dequantizer(x).scale_re(3.0).sub(&Mat2::identity())
}

/// Tomogram value w(x) = Tr(rho U(x)).
pub fn tomogram_of(rho: &DensityMatrix, x: &TomoPoint) -> f64 {
    let t = rho.matrix().mul(&dequantizer(x)).trace();
    debug_assert!(t.im.abs() < 1e-12);
    t.re
}

/// Complex symbol Tr(X U(x)) of an arbitrary matrix; tomograms are the
/// special case of a state input.
pub fn symbol_of(x_mat: &Mat2, x: &TomoPoint) -> Complex64 {
    x_mat.mul(&dequantizer(x)).trace()
}

/// Bilinear pairing Tr(U(x) D(y)) of dequantizer and quantizer; integrating
/// it against any symbol with the duality measure reproduces the symbol.
pub fn reproducing_kernel(x: &TomoPoint, y: &TomoPoint) -> f64 {
    let t = dequantizer(x).mul(&quantizer(y)).trace();
    debug_assert!(t.im.abs() < 1e-12);
    t.re
}

/// Product quadrature grid over the direction angles.
///
/// alpha carries the uniform periodic rule on [0, 2 pi); beta carries a
/// Gauss-Legendre rule in u = cos(beta). The combined weight of a node
/// includes the 1/(2 pi) normalisation, so all weights sum to 2.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularGrid {
    alpha: Vec<f64>,
    beta: Vec<f64>,
    beta_weight: Vec<f64>,
}

impl AngularGrid {
    pub fn new(n_alpha: usize, n_beta: usize) -> Result<Self> {
        if n_alpha < 1 || n_beta < 1 {
            return Err(Error::EmptyRule);
        }
        let alpha = (0..n_alpha)
            .map(|j| TWO_PI * j as f64 / n_alpha as f64)
            .collect();
        let gl: QuadratureRule = gauss_legendre(n_beta, -1.0, 1.0)?;
        // Ascending beta order: u = cos(beta) descends as beta grows.
        let mut pairs: Vec<(f64, f64)> = gl
            .nodes
            .iter()
            .zip(&gl.weights)
            .map(|(&u, &w)| (u.acos(), w))
            .collect();
        pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        Ok(AngularGrid {
            alpha,
            beta: pairs.iter().map(|p| p.0).collect(),
            beta_weight: pairs.iter().map(|p| p.1).collect(),
        })
    }

    /// Default grid, exact for every integrand of degree <= 2 appearing in
    /// the spin-1/2 representation.
    pub fn default_grid() -> Self {
        AngularGrid::new(8, 4).expect("default grid")
    }

    pub fn n_alpha(&self) -> usize {
        self.alpha.len()
    }

    pub fn n_beta(&self) -> usize {
        self.beta.len()
    }

    pub fn alpha(&self, ia: usize) -> f64 {
        self.alpha[ia]
    }

    pub fn beta(&self, ib: usize) -> f64 {
        self.beta[ib]
    }

    /// Combined (alpha, beta) weight, 1/(2 pi) included.
    pub fn weight(&self, _ia: usize, ib: usize) -> f64 {
        self.beta_weight[ib] / self.alpha.len() as f64
    }

    pub fn point(&self, m: Spin, ia: usize, ib: usize) -> TomoPoint {
        TomoPoint {
            m,
            alpha: self.alpha[ia],
            beta: self.beta[ib],
        }
    }

    pub fn nodes_per_spin(&self) -> usize {
        self.alpha.len() * self.beta.len()
    }

    /// Sum of the combined weights; equals 2 by construction.
    pub fn total_measure(&self) -> f64 {
        let per_alpha: f64 = self.beta_weight.iter().sum();
        per_alpha
    }

    /// Quadrature of a scalar function over (alpha, beta) with the
    /// tomographic measure.
    pub fn integrate(&self, f: impl Fn(f64, f64) -> f64) -> f64 {
        let mut acc = 0.0;
        for ia in 0..self.alpha.len() {
            for ib in 0..self.beta.len() {
                acc += self.weight(ia, ib) * f(self.alpha[ia], self.beta[ib]);
            }
        }
        acc
    }

    /// Operator-valued integral over all points with the duality measure
    /// (per-spin weight halved); satisfies `integrate_operator(U) = I`.
    pub fn integrate_operator(&self, f: impl Fn(TomoPoint) -> Mat2) -> Mat2 {
        let mut acc = Mat2::zero();
        for m in Spin::BOTH {
            for ia in 0..self.alpha.len() {
                for ib in 0..self.beta.len() {
                    let w = 0.5 * self.weight(ia, ib);
                    acc = acc.add(&f(self.point(m, ia, ib)).scale_re(w));
                }
            }
        }
        acc
    }
}

/// Inner product (1 / 2 pi) * integral conj(f) g sin(beta) d beta d alpha of
/// two functions on the direction angles, evaluated on the grid. The four
/// functions {1, cos a sin b, sin a sin b, cos b} are orthogonal with norms
/// squared {2, 2/3, 2/3, 2/3} under it.
pub fn inner_product(
    grid: &AngularGrid,
    f: impl Fn(f64, f64) -> f64,
    g: impl Fn(f64, f64) -> f64,
) -> f64 {
    grid.integrate(|a, b| f(a, b) * g(a, b))
}

/// A spin tomogram sampled on an angular grid: one real value per
/// (m, alpha, beta) node.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitTomogram {
    grid: AngularGrid,
    values: Vec<f64>,
}

impl QubitTomogram {
    pub fn from_values(grid: AngularGrid, values: Vec<f64>) -> Self {
        assert_eq!(values.len(), 2 * grid.nodes_per_spin());
        QubitTomogram { grid, values }
    }

    pub fn grid(&self) -> &AngularGrid {
        &self.grid
    }

    fn idx(&self, m: Spin, ia: usize, ib: usize) -> usize {
        (m.index() * self.grid.n_alpha() + ia) * self.grid.n_beta() + ib
    }

    pub fn value(&self, m: Spin, ia: usize, ib: usize) -> f64 {
        self.values[self.idx(m, ia, ib)]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Largest deviation from the pointwise normalisation
    /// sum_m w(m, alpha, beta) = 1.
    pub fn spin_sum_defect(&self) -> f64 {
        let mut d: f64 = 0.0;
        for ia in 0..self.grid.n_alpha() {
            for ib in 0..self.grid.n_beta() {
                let s = self.value(Spin::Up, ia, ib) + self.value(Spin::Down, ia, ib);
                d = d.max((s - 1.0).abs());
            }
        }
        d
    }

    /// Grid integral of one spin slice with the tomographic measure;
    /// equals 1 for the tomogram of a state.
    pub fn slice_integral(&self, m: Spin) -> f64 {
        let mut acc = 0.0;
        for ia in 0..self.grid.n_alpha() {
            for ib in 0..self.grid.n_beta() {
                acc += self.grid.weight(ia, ib) * self.value(m, ia, ib);
            }
        }
        acc
    }

    /// Range violation: how far any value falls outside [0, 1].
    pub fn range_defect(&self) -> f64 {
        self.values
            .iter()
            .fold(0.0f64, |d, &v| d.max((-v).max(v - 1.0).max(0.0)))
    }

    pub fn max_abs_diff(&self, other: &QubitTomogram) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .fold(0.0f64, |d, (a, b)| d.max((a - b).abs()))
    }
}

/// Evaluate the tomogram of a state on every node of the grid.
pub fn sample_tomogram(rho: &DensityMatrix, grid: &AngularGrid) -> QubitTomogram {
    let mut values = Vec::with_capacity(2 * grid.nodes_per_spin());
    for m in Spin::BOTH {
        for ia in 0..grid.n_alpha() {
            for ib in 0..grid.n_beta() {
                values.push(tomogram_of(rho, &grid.point(m, ia, ib)));
            }
        }
    }
    QubitTomogram {
        grid: grid.clone(),
        values,
    }
}

/// Complex symbol of an arbitrary matrix sampled on the grid; layout matches
/// `QubitTomogram`.
pub fn sample_symbol(x_mat: &Mat2, grid: &AngularGrid) -> Vec<Complex64> {
    let mut values = Vec::with_capacity(2 * grid.nodes_per_spin());
    for m in Spin::BOTH {
        for ia in 0..grid.n_alpha() {
            for ib in 0..grid.n_beta() {
                values.push(symbol_of(x_mat, &grid.point(m, ia, ib)));
            }
        }
    }
    values
}

fn reconstruct_grid_check(grid: &AngularGrid) -> Result<()> {
    if grid.n_alpha() < 4 || grid.n_beta() < 2 {
        return Err(Error::GridTooCoarse {
            min_alpha: 4,
            min_beta: 2,
            got_alpha: grid.n_alpha(),
            got_beta: grid.n_beta(),
        });
    }
    Ok(())
}

/// Reconstruct an operator from its sampled complex symbol:
/// X = integral D(x) f(x) dx with the duality measure.
pub fn reconstruct_operator(grid: &AngularGrid, symbol: &[Complex64]) -> Result<Mat2> {
    reconstruct_grid_check(grid)?;
    assert_eq!(symbol.len(), 2 * grid.nodes_per_spin());
    let mut acc = Mat2::zero();
    let mut k = 0;
    for m in Spin::BOTH {
        for ia in 0..grid.n_alpha() {
            for ib in 0..grid.n_beta() {
                let w = 0.5 * grid.weight(ia, ib);
                let d = quantizer(&grid.point(m, ia, ib));
                acc = acc.add(&d.scale(symbol[k] * w));
                k += 1;
            }
        }
    }
    Ok(acc)
}

/// Reconstruct the state from its tomogram; exact on grids with at least
/// 4 x 2 nodes because every integrand is a trigonometric polynomial of
/// degree two or less.
pub fn reconstruct(w: &QubitTomogram) -> Result<DensityMatrix> {
    reconstruct_grid_check(w.grid())?;
    let symbol: Vec<Complex64> = w.values().iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let m = reconstruct_operator(w.grid(), &symbol)?;
    DensityMatrix::new(m)
}
