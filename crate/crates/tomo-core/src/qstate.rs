//! Qubit states and channels: density matrices, Bloch vectors, Kraus sets,
//! Pauli mixtures, affine Bloch maps, Choi matrices and the CP test.
//!
//! Conventions are fixed once here and inherited everywhere else: the Pauli
//! basis is the standard one (sigma_x real off-diagonal, sigma_y imaginary
//! off-diagonal, sigma_z diagonal) and a state is written as
//! rho = (I + a . sigma) / 2 with a real Bloch vector a.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{Mat2, Mat4, C_ONE, C_ZERO};

const HERMITICITY_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;
const EIGENVALUE_TOL: f64 = 1e-12;
const BLOCH_TOL: f64 = 1e-12;
const KRAUS_TP_TOL: f64 = 1e-10;
const PROBABILITY_TOL: f64 = 1e-12;

/// Measurement axes of the three Pauli operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];
}

pub fn pauli(axis: Axis) -> Mat2 {
    match axis {
        Axis::X => Mat2([[C_ZERO, C_ONE], [C_ONE, C_ZERO]]),
        Axis::Y => Mat2([
            [C_ZERO, Complex64::new(0.0, -1.0)],
            [Complex64::new(0.0, 1.0), C_ZERO],
        ]),
        Axis::Z => Mat2([[C_ONE, C_ZERO], [C_ZERO, Complex64::new(-1.0, 0.0)]]),
    }
}

/// Real 3-vector parametrising a qubit state through the Pauli basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        BlochVector { x, y, z }
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }
}

/// 2x2 Hermitian, unit-trace, positive-semidefinite matrix.
///
/// The stored matrix is exactly Hermitian: construction validates the input
/// within tolerance and then symmetrises, so `entry(i, j) == conj(entry(j, i))`
/// holds bit for bit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix {
    m: Mat2,
}

impl DensityMatrix {
    pub fn new(m: Mat2) -> Result<Self> {
        let defect = m.hermiticity_defect();
        if defect > HERMITICITY_TOL {
            return Err(Error::NotHermitian(defect));
        }
        let mut h = m;
        h.0[0][0] = Complex64::new(m.0[0][0].re, 0.0);
        h.0[1][1] = Complex64::new(m.0[1][1].re, 0.0);
        let off = (m.0[0][1] + m.0[1][0].conj()).scale(0.5);
        h.0[0][1] = off;
        h.0[1][0] = off.conj();

        let tr = h.trace().re;
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::TraceNotOne(tr));
        }
        let eig = h.hermitian_eigenvalues();
        if eig[0] < -EIGENVALUE_TOL {
            return Err(Error::NotPositive(eig[0]));
        }
        Ok(DensityMatrix { m: h })
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.m
    }

    pub fn maximally_mixed() -> Self {
        DensityMatrix {
            m: Mat2::identity().scale_re(0.5),
        }
    }

    pub fn eigenvalues(&self) -> [f64; 2] {
        self.m.hermitian_eigenvalues()
    }
}

/// rho = (I + a . sigma) / 2. Rejects |a| > 1 within tolerance.
pub fn bloch_to_density(a: BlochVector) -> Result<DensityMatrix> {
    let norm = a.norm();
    if norm > 1.0 + BLOCH_TOL {
        return Err(Error::BlochNormExceeded(norm));
    }
    let mut m = Mat2::identity();
    m = m.add(&pauli(Axis::X).scale_re(a.x));
    m = m.add(&pauli(Axis::Y).scale_re(a.y));
    m = m.add(&pauli(Axis::Z).scale_re(a.z));
    DensityMatrix::new(m.scale_re(0.5))
}

/// Inverse of `bloch_to_density`: a_i = Tr(rho sigma_i).
pub fn density_to_bloch(rho: &DensityMatrix) -> BlochVector {
    let m = rho.matrix();
    BlochVector {
        x: m.mul(&pauli(Axis::X)).trace().re,
        y: m.mul(&pauli(Axis::Y)).trace().re,
        z: m.mul(&pauli(Axis::Z)).trace().re,
    }
}

/// Kraus representation {A_i} with sum_i A_i^dag A_i = I.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    ops: Vec<Mat2>,
}

impl KrausChannel {
    pub fn new(ops: Vec<Mat2>) -> Result<Self> {
        if ops.is_empty() {
            return Err(Error::KrausNotTracePreserving(1.0));
        }
        let mut sum = Mat2::zero();
        for a in &ops {
            sum = sum.add(&a.adjoint().mul(a));
        }
        let dev = sum.max_abs_diff(&Mat2::identity());
        if dev > KRAUS_TP_TOL {
            return Err(Error::KrausNotTracePreserving(dev));
        }
        Ok(KrausChannel { ops })
    }

    pub fn operators(&self) -> &[Mat2] {
        &self.ops
    }

    pub fn identity() -> Self {
        KrausChannel {
            ops: vec![Mat2::identity()],
        }
    }

    /// Single-unitary channel conjugating by a Pauli operator.
    pub fn pauli_unitary(axis: Axis) -> Self {
        KrausChannel {
            ops: vec![pauli(axis)],
        }
    }

    /// Amplitude damping with decay probability gamma.
    pub fn amplitude_damping(gamma: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&gamma) {
            return Err(Error::InvalidProbabilities {
                sum: gamma,
                min: gamma,
            });
        }
        let a0 = Mat2([
            [C_ONE, C_ZERO],
            [C_ZERO, Complex64::new((1.0 - gamma).sqrt(), 0.0)],
        ]);
        let a1 = Mat2([
            [C_ZERO, Complex64::new(gamma.sqrt(), 0.0)],
            [C_ZERO, C_ZERO],
        ]);
        KrausChannel::new(vec![a0, a1])
    }

    /// Apply the channel: sum_i A_i X A_i^dag on an arbitrary matrix.
    pub fn apply_matrix(&self, x: &Mat2) -> Mat2 {
        let mut out = Mat2::zero();
        for a in &self.ops {
            out = out.add(&a.mul(x).mul(&a.adjoint()));
        }
        out
    }
}

/// Probabilities (p_I, p_x, p_y, p_z) of a mixture of Pauli unitaries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliMixture {
    p: [f64; 4],
}

impl PauliMixture {
    pub fn new(p_id: f64, p_x: f64, p_y: f64, p_z: f64) -> Result<Self> {
        let p = [p_id, p_x, p_y, p_z];
        let sum: f64 = p.iter().sum();
        let min = p.iter().cloned().fold(f64::INFINITY, f64::min);
        if min < -PROBABILITY_TOL || (sum - 1.0).abs() > PROBABILITY_TOL {
            return Err(Error::InvalidProbabilities { sum, min });
        }
        Ok(PauliMixture { p })
    }

    pub fn probabilities(&self) -> [f64; 4] {
        self.p
    }

    /// Equivalent Kraus set {sqrt(p_a) sigma_a}.
    pub fn to_kraus(&self) -> KrausChannel {
        let mut ops = Vec::new();
        let mats = [
            Mat2::identity(),
            pauli(Axis::X),
            pauli(Axis::Y),
            pauli(Axis::Z),
        ];
        for (p, m) in self.p.iter().zip(mats.iter()) {
            if *p > 0.0 {
                ops.push(m.scale_re(p.sqrt()));
            }
        }
        KrausChannel { ops }
    }

    pub fn apply_matrix(&self, x: &Mat2) -> Mat2 {
        let mats = [
            Mat2::identity(),
            pauli(Axis::X),
            pauli(Axis::Y),
            pauli(Axis::Z),
        ];
        let mut out = Mat2::zero();
        for (p, s) in self.p.iter().zip(mats.iter()) {
            out = out.add(&s.mul(x).mul(s).scale_re(*p));
        }
        out
    }
}

/// Affine Bloch map a -> t + diag(lambda) a in the canonical (diagonal) form.
///
/// Carries no intrinsic CP constraint; complete positivity is decided by the
/// Choi test alone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineQubitChannel {
    pub t: [f64; 3],
    pub lambda: [f64; 3],
}

impl AffineQubitChannel {
    pub fn new(t: [f64; 3], lambda: [f64; 3]) -> Self {
        AffineQubitChannel { t, lambda }
    }

    pub fn bloch_action(&self, a: BlochVector) -> BlochVector {
        BlochVector {
            x: self.t[0] + self.lambda[0] * a.x,
            y: self.t[1] + self.lambda[1] * a.y,
            z: self.t[2] + self.lambda[2] * a.z,
        }
    }

    /// Linear extension to arbitrary 2x2 matrices: the trace component is
    /// translated, the Pauli components are scaled.
    pub fn apply_matrix(&self, x: &Mat2) -> Mat2 {
        let x0 = x.trace().scale(0.5);
        let mut out = Mat2::identity().scale(x0);
        for (i, axis) in Axis::ALL.iter().enumerate() {
            let s = pauli(*axis);
            let c = s.mul(x).trace().scale(0.5);
            let coef = x0 * self.t[i] + c * self.lambda[i];
            out = out.add(&s.scale(coef));
        }
        out
    }
}

/// A qubit channel in one of the three supported presentations.
#[derive(Debug, Clone, PartialEq)]
pub enum ChannelSpec {
    Kraus(KrausChannel),
    Pauli(PauliMixture),
    Affine(AffineQubitChannel),
}

impl ChannelSpec {
    /// Linear action on an arbitrary matrix (not necessarily a state).
    pub fn apply_matrix(&self, x: &Mat2) -> Mat2 {
        match self {
            ChannelSpec::Kraus(k) => k.apply_matrix(x),
            ChannelSpec::Pauli(p) => p.apply_matrix(x),
            ChannelSpec::Affine(a) => a.apply_matrix(x),
        }
    }
}

/// Apply a channel to a state.
///
/// For affine specifications the output Bloch vector is exactly
/// t + diag(lambda) a; if it leaves the Bloch ball the error reports the
/// norm as evidence that the map is not CP, rather than clipping.
pub fn apply_channel(spec: &ChannelSpec, rho: &DensityMatrix) -> Result<DensityMatrix> {
    match spec {
        ChannelSpec::Affine(aff) => {
            let a = aff.bloch_action(density_to_bloch(rho));
            let norm = a.norm();
            if norm > 1.0 + BLOCH_TOL {
                return Err(Error::NonCpEvidence(norm));
            }
            bloch_to_density(a)
        }
        _ => DensityMatrix::new(spec.apply_matrix(rho.matrix())),
    }
}

/// Choi matrix of a channel: C = sum_{ij} E_ij (x) Phi(E_ij) on the matrix
/// units E_ij, with the input factor first. Hermitian for any channel that
/// preserves Hermiticity; positive semidefinite iff the channel is CP.
#[derive(Debug, Clone, PartialEq)]
pub struct ChoiMatrix {
    m: Mat4,
}

impl ChoiMatrix {
    pub fn matrix(&self) -> &Mat4 {
        &self.m
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.m.hermitian_eigenvalues()[0]
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.m.hermitian_eigenvalues()
    }

    /// Partial trace over the output factor; equals I for trace-preserving
    /// channels.
    pub fn partial_trace_output(&self) -> Mat2 {
        let mut out = Mat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = C_ZERO;
                for k in 0..2 {
                    acc += self.m.get(2 * i + k, 2 * j + k);
                }
                out.0[i][j] = acc;
            }
        }
        out
    }

    /// Assemble from the four blocks Phi(E_ij).
    pub fn from_blocks(blocks: &[[Mat2; 2]; 2]) -> Self {
        let mut m = Mat4::zero();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        m.set(2 * i + k, 2 * j + l, blocks[i][j].get(k, l));
                    }
                }
            }
        }
        ChoiMatrix { m }
    }
}

/// Matrix unit E_ij = |i><j|.
pub fn matrix_unit(i: usize, j: usize) -> Mat2 {
    let mut m = Mat2::zero();
    m.0[i][j] = C_ONE;
    m
}

/// Build the Choi matrix by applying the channel to the four matrix units.
pub fn choi_of(spec: &ChannelSpec) -> ChoiMatrix {
    let blocks = [
        [
            spec.apply_matrix(&matrix_unit(0, 0)),
            spec.apply_matrix(&matrix_unit(0, 1)),
        ],
        [
            spec.apply_matrix(&matrix_unit(1, 0)),
            spec.apply_matrix(&matrix_unit(1, 1)),
        ],
    ];
    ChoiMatrix::from_blocks(&blocks)
}

/// Outcome of the complete-positivity test on a Choi matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CpReport {
    pub is_cp: bool,
    pub min_eigenvalue: f64,
    pub tolerance: f64,
}

/// CP iff the Choi matrix is positive semidefinite within tolerance.
pub fn is_cp(choi: &ChoiMatrix, tol: f64) -> CpReport {
    let min = choi.min_eigenvalue();
    CpReport {
        is_cp: min >= -tol,
        min_eigenvalue: min,
        tolerance: tol,
    }
}

/// Sign selector for the translation component of an extreme-point channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// Extreme point of the set of (non-unital) qubit channels in canonical form:
/// lambda_z = lambda_x lambda_y and t_z^2 = (1 - lambda_x^2)(1 - lambda_y^2).
pub fn extreme_point_channel(lambda_x: f64, lambda_y: f64, sign: Sign) -> Result<AffineQubitChannel> {
    for l in [lambda_x, lambda_y] {
        if l.abs() > 1.0 {
            return Err(Error::LambdaOutOfRange(l));
        }
    }
    let t_z = sign.value() * ((1.0 - lambda_x * lambda_x) * (1.0 - lambda_y * lambda_y)).sqrt();
    Ok(AffineQubitChannel::new(
        [0.0, 0.0, t_z],
        [lambda_x, lambda_y, lambda_x * lambda_y],
    ))
}
