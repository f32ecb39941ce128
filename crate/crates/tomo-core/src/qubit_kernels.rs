//! Integral kernels realising qubit channels on spin tomograms.
//!
//! A channel Phi induces a map on tomograms which can be written as
//!
//! (K w)(x) = integral K(x; x') w(x') dx'
//!
//! with the quadrature running over both spin outcomes and the angular grid
//! with the tomographic measure. All kernels here are diagonal in the spin
//! outcome (zero whenever m != m'). In terms of the orthogonal functions
//! f1 = cos a sin b, f2 = sin a sin b, f3 = cos b and the channel's Bloch
//! action a -> t + M a, the kernel reads
//!
//! K(x; x') = delta_{mm'} [ 1/2 + m (-t_x f1 - t_y f2 + t_z f3)(x)
//!                          + (3/2) sum_ij s_i s_j M_ij f_i(x) f_j(x') ],
//!
//! with signs s = (-1, -1, +1). For Kraus channels this is exactly the
//! m-diagonal restriction of sum_i Tr(U(x) A_i D(x') A_i^dag), which is how
//! `KrausDerived` kernels are evaluated.
//!
//! Kernels of trace-preserving channels integrate to one over the *output*
//! point for every fixed input point. The integral over the *input* point
//! equals one only for unital (t = 0) kernels: a translation necessarily
//! shows up in that marginal. Kernels are genuinely negative somewhere
//! (each Pauli kernel reaches -1), which is what separates them from
//! classical conditional probabilities.

use num_complex::Complex64;

use crate::error::Result;
use crate::linalg::Mat2;
use crate::numerics::NumericsConfig;
use crate::qstate::{
    AffineQubitChannel, Axis, ChannelSpec, ChoiMatrix, KrausChannel, PauliMixture,
};
use crate::qubit_tomography::{
    dequantizer, quantizer, sample_symbol, AngularGrid, QubitTomogram, Spin, TomoPoint,
};

/// Evaluable two-point kernel over the tomographic sample space.
#[derive(Debug, Clone, PartialEq)]
pub enum QubitKernel {
    Identity,
    PauliX,
    PauliY,
    PauliZ,
    GeneralAffine(AffineQubitChannel),
    KrausDerived(KrausChannel),
}

impl QubitKernel {
    /// Kernel realising a channel given in any supported presentation.
    pub fn for_channel(spec: &ChannelSpec) -> QubitKernel {
        match spec {
            ChannelSpec::Kraus(k) => QubitKernel::KrausDerived(k.clone()),
            ChannelSpec::Pauli(p) => QubitKernel::KrausDerived(p.to_kraus()),
            ChannelSpec::Affine(a) => QubitKernel::GeneralAffine(*a),
        }
    }

    pub fn eval(&self, x: &TomoPoint, y: &TomoPoint) -> f64 {
        match self {
            QubitKernel::Identity => {
                kernel_general(&AffineQubitChannel::new([0.0; 3], [1.0, 1.0, 1.0]), x, y)
            }
            QubitKernel::PauliX => kernel_sigma(Axis::X, x, y),
            QubitKernel::PauliY => kernel_sigma(Axis::Y, x, y),
            QubitKernel::PauliZ => kernel_sigma(Axis::Z, x, y),
            QubitKernel::GeneralAffine(aff) => kernel_general(aff, x, y),
            QubitKernel::KrausDerived(ch) => kernel_from_kraus(ch, x, y),
        }
    }
}

fn basis_functions(p: &TomoPoint) -> [f64; 3] {
    p.direction()
}

/// Closed-form kernel of the Pauli conjugation channel along `axis`.
pub fn kernel_sigma(axis: Axis, x: &TomoPoint, y: &TomoPoint) -> f64 {
    if x.m != y.m {
        return 0.0;
    }
    let f = basis_functions(x);
    let g = basis_functions(y);
    let signs = match axis {
        Axis::X => [1.0, -1.0, -1.0],
        Axis::Y => [-1.0, 1.0, -1.0],
        Axis::Z => [-1.0, -1.0, 1.0],
    };
    0.5 * (1.0 + 3.0 * (signs[0] * f[0] * g[0] + signs[1] * f[1] * g[1] + signs[2] * f[2] * g[2]))
}

/// Closed-form kernel of the affine channel a -> t + diag(lambda) a.
pub fn kernel_general(ch: &AffineQubitChannel, x: &TomoPoint, y: &TomoPoint) -> f64 {
    if x.m != y.m {
        return 0.0;
    }
    let m = x.m.value();
    let f = basis_functions(x);
    let g = basis_functions(y);
    let translation = m * (-ch.t[0] * f[0] - ch.t[1] * f[1] + ch.t[2] * f[2]);
    let scaling = ch.lambda[0] * f[0] * g[0] + ch.lambda[1] * f[1] * g[1] + ch.lambda[2] * f[2] * g[2];
    0.5 + translation + 1.5 * scaling
}

/// Kernel of a Kraus channel: the m-diagonal restriction of
/// sum_i Tr(U(x) A_i D(y) A_i^dag). The trace is real for any
/// Hermiticity-preserving channel; the imaginary residue is asserted away.
pub fn kernel_from_kraus(ch: &KrausChannel, x: &TomoPoint, y: &TomoPoint) -> f64 {
    if x.m != y.m {
        return 0.0;
    }
    let u = dequantizer(x);
    let d = quantizer(y);
    let mut acc = Complex64::new(0.0, 0.0);
    for a in ch.operators() {
        acc += u.mul(&a.mul(&d).mul(&a.adjoint())).trace();
    }
    assert!(
        acc.im.abs() < 1e-12,
        "kernel value has imaginary residue {}",
        acc.im
    );
    acc.re
}

/// Pointwise convex combination of the identity and Pauli kernels with the
/// mixture's probabilities; equal to the Kraus-derived kernel of the mixture.
pub fn mixture_kernel_value(p: &PauliMixture, x: &TomoPoint, y: &TomoPoint) -> f64 {
    let [p0, px, py, pz] = p.probabilities();
    p0 * QubitKernel::Identity.eval(x, y)
        + px * kernel_sigma(Axis::X, x, y)
        + py * kernel_sigma(Axis::Y, x, y)
        + pz * kernel_sigma(Axis::Z, x, y)
}

/// Apply a kernel to a tomogram by quadrature over the tomogram's grid.
pub fn apply_kernel(kernel: &QubitKernel, w: &QubitTomogram) -> QubitTomogram {
    let grid = w.grid();
    let mut values = Vec::with_capacity(2 * grid.nodes_per_spin());
    for m in Spin::BOTH {
        for ia in 0..grid.n_alpha() {
            for ib in 0..grid.n_beta() {
                let x = grid.point(m, ia, ib);
                let mut acc = 0.0;
                for mp in Spin::BOTH {
                    for ja in 0..grid.n_alpha() {
                        for jb in 0..grid.n_beta() {
                            let y = grid.point(mp, ja, jb);
                            acc += grid.weight(ja, jb) * kernel.eval(&x, &y) * w.value(mp, ja, jb);
                        }
                    }
                }
                values.push(acc);
            }
        }
    }
    QubitTomogram::from_values(grid.clone(), values)
}

/// Apply a kernel to a sampled complex symbol (layout as in
/// `sample_symbol`); used when reconstructing the channel from its kernel.
pub fn apply_kernel_symbol(
    kernel: &QubitKernel,
    grid: &AngularGrid,
    symbol: &[Complex64],
) -> Vec<Complex64> {
    assert_eq!(symbol.len(), 2 * grid.nodes_per_spin());
    let mut out = Vec::with_capacity(symbol.len());
    for m in Spin::BOTH {
        for ia in 0..grid.n_alpha() {
            for ib in 0..grid.n_beta() {
                let x = grid.point(m, ia, ib);
                let mut acc = Complex64::new(0.0, 0.0);
                let mut k = 0;
                for mp in Spin::BOTH {
                    for ja in 0..grid.n_alpha() {
                        for jb in 0..grid.n_beta() {
                            let y = grid.point(mp, ja, jb);
                            acc += symbol[k] * (grid.weight(ja, jb) * kernel.eval(&x, &y));
                            k += 1;
                        }
                    }
                }
                out.push(acc);
            }
        }
    }
    out
}

/// Angle substitution implementing conjugation by a Pauli operator:
/// sigma_a U(x) sigma_a = U(involution_a(x)) holds entrywise.
///
/// The substitutions are the reflections
///   x-axis: (alpha, beta) -> (-alpha, pi - beta),
///   y-axis: (alpha, beta) -> (pi - alpha, pi - beta),
///   z-axis: (alpha, beta) -> (alpha + pi, beta);
/// each one flips the two direction cosines that anticommute with sigma_a.
/// Quarter-turn shifts of the angles do not satisfy the identity (see the
/// unit tests, which document the mismatch).
pub fn angle_involution(axis: Axis, x: &TomoPoint) -> TomoPoint {
    let (alpha, beta) = match axis {
        Axis::X => (-x.alpha, std::f64::consts::PI - x.beta),
        Axis::Y => (std::f64::consts::PI - x.alpha, std::f64::consts::PI - x.beta),
        Axis::Z => (x.alpha + std::f64::consts::PI, x.beta),
    };
    TomoPoint::new(x.m, alpha, beta)
}

/// Reconstruct the channel a kernel realises and return its Choi matrix:
/// Phi(E_ij) = integral D(x) [ (K f_ij)(x) ] dx over the matrix units E_ij.
/// Needs a grid meeting the reconstruction minimum (4 x 2 nodes).
pub fn channel_from_kernel(kernel: &QubitKernel, grid: &AngularGrid) -> Result<ChoiMatrix> {
    let unit = |i: usize, j: usize| -> Mat2 {
        let mut m = Mat2::zero();
        m.0[i][j] = Complex64::new(1.0, 0.0);
        m
    };
    let image = |i: usize, j: usize| -> Result<Mat2> {
        let symbol = sample_symbol(&unit(i, j), grid);
        let mapped = apply_kernel_symbol(kernel, grid, &symbol);
        crate::qubit_tomography::reconstruct_operator(grid, &mapped)
    };
    let blocks = [
        [image(0, 0)?, image(0, 1)?],
        [image(1, 0)?, image(1, 1)?],
    ];
    Ok(ChoiMatrix::from_blocks(&blocks))
}

/// Numerical health report of a kernel.
#[derive(Debug, Clone)]
pub struct KernelDiagnostics {
    /// Max deviation from 1 of the integral over output points, taken over
    /// all input nodes (the trace-preservation marginal).
    pub row_integral_max_dev: f64,
    /// Most negative kernel value found on the scan grid (a lower bound on
    /// the true negativity).
    pub min_value: f64,
    /// Scan points attaining the minimum.
    pub min_value_location: (TomoPoint, TomoPoint),
    /// Smallest eigenvalue of the Choi matrix of the reconstructed channel.
    pub choi_min_eigenvalue: f64,
}

/// Scan grid for kernel negativity: 32 uniform alpha nodes, 16 beta nodes
/// placed at i pi / 16 for i = 1..=16, both spins on each side.
fn scan_points() -> Vec<TomoPoint> {
    let mut pts = Vec::with_capacity(2 * 32 * 16);
    for m in Spin::BOTH {
        for ja in 0..32 {
            let alpha = 2.0 * std::f64::consts::PI * ja as f64 / 32.0;
            for jb in 1..=16 {
                let beta = std::f64::consts::PI * jb as f64 / 16.0;
                pts.push(TomoPoint::new(m, alpha, beta));
            }
        }
    }
    pts
}

/// Integrate a kernel over the output point for a fixed input point.
pub fn output_marginal(kernel: &QubitKernel, grid: &AngularGrid, y: &TomoPoint) -> f64 {
    let mut acc = 0.0;
    for m in Spin::BOTH {
        for ia in 0..grid.n_alpha() {
            for ib in 0..grid.n_beta() {
                let x = grid.point(m, ia, ib);
                acc += grid.weight(ia, ib) * kernel.eval(&x, y);
            }
        }
    }
    acc
}

/// Integrate a kernel over the input point for a fixed output point; equals
/// one for unital kernels only.
pub fn input_marginal(kernel: &QubitKernel, grid: &AngularGrid, x: &TomoPoint) -> f64 {
    let mut acc = 0.0;
    for mp in Spin::BOTH {
        for ja in 0..grid.n_alpha() {
            for jb in 0..grid.n_beta() {
                let y = grid.point(mp, ja, jb);
                acc += grid.weight(ja, jb) * kernel.eval(x, &y);
            }
        }
    }
    acc
}

pub fn kernel_diagnostics(
    kernel: &QubitKernel,
    grid: &AngularGrid,
    config: &NumericsConfig,
) -> Result<KernelDiagnostics> {
    let mut row_dev: f64 = 0.0;
    for m in Spin::BOTH {
        for ja in 0..grid.n_alpha() {
            for jb in 0..grid.n_beta() {
                let y = grid.point(m, ja, jb);
                row_dev = row_dev.max((output_marginal(kernel, grid, &y) - 1.0).abs());
            }
        }
    }

    let pts = scan_points();
    let mut min_value = f64::INFINITY;
    let mut location = (pts[0], pts[0]);
    for x in &pts {
        for y in &pts {
            let v = kernel.eval(x, y);
            if v < min_value {
                min_value = v;
                location = (*x, *y);
            }
        }
    }

    let choi = channel_from_kernel(kernel, grid)?;
    let _ = config;
    Ok(KernelDiagnostics {
        row_integral_max_dev: row_dev,
        min_value,
        min_value_location: location,
        choi_min_eigenvalue: choi.min_eigenvalue(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{
        apply_channel, bloch_to_density, choi_of, density_to_bloch, extreme_point_channel,
        BlochVector, Sign,
    };
    use crate::qubit_tomography::sample_tomogram;

    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn sigma_kernel_vanishes_off_spin_diagonal() {
        let x = TomoPoint::new(Spin::Up, 0.3, 1.1);
        let y = TomoPoint::new(Spin::Down, 1.2, 0.4);
        for axis in Axis::ALL {
            assert_eq!(kernel_sigma(axis, &x, &y), 0.0);
        }
    }

    #[test]
    fn sigma_z_reference_value() {
        // Direct substitution at alpha = alpha' = 0, beta = 0, beta' = pi:
        // (1/2)(1 + 3 * 1 * (-1)) = -1, exactly.
        let x = TomoPoint::new(Spin::Up, 0.0, 0.0);
        let y = TomoPoint::new(Spin::Up, 0.0, PI);
        assert_eq!(kernel_sigma(Axis::Z, &x, &y), -1.0);
    }

    #[test]
    fn sigma_kernel_output_marginal_is_one() {
        let grid = AngularGrid::default_grid();
        let y = TomoPoint::new(Spin::Up, 0.7, 2.0);
        for axis in Axis::ALL {
            let kernel = match axis {
                Axis::X => QubitKernel::PauliX,
                Axis::Y => QubitKernel::PauliY,
                Axis::Z => QubitKernel::PauliZ,
            };
            let v = output_marginal(&kernel, &grid, &y);
            assert!((v - 1.0).abs() < 1e-13, "marginal {v}");
        }
    }

    #[test]
    fn sigma_kernel_input_marginal_is_one() {
        // Unital kernels also integrate to one over the input point.
        let grid = AngularGrid::default_grid();
        let x = TomoPoint::new(Spin::Down, 1.9, 0.8);
        for k in [QubitKernel::PauliX, QubitKernel::PauliY, QubitKernel::PauliZ] {
            let v = input_marginal(&k, &grid, &x);
            assert!((v - 1.0).abs() < 1e-13, "marginal {v}");
        }
    }

    #[test]
    fn identity_kernel_reproduces_tomograms() {
        let grid = AngularGrid::default_grid();
        let rho = bloch_to_density(BlochVector::new(0.4, -0.1, 0.7)).unwrap();
        let w = sample_tomogram(&rho, &grid);
        let out = apply_kernel(&QubitKernel::Identity, &w);
        assert!(out.max_abs_diff(&w) < 1e-13);
    }

    #[test]
    fn sigma_z_kernel_flips_transverse_bloch_components() {
        let grid = AngularGrid::default_grid();
        let rho = bloch_to_density(BlochVector::new(1.0, 0.0, 0.0)).unwrap();
        let w = sample_tomogram(&rho, &grid);
        let out = apply_kernel(&QubitKernel::PauliZ, &w);
        let expect = sample_tomogram(&bloch_to_density(BlochVector::new(-1.0, 0.0, 0.0)).unwrap(), &grid);
        assert!(out.max_abs_diff(&expect) < 1e-13);
    }

    #[test]
    fn depolarizing_mixture_kernel_flattens() {
        let grid = AngularGrid::default_grid();
        let mix = PauliMixture::new(0.25, 0.25, 0.25, 0.25).unwrap();
        let kernel = QubitKernel::for_channel(&ChannelSpec::Pauli(mix));
        let rho = bloch_to_density(BlochVector::new(0.3, 0.6, -0.5)).unwrap();
        let out = apply_kernel(&kernel, &sample_tomogram(&rho, &grid));
        for v in out.values() {
            assert!((v - 0.5).abs() < 1e-13);
        }
    }

    #[test]
    fn general_kernel_identity_parameters() {
        let grid = AngularGrid::default_grid();
        let id = AffineQubitChannel::new([0.0; 3], [1.0, 1.0, 1.0]);
        let rho = bloch_to_density(BlochVector::new(-0.2, 0.5, 0.1)).unwrap();
        let w = sample_tomogram(&rho, &grid);
        let out = apply_kernel(&QubitKernel::GeneralAffine(id), &w);
        assert!(out.max_abs_diff(&w) < 1e-13);
    }

    #[test]
    fn general_kernel_constant_map() {
        // t = (0,0,1), lambda = 0 sends every tomogram to 1/2 + m cos(beta).
        let grid = AngularGrid::default_grid();
        let constant = AffineQubitChannel::new([0.0, 0.0, 1.0], [0.0, 0.0, 0.0]);
        let rho = bloch_to_density(BlochVector::new(0.7, -0.3, 0.2)).unwrap();
        let out = apply_kernel(
            &QubitKernel::GeneralAffine(constant),
            &sample_tomogram(&rho, &grid),
        );
        for m in Spin::BOTH {
            for ia in 0..grid.n_alpha() {
                for ib in 0..grid.n_beta() {
                    let expect = 0.5 + m.value() * grid.beta(ib).cos();
                    assert!((out.value(m, ia, ib) - expect).abs() < 1e-13);
                }
            }
        }
    }

    #[test]
    fn general_kernel_amplitude_damping_action() {
        // Oracle: the amplitude-damping Kraus pair applied directly.
        let grid = AngularGrid::default_grid();
        let gamma: f64 = 0.36;
        let affine = AffineQubitChannel::new(
            [0.0, 0.0, gamma],
            [(1.0 - gamma).sqrt(), (1.0 - gamma).sqrt(), 1.0 - gamma],
        );
        let rho = bloch_to_density(BlochVector::new(0.0, 0.0, -1.0)).unwrap();
        let out = apply_kernel(
            &QubitKernel::GeneralAffine(affine),
            &sample_tomogram(&rho, &grid),
        );
        let kraus = KrausChannel::amplitude_damping(gamma).unwrap();
        let direct = apply_channel(&ChannelSpec::Kraus(kraus), &rho).unwrap();
        let expect = sample_tomogram(&direct, &grid);
        assert!(out.max_abs_diff(&expect) < 1e-13);
        // Output Bloch vector is (0, 0, -0.28).
        let a = density_to_bloch(&direct);
        assert!((a.z + 0.28).abs() < 1e-15);
    }

    #[test]
    fn kraus_kernel_matches_sigma_z_pointwise() {
        let grid = AngularGrid::default_grid();
        let ch = KrausChannel::pauli_unitary(Axis::Z);
        for m in Spin::BOTH {
            for mp in Spin::BOTH {
                for ia in 0..grid.n_alpha() {
                    for ib in 0..grid.n_beta() {
                        for ja in 0..grid.n_alpha() {
                            for jb in 0..grid.n_beta() {
                                let x = grid.point(m, ia, ib);
                                let y = grid.point(mp, ja, jb);
                                let kk = kernel_from_kraus(&ch, &x, &y);
                                let ks = kernel_sigma(Axis::Z, &x, &y);
                                assert!((kk - ks).abs() < 1e-12, "({kk}, {ks})");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn kraus_kernel_matches_general_kernel_for_amplitude_damping() {
        let grid = AngularGrid::default_grid();
        let gamma: f64 = 0.36;
        let ch = KrausChannel::amplitude_damping(gamma).unwrap();
        let affine = extreme_point_channel(0.8, 0.8, Sign::Plus).unwrap();
        for m in Spin::BOTH {
            for ia in 0..grid.n_alpha() {
                for ib in 0..grid.n_beta() {
                    for ja in 0..grid.n_alpha() {
                        for jb in 0..grid.n_beta() {
                            let x = grid.point(m, ia, ib);
                            let y = grid.point(m, ja, jb);
                            let kk = kernel_from_kraus(&ch, &x, &y);
                            let kg = kernel_general(&affine, &x, &y);
                            assert!((kk - kg).abs() < 1e-12);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn identity_kraus_kernel_is_spin_diagonal_pairing() {
        // On the spin diagonal the Kraus kernel of the identity channel is
        // the dequantizer/quantizer pairing itself.
        let ch = KrausChannel::identity();
        let x = TomoPoint::new(Spin::Up, 0.4, 1.3);
        let y = TomoPoint::new(Spin::Up, 2.7, 0.6);
        let expect = crate::qubit_tomography::reproducing_kernel(&x, &y);
        assert!((kernel_from_kraus(&ch, &x, &y) - expect).abs() < 1e-13);
    }

    #[test]
    fn mixture_kernel_is_convex_combination() {
        let mix = PauliMixture::new(0.4, 0.3, 0.2, 0.1).unwrap();
        let kraus_kernel = QubitKernel::for_channel(&ChannelSpec::Pauli(mix));
        for (a, b, ap, bp) in [(0.0, 0.5, 1.0, 2.0), (2.2, 2.8, 0.3, 0.9), (4.0, 1.5, 5.1, 2.4)] {
            for m in Spin::BOTH {
                let x = TomoPoint::new(m, a, b);
                let y = TomoPoint::new(m, ap, bp);
                let combo = mixture_kernel_value(&mix, &x, &y);
                assert!((kraus_kernel.eval(&x, &y) - combo).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn involution_reference_points() {
        let p = angle_involution(Axis::Z, &TomoPoint::new(Spin::Up, 0.0, PI / 2.0));
        assert!((p.alpha - PI).abs() < 1e-15);
        assert!((p.beta - PI / 2.0).abs() < 1e-15);

        let p = angle_involution(Axis::X, &TomoPoint::new(Spin::Up, 0.0, 0.0));
        assert!(p.alpha.abs() < 1e-15);
        assert!((p.beta - PI).abs() < 1e-15);
    }

    #[test]
    fn involution_conjugation_identity() {
        let angles = [
            (0.0, 0.0),
            (0.3, 0.9),
            (1.1, 2.7),
            (3.9, 1.4),
            (5.8, 3.0),
            (2.0, PI / 2.0),
        ];
        for axis in Axis::ALL {
            let sigma = crate::qstate::pauli(axis);
            for (a, b) in angles {
                for m in Spin::BOTH {
                    let x = TomoPoint::new(m, a, b);
                    let lhs = sigma.mul(&dequantizer(&x)).mul(&sigma);
                    let rhs = dequantizer(&angle_involution(axis, &x));
                    assert!(lhs.max_abs_diff(&rhs) < 1e-15);
                }
            }
        }
    }

    #[test]
    fn involution_is_self_inverse_on_directions() {
        for axis in Axis::ALL {
            let x = TomoPoint::new(Spin::Down, 1.234, 2.345);
            let twice = angle_involution(axis, &angle_involution(axis, &x));
            let d0 = x.direction();
            let d1 = twice.direction();
            for i in 0..3 {
                assert!((d0[i] - d1[i]).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn quarter_turn_shifts_fail_conjugation() {
        // The quarter-turn substitutions (alpha -+ pi/2, beta + pi/2) and
        // (beta - pi/2) do not satisfy the conjugation identity; this test
        // documents the mismatch that motivated the reflections above.
        let x = TomoPoint::new(Spin::Up, 0.7, 1.1);
        let sz = crate::qstate::pauli(Axis::Z);
        let lhs = sz.mul(&dequantizer(&x)).mul(&sz);
        let shifted = TomoPoint::new(Spin::Up, 0.7, 1.1 - PI / 2.0);
        let rhs = dequantizer(&shifted);
        assert!(lhs.max_abs_diff(&rhs) > 0.1);
    }

    #[test]
    fn channel_from_kernel_identity() {
        let grid = AngularGrid::default_grid();
        let choi = channel_from_kernel(&QubitKernel::Identity, &grid).unwrap();
        let ev = choi.eigenvalues();
        assert!(ev[..3].iter().all(|l| l.abs() < 1e-12));
        assert!((ev[3] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn channel_from_kernel_matches_choi_for_sigma_z() {
        let grid = AngularGrid::default_grid();
        let from_kernel = channel_from_kernel(&QubitKernel::PauliZ, &grid).unwrap();
        let direct = choi_of(&ChannelSpec::Kraus(KrausChannel::pauli_unitary(Axis::Z)));
        for i in 0..4 {
            for j in 0..4 {
                assert!(
                    (from_kernel.matrix().get(i, j) - direct.matrix().get(i, j)).norm() < 1e-12
                );
            }
        }
    }

    #[test]
    fn channel_from_kernel_detects_non_cp() {
        let grid = AngularGrid::default_grid();
        let bad = AffineQubitChannel::new([0.0, 0.0, 1.5], [0.0, 0.0, 0.0]);
        let choi = channel_from_kernel(&QubitKernel::GeneralAffine(bad), &grid).unwrap();
        assert!(choi.min_eigenvalue() < -1e-3);
    }

    #[test]
    fn diagnostics_sigma_z() {
        let grid = AngularGrid::default_grid();
        let d = kernel_diagnostics(&QubitKernel::PauliZ, &grid, &NumericsConfig::default()).unwrap();
        assert!(d.row_integral_max_dev < 1e-12);
        assert!((d.min_value + 1.0).abs() < 1e-12, "min {}", d.min_value);
        assert!(d.choi_min_eigenvalue > -1e-10);
    }

    #[test]
    fn diagnostics_identity_kernel_min_is_minus_one() {
        // The spin-diagonal identity kernel reaches -1 at antipodal
        // directions with equal spins.
        let grid = AngularGrid::default_grid();
        let d = kernel_diagnostics(&QubitKernel::Identity, &grid, &NumericsConfig::default()).unwrap();
        assert!((d.min_value + 1.0).abs() < 1e-12);
        assert_eq!(d.min_value_location.0.m, d.min_value_location.1.m);
    }

    #[test]
    fn diagnostics_amplitude_damping() {
        let grid = AngularGrid::default_grid();
        let affine = extreme_point_channel(0.8, 0.8, Sign::Plus).unwrap();
        let d = kernel_diagnostics(
            &QubitKernel::GeneralAffine(affine),
            &grid,
            &NumericsConfig::default(),
        )
        .unwrap();
        assert!(d.row_integral_max_dev < 1e-12, "{}", d.row_integral_max_dev);
        assert!(d.min_value < 0.0);
        assert!(d.choi_min_eigenvalue > -1e-10);
    }

    #[test]
    fn pauli_kernels_reach_minus_one_on_scan() {
        let grid = AngularGrid::default_grid();
        for k in [QubitKernel::PauliX, QubitKernel::PauliY, QubitKernel::PauliZ] {
            let d = kernel_diagnostics(&k, &grid, &NumericsConfig::default()).unwrap();
            assert!(d.min_value <= -1.0 + 1e-12, "min {}", d.min_value);
        }
    }
}
