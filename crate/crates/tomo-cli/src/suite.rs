//! The verification suite behind `tomo verify`: every library invariant is
//! measured and compared against its pinned threshold. Random ensembles are
//! seeded, so repeated runs produce identical reports.

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use tomo_core::boson::{
    apply_gaussian_channel_direct, apply_gaussian_kernel, char_fn, kernel_marginals,
    tomogram_from_charfn, BosonicState, ChannelKind, GaussianChannelParams, OpticalTomogram,
};
use tomo_core::linalg::Mat2;
use tomo_core::numerics::{LineGrid, NumericsConfig};
use tomo_core::plane::{apply_plane_channel, plane_distribution};
use tomo_core::qstate::{
    apply_channel, bloch_to_density, choi_of, extreme_point_channel, is_cp, pauli,
    AffineQubitChannel, Axis, BlochVector, ChannelSpec, DensityMatrix, KrausChannel, PauliMixture,
    Sign,
};
use tomo_core::qubit_kernels::{
    angle_involution, apply_kernel, input_marginal, kernel_diagnostics, kernel_sigma,
    output_marginal, QubitKernel,
};
use tomo_core::qubit_tomography::{
    dequantizer, reconstruct, sample_tomogram, AngularGrid, Spin, TomoPoint,
};

use crate::report::{CheckResult, RunReport};

const SEED_STATES: u64 = 7;
const SEED_CHANNELS: u64 = 11;
const SEED_POINTS: u64 = 13;

pub fn random_bloch(rng: &mut StdRng) -> BlochVector {
    loop {
        let a = BlochVector::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        if a.norm() <= 1.0 {
            return a;
        }
    }
}

pub fn random_state(rng: &mut StdRng) -> DensityMatrix {
    bloch_to_density(random_bloch(rng)).unwrap()
}

/// Trace-preserving Kraus pair built from two orthonormal columns in C^4.
pub fn random_kraus(rng: &mut StdRng) -> KrausChannel {
    loop {
        let mut c0: Vec<Complex64> = (0..4)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let c1_raw: Vec<Complex64> = (0..4)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let n0: f64 = c0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if n0 < 1e-3 {
            continue;
        }
        for z in c0.iter_mut() {
            *z /= n0;
        }
        let overlap: Complex64 = c0.iter().zip(&c1_raw).map(|(a, b)| a.conj() * b).sum();
        let c1: Vec<Complex64> = c1_raw
            .iter()
            .zip(&c0)
            .map(|(b, a)| b - a * overlap)
            .collect();
        let n1: f64 = c1.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if n1 < 1e-3 {
            continue;
        }
        let c1: Vec<Complex64> = c1.iter().map(|z| z / n1).collect();
        let a0 = Mat2([[c0[0], c1[0]], [c0[1], c1[1]]]);
        let a1 = Mat2([[c0[2], c1[2]], [c0[3], c1[3]]]);
        if let Ok(k) = KrausChannel::new(vec![a0, a1]) {
            return k;
        }
    }
}

/// Random completely positive diagonal affine channel (rejection sampled).
pub fn random_cp_affine(rng: &mut StdRng) -> AffineQubitChannel {
    loop {
        let ch = AffineQubitChannel::new(
            [
                rng.random_range(-0.3..0.3),
                rng.random_range(-0.3..0.3),
                rng.random_range(-0.3..0.3),
            ],
            [
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            ],
        );
        if is_cp(&choi_of(&ChannelSpec::Affine(ch)), 0.0).is_cp {
            return ch;
        }
    }
}

/// All Pauli mixtures on the step-1/3 simplex lattice (20 points).
pub fn pauli_mesh() -> Vec<PauliMixture> {
    let mut mesh = Vec::new();
    for i in 0..=3 {
        for j in 0..=3 - i {
            for k in 0..=3 - i - j {
                let l = 3 - i - j - k;
                mesh.push(
                    PauliMixture::new(
                        i as f64 / 3.0,
                        j as f64 / 3.0,
                        k as f64 / 3.0,
                        l as f64 / 3.0,
                    )
                    .unwrap(),
                );
            }
        }
    }
    mesh
}

pub fn qubit_checks() -> Vec<CheckResult> {
    let grid = AngularGrid::default_grid();
    let config = NumericsConfig::default();
    let mut checks = Vec::new();

    // Round-trip fidelity over 100 random states.
    {
        let mut rng = StdRng::seed_from_u64(SEED_STATES);
        let mut worst: f64 = 0.0;
        for _ in 0..100 {
            let rho = random_state(&mut rng);
            let back = reconstruct(&sample_tomogram(&rho, &grid)).unwrap();
            worst = worst.max(rho.matrix().max_abs_diff(back.matrix()));
        }
        checks.push(CheckResult::at_most("qubit_roundtrip_max_error", worst, 1e-12));
    }

    // Dual-path agreement over the three channel families.
    {
        let mut rng = StdRng::seed_from_u64(SEED_CHANNELS);
        let states: Vec<DensityMatrix> = (0..20).map(|_| random_state(&mut rng)).collect();
        let mut channels: Vec<ChannelSpec> =
            pauli_mesh().into_iter().map(ChannelSpec::Pauli).collect();
        for _ in 0..50 {
            channels.push(ChannelSpec::Affine(random_cp_affine(&mut rng)));
        }
        for _ in 0..50 {
            channels.push(ChannelSpec::Kraus(random_kraus(&mut rng)));
        }
        let mut worst: f64 = 0.0;
        for spec in &channels {
            let kernel = QubitKernel::for_channel(spec);
            for rho in &states {
                let via_kernel = apply_kernel(&kernel, &sample_tomogram(rho, &grid));
                let via_direct = sample_tomogram(&apply_channel(spec, rho).unwrap(), &grid);
                worst = worst.max(via_kernel.max_abs_diff(&via_direct));
            }
        }
        checks.push(CheckResult::at_most(
            "qubit_dual_path_max_deviation",
            worst,
            1e-10,
        ));
    }

    // Negativity witnesses: each Pauli kernel reaches -1 on the scan grid,
    // and the z kernel hits it exactly at the reference point.
    {
        let mut worst_min = f64::NEG_INFINITY;
        for kernel in [QubitKernel::PauliX, QubitKernel::PauliY, QubitKernel::PauliZ] {
            let d = kernel_diagnostics(&kernel, &grid, &config).unwrap();
            worst_min = worst_min.max(d.min_value);
        }
        checks.push(CheckResult::at_most(
            "pauli_kernel_negativity_worst_min",
            worst_min,
            -1.0 + 1e-12,
        ));
        let x = TomoPoint::new(Spin::Up, 0.0, 0.0);
        let y = TomoPoint::new(Spin::Up, 0.0, std::f64::consts::PI);
        checks.push(CheckResult::at_most(
            "pauli_z_kernel_exact_witness_error",
            (kernel_sigma(Axis::Z, &x, &y) + 1.0).abs(),
            0.0,
        ));
    }

    // Row normalisation of the unital closed-form kernels over every node,
    // in both marginals.
    {
        let mut worst: f64 = 0.0;
        for kernel in [
            QubitKernel::Identity,
            QubitKernel::PauliX,
            QubitKernel::PauliY,
            QubitKernel::PauliZ,
        ] {
            for m in Spin::BOTH {
                for ia in 0..grid.n_alpha() {
                    for ib in 0..grid.n_beta() {
                        let p = grid.point(m, ia, ib);
                        worst = worst.max((input_marginal(&kernel, &grid, &p) - 1.0).abs());
                        worst = worst.max((output_marginal(&kernel, &grid, &p) - 1.0).abs());
                    }
                }
            }
        }
        checks.push(CheckResult::at_most(
            "unital_kernel_row_normalisation_max_dev",
            worst,
            1e-12,
        ));
    }

    // Trace-preservation marginal for translated kernels.
    {
        let mut rng = StdRng::seed_from_u64(SEED_CHANNELS + 1);
        let mut worst: f64 = 0.0;
        for _ in 0..10 {
            let kernel = QubitKernel::GeneralAffine(random_cp_affine(&mut rng));
            for m in Spin::BOTH {
                for ia in 0..grid.n_alpha() {
                    for ib in 0..grid.n_beta() {
                        let p = grid.point(m, ia, ib);
                        worst = worst.max((output_marginal(&kernel, &grid, &p) - 1.0).abs());
                    }
                }
            }
        }
        checks.push(CheckResult::at_most(
            "affine_kernel_output_marginal_max_dev",
            worst,
            1e-12,
        ));
    }

    // CP oracle on extreme points, clean and inflated.
    {
        let mesh = [-0.9f64, -0.6, -0.3, 0.0, 0.3, 0.6, 0.8, 0.9];
        let mut worst_clean = f64::INFINITY;
        let mut worst_inflated = f64::NEG_INFINITY;
        for &lx in &mesh {
            for &ly in &mesh {
                for sign in [Sign::Plus, Sign::Minus] {
                    let ch = extreme_point_channel(lx, ly, sign).unwrap();
                    worst_clean =
                        worst_clean.min(choi_of(&ChannelSpec::Affine(ch)).min_eigenvalue());
                    let mut inflated = ch;
                    inflated.t[2] *= 1.2;
                    worst_inflated = worst_inflated
                        .max(choi_of(&ChannelSpec::Affine(inflated)).min_eigenvalue());
                }
            }
        }
        checks.push(CheckResult::at_least(
            "extreme_point_choi_min_eigenvalue",
            worst_clean,
            -1e-10,
        ));
        checks.push(CheckResult::below(
            "inflated_extreme_choi_min_eigenvalue",
            worst_inflated,
            -1e-3,
        ));
    }

    // Conjugation identity at 1000 random points; the quarter-turn shift
    // convention is kept visible as a recorded discrepancy.
    {
        let mut rng = StdRng::seed_from_u64(SEED_POINTS);
        let mut worst: f64 = 0.0;
        let mut shift_dev: f64 = 0.0;
        for _ in 0..1000 {
            let x = TomoPoint::new(
                if rng.random_bool(0.5) { Spin::Up } else { Spin::Down },
                rng.random_range(0.0..std::f64::consts::TAU),
                rng.random_range(0.0..std::f64::consts::PI),
            );
            for axis in Axis::ALL {
                let s = pauli(axis);
                let lhs = s.mul(&dequantizer(&x)).mul(&s);
                worst = worst.max(lhs.max_abs_diff(&dequantizer(&angle_involution(axis, &x))));
            }
            let half_pi = std::f64::consts::FRAC_PI_2;
            let sz = pauli(Axis::Z);
            let lhs = sz.mul(&dequantizer(&x)).mul(&sz);
            let shifted = TomoPoint::new(x.m, x.alpha, x.beta - half_pi);
            shift_dev = shift_dev.max(lhs.max_abs_diff(&dequantizer(&shifted)));
        }
        checks.push(CheckResult::at_most(
            "conjugation_identity_max_dev",
            worst,
            1e-15,
        ));
        checks.push(CheckResult::exceeds(
            "quarter_turn_shift_recorded_discrepancy",
            shift_dev,
            1e-2,
        ));
    }

    checks
}

/// The five reference states with grid-friendly parameters.
fn sweep_states() -> Vec<BosonicState> {
    vec![
        BosonicState::Vacuum,
        BosonicState::Coherent { q: 2.0, p: 0.0 },
        BosonicState::Thermal { nbar: 0.5 },
        BosonicState::Fock { n: 1 },
        BosonicState::Squeezed { r: 0.4, theta: 0.9 },
    ]
}

fn sweep_config() -> NumericsConfig {
    // A wider transform window than the default keeps weakly squeezed
    // states inside the decay threshold.
    NumericsConfig {
        fourier_t_max: 20.0,
        ..NumericsConfig::default()
    }
}

pub fn boson_checks() -> Vec<CheckResult> {
    let config = sweep_config();
    let grid = LineGrid::default_line();
    let n_phi = 64;
    let mut checks = Vec::new();

    let tomograms: Vec<(BosonicState, OpticalTomogram)> = sweep_states()
        .into_iter()
        .map(|s| {
            let f = char_fn(&s).unwrap();
            let w = tomogram_from_charfn(&f, &grid, n_phi, &config).unwrap();
            (s, w)
        })
        .collect();

    // Dual-path agreement over the full state x parameter sweep, plus
    // normalisation and antipodal symmetry of states and of channel outputs
    // whose support the default grid contains (amplifying k = 2 outputs
    // spill past the quadrature line and are covered by the node-wise
    // dual-path comparison instead).
    {
        let mut worst: f64 = 0.0;
        let mut norm_worst: f64 = 0.0;
        let mut sym_worst: f64 = 0.0;
        for (state, w) in &tomograms {
            norm_worst = norm_worst.max(w.normalisation_defect());
            sym_worst = sym_worst.max(w.symmetry_defect());
            let f = char_fn(state).unwrap();
            for kind in [ChannelKind::Covariant, ChannelKind::Contravariant] {
                for k in [0.0, 0.5, 2.0] {
                    let bound = match kind {
                        ChannelKind::Covariant => (k * k - 1.0f64).abs() / 2.0,
                        ChannelKind::Contravariant => (k * k + 1.0) / 2.0,
                    };
                    for alpha in [bound, bound + 0.5] {
                        let params = GaussianChannelParams::new(kind, k, alpha).unwrap();
                        let via_kernel = apply_gaussian_kernel(w, &params, &config).unwrap();
                        let direct = apply_gaussian_channel_direct(&f, &params);
                        let via_direct =
                            tomogram_from_charfn(&direct, &grid, n_phi, &config).unwrap();
                        worst = worst.max(via_kernel.max_abs_diff(&via_direct));
                        if k < 1.0 {
                            norm_worst = norm_worst.max(via_kernel.normalisation_defect());
                            sym_worst = sym_worst.max(via_kernel.symmetry_defect());
                        }
                    }
                }
            }
        }
        checks.push(CheckResult::at_most(
            "boson_dual_path_max_deviation",
            worst,
            1e-6,
        ));
        checks.push(CheckResult::at_most(
            "tomogram_normalisation_max_dev",
            norm_worst,
            1e-6,
        ));
        checks.push(CheckResult::at_most(
            "tomogram_antipodal_symmetry_max_dev",
            sym_worst,
            1e-10,
        ));
    }

    // Gaussian moment law at the two pinned parameter points.
    {
        let vacuum = &tomograms[0].1;
        let cov = GaussianChannelParams::new(ChannelKind::Covariant, 0.5, 0.5).unwrap();
        let out = apply_gaussian_kernel(vacuum, &cov, &config).unwrap();
        let (_, var) = out.moments(0);
        checks.push(CheckResult::at_most(
            "vacuum_covariant_variance_error",
            (var - 0.625).abs(),
            1e-6,
        ));

        let contra = GaussianChannelParams::new(ChannelKind::Contravariant, 1.0, 1.0).unwrap();
        let out = apply_gaussian_kernel(vacuum, &contra, &config).unwrap();
        let (_, var) = out.moments(0);
        checks.push(CheckResult::at_most(
            "vacuum_contravariant_variance_error",
            (var - 1.5).abs(),
            1e-6,
        ));
    }

    // Stochastic-kernel marginals: output 1, input 1/k.
    {
        let mut worst: f64 = 0.0;
        for k in [0.5f64, 2.0] {
            let bound = (k * k - 1.0f64).abs() / 2.0;
            let params = GaussianChannelParams::new(ChannelKind::Covariant, k, bound).unwrap();
            let (out, inp) = kernel_marginals(&params);
            worst = worst.max((out - 1.0).abs()).max((inp - 1.0 / k).abs());
        }
        let contra = GaussianChannelParams::new(ChannelKind::Contravariant, 1.0, 1.0).unwrap();
        let (out, inp) = kernel_marginals(&contra);
        worst = worst.max((out - 1.0).abs()).max((inp - 1.0).abs());
        checks.push(CheckResult::at_most("kernel_marginals_max_dev", worst, 1e-8));
    }

    // Plane representation: normalisation, positivity and consistency with
    // the polar pipeline.
    {
        let mut norm_worst: f64 = 0.0;
        let mut neg_worst: f64 = 0.0;
        let mut consistency_worst: f64 = 0.0;
        let params = GaussianChannelParams::new(ChannelKind::Covariant, 0.5, 0.5).unwrap();
        for (_, w) in &tomograms {
            let plane = plane_distribution(w).unwrap();
            norm_worst = norm_worst.max((plane.normalisation() - 1.0).abs());
            neg_worst = neg_worst.max(plane.negativity());

            let via_plane = apply_plane_channel(&plane, &params, &config).unwrap();
            let via_polar =
                plane_distribution(&apply_gaussian_kernel(w, &params, &config).unwrap()).unwrap();
            consistency_worst = consistency_worst.max(via_plane.max_abs_diff(&via_polar));
            norm_worst = norm_worst.max((via_plane.normalisation() - 1.0).abs());
        }
        checks.push(CheckResult::at_most(
            "plane_normalisation_max_dev",
            norm_worst,
            1e-6,
        ));
        checks.push(CheckResult::at_most("plane_negativity", neg_worst, 1e-10));
        checks.push(CheckResult::at_most(
            "plane_channel_consistency_max_dev",
            consistency_worst,
            1e-6,
        ));
    }

    // Fock-1 tomogram against the squared first excited wavefunction.
    {
        let fock1 = &tomograms[3].1;
        let mut worst: f64 = 0.0;
        for j in 0..fock1.n_phi() {
            for (i, x) in fock1.xgrid().nodes().enumerate() {
                let expect = 2.0 / std::f64::consts::PI.sqrt() * x * x * (-x * x).exp();
                worst = worst.max((fock1.value(i, j) - expect).abs());
            }
        }
        checks.push(CheckResult::at_most("fock1_tomogram_max_error", worst, 1e-8));
    }

    checks
}

/// Which suites to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteSelection {
    Qubit,
    Boson,
    All,
}

pub fn run_suite(selection: SuiteSelection) -> RunReport {
    let (name, checks) = match selection {
        SuiteSelection::Qubit => ("qubit", qubit_checks()),
        SuiteSelection::Boson => ("boson", boson_checks()),
        SuiteSelection::All => {
            let mut checks = qubit_checks();
            checks.extend(boson_checks());
            ("all", checks)
        }
    };
    RunReport::new(name, checks)
}
