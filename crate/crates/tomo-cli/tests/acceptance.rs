//! Acceptance suite: every release criterion is measured at its pinned
//! tolerance and reported with one pass/fail line. The measurements come
//! from the same suite the `verify` command runs, computed once and shared
//! across the tests; the final criterion drives the binary itself.

use std::process::Command;
use std::sync::OnceLock;

use tomo_cli::report::CheckResult;
use tomo_cli::suite::{boson_checks, qubit_checks};

fn qubit() -> &'static Vec<CheckResult> {
    static CHECKS: OnceLock<Vec<CheckResult>> = OnceLock::new();
    CHECKS.get_or_init(qubit_checks)
}

fn boson() -> &'static Vec<CheckResult> {
    static CHECKS: OnceLock<Vec<CheckResult>> = OnceLock::new();
    CHECKS.get_or_init(boson_checks)
}

fn find<'a>(checks: &'a [CheckResult], name: &str) -> &'a CheckResult {
    checks
        .iter()
        .find(|c| c.name == name)
        .unwrap_or_else(|| panic!("missing check {name}"))
}

fn criterion(n: u32, what: &str, checks: &[&CheckResult]) {
    let pass = checks.iter().all(|c| c.pass);
    let detail: Vec<String> = checks
        .iter()
        .map(|c| format!("{} = {:.3e} (threshold {:.1e})", c.name, c.measured, c.threshold))
        .collect();
    println!(
        "criterion {n:02} {what}: {} [{}]",
        if pass { "PASS" } else { "FAIL" },
        detail.join("; ")
    );
    assert!(pass, "criterion {n} ({what}) failed: {}", detail.join("; "));
}

#[test]
fn criterion_01_roundtrip_fidelity() {
    criterion(
        1,
        "state -> tomogram -> state round trip at 1e-12",
        &[find(qubit(), "qubit_roundtrip_max_error")],
    );
}

#[test]
fn criterion_02_dual_path_qubit_agreement() {
    criterion(
        2,
        "kernel path vs direct path over all channel families at 1e-10",
        &[find(qubit(), "qubit_dual_path_max_deviation")],
    );
}

#[test]
fn criterion_03_kernel_negativity_witnesses() {
    criterion(
        3,
        "each Pauli kernel reaches -1; exact witness point",
        &[
            find(qubit(), "pauli_kernel_negativity_worst_min"),
            find(qubit(), "pauli_z_kernel_exact_witness_error"),
        ],
    );
}

#[test]
fn criterion_04_row_normalisation() {
    criterion(
        4,
        "closed-form kernel row integrals equal 1 at 1e-12",
        &[find(qubit(), "unital_kernel_row_normalisation_max_dev")],
    );
}

#[test]
fn criterion_05_cp_oracle() {
    criterion(
        5,
        "extreme points CP; 20% translation inflation breaks CP",
        &[
            find(qubit(), "extreme_point_choi_min_eigenvalue"),
            find(qubit(), "inflated_extreme_choi_min_eigenvalue"),
        ],
    );
}

#[test]
fn criterion_06_conjugation_identity() {
    criterion(
        6,
        "conjugation identity at 1e-15; quarter-turn discrepancy recorded",
        &[
            find(qubit(), "conjugation_identity_max_dev"),
            find(qubit(), "quarter_turn_shift_recorded_discrepancy"),
        ],
    );
}

#[test]
fn criterion_07_bosonic_dual_path() {
    criterion(
        7,
        "Gaussian channel kernel vs characteristic-function path at 1e-6",
        &[find(boson(), "boson_dual_path_max_deviation")],
    );
}

#[test]
fn criterion_08_gaussian_moment_law() {
    criterion(
        8,
        "output variances 0.625 (covariant) and 1.5 (contravariant) at 1e-6",
        &[
            find(boson(), "vacuum_covariant_variance_error"),
            find(boson(), "vacuum_contravariant_variance_error"),
        ],
    );
}

#[test]
fn criterion_09_kernel_marginals() {
    criterion(
        9,
        "kernel marginals (1, 1/k) at 1e-8",
        &[find(boson(), "kernel_marginals_max_dev")],
    );
}

#[test]
fn criterion_10_plane_representation() {
    criterion(
        10,
        "plane density normalised, non-negative, consistent with polar",
        &[
            find(boson(), "plane_normalisation_max_dev"),
            find(boson(), "plane_negativity"),
            find(boson(), "plane_channel_consistency_max_dev"),
        ],
    );
}

#[test]
fn criterion_11_fock_one_tomogram() {
    criterion(
        11,
        "Fock-1 tomogram equals (2/sqrt(pi)) x^2 exp(-x^2) at 1e-8",
        &[find(boson(), "fock1_tomogram_max_error")],
    );
}

#[test]
fn criterion_12_verify_all_exits_zero() {
    let dir = std::env::temp_dir().join("tomo-acceptance");
    std::fs::create_dir_all(&dir).unwrap();
    let report_path = dir.join("verify-all.json");
    let output = Command::new(env!("CARGO_BIN_EXE_tomo"))
        .args(["verify", "--suite", "all", "--report"])
        .arg(&report_path)
        .output()
        .expect("run tomo verify");
    let pass = output.status.success();
    println!(
        "criterion 12 `verify all` exits 0 and reports every criterion: {}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "verify exited with {:?}", output.status);

    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(json["suite"], "all");
    assert_eq!(json["pass"], true);
    let checks = json["checks"].as_array().unwrap();
    // The report must enumerate a measured value for every criterion above.
    for name in [
        "qubit_roundtrip_max_error",
        "qubit_dual_path_max_deviation",
        "pauli_kernel_negativity_worst_min",
        "pauli_z_kernel_exact_witness_error",
        "unital_kernel_row_normalisation_max_dev",
        "extreme_point_choi_min_eigenvalue",
        "inflated_extreme_choi_min_eigenvalue",
        "conjugation_identity_max_dev",
        "quarter_turn_shift_recorded_discrepancy",
        "boson_dual_path_max_deviation",
        "vacuum_covariant_variance_error",
        "vacuum_contravariant_variance_error",
        "kernel_marginals_max_dev",
        "plane_normalisation_max_dev",
        "plane_negativity",
        "plane_channel_consistency_max_dev",
        "fock1_tomogram_max_error",
    ] {
        let entry = checks
            .iter()
            .find(|c| c["name"] == name)
            .unwrap_or_else(|| panic!("report lacks {name}"));
        assert_eq!(entry["pass"], true, "{name} failed in the report");
        assert!(entry["measured"].is_number());
    }
}
