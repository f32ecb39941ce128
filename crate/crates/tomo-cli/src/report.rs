//! JSON report types emitted by the channel commands and the verification
//! suite.

use serde::Serialize;

/// One verified property: a measured value against its threshold.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub measured: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl CheckResult {
    /// Passes when the measured value does not exceed the threshold.
    pub fn at_most(name: &str, measured: f64, threshold: f64) -> Self {
        CheckResult {
            name: name.into(),
            measured,
            threshold,
            pass: measured <= threshold,
        }
    }

    /// Passes when the measured value is at least the threshold.
    pub fn at_least(name: &str, measured: f64, threshold: f64) -> Self {
        CheckResult {
            name: name.into(),
            measured,
            threshold,
            pass: measured >= threshold,
        }
    }

    /// Passes when the measured value is strictly below the threshold.
    pub fn below(name: &str, measured: f64, threshold: f64) -> Self {
        CheckResult {
            name: name.into(),
            measured,
            threshold,
            pass: measured < threshold,
        }
    }

    /// Passes when the measured value strictly exceeds the threshold (used
    /// for recorded discrepancies that must stay visible).
    pub fn exceeds(name: &str, measured: f64, threshold: f64) -> Self {
        CheckResult {
            name: name.into(),
            measured,
            threshold,
            pass: measured > threshold,
        }
    }
}

/// Aggregated result of a verification suite; `pass` holds exactly when
/// every check passed.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub suite: String,
    pub checks: Vec<CheckResult>,
    pub pass: bool,
}

impl RunReport {
    pub fn new(suite: &str, checks: Vec<CheckResult>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        RunReport {
            suite: suite.into(),
            checks,
            pass,
        }
    }
}

/// Report of a dual-path qubit channel run.
#[derive(Debug, Clone, Serialize)]
pub struct QubitChannelReport {
    pub max_deviation: Option<f64>,
    pub threshold: f64,
    pub pass: bool,
    pub choi_min_eigenvalue: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

/// Report of a dual-path bosonic channel run; marginals follow the
/// stochastic-kernel normalisation (output 1, input 1/k, divergent at k = 0).
#[derive(Debug, Clone, Serialize)]
pub struct BosonReport {
    pub max_deviation: Option<f64>,
    pub threshold: f64,
    pub pass: bool,
    pub output_variance: f64,
    pub marginal_output: f64,
    pub marginal_input: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

/// Kernel diagnostics as stable JSON keys.
#[derive(Debug, Clone, Serialize)]
pub struct KernelDiagnosticsReport {
    pub row_integral_max_dev: f64,
    pub min_value: f64,
    pub min_value_location: MinLocation,
    pub choi_min_eigenvalue: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct MinLocation {
    pub m: f64,
    pub alpha: f64,
    pub beta: f64,
    pub m2: f64,
    pub alpha2: f64,
    pub beta2: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overall_pass_iff_all_pass() {
        let r = RunReport::new(
            "demo",
            vec![
                CheckResult::at_most("a", 0.5, 1.0),
                CheckResult::at_most("b", 2.0, 1.0),
            ],
        );
        assert!(!r.pass);
        let r = RunReport::new("demo", vec![CheckResult::at_most("a", 0.5, 1.0)]);
        assert!(r.pass);
    }

    #[test]
    fn json_shape() {
        let r = RunReport::new("demo", vec![CheckResult::at_most("a", 0.5, 1.0)]);
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"suite\":\"demo\""));
        assert!(json.contains("\"measured\":0.5"));
        assert!(json.contains("\"pass\":true"));
    }
}
