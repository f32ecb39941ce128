//! `tomo` — tomographic states and channels from the command line.
//!
//! Exit codes: 0 success, 1 verification failure (a dual-path deviation or
//! suite check above threshold), 2 usage or parameter errors.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use tomo_cli::csvout;
use tomo_cli::descriptor::{
    parse_boson_channel_json, parse_bosonic_state, parse_qubit_channel, parse_qubit_state,
};
use tomo_cli::report::{BosonReport, QubitChannelReport, RunReport};
use tomo_cli::suite::{run_suite, SuiteSelection};

use tomo_core::boson::{
    apply_gaussian_channel_direct, apply_gaussian_kernel, char_fn, kernel_marginals,
    tomogram_from_charfn, ChannelKind, GaussianChannelParams, OpticalTomogram,
};
use tomo_core::numerics::{LineGrid, NumericsConfig};
use tomo_core::plane::{apply_plane_channel, plane_distribution};
use tomo_core::qstate::{
    apply_channel, choi_of, density_to_bloch, pauli, Axis, ChannelSpec, DensityMatrix,
};
use tomo_core::Error;
use tomo_core::qubit_kernels::{apply_kernel, QubitKernel};
use tomo_core::qubit_tomography::{sample_symbol, sample_tomogram, AngularGrid, QubitTomogram};

const QUBIT_DEVIATION_THRESHOLD: f64 = 1e-8;
const BOSON_DEVIATION_THRESHOLD: f64 = 1e-6;

#[derive(Parser)]
#[command(
    name = "tomo",
    version,
    about = "Tomographic representation of qubit and single-mode bosonic states and channels"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PathChoice {
    Direct,
    Kernel,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Representation {
    Tomogram,
    Plane,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindChoice {
    Covariant,
    Contravariant,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteChoice {
    Qubit,
    Boson,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Sample the spin tomogram of a qubit state on an angular grid.
    QubitTomogram {
        /// State descriptor: bloch:x,y,z or matrix:<json>.
        #[arg(long)]
        state: String,
        /// Grid sizes as N_alpha,N_beta.
        #[arg(long, default_value = "8,4")]
        grid: String,
        /// CSV output path (stdout when omitted).
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Apply a qubit channel directly, through its tomographic kernel, or
    /// both (comparing the two paths).
    QubitChannel {
        /// Channel descriptor: pauli:p0,px,py,pz, affine:tx,ty,tz;lx,ly,lz
        /// or kraus:<json>.
        #[arg(long)]
        channel: String,
        /// State descriptor.
        #[arg(long)]
        state: String,
        #[arg(long, value_enum, default_value_t = PathChoice::Both)]
        path: PathChoice,
        #[arg(long, default_value = "8,4")]
        grid: String,
        #[arg(long)]
        output: Option<PathBuf>,
        /// JSON report path.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Apply a Gaussian channel to a bosonic state, in the tomogram or the
    /// plane representation.
    Boson {
        /// State descriptor: vacuum, coherent:q,p, thermal:n, fock:n or
        /// squeezed:r,theta.
        #[arg(long)]
        state: String,
        /// Channel kind (alternatively pass --channel-json).
        #[arg(long, value_enum)]
        kind: Option<KindChoice>,
        /// Gain parameter k >= 0.
        #[arg(long)]
        k: Option<f64>,
        /// Added-noise parameter alpha.
        #[arg(long)]
        alpha: Option<f64>,
        /// Channel as JSON {"kind", "k", "alpha"} instead of flags.
        #[arg(long)]
        channel_json: Option<String>,
        #[arg(long, value_enum, default_value_t = Representation::Tomogram)]
        representation: Representation,
        #[arg(long, value_enum, default_value_t = PathChoice::Both)]
        path: PathChoice,
        /// Half width of the transform window; raise for strongly squeezed
        /// states.
        #[arg(long, default_value_t = 12.0)]
        tmax: f64,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Dump the tomographic kernel of a qubit channel on the grid's node
    /// pairs and report its diagnostics.
    QubitKernel {
        /// Channel descriptor (as for qubit-channel).
        #[arg(long)]
        channel: String,
        #[arg(long, default_value = "8,4")]
        grid: String,
        /// Kernel CSV output path (stdout when omitted).
        #[arg(long)]
        output: Option<PathBuf>,
        /// Diagnostics JSON path.
        #[arg(long)]
        diagnostics: Option<PathBuf>,
    },
    /// Run the verification suites and emit a check-by-check report.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteChoice::All)]
        suite: SuiteChoice,
        /// JSON report path.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn parse_grid(s: &str) -> Result<AngularGrid, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("grid expects 'N_alpha,N_beta', got '{s}'"));
    }
    let na: usize = parts[0]
        .trim()
        .parse()
        .map_err(|e| format!("bad grid size '{}': {e}", parts[0]))?;
    let nb: usize = parts[1]
        .trim()
        .parse()
        .map_err(|e| format!("bad grid size '{}': {e}", parts[1]))?;
    AngularGrid::new(na, nb).map_err(|e| e.to_string())
}

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, String> {
    match path {
        Some(p) => File::create(p)
            .map(|f| Box::new(BufWriter::new(f)) as Box<dyn Write>)
            .map_err(|e| format!("cannot create {}: {e}", p.display())),
        None => Ok(Box::new(BufWriter::new(std::io::stdout()))),
    }
}

fn write_json(path: &Option<PathBuf>, value: &impl serde::Serialize) -> Result<(), String> {
    let json = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    match path {
        Some(p) => std::fs::write(p, json + "\n")
            .map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => Ok(()),
    }
}

/// Tomogram of the affine image of a state, evaluated at the symbol level so
/// that maps leaving the Bloch ball still produce their (non-positive)
/// output tomogram instead of aborting.
fn affine_symbol_tomogram(
    aff: &tomo_core::qstate::AffineQubitChannel,
    rho: &DensityMatrix,
    grid: &AngularGrid,
) -> QubitTomogram {
    let a = aff.bloch_action(density_to_bloch(rho));
    let mut m = tomo_core::linalg::Mat2::identity();
    m = m.add(&pauli(Axis::X).scale_re(a.x));
    m = m.add(&pauli(Axis::Y).scale_re(a.y));
    m = m.add(&pauli(Axis::Z).scale_re(a.z));
    let m = m.scale_re(0.5);
    let values = sample_symbol(&m, grid).iter().map(|z| z.re).collect();
    QubitTomogram::from_values(grid.clone(), values)
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::QubitTomogram { state, grid, output } => {
            let rho = parse_qubit_state(&state).map_err(|e| e.to_string())?;
            let grid = parse_grid(&grid)?;
            let w = sample_tomogram(&rho, &grid);
            let mut out = open_output(&output)?;
            csvout::write_qubit_tomogram(&mut out, &w).map_err(|e| e.to_string())?;
            Ok(ExitCode::SUCCESS)
        }

        Command::QubitChannel {
            channel,
            state,
            path,
            grid,
            output,
            report,
        } => {
            let spec = parse_qubit_channel(&channel).map_err(|e| e.to_string())?;
            let rho = parse_qubit_state(&state).map_err(|e| e.to_string())?;
            let grid = parse_grid(&grid)?;

            let choi_min = choi_of(&spec).min_eigenvalue();
            let mut warning = None;
            if choi_min < -NumericsConfig::default().cp_tolerance {
                warning = Some(format!(
                    "channel is not completely positive (Choi min eigenvalue {choi_min:.6e})"
                ));
            }

            // Direct path; non-CP affine maps fall back to the symbol-level
            // action so the computation proceeds.
            let direct = match &spec {
                ChannelSpec::Affine(aff) => match apply_channel(&spec, &rho) {
                    Ok(out) => sample_tomogram(&out, &grid),
                    Err(Error::NonCpEvidence(_)) => affine_symbol_tomogram(aff, &rho, &grid),
                    Err(e) => return Err(e.to_string()),
                },
                _ => sample_tomogram(&apply_channel(&spec, &rho).map_err(|e| e.to_string())?, &grid),
            };
            let kernel_out = apply_kernel(&QubitKernel::for_channel(&spec), &sample_tomogram(&rho, &grid));

            let (primary, deviation) = match path {
                PathChoice::Direct => (&direct, None),
                PathChoice::Kernel => (&kernel_out, None),
                PathChoice::Both => (&direct, Some(direct.max_abs_diff(&kernel_out))),
            };

            let mut out = open_output(&output)?;
            csvout::write_qubit_tomogram(&mut out, primary).map_err(|e| e.to_string())?;

            let pass = deviation.is_none_or(|d| d < QUBIT_DEVIATION_THRESHOLD);
            let rep = QubitChannelReport {
                max_deviation: deviation,
                threshold: QUBIT_DEVIATION_THRESHOLD,
                pass,
                choi_min_eigenvalue: choi_min,
                warning,
            };
            write_json(&report, &rep)?;
            Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }

        Command::Boson {
            state,
            kind,
            k,
            alpha,
            channel_json,
            representation,
            path,
            tmax,
            output,
            report,
        } => {
            let state = parse_bosonic_state(&state).map_err(|e| e.to_string())?;
            let params = match channel_json {
                Some(json) => parse_boson_channel_json(&json).map_err(|e| e.to_string())?,
                None => {
                    let (kind, k, alpha) = match (kind, k, alpha) {
                        (Some(kind), Some(k), Some(alpha)) => (kind, k, alpha),
                        _ => {
                            return Err(
                                "either --channel-json or all of --kind, --k, --alpha are required"
                                    .into(),
                            )
                        }
                    };
                    let kind = match kind {
                        KindChoice::Covariant => ChannelKind::Covariant,
                        KindChoice::Contravariant => ChannelKind::Contravariant,
                    };
                    GaussianChannelParams::new(kind, k, alpha).map_err(|e| e.to_string())?
                }
            };

            let config = NumericsConfig {
                fourier_t_max: tmax,
                ..NumericsConfig::default()
            };
            let grid = LineGrid::default_line();
            let n_phi = 64;

            let f = char_fn(&state).map_err(|e| e.to_string())?;
            let input = tomogram_from_charfn(&f, &grid, n_phi, &config).map_err(|e| e.to_string())?;

            let direct_tomo =
                tomogram_from_charfn(&apply_gaussian_channel_direct(&f, &params), &grid, n_phi, &config)
                    .map_err(|e| e.to_string())?;
            let kernel_tomo =
                apply_gaussian_kernel(&input, &params, &config).map_err(|e| e.to_string())?;

            let (_, output_variance) = direct_tomo.moments(0);
            let (marg_out, marg_in) = kernel_marginals(&params);
            let marginal_input = if marg_in.is_finite() { Some(marg_in) } else { None };

            let deviation = match (path, representation) {
                (PathChoice::Both, Representation::Tomogram) => {
                    Some(direct_tomo.max_abs_diff(&kernel_tomo))
                }
                (PathChoice::Both, Representation::Plane) => {
                    let via_direct = plane_distribution(&direct_tomo).map_err(|e| e.to_string())?;
                    let via_plane = apply_plane_channel(
                        &plane_distribution(&input).map_err(|e| e.to_string())?,
                        &params,
                        &config,
                    )
                    .map_err(|e| e.to_string())?;
                    Some(via_direct.max_abs_diff(&via_plane))
                }
                _ => None,
            };

            let primary: &OpticalTomogram = match path {
                PathChoice::Kernel => &kernel_tomo,
                _ => &direct_tomo,
            };
            let mut out = open_output(&output)?;
            match representation {
                Representation::Tomogram => {
                    csvout::write_optical_tomogram(&mut out, primary).map_err(|e| e.to_string())?
                }
                Representation::Plane => {
                    let plane = plane_distribution(primary).map_err(|e| e.to_string())?;
                    csvout::write_plane(&mut out, &plane).map_err(|e| e.to_string())?
                }
            }

            let pass = deviation.is_none_or(|d| d < BOSON_DEVIATION_THRESHOLD);
            let rep = BosonReport {
                max_deviation: deviation,
                threshold: BOSON_DEVIATION_THRESHOLD,
                pass,
                output_variance,
                marginal_output: marg_out,
                marginal_input,
                warning: None,
            };
            write_json(&report, &rep)?;
            Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }

        Command::QubitKernel {
            channel,
            grid,
            output,
            diagnostics,
        } => {
            let spec = parse_qubit_channel(&channel).map_err(|e| e.to_string())?;
            let grid = parse_grid(&grid)?;
            let kernel = QubitKernel::for_channel(&spec);

            let mut out = open_output(&output)?;
            csvout::write_kernel_dump(&mut out, &kernel, &grid).map_err(|e| e.to_string())?;

            if diagnostics.is_some() {
                let d = tomo_core::qubit_kernels::kernel_diagnostics(
                    &kernel,
                    &grid,
                    &NumericsConfig::default(),
                )
                .map_err(|e| e.to_string())?;
                let (x, y) = d.min_value_location;
                let rep = tomo_cli::report::KernelDiagnosticsReport {
                    row_integral_max_dev: d.row_integral_max_dev,
                    min_value: d.min_value,
                    min_value_location: tomo_cli::report::MinLocation {
                        m: x.m.value(),
                        alpha: x.alpha,
                        beta: x.beta,
                        m2: y.m.value(),
                        alpha2: y.alpha,
                        beta2: y.beta,
                    },
                    choi_min_eigenvalue: d.choi_min_eigenvalue,
                };
                write_json(&diagnostics, &rep)?;
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Verify { suite, report } => {
            let selection = match suite {
                SuiteChoice::Qubit => SuiteSelection::Qubit,
                SuiteChoice::Boson => SuiteSelection::Boson,
                SuiteChoice::All => SuiteSelection::All,
            };
            let run_report: RunReport = run_suite(selection);
            for c in &run_report.checks {
                println!(
                    "{:<44} measured {:>12.4e}  threshold {:>10.2e}  {}",
                    c.name,
                    c.measured,
                    c.threshold,
                    if c.pass { "PASS" } else { "FAIL" }
                );
            }
            println!(
                "suite {}: {}",
                run_report.suite,
                if run_report.pass { "PASS" } else { "FAIL" }
            );
            write_json(&report, &run_report)?;
            Ok(if run_report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}
