//! `qspec`: command-line front end for the quaternionic spectral toolkit.
//!
//! Matrices and vectors are read from the JSON formats of the core crate
//! (`{"n": .., "entries": [[[w,x,y,z], ..], ..]}`). Results go to stdout as
//! JSON (compact by default, `--pretty` for indented); diagnostics and the
//! human-readable verification table go to stderr.
//!
//! Exit codes: 0 success / all checks pass, 1 verification failure,
//! 2 configuration or I/O error.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use qspec_core::contour::{riesz_projector, QuadratureConfig};
use qspec_core::qmatrix::{QMatrix, QVector};
use qspec_core::quat::{Quaternion, UnitImaginary};
use qspec_core::slicefun::{funcalc_named, funcalc_trigpoly, TrigPoly};
use qspec_core::spectral::{
    decompose, diag_measure, herglotz_sequence, pair_measure, positive_definite_check,
    q_positivity_with,
};
use qspec_core::sspectrum::{
    check_resolvent_equation, s_resolvent_left, s_resolvent_right, s_spectrum,
};
use qspec_core::verify::{verify_all, RunConfig};

#[derive(Parser)]
#[command(name = "qspec", version, about = "S-spectra, Riesz projectors and spectral measures of quaternionic matrices")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct GlobalOpts {
    /// Base seed for randomized suites.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Quadrature nodes per contour loop.
    #[arg(long, global = true, default_value_t = 256)]
    nodes: usize,
    /// Slice plane as "x,y,z" (the imaginary unit of C_I).
    #[arg(long, global = true, default_value = "1,0,0", value_parser = parse_plane)]
    plane: UnitImaginary,
    /// Quadrature tolerance.
    #[arg(long = "tol-q", global = true, default_value_t = qspec_core::tol::EPS_Q)]
    tol_q: f64,
    /// Positive-semidefiniteness tolerance.
    #[arg(long = "tol-psd", global = true, default_value_t = qspec_core::tol::EPS_PSD)]
    tol_psd: f64,
    /// chi-symmetry tolerance.
    #[arg(long = "tol-sym", global = true, default_value_t = qspec_core::tol::EPS_SYM)]
    tol_sym: f64,
    /// Eigenvalue clustering tolerance.
    #[arg(long = "tol-cluster", global = true, default_value_t = qspec_core::tol::EPS_CLUSTER)]
    tol_cluster: f64,
    /// Spectral guard distance.
    #[arg(long = "tol-spec", global = true, default_value_t = qspec_core::tol::EPS_SPEC)]
    tol_spec: f64,
    /// Slice-continuity tolerance.
    #[arg(long = "tol-slice", global = true, default_value_t = qspec_core::tol::EPS_SLICE)]
    tol_slice: f64,
    /// Compact JSON output (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Pretty-printed JSON output.
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Subcommand)]
enum Command {
    /// S-spectrum of a matrix as a list of eigenspheres.
    Sspec { matrix: PathBuf },
    /// Evaluate an S-resolvent operator at a point.
    Resolvent {
        matrix: PathBuf,
        /// left | right
        #[arg(long)]
        side: String,
        /// Point as "w,x,y,z".
        #[arg(long, value_parser = parse_quat)]
        s: Quaternion,
    },
    /// Residuals of both forms of the S-resolvent equation.
    ResolventCheck {
        matrix: PathBuf,
        #[arg(long, value_parser = parse_quat)]
        s: Quaternion,
        #[arg(long, value_parser = parse_quat)]
        p: Quaternion,
    },
    /// Riesz projector for selected spheres of the S-spectrum.
    Riesz {
        matrix: PathBuf,
        /// Comma-separated sphere indices, e.g. "0,2".
        #[arg(long, value_delimiter = ',')]
        select: Vec<usize>,
    },
    /// Eigen-angles and multiplicities of a unitary matrix.
    Decompose { matrix: PathBuf },
    /// Spectral measure ν_x (or ν_{x,y}) with its q-positivity verdict.
    Measure {
        matrix: PathBuf,
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: Option<PathBuf>,
    },
    /// Herglotz sequence r(n) = <U^n x, x> with the Toeplitz PSD verdict.
    Herglotz {
        matrix: PathBuf,
        #[arg(long)]
        x: PathBuf,
        #[arg(long = "N", default_value_t = 12)]
        n_max: usize,
    },
    /// Functional calculus f(U) for a built-in f or a trig polynomial.
    Funcalc {
        matrix: PathBuf,
        /// Built-in name: identity, inverse, square, cosine_part, abs_cos, exp_scaled.
        #[arg(long = "fn", conflicts_with = "trig")]
        fn_name: Option<String>,
        /// JSON file with coefficient terms [[m, [w,x,y,z]], ...].
        #[arg(long)]
        trig: Option<PathBuf>,
    },
    /// Run the full theorem verification suite.
    Verify {
        /// Largest matrix dimension used by the suite.
        #[arg(long, default_value_t = 5)]
        dim_cap: usize,
        /// Instances per theorem family.
        #[arg(long, default_value_t = 4)]
        instances: usize,
    },
}

fn parse_quat(s: &str) -> Result<Quaternion, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(format!("expected \"w,x,y,z\", got \"{s}\""));
    }
    let mut vals = [0.0f64; 4];
    for (slot, part) in vals.iter_mut().zip(&parts) {
        *slot = part.trim().parse().map_err(|e| format!("bad component \"{part}\": {e}"))?;
    }
    Ok(Quaternion::new(vals[0], vals[1], vals[2], vals[3]))
}

fn parse_plane(s: &str) -> Result<UnitImaginary, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected \"x,y,z\", got \"{s}\""));
    }
    let mut vals = [0.0f64; 3];
    for (slot, part) in vals.iter_mut().zip(&parts) {
        *slot = part.trim().parse().map_err(|e| format!("bad component \"{part}\": {e}"))?;
    }
    UnitImaginary::new(vals[0], vals[1], vals[2]).map_err(|e| e.to_string())
}

fn load_matrix(path: &PathBuf) -> Result<QMatrix, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_vector(path: &PathBuf) -> Result<QVector, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit<T: Serialize>(value: &T, pretty: bool) -> Result<(), String> {
    let out = if pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    }
    .map_err(|e| e.to_string())?;
    println!("{out}");
    Ok(())
}

#[derive(Serialize)]
struct SpheresOut {
    spheres: Vec<qspec_core::quat::EigenSphere>,
}

#[derive(Serialize)]
struct ResolventCheckOut {
    residual_eq21: f64,
    residual_eq22: f64,
}

#[derive(Serialize)]
struct RieszOut {
    matrix: QMatrix,
    idem: f64,
    comm: f64,
}

#[derive(Serialize)]
struct DecomposeOut {
    angles: Vec<f64>,
    multiplicities: Vec<usize>,
}

#[derive(Serialize)]
struct AtomOut {
    t: f64,
    w: Quaternion,
}

#[derive(Serialize)]
struct MeasureOut {
    atoms: Vec<AtomOut>,
    q_positive: bool,
}

#[derive(Serialize)]
struct HerglotzOut {
    sequence: Vec<Quaternion>,
    min_eigenvalue: f64,
    psd: bool,
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    let g = &cli.global;
    let pretty = g.pretty;
    let quad = QuadratureConfig {
        nodes_per_loop: g.nodes,
        plane: g.plane,
        ..QuadratureConfig::default()
    };
    match &cli.command {
        Command::Sspec { matrix } => {
            let a = load_matrix(matrix)?;
            let spectrum = s_spectrum(&a).map_err(|e| e.to_string())?;
            emit(&SpheresOut { spheres: spectrum.spheres }, pretty)?;
        }
        Command::Resolvent { matrix, side, s } => {
            let a = load_matrix(matrix)?;
            let value = match side.as_str() {
                "left" => s_resolvent_left(s, &a),
                "right" => s_resolvent_right(s, &a),
                other => return Err(format!("--side must be left or right, got \"{other}\"")),
            }
            .map_err(|e| e.to_string())?;
            emit(&value, pretty)?;
        }
        Command::ResolventCheck { matrix, s, p } => {
            let a = load_matrix(matrix)?;
            let (r1, r2) = check_resolvent_equation(s, p, &a).map_err(|e| e.to_string())?;
            emit(&ResolventCheckOut { residual_eq21: r1, residual_eq22: r2 }, pretty)?;
        }
        Command::Riesz { matrix, select } => {
            let a = load_matrix(matrix)?;
            let p = riesz_projector(&a, select, &quad).map_err(|e| e.to_string())?;
            let idem = p.mul(&p).sub(&p).frobenius();
            let comm = a.mul(&p).sub(&p.mul(&a)).frobenius();
            emit(&RieszOut { matrix: p, idem, comm }, pretty)?;
        }
        Command::Decompose { matrix } => {
            let u = load_matrix(matrix)?;
            let d = decompose(&u).map_err(|e| e.to_string())?;
            emit(
                &DecomposeOut {
                    angles: d.distinct_angles().to_vec(),
                    multiplicities: d.multiplicities().to_vec(),
                },
                pretty,
            )?;
        }
        Command::Measure { matrix, x, y } => {
            let u = load_matrix(matrix)?;
            let xv = load_vector(x)?;
            let d = decompose(&u).map_err(|e| e.to_string())?;
            let nu = match y {
                Some(ypath) => {
                    let yv = load_vector(ypath)?;
                    pair_measure(&d, &xv, &yv)
                }
                None => diag_measure(&d, &xv),
            }
            .map_err(|e| e.to_string())?;
            let verdict = q_positivity_with(&nu, g.tol_psd).verdict;
            let atoms = nu.atoms().iter().map(|(t, w)| AtomOut { t: *t, w: *w }).collect();
            emit(&MeasureOut { atoms, q_positive: verdict }, pretty)?;
        }
        Command::Herglotz { matrix, x, n_max } => {
            let u = load_matrix(matrix)?;
            let xv = load_vector(x)?;
            let sequence = herglotz_sequence(&u, &xv, *n_max).map_err(|e| e.to_string())?;
            let min_eigenvalue = positive_definite_check(&sequence).map_err(|e| e.to_string())?;
            emit(
                &HerglotzOut { sequence, min_eigenvalue, psd: min_eigenvalue >= -g.tol_psd },
                pretty,
            )?;
        }
        Command::Funcalc { matrix, fn_name, trig } => {
            let u = load_matrix(matrix)?;
            let value = match (fn_name, trig) {
                (Some(name), None) => funcalc_named(name, &u).map_err(|e| e.to_string())?,
                (None, Some(path)) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| format!("{}: {e}", path.display()))?;
                    let terms: Vec<(i64, Quaternion)> =
                        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
                    let degree =
                        terms.iter().map(|(m, _)| m.unsigned_abs() as usize).max().unwrap_or(0);
                    let poly = TrigPoly::from_terms(degree, &terms).map_err(|e| e.to_string())?;
                    funcalc_trigpoly(&poly, &u).map_err(|e| e.to_string())?
                }
                _ => return Err("provide exactly one of --fn or --trig".into()),
            };
            emit(&value, pretty)?;
        }
        Command::Verify { dim_cap, instances } => {
            let cfg = RunConfig {
                seed: g.seed,
                nodes_per_loop: g.nodes,
                eps_q: g.tol_q,
                eps_psd: g.tol_psd,
                eps_sym: g.tol_sym,
                eps_cluster: g.tol_cluster,
                eps_spec: g.tol_spec,
                eps_slice: g.tol_slice,
                plane: g.plane,
                dim_cap: *dim_cap,
                instances: *instances,
            };
            let records = verify_all(&cfg).map_err(|e| e.to_string())?;
            let summary = report::summarize(&records);
            report::print_human(&summary);
            let all_pass = summary.iter().all(|s| s.pass);
            emit(&report::VerifyOut { records, summary }, pretty)?;
            return Ok(if all_pass { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
