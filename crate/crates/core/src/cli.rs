//! Command-line front end. All commands render to strings first so that
//! output is identical whether it goes to a file or to stdout.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::json;
use thiserror::Error;

use crate::analysis::{riesz_decompose, spectral_mapping_power, IsolatedPart};
use crate::calculus::{
    poly_calculus, poly_direct, riesz_projection_with, QuadratureOptions, DEFAULT_NODES,
};
use crate::error::SpectralError;
use crate::io::{self, IoError};
use crate::linalg::{s_spectrum_tol, QMatrix, CLUSTER_TOL};
use crate::quat::{ImaginaryUnit, Quaternion, Sphere};
use crate::shift::perturbation_experiment;
use crate::verify;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Domain(#[from] SpectralError),
    #[error(transparent)]
    Io(#[from] IoError),
    #[error("UsageError: {0}")]
    Usage(String),
}

impl CliError {
    /// 1 for domain errors, 2 for I/O, parse and usage errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Io(_) | CliError::Usage(_) => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// S-spectrum as spheres (re, rho) with multiplicities.
    Spectrum,
    /// Riesz projector onto the spheres given with --sphere.
    Riesz,
    /// Riesz decomposition along the spheres given with --sphere.
    Decompose,
    /// Polynomial S-functional calculus, contour against direct evaluation.
    Funcalc,
    /// Spectral mapping for A^n.
    Power,
    /// Finite-rank perturbations of a truncated shift.
    Shift,
    /// Property suite of the whole library; exits 1 on any failure.
    Verify,
}

/// Parses `re,rho`.
fn parse_sphere(s: &str) -> Result<Sphere, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected re,rho, got {s:?}"));
    }
    let re: f64 = parts[0].trim().parse().map_err(|e| format!("re: {e}"))?;
    let rho: f64 = parts[1].trim().parse().map_err(|e| format!("rho: {e}"))?;
    Ok(Sphere::new(re, rho))
}

/// Parses `x,y,z` and normalizes; rejects norms below `1e-6`.
fn parse_unit(s: &str) -> Result<ImaginaryUnit, String> {
    let c: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    if c.len() != 3 {
        return Err(format!("expected x,y,z, got {s:?}"));
    }
    ImaginaryUnit::new(c[0], c[1], c[2]).ok_or_else(|| "slice unit norm below 1e-6".to_string())
}

#[derive(Debug, Parser)]
#[command(
    name = "qspectra",
    version,
    about = "S-spectra and Riesz projections of quaternionic matrices"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Input matrix, {"n": int, "entries": [[[w,x,y,z], ...], ...]}.
    #[arg(short, long, global = true)]
    pub input: Option<PathBuf>,

    /// Output file; stdout when absent.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,

    /// Target sphere re,rho; repeat for several.
    #[arg(long = "sphere", global = true, value_parser = parse_sphere, allow_hyphen_values = true)]
    pub spheres: Vec<Sphere>,

    #[arg(long, global = true, default_value_t = DEFAULT_NODES)]
    pub nodes: usize,

    /// Eigenvalue clustering tolerance, relative to max(1, spectral radius).
    #[arg(long, global = true, default_value_t = CLUSTER_TOL)]
    pub tol: f64,

    /// Slice unit x,y,z, normalized on input.
    #[arg(long = "slice", global = true, value_parser = parse_unit, allow_hyphen_values = true)]
    pub slice_unit: Option<ImaginaryUnit>,

    #[arg(long, global = true, default_value_t = 2)]
    pub power: u32,

    /// Real coefficients c0,c1,... of f(q) = Σ q^m c_m.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub poly: Vec<f64>,

    /// Emit spectra as re,rho CSV rows (next to the JSON output, or on stdout).
    #[arg(long, global = true)]
    pub csv: bool,

    #[arg(long, global = true, env = "QSPECTRA_SEED", default_value_t = 0)]
    pub seed: u64,

    /// Truncation length for `shift`.
    #[arg(long, global = true, default_value_t = 16)]
    pub size: usize,

    /// Perturbation rank for `shift`.
    #[arg(long, global = true, default_value_t = 1)]
    pub rank: usize,

    /// Number of trials for `shift`.
    #[arg(long, global = true, default_value_t = 10)]
    pub trials: usize,
}

/// Rendered artifacts of one command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rendered {
    pub json: String,
    pub csv: Option<String>,
    /// Whether every check passed; only `verify` can fail this way.
    pub passed: bool,
    /// Human-readable text for stdout, used by `verify`.
    pub table: Option<String>,
}

impl Rendered {
    fn json(json: String) -> Self {
        Rendered {
            json,
            csv: None,
            passed: true,
            table: None,
        }
    }
}

fn require_input(cfg: &RunConfig) -> Result<QMatrix, CliError> {
    let path = cfg
        .input
        .as_ref()
        .ok_or_else(|| CliError::Usage("this command needs -i/--input".into()))?;
    Ok(io::load_matrix(path)?)
}

fn require_spheres(cfg: &RunConfig) -> Result<&[Sphere], CliError> {
    if cfg.spheres.is_empty() {
        return Err(CliError::Usage(
            "this command needs at least one --sphere re,rho".into(),
        ));
    }
    Ok(&cfg.spheres)
}

fn quadrature(cfg: &RunConfig) -> QuadratureOptions {
    let mut opts = QuadratureOptions::default().with_nodes(cfg.nodes);
    opts.unit = cfg.slice_unit;
    opts
}

/// Runs one command against an already loaded matrix (ignored by `shift`
/// and `verify`).
pub fn render(cfg: &RunConfig, a: Option<&QMatrix>) -> Result<Rendered, CliError> {
    let need = || a.ok_or_else(|| CliError::Usage("this command needs -i/--input".into()));
    match cfg.command {
        Command::Spectrum => {
            let spec = s_spectrum_tol(need()?, cfg.tol)?;
            let mut out = Rendered::json(io::to_canonical_string(&spec));
            if cfg.csv {
                out.csv = Some(io::spectrum_csv(&spec));
            }
            Ok(out)
        }
        Command::Riesz => {
            let a = need()?;
            let spec = s_spectrum_tol(a, cfg.tol)?;
            let p = riesz_projection_with(a, &spec, require_spheres(cfg)?, quadrature(cfg))?;
            Ok(Rendered::json(io::to_canonical_string(
                &io::projection_json(&p),
            )))
        }
        Command::Decompose => {
            let a = need()?;
            let spec = s_spectrum_tol(a, cfg.tol)?;
            let part = IsolatedPart::of(&spec, require_spheres(cfg)?)?;
            let report = riesz_decompose(a, &part)?;
            Ok(Rendered::json(io::to_canonical_string(
                &io::decomposition_json(&report),
            )))
        }
        Command::Funcalc => {
            let a = need()?;
            if cfg.poly.is_empty() {
                return Err(CliError::Usage("funcalc needs --poly c0,c1,...".into()));
            }
            let coeffs: Vec<Quaternion> = cfg.poly.iter().map(|c| Quaternion::real(*c)).collect();
            let unit = cfg.slice_unit.unwrap_or(ImaginaryUnit::I);
            let contour = poly_calculus(a, &coeffs, unit, cfg.nodes)?;
            let direct = poly_direct(a, &coeffs);
            let value = json!({
                "coefficients": cfg.poly,
                "f_contour": contour,
                "f_direct": direct,
                "difference": contour.max_abs_diff(&direct),
                "nodes": cfg.nodes,
                "slice_unit": unit,
            });
            Ok(Rendered::json(io::to_canonical_string(&value)))
        }
        Command::Power => {
            let report = spectral_mapping_power(need()?, cfg.power)?;
            let mut out = Rendered::json(io::to_canonical_string(&report));
            if cfg.csv {
                out.csv = Some(io::spectrum_csv(&report.lhs));
            }
            Ok(out)
        }
        Command::Shift => {
            let report = perturbation_experiment(cfg.size, cfg.rank, cfg.trials, cfg.seed)?;
            Ok(Rendered::json(io::to_canonical_string(&report)))
        }
        Command::Verify => {
            let records = verify::run(cfg.seed);
            let passed = records.iter().all(|r| r.passed);
            Ok(Rendered {
                json: io::to_canonical_string(&records),
                csv: None,
                passed,
                table: Some(verify::table(&records)),
            })
        }
    }
}

/// Loads the input if needed, renders and writes the artifacts.
pub fn run(cfg: &RunConfig) -> Result<bool, CliError> {
    let a = match cfg.command {
        Command::Shift | Command::Verify => None,
        _ => Some(require_input(cfg)?),
    };
    let out = render(cfg, a.as_ref())?;
    match (&cfg.output, &out.csv) {
        (Some(path), csv) => {
            io::write_text(path, &out.json)?;
            if let Some(csv) = csv {
                io::write_text(&path.with_extension("csv"), csv)?;
            }
        }
        (None, Some(csv)) => print!("{csv}"),
        (None, None) if out.table.is_none() => print!("{}", out.json),
        (None, None) => {}
    }
    if let Some(table) = &out.table {
        print!("{table}");
    }
    Ok(out.passed)
}

/// Entry point for the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cfg) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
