//! Command-line front end. Records go to stdout as JSON, JSON lines or CSV;
//! diagnostics go to stderr.
//!
//! Exit codes: 0 pass, 1 suite failure, 2 usage or parse error,
//! 3 certification failure.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebra::AlgebraCoords;
use crate::group::{decompose_with_tolerance, is_member, BlocksJson, DecompositionFactors, GroupElement, MembershipReport};
use crate::matrix::QMat2;
use crate::orbits::{
    conservation_residuals, contraction_sweep, log_grid, log_log_slope, sample_orbit, ConservationResiduals,
    ContractionRow, DEFAULT_PMAX_FACTOR,
};
use crate::quaternion::UnitQuaternion;
use crate::suites::{self, Suite};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNCERTIFIED: i32 = 3;

/// Membership tolerance for `decompose` input and its reconstruction.
pub const DECOMPOSE_TOLERANCE: f64 = 1e-8;

pub const CSV_HEADER: &str = "R,E,mass_shell_defect";

#[derive(Debug, Parser)]
#[command(name = "ds4", version, about = "Sp(2,2) de Sitter group toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a verification suite and print its JSON report.
    Check {
        suite: Suite,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long, env = "DS4_SEED", default_value_t = 0)]
        seed: u64,
        /// Overrides the suite's compiled-in tolerance.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Factor a group element given as {"blocks": {...}} JSON.
    Decompose {
        /// Read from this file instead of stdin.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Sample points of a co-adjoint orbit as JSON lines.
    Orbit {
        #[arg(long, default_value_t = 1.0)]
        kappa: f64,
        #[arg(long, default_value_t = 10)]
        n: usize,
        /// Momentum window; defaults to 5 kappa.
        #[arg(long)]
        pmax: Option<f64>,
        #[arg(long, env = "DS4_SEED", default_value_t = 0)]
        seed: u64,
        /// Emit dual-algebra coordinates (default).
        #[arg(long, conflicts_with = "matrix")]
        coords: bool,
        /// Emit the quaternionic block matrix.
        #[arg(long)]
        matrix: bool,
    },
    /// Energy and mass-shell defect over a logarithmic grid of radii.
    Contract {
        #[arg(long, default_value_t = 1.0)]
        m: f64,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        #[arg(long, value_delimiter = ',', default_values_t = [1.0, 0.0, 0.0], allow_negative_numbers = true)]
        p: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_values_t = [0.0, 1.0, 0.0], allow_negative_numbers = true)]
        q: Vec<f64>,
        #[arg(long, default_value_t = 10.0)]
        r_min: f64,
        #[arg(long, default_value_t = 1e6)]
        r_max: f64,
        #[arg(long, default_value_t = 25)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Serialize)]
struct DecomposeOutput {
    factors: DecompositionFactors,
    reconstruction_residual: f64,
    membership: MembershipReport,
}

#[derive(Serialize)]
struct RejectedOutput {
    error: String,
    membership: MembershipReport,
}

#[derive(Serialize)]
struct OrbitRecord {
    index: usize,
    z: UnitQuaternion,
    p: [f64; 3],
    kappa: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    coords: Option<AlgebraCoords>,
    #[serde(skip_serializing_if = "Option::is_none")]
    matrix: Option<QMat2>,
    residuals: ConservationResiduals,
}

#[derive(Serialize)]
struct ContractOutput {
    rows: Vec<ContractionRow>,
    slope: Option<f64>,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return if code == 0 { EXIT_PASS } else { EXIT_USAGE };
        }
    };
    let result = match cli.command {
        Command::Check { suite, trials, seed, tol } => check(suite, trials, seed, tol, out, err),
        Command::Decompose { file } => decompose_cmd(file, stdin, out, err),
        Command::Orbit { kappa, n, pmax, seed, matrix, .. } => orbit(kappa, n, pmax, seed, matrix, out, err),
        Command::Contract { m, c, p, q, r_min, r_max, steps, format } => {
            contract(m, c, &p, &q, r_min, r_max, steps, format, out, err)
        }
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAIL
        }
    }
}

fn usage(err: &mut dyn Write, msg: impl std::fmt::Display) -> std::io::Result<i32> {
    writeln!(err, "error: {msg}")?;
    Ok(EXIT_USAGE)
}

fn to_line<T: Serialize>(value: &T) -> std::io::Result<String> {
    serde_json::to_string(value).map_err(std::io::Error::other)
}

fn check(
    suite: Suite,
    trials: Option<u64>,
    seed: u64,
    tol: Option<f64>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::io::Result<i32> {
    let trials = trials.unwrap_or_else(|| suite.default_trials());
    let tol = tol.unwrap_or_else(|| suite.default_tolerance());
    if !(tol.is_finite() && tol >= 0.0) {
        return usage(err, format!("tolerance must be a non-negative number, got {tol}"));
    }
    let report = match suites::run(suite, trials, seed, tol) {
        Ok(r) => r,
        Err(crate::Error::Domain(msg)) => return usage(err, msg),
        Err(e) => {
            writeln!(err, "suite {suite} aborted: {e}")?;
            return Ok(EXIT_FAIL);
        }
    };
    writeln!(out, "{}", to_line(&report)?)?;
    if report.pass {
        Ok(EXIT_PASS)
    } else {
        writeln!(err, "suite {suite} failed: max residual {:e} > {:e}", report.max_residual, tol)?;
        Ok(EXIT_FAIL)
    }
}

fn decompose_cmd(
    file: Option<PathBuf>,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::io::Result<i32> {
    let text = match file {
        Some(path) => match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) => return usage(err, format!("cannot read {}: {e}", path.display())),
        },
        None => {
            let mut t = String::new();
            if let Err(e) = stdin.read_to_string(&mut t) {
                return usage(err, format!("cannot read stdin: {e}"));
            }
            t
        }
    };
    let input: BlocksJson = match serde_json::from_str(&text) {
        Ok(x) => x,
        Err(e) => return usage(err, format!("invalid group element JSON: {e}")),
    };
    let membership = is_member(&input.blocks, DECOMPOSE_TOLERANCE);
    let reject = |out: &mut dyn Write, err: &mut dyn Write, error: String| -> std::io::Result<i32> {
        writeln!(err, "not certified: {error}")?;
        writeln!(out, "{}", to_line(&RejectedOutput { error, membership })?)?;
        Ok(EXIT_UNCERTIFIED)
    };
    if !membership.pass {
        let msg = format!(
            "not a group member (det defect {:e}, pseudo-unitarity defect {:e})",
            membership.det_defect, membership.unitarity_defect
        );
        return reject(out, err, msg);
    }
    let g = match GroupElement::new(input.blocks, DECOMPOSE_TOLERANCE) {
        Ok(g) => g,
        Err(e) => return reject(out, err, e.to_string()),
    };
    let factors = match decompose_with_tolerance(&g, DECOMPOSE_TOLERANCE) {
        Ok(f) => f,
        Err(e) => return reject(out, err, e.to_string()),
    };
    let residual = match factors.reconstruct() {
        Ok(back) => back.matrix().dist_max(g.matrix()),
        Err(e) => return reject(out, err, e.to_string()),
    };
    let record = DecomposeOutput {
        factors,
        reconstruction_residual: residual,
        membership,
    };
    writeln!(out, "{}", to_line(&record)?)?;
    if residual <= DECOMPOSE_TOLERANCE {
        Ok(EXIT_PASS)
    } else {
        writeln!(err, "reconstruction residual {residual:e} exceeds {DECOMPOSE_TOLERANCE:e}")?;
        Ok(EXIT_UNCERTIFIED)
    }
}

fn orbit(
    kappa: f64,
    n: usize,
    pmax: Option<f64>,
    seed: u64,
    matrix: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::io::Result<i32> {
    if !(kappa.is_finite() && kappa >= 0.0) {
        return usage(err, format!("kappa must be non-negative, got {kappa}"));
    }
    if n == 0 {
        return usage(err, "n must be positive");
    }
    let p_max = pmax.unwrap_or(DEFAULT_PMAX_FACTOR * kappa);
    if !(p_max.is_finite() && p_max > 0.0) {
        return usage(err, format!("momentum window must be positive (kappa {kappa}, pmax {p_max}); pass --pmax"));
    }
    let points = match sample_orbit(kappa, n, p_max, seed) {
        Ok(p) => p,
        Err(e) => return usage(err, e),
    };
    for (index, pt) in points.iter().enumerate() {
        let x = pt.matrix();
        let coords = x.coords();
        let record = OrbitRecord {
            index,
            z: pt.z,
            p: pt.p,
            kappa,
            coords: (!matrix).then_some(coords),
            matrix: matrix.then(|| x.matrix()),
            residuals: conservation_residuals(&coords, kappa),
        };
        writeln!(out, "{}", to_line(&record)?)?;
    }
    Ok(EXIT_PASS)
}

#[allow(clippy::too_many_arguments)]
fn contract(
    m: f64,
    c: f64,
    p: &[f64],
    q: &[f64],
    r_min: f64,
    r_max: f64,
    steps: usize,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::io::Result<i32> {
    let (Ok(p), Ok(q)) = (<[f64; 3]>::try_from(p), <[f64; 3]>::try_from(q)) else {
        return usage(err, "--p and --q take three comma-separated components");
    };
    let rows = match log_grid(r_min, r_max, steps).and_then(|grid| contraction_sweep(m, c, p, q, &grid)) {
        Ok(rows) => rows,
        Err(e) => return usage(err, e),
    };
    let slope = log_log_slope(&rows);
    match format {
        Format::Csv => {
            writeln!(out, "{CSV_HEADER}")?;
            for r in &rows {
                writeln!(out, "{:e},{:e},{:e}", r.radius, r.energy, r.mass_shell_defect)?;
            }
            match slope {
                Some(s) => writeln!(out, "# slope={s}")?,
                None => writeln!(out, "# slope=undefined")?,
            }
        }
        Format::Json => writeln!(out, "{}", to_line(&ContractOutput { rows, slope })?)?,
    }
    Ok(EXIT_PASS)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut input = stdin.as_bytes();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let argv = std::iter::once("ds4").chain(args.iter().copied());
        let code = run(argv, &mut input, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn check_reports() {
        let (code, out, _) = call(&["check", "clifford"], "");
        assert_eq!(code, 0);
        let report: suites::RunReport = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(report.max_residual, 0.0);
        assert!(report.pass);

        let (code, _, err) = call(&["check", "nope"], "");
        assert_eq!(code, 2);
        assert!(!err.is_empty());

        let (code, out, _) = call(&["check", "contraction", "--tol", "1e-9"], "");
        assert_eq!(code, 1);
        assert!(out.contains("\"pass\":false"));
    }

    #[test]
    fn decompose_identity() {
        let json = serde_json::to_string(&GroupElement::IDENTITY).unwrap();
        let (code, out, _) = call(&["decompose"], &json);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
        let f: DecompositionFactors = serde_json::from_value(v["factors"].clone()).unwrap();
        assert_eq!(f.w, UnitQuaternion::IDENTITY);
        assert_eq!(f.psi, 0.0);
        assert_eq!(f.v, UnitQuaternion::IDENTITY);
        assert_eq!(f.phi, 0.0);
        assert_eq!(f.u, UnitQuaternion::basis(1));
        assert_eq!(v["reconstruction_residual"], 0.0);
    }

    #[test]
    fn decompose_rejections() {
        let (code, _, _) = call(&["decompose"], "{\"blocks\": 3}");
        assert_eq!(code, 2);
        let gamma4 = BlocksJson {
            blocks: crate::gamma::gamma(4).unwrap(),
        };
        let (code, out, _) = call(&["decompose"], &serde_json::to_string(&gamma4).unwrap());
        assert_eq!(code, 3);
        let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
        assert!(v["membership"]["unitarity_defect"].as_f64().unwrap() > 1.0);
    }

    #[test]
    fn orbit_lines() {
        let (code, out, _) = call(&["orbit", "--kappa", "1", "--n", "3", "--seed", "7"], "");
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 3);
        for line in out.lines() {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            assert!(v["coords"].is_object());
            assert!(v["residuals"]["r2"].as_f64().unwrap().abs() < 1e-9);
        }
        let (code, _, _) = call(&["orbit", "--kappa", "0"], "");
        assert_eq!(code, 2);
        let (code, _, _) = call(&["orbit", "--kappa", "0", "--pmax", "0"], "");
        assert_eq!(code, 2);
        let (code, out, _) = call(&["orbit", "--kappa", "0", "--pmax", "2", "--n", "4", "--matrix"], "");
        assert_eq!(code, 0);
        assert!(out.lines().all(|l| l.contains("\"matrix\"") && !l.contains("\"coords\"")));
        let (code, _, _) = call(&["orbit", "--coords", "--matrix"], "");
        assert_eq!(code, 2);
    }

    #[test]
    fn contract_table() {
        let (code, out, _) = call(&["contract", "--steps", "5"], "");
        assert_eq!(code, 0);
        let lines: Vec<_> = out.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines.len(), 7);
        assert!(lines[6].starts_with("# slope="));

        let (code, out, _) = call(&["contract", "--p", "0,0,0", "--q", "0,0,0", "--steps", "4"], "");
        assert_eq!(code, 0);
        for line in out.lines().skip(1).take(4) {
            assert_eq!(line.split(',').nth(2).unwrap(), "0e0");
        }

        let (code, _, _) = call(&["contract", "--r-min", "10", "--r-max", "1"], "");
        assert_eq!(code, 2);
        let (code, out, _) = call(&["contract", "--format", "json", "--steps", "3"], "");
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["rows"].as_array().unwrap().len(), 3);
    }
}
