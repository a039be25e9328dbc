//! The `wedge-iso` command line.
//!
//! Exit codes: 0 when the computation succeeded and every check passed, 1
//! when a check failed (or a computation did not converge), 2 for bad
//! flags or input files.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::error::Error;
use crate::profile::IsoperimetricProfile;
use crate::sigma_map::{self, SigmaMap};
use crate::symmetrization3d::{check_step2, SliceSet3D};
use crate::verification::{self, OptimizeOptions, SweepOptions};
use crate::wedge_geometry::{
    check_contraction, check_measure_preservation, halfplane_perimeter, measure2d, perimeter2d,
    transport, PolarCurve, RadialShape, WedgeWeight, DEFAULT_SAMPLES,
};

pub const THREADS_ENV: &str = "WEDGE_ISO_THREADS";

#[derive(Parser, Debug)]
#[command(name = "wedge-iso", version, about = "Weighted isoperimetric profiles in the positive orthant")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct WeightArgs {
    /// Dimension; defaults to the number of exponents given.
    #[arg(long = "N")]
    dim: Option<usize>,
    /// Gaussian factor of the density e^{c|x|²}.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    c: f64,
    /// Comma separated exponents k_1,..,k_N (default: all zero).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    k: Option<Vec<f64>>,
}

impl WeightArgs {
    fn weight(&self, default_dim: usize) -> Result<WedgeWeight, Failure> {
        let k = match (&self.k, self.dim) {
            (Some(k), _) => k.clone(),
            (None, n) => vec![0.0; n.unwrap_or(default_dim)],
        };
        if let Some(bad) = k.iter().find(|v| !(**v >= 0.0)) {
            return Err(Failure::Input(format!("k must be ≥ 0, got {bad}")));
        }
        if !(self.c >= 0.0) {
            return Err(Failure::Input(format!("c must be ≥ 0, got {}", self.c)));
        }
        let w = match self.dim {
            Some(n) => WedgeWeight::with_dim(n, self.c, k),
            None => WedgeWeight::new(self.c, k),
        };
        w.map_err(Failure::from)
    }

    fn planar(&self) -> Result<WedgeWeight, Failure> {
        let w = self.weight(2)?;
        if w.dim() != 2 {
            return Err(Failure::Input(format!("this command needs N = 2, got N = {}", w.dim())));
        }
        Ok(w)
    }
}

#[derive(Args, Debug, Clone)]
struct Tolerances {
    /// Quadrature tolerance.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Relative tolerance for comparisons between computed quantities.
    #[arg(long = "tol-rel", default_value_t = 1e-6)]
    tol_rel: f64,
}

impl Tolerances {
    fn check(&self) -> Result<(), Failure> {
        for (name, v) in [("tol", self.tol), ("tol-rel", self.tol_rel)] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Failure::Input(format!("--{name} must lie in (0, 1), got {v}")));
            }
        }
        Ok(())
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the angular map σ and certify σ' ≥ 1.
    Sigma {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        k: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        l: f64,
        #[arg(long = "n-nodes", default_value_t = sigma_map::DEFAULT_NODES)]
        n_nodes: usize,
        /// Interior points used for the certificate.
        #[arg(long, default_value_t = 10_000)]
        grid: usize,
        #[arg(long, default_value_t = sigma_map::DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate the isoperimetric profile I(m).
    Profile {
        #[command(flatten)]
        weight: WeightArgs,
        /// Comma separated, strictly increasing measures.
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        m: Vec<f64>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Weighted measure of a planar radial shape.
    Measure {
        /// Radial shape JSON.
        shape: PathBuf,
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Relative weighted perimeter of a planar radial shape.
    Perimeter {
        /// Radial shape JSON.
        shape: PathBuf,
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Push a shape or curve to the half plane and compare perimeters and
    /// measures.
    Transport {
        /// Radial shape or polar curve JSON.
        input: PathBuf,
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long = "n-nodes", default_value_t = sigma_map::DEFAULT_NODES)]
        n_nodes: usize,
        #[command(flatten)]
        tols: Tolerances,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random sweep of the isoperimetric inequality over smooth shapes.
    Verify {
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.3)]
        amplitude: f64,
        /// Number J of cos(2jθ) modes.
        #[arg(long, default_value_t = verification::DEFAULT_BASIS)]
        basis: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long = "tol-abs", default_value_t = verification::DEFAULT_TOL_ABS)]
        tol_abs: f64,
        /// JSON report.
        #[arg(long)]
        out: Option<PathBuf>,
        /// CSV table of the samples.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Where shapes that violate the inequality are written.
        #[arg(long = "archive-dir", default_value = "wedge-iso-violations")]
        archive_dir: PathBuf,
    },
    /// Minimize the perimeter at fixed measure over smooth shapes.
    Optimize {
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long, allow_negative_numbers = true)]
        m: f64,
        #[arg(long, default_value_t = verification::DEFAULT_BASIS)]
        basis: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest relative gap to the profile counted as success.
        #[arg(long, default_value_t = 5e-3)]
        threshold: f64,
        #[arg(long = "max-iter", default_value_t = 4000)]
        max_iter: usize,
        #[arg(long, default_value_t = 3)]
        restarts: usize,
        #[arg(long, default_value_t = 1e-11)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replace the sections of a 3D set by quarter discs and check the
    /// measure and perimeter relations.
    Symmetrize {
        /// Slice set JSON.
        input: PathBuf,
        #[command(flatten)]
        weight: WeightArgs,
        #[command(flatten)]
        tols: Tolerances,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NonConvergence { .. } | Error::NonFinite { .. } => Failure::Check(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let bytes = fs::read(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_slice(&bytes).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
    }
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn pretty(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Writes `text` to `out`, or prints it.
fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => write_text(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn check_tol(tol: f64) -> Result<(), Failure> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Failure::Input(format!("--tol must lie in (0, 1), got {tol}")));
    }
    Ok(())
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var(THREADS_ENV) else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| Failure::Input(format!("{THREADS_ENV} must be a positive integer, got {v:?}")))?;
    // A pool may already exist when the CLI runs inside a larger program.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Parses `args` (program name first) and runs the command; returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = configure_threads().and_then(|_| dispatch(cli.command));
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

/// `Ok(passed)`.
fn dispatch(command: Command) -> Result<bool, Failure> {
    match command {
        Command::Sigma { k, l, n_nodes, grid, tol, out } => cmd_sigma(k, l, n_nodes, grid, tol, &out),
        Command::Profile { weight, m, format, tol, out } => cmd_profile(&weight, &m, format, tol, &out),
        Command::Measure { shape, weight, tol } => cmd_scalar(&shape, &weight, tol, false),
        Command::Perimeter { shape, weight, tol } => cmd_scalar(&shape, &weight, tol, true),
        Command::Transport { input, weight, n_nodes, tols, out } => {
            cmd_transport(&input, &weight, n_nodes, &tols, &out)
        }
        Command::Verify { weight, n, seed, amplitude, basis, tol, tol_abs, out, csv, archive_dir } => {
            check_tol(tol)?;
            if !(tol_abs >= 0.0) {
                return Err(Failure::Input(format!("--tol-abs must be ≥ 0, got {tol_abs}")));
            }
            let w = weight.planar()?;
            let opts = SweepOptions { basis, tol, tol_abs };
            let rep = verification::random_sweep(&w, n, seed, amplitude, &opts)?;
            if let Some(p) = &out {
                write_text(p, &pretty(&rep))?;
            }
            if let Some(p) = &csv {
                write_text(p, &rep.to_csv())?;
            }
            for &idx in &rep.violating {
                let rec = &rep.records[idx];
                let shape = crate::wedge_geometry::FourierShape { coeffs: rec.coeffs.clone() }
                    .to_radial_shape(DEFAULT_SAMPLES)?;
                let body = json!({ "shape": shape, "record": rec, "seed": rep.seed, "rng": rep.rng });
                write_text(&archive_dir.join(format!("violation_{idx}.json")), &pretty(&body))?;
            }
            println!(
                "samples {} violations {} non_finite {} min_slack {:.16e} min_rel_slack {:.16e}",
                rep.records.len(),
                rep.violations,
                rep.non_finite,
                rep.min_slack,
                rep.min_rel_slack
            );
            if rep.violations > 0 {
                eprintln!("violating shapes written to {}", archive_dir.display());
            }
            Ok(rep.violations == 0)
        }
        Command::Optimize { weight, m, basis, seed, threshold, max_iter, restarts, tol, out } => {
            check_tol(tol)?;
            if !(m > 0.0) || !m.is_finite() {
                return Err(Failure::Input(format!("m must be > 0, got {m}")));
            }
            let w = weight.planar()?;
            let opts = OptimizeOptions { basis, seed, max_iter, restarts, tol, ..Default::default() };
            let r = verification::optimize_shape(&w, m, &opts)?;
            let sampled = r.shape.to_radial_shape(DEFAULT_SAMPLES)?;
            let body = json!({ "result": r, "shape": sampled, "threshold": threshold });
            emit(&out, &pretty(&body))?;
            if out.is_some() {
                println!("perimeter {:.16e} bound {:.16e} gap {:.16e}", r.perimeter, r.bound, r.gap);
            }
            Ok(r.gap <= threshold)
        }
        Command::Symmetrize { input, weight, tols, out } => {
            tols.check()?;
            let w = weight.weight(3)?;
            let m: SliceSet3D = read_json(&input)?;
            let (sym, report) = check_step2(&m, &w, tols.tol, tols.tol_rel)?;
            let body = json!({ "q": sym.q, "k": sym.k, "report": report });
            emit(&out, &pretty(&body))?;
            if out.is_some() {
                println!(
                    "mu_ok {} alpha_ok {} perim_ok {} final_ok {} slack {:.16e}",
                    report.mu_ok, report.alpha_ok, report.perim_ok, report.final_ok, report.slack
                );
            }
            Ok(report.all_ok())
        }
    }
}

fn cmd_sigma(k: f64, l: f64, n_nodes: usize, grid: usize, tol: f64, out: &Option<PathBuf>) -> Result<bool, Failure> {
    if !(k >= 0.0) {
        return Err(Failure::Input(format!("k must be ≥ 0, got {k}")));
    }
    if !(l >= 0.0) {
        return Err(Failure::Input(format!("l must be ≥ 0, got {l}")));
    }
    check_tol(tol)?;
    let map = SigmaMap::new(k, l, n_nodes, tol)?;
    let cert = map.certify_lemma1(grid)?;
    let body = json!({ "map": map, "certificate": cert });
    emit(out, &pretty(&body))?;
    if out.is_some() {
        println!(
            "min_sigma_prime {:.16e} argmin {:.16e} success {}",
            cert.min_sigma_prime, cert.argmin, cert.success
        );
    }
    Ok(cert.success)
}

fn cmd_profile(weight: &WeightArgs, m: &[f64], format: Format, tol: f64, out: &Option<PathBuf>) -> Result<bool, Failure> {
    check_tol(tol)?;
    if let Some(bad) = m.iter().find(|v| !(**v > 0.0)) {
        return Err(Failure::Input(format!("m must be > 0, got {bad}")));
    }
    let w = weight.weight(2)?;
    let rows = verification::profile_scan(&w, m, tol)?;
    let text = match format {
        Format::Csv => verification::profile_csv(&rows),
        Format::Json => {
            let p = IsoperimetricProfile::new(w.clone(), tol)?;
            pretty(&json!({ "weight": w, "kappa": p.kappa(), "rows": rows }))
        }
    };
    emit(out, &text)?;
    Ok(true)
}

fn cmd_scalar(shape: &Path, weight: &WeightArgs, tol: f64, perimeter: bool) -> Result<bool, Failure> {
    check_tol(tol)?;
    let w = weight.planar()?;
    let s: RadialShape = read_json(shape)?;
    let v = if perimeter { perimeter2d(&s, &w, tol)? } else { measure2d(&s, &w, tol)? };
    if !v.is_finite() {
        return Err(Failure::Check(format!("value is not finite: {v}")));
    }
    println!("{v:.16e}");
    Ok(true)
}

fn cmd_transport(
    input: &Path,
    weight: &WeightArgs,
    n_nodes: usize,
    tols: &Tolerances,
    out: &Option<PathBuf>,
) -> Result<bool, Failure> {
    tols.check()?;
    let w = weight.planar()?;
    let (k, l) = w.planar_exponents()?;
    let value: serde_json::Value = read_json(input)?;
    let map = SigmaMap::new(k, l, n_nodes, sigma_map::DEFAULT_TOL)?;
    let mut summary = String::new();
    let (body, ok) = match value.get("type").and_then(|t| t.as_str()) {
        Some("radial") => {
            let shape: RadialShape = serde_json::from_value(value).map_err(|e| Failure::Input(e.to_string()))?;
            let image = transport(&shape.boundary_curve(), &map)?;
            let contraction = check_contraction(&shape, &w, &map, tols.tol, tols.tol_rel)?;
            let measure = check_measure_preservation(&shape, &w, &map, tols.tol, tols.tol_rel)?;
            let _ = write!(
                summary,
                "c1_perimeter_image {:.16e} perimeter {:.16e} mu {:.16e} c1_mu_image {:.16e}",
                contraction.lhs, contraction.rhs, measure.mu, measure.c1_mu_tilde
            );
            let ok = contraction.ok && measure.ok;
            (json!({ "c1": map.c1(), "curve": image, "contraction": contraction, "measure": measure }), ok)
        }
        Some("polar_curve") => {
            let curve: PolarCurve = serde_json::from_value(value).map_err(|e| Failure::Input(e.to_string()))?;
            if curve.theta_nodes().iter().any(|t| *t > std::f64::consts::FRAC_PI_2) {
                return Err(Failure::Input("curve leaves the wedge (θ > π/2)".into()));
            }
            let image = transport(&curve, &map)?;
            let p = halfplane_perimeter(&image, &w.half_plane()?, tols.tol)?;
            let _ = write!(summary, "halfplane_perimeter {p:.16e} c1 {:.16e}", map.c1());
            (json!({ "c1": map.c1(), "curve": image, "halfplane_perimeter": p }), true)
        }
        _ => return Err(Failure::Input("expected a \"radial\" or \"polar_curve\" document".into())),
    };
    emit(out, &pretty(&body))?;
    if out.is_some() {
        println!("{summary}");
    }
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use clap::CommandFactory;

    use super::*;

    #[test]
    fn command_is_well_formed() {
        Cli::command().debug_assert();
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(["wedge-iso", "--help"]), 0);
        assert_eq!(run(["wedge-iso", "sigma", "--help"]), 0);
        assert_eq!(run(["wedge-iso", "sigma", "--k", "-1", "--l", "0"]), 2);
        assert_eq!(run(["wedge-iso", "profile", "--k", "0,0", "--m", "-1"]), 2);
        assert_eq!(run(["wedge-iso", "frobnicate"]), 2);
        assert_eq!(run(["wedge-iso", "measure", "/nonexistent/shape.json"]), 2);
    }

    #[test]
    fn weight_defaults() {
        let w = WeightArgs { dim: None, c: 0.0, k: None };
        assert_eq!(w.weight(3).unwrap().dim(), 3);
        let w = WeightArgs { dim: Some(2), c: 0.0, k: Some(vec![1.0, 2.0, 3.0]) };
        assert!(w.weight(2).is_err());
        let w = WeightArgs { dim: None, c: -1.0, k: None };
        assert!(matches!(w.weight(2), Err(Failure::Input(_))));
    }
}
