//! Library half of the `hyperstab` binary: configuration, dispatch and report
//! rendering. `main` only parses arguments and maps the outcome to an exit code.

pub mod config;
pub mod verify;

use std::path::Path;

use serde::{Deserialize, Serialize};

use hyperstab::arithstat::{self, MomentReport, PowerSumMoments, TraceReport};
use hyperstab::ffcurves::{cache, inject_reciprocity_fault, FqContext};
use hyperstab::rational;
use hyperstab::series::{series_reports, SeriesReport};

pub use config::{Cli, Command, Format, Profile, RunConfig, UsageError};
pub use verify::{run_verify, VerifyReport};

/// Everything a run can emit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Report {
    Series(Vec<SeriesReport>),
    Traces(TraceReport),
    Moments(MomentReport),
    Verify(VerifyReport),
}

impl Report {
    /// False when the report records a failed check.
    pub fn passed(&self) -> bool {
        match self {
            Report::Series(_) => true,
            Report::Traces(t) => t.all_pass(),
            Report::Moments(m) => m.identity_holds(),
            Report::Verify(v) => v.all_pass(),
        }
    }
}

pub struct Outcome {
    pub report: Report,
    pub rendered: String,
    pub exit_code: i32,
}

#[derive(Debug)]
pub enum RunError {
    Usage(UsageError),
    Compute(hyperstab::Error),
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Usage(e) => write!(f, "usage error: {e}"),
            RunError::Compute(e) => write!(f, "error: {e}"),
        }
    }
}

impl From<hyperstab::Error> for RunError {
    fn from(e: hyperstab::Error) -> Self {
        RunError::Compute(e)
    }
}

fn cache_file(dir: &Path, q: u64, n: usize) -> Result<std::path::PathBuf, RunError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| RunError::Usage(UsageError(format!("cannot create cache directory {}: {e}", dir.display()))))?;
    Ok(dir.join(format!("frobenius-q{q}-n{n}.bin")))
}

fn compute(cfg: &RunConfig) -> Result<Report, RunError> {
    Ok(match &cfg.command {
        Command::Series { family, lambdas, max_arity, z_max, guard } => {
            Report::Series(series_reports(*family, lambdas, *z_max, *max_arity, *guard)?)
        }
        Command::Traces { q, n, max_weight, slack } => {
            let ctx = FqContext::new(*q)?;
            let moments = match &cfg.cache {
                Some(dir) => {
                    let path = cache_file(dir, *q, *n)?;
                    let curves = cache::load_or_compute(&ctx, *n, Some(&path))?;
                    PowerSumMoments::from_curves(ctx.q(), *n, *max_weight, &curves)
                }
                None => PowerSumMoments::collect(&ctx, *n, *max_weight)?,
            };
            let genfunc = arithstat::stable_trace_genfunc(*q, (*max_weight).max(2));
            Report::Traces(arithstat::trace_report_from(&moments, &genfunc, *slack)?)
        }
        Command::Moments { q, g, r, cutoff } => {
            let ctx = FqContext::new(*q)?;
            Report::Moments(arithstat::moment_sum(&ctx, *g, *r, *cutoff)?)
        }
        Command::Verify { profile, inject_fault } => {
            inject_reciprocity_fault(*inject_fault);
            let rep = run_verify(*profile);
            inject_reciprocity_fault(false);
            Report::Verify(rep)
        }
    })
}

/// Runs the configured command on a pool of `workers` threads.
pub fn run(cfg: &RunConfig) -> Result<Outcome, RunError> {
    let report = with_workers(cfg.workers, || compute(cfg))?;
    let rendered = render(&report, cfg.format).map_err(RunError::Compute)?;
    let exit_code = if report.passed() { 0 } else { 1 };
    Ok(Outcome { report, rendered, exit_code })
}

#[cfg(feature = "parallel")]
fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    hyperstab::exec::set_parallel(workers > 1);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build().expect("thread pool");
    pool.install(f)
}

#[cfg(not(feature = "parallel"))]
fn with_workers<T: Send>(_workers: usize, f: impl FnOnce() -> T + Send) -> T {
    f()
}

fn csv_err(e: impl std::fmt::Display) -> hyperstab::Error {
    hyperstab::Error::InvalidInput(format!("csv output: {e}"))
}

pub fn render(report: &Report, format: Format) -> Result<String, hyperstab::Error> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).map_err(|e| hyperstab::Error::Parse(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => render_csv(report),
        Format::Pretty => Ok(render_pretty(report)),
    }
}

fn render_csv(report: &Report) -> Result<String, hyperstab::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    match report {
        Report::Series(rows) => {
            w.write_record(["family", "lambda", "k", "dim", "rational_fit"]).map_err(csv_err)?;
            for r in rows {
                for e in &r.poincare {
                    let rec = [r.family.to_string(), r.lambda.to_string(), e.k.to_string(), e.dim.to_string(), r.rational_fit.clone()];
                    w.write_record(&rec).map_err(csv_err)?;
                }
            }
        }
        Report::Traces(t) => {
            w.write_record(["q", "n", "lambda", "brute", "stable", "bound", "pass"]).map_err(csv_err)?;
            for r in &t.rows {
                let rec = [
                    t.q.to_string(),
                    t.n.to_string(),
                    r.lambda.to_string(),
                    rational::to_string(&r.brute),
                    rational::to_string(&r.stable),
                    r.bound.to_string(),
                    r.pass.to_string(),
                ];
                w.write_record(&rec).map_err(csv_err)?;
            }
        }
        Report::Moments(m) => {
            w.write_record(["q", "g", "r", "moment", "identity_rhs", "prediction", "prediction_tail", "thmC_bound"])
                .map_err(csv_err)?;
            let rec = [
                m.q.to_string(),
                m.g.to_string(),
                m.r.to_string(),
                m.moment.to_string(),
                m.identity_rhs.to_string(),
                rational::to_string(&m.prediction),
                m.prediction_tail.to_string(),
                m.thm_c_bound.to_string(),
            ];
            w.write_record(&rec).map_err(csv_err)?;
        }
        Report::Verify(v) => {
            w.write_record(["module", "check", "pass", "detail"]).map_err(csv_err)?;
            for r in &v.rows {
                w.write_record([r.module.as_str(), r.check.as_str(), &r.pass.to_string(), r.detail.as_str()])
                    .map_err(csv_err)?;
            }
        }
    }
    let bytes = w.into_inner().map_err(csv_err)?;
    String::from_utf8(bytes).map_err(csv_err)
}

fn render_pretty(report: &Report) -> String {
    let mut out = String::new();
    match report {
        Report::Series(rows) => {
            for r in rows {
                let dims: Vec<String> = r.poincare.iter().map(|e| e.dim.to_string()).collect();
                out += &format!("{} λ = {}\n  Poincaré: {}\n  fit: {}\n", r.family, r.lambda, dims.join(" "), r.rational_fit);
            }
        }
        Report::Traces(t) => {
            out += &format!("Z_n against stable traces, q = {}, n = {}\n", t.q, t.n);
            out += &format!("{:<12} {:>16} {:>12} {:>18}  ok\n", "λ", "brute", "stable", "bound");
            for r in &t.rows {
                out += &format!(
                    "{:<12} {:>16} {:>12} {:>18}  {}\n",
                    r.lambda.to_string(),
                    rational::to_string(&r.brute),
                    rational::to_string(&r.stable),
                    r.bound.to_string(),
                    if r.pass { "yes" } else { "NO" }
                );
            }
        }
        Report::Moments(m) => {
            out += &format!("q = {}, g = {}, r = {}\n", m.q, m.g, m.r);
            out += &format!("  moment       {}  (≈ {:.6})\n", m.moment, m.moment.to_f64());
            out += &format!("  identity rhs {}  holds: {}\n", m.identity_rhs, m.identity_holds());
            out += &format!("  prediction   {}  (≈ {:.6}, tail ≤ {:.3e})\n", rational::to_string(&m.prediction), rational::to_f64(&m.prediction), m.prediction_tail);
            out += &format!("  error bound  {}  (≈ {:.4})\n", m.thm_c_bound, m.thm_c_bound.to_f64());
        }
        Report::Verify(v) => {
            out += &format!("verify ({})\n", v.profile);
            for r in &v.rows {
                out += &format!("  {:<5} {:<10} {:<24} {}\n", if r.pass { "pass" } else { "FAIL" }, r.module, r.check, r.detail);
            }
            let failed = v.rows.iter().filter(|r| !r.pass).count();
            out += &format!("{} checks, {} failed\n", v.rows.len(), failed);
        }
    }
    out
}
