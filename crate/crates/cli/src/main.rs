mod expr;

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64 as C64;
use poisson_lab::error::Error;
use poisson_lab::exec::{self, map_slice, Execution};
use poisson_lab::landau::{self, LandauParameters};
use poisson_lab::potentials::{BoundaryFunction, SolverConfig, SourceFunction, DEFAULT_BOUNDARY_SAMPLES};
use poisson_lab::report::{self, CsvWriter, ReportDocument};
use poisson_lab::testbed::{self, BoundId, GridSpec, Scenario, SweepOptions};
use poisson_lab::verify::{self, Profile};

use crate::expr::Expr;

const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_QUADRATURE: u8 = 3;
const EXIT_HYPOTHESIS: u8 = 4;

/// Poisson equation on the unit disk: solver, bound checks, univalence radius.
#[derive(Parser, Debug)]
#[command(name = "poisson-lab", version, about)]
struct Cli {
    /// Worker threads for the parallel loops (default: all cores).
    #[arg(long, global = true, env = "POISSON_LAB_THREADS")]
    threads: Option<usize>,

    /// Run every loop on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve for f on a polar grid and write a CSV table.
    ///
    /// Columns: z_re, z_im, re_f, im_f, abs_f, norm_df, where norm_df = |f_z| + |f_zbar|.
    /// Header row, comma-separated, LF line endings, 15 significant digits.
    Solve {
        #[command(flatten)]
        problem: Problem,
        /// Polar grid `RxA` (rings x angles).
        #[arg(long, default_value = "10x20")]
        grid: GridSpec,
        /// Output CSV path (stdout when omitted).
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Sweep one bound over a grid and report its margins.
    Check {
        #[command(flatten)]
        problem: Problem,
        /// schwarz, boundary, gradient, harmonic-schwarz or harmonic-gradient.
        #[arg(long, alias = "theorem")]
        bound: BoundId,
        #[arg(long, default_value = "10x20")]
        grid: GridSpec,
        /// Write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write `|z|  margin` plot data here.
        #[arg(long)]
        plot: Option<PathBuf>,
        /// Allowed negative margin.
        #[arg(long, default_value_t = testbed::DEFAULT_SLACK)]
        slack: f64,
    },
    /// Univalence radius r0, covered radius R0 and Lipschitz constants.
    Landau {
        #[arg(long, default_value_t = 0.0)]
        m1: f64,
        #[arg(long)]
        m2: f64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// L1 is evaluated at this fraction of r0.
        #[arg(long, default_value_t = landau::DEFAULT_RHO_FRACTION)]
        lipschitz_rho: f64,
    },
    /// Run the acceptance criteria and write one JSON report per criterion.
    VerifyAll {
        /// fast or strict (falls back to POISSON_LAB_TOL, then fast).
        #[arg(long)]
        tol_profile: Option<Profile>,
        #[arg(long, default_value = "verify-out")]
        out: PathBuf,
    },
}

/// A built-in scenario, or source and boundary expressions in `z`.
#[derive(Args, Debug)]
struct Problem {
    /// Built-in scenario such as `sharp-quadratic:1` or `colonna-extremal:1,1,0`.
    #[arg(long, conflicts_with_all = ["g", "psi"])]
    scenario: Option<String>,
    /// Source term g(z), e.g. `-4` or `1 + |z|^2`.
    #[arg(long)]
    g: Option<String>,
    /// Boundary data psi on |z| = 1, e.g. `z + 0.25` or `cos(t)`.
    #[arg(long)]
    psi: Option<String>,
    /// Boundary samples for expression data.
    #[arg(long, default_value_t = DEFAULT_BOUNDARY_SAMPLES)]
    samples: usize,
}

impl Problem {
    fn scenario(&self, execution: Execution) -> anyhow::Result<Scenario> {
        if let Some(name) = &self.scenario {
            return Ok(testbed::builtin(name)?);
        }
        if self.g.is_none() && self.psi.is_none() {
            bail!(usage("give --scenario or at least one of --g and --psi"));
        }
        let g_src = self.g.clone().unwrap_or_else(|| "0".into());
        let psi_src = self.psi.clone().unwrap_or_else(|| "0".into());
        let g_expr = Expr::parse(&g_src).map_err(|e| usage(format!("--g: {e}")))?;
        let psi_expr = Expr::parse(&psi_src).map_err(|e| usage(format!("--psi: {e}")))?;
        let g = if g_expr.is_constant() {
            let c = g_expr.eval(C64::new(0.0, 0.0));
            if c == C64::new(0.0, 0.0) {
                SourceFunction::zero()
            } else {
                SourceFunction::constant(c)
            }
        } else {
            SourceFunction::new(move |w| g_expr.eval(w))
        };
        let psi = BoundaryFunction::from_closure_sampled(move |t| psi_expr.eval_boundary(t), self.samples);
        let config = SolverConfig {
            execution,
            ..SolverConfig::default()
        };
        Ok(Scenario::from_data_with(format!("g={g_src}; psi={psi_src}"), g, psi, &config)?)
    }
}

#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<UsageError>().is_some() {
        return EXIT_USAGE;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::QuadratureValidation { .. }) => EXIT_QUADRATURE,
        Some(Error::HypothesisViolation(_)) => EXIT_HYPOTHESIS,
        Some(Error::HypothesisMismatch { .. }) => EXIT_VIOLATION,
        Some(Error::InvalidParameter(_) | Error::UnknownScenario(_) | Error::Domain { .. } | Error::OutsideDisk { .. }) => EXIT_USAGE,
        _ => EXIT_VIOLATION,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let execution = if cli.sequential { Execution::Sequential } else { Execution::Parallel };
    let threads = cli.threads;
    if threads == Some(0) {
        eprintln!("error: --threads must be at least 1");
        return ExitCode::from(EXIT_USAGE);
    }
    match exec::with_threads(threads, || run(cli.command, execution)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_VIOLATION),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// `Ok(false)` means a bound was violated.
fn run(command: Command, execution: Execution) -> anyhow::Result<bool> {
    match command {
        Command::Solve { problem, grid, out } => {
            let s = problem.scenario(execution)?;
            grid.validate()?;
            solve(&s, &grid, out.as_deref(), execution)?;
            Ok(true)
        }
        Command::Check {
            problem,
            bound,
            grid,
            json,
            plot,
            slack,
        } => {
            let profile = Profile::from_env_or(Profile::Fast).map_err(|e| usage(e.to_string()))?;
            let s = problem.scenario(execution)?;
            let opts = SweepOptions {
                slack,
                execution,
                ..SweepOptions::default()
            };
            let report = testbed::measure(&s, bound, &grid, &opts)?;
            let mismatch = report.check_expectation(&s).err();
            let pass = report.passes() && mismatch.is_none();
            let mut doc = ReportDocument::from_bound_report(&report, profile.as_str(), pass);
            if let Some(m) = &mismatch {
                doc.summary.failures.push(m.to_string());
            }
            if let Some(path) = json {
                write_file(&path, doc.to_json())?;
            }
            if let Some(path) = plot {
                let points: Vec<(f64, f64)> = report
                    .records
                    .iter()
                    .map(|r| (r.z_re.hypot(r.z_im), r.margin))
                    .collect();
                let mut buf = Vec::new();
                report::write_plot_data(&mut buf, &format!("{} {} margin vs |z|", report.scenario, report.bound), &points)?;
                write_file(&path, buf)?;
            }
            say(format!(
                "{} {} {}: {} points, min margin {:e}, sharp points {}",
                if pass { "PASS" } else { "FAIL" },
                report.scenario,
                report.bound,
                report.records.len(),
                report.min_margin,
                report.sharp_points.len()
            ));
            if let Some(m) = mismatch {
                eprintln!("{m}");
            }
            Ok(pass)
        }
        Command::Landau {
            m1,
            m2,
            tol,
            lipschitz_rho,
        } => {
            let p = LandauParameters::new(m1, m2)?;
            let r = landau::landau_radius_at(&p, tol, lipschitz_rho)?;
            let value = serde_json::json!({
                "M1": m1,
                "M2": m2,
                "r0": report::round_sig(r.r0),
                "R0": report::round_sig(r.big_r0),
                "phi_residual": r.phi_residual,
                "L1": report::round_sig(r.l1),
                "L2": report::round_sig(r.l2),
                "lipschitz_rho": report::round_sig(r.rho_fraction * r.r0),
                "iterations": r.iterations,
            });
            say(serde_json::to_string_pretty(&value)?);
            Ok(true)
        }
        Command::VerifyAll { tol_profile, out } => {
            let profile = match tol_profile {
                Some(p) => p,
                None => Profile::from_env_or(Profile::Fast).map_err(|e| usage(e.to_string()))?,
            };
            fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
            let mut summary = Vec::new();
            let mut all = true;
            for &(id, name, _) in verify::CRITERIA.iter() {
                let r = verify::run_criterion(id, profile, execution);
                let passed = r.passed();
                all &= passed;
                say(format!("{} {id:>2} {name}", if passed { "PASS" } else { "FAIL" }));
                let file = format!("criterion-{id:02}-{name}.json");
                write_file(&out.join(&file), r.document(profile).to_json())?;
                summary.push(serde_json::json!({
                    "id": id,
                    "name": name,
                    "pass": passed,
                    "checks": r.checks.len(),
                    "report": file,
                }));
            }
            let doc = serde_json::json!({
                "schema_version": report::SCHEMA_VERSION,
                "tool_version": report::TOOL_VERSION,
                "profile": profile,
                "pass": all,
                "criteria": summary,
            });
            write_file(&out.join("summary.json"), serde_json::to_string_pretty(&doc)? + "\n")?;
            Ok(all)
        }
    }
}

fn solve(s: &Scenario, grid: &GridSpec, out: Option<&Path>, execution: Execution) -> anyhow::Result<()> {
    let points = grid.points();
    let rows = map_slice(execution, &points, |&z| -> poisson_lab::error::Result<[f64; 6]> {
        let f = s.value(z)?;
        let d = s.wirtinger(z)?;
        Ok([z.re, z.im, f.re, f.im, f.norm(), d.norm()])
    });
    let header = ["z_re", "z_im", "re_f", "im_f", "abs_f", "norm_df"];
    let sink: Box<dyn Write> = match out {
        Some(path) => Box::new(BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let mut csv = CsvWriter::new(sink, &header)?;
    for row in rows {
        csv.row(&row?)?;
    }
    csv.into_inner().flush()?;
    Ok(())
}

/// Prints a line, ignoring a closed pipe.
fn say(line: impl AsRef<str>) {
    let _ = writeln!(io::stdout().lock(), "{}", line.as_ref());
}

fn write_file(path: &Path, contents: impl AsRef<[u8]>) -> anyhow::Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}
