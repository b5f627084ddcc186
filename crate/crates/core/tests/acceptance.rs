use std::process::ExitCode;
use std::time::Instant;

use poisson_lab::exec::Execution;
use poisson_lab::verify::{self, Profile};

fn main() -> ExitCode {
    let profile = match Profile::from_env_or(Profile::Fast) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    let exec = Execution::default();
    let mut failed = 0;
    for &(id, _, _) in verify::CRITERIA.iter() {
        let start = Instant::now();
        let r = verify::run_criterion(id, profile, exec);
        let tag = if r.passed() { "PASS" } else { "FAIL" };
        let worst = r
            .worst()
            .map(|c| format!("worst margin {:+.3e} ({})", c.margin, c.label))
            .unwrap_or_default();
        println!(
            "{tag} {id:>2} {:<22} {} checks, {worst} [{:.1}s]",
            r.name,
            r.checks.len(),
            start.elapsed().as_secs_f64()
        );
        if !r.passed() {
            failed += 1;
            for f in r.failures() {
                println!("       {f}");
            }
        }
    }
    println!("{} of {} criteria passed ({profile} profile)", verify::CRITERIA.len() - failed, verify::CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
