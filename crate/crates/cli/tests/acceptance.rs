//! One PASS/FAIL line per acceptance criterion.

use std::process::ExitCode;
use std::time::Instant;

use qcg_cli::suites::{run_criterion, SuiteSettings, TITLES};

/// Wall-clock limits in seconds for the purely symbolic and quadrature criteria.
const LIMITS: [(u8, f64); 4] = [(1, 5.0), (2, 10.0), (3, 30.0), (4, 60.0)];

fn main() -> ExitCode {
    let settings = SuiteSettings::default();
    let mut failed = 0;
    for n in 1..=13u8 {
        let start = Instant::now();
        let checks = run_criterion(n, &settings);
        let secs = start.elapsed().as_secs_f64();
        let limit = LIMITS.iter().find(|(c, _)| *c == n).map(|&(_, l)| l);
        let in_time = limit.is_none_or(|l| secs <= l);
        let ok = !checks.is_empty() && checks.iter().all(|c| c.passed) && in_time;
        failed += usize::from(!ok);
        println!(
            "{} criterion {n:2}: {} ({} checks, {secs:.2}s{})",
            if ok { "PASS" } else { "FAIL" },
            TITLES[n as usize - 1],
            checks.len(),
            limit.map_or(String::new(), |l| format!(", limit {l}s")),
        );
        for c in checks.iter().filter(|c| !c.passed) {
            println!("    failed: {} measured {:e} tolerance {:e} {}", c.name, c.measured, c.tolerance, c.detail.as_deref().unwrap_or(""));
        }
    }
    println!("{} of 13 criteria passed", 13 - failed);
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
