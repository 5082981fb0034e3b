//! Runs every acceptance gate at its pinned tolerance and prints one
//! PASS/FAIL line per gate. Exits nonzero if any gate fails.

use std::process::ExitCode;
use std::time::Instant;

use orbitlaw::verify::{run_all, Evidence};

fn main() -> ExitCode {
    let start = Instant::now();
    let ev = Evidence::new();
    let reports = run_all(&ev);
    for r in &reports {
        println!("{r}");
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    println!("acceptance: {} passed, {failed} failed ({:.1}s)", reports.len() - failed, start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
