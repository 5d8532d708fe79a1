//! Runs every catalog entry up to a degree bound and prints the outcome of
//! each expectation.

use freeness::catalog::{verify_all, DEFAULT_MAX_DEGREE};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let max_degree = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(DEFAULT_MAX_DEGREE);
    let report = verify_all(max_degree, 0)?;
    for e in &report.entries {
        let mark = if e.passed { "ok  " } else { "FAIL" };
        println!("{mark} {:<28} d={:<3} {:>9.1} ms", e.entry, e.degree, e.millis);
        if let Some(err) = &e.error {
            println!("       error: {err}");
        }
        for r in e.results.iter().filter(|r| !r.pass) {
            println!("       {:?} ({:?}): found {}", r.expected.expect, r.expected.source, r.found);
        }
    }
    println!("all passed: {}", report.all_passed);
    Ok(())
}
