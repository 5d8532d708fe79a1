//! Full invariant profile of one curve given on the command line.
//!
//! cargo run --release --example analyze_curve -- "x^2*y^2 + z^4"

use freeness::analysis::{analyze, AnalysisOptions};
use freeness::parse::parse_curve;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let src = std::env::args().nth(1).unwrap_or_else(|| "x^2*y^2 + z^4".into());
    let a = analyze(&parse_curve(&src)?, &AnalysisOptions::default())?;
    println!("{src}");
    println!("  class      {}", a.class);
    println!("  exponents  {:?}, relations in degrees {:?}", a.exponents(), a.scan.relation_degrees());
    println!("  tau {}  nu {}  sigma {:?}", a.tau, a.nu, a.module_table.sigma);
    println!("  ct {:?}  st {}  (T = {})", a.thresholds.ct, a.thresholds.st, a.t());
    println!("  tau bounds [{}, {}]", a.bounds.tau_min, a.bounds.applicable_max());
    println!("  splitting type on a generic line ({}, {})", a.splitting.d1, a.splitting.d2);
    for c in &a.checks {
        println!("  {:?}: {}", c.verdict, c.name);
    }
    Ok(())
}
