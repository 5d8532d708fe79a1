//! Two line arrangements with the same intersection lattice but different
//! syzygy exponents.

use freeness::analysis::{analyze, AnalysisOptions};
use freeness::parse::parse_poly;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pair = [
        ("A", "x*y*(x-y-z)*(x-y+z)*(2*x+y-2*z)*(x+3*y-3*z)*(3*x+2*y+3*z)*(x+5*y+5*z)*(7*x-4*y-z)"),
        ("A'", "x*y*(4*x-5*y-5*z)*(x-y+z)*(16*x+13*y-20*z)*(x+3*y-3*z)*(3*x+2*y+3*z)*(x+5*y+5*z)*(7*x-4*y-z)"),
    ];
    for (name, src) in pair {
        let a = analyze(&parse_poly(src)?, &AnalysisOptions::default())?;
        println!(
            "{name}: mdr {} exponents {:?} tau {} nu {} ct {:?} st {} class {}",
            a.mdr(),
            a.exponents(),
            a.tau,
            a.nu,
            a.thresholds.ct,
            a.thresholds.st,
            a.class
        );
        for t in &a.timings {
            println!("  {:>20} {:>10.1} ms", t.stage, t.millis);
        }
    }
    Ok(())
}
