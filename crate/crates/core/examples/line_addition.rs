//! Adding a line to a curve: when the union is free, the curve itself must
//! be free or plus-one generated.

use freeness::analysis::{line_addition_check, AnalysisOptions};
use freeness::parse::parse_poly;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cases = [
        ("x^3 - y^2*z", "z"),
        ("x^3 - y^2*z", "x"),
        ("x*y*(x-y)*(x-z)", "y - z"),
        ("x^2 + y^2 - z^2", "x - z"),
        ("x^4 + y^4 + z^4", "x + y + z"),
    ];
    for (f, l) in cases {
        let v = line_addition_check(&parse_poly(f)?, &parse_poly(l)?, &AnalysisOptions::default())?;
        println!("{f:<20} + {l:<10} {:<28} -> {}", v.original.to_string(), v.extended);
    }
    Ok(())
}
