//! Hilbert function of the Milnor algebra against a smooth curve of the
//! same degree, and the Jacobian module N(f) = I/J.

use freeness::analysis::{analyze, AnalysisOptions};
use freeness::jacobian::smooth_reference_hilbert;
use freeness::parse::parse_poly;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for src in ["x^3 - y^2*z", "x*y*z*(x+y+z)*(x-y)", "x^2*y^2 + y^2*z^2 + z^2*x^2"] {
        let a = analyze(&parse_poly(src)?, &AnalysisOptions::default())?;
        let d = a.degree();
        println!("{src}   (tau {}, T = {})", a.tau, a.t());
        println!("   k  M(f)_k  smooth  (S/I)_k  N(f)_k");
        for k in 0..=a.t() + 1 {
            let n = a.module_table.n_values.get(k).map_or("-".into(), |v| v.to_string());
            println!(
                "{k:>4} {:>7} {:>7} {:>8} {:>7}",
                a.milnor[k],
                smooth_reference_hilbert(d, k as u32),
                a.saturation.quotient_dim(k),
                n
            );
        }
        println!("   ct {:?}  st {}  nu {}\n", a.thresholds.ct, a.thresholds.st, a.nu);
    }
    Ok(())
}
