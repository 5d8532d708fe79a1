//! Tjurina extremes: the Persson family attains the maximizing bound,
//! maximal nodal curves attain the refined upper bound.

use freeness::analysis::{analyze, AnalysisOptions};
use freeness::catalog::get;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let opts = AnalysisOptions { ade_asserted: true, ..Default::default() };
    for m in 1..=4 {
        let e = get("persson", &[m])?;
        let a = analyze(&e.poly(), &opts)?;
        println!(
            "persson({m}) d={:<3} {:<12} tau {:>3} target {:>3} maximizing {}",
            e.degree, a.class.to_string(), a.tau, a.maximizing.target_tau, a.maximizing.maximizing
        );
    }
    for d in [3, 4] {
        let e = get("maximal_nodal", &[d])?;
        let a = analyze(&e.poly(), &opts)?;
        println!(
            "maximal_nodal({d}) mdr {} tau {} bounds [{}, {}] maximal Tjurina {}",
            a.mdr(), a.tau, a.bounds.tau_min, a.bounds.applicable_max(), a.maximal_tjurina.maximal
        );
    }
    Ok(())
}
