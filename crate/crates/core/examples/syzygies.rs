//! Minimal generators of the syzygy module, the free resolution of the
//! Milnor algebra, and the Koszul/essential split of the relations.

use freeness::analysis::{analyze, AnalysisOptions};
use freeness::parse::parse_poly;
use freeness::syzygy::{er_dim, kr_dim_formula, SyzygyProfile};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let src = "x^3 + y^3 + z^3 - 3*x*y*z + x^2*y";
    let src = std::env::args().nth(1).unwrap_or(src.into());
    let a = analyze(&parse_poly(&src)?, &AnalysisOptions::default())?;
    let p = SyzygyProfile::from_scan(&a.scan);
    println!("{src}: exponents {:?}", p.exponents);
    for g in &p.generators {
        println!("  ({}, {}, {})", g[0], g[1], g[2]);
    }
    let r = &a.resolution;
    println!("resolution shifts F1 {:?} F2 {:?} F3 {:?}", r.f1, r.f2, r.f3);
    println!("   k    AR    KR    ER");
    for k in 0..=a.scan.horizon {
        println!("{k:>4} {:>5} {:>5} {:>5}", a.scan.ar_dim(k), kr_dim_formula(a.degree(), k), er_dim(&a.scan, k));
    }
    println!("defects {:?}", a.defects.defects);
    Ok(())
}
