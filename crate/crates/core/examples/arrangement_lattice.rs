//! Intersection lattice of a line arrangement: multiple points, modular
//! points, lattice isomorphism and the lower bounds for tau.

use freeness::analysis::{analyze, AnalysisOptions};
use freeness::arrangement::{checked_modular_points, lattice_isomorphism, lower_bounds_check, LineArrangement};
use freeness::geometry::format_point;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // The braid arrangement, and its image under y -> -y listed in another order.
    let a = LineArrangement::from_i64(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, -1, 0], [1, 0, -1], [0, 1, -1]])?;
    let b = LineArrangement::from_i64(&[[0, 1, 1], [1, 1, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 0, -1]])?;
    for p in a.multiple_points() {
        println!("{:<10} lines {:?}", format_point(&p.point), p.lines);
    }
    println!("t_k {:?}, tau {}", a.weak_combinatorics().t, a.tau_combinatorial());
    let modular: Vec<String> = checked_modular_points(&a)?.iter().map(format_point).collect();
    println!("modular points {modular:?}");
    println!("bijection onto the second copy: {:?}", lattice_isomorphism(&a, &b)?);

    let c = LineArrangement::from_i64(&[[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1], [1, 2, 3], [3, -1, 2]])?;
    let an = analyze(&c.product(), &AnalysisOptions::default())?;
    println!("six lines, one triple point: {} mdr {} tau {}", an.class, an.mdr(), an.tau);
    for check in lower_bounds_check(&c, an.mdr(), an.tau, an.class.is_free())? {
        println!("  {:?} {}: {}", check.verdict, check.name, check.detail);
    }
    Ok(())
}
