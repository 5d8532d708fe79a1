//! Exact modularity certificates, and a supersolvable curve built by adding
//! to a conic all lines through a point that are tangent to it.

use freeness::analysis::{analyze, AnalysisOptions};
use freeness::geometry::{build_supersolvable, is_modular_point, point, supersolvable_check};
use freeness::parse::parse_poly;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = parse_poly("x*(x^2+z^2)*(x^4+(x*z+y^2)^2)")?;
    let c = is_modular_point(&f, &point(0, 1, 0)?)?;
    println!("conic-line curve, (0:1:0): modular {}", c.modular);
    println!("  tangent cone {}  components through it {}", c.tangent_cone, c.component_lines);
    println!("  pencil discriminant {}", c.discriminant);

    let ss = parse_poly("y*z*(y^2+z^2)*(x^2*y^2 + y^2*z^2 + x^2*z^2)")?;
    println!("supersolvable family m = 2: {:?}", supersolvable_check(&ss, &[], 0)?.modular_points);

    let conic = parse_poly("x^2 + y^2 - z^2")?;
    let p = point(2, 3, 1)?;
    let curve = build_supersolvable(&conic, &p)?;
    let a = analyze(&curve, &AnalysisOptions::default())?;
    println!("conic plus its tangents from (2:3:1): {curve}");
    println!("  {}  modular at (2:3:1): {}", a.class, is_modular_point(&curve, &p)?.modular);
    Ok(())
}
