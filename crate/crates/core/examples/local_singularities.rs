//! Rational singular points with their local Milnor and Tjurina numbers.

use freeness::geometry::{format_point, local_milnor_tjurina, rational_singular_points, DEFAULT_HEIGHT};
use freeness::parse::parse_poly;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for src in [
        "x*y*z*((x^2+y^2+z^2)^3 - 27*x^2*y^2*z^2)",
        "x^4*z + y^5 + x^2*y^3",
        "x*(x+z)*(x^4+(x*z+y^2)^2)",
    ] {
        let f = parse_poly(src)?;
        println!("{src}");
        for p in rational_singular_points(&f, DEFAULT_HEIGHT, 0)? {
            let l = local_milnor_tjurina(&f, &p)?;
            println!(
                "  {:<12} mult {}  mu {:>2}  tau {:>2}{}",
                format_point(&p),
                l.multiplicity,
                l.mu,
                l.tau,
                if l.quasi_homogeneous { "" } else { "  (not quasi homogeneous)" }
            );
        }
    }
    Ok(())
}
