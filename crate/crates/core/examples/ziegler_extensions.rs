//! Extends the Ziegler pair by one generic line, then by lines through
//! matching double points, and tracks how the invariants drift apart.

use std::time::Instant;

use freeness::analysis::{analyze, AnalysisOptions};
use freeness::arrangement::{add_line, same_labeled_lattice, AddLineMode, LineArrangement};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = LineArrangement::from_i64(&[
        [1, 0, 0], [0, 1, 0], [1, -1, -1], [1, -1, 1], [2, 1, -2],
        [1, 3, -3], [3, 2, 3], [1, 5, 5], [7, -4, -1],
    ])?;
    let b = LineArrangement::from_i64(&[
        [1, 0, 0], [0, 1, 0], [4, -5, -5], [1, -1, 1], [16, 13, -20],
        [1, 3, -3], [3, 2, 3], [1, 5, 5], [7, -4, -1],
    ])?;
    println!("same labeled lattice: {}", same_labeled_lattice(&a, &b));
    let steps = [
        AddLineMode::Generic,
        AddLineMode::ThroughDoublePoint(0, 9),
        AddLineMode::ThroughDoublePoint(1, 10),
    ];
    let (mut x, mut y) = (a, b);
    for (i, mode) in steps.iter().enumerate() {
        x = add_line(&x, mode, 10 + i as u64)?;
        y = add_line(&y, mode, 20 + i as u64)?;
        println!(
            "step {}: lattice match {} t = {:?}",
            i + 1,
            same_labeled_lattice(&x, &y),
            x.weak_combinatorics().t
        );
        for (name, arr) in [("A", &x), ("A'", &y)] {
            let start = Instant::now();
            let r = analyze(&arr.product(), &AnalysisOptions::default())?;
            println!(
                "  {name}: mdr {} exponents {:?} tau {} nu {} ct {:?} st {} ({:.1} s)",
                r.mdr(),
                r.exponents(),
                r.tau,
                r.nu,
                r.thresholds.ct,
                r.thresholds.st,
                start.elapsed().as_secs_f64()
            );
        }
    }
    Ok(())
}
