//! Which (degree, mdr) pairs force a rational cuspidal curve to be free.

use freeness::classify::cuspidal_guarantee;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for d in (15..=91).step_by(2) {
        let open: Vec<String> = (0..=(d - 1) / 2)
            .filter_map(|r| {
                let s = cuspidal_guarantee(d, r).ok()?;
                (!s.guaranteed).then(|| format!("{r} ({:?})", s.tag))
            })
            .collect();
        if !open.is_empty() {
            println!("d = {d}: not guaranteed for mdr {}", open.join(", "));
        }
    }
    Ok(())
}
