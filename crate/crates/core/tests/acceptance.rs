//! Acceptance criteria, one pass/fail line each.

mod common;

use std::collections::BTreeMap;
use std::time::Instant;

use common::*;
use freeness::analysis::{analyze, line_addition_check, Analysis, AnalysisOptions};
use freeness::arrangement::{checked_modular_points, lattice_isomorphic, same_labeled_lattice, LineArrangement};
use freeness::catalog::{self, ziegler_arrangement};
use freeness::classify::{cuspidal_guarantee, CurveClass, GuaranteeTag};
use freeness::geometry::{is_modular_point, local_milnor_tjurina, point, rational_singular_points, supersolvable_check};
use freeness::parse::{parse_line, parse_poly};
use freeness::poly::HomogeneousPoly;
use freeness::syzygy::mdr;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn run(f: &HomogeneousPoly, ade: bool) -> Result<Analysis, String> {
    let opts = AnalysisOptions {
        ade_asserted: ade,
        ..Default::default()
    };
    analyze(f, &opts).map_err(|e| e.to_string())
}

fn run_text(src: &str) -> Result<Analysis, String> {
    run(&parse_poly(src).map_err(|e| e.to_string())?, false)
}

fn counts(arr: &LineArrangement) -> BTreeMap<usize, usize> {
    arr.weak_combinatorics().t
}

fn ziegler_pair() -> Check {
    let a = ziegler_arrangement(false, 0).map_err(|e| e.to_string())?;
    let b = ziegler_arrangement(true, 0).map_err(|e| e.to_string())?;
    let (x, y) = (run(&a.product(), false)?, run(&b.product(), false)?);
    let t = 3 * (9 - 2);
    ensure_eq!((x.mdr(), y.mdr()), (5, 6), "mdr");
    ensure_eq!(x.exponents(), vec![5, 6, 6, 6], "exponents of A");
    ensure_eq!(y.exponents(), vec![6; 6], "exponents of A'");
    ensure_eq!((x.nu, y.nu), (6, 6), "nu");
    ensure_eq!((x.thresholds.ct, x.thresholds.st), (Some(12), 14), "ct/st of A");
    ensure_eq!((y.thresholds.ct, y.thresholds.st), (Some(13), 13), "ct/st of A'");
    ensure_eq!((x.ct_plus_st(), y.ct_plus_st()), (Some(t + 5), Some(t + 5)), "ct + st");
    ensure_eq!(t + 5, 26, "T + 5");
    ensure_eq!((x.tau, y.tau), (42, 42), "tau");
    ensure_eq!(arrangement_tau(&a), 42, "tau from the lines");
    ensure!(lattice_isomorphic(&a, &b).map_err(|e| e.to_string())?, "lattices differ");
    let expected = BTreeMap::from([(2, 18), (3, 6)]);
    ensure_eq!(counts(&a), expected, "point counts of A");
    ensure_eq!(counts(&b), expected, "point counts of A'");
    oracle_checks(&a.product(), &x)?;
    oracle_checks(&b.product(), &y)
}

fn ziegler_extensions() -> Check {
    let mut mdrs = Vec::new();
    for step in 1..=3 {
        let a = ziegler_arrangement(false, step).map_err(|e| e.to_string())?;
        let b = ziegler_arrangement(true, step).map_err(|e| e.to_string())?;
        ensure!(same_labeled_lattice(&a, &b), "step {step}: line labels do not match the lattices");
        ensure!(lattice_isomorphic(&a, &b).map_err(|e| e.to_string())?, "step {step}: lattices differ");
        let pair = (
            mdr(&a.product(), 0).map_err(|e| e.to_string())?,
            mdr(&b.product(), 0).map_err(|e| e.to_string())?,
        );
        mdrs.push(pair);
        if step == 1 {
            let (x, y) = (run(&a.product(), false)?, run(&b.product(), false)?);
            ensure_eq!((x.mdr(), y.mdr()), pair, "mdr from the full analysis");
            ensure_eq!((x.thresholds.ct, x.thresholds.st), (Some(14), 16), "ct/st of A1");
            ensure_eq!((y.thresholds.ct, y.thresholds.st), (Some(15), 16), "ct/st of A1'");
            ensure_eq!((x.ct_plus_st(), y.ct_plus_st()), (Some(30), Some(31)), "ct + st of the A1 pair");
        }
        if step == 3 {
            ensure_eq!(counts(&a), BTreeMap::from([(2, 42), (3, 8)]), "point counts of A3");
            ensure_eq!(counts(&b), counts(&a), "point counts of A3'");
        }
    }
    ensure_eq!(mdrs, vec![(6, 7), (7, 8), (8, 9)], "mdr along the extensions");
    Ok(())
}

fn degree_nine_free_curve() -> Check {
    let e = catalog::get("dips_degree9", &[]).map_err(|e| e.to_string())?;
    let f = e.poly();
    let a = run(&f, true)?;
    ensure_eq!(a.tau, 49, "tau");
    ensure_eq!(a.class, CurveClass::Free { d1: 3, d2: 5 }, "class");
    let m = 4;
    ensure_eq!(a.maximizing.target_tau, 3 * m * m + 1, "odd degree target");
    ensure!(a.maximizing.maximizing, "not maximizing");
    for (x, y, z) in [(1, 1, 1), (1, 1, -1), (1, -1, 1), (1, -1, -1), (1, 0, 0), (0, 1, 0), (0, 0, 1)] {
        let l = local_milnor_tjurina(&f, &point(x, y, z).unwrap()).map_err(|e| e.to_string())?;
        ensure_eq!((l.mu, l.tau), (1, 1), format!("node at ({x}:{y}:{z})"));
    }
    let found = rational_singular_points(&f, 100, 1).map_err(|e| e.to_string())?;
    ensure_eq!(found.len(), 7, "rational singular points");
    oracle_checks(&f, &a)
}

fn persson_family() -> Check {
    for m in 2..=4u32 {
        let f = catalog::get("persson", &[m]).map_err(|e| e.to_string())?.poly();
        let a = run(&f, true)?;
        let d = 2 * (m + 1);
        ensure_eq!(a.degree(), d, "degree");
        ensure_eq!(a.class, CurveClass::Free { d1: m, d2: m + 1 }, format!("class for m = {m}"));
        let half = (d / 2) as usize;
        ensure_eq!(a.tau, 3 * half * (half - 1) + 1, format!("tau for m = {m}"));
        ensure_eq!(a.tau, (3 * m * (m + 1) + 1) as usize, format!("tau for m = {m}"));
        ensure!(a.maximizing.maximizing, "m = {m} not maximizing");
        ensure_eq!(a.maximizing.maximizing, a.class == CurveClass::Free { d1: half as u32 - 1, d2: half as u32 }, "maximizing iff free with exponents (d/2 - 1, d/2)");
        oracle_checks(&f, &a)?;
    }
    Ok(())
}

fn thom_sebastiani_quartic() -> Check {
    let a = run_text("x^2*y^2 + z^4")?;
    let (d, m) = (4i64, 2i64);
    ensure_eq!(a.tau as i64, tau_min_ref(d, 1), "tau = lower bound");
    ensure_eq!(a.tau, 6, "tau");
    ensure_eq!(a.mdr(), 1, "mdr");
    ensure_eq!(a.nu, 1, "nu");
    ensure!(a.class.is_nearly_free(), "class {}", a.class);
    ensure_eq!(a.ct_plus_st(), Some((3 * (d - 2) + 2 * m - 2) as usize), "ct + st = T + 2m - 2");
    ensure_eq!(a.ct_plus_st(), Some(8), "ct + st");
    oracle_checks(&parse_poly("x^2*y^2 + z^4").unwrap(), &a)
}

fn free_fixtures() -> Check {
    let a = run_text("x*y*z")?;
    ensure_eq!(a.class, CurveClass::Free { d1: 1, d2: 1 }, "class of xyz");
    ensure_eq!(a.tau, 3, "tau of xyz");
    ensure_eq!(a.ct_plus_st(), Some(a.t()), "ct + st = T");
    ensure_eq!(a.defects.defects.first().copied(), Some(3 - 1), "first defect tau - dim S_0");
    ensure_eq!(a.defects.defects.get(1).copied(), Some(0), "second defect");
    for d in 2..=6u32 {
        let e = catalog::get("concurrent", &[d]).map_err(|e| e.to_string())?;
        let arr = e.arrangement.clone().unwrap();
        let a = run(&e.poly(), false)?;
        ensure_eq!(a.class, CurveClass::Free { d1: 0, d2: d - 1 }, format!("concurrent({d})"));
        ensure_eq!(a.tau, ((d - 1) * (d - 1)) as usize, "tau of concurrent lines");
        ensure_eq!(arr.multiplicity_profile().m == d as usize, a.mdr() == 0, "m(C) = d iff mdr = 0");
        if d >= 3 {
            oracle_checks(&e.poly(), &a)?;
        }
    }
    for src in ["x*y*(x+y)*z", "x*y*z*(x+y+z)", "x*(x-z)*y*(y-z)*(x-y)"] {
        let arr = LineArrangement::from_forms(
            &src.split('*').map(|l| parse_line(l.trim_matches(['(', ')']))).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?,
        )
        .map_err(|e| e.to_string())?;
        let a = run_text(src)?;
        ensure_eq!(arr.multiplicity_profile().m == arr.degree(), a.mdr() == 0, format!("m(C) = d iff mdr = 0 for {src}"));
    }
    for d in [3usize, 4] {
        let src = format!("x^{d} + y^{d} + z^{d}");
        let a = run_text(&src)?;
        ensure_eq!(a.tau, 0, "smooth");
        ensure_eq!(a.exponents(), vec![d as u32 - 1; 3], "Fermat exponents");
        ensure_eq!(a.scan.relations.len(), 1, "one relation");
        let h = smooth_hilbert(d);
        ensure_eq!(a.nu as i64, *h.iter().max().unwrap(), "nu of a smooth curve");
        ensure_eq!(a.nu_formulas.value(), a.nu as i64, "nu from tau and mdr");
        oracle_checks(&parse_poly(&src).unwrap(), &a)?;
    }
    Ok(())
}

fn cuspidal_fixtures() -> Check {
    let a = run_text("x^3 - y^2*z")?;
    ensure!(a.class.is_nearly_free(), "cuspidal cubic is {}", a.class);
    ensure_eq!(a.exponents(), vec![1, 2, 2], "exponents");
    ensure_eq!(a.tau, 2, "tau");
    for (p, q) in [(1u32, 2u32), (2, 3), (2, 5), (3, 4)] {
        let f = catalog::get("monomial_cusp", &[p, q]).map_err(|e| e.to_string())?.poly();
        let a = run(&f, false)?;
        ensure!(
            a.class.is_free() || a.class.is_plus_one_generated(),
            "monomial cusp ({p},{q}) is {}",
            a.class
        );
        let q = q as usize;
        ensure_eq!(a.tau, (q - 1) * (q - 2), format!("tau of monomial cusp ({p},{q})"));
    }
    let g = cuspidal_guarantee(35, 16).map_err(|e| e.to_string())?;
    ensure!(!g.guaranteed, "(35, 16) reported as guaranteed");
    ensure_eq!(g.tag, GuaranteeTag::ListedException, "tag");
    Ok(())
}

fn supersolvable_fixtures() -> Check {
    let f = catalog::get("conicline_family", &[2]).map_err(|e| e.to_string())?.poly();
    let cert = is_modular_point(&f, &point(0, 1, 0).unwrap()).map_err(|e| e.to_string())?;
    ensure!(cert.modular, "(0:1:0) not modular: {cert:?}");
    ensure!(run(&f, false)?.class.is_free(), "conic-line curve not free");

    let f = catalog::get("supersolvable_family", &[2]).map_err(|e| e.to_string())?.poly();
    ensure!(run(&f, false)?.class.is_free(), "supersolvable family not free");
    let r = supersolvable_check(&f, &[], 0).map_err(|e| e.to_string())?;
    ensure!(!r.modular_points.is_empty(), "no modular point found");

    let tri = LineArrangement::from_i64(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
    let comb = checked_modular_points(&tri).map_err(|e| e.to_string())?;
    ensure_eq!(comb.len(), 3, "modular points of the triangle");
    for p in &comb {
        ensure!(is_modular_point(&tri.product(), p).map_err(|e| e.to_string())?.modular, "pencil test disagrees");
    }
    Ok(())
}

fn property_suites() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut analyzed, mut rejected, mut lines_checked) = (0, 0, 0);
    let mut classes = BTreeMap::new();
    while analyzed < 200 {
        let d = rng.gen_range(3..=6);
        let curve = random_curve(&mut rng, d);
        let src = curve.text;
        let f = parse_poly(&src).map_err(|e| e.to_string())?;
        match analyze(&f, &AnalysisOptions { seed: analyzed, ..Default::default() }) {
            Ok(a) => {
                oracle_checks(&f, &a).map_err(|e| format!("{src}: {e}"))?;
                if let Some(lines) = curve.lines {
                    let forms = lines.iter().map(|l| parse_poly(l)).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
                    let arr = LineArrangement::from_forms(&forms).map_err(|e| e.to_string())?;
                    ensure_eq!(a.tau as i64, arrangement_tau(&arr), format!("tau of {src}"));
                    ensure_eq!(a.tau, arr.tau_combinatorial(), format!("combinatorial tau of {src}"));
                    lines_checked += 1;
                }
                *classes.entry(a.class.name()).or_insert(0) += 1;
                analyzed += 1;
            }
            Err(freeness::error::Error::NotReduced(_)) => rejected += 1,
            Err(e) => return Err(format!("{src}: {e}")),
        }
    }
    for e in catalog::verified_entries(catalog::DEFAULT_MAX_DEGREE).map_err(|e| e.to_string())? {
        if e.degree < 3 {
            continue;
        }
        let f = e.poly();
        let a = run(&f, e.flags.ade).map_err(|x| format!("{}: {x}", e.label()))?;
        oracle_checks(&f, &a).map_err(|x| format!("{}: {x}", e.label()))?;
    }
    let pool: Vec<HomogeneousPoly> = [
        ("triangle", vec![]),
        ("concurrent", vec![3]),
        ("concurrent", vec![4]),
        ("persson", vec![2]),
        ("conicline_family", vec![1]),
        ("conicline_family", vec![2]),
        ("supersolvable_family", vec![2]),
    ]
    .iter()
    .map(|(n, p)| catalog::get(n, p).map(|e| e.poly()))
    .collect::<Result<_, _>>()
    .map_err(|e| e.to_string())?;
    let (mut additions, mut tested) = (0, 0);
    while additions < 50 {
        let f = &pool[additions % pool.len()];
        let sing = rational_singular_points(f, 100, 3).map_err(|e| e.to_string())?;
        let line = if !sing.is_empty() && rng.gen_bool(0.6) {
            let p = &sing[rng.gen_range(0..sing.len())];
            let (s, t) = (rng.gen_range(-3i64..=3), rng.gen_range(-3i64..=3));
            format!("({s})*({}*y - {}*x) + ({t})*({}*z - {}*x)", p[0], p[1], p[0], p[2])
        } else {
            random_form(&mut rng, 1, 3)
        };
        let ell = parse_poly(&line).map_err(|e| e.to_string())?;
        if ell.is_zero() {
            continue;
        }
        match line_addition_check(f, &ell, &AnalysisOptions::default()) {
            Ok(v) => {
                tested += usize::from(v.implication_tested);
                additions += 1;
            }
            Err(freeness::error::Error::InvalidInput(_)) => continue,
            Err(e) => return Err(format!("adding {line}: {e}")),
        }
    }
    ensure!(tested >= 10, "only {tested} of 50 unions were free");
    println!("      {analyzed} random curves ({lines_checked} line arrangements, {rejected} non-reduced draws skipped), classes {classes:?}; {tested}/50 line additions gave free unions");
    Ok(())
}

type Criterion = (&'static str, fn() -> Check);

fn main() {
    let criteria: [Criterion; 9] = [
        ("Ziegler pair invariants and lattice", ziegler_pair),
        ("Ziegler extensions", ziegler_extensions),
        ("degree-9 free curve with seven nodes", degree_nine_free_curve),
        ("Persson family m = 2, 3, 4", persson_family),
        ("Thom-Sebastiani quartic x^2y^2 + z^4", thom_sebastiani_quartic),
        ("trivial and free fixtures", free_fixtures),
        ("cuspidal fixtures", cuspidal_fixtures),
        ("modular points and supersolvable fixtures", supersolvable_fixtures),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {}: PASS  {name} ({secs:.1} s)", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({secs:.1} s): {e}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
