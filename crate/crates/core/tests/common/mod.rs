//! Independent reference computations shared by the integration tests.

#![allow(dead_code)]

use freeness::analysis::Analysis;
use freeness::arrangement::LineArrangement;
use freeness::geometry::{local_milnor_tjurina, rational_singular_points};
use freeness::poly::HomogeneousPoly;
use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Check = Result<(), String>;

#[macro_export]
macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

#[macro_export]
macro_rules! ensure_eq {
    ($a:expr, $b:expr, $what:expr) => {{
        let (a, b) = (&$a, &$b);
        if a != b {
            return Err(format!("{}: got {:?}, expected {:?}", $what, a, b));
        }
    }};
}

/// `dim S_k` for `S = Q[x, y, z]`, zero for negative `k`.
pub fn s(k: i64) -> i64 {
    if k < 0 {
        0
    } else {
        (k + 1) * (k + 2) / 2
    }
}

pub fn binom2(n: i64) -> i64 {
    if n < 2 {
        0
    } else {
        n * (n - 1) / 2
    }
}

/// Coefficients of `((1 - t^(d-1)) / (1 - t))^3`, by multiplying out.
pub fn smooth_hilbert(d: usize) -> Vec<i64> {
    let base = vec![1i64; d - 1];
    let mut acc = vec![1i64];
    for _ in 0..3 {
        let mut next = vec![0i64; acc.len() + base.len() - 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in base.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        acc = next;
    }
    acc
}

pub fn kr_closed_form(d: i64, k: i64) -> i64 {
    3 * s(k - d + 1) - s(k - 2 * d + 2)
}

pub fn tau_max_plain(d: i64, r: i64) -> i64 {
    (d - 1) * (d - r - 1) + r * r
}

pub fn tau_max_refined(d: i64, r: i64) -> i64 {
    let t = tau_max_plain(d, r);
    if 2 * r >= d {
        t - binom2(2 * r - d + 2)
    } else {
        t
    }
}

pub fn tau_min_ref(d: i64, r: i64) -> i64 {
    (d - 1) * (d - r - 1)
}

/// Class name predicted from the exponents alone.
pub fn class_from_exponents(d: u32, e: &[u32]) -> &'static str {
    match e.len() {
        2 if e[0] + e[1] == d - 1 => "free",
        m if m >= 3 && e[0] + e[1] == d => {
            if m == 3 && e[1] == e[2] {
                "nearly free"
            } else if m == 3 {
                "plus-one generated"
            } else {
                "general"
            }
        }
        _ => "general",
    }
}

/// Re-derives the invariant relations of an analysis from its raw tables.
pub fn oracle_checks(f: &HomogeneousPoly, a: &Analysis) -> Check {
    let d = a.degree() as i64;
    let t = 3 * (d - 2);
    let r = a.mdr() as i64;
    let tau = a.tau as i64;
    let nu = a.nu as i64;
    let ex = a.exponents();

    let n = &a.module_table.n_values;
    ensure_eq!(n.len() as i64, t + 1, "length of n(f)");
    for k in 0..=t as usize {
        ensure!(n[k] == n[t as usize - k], "n(f) not symmetric at {k}: {n:?}");
        if 2 * k < t as usize {
            ensure!(n[k] <= n[k + 1], "n(f) not unimodal: {n:?}");
        }
    }
    ensure_eq!(*n.iter().max().unwrap() as i64, nu, "nu = max n(f)_k");

    let name = class_from_exponents(a.degree(), &ex);
    let got = a.class.name();
    match name {
        "general" => ensure!(got == "general", "class {got} but exponents {ex:?}"),
        "plus-one generated" => ensure!(got == name, "class {got} but exponents {ex:?}"),
        _ => ensure_eq!(got, name, "class"),
    }
    ensure!(ex[0] + ex[1] >= a.degree() - 1, "d1 + d2 < d - 1: {ex:?}");

    let gap = tau_max_plain(d, r) - tau;
    ensure_eq!(gap == 0, nu == 0, "tau gap 0 iff nu 0");
    ensure_eq!(gap == 0, a.class.is_free(), "tau gap 0 iff free");
    ensure_eq!(gap == 1, nu == 1, "tau gap 1 iff nu 1");
    ensure_eq!(gap == 1, a.class.is_nearly_free(), "tau gap 1 iff nearly free");

    ensure!(tau_min_ref(d, r) <= tau, "tau below the lower bound");
    ensure!(tau <= tau_max_refined(d, r), "tau above the upper bound");

    let ar = |k: i64| a.scan.ar_dim(k as u32) as i64;
    for k in 0..=2 * d - 5 {
        let j = 2 * d - 5 - k;
        let er = ar(j) - kr_closed_form(d, j);
        let defect = tau - a.saturation.quotient_dim(k as usize) as i64;
        ensure_eq!(er, defect, format!("essential relations vs saturation defect at k = {k}"));
    }

    if let Some(ct) = a.thresholds.ct {
        ensure!(ct as i64 >= r + d - 2, "ct = {ct} < mdr + d - 2");
        if r < d - 1 {
            ensure_eq!(ct as i64, r + d - 2, "ct when mdr < d - 1");
        }
    } else {
        ensure_eq!(tau, 0, "ct infinite only for smooth curves");
    }
    let smooth = smooth_hilbert(d as usize);
    let m = &a.milnor;
    let first_diff = (0..m.len()).find(|&k| m[k] as i64 != smooth.get(k).copied().unwrap_or(0));
    ensure_eq!(a.thresholds.ct, first_diff.map(|k| k - 1), "ct from the Milnor table");
    let st = (0..m.len()).find(|&q| m[q..].iter().all(|&v| v as i64 == tau)).unwrap();
    ensure_eq!(a.thresholds.st, st, "st from the Milnor table");

    let (s1, s2) = (a.splitting.d1 as i64, a.splitting.d2 as i64);
    ensure_eq!(s1 + s2, d - 1, "splitting type degree");
    ensure_eq!((d - 1) * (d - 1) - s1 * s2, tau + nu, "splitting identity");

    ensure_eq!(a.scan.relations.len() + 2, ex.len(), "relation count = m - 2");
    let rels = a.scan.relation_degrees();
    let predicted = |k: i64| -> i64 {
        ex.iter().map(|&e| s(k - e as i64)).sum::<i64>() - rels.iter().map(|&e| s(k - e as i64)).sum::<i64>()
    };
    ensure_eq!(a.scan.verification.len(), 4, "degrees checked beyond the horizon");
    for &(k, p, meas) in &a.scan.verification {
        ensure_eq!(p as i64, predicted(k as i64), format!("predicted AR at {k}"));
        ensure_eq!(meas as i64, p as i64, format!("measured AR at {k}"));
    }
    for (k, &v) in a.scan.ar_dims.iter().enumerate() {
        ensure_eq!(v as i64, predicted(k as i64), format!("AR at {k}"));
    }

    let pts = rational_singular_points(f, 1000, 7).map_err(|e| e.to_string())?;
    let mut local = 0;
    for p in &pts {
        local += local_milnor_tjurina(f, p).map_err(|e| e.to_string())?.tau as i64;
    }
    ensure!(local <= tau, "local Tjurina numbers sum to {local} > tau = {tau}");
    Ok(())
}

/// `Σ (n_p - 1)^2` computed by brute force over all line triples.
pub fn arrangement_tau(arr: &LineArrangement) -> i64 {
    let ls = &arr.lines;
    let det = |a: &[BigInt; 3], b: &[BigInt; 3], c: &[BigInt; 3]| -> BigInt {
        &a[0] * (&b[1] * &c[2] - &b[2] * &c[1]) - &a[1] * (&b[0] * &c[2] - &b[2] * &c[0])
            + &a[2] * (&b[0] * &c[1] - &b[1] * &c[0])
    };
    let d = ls.len();
    // Each unvisited pair of lines determines one multiple point.
    let mut seen = vec![vec![false; d]; d];
    let mut total = 0;
    for i in 0..d {
        for j in i + 1..d {
            if seen[i][j] {
                continue;
            }
            let mut through = vec![i, j];
            for k in 0..d {
                if k != i && k != j && det(&ls[i], &ls[j], &ls[k]) == BigInt::from(0) {
                    through.push(k);
                }
            }
            for &a in &through {
                for &b in &through {
                    seen[a.min(b)][a.max(b)] = true;
                }
            }
            let n = through.len() as i64;
            total += (n - 1) * (n - 1);
        }
    }
    total
}

pub fn random_form(rng: &mut ChaCha8Rng, deg: u32, h: i64) -> String {
    loop {
        let mut terms = Vec::new();
        for a in 0..=deg {
            for b in 0..=deg - a {
                if rng.gen_bool(0.45) {
                    let c = rng.gen_range(-h..=h);
                    if c != 0 {
                        terms.push(format!("({c})*x^{a}*y^{b}*z^{}", deg - a - b));
                    }
                }
            }
        }
        if !terms.is_empty() {
            return terms.join(" + ");
        }
    }
}

/// A random curve of degree `d`, as text.
pub struct RandomCurve {
    pub text: String,
    /// The linear factors when the curve was drawn as a line arrangement.
    pub lines: Option<Vec<String>>,
}

/// A product of small random factors, or of random lines.
pub fn random_curve(rng: &mut ChaCha8Rng, d: u32) -> RandomCurve {
    if rng.gen_bool(0.3) {
        let lines: Vec<String> = (0..d).map(|_| random_form(rng, 1, 2)).collect();
        return RandomCurve {
            text: lines.iter().map(|l| format!("({l})")).collect::<Vec<_>>().join("*"),
            lines: Some(lines),
        };
    }
    let mut parts = Vec::new();
    let mut left = d;
    while left > 0 {
        let p = rng.gen_range(1..=left.min(3));
        parts.push(format!("({})", random_form(rng, p, 3)));
        left -= p;
    }
    RandomCurve {
        text: parts.join("*"),
        lines: None,
    }
}
