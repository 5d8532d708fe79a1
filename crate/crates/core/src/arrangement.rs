//! Line arrangements: intersection points, combinatorics, lattice
//! isomorphism, modular points and line additions.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::analysis::{analyze, Analysis, AnalysisOptions};
use crate::classify::{tau_min, Check, Verdict};
use crate::error::{Error, Result};
use crate::geometry::{format_point, is_modular_point, ProjPoint};
use crate::poly::pencil::normalize_point;
use crate::poly::{HomogeneousPoly, Monomial};

/// Largest arrangement accepted by [`lattice_isomorphic`].
pub const LATTICE_CAP: usize = 30;

fn cross(a: &[BigInt; 3], b: &[BigInt; 3]) -> [BigInt; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn dot(a: &[BigInt; 3], b: &[BigInt; 3]) -> BigInt {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

/// Distinct lines `a x + b y + c z = 0`, stored as primitive integer triples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineArrangement {
    pub lines: Vec<[BigInt; 3]>,
}

/// A point where at least two lines meet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplePoint {
    pub point: ProjPoint,
    /// Indices of the lines through the point, increasing.
    pub lines: Vec<usize>,
}

impl MultiplePoint {
    pub fn multiplicity(&self) -> usize {
        self.lines.len()
    }
}

impl LineArrangement {
    pub fn new(lines: Vec<[BigInt; 3]>) -> Result<Self> {
        let lines: Vec<[BigInt; 3]> = lines.iter().map(normalize_point).collect::<Result<_>>()?;
        for i in 0..lines.len() {
            for j in 0..i {
                if lines[i] == lines[j] {
                    return Err(Error::InvalidInput(format!("lines {j} and {i} coincide")));
                }
            }
        }
        Ok(LineArrangement { lines })
    }

    pub fn from_forms(forms: &[HomogeneousPoly]) -> Result<Self> {
        let triples = forms
            .iter()
            .map(|l| {
                if l.degree() != 1 || l.is_zero() {
                    return Err(Error::InvalidInput(format!("{l} is not a linear form")));
                }
                let l = l.primitive();
                Ok(std::array::from_fn(|i| {
                    let mut e = [0u32; 3];
                    e[i] = 1;
                    l.coeff(&Monomial::from_exponents(e)).to_integer()
                }))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(triples)
    }

    pub fn from_i64(lines: &[[i64; 3]]) -> Result<Self> {
        Self::new(lines.iter().map(|l| l.map(BigInt::from)).collect())
    }

    pub fn degree(&self) -> usize {
        self.lines.len()
    }

    pub fn linear_form(&self, i: usize) -> HomogeneousPoly {
        let mut h = HomogeneousPoly::zero(1);
        for (v, c) in self.lines[i].iter().enumerate() {
            h = h.add(&HomogeneousPoly::var(v).scale(&num_rational::BigRational::from_integer(c.clone())));
        }
        h
    }

    /// The product of the linear forms.
    pub fn product(&self) -> HomogeneousPoly {
        (0..self.degree()).fold(
            HomogeneousPoly::constant(num_rational::BigRational::from_integer(1.into())),
            |acc, i| acc.mul(&self.linear_form(i)),
        )
    }

    /// All intersection points, sorted by coordinates.
    pub fn multiple_points(&self) -> Vec<MultiplePoint> {
        let mut points: BTreeMap<ProjPoint, Vec<usize>> = BTreeMap::new();
        for i in 0..self.degree() {
            for j in i + 1..self.degree() {
                let p = normalize_point(&cross(&self.lines[i], &self.lines[j]))
                    .expect("distinct lines meet in a point");
                let entry = points.entry(p).or_default();
                for k in [i, j] {
                    if !entry.contains(&k) {
                        entry.push(k);
                    }
                }
            }
        }
        points
            .into_iter()
            .map(|(point, mut lines)| {
                lines.sort_unstable();
                MultiplePoint { point, lines }
            })
            .collect()
    }

    /// `t_k`, the number of points of multiplicity `k`.
    pub fn weak_combinatorics(&self) -> WeakCombinatorics {
        let mut t = BTreeMap::new();
        for p in self.multiple_points() {
            *t.entry(p.multiplicity()).or_insert(0) += 1;
        }
        WeakCombinatorics { t }
    }

    /// `Σ (n_p - 1)^2` over the multiple points.
    pub fn tau_combinatorial(&self) -> usize {
        self.multiple_points()
            .iter()
            .map(|p| (p.multiplicity() - 1).pow(2))
            .sum()
    }

    /// `m(C)` and the values of `n(C)` for each point of multiplicity `m(C)`.
    pub fn multiplicity_profile(&self) -> MultiplicityProfile {
        let pts = self.multiple_points();
        let m = pts.iter().map(MultiplePoint::multiplicity).max().unwrap_or(1);
        let per_point: Vec<(String, usize)> = pts
            .iter()
            .filter(|p| p.multiplicity() == m)
            .map(|p| {
                let n = pts
                    .iter()
                    .filter(|q| q.point != p.point)
                    .map(MultiplePoint::multiplicity)
                    .max()
                    .unwrap_or(1);
                (format_point(&p.point), n)
            })
            .collect();
        MultiplicityProfile {
            m,
            n: per_point.first().map_or(1, |x| x.1),
            n_per_point: per_point,
        }
    }

    /// Multiple points `p` such that every other multiple point shares a line
    /// with `p`.
    pub fn modular_points_combinatorial(&self) -> Vec<ProjPoint> {
        let pts = self.multiple_points();
        pts.iter()
            .filter(|p| {
                pts.iter()
                    .filter(|q| q.point != p.point)
                    .all(|q| q.lines.iter().any(|l| p.lines.contains(l)))
            })
            .map(|p| p.point.clone())
            .collect()
    }

    /// Sorted signature of the lattice: `t_k` and the multiset of per-line
    /// multiplicity lists.
    pub fn lattice_fingerprint(&self) -> String {
        let pts = self.multiple_points();
        let mut sigs: Vec<Vec<usize>> = (0..self.degree())
            .map(|i| {
                let mut s: Vec<usize> = pts
                    .iter()
                    .filter(|p| p.lines.contains(&i))
                    .map(MultiplePoint::multiplicity)
                    .collect();
                s.sort_unstable();
                s
            })
            .collect();
        sigs.sort();
        let t: Vec<String> = self
            .weak_combinatorics()
            .t
            .iter()
            .map(|(k, v)| format!("t{k}={v}"))
            .collect();
        let lines: Vec<String> = sigs
            .iter()
            .map(|s| s.iter().map(usize::to_string).collect::<Vec<_>>().join("."))
            .collect();
        format!("{};{}", t.join(","), lines.join("|"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeakCombinatorics {
    pub t: BTreeMap<usize, usize>,
}

impl WeakCombinatorics {
    /// `Σ t_k C(k, 2)`, which must be `C(d, 2)`.
    pub fn pair_count(&self) -> usize {
        self.t.iter().map(|(k, v)| v * k * (k - 1) / 2).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityProfile {
    pub m: usize,
    /// `n(C)` for the first point of multiplicity `m(C)`.
    pub n: usize,
    pub n_per_point: Vec<(String, usize)>,
}

fn binom2(n: usize) -> i64 {
    (n * n.saturating_sub(1) / 2) as i64
}

/// Lower bounds for `τ` of non-free arrangements with `mdr >= 2`.
pub fn lower_bounds_check(a: &LineArrangement, r: u32, tau: usize, free: bool) -> Result<Vec<Check>> {
    let d = a.degree();
    let mut checks = Vec::new();
    let skip = |name: &str, why: &str| Check {
        name: name.into(),
        verdict: Verdict::Skipped,
        detail: why.into(),
    };
    if free || d < 4 || r < 2 {
        let why = "needs a non-free arrangement of at least 4 lines with mdr >= 2";
        checks.push(skip("arrangement tau lower bound", why));
        return Ok(checks);
    }
    let prof = a.multiplicity_profile();
    let base = tau_min(d as u32, r) + binom2(r as usize);
    let tau_i = tau as i64;
    let mut verify = |name: &str, bound: i64| -> Result<()> {
        if tau_i < bound {
            return Err(Error::hard(name, format!("tau = {tau} < {bound}")));
        }
        checks.push(Check {
            name: name.into(),
            verdict: Verdict::Pass,
            detail: format!("{tau} >= {bound}"),
        });
        Ok(())
    };
    for (p, n) in &prof.n_per_point {
        verify(
            &format!("arrangement tau lower bound via n(C) at {p}"),
            base + binom2(*n) + 1,
        )?;
    }
    if r as usize != d - prof.m {
        verify("arrangement tau lower bound via m(C)", base + binom2(prof.m) + 1)?;
    }
    if r >= 3 {
        for (p, n) in &prof.n_per_point {
            if *n >= 3 {
                verify(&format!("arrangement tau lower bound, n(C) >= 3 at {p}"), base + 4)?;
            }
        }
    }
    Ok(checks)
}

struct Incidence {
    /// `point_of[i][j]`: index of the point where lines `i` and `j` meet.
    point_of: Vec<Vec<usize>>,
    mult: Vec<usize>,
    signature: Vec<Vec<usize>>,
}

impl Incidence {
    fn new(a: &LineArrangement) -> Self {
        let pts = a.multiple_points();
        let d = a.degree();
        let mut point_of = vec![vec![usize::MAX; d]; d];
        for (k, p) in pts.iter().enumerate() {
            for &i in &p.lines {
                for &j in &p.lines {
                    point_of[i][j] = k;
                }
            }
        }
        let mult: Vec<usize> = pts.iter().map(MultiplePoint::multiplicity).collect();
        let signature = (0..d)
            .map(|i| {
                let mut s: Vec<usize> = pts
                    .iter()
                    .filter(|p| p.lines.contains(&i))
                    .map(MultiplePoint::multiplicity)
                    .collect();
                s.sort_unstable();
                s
            })
            .collect();
        Incidence {
            point_of,
            mult,
            signature,
        }
    }
}

/// Finds a bijection of lines that carries the multiple points of `a` onto
/// those of `b`, if one exists.
pub fn lattice_isomorphism(a: &LineArrangement, b: &LineArrangement) -> Result<Option<Vec<usize>>> {
    let d = a.degree();
    if d > LATTICE_CAP || b.degree() > LATTICE_CAP {
        return Err(Error::Unsupported(format!(
            "lattice isomorphism is limited to {LATTICE_CAP} lines"
        )));
    }
    if d != b.degree() || a.weak_combinatorics() != b.weak_combinatorics() {
        return Ok(None);
    }
    let (ia, ib) = (Incidence::new(a), Incidence::new(b));
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(ia.signature[i].iter().sum::<usize>()));
    let mut map = vec![usize::MAX; d];
    let mut used = vec![false; d];
    fn extend(
        pos: usize,
        order: &[usize],
        ia: &Incidence,
        ib: &Incidence,
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let i = order[pos];
        for c in 0..used.len() {
            if used[c] || ia.signature[i] != ib.signature[c] {
                continue;
            }
            let consistent = order[..pos].iter().all(|&j| {
                let (pa, pb) = (ia.point_of[i][j], ib.point_of[c][map[j]]);
                ia.mult[pa] == ib.mult[pb]
                    && order[..pos].iter().all(|&k| {
                        (ia.point_of[i][k] == pa) == (ib.point_of[c][map[k]] == pb)
                    })
            });
            if !consistent {
                continue;
            }
            map[i] = c;
            used[c] = true;
            if extend(pos + 1, order, ia, ib, map, used) {
                return true;
            }
            used[c] = false;
            map[i] = usize::MAX;
        }
        false
    }
    Ok(extend(0, &order, &ia, &ib, &mut map, &mut used).then_some(map))
}

pub fn lattice_isomorphic(a: &LineArrangement, b: &LineArrangement) -> Result<bool> {
    Ok(lattice_isomorphism(a, b)?.is_some())
}

/// Whether the identity labeling of lines is a lattice isomorphism.
pub fn same_labeled_lattice(a: &LineArrangement, b: &LineArrangement) -> bool {
    let sets = |x: &LineArrangement| -> Vec<Vec<usize>> {
        let mut v: Vec<Vec<usize>> = x.multiple_points().into_iter().map(|p| p.lines).collect();
        v.sort();
        v
    };
    a.degree() == b.degree() && sets(a) == sets(b)
}

/// How a new line is chosen.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AddLineMode {
    /// Avoids every multiple point.
    Generic,
    /// Passes through the point where the two given lines meet, which must
    /// be a double point, and avoids every other multiple point.
    ThroughDoublePoint(usize, usize),
}

const ADD_LINE_TRIES: usize = 200;

/// Adds a line chosen from `seed` and verified exactly against `mode`.
pub fn add_line(a: &LineArrangement, mode: &AddLineMode, seed: u64) -> Result<LineArrangement> {
    let pts = a.multiple_points();
    let through = match mode {
        AddLineMode::Generic => None,
        AddLineMode::ThroughDoublePoint(i, j) => {
            let p = pts
                .iter()
                .find(|p| p.lines.contains(i) && p.lines.contains(j))
                .ok_or_else(|| Error::InvalidInput(format!("no line pair ({i}, {j})")))?;
            if p.multiplicity() != 2 {
                return Err(Error::InvalidInput(format!(
                    "lines {i} and {j} meet in a point of multiplicity {}",
                    p.multiplicity()
                )));
            }
            Some(p.point.clone())
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..ADD_LINE_TRIES {
        let h = 5 + attempt as i64;
        let line: [BigInt; 3] = match &through {
            None => std::array::from_fn(|_| BigInt::from(rng.gen_range(-h..=h))),
            Some(p) => {
                // Lines through p are combinations of two independent ones.
                let e: Vec<[BigInt; 3]> = (0..3)
                    .map(|i| {
                        let mut v = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
                        v[i] = BigInt::from(1);
                        cross(p, &v)
                    })
                    .filter(|v| v.iter().any(|c| !c.is_zero()))
                    .collect();
                let (s, t) = (BigInt::from(rng.gen_range(-h..=h)), BigInt::from(rng.gen_range(-h..=h)));
                std::array::from_fn(|k| &s * &e[0][k] + &t * &e[1][k])
            }
        };
        if line.iter().all(Zero::is_zero) {
            continue;
        }
        let Ok(line) = normalize_point(&line) else { continue };
        if a.lines.contains(&line) {
            continue;
        }
        let avoids = pts
            .iter()
            .filter(|q| Some(&q.point) != through.as_ref())
            .all(|q| !dot(&line, &q.point).is_zero());
        if avoids {
            let mut lines = a.lines.clone();
            lines.push(line);
            return LineArrangement::new(lines);
        }
    }
    Err(Error::Certification(format!(
        "no admissible line found in {ADD_LINE_TRIES} attempts"
    )))
}

/// Combinatorial modular points, checked against the pencil criterion at
/// every multiple point.
pub fn checked_modular_points(a: &LineArrangement) -> Result<Vec<ProjPoint>> {
    let comb = a.modular_points_combinatorial();
    let f = a.product();
    for p in a.multiple_points() {
        let exact = is_modular_point(&f, &p.point)?.modular;
        if exact != comb.contains(&p.point) {
            return Err(Error::hard(
                "modular points",
                format!(
                    "{}: combinatorial test says {}, pencil test says {exact}",
                    format_point(&p.point),
                    comb.contains(&p.point)
                ),
            ));
        }
    }
    Ok(comb)
}

/// One invariant compared across a lattice-isomorphic pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantComparison {
    pub invariant: String,
    pub first: String,
    pub second: String,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TeraoReport {
    pub degree: usize,
    pub lattice_fingerprint: String,
    pub comparisons: Vec<InvariantComparison>,
    /// Invariants that differ although the lattices agree.
    pub not_combinatorial: Vec<String>,
    /// `mdr < d/2` for at least one of the two: the regime where `mdr` is
    /// conjectured to be combinatorial.
    pub low_mdr_regime: bool,
    pub notes: Vec<String>,
}

/// Analyzes two arrangements with isomorphic lattices and compares their
/// invariants.
pub fn terao_experiment(a: &LineArrangement, b: &LineArrangement, opts: &AnalysisOptions) -> Result<TeraoReport> {
    if !lattice_isomorphic(a, b)? {
        return Err(Error::InvalidInput("the intersection lattices are not isomorphic".into()));
    }
    let x = analyze(&a.product(), opts)?;
    let y = analyze(&b.product(), opts)?;
    Ok(compare_pair(a, &x, &y))
}

pub fn compare_pair(a: &LineArrangement, x: &Analysis, y: &Analysis) -> TeraoReport {
    let fmt_opt = |v: Option<usize>| v.map_or("inf".to_string(), |v| v.to_string());
    let rows: Vec<(&str, String, String)> = vec![
        ("tau", x.tau.to_string(), y.tau.to_string()),
        ("mdr", x.mdr().to_string(), y.mdr().to_string()),
        ("exponents", format!("{:?}", x.exponents()), format!("{:?}", y.exponents())),
        ("nu", x.nu.to_string(), y.nu.to_string()),
        ("ct", fmt_opt(x.thresholds.ct), fmt_opt(y.thresholds.ct)),
        ("st", x.thresholds.st.to_string(), y.thresholds.st.to_string()),
        ("ct+st", fmt_opt(x.ct_plus_st()), fmt_opt(y.ct_plus_st())),
        (
            "splitting type",
            format!("({}, {})", x.splitting.d1, x.splitting.d2),
            format!("({}, {})", y.splitting.d1, y.splitting.d2),
        ),
        ("class", x.class.to_string(), y.class.to_string()),
    ];
    let comparisons: Vec<InvariantComparison> = rows
        .into_iter()
        .map(|(n, p, q)| InvariantComparison {
            invariant: n.into(),
            equal: p == q,
            first: p,
            second: q,
        })
        .collect();
    let not_combinatorial: Vec<String> = comparisons
        .iter()
        .filter(|c| !c.equal)
        .map(|c| c.invariant.clone())
        .collect();
    let d = a.degree() as u32;
    let low_mdr_regime = 2 * x.mdr() < d || 2 * y.mdr() < d;
    let mut notes = Vec::new();
    if not_combinatorial.iter().any(|n| n == "mdr") {
        notes.push("known non-determined invariant: mdr".into());
    }
    notes.push(if low_mdr_regime {
        "probes the regime mdr < d/2, where mdr and freeness are conjectured combinatorial".into()
    } else {
        "both mdr >= d/2: nu is determined by tau here, only the unrestricted conjectures are probed".into()
    });
    TeraoReport {
        degree: a.degree(),
        lattice_fingerprint: a.lattice_fingerprint(),
        comparisons,
        not_combinatorial,
        low_mdr_regime,
        notes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arr(lines: &[[i64; 3]]) -> LineArrangement {
        LineArrangement::from_i64(lines).unwrap()
    }

    fn triangle() -> LineArrangement {
        arr(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    }

    fn concurrent(d: i64) -> LineArrangement {
        arr(&(0..d).map(|k| [1, k, 0]).collect::<Vec<_>>())
    }

    #[test]
    fn points_and_tau() {
        let t = triangle();
        assert_eq!(t.multiple_points().len(), 3);
        assert_eq!(t.tau_combinatorial(), 3);
        let c = concurrent(5);
        assert_eq!(c.multiple_points().len(), 1);
        assert_eq!(c.tau_combinatorial(), 16);
        assert_eq!(c.weak_combinatorics().pair_count(), 10);
        assert!(LineArrangement::from_i64(&[[1, 0, 0], [2, 0, 0]]).is_err());
    }

    #[test]
    fn isomorphism() {
        let t = triangle();
        let moved = arr(&[[1, 1, 0], [0, 1, 1], [1, 0, 1]]);
        assert!(lattice_isomorphic(&t, &moved).unwrap());
        assert!(!lattice_isomorphic(&t, &concurrent(3)).unwrap());
        let near = arr(&[[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1]]);
        let near2 = arr(&[[0, 0, 1], [1, 0, 0], [1, 0, 1], [0, 1, 0]]);
        assert!(lattice_isomorphic(&near, &near2).unwrap());
        let general = arr(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]);
        assert!(!lattice_isomorphic(&near, &general).unwrap());
    }

    #[test]
    fn modular() {
        assert_eq!(checked_modular_points(&triangle()).unwrap().len(), 3);
        assert_eq!(checked_modular_points(&concurrent(4)).unwrap().len(), 1);
        let general = arr(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]);
        assert!(checked_modular_points(&general).unwrap().is_empty());
    }

    #[test]
    fn line_additions() {
        let t = triangle();
        let g = add_line(&t, &AddLineMode::Generic, 1).unwrap();
        assert_eq!(g.weak_combinatorics().t, BTreeMap::from([(2, 6)]));
        let g2 = add_line(&g, &AddLineMode::ThroughDoublePoint(0, 3), 2).unwrap();
        assert_eq!(g2.weak_combinatorics().t, BTreeMap::from([(2, 7), (3, 1)]));
        assert!(add_line(&concurrent(3), &AddLineMode::ThroughDoublePoint(0, 1), 0).is_err());
    }

    #[test]
    fn profile() {
        let c = concurrent(4);
        assert_eq!(c.multiplicity_profile().m, 4);
        let near = arr(&[[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1]]);
        let p = near.multiplicity_profile();
        assert_eq!((p.m, p.n), (3, 2));
    }
}
