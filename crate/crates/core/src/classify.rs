//! Classification of curves from their syzygy data, and the numerical
//! theorems relating exponents, Tjurina numbers and thresholds.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Free, nearly free, plus-one generated, or none of these.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum CurveClass {
    Free { d1: u32, d2: u32 },
    NearlyFree { d1: u32, d2: u32 },
    PlusOneGenerated { d1: u32, d2: u32, d3: u32 },
    General { m: usize, exponents: Vec<u32> },
}

impl CurveClass {
    pub fn is_free(&self) -> bool {
        matches!(self, CurveClass::Free { .. })
    }

    pub fn is_nearly_free(&self) -> bool {
        matches!(self, CurveClass::NearlyFree { .. })
    }

    /// Nearly free curves count as plus-one generated.
    pub fn is_plus_one_generated(&self) -> bool {
        matches!(self, CurveClass::NearlyFree { .. } | CurveClass::PlusOneGenerated { .. })
    }

    pub fn name(&self) -> &'static str {
        match self {
            CurveClass::Free { .. } => "free",
            CurveClass::NearlyFree { .. } => "nearly free",
            CurveClass::PlusOneGenerated { .. } => "plus-one generated",
            CurveClass::General { .. } => "general",
        }
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveClass::Free { d1, d2 } => write!(f, "Free({d1},{d2})"),
            CurveClass::NearlyFree { d1, d2 } => write!(f, "NearlyFree({d1},{d2})"),
            CurveClass::PlusOneGenerated { d1, d2, d3 } => {
                write!(f, "PlusOneGenerated({d1},{d2},{d3})")
            }
            CurveClass::General { m, exponents } => {
                let e: Vec<String> = exponents.iter().map(u32::to_string).collect();
                write!(f, "General({m}, ({}))", e.join(","))
            }
        }
    }
}

/// Outcome of one theorem check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    pub detail: String,
}

impl Check {
    fn pass(name: &str, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            verdict: Verdict::Pass,
            detail: detail.into(),
        }
    }

    fn skipped(name: &str, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            verdict: Verdict::Skipped,
            detail: detail.into(),
        }
    }
}

fn binom2(n: i64) -> i64 {
    if n < 2 {
        0
    } else {
        n * (n - 1) / 2
    }
}

/// Lower and upper bounds for `τ` in terms of `d` and `r = mdr`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DuPlessisWallBounds {
    pub tau_min: i64,
    pub tau_max: i64,
    /// `τ_max - C(2r + 2 - d, 2)`, present when `r >= d/2`.
    pub improved_max: Option<i64>,
    pub holds: bool,
}

impl DuPlessisWallBounds {
    pub fn applicable_max(&self) -> i64 {
        self.improved_max.unwrap_or(self.tau_max)
    }
}

pub fn tau_min(d: u32, r: u32) -> i64 {
    let (d, r) = (i64::from(d), i64::from(r));
    (d - 1) * (d - r - 1)
}

pub fn tau_max(d: u32, r: u32) -> i64 {
    let (d, r) = (i64::from(d), i64::from(r));
    (d - 1) * (d - 1) - r * (d - r - 1)
}

pub fn dpw_bounds(d: u32, r: u32, tau: usize) -> DuPlessisWallBounds {
    let tmin = tau_min(d, r);
    let tmax = tau_max(d, r);
    let improved_max = (2 * r >= d).then(|| tmax - binom2(2 * i64::from(r) + 2 - i64::from(d)));
    let tau = tau as i64;
    let upper = improved_max.unwrap_or(tmax);
    DuPlessisWallBounds {
        tau_min: tmin,
        tau_max: tmax,
        improved_max,
        holds: tmin <= tau && tau <= upper,
    }
}

/// As [`dpw_bounds`], failing when the bounds are violated.
pub fn check_dpw_bounds(d: u32, r: u32, tau: usize) -> Result<Check> {
    let b = dpw_bounds(d, r, tau);
    if !b.holds {
        return Err(Error::hard(
            "du Plessis-Wall bounds",
            format!(
                "tau = {tau} outside [{}, {}] for d = {d}, r = {r}",
                b.tau_min,
                b.applicable_max()
            ),
        ));
    }
    Ok(Check::pass(
        "du Plessis-Wall bounds",
        format!("{} <= {tau} <= {}", b.tau_min, b.applicable_max()),
    ))
}

/// `ν` from `d`, `r` and `τ` by each formula that applies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NuFormulas {
    /// `(d-1)^2 - r(d-1-r) - τ`, for `r < d/2`.
    pub low_mdr: Option<i64>,
    /// `⌈3(d-1)^2/4⌉ - τ`, for `r >= (d-2)/2`.
    pub high_mdr: Option<i64>,
}

impl NuFormulas {
    pub fn value(&self) -> i64 {
        self.low_mdr.or(self.high_mdr).expect("one formula always applies")
    }
}

pub fn nu_via_formulas(d: u32, r: u32, tau: usize) -> Result<NuFormulas> {
    let tau = tau as i64;
    let dd = i64::from(d) - 1;
    let low_mdr = (2 * r < d).then(|| tau_max(d, r) - tau);
    let high_mdr = (2 * r + 2 >= d).then(|| (3 * dd * dd + 3) / 4 - tau);
    if let (Some(a), Some(b)) = (low_mdr, high_mdr) {
        if a != b {
            return Err(Error::hard(
                "nu formulas",
                format!("the two formulas disagree on the overlap: {a} vs {b}"),
            ));
        }
    }
    Ok(NuFormulas { low_mdr, high_mdr })
}

/// Checks the formula value of `ν` against the directly computed one.
pub fn check_nu_formulas(d: u32, r: u32, tau: usize, nu: usize) -> Result<Check> {
    let v = nu_via_formulas(d, r, tau)?.value();
    if v != nu as i64 {
        return Err(Error::hard(
            "nu formulas",
            format!("formula gives {v}, the Jacobian module gives {nu}"),
        ));
    }
    Ok(Check::pass("nu formulas", format!("nu = {nu}")))
}

/// Classifies from the exponents, cross-checking against `τ` and `ν`.
pub fn classify(exponents: &[u32], tau: usize, nu: usize, d: u32) -> Result<CurveClass> {
    if exponents.len() < 2 {
        return Err(Error::hard("classification", "fewer than two exponents"));
    }
    let (d1, d2) = (exponents[0], exponents[1]);
    let m = exponents.len();
    let class = if d1 + d2 + 1 == d {
        if m != 2 {
            return Err(Error::hard(
                "trichotomy",
                format!("d1 + d2 = d - 1 but there are {m} generators"),
            ));
        }
        CurveClass::Free { d1, d2 }
    } else if d1 + d2 == d {
        if m != 3 {
            return Err(Error::hard(
                "trichotomy",
                format!("d1 + d2 = d but there are {m} generators"),
            ));
        }
        let d3 = exponents[2];
        if d3 == d2 {
            CurveClass::NearlyFree { d1, d2 }
        } else {
            CurveClass::PlusOneGenerated { d1, d2, d3 }
        }
    } else if d1 + d2 > d {
        CurveClass::General {
            m,
            exponents: exponents.to_vec(),
        }
    } else {
        return Err(Error::hard(
            "trichotomy",
            format!("d1 + d2 = {} < d - 1", d1 + d2),
        ));
    };
    let gap = tau_max(d, d1) - tau as i64;
    let free_by = [class.is_free(), gap == 0, nu == 0];
    if free_by.iter().any(|&b| b != free_by[0]) {
        return Err(Error::hard(
            "free characterization",
            format!("class {class}, tau gap {gap}, nu {nu} disagree on freeness"),
        ));
    }
    let nearly_by = [class.is_nearly_free(), gap == 1, nu == 1];
    if nearly_by.iter().any(|&b| b != nearly_by[0]) {
        return Err(Error::hard(
            "nearly free characterization",
            format!("class {class}, tau gap {gap}, nu {nu} disagree on near freeness"),
        ));
    }
    if class.is_free() && 2 * d1 >= d {
        return Err(Error::hard("free characterization", "free curve with r >= d/2"));
    }
    if class.is_nearly_free() && 2 * d1 > d {
        return Err(Error::hard("nearly free characterization", "nearly free curve with r > d/2"));
    }
    Ok(class)
}

/// Whether `τ` reaches the largest value allowed by `d` and `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximalTjurinaStatus {
    pub maximal: bool,
    pub gap: i64,
}

pub fn maximal_tjurina(d: u32, r: u32, tau: usize) -> MaximalTjurinaStatus {
    let b = dpw_bounds(d, r, tau);
    let gap = b.applicable_max() - tau as i64;
    MaximalTjurinaStatus {
        maximal: b.improved_max.is_some() && gap == 0,
        gap,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// Maximizing status, conditional on the curve having only simple (ADE)
/// singularities, which is supplied rather than computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximizingStatus {
    pub parity: Parity,
    pub target_tau: usize,
    pub maximizing: bool,
    pub ade_asserted: bool,
}

/// For `d = 2m` the target is `3m(m-1)+1`, attained exactly by the free
/// curves with exponents `(m-1, m)`. For `d = 2m+1` it is `3m^2+1`, which
/// requires `r = m-1` and freeness.
pub fn maximizing_status(
    d: u32,
    r: u32,
    tau: usize,
    class: &CurveClass,
    ade_asserted: bool,
) -> Result<MaximizingStatus> {
    let m = (d / 2) as usize;
    let (parity, target) = if d.is_multiple_of(2) {
        (Parity::Even, 3 * m * (m - 1) + 1)
    } else {
        (Parity::Odd, 3 * m * m + 1)
    };
    let maximizing = ade_asserted && d >= 4 && tau == target;
    if ade_asserted && d >= 4 {
        let m32 = m as u32;
        match parity {
            Parity::Even => {
                let free_mm = *class == CurveClass::Free { d1: m32 - 1, d2: m32 };
                if maximizing != free_mm {
                    return Err(Error::hard(
                        "maximizing characterization",
                        format!("tau = {tau} (target {target}) but class is {class}"),
                    ));
                }
            }
            Parity::Odd if d >= 5 => {
                let mm = 3 * m * m;
                let ok = if r + 1 == m32 {
                    tau <= mm + 1 && ((tau == mm + 1) == class.is_free())
                } else if r == m32 {
                    tau <= mm && ((tau == mm) == class.is_free())
                } else {
                    r > m32 && tau + 1 < mm
                };
                if !ok {
                    return Err(Error::hard(
                        "odd degree maximizing bounds",
                        format!("r = {r}, tau = {tau}, class {class} violate the case list for d = {d}"),
                    ));
                }
            }
            Parity::Odd => {}
        }
    }
    Ok(MaximizingStatus {
        parity,
        target_tau: target,
        maximizing,
        ade_asserted,
    })
}

/// Checks the threshold sum against the class.
pub fn ctst_relation(ct: Option<usize>, st: usize, class: &CurveClass, nu: usize, t: usize) -> Result<Check> {
    const NAME: &str = "ct + st";
    let Some(ct) = ct else {
        return Ok(Check::skipped(NAME, "smooth curve, ct is infinite"));
    };
    let sum = ct + st;
    let fail = |what: &str| Err(Error::hard(NAME, format!("ct + st = {sum}, T = {t}, class {class}: {what}")));
    if (sum == t) != class.is_free() {
        return fail("ct + st = T must hold exactly for free curves");
    }
    if (sum == t + 2) != class.is_nearly_free() {
        return fail("ct + st = T + 2 must hold exactly for nearly free curves");
    }
    if class.is_plus_one_generated() && sum != t + nu + 1 {
        return fail("plus-one generated curves have ct + st = T + nu + 1");
    }
    if matches!(class, CurveClass::General { .. }) && sum < t + 3 {
        return fail("other curves have ct + st >= T + 3");
    }
    Ok(Check::pass(NAME, format!("ct + st = {sum} = T + {}", sum - t)))
}

/// `ct >= mdr + d - 2`, with equality when `mdr < d - 1`.
pub fn check_ct_lower_bound(ct: Option<usize>, r: u32, d: u32) -> Result<Check> {
    const NAME: &str = "ct lower bound";
    let Some(ct) = ct else {
        return Ok(Check::skipped(NAME, "smooth curve, ct is infinite"));
    };
    let bound = (r + d - 2) as usize;
    if ct < bound || (r + 1 < d && ct != bound) {
        return Err(Error::hard(
            NAME,
            format!("ct = {ct}, mdr + d - 2 = {bound}, mdr = {r}"),
        ));
    }
    Ok(Check::pass(NAME, format!("ct = {ct}, mdr + d - 2 = {bound}")))
}

/// Which result guarantees that a rational cuspidal curve is free or nearly
/// free.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GuaranteeTag {
    EvenDegree,
    OddPrimePower,
    MdrEqualsHalfDegree,
    MdrAtMostR0,
    ThreeTimesPrimePower,
    FiveTimesPrimePower,
    MdrAtMostFifteen,
    DegreeAtMostNinety,
    /// `d = 5p^k` with `mdr = d' - 1`, left open.
    OpenCase,
    ListedException,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspidalGuaranteeStatus {
    pub d: u32,
    pub r: u32,
    pub guaranteed: bool,
    pub tag: GuaranteeTag,
    /// `e1 = d / p1^k1` for the largest prime power `p1^k1` dividing `d`.
    pub e1: Option<u32>,
    /// `(d - e1) / 2`.
    pub r0: Option<u32>,
}

/// Degree and mdr pairs excluded from the general guarantee for `d <= 90`.
pub const CUSPIDAL_EXCEPTIONS: [(u32, u32); 9] = [
    (35, 16),
    (45, 21),
    (55, 26),
    (63, 29),
    (63, 30),
    (65, 31),
    (77, 36),
    (77, 37),
    (85, 41),
];

/// Prime factorization as `(p, k)` pairs in increasing `p`.
pub fn factorize(mut n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn is_prime_power(n: u32) -> bool {
    factorize(n).len() == 1
}

pub fn cuspidal_guarantee(d: u32, r: u32) -> Result<CuspidalGuaranteeStatus> {
    let mut status = CuspidalGuaranteeStatus {
        d,
        r,
        guaranteed: true,
        tag: GuaranteeTag::EvenDegree,
        e1: None,
        r0: None,
    };
    if d.is_multiple_of(2) {
        return Ok(status);
    }
    if d < 3 {
        return Err(Error::InvalidInput(format!("degree {d} is too small")));
    }
    let half = (d - 1) / 2;
    if r > half {
        return Err(Error::InvalidInput(format!(
            "a rational cuspidal curve of degree {d} has mdr at most {half}, got {r}"
        )));
    }
    let factors = factorize(d);
    let (p1, k1) = *factors.iter().max_by_key(|(p, k)| p.pow(*k)).expect("d > 1");
    let e1 = d / p1.pow(k1);
    let r0 = (d - e1) / 2;
    status.e1 = Some(e1);
    status.r0 = Some(r0);
    let tag = if factors.len() == 1 {
        GuaranteeTag::OddPrimePower
    } else if r == half {
        GuaranteeTag::MdrEqualsHalfDegree
    } else if r <= r0 {
        GuaranteeTag::MdrAtMostR0
    } else if d.is_multiple_of(3) && is_prime_power(d / 3) {
        GuaranteeTag::ThreeTimesPrimePower
    } else if d.is_multiple_of(5) && is_prime_power(d / 5) && d / 5 > 3 && r + 1 != half {
        GuaranteeTag::FiveTimesPrimePower
    } else if r <= 15 {
        GuaranteeTag::MdrAtMostFifteen
    } else if CUSPIDAL_EXCEPTIONS.contains(&(d, r)) {
        GuaranteeTag::ListedException
    } else if d <= 90 {
        GuaranteeTag::DegreeAtMostNinety
    } else if d.is_multiple_of(5) && is_prime_power(d / 5) && d / 5 > 3 {
        GuaranteeTag::OpenCase
    } else {
        GuaranteeTag::None
    };
    status.guaranteed = !matches!(
        tag,
        GuaranteeTag::ListedException | GuaranteeTag::OpenCase | GuaranteeTag::None
    );
    status.tag = tag;
    Ok(status)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_examples() {
        let b = dpw_bounds(9, 5, 42);
        assert_eq!(b.applicable_max(), 46);
        assert!(b.holds);
        assert_eq!(dpw_bounds(4, 1, 6).tau_min, 6);
        assert!(!dpw_bounds(3, 1, 4).holds);
    }

    #[test]
    fn nu_formula_examples() {
        assert_eq!(nu_via_formulas(9, 5, 42).unwrap().value(), 6);
        assert_eq!(nu_via_formulas(3, 1, 0).unwrap().value(), 3);
        assert_eq!(nu_via_formulas(3, 1, 3).unwrap().value(), 0);
        for d in 3..20u32 {
            for r in 0..d {
                if let (Some(a), Some(b)) = {
                    let n = nu_via_formulas(d, r, 0).unwrap();
                    (n.low_mdr, n.high_mdr)
                } {
                    assert_eq!(a, b, "d={d} r={r}");
                }
            }
        }
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&[1, 1], 3, 0, 3).unwrap(), CurveClass::Free { d1: 1, d2: 1 });
        assert_eq!(
            classify(&[1, 2, 2], 2, 1, 3).unwrap(),
            CurveClass::NearlyFree { d1: 1, d2: 2 }
        );
        let z = classify(&[5, 6, 6, 6], 42, 6, 9).unwrap();
        assert_eq!(z.to_string(), "General(4, (5,6,6,6))");
        assert!(classify(&[1, 1], 2, 0, 3).is_err());
    }

    #[test]
    fn maximal_tjurina_examples() {
        assert!(maximal_tjurina(4, 3, 3).maximal);
        assert_eq!(maximal_tjurina(9, 5, 42).gap, 4);
        assert!(!maximal_tjurina(3, 1, 3).maximal);
    }

    #[test]
    fn maximizing_examples() {
        let free35 = CurveClass::Free { d1: 3, d2: 5 };
        assert!(maximizing_status(9, 3, 49, &free35, true).unwrap().maximizing);
        let free23 = CurveClass::Free { d1: 2, d2: 3 };
        assert!(maximizing_status(6, 2, 19, &free23, true).unwrap().maximizing);
        let smooth = CurveClass::General { m: 3, exponents: vec![5, 5, 5] };
        assert!(!maximizing_status(6, 5, 0, &smooth, true).unwrap().maximizing);
    }

    #[test]
    fn ctst_examples() {
        let g = CurveClass::General { m: 4, exponents: vec![5, 6, 6, 6] };
        assert!(ctst_relation(Some(12), 14, &g, 6, 21).is_ok());
        let free = CurveClass::Free { d1: 1, d2: 1 };
        assert!(ctst_relation(Some(2), 1, &free, 0, 3).is_ok());
        assert!(ctst_relation(Some(2), 2, &free, 0, 3).is_err());
        assert_eq!(ctst_relation(None, 4, &g, 3, 3).unwrap().verdict, Verdict::Skipped);
    }

    #[test]
    fn cuspidal_examples() {
        let s = cuspidal_guarantee(35, 16).unwrap();
        assert!(!s.guaranteed);
        assert_eq!(s.r0, Some(15));
        for r in 0..=15 {
            assert!(cuspidal_guarantee(91, r).unwrap().guaranteed);
        }
        for r in 0..=13 {
            assert_eq!(
                cuspidal_guarantee(27, r).unwrap().tag,
                GuaranteeTag::OddPrimePower
            );
        }
        assert_eq!(cuspidal_guarantee(33, 15).unwrap().tag, GuaranteeTag::MdrAtMostR0);
        assert!(cuspidal_guarantee(35, 18).is_err());
        assert_eq!(cuspidal_guarantee(12, 3).unwrap().tag, GuaranteeTag::EvenDegree);
        for &(d, r) in &CUSPIDAL_EXCEPTIONS {
            assert!(!cuspidal_guarantee(d, r).unwrap().guaranteed, "({d},{r})");
        }
    }
}
