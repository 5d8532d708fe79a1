//! Named curves and families with expected invariants.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::analysis::{analyze, Analysis, AnalysisOptions};
use crate::arrangement::{add_line, AddLineMode, LineArrangement};
use crate::classify::CurveClass;
use crate::error::{Error, Result};
use crate::geometry::{is_modular_point, local_milnor_tjurina, supersolvable_check, ProjPoint};
use crate::jacobian::smooth_reference_hilbert;
use crate::parse::parse_poly;
use crate::poly::HomogeneousPoly;

/// Largest degree a family generator accepts.
pub const MAX_FAMILY_DEGREE: u32 = 16;

/// Default degree cap for [`verify_all`].
pub const DEFAULT_MAX_DEGREE: u32 = 10;

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    /// Stated in the literature for this curve.
    Published,
    /// Worked out by hand from a closed formula; the entry notes say how.
    Derived,
    /// Recorded from a first run and kept as a regression value.
    Recorded,
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "invariant", content = "value", rename_all = "snake_case")]
pub enum Expect {
    Tau(usize),
    Mdr(u32),
    Exponents(Vec<u32>),
    RelationCount(usize),
    Nu(usize),
    Ct(Option<usize>),
    St(usize),
    CtPlusSt(usize),
    Class(CurveClass),
    /// Free or plus-one generated.
    FreeOrPlusOne,
    IsFree,
    Maximizing,
    MaximalTjurina,
    ModularPoint(String),
    HasModularPoint,
    /// `μ = τ = 1` at each point.
    NodesAt(Vec<String>),
    NotQuasiHomogeneousAt(String),
    /// `(k, t_k)` pairs of an arrangement.
    PointCounts(Vec<(usize, usize)>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectation {
    #[serde(flatten)]
    pub expect: Expect,
    pub source: Source,
    pub note: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    /// Only simple singularities; supplied, never recomputed.
    pub ade: bool,
    pub rational_cuspidal: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub params: Vec<u32>,
    pub equation: String,
    #[serde(skip)]
    pub poly: Option<HomogeneousPoly>,
    pub degree: u32,
    pub flags: Flags,
    pub arrangement: Option<LineArrangement>,
    pub modular_candidates: Vec<String>,
    pub expectations: Vec<Expectation>,
    pub notes: Vec<String>,
}

impl CatalogEntry {
    fn new(name: &str, params: &[u32], equation: String) -> Result<Self> {
        let poly = parse_poly(&equation)?;
        Ok(CatalogEntry {
            name: name.into(),
            params: params.to_vec(),
            degree: poly.degree(),
            equation,
            poly: Some(poly),
            flags: Flags::default(),
            arrangement: None,
            modular_candidates: Vec::new(),
            expectations: Vec::new(),
            notes: Vec::new(),
        })
    }

    fn from_arrangement(name: &str, arr: LineArrangement) -> Self {
        let poly = arr.product();
        let equation = (0..arr.degree())
            .map(|i| format!("({})", arr.linear_form(i)))
            .collect::<Vec<_>>()
            .join("*");
        CatalogEntry {
            name: name.into(),
            params: Vec::new(),
            degree: poly.degree(),
            equation,
            poly: Some(poly),
            flags: Flags::default(),
            arrangement: Some(arr),
            modular_candidates: Vec::new(),
            expectations: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn poly(&self) -> HomogeneousPoly {
        match &self.poly {
            Some(p) => p.clone(),
            None => parse_poly(&self.equation).expect("catalog equations parse"),
        }
    }

    pub fn label(&self) -> String {
        if self.params.is_empty() {
            self.name.clone()
        } else {
            let p: Vec<String> = self.params.iter().map(u32::to_string).collect();
            format!("{}({})", self.name, p.join(","))
        }
    }

    fn expect(mut self, expect: Expect, source: Source, note: &str) -> Self {
        self.expectations.push(Expectation {
            expect,
            source,
            note: note.into(),
        });
        self
    }

    fn note(mut self, note: &str) -> Self {
        self.notes.push(note.into());
        self
    }

    fn modular_candidate(mut self, p: &str) -> Self {
        self.modular_candidates.push(p.into());
        self
    }

    fn ade(mut self) -> Self {
        self.flags.ade = true;
        self
    }
}

/// One family or fixed curve in the catalog.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyInfo {
    pub name: &'static str,
    pub params: &'static str,
    pub summary: &'static str,
    /// Parameter choices run by [`verify_all`].
    pub verified: Vec<Vec<u32>>,
}

pub fn families() -> Vec<FamilyInfo> {
    let fixed = |name, summary| FamilyInfo {
        name,
        params: "",
        summary,
        verified: vec![vec![]],
    };
    vec![
        fixed("ziegler_a", "nine lines, six triple points on a conic"),
        fixed("ziegler_a_prime", "nine lines, same lattice, triple points off a conic"),
        fixed("ziegler_a1", "ziegler_a plus a generic line"),
        fixed("ziegler_a1_prime", "ziegler_a_prime plus a generic line"),
        fixed("ziegler_a2", "ziegler_a1 plus a line through a double point"),
        fixed("ziegler_a2_prime", "ziegler_a1_prime plus a line through the matching double point"),
        fixed("ziegler_a3", "ziegler_a2 plus a line through a double point"),
        fixed("ziegler_a3_prime", "ziegler_a2_prime plus a line through the matching double point"),
        FamilyInfo {
            name: "persson",
            params: "m >= 1",
            summary: "xy[(x^m+y^m+z^m)^2 - 4(x^m y^m + y^m z^m + z^m x^m)], free maximizing curves",
            verified: vec![vec![2], vec![3], vec![4]],
        },
        fixed("dips_degree9", "xyz((x^2+y^2+z^2)^3 - 27x^2y^2z^2), free with seven rational nodes"),
        FamilyInfo {
            name: "supersolvable_family",
            params: "m >= 1",
            summary: "yz(y^m+z^m)(x^m y^m + y^m z^m + x^m z^m)",
            verified: vec![vec![2]],
        },
        FamilyInfo {
            name: "conicline_family",
            params: "m >= 1",
            summary: "x(x^m+z^m)(x^2m + (xz+y^2)^m)",
            verified: vec![vec![1], vec![2], vec![3]],
        },
        FamilyInfo {
            name: "thom_sebastiani",
            params: "d >= 2, 1 <= m <= d",
            summary: "g(x,y) + z^d with g a binary form with m distinct factors",
            verified: vec![vec![4, 2], vec![5, 3], vec![6, 2], vec![6, 4]],
        },
        FamilyInfo {
            name: "fermat",
            params: "d >= 2",
            summary: "x^d + y^d + z^d",
            verified: vec![vec![3], vec![4], vec![5]],
        },
        fixed("triangle", "xyz"),
        FamilyInfo {
            name: "concurrent",
            params: "d >= 2",
            summary: "d lines through one point",
            verified: vec![vec![3], vec![5]],
        },
        fixed("cuspidal_cubic", "x^3 - y^2 z"),
        fixed("nodal_cubic", "y^2 z - x^3 - x^2 z"),
        FamilyInfo {
            name: "maximal_nodal",
            params: "d in {3, 4}",
            summary: "irreducible curves with (d-1)(d-2)/2 nodes",
            verified: vec![vec![3], vec![4]],
        },
        FamilyInfo {
            name: "monomial_cusp",
            params: "1 <= p < q, gcd(p, q) = 1",
            summary: "x^p z^(q-p) - y^q",
            verified: vec![vec![1, 2], vec![2, 3], vec![2, 5], vec![3, 4], vec![3, 5]],
        },
    ]
}

const ZIEGLER_A: [[i64; 3]; 9] = [
    [1, 0, 0],
    [0, 1, 0],
    [1, -1, -1],
    [1, -1, 1],
    [2, 1, -2],
    [1, 3, -3],
    [3, 2, 3],
    [1, 5, 5],
    [7, -4, -1],
];

const ZIEGLER_A_PRIME: [[i64; 3]; 9] = [
    [1, 0, 0],
    [0, 1, 0],
    [4, -5, -5],
    [1, -1, 1],
    [16, 13, -20],
    [1, 3, -3],
    [3, 2, 3],
    [1, 5, 5],
    [7, -4, -1],
];

/// Line additions that extend the Ziegler pair, with the seeds used for
/// the first and the primed arrangement.
pub const ZIEGLER_EXTENSION_STEPS: [(AddLineMode, u64, u64); 3] = [
    (AddLineMode::Generic, 10, 20),
    (AddLineMode::ThroughDoublePoint(0, 9), 11, 21),
    (AddLineMode::ThroughDoublePoint(1, 10), 12, 22),
];

/// The Ziegler arrangement (`primed` selects the second one) after `steps`
/// line additions.
pub fn ziegler_arrangement(primed: bool, steps: usize) -> Result<LineArrangement> {
    let mut arr = LineArrangement::from_i64(if primed { &ZIEGLER_A_PRIME } else { &ZIEGLER_A })?;
    for (mode, seed, seed_prime) in ZIEGLER_EXTENSION_STEPS.iter().take(steps) {
        arr = add_line(&arr, mode, if primed { *seed_prime } else { *seed })?;
    }
    Ok(arr)
}

fn params_error(name: &str, params: &[u32], expected: &str) -> Error {
    Error::InvalidInput(format!("{name}{params:?}: parameters must satisfy {expected}"))
}

fn family_degree_ok(name: &str, params: &[u32], d: u32) -> Result<()> {
    if d > MAX_FAMILY_DEGREE {
        return Err(Error::InvalidInput(format!(
            "{name}{params:?} has degree {d}, above the cap {MAX_FAMILY_DEGREE}"
        )));
    }
    Ok(())
}

fn one_param(name: &str, params: &[u32], min: u32) -> Result<u32> {
    match params {
        [m] if *m >= min => Ok(*m),
        _ => Err(params_error(name, params, &format!("a single parameter >= {min}"))),
    }
}

fn ziegler_entry(step: usize, primed: bool) -> Result<CatalogEntry> {
    let suffix = if primed { "_prime" } else { "" };
    let name = if step == 0 {
        format!("ziegler_a{suffix}")
    } else {
        format!("ziegler_a{step}{suffix}")
    };
    let arr = ziegler_arrangement(primed, step)?;
    let mut e = CatalogEntry::from_arrangement(&name, arr);
    let p = Source::Published;
    e = match (step, primed) {
        (0, false) => e
            .expect(Expect::Mdr(5), p, "mdr 5")
            .expect(Expect::Exponents(vec![5, 6, 6, 6]), p, "exponents (5,6,6,6)")
            .expect(Expect::Tau(42), p, "tau 42")
            .expect(Expect::Nu(6), p, "nu 6")
            .expect(Expect::Ct(Some(12)), p, "ct 12")
            .expect(Expect::St(14), p, "st 14")
            .expect(Expect::CtPlusSt(26), p, "ct + st = T + 5"),
        (0, true) => e
            .expect(Expect::Mdr(6), p, "mdr 6")
            .expect(Expect::Exponents(vec![6; 6]), p, "exponents (6,6,6,6,6,6)")
            .expect(Expect::Tau(42), p, "tau 42")
            .expect(Expect::Nu(6), p, "nu 6")
            .expect(Expect::Ct(Some(13)), p, "ct 13")
            .expect(Expect::St(13), p, "st 13")
            .expect(Expect::CtPlusSt(26), p, "ct + st = T + 5"),
        (1, false) => e
            .expect(Expect::Mdr(6), p, "mdr 6 after adding a generic line")
            .expect(Expect::Ct(Some(14)), p, "ct 14")
            .expect(Expect::St(16), p, "st 16"),
        (1, true) => e
            .expect(Expect::Mdr(7), p, "mdr 7 after adding a generic line")
            .expect(Expect::Ct(Some(15)), p, "ct 15")
            .expect(Expect::St(16), p, "st 16"),
        (2, false) => e.expect(Expect::Mdr(7), p, "mdr 7"),
        (2, true) => e.expect(Expect::Mdr(8), p, "mdr 8"),
        (3, false) => e.expect(Expect::Mdr(8), p, "mdr 8"),
        (3, true) => e.expect(Expect::Mdr(9), p, "mdr 9"),
        _ => unreachable!(),
    };
    let (triples, doubles) = [(6, 18), (6, 27), (7, 34), (8, 42)][step];
    let src = if step == 0 || step == 3 { p } else { Source::Derived };
    e = e.expect(
        Expect::PointCounts(vec![(2, doubles), (3, triples)]),
        src,
        "a generic line adds d nodes; a line through a node turns it into a triple point and adds d - 2 nodes",
    );
    if step > 0 {
        e = e
            .expect(
                Expect::Tau(doubles + 4 * triples),
                Source::Derived,
                "tau of a line arrangement is the sum of (n_p - 1)^2",
            )
            .note("extension lines come from recorded seeds, see ZIEGLER_EXTENSION_STEPS");
    }
    Ok(e)
}

/// Builds a catalog entry.
pub fn get(name: &str, params: &[u32]) -> Result<CatalogEntry> {
    let d = Source::Derived;
    let p = Source::Published;
    let t = Source::Trivial;
    let fixed = |e: Result<CatalogEntry>| {
        if params.is_empty() {
            e
        } else {
            Err(params_error(name, params, "no parameters"))
        }
    };
    match name {
        "ziegler_a" => fixed(ziegler_entry(0, false)),
        "ziegler_a_prime" => fixed(ziegler_entry(0, true)),
        "ziegler_a1" => fixed(ziegler_entry(1, false)),
        "ziegler_a1_prime" => fixed(ziegler_entry(1, true)),
        "ziegler_a2" => fixed(ziegler_entry(2, false)),
        "ziegler_a2_prime" => fixed(ziegler_entry(2, true)),
        "ziegler_a3" => fixed(ziegler_entry(3, false)),
        "ziegler_a3_prime" => fixed(ziegler_entry(3, true)),
        "persson" => {
            let m = one_param(name, params, 1)?;
            family_degree_ok(name, params, 2 * (m + 1))?;
            let eq = format!(
                "x*y*((x^{m}+y^{m}+z^{m})^2 - 4*(x^{m}*y^{m} + y^{m}*z^{m} + z^{m}*x^{m}))"
            );
            let (m, tau) = (m, (3 * m * (m + 1) + 1) as usize);
            Ok(CatalogEntry::new(name, params, eq)?
                .ade()
                .expect(Expect::Class(CurveClass::Free { d1: m, d2: m + 1 }), p, "free with exponents (m, m+1)")
                .expect(Expect::Tau(tau), p, "tau = 3m(m+1) + 1 for degree 2(m+1)")
                .expect(Expect::Maximizing, p, "maximizing, simple singularities"))
        }
        "dips_degree9" => fixed(Ok(CatalogEntry::new(
            name,
            params,
            "x*y*z*((x^2+y^2+z^2)^3 - 27*x^2*y^2*z^2)".into(),
        )?
        .ade()
        .expect(Expect::Tau(49), p, "tau 49")
        .expect(Expect::Class(CurveClass::Free { d1: 3, d2: 5 }), p, "free with exponents (3,5)")
        .expect(Expect::Maximizing, p, "maximizing of odd degree")
        .expect(
            Expect::NodesAt(
                ["(1:1:1)", "(1:1:-1)", "(1:-1:1)", "(1:-1:-1)", "(1:0:0)", "(0:1:0)", "(0:0:1)"]
                    .map(String::from)
                    .to_vec(),
            ),
            p,
            "seven nodes; six E7 points sit at irrational coordinates and are not checked",
        ))),
        "supersolvable_family" => {
            let m = one_param(name, params, 1)?;
            family_degree_ok(name, params, 3 * m + 2)?;
            let eq = format!("y*z*(y^{m}+z^{m})*(x^{m}*y^{m} + y^{m}*z^{m} + x^{m}*z^{m})");
            let mut e = CatalogEntry::new(name, params, eq)?
                .modular_candidate("(1:0:0)")
                .expect(Expect::IsFree, p, "free")
                .expect(Expect::HasModularPoint, p, "supersolvable")
                .expect(Expect::ModularPoint("(1:0:0)".into()), d, "every line of yz(y^m+z^m) passes through (1:0:0)");
            if m == 2 {
                e = e.expect(Expect::Exponents(vec![3, 4]), Source::Recorded, "exponents from a first run");
            }
            Ok(e)
        }
        "conicline_family" => {
            let m = one_param(name, params, 1)?;
            family_degree_ok(name, params, 3 * m + 1)?;
            let eq = format!("x*(x^{m}+z^{m})*(x^{}+(x*z+y^2)^{m})", 2 * m);
            let mut e = CatalogEntry::new(name, params, eq)?
                .modular_candidate("(0:1:0)")
                .expect(Expect::IsFree, p, "free")
                .expect(Expect::ModularPoint("(0:1:0)".into()), p, "(0:1:0) is modular");
            if m >= 2 {
                e = e.expect(Expect::NotQuasiHomogeneousAt("(0:0:1)".into()), p, "(0:0:1) is not quasi homogeneous");
            } else {
                e = e.note("for m = 1 the point (0:0:1) is an A3 singularity, hence quasi homogeneous");
            }
            Ok(e)
        }
        "thom_sebastiani" => {
            let (deg, m) = match params {
                [deg, m] if *deg >= 2 && *m >= 1 && m <= deg => (*deg, *m),
                _ => return Err(params_error(name, params, "d >= 2 and 1 <= m <= d")),
            };
            family_degree_ok(name, params, deg)?;
            let factors: Vec<String> = (0..m)
                .map(|i| {
                    let e = deg / m + u32::from(i < deg % m);
                    let l = match i {
                        0 => "x".to_string(),
                        1 => "y".to_string(),
                        _ => format!("(x+{}*y)", i - 1),
                    };
                    format!("{l}^{e}")
                })
                .collect();
            let eq = format!("{} + z^{deg}", factors.join("*"));
            let (dd, mm) = (deg as usize, m as usize);
            Ok(CatalogEntry::new(name, params, eq)?
                .expect(Expect::Tau((dd - 1) * (dd - mm)), p, "tau = (d-1)(d-m)")
                .expect(Expect::Mdr(m - 1), p, "mdr = m - 1")
                .expect(Expect::Nu(mm * mm - 2 * mm + 1), p, "nu = m(m-2) + 1")
                .expect(Expect::CtPlusSt(3 * (dd - 2) + 2 * mm - 2), p, "ct + st = T + 2m - 2")
                .note("g(x,y) is a product of x, y, x+y, x+2y, ... with multiplicities as equal as possible"))
        }
        "fermat" => {
            let n = one_param(name, params, 2)?;
            family_degree_ok(name, params, n)?;
            let nu = (0..=3 * (n - 2))
                .map(|k| smooth_reference_hilbert(n, k))
                .max()
                .unwrap_or(0);
            Ok(CatalogEntry::new(name, params, format!("x^{n} + y^{n} + z^{n}"))?
                .expect(Expect::Tau(0), t, "smooth")
                .expect(Expect::Exponents(vec![n - 1; 3]), d, "only Koszul relations")
                .expect(Expect::RelationCount(1), d, "one relation among the Koszul syzygies")
                .expect(Expect::Nu(nu), d, "for a smooth curve N(f) = M(f), nu is the middle Hilbert coefficient of (1-t^(d-1))^3/(1-t)^3"))
        }
        "triangle" => fixed(Ok(CatalogEntry::from_arrangement(
            name,
            LineArrangement::from_i64(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]])?,
        )
        .expect(Expect::Class(CurveClass::Free { d1: 1, d2: 1 }), d, "Euler derivations x d/dx, y d/dy")
        .expect(Expect::Tau(3), t, "three nodes")
        .expect(Expect::CtPlusSt(3), d, "ct + st = T for free curves")
        .expect(Expect::ModularPoint("(1:0:0)".into()), t, "every node shares a line with the others")
        .expect(Expect::ModularPoint("(0:1:0)".into()), t, "as above")
        .expect(Expect::ModularPoint("(0:0:1)".into()), t, "as above"))),
        "concurrent" => {
            let n = one_param(name, params, 2)?;
            family_degree_ok(name, params, n)?;
            let lines: Vec<[i64; 3]> = (0..n as i64).map(|k| [1, k, 0]).collect();
            let mut e = CatalogEntry::from_arrangement(name, LineArrangement::from_i64(&lines)?);
            e.params = params.to_vec();
            Ok(e
                .expect(Expect::Class(CurveClass::Free { d1: 0, d2: n - 1 }), d, "the derivation d/dz kills f")
                .expect(Expect::Tau(((n - 1) * (n - 1)) as usize), d, "one point of multiplicity d")
                .expect(Expect::ModularPoint("(0:0:1)".into()), t, "the only multiple point"))
        }
        "cuspidal_cubic" => fixed(Ok(CatalogEntry::new(name, params, "x^3 - y^2*z".into())?
            .ade()
            .expect(Expect::Class(CurveClass::NearlyFree { d1: 1, d2: 2 }), d, "exponents (1,2,2)")
            .expect(Expect::Exponents(vec![1, 2, 2]), d, "x f_x + ... Euler-type relation in degree 1")
            .expect(Expect::Tau(2), d, "one A2 cusp"))),
        "nodal_cubic" => fixed(Ok(CatalogEntry::new(name, params, "y^2*z - x^3 - x^2*z".into())?
            .ade()
            .expect(Expect::Tau(1), d, "one node at (0:0:1)")
            .expect(Expect::NodesAt(vec!["(0:0:1)".into()]), d, "y^2 - x^2 locally")
            .expect(Expect::Mdr(2), p, "maximal nodal curves have r = d - 1")
            .expect(Expect::MaximalTjurina, p, "maximal nodal curves are maximal Tjurina of type (d, d-1)"))),
        "maximal_nodal" => {
            let n = one_param(name, params, 3)?;
            let eq = match n {
                3 => "y^2*z - x^3 - x^2*z",
                4 => "x^2*y^2 + y^2*z^2 + z^2*x^2",
                _ => return Err(params_error(name, params, "d in {3, 4}")),
            };
            let nodes: &[&str] = if n == 3 { &["(0:0:1)"] } else { &["(1:0:0)", "(0:1:0)", "(0:0:1)"] };
            let g = ((n - 1) * (n - 2) / 2) as usize;
            Ok(CatalogEntry::new(name, params, eq.into())?
                .ade()
                .expect(Expect::Tau(g), p, "(d-1)(d-2)/2 nodes")
                .expect(Expect::NodesAt(nodes.iter().map(|s| s.to_string()).collect()), d, "local equations u^2 - v^2 up to units")
                .expect(Expect::Mdr(n - 1), p, "r = d - 1")
                .expect(Expect::MaximalTjurina, p, "maximal Tjurina of type (d, d-1)"))
        }
        "monomial_cusp" => {
            let (a, b) = match params {
                [a, b] if *a >= 1 && a < b && num_integer::gcd(*a, *b) == 1 => (*a, *b),
                _ => return Err(params_error(name, params, "1 <= p < q with gcd(p, q) = 1")),
            };
            family_degree_ok(name, params, b)?;
            let eq = match b - a {
                1 => format!("x^{a}*z - y^{b}"),
                e => format!("x^{a}*z^{e} - y^{b}"),
            };
            let q = b as usize;
            let mut e = CatalogEntry::new(name, params, eq)?
                .expect(Expect::FreeOrPlusOne, p, "either free or plus-one generated")
                .expect(
                    Expect::Tau((q - 1) * (q - 2)),
                    d,
                    "quasi-homogeneous germs y^q - x^p at (0:0:1) and y^q - z^(q-p) at (1:0:0), so tau = (p-1)(q-1) + (q-p-1)(q-1)",
                );
            e.flags.rational_cuspidal = true;
            Ok(e)
        }
        _ => Err(Error::InvalidInput(format!("unknown catalog entry '{name}'"))),
    }
}

/// Outcome of one expectation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectationResult {
    pub expected: Expectation,
    pub found: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntryReport {
    pub entry: String,
    pub degree: u32,
    pub results: Vec<ExpectationResult>,
    pub error: Option<String>,
    pub millis: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogReport {
    pub max_degree: u32,
    pub entries: Vec<EntryReport>,
    pub all_passed: bool,
}

fn parse_pt(s: &str) -> Result<ProjPoint> {
    crate::parse::parse_point(s)
}

fn check_one(entry: &CatalogEntry, f: &HomogeneousPoly, a: &Analysis, e: &Expect, seed: u64) -> Result<(String, bool)> {
    let cmp = |found: String, expected: String| (found.clone(), found == expected);
    Ok(match e {
        Expect::Tau(v) => cmp(a.tau.to_string(), v.to_string()),
        Expect::Mdr(v) => cmp(a.mdr().to_string(), v.to_string()),
        Expect::Exponents(v) => cmp(format!("{:?}", a.exponents()), format!("{v:?}")),
        Expect::RelationCount(v) => cmp(a.scan.relations.len().to_string(), v.to_string()),
        Expect::Nu(v) => cmp(a.nu.to_string(), v.to_string()),
        Expect::Ct(v) => cmp(format!("{:?}", a.thresholds.ct), format!("{v:?}")),
        Expect::St(v) => cmp(a.thresholds.st.to_string(), v.to_string()),
        Expect::CtPlusSt(v) => cmp(format!("{:?}", a.ct_plus_st()), format!("{:?}", Some(*v))),
        Expect::Class(c) => cmp(a.class.to_string(), c.to_string()),
        Expect::FreeOrPlusOne => (a.class.to_string(), a.class.is_free() || a.class.is_plus_one_generated()),
        Expect::IsFree => (a.class.to_string(), a.class.is_free()),
        Expect::Maximizing => (format!("{:?}", a.maximizing), a.maximizing.maximizing),
        Expect::MaximalTjurina => (format!("{:?}", a.maximal_tjurina), a.maximal_tjurina.maximal),
        Expect::ModularPoint(s) => {
            let c = is_modular_point(f, &parse_pt(s)?)?;
            (format!("modular: {}", c.modular), c.modular)
        }
        Expect::HasModularPoint => {
            let cands = entry
                .modular_candidates
                .iter()
                .map(|s| parse_pt(s))
                .collect::<Result<Vec<_>>>()?;
            let r = supersolvable_check(f, &cands, seed)?;
            (format!("modular points {:?}", r.modular_points), !r.modular_points.is_empty())
        }
        Expect::NodesAt(pts) => {
            let mut found = Vec::new();
            let mut ok = true;
            for s in pts {
                let l = local_milnor_tjurina(f, &parse_pt(s)?)?;
                ok &= l.mu == 1 && l.tau == 1;
                found.push(format!("{s}: mu {} tau {}", l.mu, l.tau));
            }
            (found.join(", "), ok)
        }
        Expect::NotQuasiHomogeneousAt(s) => {
            let l = local_milnor_tjurina(f, &parse_pt(s)?)?;
            (format!("mu {} tau {}", l.mu, l.tau), !l.quasi_homogeneous)
        }
        Expect::PointCounts(v) => {
            let arr = entry
                .arrangement
                .as_ref()
                .ok_or_else(|| Error::InvalidInput("point counts need an arrangement".into()))?;
            let t: Vec<(usize, usize)> = arr.weak_combinatorics().t.into_iter().collect();
            cmp(format!("{t:?}"), format!("{v:?}"))
        }
    })
}

/// Runs the analyzer on one entry and compares with its expectations.
pub fn verify_entry(entry: &CatalogEntry, seed: u64) -> EntryReport {
    let start = Instant::now();
    let f = entry.poly();
    let opts = AnalysisOptions {
        seed,
        ade_asserted: entry.flags.ade,
        ..Default::default()
    };
    let outcome = analyze(&f, &opts).and_then(|a| {
        entry
            .expectations
            .iter()
            .map(|e| {
                let (found, pass) = check_one(entry, &f, &a, &e.expect, seed)?;
                Ok(ExpectationResult {
                    expected: e.clone(),
                    found,
                    pass,
                })
            })
            .collect::<Result<Vec<_>>>()
    });
    let millis = start.elapsed().as_secs_f64() * 1000.0;
    match outcome {
        Ok(results) => EntryReport {
            entry: entry.label(),
            degree: entry.degree,
            passed: results.iter().all(|r| r.pass),
            results,
            error: None,
            millis,
        },
        Err(e) => EntryReport {
            entry: entry.label(),
            degree: entry.degree,
            results: Vec::new(),
            error: Some(e.to_string()),
            millis,
            passed: false,
        },
    }
}

/// All entries run by [`verify_all`] with degree at most `max_degree`.
pub fn verified_entries(max_degree: u32) -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    for fam in families() {
        for params in &fam.verified {
            let e = get(fam.name, params)?;
            if e.degree <= max_degree {
                out.push(e);
            }
        }
    }
    Ok(out)
}

pub fn verify_all(max_degree: u32, seed: u64) -> Result<CatalogReport> {
    let entries: Vec<EntryReport> = verified_entries(max_degree)?
        .iter()
        .map(|e| verify_entry(e, seed))
        .collect();
    Ok(CatalogReport {
        max_degree,
        all_passed: entries.iter().all(|e| e.passed),
        entries,
    })
}

/// Points of an entry given as text, parsed.
pub fn candidate_points(entry: &CatalogEntry) -> Result<Vec<ProjPoint>> {
    entry.modular_candidates.iter().map(|s| parse_pt(s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{format_point, point};

    #[test]
    fn equations_match_their_text() {
        let e = get("persson", &[2]).unwrap();
        assert_eq!(e.degree, 6);
        assert_eq!(get("thom_sebastiani", &[4, 2]).unwrap().equation, "x^2*y^2 + z^4");
        assert_eq!(get("monomial_cusp", &[2, 3]).unwrap().equation, "x^2*z - y^3");
        assert_eq!(get("conicline_family", &[2]).unwrap().degree, 7);
        assert_eq!(get("ziegler_a", &[]).unwrap().degree, 9);
        assert_eq!(format_point(&point(1, 0, 0).unwrap()), "(1:0:0)");
    }

    #[test]
    fn bad_parameters() {
        assert!(get("persson", &[]).is_err());
        assert!(get("persson", &[8]).is_err());
        assert!(get("monomial_cusp", &[2, 4]).is_err());
        assert!(get("triangle", &[1]).is_err());
        assert!(get("nonsense", &[]).is_err());
    }

    #[test]
    fn small_entries_verify() {
        for (name, params) in [("triangle", vec![]), ("cuspidal_cubic", vec![]), ("fermat", vec![3]), ("monomial_cusp", vec![2, 3])] {
            let r = verify_entry(&get(name, &params).unwrap(), 0);
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn every_family_has_a_verified_instance() {
        for fam in families() {
            for p in &fam.verified {
                let e = get(fam.name, p).unwrap();
                assert!(!e.expectations.is_empty(), "{}", e.label());
            }
        }
    }
}
