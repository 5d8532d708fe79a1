//! The module of Jacobian syzygies `AR(f) = {(a, b, c) : a f_x + b f_y + c f_z = 0}`:
//! graded dimensions, minimal generators and relations, Koszul and essential
//! parts, defects and the generic splitting type.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded::{ModuleElement, Multiples};
use crate::jacobian::{Jacobian, SaturationData, THREE_BLOCKS};
use crate::linalg::{complete_kernel, IntLinearMap, PrimeStream};
use crate::poly::{dim_s, HomogeneousPoly};

const RETRIES: usize = 3;

/// Default scan horizon `3d - 4`.
pub fn default_horizon(d: u32) -> u32 {
    (3 * d).saturating_sub(4)
}

fn s(k: i64) -> usize {
    dim_s(k)
}

/// `Σ s_(k - a)` over a list of shifts.
fn shifted_sum(shifts: &[u32], k: u32) -> usize {
    shifts.iter().map(|&a| s(i64::from(k) - i64::from(a))).sum()
}

/// `dim AR_k` predicted by a free resolution with generator degrees `gens`
/// and relation degrees `rels`.
pub fn predicted_ar_dim(gens: &[u32], rels: &[u32], k: u32) -> usize {
    shifted_sum(gens, k) - shifted_sum(rels, k)
}

/// Result of scanning `AR(f)` degree by degree.
#[derive(Clone, Debug)]
pub struct SyzygyScan {
    pub degree: u32,
    pub horizon: u32,
    /// Minimal generators in order of degree, as elements of `S^3`.
    pub generators: Vec<ModuleElement>,
    /// Minimal relations among the generators, as elements of `⊕ S(-d_i)`.
    pub relations: Vec<ModuleElement>,
    /// `dim AR_k` for `k = 0..=horizon + 4`.
    pub ar_dims: Vec<usize>,
    /// `(k, predicted, measured)` at the four degrees past the horizon.
    pub verification: Vec<(u32, usize, usize)>,
}

impl SyzygyScan {
    pub fn exponents(&self) -> Vec<u32> {
        self.generators.iter().map(|g| g.degree).collect()
    }

    pub fn relation_degrees(&self) -> Vec<u32> {
        self.relations.iter().map(|r| r.degree).collect()
    }

    pub fn mdr(&self) -> u32 {
        self.generators[0].degree
    }

    /// `dim AR_k` for any `k`, from the certified resolution beyond the scan.
    pub fn ar_dim(&self, k: u32) -> usize {
        match self.ar_dims.get(k as usize) {
            Some(&v) => v,
            None => predicted_ar_dim(&self.exponents(), &self.relation_degrees(), k),
        }
    }

    /// `dim M(f)_k = s_k - 3 s_(k-d+1) + dim AR_(k-d+1)`.
    pub fn milnor_dim(&self, k: u32) -> usize {
        let d = self.degree;
        if k + 1 < d {
            return s(k.into());
        }
        let j = k + 1 - d;
        s(k.into()) + self.ar_dim(j) - 3 * s(j.into())
    }

    /// `dim M(f)_k` for `k = 0..=upto`.
    pub fn milnor_hilbert(&self, upto: u32) -> Vec<usize> {
        (0..=upto).map(|k| self.milnor_dim(k)).collect()
    }

    /// Generators as polynomial triples.
    pub fn generator_triples(&self) -> Vec<[HomogeneousPoly; 3]> {
        self.generators
            .iter()
            .map(|g| {
                let c = g.components(&THREE_BLOCKS);
                [c[0].clone(), c[1].clone(), c[2].clone()]
            })
            .collect()
    }
}

/// Scans `AR(f)` up to `horizon`, then verifies the resolution at
/// `horizon + 1 ..= horizon + 4`.
///
/// In each degree a single modular rank of the gradient map and of the
/// multiplication map of the known generators usually certifies that nothing
/// new appears; otherwise new relations and generators are lifted exactly
/// as kernel completions.
pub fn scan(jac: &Jacobian, horizon: u32, primes: &mut PrimeStream) -> Result<SyzygyScan> {
    let d = jac.degree();
    let mut generators: Vec<ModuleElement> = Vec::new();
    let mut relations: Vec<ModuleElement> = Vec::new();
    let mut ar_dims = Vec::new();
    let mut verification = Vec::new();
    for k in 0..=horizon + 4 {
        let gen_degrees: Vec<u32> = generators.iter().map(|g| g.degree).collect();
        let jmap = jac.gradient_map(k);
        let phi = Multiples::new(&THREE_BLOCKS, &generators, k);
        let known_rels = shifted_sum(&relations.iter().map(|r| r.degree).collect::<Vec<_>>(), k);
        let expected_rank = phi.ncols() - known_rels;
        let mut cheap = None;
        for _ in 0..if k > horizon { RETRIES } else { 1 } {
            let f = primes.next_field();
            let kdim = jmap.ncols() - jmap.reduce_mod(&f).rank(&f);
            let rphi = phi.reduce_mod(&f).rank(&f);
            if rphi == expected_rank && rphi == kdim {
                cheap = Some(kdim);
                break;
            }
        }
        if let Some(kdim) = cheap {
            ar_dims.push(kdim);
            if k > horizon {
                verification.push((k, predicted_ar_dim(&gen_degrees, &relations_degrees(&relations), k), kdim));
            }
            continue;
        }
        if k > horizon {
            return Err(Error::HorizonTooSmall {
                horizon: horizon as usize,
                detail: format!(
                    "dim AR_{k} differs from the value {} predicted by the generators and relations found so far; \
                     rerun with a larger scan horizon (--kmax)",
                    predicted_ar_dim(&gen_degrees, &relations_degrees(&relations), k)
                ),
            });
        }
        let relmap = Multiples::new(&gen_degrees, &relations, k);
        let rel_completion = certified(|p| complete_kernel(&phi, &relmap, p), relmap.ncols(), primes)?;
        let rank_phi = rel_completion.rank;
        for v in &rel_completion.new_vectors {
            relations.push(ModuleElement::from_coordinates(&gen_degrees, k, v));
        }
        let gen_completion = certified(|p| complete_kernel(&jmap, &phi, p), rank_phi, primes)?;
        for v in &gen_completion.new_vectors {
            generators.push(ModuleElement::from_coordinates(&THREE_BLOCKS, k, v));
        }
        ar_dims.push(gen_completion.kernel_dim);
    }
    if generators.len() < 2 || relations.len() + 2 != generators.len() {
        return Err(Error::hard(
            "syzygy resolution",
            format!(
                "{} generators and {} relations; a reduced curve has m generators and m - 2 relations",
                generators.len(),
                relations.len()
            ),
        ));
    }
    Ok(SyzygyScan {
        degree: d,
        horizon,
        generators,
        relations,
        ar_dims,
        verification,
    })
}

fn relations_degrees(rels: &[ModuleElement]) -> Vec<u32> {
    rels.iter().map(|r| r.degree).collect()
}

/// Runs a kernel completion until all known vectors are found independent
/// modulo the working prime.
fn certified(
    mut run: impl FnMut(&mut PrimeStream) -> Result<crate::linalg::KernelCompletion>,
    known: usize,
    primes: &mut PrimeStream,
) -> Result<crate::linalg::KernelCompletion> {
    for _ in 0..RETRIES + 1 {
        let kc = run(primes)?;
        if kc.known_independent.len() == known {
            return Ok(kc);
        }
    }
    Err(Error::Certification(
        "known syzygies stayed dependent modulo every prime tried".into(),
    ))
}

/// `dim AR_k`, exactly.
pub fn ar_dim(f: &HomogeneousPoly, k: u32, seed: u64) -> Result<usize> {
    let jac = Jacobian::new(f)?;
    let map = jac.gradient_map(k);
    let kc = complete_kernel(&map, &jac.koszul_map(k), &mut PrimeStream::new(seed))?;
    Ok(kc.kernel_dim)
}

/// Least degree of a nonzero syzygy, without computing the whole module.
pub fn mdr(f: &HomogeneousPoly, seed: u64) -> Result<u32> {
    let jac = Jacobian::new(f)?;
    let mut primes = PrimeStream::new(seed);
    for k in 0..jac.degree() {
        let map = jac.gradient_map(k);
        let fp = primes.next_field();
        if map.reduce_mod(&fp).rank(&fp) == map.ncols() {
            continue;
        }
        let kc = complete_kernel(&map, &crate::linalg::SparseIntMatrix::new(map.ncols()), &mut primes)?;
        if kc.kernel_dim > 0 {
            return Ok(k);
        }
    }
    Err(Error::hard("mdr", "no syzygy in degree d - 1, but the Koszul syzygies live there"))
}

/// Exponents, relation degrees and generators of `AR(f)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyzygyProfile {
    pub mdr: u32,
    pub exponents: Vec<u32>,
    pub relation_degrees: Vec<u32>,
    /// Generators as `[a, b, c]` in polynomial syntax.
    pub generators: Vec<[String; 3]>,
    pub scan_horizon: u32,
}

impl SyzygyProfile {
    pub fn from_scan(scan: &SyzygyScan) -> Self {
        SyzygyProfile {
            mdr: scan.mdr(),
            exponents: scan.exponents(),
            relation_degrees: scan.relation_degrees(),
            generators: scan
                .generator_triples()
                .into_iter()
                .map(|t| t.map(|p| p.to_string()))
                .collect(),
            scan_horizon: scan.horizon,
        }
    }
}

/// Shifts of the free resolution
/// `0 -> F3 -> F2 -> F1 -> F0 -> M(f) -> 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionSummary {
    pub f0: Vec<u32>,
    pub f1: Vec<u32>,
    pub f2: Vec<u32>,
    pub f3: Vec<u32>,
}

impl ResolutionSummary {
    pub fn new(d: u32, exponents: &[u32], relation_degrees: &[u32]) -> Self {
        ResolutionSummary {
            f0: vec![0],
            f1: vec![d - 1; 3],
            f2: exponents.iter().map(|e| e + d - 1).collect(),
            f3: relation_degrees.iter().map(|e| e + d - 1).collect(),
        }
    }

    /// `1 - 3 + m - (m - 2)`.
    pub fn rank_alternating_sum(&self) -> i64 {
        self.f0.len() as i64 - self.f1.len() as i64 + self.f2.len() as i64 - self.f3.len() as i64
    }

    /// `dim M(f)_k` read off the shifts.
    pub fn predicted_milnor_dim(&self, k: u32) -> usize {
        let k = i64::from(k);
        let sum = |v: &[u32]| -> i64 { v.iter().map(|&a| s(k - i64::from(a)) as i64).sum() };
        (sum(&self.f0) - sum(&self.f1) + sum(&self.f2) - sum(&self.f3)) as usize
    }
}

/// `dim KR_k = 3 s_(k-d+1) - s_(k-2d+2)`.
pub fn kr_dim_formula(d: u32, k: u32) -> usize {
    let (d, k) = (i64::from(d), i64::from(k));
    3 * s(k - d + 1) - s(k - 2 * d + 2)
}

/// `dim KR_k`, with the closed form certified by a modular rank.
pub fn kr_dim(jac: &Jacobian, k: u32, primes: &mut PrimeStream) -> Result<usize> {
    let closed = kr_dim_formula(jac.degree(), k);
    let map = jac.koszul_map(k);
    for _ in 0..RETRIES {
        let f = primes.next_field();
        if map.reduce_mod(&f).rank(&f) == closed {
            return Ok(closed);
        }
    }
    Err(Error::hard(
        "Koszul relations",
        format!("rank of KR_{k} differs from the closed form {closed}; the input is probably not reduced"),
    ))
}

/// `dim ER_k = dim AR_k - dim KR_k`.
pub fn er_dim(scan: &SyzygyScan, k: u32) -> usize {
    let ar = scan.ar_dim(k);
    let kr = kr_dim_formula(scan.degree, k);
    assert!(ar >= kr, "KR_{k} larger than AR_{k}");
    ar - kr
}

/// `defect_k` for `0 <= k <= 2d - 5`, followed by the constant `τ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectSequence {
    pub defects: Vec<usize>,
    pub tail: usize,
}

/// Defects read off the essential relations, checked against
/// `τ - dim (S/I)_k` from the saturation.
pub fn defect_sequence(scan: &SyzygyScan, sat: &SaturationData) -> Result<DefectSequence> {
    let d = scan.degree as i64;
    let top = 2 * d - 5;
    let mut defects = Vec::new();
    for k in 0..=top.max(-1) {
        let from_er = er_dim(scan, (top - k) as u32);
        let k = k as usize;
        let q = if k < sat.dims.len() {
            sat.quotient_dim(k)
        } else {
            sat.tau
        };
        let from_sat = sat.tau - q;
        if from_er != from_sat {
            return Err(Error::hard(
                "defect equality",
                format!("defect_{k}: {from_er} from essential relations, {from_sat} from the saturation"),
            ));
        }
        defects.push(from_er);
    }
    Ok(DefectSequence {
        defects,
        tail: sat.tau,
    })
}

/// The generic splitting pair `(d1, d2)` with `d1 + d2 = d - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingType {
    pub d1: u32,
    pub d2: u32,
}

pub fn splitting_type(d: u32, r: u32, tau: usize, nu: usize) -> Result<SplittingType> {
    let d1 = if 2 * r + 2 < d { r } else { (d - 1) / 2 };
    let d2 = d - 1 - d1;
    let lhs = ((d - 1) * (d - 1)) as i64 - i64::from(d1 * d2);
    if lhs != (tau + nu) as i64 {
        return Err(Error::hard(
            "splitting type",
            format!("(d-1)^2 - d1*d2 = {lhs} but tau + nu = {}", tau + nu),
        ));
    }
    Ok(SplittingType { d1, d2 })
}

#[doc(hidden)]
pub fn coordinates_satisfy(jac: &Jacobian, v: &[BigInt], k: u32) -> bool {
    jac.gradient_map(k).annihilates(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn scan_of(src: &str) -> SyzygyScan {
        let jac = Jacobian::new(&parse_poly(src).unwrap()).unwrap();
        scan(&jac, default_horizon(jac.degree()), &mut PrimeStream::new(3)).unwrap()
    }

    #[test]
    fn xyz_is_free_with_exponents_one_one() {
        let sc = scan_of("x*y*z");
        assert_eq!(sc.exponents(), vec![1, 1]);
        assert!(sc.relation_degrees().is_empty());
        assert_eq!(sc.ar_dims[1], 2);
        assert_eq!(sc.milnor_hilbert(4), vec![1, 3, 3, 3, 3]);
    }

    #[test]
    fn fermat_quartic() {
        let sc = scan_of("x^4+y^4+z^4");
        assert_eq!(sc.exponents(), vec![3, 3, 3]);
        assert_eq!(sc.relation_degrees(), vec![6]);
    }

    #[test]
    fn cuspidal_cubic_and_cone() {
        let sc = scan_of("x^3-y^2*z");
        assert_eq!(sc.exponents(), vec![1, 2, 2]);
        assert_eq!(sc.relation_degrees(), vec![3]);
        let cone = scan_of("x*y*(x+y)");
        assert_eq!(cone.exponents(), vec![0, 2]);
        assert_eq!(mdr(&parse_poly("x*y*(x+y)").unwrap(), 0).unwrap(), 0);
        assert_eq!(mdr(&parse_poly("x^3-y^2*z").unwrap(), 0).unwrap(), 1);
    }

    #[test]
    fn generators_are_syzygies() {
        let f = parse_poly("x^2*y^2+z^4").unwrap();
        let jac = Jacobian::new(&f).unwrap();
        let sc = scan(&jac, 8, &mut PrimeStream::new(1)).unwrap();
        for g in sc.generator_triples() {
            let p = jac.partials();
            let sum = g[0].mul(&p[0]).add(&g[1].mul(&p[1])).add(&g[2].mul(&p[2]));
            assert!(sum.is_zero());
        }
        assert_eq!(sc.mdr(), 1);
    }

    #[test]
    fn koszul_dims() {
        let jac = Jacobian::new(&parse_poly("x^3+y^3+z^3").unwrap()).unwrap();
        let mut p = PrimeStream::new(0);
        assert_eq!(kr_dim(&jac, 1, &mut p).unwrap(), 0);
        assert_eq!(kr_dim(&jac, 2, &mut p).unwrap(), 3);
        assert_eq!(kr_dim(&jac, 4, &mut p).unwrap(), 3 * 6 - 1);
    }

    #[test]
    fn resolution_summary_shapes() {
        let r = ResolutionSummary::new(4, &[3, 3, 3], &[6]);
        assert_eq!(r.rank_alternating_sum(), 0);
        let sc = scan_of("x^4+y^4+z^4");
        for k in 0..15 {
            assert_eq!(r.predicted_milnor_dim(k), sc.milnor_dim(k));
        }
    }

    #[test]
    fn splitting_of_ziegler_numbers() {
        assert_eq!(splitting_type(9, 5, 42, 6).unwrap(), SplittingType { d1: 4, d2: 4 });
        assert_eq!(splitting_type(3, 1, 3, 0).unwrap(), SplittingType { d1: 1, d2: 1 });
        assert!(splitting_type(9, 5, 42, 5).is_err());
    }
}
