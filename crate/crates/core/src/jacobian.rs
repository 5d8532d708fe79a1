//! The Jacobian ideal `J = (f_x, f_y, f_z)`, its saturation `I` and the
//! graded invariants built from them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded::{ModuleElement, Multiples};
use crate::linalg::{
    complete_kernel, IntLinearMap, ModMatrix, PrimeField, PrimeStream, SparseIntMatrix, Subspace,
};
use crate::poly::{dim_s, graded_basis, HomogeneousPoly, Monomial};

pub(crate) const ONE_BLOCK: [u32; 1] = [0];
pub(crate) const THREE_BLOCKS: [u32; 3] = [0, 0, 0];

/// A curve together with its gradient, ready for degree-wise linear algebra.
#[derive(Clone, Debug)]
pub struct Jacobian {
    f: HomogeneousPoly,
    degree: u32,
    partials: [HomogeneousPoly; 3],
    gradient: Vec<ModuleElement>,
    koszul: Vec<ModuleElement>,
}

impl Jacobian {
    /// Accepts nonzero forms of degree at least 2. The polynomial is scaled to
    /// primitive integer coefficients, which changes none of the invariants.
    pub fn new(f: &HomogeneousPoly) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::InvalidInput("the zero polynomial is not a curve".into()));
        }
        if f.degree() < 2 {
            return Err(Error::DegreeTooSmall(f.degree()));
        }
        let f = f.primitive();
        let partials = f.partials()?;
        let gradient = partials
            .iter()
            .map(|p| ModuleElement::from_polys(std::slice::from_ref(p)))
            .collect();
        let [fx, fy, fz] = &partials;
        let zero = HomogeneousPoly::zero(f.degree() - 1);
        let neg = |p: &HomogeneousPoly| p.scale(&-BigRational::one());
        let koszul = vec![
            ModuleElement::from_polys(&[fy.clone(), neg(fx), zero.clone()]),
            ModuleElement::from_polys(&[fz.clone(), zero.clone(), neg(fx)]),
            ModuleElement::from_polys(&[zero, fz.clone(), neg(fy)]),
        ];
        Ok(Jacobian {
            degree: f.degree(),
            f,
            partials,
            gradient,
            koszul,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// The curve with primitive integer coefficients.
    pub fn poly(&self) -> &HomogeneousPoly {
        &self.f
    }

    pub fn partials(&self) -> &[HomogeneousPoly; 3] {
        &self.partials
    }

    /// `T = 3(d - 2)`.
    pub fn t(&self) -> usize {
        3 * (self.degree as usize - 2)
    }

    /// Columns spanning `J_k` inside `S_k`.
    pub fn ideal_piece(&self, k: u32) -> Multiples<'_> {
        Multiples::new(&ONE_BLOCK, &self.gradient, k)
    }

    /// `S_k^3 -> S_(k+d-1)`, `(a, b, c) -> a f_x + b f_y + c f_z`.
    pub fn gradient_map(&self, k: u32) -> Multiples<'_> {
        self.ideal_piece(k + self.degree - 1)
    }

    /// Columns spanning the Koszul relations `KR_k` inside `S_k^3`.
    pub fn koszul_map(&self, k: u32) -> Multiples<'_> {
        Multiples::new(&THREE_BLOCKS, &self.koszul, k)
    }
}

/// `dim M(f)_k` for a smooth curve of degree `d`: the coefficient of `t^k` in
/// `((1 - t^(d-1)) / (1 - t))^3`.
pub fn smooth_reference_hilbert(d: u32, k: u32) -> usize {
    let (d, k) = (i64::from(d), i64::from(k));
    let binom3 = [1i64, 3, 3, 1];
    let total: i64 = (0..4)
        .map(|i| {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            sign * binom3[i as usize] * dim_s(k - i * (d - 1)) as i64
        })
        .sum();
    total as usize
}

/// `dim M(f)_k`, computed on its own (exact).
pub fn milnor_hilbert(f: &HomogeneousPoly, k: u32, seed: u64) -> Result<usize> {
    let jac = Jacobian::new(f)?;
    let piece = jac.ideal_piece(k);
    let kc = complete_kernel(
        &piece,
        &SparseIntMatrix::new(piece.ncols()),
        &mut PrimeStream::new(seed),
    )?;
    Ok(dim_s(k.into()) - kc.rank)
}

/// A line on which the restriction of the curve is squarefree; this proves
/// the curve is reduced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedCertificate {
    /// Two points spanning the line.
    pub line_through: [[i64; 3]; 2],
    /// Lines tried before this one.
    pub attempts: usize,
}

const REDUCED_TRIALS: usize = 20;

/// Certifies reducedness by finding a line with squarefree restriction.
/// Rejection after many random lines is overwhelming evidence, not a proof.
pub fn check_reduced(f: &HomogeneousPoly, seed: u64) -> Result<ReducedCertificate> {
    if f.is_zero() {
        return Err(Error::InvalidInput("the zero polynomial is not a curve".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7265_6475_6365_6421);
    for attempt in 0..REDUCED_TRIALS {
        let bound = 5i64 << attempt.min(20);
        let mut pick = || -> [i64; 3] { std::array::from_fn(|_| rng.gen_range(-bound..=bound)) };
        let (p, q) = (pick(), pick());
        let pb = p.map(BigInt::from);
        let qb = q.map(BigInt::from);
        let r = f.restrict_to_line(&pb, &qb);
        if r.is_squarefree() {
            return Ok(ReducedCertificate {
                line_through: [p, q],
                attempts: attempt,
            });
        }
    }
    Err(Error::NotReduced(format!(
        "the restriction to each of {REDUCED_TRIALS} random lines has a repeated factor \
         (rejection is probabilistic; acceptance would have been a proof)"
    )))
}

/// The map `S_k -> Q^(3 tau)`, `g -> (λ_i(v^N g))` for the functionals `λ_i`
/// cutting out `J_(T+1)` and `v = x, y, z`, `N = T + 1 - k`. Its kernel is
/// the saturation `I_k`.
struct SaturationMap<'a> {
    lambda: &'a [Vec<BigInt>],
    k: u32,
    n: u32,
}

impl SaturationMap<'_> {
    fn index(&self, v: usize, alpha: &Monomial) -> usize {
        let mut e = alpha.exponents();
        e[v] += self.n;
        Monomial::from_exponents(e).index()
    }
}

impl IntLinearMap for SaturationMap<'_> {
    fn nrows(&self) -> usize {
        3 * self.lambda.len()
    }

    fn ncols(&self) -> usize {
        dim_s(self.k.into())
    }

    fn reduce_mod(&self, f: &PrimeField) -> ModMatrix {
        let basis = graded_basis(self.k);
        let mut m = ModMatrix::zeros(self.nrows(), basis.len());
        for (i, l) in self.lambda.iter().enumerate() {
            for v in 0..3 {
                for (j, alpha) in basis.iter().enumerate() {
                    m.set(3 * i + v, j, f.from_bigint(&l[self.index(v, alpha)]));
                }
            }
        }
        m
    }

    fn apply(&self, g: &[BigInt]) -> Vec<BigInt> {
        let basis = graded_basis(self.k);
        let mut out = Vec::with_capacity(self.nrows());
        for l in self.lambda {
            for v in 0..3 {
                out.push(
                    basis
                        .iter()
                        .zip(g)
                        .map(|(alpha, c)| &l[self.index(v, alpha)] * c)
                        .sum(),
                );
            }
        }
        out
    }
}

/// Per-degree data of the saturation `I` of the Jacobian ideal.
#[derive(Clone, Debug)]
pub struct SaturationData {
    pub tau: usize,
    /// Exact functionals on `S_(T+1)` whose common kernel is `J_(T+1)`.
    pub lambda: Vec<Vec<BigInt>>,
    /// `dim I_k` for `k = 0..=T+1`.
    pub dims: Vec<usize>,
    /// `dim J_k` for `k = 0..=T+1`.
    pub ideal_dims: Vec<usize>,
}

impl SaturationData {
    /// `dim (S/I)_k`.
    pub fn quotient_dim(&self, k: usize) -> usize {
        dim_s(k as i64) - self.dims[k]
    }
}

/// Computes `dim I_k` for `0 <= k <= T+1` from the Hilbert function of
/// `M(f)` (`milnor[k]` for `k` up to at least `T+1`).
///
/// The functionals are lifted exactly. For each degree the modular rank
/// bounds `dim I_k` from above, while `J_k ⊆ I_k` and `dim (S/I)_k <= τ`
/// bound it from below; exact elements of `I_k` are lifted only when the two
/// bounds differ.
pub fn saturation(jac: &Jacobian, milnor: &[usize], primes: &mut PrimeStream) -> Result<SaturationData> {
    let t = jac.t();
    let top = t + 1;
    let tau = milnor[top];
    let ideal_dims: Vec<usize> = (0..=top).map(|k| dim_s(k as i64) - milnor[k]).collect();
    if tau == 0 {
        return Ok(SaturationData {
            tau,
            lambda: Vec::new(),
            dims: (0..=top).map(|k| dim_s(k as i64)).collect(),
            ideal_dims,
        });
    }
    let jt = jac.ideal_piece(top as u32).to_sparse().transpose();
    let kc = complete_kernel(&jt, &SparseIntMatrix::new(jt.ncols()), primes)?;
    if kc.kernel_dim != tau {
        return Err(Error::hard(
            "saturation functionals",
            format!("expected {tau} functionals on S_{top}, found {}", kc.kernel_dim),
        ));
    }
    let lambda = kc.new_vectors;
    let mut dims = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let s = dim_s(k as i64);
        let lower = ideal_dims[k].max(s.saturating_sub(tau));
        let map = SaturationMap {
            lambda: &lambda,
            k: k as u32,
            n: (top - k) as u32,
        };
        let f = primes.next_field();
        let upper = s - map.reduce_mod(&f).rank(&f);
        if upper == lower {
            dims.push(upper);
            continue;
        }
        dims.push(saturated_dim_exact(jac, &map, ideal_dims[k], primes)?.0);
    }
    Ok(SaturationData {
        tau,
        lambda,
        dims,
        ideal_dims,
    })
}

fn saturated_dim_exact(
    jac: &Jacobian,
    map: &SaturationMap<'_>,
    ideal_dim: usize,
    primes: &mut PrimeStream,
) -> Result<(usize, Vec<Vec<BigInt>>)> {
    let known = jac.ideal_piece(map.k);
    for _ in 0..4 {
        let kc = complete_kernel(map, &known, primes)?;
        if kc.known_independent.len() == ideal_dim {
            return Ok((kc.kernel_dim, kc.new_vectors));
        }
    }
    Err(Error::Certification(format!(
        "could not separate J_{} from its saturation",
        map.k
    )))
}

/// Exact basis of `I_k`: a basis of `J_k` followed by lifted elements of
/// `I_k` completing it.
pub fn saturated_piece(
    jac: &Jacobian,
    sat: &SaturationData,
    k: usize,
    primes: &mut PrimeStream,
) -> Result<Subspace> {
    let top = jac.t() + 1;
    if k > top {
        return Err(Error::InvalidInput(format!(
            "saturated pieces are computed up to degree T+1 = {top}; I_k = J_k beyond"
        )));
    }
    let s = dim_s(k as i64);
    let to_q = |v: &[BigInt]| -> Vec<BigRational> {
        v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
    };
    if sat.tau == 0 {
        let basis = (0..s)
            .map(|i| (0..s).map(|j| BigRational::from_integer(BigInt::from(u8::from(i == j)))).collect())
            .collect();
        return Ok(Subspace { ambient_dim: s, basis });
    }
    let map = SaturationMap {
        lambda: &sat.lambda,
        k: k as u32,
        n: (top - k) as u32,
    };
    let (dim, extras) = saturated_dim_exact(jac, &map, sat.ideal_dims[k], primes)?;
    let known = jac.ideal_piece(k as u32).to_sparse();
    let mut vectors: Vec<Vec<BigRational>> =
        known.columns().iter().map(|c| to_q(&c.to_dense())).collect();
    vectors.extend(extras.iter().map(|v| to_q(v)));
    let space = Subspace::spanned_by(s, &vectors);
    if space.dim() != dim {
        return Err(Error::hard(
            "saturated piece",
            format!("basis of I_{k} has dimension {} instead of {dim}", space.dim()),
        ));
    }
    Ok(space)
}

/// `n(f)_k = dim I_k - dim J_k` for `0 <= k <= T`, with `ν` and `σ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobianModuleTable {
    pub n_values: Vec<usize>,
    pub nu: usize,
    /// Least `k` with `n(f)_k ≠ 0`; `None` when `N(f) = 0`.
    pub sigma: Option<usize>,
}

pub fn jacobian_module_table(sat: &SaturationData, t: usize) -> JacobianModuleTable {
    let n_values: Vec<usize> = (0..=t).map(|k| sat.dims[k] - sat.ideal_dims[k]).collect();
    let nu = n_values.iter().copied().max().unwrap_or(0);
    let sigma = n_values.iter().position(|&n| n != 0);
    JacobianModuleTable { n_values, nu, sigma }
}

/// `τ` as the first repeated value of `dim (S/I)_k`, checking that the
/// sequence rises strictly until then.
pub fn tau_from_saturation(sat: &SaturationData) -> Result<usize> {
    let q: Vec<usize> = (0..sat.dims.len()).map(|k| sat.quotient_dim(k)).collect();
    for k in 0..q.len().saturating_sub(1) {
        if q[k + 1] < q[k] {
            return Err(Error::hard(
                "saturation Hilbert function",
                format!("dim (S/I)_k drops from {} to {} at k = {}", q[k], q[k + 1], k + 1),
            ));
        }
        if q[k + 1] == q[k] {
            if q[k..].iter().any(|&v| v != q[k]) {
                return Err(Error::hard(
                    "saturation Hilbert function",
                    format!("dim (S/I)_k repeats at k = {k} before it stabilizes"),
                ));
            }
            return Ok(q[k]);
        }
    }
    Err(Error::hard(
        "saturation Hilbert function",
        "dim (S/I)_k did not stabilize by degree T+1",
    ))
}

/// Coincidence and stability thresholds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thresholds {
    /// `None` stands for infinity (smooth curves).
    pub ct: Option<usize>,
    pub st: usize,
    pub tau: usize,
}

/// `ct` and `st` from `dim M(f)_k`, given for `k = 0..=K` with `K >= T+1` and
/// constant equal to `τ` from `T+1` on.
pub fn thresholds(d: u32, milnor: &[usize], tau: usize) -> Thresholds {
    let ct = match (0..milnor.len()).find(|&k| milnor[k] != smooth_reference_hilbert(d, k as u32)) {
        Some(0) => Some(0),
        Some(k) => Some(k - 1),
        None => None,
    };
    let mut st = milnor.len();
    while st > 0 && milnor[st - 1] == tau {
        st -= 1;
    }
    Thresholds { ct, st, tau }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    #[test]
    fn smooth_reference_values() {
        let d3: Vec<usize> = (0..6).map(|k| smooth_reference_hilbert(3, k)).collect();
        assert_eq!(d3, vec![1, 3, 3, 1, 0, 0]);
        for d in 2..9 {
            assert_eq!(smooth_reference_hilbert(d, 0), 1);
            let total: usize = (0..3 * d).map(|k| smooth_reference_hilbert(d, k)).sum();
            assert_eq!(total, ((d - 1) as usize).pow(3));
        }
    }

    #[test]
    fn milnor_of_xyz_and_fermat() {
        let xyz = parse_poly("x*y*z").unwrap();
        let v: Vec<usize> = (0..5).map(|k| milnor_hilbert(&xyz, k, 1).unwrap()).collect();
        assert_eq!(v, vec![1, 3, 3, 3, 3]);
        let fermat = parse_poly("x^3+y^3+z^3").unwrap();
        let w: Vec<usize> = (0..6).map(|k| milnor_hilbert(&fermat, k, 1).unwrap()).collect();
        assert_eq!(w, vec![1, 3, 3, 1, 0, 0]);
    }

    #[test]
    fn reducedness() {
        assert!(check_reduced(&parse_poly("x*y*z").unwrap(), 0).is_ok());
        assert!(matches!(
            check_reduced(&parse_poly("x^2*y").unwrap(), 0),
            Err(Error::NotReduced(_))
        ));
        assert!(check_reduced(&parse_poly("(x+y+z)^2*(x-y)").unwrap(), 0).is_err());
    }

    #[test]
    fn thresholds_of_xyz() {
        // dim M(f)_k = 1, 3, 3, 3, ... ; tau = 3, T = 3.
        let th = thresholds(3, &[1, 3, 3, 3, 3, 3], 3);
        assert_eq!(th.ct, Some(2));
        assert_eq!(th.st, 1);
    }

    #[test]
    fn thresholds_of_smooth_cubic() {
        let th = thresholds(3, &[1, 3, 3, 1, 0, 0], 0);
        assert_eq!(th.ct, None);
        assert_eq!(th.st, 4);
    }
}
