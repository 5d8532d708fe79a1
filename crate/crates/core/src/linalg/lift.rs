//! Certified kernels of integer matrices via modular images.
//!
//! For an integer matrix `M` with `n` columns and a family `K` of exact kernel
//! vectors already in hand, [`complete_kernel`] returns the exact rank of `M`
//! and exact kernel vectors completing `K` to a spanning set of `ker M`.
//!
//! The certificate is two-sided. Reducing modulo a prime `p` can only lose
//! rank, so `rank_p(M) <= rank_Q(M)`. Every returned vector is checked to
//! satisfy `M v = 0` exactly, and `K` together with the new vectors has rank
//! `n - rank_p(M)` modulo a prime, hence at least that over the rationals. Both
//! bounds meet, so `rank_Q(M) = rank_p(M)` and the vectors span the kernel.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::modular::{IncrementalBasis, ModMatrix, PrimeField, PrimeStream};
use super::sparse::{IntLinearMap, IntVec};
use super::{clear_denominators, normalize_sign};
use crate::error::{Error, Result};

const MAX_RESTARTS: usize = 12;
const MAX_PRIMES: usize = 20_000;

/// Result of [`complete_kernel`].
#[derive(Clone, Debug)]
pub struct KernelCompletion {
    /// Exact rank of the matrix over the rationals.
    pub rank: usize,
    /// Exact kernel dimension.
    pub kernel_dim: usize,
    /// Indices of known vectors that were independent modulo the working
    /// prime (hence independent over the rationals).
    pub known_independent: Vec<usize>,
    /// New exact kernel vectors: primitive, first nonzero entry positive.
    pub new_vectors: Vec<Vec<BigInt>>,
    /// Number of primes consumed by lifting (zero when nothing was lifted).
    pub primes_used: usize,
}

fn free_columns(pivots: &[usize], n: usize) -> Vec<usize> {
    let mut is_pivot = vec![false; n];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..n).filter(|&j| !is_pivot[j]).collect()
}

/// Kernel vector of an RREF matrix for free column `j`.
fn kernel_vector(m: &ModMatrix, pivots: &[usize], j: usize, f: &PrimeField) -> Vec<u32> {
    let mut v = vec![0u32; m.ncols];
    v[j] = 1;
    for (i, &pc) in pivots.iter().enumerate() {
        v[pc] = f.neg(m.get(i, j)) as u32;
    }
    v
}

/// Residues of the pivot entries of the chosen kernel vectors.
fn pivot_entries(m: &ModMatrix, rank: usize, chosen: &[usize], f: &PrimeField) -> Vec<Vec<u64>> {
    chosen
        .iter()
        .map(|&j| (0..rank).map(|i| f.neg(m.get(i, j))).collect())
        .collect()
}

/// Chinese-remainder accumulator for a family of residue vectors.
struct Crt {
    modulus: BigInt,
    values: Vec<Vec<BigInt>>,
    primes: usize,
}

impl Crt {
    fn new(residues: &[Vec<u64>], f: &PrimeField) -> Self {
        Crt {
            modulus: BigInt::from(f.modulus()),
            values: residues
                .iter()
                .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
            primes: 1,
        }
    }

    fn add(&mut self, residues: &[Vec<u64>], f: &PrimeField) {
        let m_mod = f.from_bigint(&self.modulus);
        let m_inv = f.inv(m_mod);
        for (vals, res) in self.values.iter_mut().zip(residues) {
            for (x, &r) in vals.iter_mut().zip(res) {
                let xm = f.from_bigint(x);
                let t = f.mul(f.add(r, f.neg(xm)), m_inv);
                if t != 0 {
                    *x += &self.modulus * BigInt::from(t);
                }
            }
        }
        self.modulus *= BigInt::from(f.modulus());
        self.primes += 1;
    }
}

/// Balanced rational reconstruction: finds `n/d` with `n = a d (mod m)`,
/// `|n|, d <= sqrt(m/2)`, if one exists.
pub fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m >> 1usize).sqrt();
    reconstruct_with_bounds(a, m, &bound, &bound)
}

fn reconstruct_with_bounds(
    a: &BigInt,
    m: &BigInt,
    num_bound: &BigInt,
    den_bound: &BigInt,
) -> Option<BigRational> {
    let a = a.mod_floor(m);
    let (mut r0, mut r1) = (m.clone(), a);
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > num_bound {
        let (q, r2) = r0.div_rem(&r1);
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || &t1.abs() > den_bound {
        return None;
    }
    if !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Reconstructs a residue vector using a running common denominator: once
/// some denominator is known, later entries usually become small integers.
fn reconstruct_vector(values: &[BigInt], m: &BigInt) -> Option<Vec<BigRational>> {
    let mut den = BigInt::one();
    let half = m >> 1usize;
    let guard_bits = 48u64;
    let mut out = Vec::with_capacity(values.len());
    for x in values {
        let b = (x * &den).mod_floor(m);
        let sym = if b > half { &b - m } else { b.clone() };
        if sym.is_zero() {
            out.push(BigRational::zero());
            continue;
        }
        if !den.is_one() && (sym.bits() + guard_bits) < m.bits() {
            out.push(BigRational::new(sym, den.clone()));
            continue;
        }
        let r = rational_reconstruction(&b, m)?;
        let d = r.denom().clone();
        out.push(BigRational::new(r.numer().clone(), &den * &d));
        den *= d;
    }
    Some(out)
}

fn consistent(candidate: &[Vec<BigRational>], residues: &[Vec<u64>], f: &PrimeField) -> bool {
    candidate.iter().zip(residues).all(|(vec, res)| {
        vec.iter().zip(res).all(|(x, &r)| {
            let d = f.from_bigint(x.denom());
            if d == 0 {
                return false;
            }
            f.mul(f.from_bigint(x.numer()), f.inv(d)) == r
        })
    })
}

fn assemble(
    candidate: &[Vec<BigRational>],
    chosen: &[usize],
    pivots: &[usize],
    n: usize,
) -> Vec<Vec<BigInt>> {
    candidate
        .iter()
        .zip(chosen)
        .map(|(vals, &j)| {
            let mut v = vec![BigRational::zero(); n];
            v[j] = BigRational::one();
            for (x, &pc) in vals.iter().zip(pivots) {
                v[pc] = x.clone();
            }
            normalize_sign(clear_denominators(&v))
        })
        .collect()
}

fn column(m: &ModMatrix, j: usize) -> Vec<u32> {
    (0..m.nrows).map(|i| m.data[i * m.ncols + j]).collect()
}

fn reduce_dense(v: &[BigInt], f: &PrimeField) -> Vec<u32> {
    v.iter().map(|x| f.from_bigint(x) as u32).collect()
}

/// Exact rank of `map` and exact kernel vectors completing `known`.
///
/// `known` must consist of exact kernel vectors; an error is returned if they
/// are found not to be.
pub fn complete_kernel<M: IntLinearMap + ?Sized, K: IntLinearMap + ?Sized>(
    map: &M,
    known: &K,
    primes: &mut PrimeStream,
) -> Result<KernelCompletion> {
    assert_eq!(known.nrows(), map.ncols(), "known vectors have the wrong length");
    let n = map.ncols();
    let mut base = primes.next_field();
    let mut base_matrix: Option<(ModMatrix, Vec<usize>)> = None;
    for _ in 0..MAX_RESTARTS {
        let (m, pivots) = match base_matrix.take() {
            Some(mp) => mp,
            None => {
                let mut m = map.reduce_mod(&base);
                let p = m.rref(&base);
                (m, p)
            }
        };
        let r = pivots.len();
        let kdim = n - r;
        let mut basis = IncrementalBasis::new(n, base);
        let mut known_independent = Vec::new();
        let known_p = known.reduce_mod(&base);
        for i in 0..known_p.ncols {
            if basis.dim() == kdim {
                break;
            }
            if basis.insert(column(&known_p, i)) {
                known_independent.push(i);
            }
        }
        drop(known_p);
        let known_basis = basis.clone();
        let mut chosen = Vec::new();
        for j in free_columns(&pivots, n) {
            if basis.dim() == kdim {
                break;
            }
            if basis.insert(kernel_vector(&m, &pivots, j, &base)) {
                chosen.push(j);
            }
        }
        if basis.dim() != kdim {
            return Err(Error::Certification(
                "modular kernel vectors do not span the kernel".into(),
            ));
        }
        if chosen.is_empty() {
            return Ok(KernelCompletion {
                rank: r,
                kernel_dim: kdim,
                known_independent,
                new_vectors: Vec::new(),
                primes_used: 0,
            });
        }

        let mut crt = Crt::new(&pivot_entries(&m, r, &chosen, &base), &base);
        drop(m);
        let mut candidate: Option<Vec<Vec<BigRational>>> = reconstruct_all(&crt);
        let mut restart = None;
        while crt.primes < MAX_PRIMES {
            let q = primes.next_field();
            let mut mq = map.reduce_mod(&q);
            let pq = mq.rref(&q);
            if pq.len() > r || (pq.len() == r && pq < pivots) {
                restart = Some((q, mq, pq));
                break;
            }
            if pq != pivots {
                continue;
            }
            let residues = pivot_entries(&mq, r, &chosen, &q);
            drop(mq);
            if let Some(c) = candidate.take() {
                if consistent(&c, &residues, &q) {
                    let vectors = assemble(&c, &chosen, &pivots, n);
                    if vectors.iter().all(|w| map.annihilates(w)) {
                        certify(map, known, &known_basis, &vectors, kdim, &base, primes)?;
                        return Ok(KernelCompletion {
                            rank: r,
                            kernel_dim: kdim,
                            known_independent,
                            new_vectors: vectors,
                            primes_used: crt.primes + 1,
                        });
                    }
                }
            }
            crt.add(&residues, &q);
            candidate = reconstruct_all(&crt);
        }
        match restart {
            Some((q, mq, pq)) => {
                base = q;
                base_matrix = Some((mq, pq));
            }
            None => {
                return Err(Error::Certification(format!(
                    "kernel lifting did not converge within {MAX_PRIMES} primes"
                )))
            }
        }
    }
    Err(Error::Certification(
        "too many unlucky primes while computing a kernel".into(),
    ))
}

fn reconstruct_all(crt: &Crt) -> Option<Vec<Vec<BigRational>>> {
    crt.values
        .iter()
        .map(|v| reconstruct_vector(v, &crt.modulus))
        .collect()
}

/// Checks that the known family plus the new vectors reach the modular kernel
/// dimension, falling back to a fresh prime if the working one divides a
/// denominator.
fn certify<M: IntLinearMap + ?Sized, K: IntLinearMap + ?Sized>(
    map: &M,
    known: &K,
    known_basis: &IncrementalBasis,
    vectors: &[Vec<BigInt>],
    kdim: usize,
    base: &PrimeField,
    primes: &mut PrimeStream,
) -> Result<()> {
    let mut b = known_basis.clone();
    for w in vectors {
        b.insert(reduce_dense(w, base));
    }
    if b.dim() == kdim {
        return Ok(());
    }
    for _ in 0..4 {
        let f = primes.next_field();
        let mut m = map.reduce_mod(&f);
        if m.rank(&f) != map.ncols() - kdim {
            continue;
        }
        let mut b = IncrementalBasis::new(map.ncols(), f);
        let known_p = known.reduce_mod(&f);
        for i in 0..known_p.ncols {
            b.insert(column(&known_p, i));
        }
        for w in vectors {
            b.insert(reduce_dense(w, &f));
        }
        if b.dim() == kdim {
            return Ok(());
        }
    }
    Err(Error::Certification(
        "lifted kernel vectors are dependent on the known family".into(),
    ))
}

/// Lower bound for the rank of a family of integer vectors, from one prime.
pub fn rank_lower_bound(vectors: &[IntVec], n: usize, f: &PrimeField) -> usize {
    let mut b = IncrementalBasis::new(n, *f);
    for v in vectors {
        b.insert(v.reduce(f));
    }
    b.dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::sparse::SparseIntMatrix;
    use crate::linalg::{kernel_basis, rank, DenseMatrix};

    fn none(n: usize) -> SparseIntMatrix {
        SparseIntMatrix::new(n)
    }

    fn sparse_from_rows(rows: &[Vec<i64>]) -> SparseIntMatrix {
        let nr = rows.len();
        let nc = rows[0].len();
        let cols = (0..nc)
            .map(|j| {
                IntVec::from_dense(&rows.iter().map(|r| BigInt::from(r[j])).collect::<Vec<_>>())
            })
            .collect();
        SparseIntMatrix::from_columns(nr, cols)
    }

    #[test]
    fn reconstruction_roundtrip() {
        let m = BigInt::from(1_000_000_007i64) * BigInt::from(998_244_353i64);
        let x = BigRational::new(BigInt::from(-1234), BigInt::from(577));
        let e = BigInt::from(577).extended_gcd(&m);
        let a = (BigInt::from(-1234) * e.x).mod_floor(&m);
        assert_eq!(rational_reconstruction(&a, &m), Some(x));
    }

    #[test]
    fn matches_bareiss_on_small_matrix() {
        let rows = vec![
            vec![3, 1, 4, 1, 5, 9],
            vec![2, 6, 5, 3, 5, 8],
            vec![5, 7, 9, 4, 10, 17],
            vec![1, -5, -1, -2, 0, 1],
        ];
        let sparse = sparse_from_rows(&rows);
        let dense = DenseMatrix::from_i64_rows(&rows);
        let mut primes = PrimeStream::new(1);
        let kc = complete_kernel(&sparse, &none(6), &mut primes).unwrap();
        assert_eq!(kc.rank, rank(&dense));
        assert_eq!(kc.kernel_dim, kernel_basis(&dense).dim());
        assert_eq!(kc.new_vectors.len(), kc.kernel_dim);
        for v in &kc.new_vectors {
            assert!(sparse.annihilates(v));
        }
    }

    #[test]
    fn known_vectors_reduce_lifting() {
        let rows = vec![vec![1, 1, 1, 1]];
        let sparse = sparse_from_rows(&rows);
        let known = SparseIntMatrix::from_columns(
            4,
            vec![
                IntVec::from_dense(&[1.into(), (-1).into(), 0.into(), 0.into()]),
                IntVec::from_dense(&[2.into(), (-2).into(), 0.into(), 0.into()]),
            ],
        );
        let mut primes = PrimeStream::new(2);
        let kc = complete_kernel(&sparse, &known, &mut primes).unwrap();
        assert_eq!(kc.kernel_dim, 3);
        assert_eq!(kc.known_independent, vec![0]);
        assert_eq!(kc.new_vectors.len(), 2);
    }

    #[test]
    fn large_entries_need_several_primes() {
        // Kernel vector entries are ratios of large minors.
        let rows = vec![
            vec![123_456_789, 987_654_321, 555_555_555, 1],
            vec![918_273_645, 192_837_465, 111_111_111, 7],
            vec![314_159_265, 271_828_182, 161_803_398, 13],
        ];
        let sparse = sparse_from_rows(&rows);
        let mut primes = PrimeStream::new(3);
        let kc = complete_kernel(&sparse, &none(4), &mut primes).unwrap();
        assert_eq!(kc.rank, 3);
        assert_eq!(kc.new_vectors.len(), 1);
        assert!(sparse.annihilates(&kc.new_vectors[0]));
        assert!(kc.primes_used > 2);
    }
}
