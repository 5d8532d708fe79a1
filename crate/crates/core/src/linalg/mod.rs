//! Exact linear algebra over the rationals.
//!
//! Two engines live here. [`DenseMatrix`] with [`rank`], [`kernel_basis`] and
//! [`in_span`] is the reference path: fraction-free (Bareiss) elimination on
//! integer-cleared rows, fine for the small matrices of local computations and
//! Sylvester determinants. The graded pieces of the Jacobian ideal are far too
//! large for that, so [`lift`] provides certified modular elimination: ranks
//! modulo word-size primes bound the rational rank from below, and exactly
//! verified kernel vectors (recovered by Chinese remaindering and rational
//! reconstruction) bound it from above.

pub(crate) mod bareiss;
pub mod lift;
pub mod modular;
pub mod sparse;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use bareiss::Echelon;
pub use lift::{complete_kernel, KernelCompletion};
pub use modular::{ModMatrix, PrimeField, PrimeStream};
pub use sparse::{IntLinearMap, IntVec, SparseIntMatrix};

/// Exact rational scalar; always kept in lowest terms with a positive denominator.
pub type RationalScalar = BigRational;

/// Row-major dense matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<RationalScalar>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            entries: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    /// Builds a matrix from row vectors. Panics if rows have different lengths.
    pub fn from_rows(rows: Vec<Vec<RationalScalar>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            entries.extend(r);
        }
        DenseMatrix {
            rows: nrows,
            cols,
            entries,
        }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &RationalScalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: RationalScalar) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[RationalScalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[RationalScalar]) -> Vec<RationalScalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Rows scaled by the lcm of their denominators, which leaves rank and
    /// kernel unchanged.
    pub(crate) fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| clear_denominators(self.row(r))).collect()
    }
}

/// Scales a rational vector to a primitive integer vector (same direction, up
/// to a positive factor). The zero vector maps to zeros.
pub fn clear_denominators(v: &[RationalScalar]) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    make_primitive(ints)
}

/// Divides out the content of an integer vector.
pub fn make_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
    v
}

/// Primitive integer vector whose first nonzero entry is positive.
pub fn normalize_sign(mut v: Vec<BigInt>) -> Vec<BigInt> {
    v = make_primitive(v);
    if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in v.iter_mut() {
            *x = -&*x;
        }
    }
    v
}

/// A linear subspace of `Q^ambient_dim` described by independent basis vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subspace {
    pub ambient_dim: usize,
    pub basis: Vec<Vec<RationalScalar>>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    /// Extracts an independent basis (reduced row echelon form) from a spanning set.
    pub fn spanned_by(ambient_dim: usize, vectors: &[Vec<RationalScalar>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient_dim);
        }
        let m = DenseMatrix::from_rows(vectors.to_vec());
        let ech = Echelon::compute(m.integer_rows(), ambient_dim);
        Subspace {
            ambient_dim,
            basis: ech.reduced_rows(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Rank over the rationals, by fraction-free elimination.
pub fn rank(m: &DenseMatrix) -> usize {
    Echelon::compute(m.integer_rows(), m.cols()).rank()
}

/// Basis of the right kernel `{v : M v = 0}`, one vector per free column with a
/// 1 in that column and 0 in the other free columns.
pub fn kernel_basis(m: &DenseMatrix) -> Subspace {
    let ech = Echelon::compute(m.integer_rows(), m.cols());
    Subspace {
        ambient_dim: m.cols(),
        basis: ech.kernel(),
    }
}

/// Whether `v` lies in the span of `w.basis`.
pub fn in_span(v: &[RationalScalar], w: &Subspace) -> bool {
    assert_eq!(v.len(), w.ambient_dim, "vector length differs from ambient dimension");
    if v.iter().all(Zero::is_zero) {
        return true;
    }
    if w.basis.is_empty() {
        return false;
    }
    let mut rows = w.basis.clone();
    let base = rank(&DenseMatrix::from_rows(rows.clone()));
    rows.push(v.to_vec());
    rank(&DenseMatrix::from_rows(rows)) == base
}

/// Determinant of a square matrix.
pub fn determinant(m: &DenseMatrix) -> RationalScalar {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    if m.rows() == 0 {
        return BigRational::one();
    }
    // Clear denominators row by row and remember the scale.
    let mut scale = BigRational::one();
    let mut rows = Vec::with_capacity(m.rows());
    for r in 0..m.rows() {
        let row = m.row(r);
        let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        scale /= BigRational::from_integer(lcm.clone());
        rows.push(row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect());
    }
    BigRational::from_integer(bareiss::determinant(rows)) * scale
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> RationalScalar {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn identity_rank_and_kernel() {
        let id = DenseMatrix::identity(3);
        assert_eq!(rank(&id), 3);
        assert_eq!(kernel_basis(&id).dim(), 0);
    }

    #[test]
    fn proportional_rows() {
        let m = DenseMatrix::from_i64_rows(&[vec![1, 2, 3], vec![2, 4, 6]]);
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn kernel_of_all_ones_row() {
        let m = DenseMatrix::from_i64_rows(&[vec![1, 1, 1]]);
        let k = kernel_basis(&m);
        assert_eq!(k.dim(), 2);
        for v in &k.basis {
            assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn rational_entries() {
        let m = DenseMatrix::from_rows(vec![
            vec![BigRational::new(1.into(), 2.into()), q(1)],
            vec![q(1), q(2)],
        ]);
        assert_eq!(rank(&m), 1);
        assert_eq!(determinant(&m), q(0));
        let n = DenseMatrix::from_rows(vec![
            vec![BigRational::new(1.into(), 2.into()), q(1)],
            vec![q(1), q(3)],
        ]);
        assert_eq!(determinant(&n), BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn span_membership() {
        let w = Subspace::spanned_by(3, &[vec![q(1), q(0), q(1)], vec![q(0), q(1), q(1)]]);
        assert_eq!(w.dim(), 2);
        assert!(in_span(&[q(2), q(3), q(5)], &w));
        assert!(in_span(&[q(0), q(0), q(0)], &w));
        assert!(!in_span(&[q(0), q(0), q(1)], &w));
        for b in &w.basis {
            assert!(in_span(b, &w));
        }
    }

    #[test]
    fn determinant_with_swaps() {
        let m = DenseMatrix::from_i64_rows(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 5]]);
        assert_eq!(determinant(&m), q(-5));
    }

    #[test]
    fn empty_shapes() {
        let m = DenseMatrix::zeros(0, 4);
        assert_eq!(rank(&m), 0);
        assert_eq!(kernel_basis(&m).dim(), 4);
        let z = DenseMatrix::zeros(3, 0);
        assert_eq!(kernel_basis(&z).dim(), 0);
    }
}
