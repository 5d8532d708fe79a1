use num_bigint::BigInt;
use num_traits::Zero;

use super::modular::{ModMatrix, PrimeField};

/// Sparse integer vector: sorted `(index, value)` pairs with nonzero values.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntVec {
    pub len: usize,
    pub entries: Vec<(usize, BigInt)>,
}

impl IntVec {
    pub fn from_dense(v: &[BigInt]) -> Self {
        IntVec {
            len: v.len(),
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.len];
        for (i, x) in &self.entries {
            out[*i] = x.clone();
        }
        out
    }

    pub fn reduce(&self, f: &PrimeField) -> Vec<u32> {
        let mut out = vec![0u32; self.len];
        for (i, x) in &self.entries {
            out[*i] = f.from_bigint(x) as u32;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

/// An integer matrix that can be reduced modulo primes and applied exactly.
pub trait IntLinearMap: Sync {
    fn nrows(&self) -> usize;
    fn ncols(&self) -> usize;
    /// Dense reduction modulo the field's prime.
    fn reduce_mod(&self, f: &PrimeField) -> ModMatrix;
    /// Exact product `M v`.
    fn apply(&self, v: &[BigInt]) -> Vec<BigInt>;

    fn annihilates(&self, v: &[BigInt]) -> bool {
        self.apply(v).iter().all(Zero::is_zero)
    }
}

/// Column-sparse integer matrix.
#[derive(Clone, Debug, Default)]
pub struct SparseIntMatrix {
    nrows: usize,
    columns: Vec<IntVec>,
}

impl SparseIntMatrix {
    pub fn new(nrows: usize) -> Self {
        SparseIntMatrix {
            nrows,
            columns: Vec::new(),
        }
    }

    pub fn from_columns(nrows: usize, columns: Vec<IntVec>) -> Self {
        debug_assert!(columns.iter().all(|c| c.len == nrows));
        SparseIntMatrix { nrows, columns }
    }

    pub fn push_column(&mut self, col: IntVec) {
        debug_assert_eq!(col.len, self.nrows);
        self.columns.push(col);
    }

    pub fn columns(&self) -> &[IntVec] {
        &self.columns
    }

    pub fn transpose(&self) -> SparseIntMatrix {
        let mut cols: Vec<IntVec> = (0..self.nrows)
            .map(|_| IntVec {
                len: self.columns.len(),
                entries: Vec::new(),
            })
            .collect();
        for (j, col) in self.columns.iter().enumerate() {
            for (i, x) in &col.entries {
                cols[*i].entries.push((j, x.clone()));
            }
        }
        SparseIntMatrix {
            nrows: self.columns.len(),
            columns: cols,
        }
    }
}

impl IntLinearMap for SparseIntMatrix {
    fn nrows(&self) -> usize {
        self.nrows
    }

    fn ncols(&self) -> usize {
        self.columns.len()
    }

    fn reduce_mod(&self, f: &PrimeField) -> ModMatrix {
        let nc = self.columns.len();
        let mut m = ModMatrix::zeros(self.nrows, nc);
        for (j, col) in self.columns.iter().enumerate() {
            for (i, x) in &col.entries {
                m.data[i * nc + j] = f.from_bigint(x) as u32;
            }
        }
        m
    }

    fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.columns.len());
        let mut out = vec![BigInt::zero(); self.nrows];
        for (col, x) in self.columns.iter().zip(v) {
            if x.is_zero() {
                continue;
            }
            for (i, a) in &col.entries {
                out[*i] += a * x;
            }
        }
        out
    }
}
