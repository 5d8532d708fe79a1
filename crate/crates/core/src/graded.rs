//! Graded free modules over `S = Q[x, y, z]` and the integer matrices of
//! their multiplication maps in a fixed degree.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::linalg::{IntLinearMap, IntVec, ModMatrix, PrimeField, SparseIntMatrix};
use crate::poly::{dim_s, graded_basis, HomogeneousPoly, Monomial};

/// Homogeneous element of `⊕_b S(-shift_b)` of total degree `degree`, with
/// integer coefficients. A term `(b, m, c)` has `deg m = degree - shift_b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleElement {
    pub degree: u32,
    pub terms: Vec<(usize, Monomial, BigInt)>,
}

impl ModuleElement {
    /// Reads a coordinate vector laid out like the columns of a
    /// [`Multiples`] map with the given block shifts at this degree.
    pub fn from_coordinates(shifts: &[u32], degree: u32, v: &[BigInt]) -> Self {
        let mut terms = Vec::new();
        let mut offset = 0;
        for (b, &sh) in shifts.iter().enumerate() {
            if sh > degree {
                continue;
            }
            for (i, m) in graded_basis(degree - sh).into_iter().enumerate() {
                let c = &v[offset + i];
                if !c.is_zero() {
                    terms.push((b, m, c.clone()));
                }
            }
            offset += dim_s((degree - sh).into());
        }
        debug_assert_eq!(offset, v.len());
        ModuleElement { degree, terms }
    }

    /// Components as polynomials, one per block.
    pub fn components(&self, shifts: &[u32]) -> Vec<HomogeneousPoly> {
        let mut out: Vec<HomogeneousPoly> = shifts
            .iter()
            .map(|&s| HomogeneousPoly::zero(self.degree.saturating_sub(s)))
            .collect();
        for (b, m, c) in &self.terms {
            out[*b] = out[*b].add(&HomogeneousPoly::monomial(
                *m,
                num_rational::BigRational::from_integer(c.clone()),
            ));
        }
        out
    }

    /// Element of `S^n` (all shifts zero) from polynomials with integer
    /// coefficients.
    pub fn from_polys(polys: &[HomogeneousPoly]) -> Self {
        let degree = polys.iter().map(HomogeneousPoly::degree).max().unwrap_or(0);
        let mut terms = Vec::new();
        for (b, p) in polys.iter().enumerate() {
            for (m, c) in p.terms() {
                assert!(c.is_integer(), "integer coefficients expected");
                terms.push((b, *m, c.to_integer()));
            }
        }
        ModuleElement { degree, terms }
    }
}

/// The map `⊕_e S_(t - deg e) -> ⊕_b S_(t - shift_b)` sending `(h_e)` to
/// `Σ h_e e`, in graded monomial bases (blocks in order).
pub struct Multiples<'a> {
    shifts: &'a [u32],
    elements: &'a [ModuleElement],
    target: u32,
    col_offsets: Vec<usize>,
    row_offsets: Vec<usize>,
    nrows: usize,
    ncols: usize,
}

fn block_size(t: u32, s: u32) -> usize {
    dim_s(i64::from(t) - i64::from(s))
}

impl<'a> Multiples<'a> {
    pub fn new(shifts: &'a [u32], elements: &'a [ModuleElement], target: u32) -> Self {
        let mut row_offsets = Vec::with_capacity(shifts.len());
        let mut nrows = 0;
        for &s in shifts {
            row_offsets.push(nrows);
            nrows += block_size(target, s);
        }
        let mut col_offsets = Vec::with_capacity(elements.len());
        let mut ncols = 0;
        for e in elements {
            col_offsets.push(ncols);
            ncols += block_size(target, e.degree);
        }
        Multiples {
            shifts,
            elements,
            target,
            col_offsets,
            row_offsets,
            nrows,
            ncols,
        }
    }

    fn for_each_entry(&self, mut visit: impl FnMut(usize, usize, usize, usize)) {
        // visit(row, col, element, term)
        for (e, el) in self.elements.iter().enumerate() {
            if el.degree > self.target {
                continue;
            }
            let mult = graded_basis(self.target - el.degree);
            for (j, gamma) in mult.iter().enumerate() {
                let col = self.col_offsets[e] + j;
                for (t, (b, m, _)) in el.terms.iter().enumerate() {
                    debug_assert_eq!(m.degree() + self.shifts[*b], el.degree);
                    let row = self.row_offsets[*b] + gamma.mul(m).index();
                    visit(row, col, e, t);
                }
            }
        }
    }

    pub fn to_sparse(&self) -> SparseIntMatrix {
        let mut cols: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); self.ncols];
        self.for_each_entry(|row, col, e, t| {
            cols[col].push((row, self.elements[e].terms[t].2.clone()));
        });
        let columns = cols
            .into_iter()
            .map(|mut entries| {
                entries.sort_by_key(|(r, _)| *r);
                let mut merged: Vec<(usize, BigInt)> = Vec::with_capacity(entries.len());
                for (r, c) in entries {
                    match merged.last_mut() {
                        Some((lr, lc)) if *lr == r => *lc += c,
                        _ => merged.push((r, c)),
                    }
                }
                merged.retain(|(_, c)| !c.is_zero());
                IntVec {
                    len: self.nrows,
                    entries: merged,
                }
            })
            .collect();
        SparseIntMatrix::from_columns(self.nrows, columns)
    }

    /// Column labels: `(element index, multiplier monomial)`.
    pub fn column_label(&self, col: usize) -> (usize, Monomial) {
        let e = self.col_offsets.partition_point(|&o| o <= col) - 1;
        let m = graded_basis(self.target - self.elements[e].degree)[col - self.col_offsets[e]];
        (e, m)
    }
}

impl IntLinearMap for Multiples<'_> {
    fn nrows(&self) -> usize {
        self.nrows
    }

    fn ncols(&self) -> usize {
        self.ncols
    }

    fn reduce_mod(&self, f: &PrimeField) -> ModMatrix {
        let reduced: Vec<Vec<u64>> = self
            .elements
            .iter()
            .map(|e| e.terms.iter().map(|(_, _, c)| f.from_bigint(c)).collect())
            .collect();
        let mut m = ModMatrix::zeros(self.nrows, self.ncols);
        let nc = self.ncols;
        self.for_each_entry(|row, col, e, t| {
            let idx = row * nc + col;
            m.data[idx] = f.add(u64::from(m.data[idx]), reduced[e][t]) as u32;
        });
        m
    }

    fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.ncols);
        let mut out = vec![BigInt::zero(); self.nrows];
        self.for_each_entry(|row, col, e, t| {
            if !v[col].is_zero() {
                out[row] += &self.elements[e].terms[t].2 * &v[col];
            }
        });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::PrimeStream;
    use crate::parse::parse_poly;

    #[test]
    fn multiples_of_a_single_form() {
        let g = parse_poly("x + 2y").unwrap();
        let e = [ModuleElement::from_polys(&[g])];
        let shifts = [0u32];
        let m = Multiples::new(&shifts, &e, 3);
        assert_eq!(m.nrows(), 10);
        assert_eq!(m.ncols(), 6);
        let f = PrimeStream::new(1).next_field();
        assert_eq!(m.reduce_mod(&f).rank(&f), 6);
        let sparse = m.to_sparse();
        let v: Vec<BigInt> = (0..6).map(BigInt::from).collect();
        assert_eq!(sparse.apply(&v), m.apply(&v));
        assert_eq!(m.column_label(5), (0, Monomial::new(0, 0, 2)));
    }

    #[test]
    fn coordinates_round_trip() {
        let shifts = [1u32, 2];
        let v: Vec<BigInt> = (1..=9).map(BigInt::from).collect();
        // degree 3: block 0 has S_2 (6 entries), block 1 has S_1 (3 entries)
        let el = ModuleElement::from_coordinates(&shifts, 3, &v);
        assert_eq!(el.terms.len(), 9);
        let comps = el.components(&shifts);
        assert_eq!(comps[0].degree(), 2);
        assert_eq!(comps[1].degree(), 1);
    }
}
