use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Fraction-free row echelon form of an integer matrix.
///
/// Pivoting picks the entry of largest magnitude in the column, so the result
/// is deterministic given the input. After `k` pivot steps every remaining
/// entry is a `(k+1)`-minor of the input, which keeps the divisions exact.
#[derive(Clone, Debug)]
pub struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    ncols: usize,
    swaps: usize,
}

impl Echelon {
    pub fn compute(mut a: Vec<Vec<BigInt>>, ncols: usize) -> Self {
        let m = a.len();
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        let mut swaps = 0;
        for c in 0..ncols {
            if r == m {
                break;
            }
            let best = (r..m)
                .filter(|&i| !a[i][c].is_zero())
                .max_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()).then(j.cmp(&i)));
            let Some(p) = best else { continue };
            if p != r {
                a.swap(p, r);
                swaps += 1;
            }
            let (top, bottom) = a.split_at_mut(r + 1);
            let pivot_row = &top[r];
            let pv = pivot_row[c].clone();
            for row in bottom.iter_mut() {
                let factor = std::mem::take(&mut row[c]);
                for j in c + 1..ncols {
                    let v = &pv * &row[j] - &factor * &pivot_row[j];
                    row[j] = if prev.is_one() { v } else { v / &prev };
                }
            }
            prev = pv;
            pivots.push(c);
            r += 1;
        }
        a.truncate(r);
        Echelon {
            rows: a,
            pivots,
            ncols,
            swaps,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Solves the echelon system for the pivot variables given values on the
    /// free columns.
    fn back_substitute(&self, x: &mut [BigRational]) {
        for (r, &pc) in self.pivots.iter().enumerate().rev() {
            let row = &self.rows[r];
            let mut acc = BigRational::zero();
            for j in pc + 1..self.ncols {
                if !row[j].is_zero() && !x[j].is_zero() {
                    acc += BigRational::from_integer(row[j].clone()) * &x[j];
                }
            }
            x[pc] = -acc / BigRational::from_integer(row[pc].clone());
        }
    }

    /// Kernel basis indexed by free columns.
    pub fn kernel(&self) -> Vec<Vec<BigRational>> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols)
            .filter(|&j| !is_pivot[j])
            .map(|j| {
                let mut x = vec![BigRational::zero(); self.ncols];
                x[j] = BigRational::one();
                self.back_substitute(&mut x);
                x
            })
            .collect()
    }

    /// Reduced row echelon basis of the row space.
    pub fn reduced_rows(&self) -> Vec<Vec<BigRational>> {
        let r = self.rank();
        let mut out: Vec<Vec<BigRational>> = self
            .rows
            .iter()
            .zip(&self.pivots)
            .map(|(row, &pc)| {
                let pv = BigRational::from_integer(row[pc].clone());
                row.iter()
                    .map(|x| BigRational::from_integer(x.clone()) / &pv)
                    .collect()
            })
            .collect();
        for i in (0..r).rev() {
            let pc = self.pivots[i];
            for k in 0..i {
                let factor = out[k][pc].clone();
                if factor.is_zero() {
                    continue;
                }
                let (head, tail) = out.split_at_mut(i);
                for (dst, src) in head[k].iter_mut().zip(&tail[0]) {
                    if !src.is_zero() {
                        *dst -= &factor * src;
                    }
                }
            }
        }
        out
    }
}

/// Determinant of a square integer matrix.
pub fn determinant(rows: Vec<Vec<BigInt>>) -> BigInt {
    let n = rows.len();
    let ech = Echelon::compute(rows, n);
    if ech.rank() < n {
        return BigInt::zero();
    }
    let det = ech.rows[n - 1][n - 1].clone();
    if ech.swaps % 2 == 1 {
        -det
    } else {
        det
    }
}
