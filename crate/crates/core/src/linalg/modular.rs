//! Linear algebra over word-size prime fields.
//!
//! Every rank computed here is a lower bound for the rank of the integer
//! matrix it was reduced from, which is how the callers use it.

use std::collections::HashSet;

use num_bigint::{BigInt, Sign};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The field `Z/p` for a prime `p < 2^31`.
#[derive(Clone, Copy, Debug)]
pub struct PrimeField {
    p: u64,
    /// floor(2^64 / p), for Barrett reduction.
    m: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        assert!(p > 2 && p < (1 << 31), "prime out of range");
        PrimeField {
            p,
            m: (u128::from(u64::MAX) / u128::from(p)) as u64,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduces `x < 2^63`.
    #[inline(always)]
    pub fn reduce(&self, x: u64) -> u64 {
        let q = ((u128::from(x) * u128::from(self.m)) >> 64) as u64;
        let mut r = x - q * self.p;
        if r >= self.p {
            r -= self.p;
        }
        r
    }

    #[inline(always)]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a * b)
    }

    #[inline(always)]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline(always)]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero");
        self.pow(a, self.p - 2)
    }

    pub fn from_bigint(&self, x: &BigInt) -> u64 {
        let r = (x.magnitude() % self.p).to_u64().expect("residue fits");
        if x.sign() == Sign::Minus {
            self.neg(r)
        } else {
            r
        }
    }

    pub fn from_i64(&self, x: i64) -> u64 {
        let r = x.unsigned_abs() % self.p;
        if x < 0 {
            self.neg(r)
        } else {
            r
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((u128::from(a) * u128::from(b)) % u128::from(n)) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A reproducible stream of distinct random primes in `[2^30, 2^31)`.
#[derive(Clone, Debug)]
pub struct PrimeStream {
    rng: ChaCha8Rng,
    used: HashSet<u64>,
}

impl PrimeStream {
    pub fn new(seed: u64) -> Self {
        PrimeStream {
            rng: ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_f00d_cafe),
            used: HashSet::new(),
        }
    }

    pub fn next_prime(&mut self) -> u64 {
        loop {
            let candidate = self.rng.gen_range((1u64 << 30)..(1u64 << 31)) | 1;
            if is_prime(candidate) && self.used.insert(candidate) {
                return candidate;
            }
        }
    }

    pub fn next_field(&mut self) -> PrimeField {
        PrimeField::new(self.next_prime())
    }
}

/// Dense row-major matrix over a prime field.
#[derive(Clone, Debug)]
pub struct ModMatrix {
    pub nrows: usize,
    pub ncols: usize,
    pub data: Vec<u32>,
}

impl ModMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        ModMatrix {
            nrows,
            ncols,
            data: vec![0; nrows * ncols],
        }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        u64::from(self.data[r * self.ncols + c])
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.ncols + c] = v as u32;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.ncols..(r + 1) * self.ncols]
    }

    /// In-place Gauss-Jordan elimination. Afterwards the first `rank` rows
    /// hold the reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self, f: &PrimeField) -> Vec<usize> {
        self.eliminate(f, true)
    }

    /// Rank via forward elimination only.
    pub fn rank(&mut self, f: &PrimeField) -> usize {
        self.eliminate(f, false).len()
    }

    fn eliminate(&mut self, f: &PrimeField, reduce_above: bool) -> Vec<usize> {
        let (nr, nc) = (self.nrows, self.ncols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..nc {
            if r == nr {
                break;
            }
            let Some(p) = (r..nr).find(|&i| self.data[i * nc + c] != 0) else {
                continue;
            };
            if p != r {
                for j in c..nc {
                    self.data.swap(p * nc + j, r * nc + j);
                }
            }
            let inv = f.inv(u64::from(self.data[r * nc + c]));
            {
                let row = &mut self.data[r * nc..(r + 1) * nc];
                for x in row[c..].iter_mut() {
                    if *x != 0 {
                        *x = f.mul(u64::from(*x), inv) as u32;
                    }
                }
            }
            let (start, end) = if reduce_above { (0, nr) } else { (r + 1, nr) };
            let (before, rest) = self.data.split_at_mut(r * nc);
            let (pivot_row, after) = rest.split_at_mut(nc);
            let pivot_tail = &pivot_row[c..];
            let nz: Vec<usize> = pivot_tail
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(j, _)| j)
                .collect();
            let dense = nz.len() * 4 > pivot_tail.len();
            let update = |row: &mut [u32]| {
                let lead = u64::from(row[c]);
                if lead == 0 {
                    return;
                }
                let factor = f.neg(lead);
                let tail = &mut row[c..];
                if dense {
                    for (x, &y) in tail.iter_mut().zip(pivot_tail) {
                        *x = f.reduce(u64::from(*x) + factor * u64::from(y)) as u32;
                    }
                } else {
                    for &j in &nz {
                        tail[j] =
                            f.reduce(u64::from(tail[j]) + factor * u64::from(pivot_tail[j])) as u32;
                    }
                }
            };
            if start < r {
                for row in before.chunks_mut(nc).skip(start) {
                    update(row);
                }
            }
            for row in after.chunks_mut(nc).take(end.saturating_sub(r + 1)) {
                update(row);
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }
}

/// Incrementally built echelon basis of a subspace of `F_p^n`.
#[derive(Clone, Debug)]
pub struct IncrementalBasis {
    field: PrimeField,
    n: usize,
    rows: Vec<(usize, Vec<u32>)>,
}

impl IncrementalBasis {
    pub fn new(n: usize, field: PrimeField) -> Self {
        IncrementalBasis {
            field,
            n,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` if it is independent of the current basis; returns whether it was.
    pub fn insert(&mut self, mut v: Vec<u32>) -> bool {
        debug_assert_eq!(v.len(), self.n);
        let f = self.field;
        for (pc, row) in &self.rows {
            let lead = u64::from(v[*pc]);
            if lead == 0 {
                continue;
            }
            let factor = f.neg(lead);
            for j in *pc..self.n {
                let y = row[j];
                if y != 0 {
                    v[j] = f.reduce(u64::from(v[j]) + factor * u64::from(y)) as u32;
                }
            }
        }
        let Some(pc) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(u64::from(v[pc]));
        for x in v[pc..].iter_mut() {
            if *x != 0 {
                *x = f.mul(u64::from(*x), inv) as u32;
            }
        }
        self.rows.push((pc, v));
        true
    }
}
