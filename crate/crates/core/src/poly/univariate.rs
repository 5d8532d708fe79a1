use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::homogeneous::fmt_rational;
use crate::error::{Error, Result};
use crate::linalg::bareiss;

/// Polynomial in one variable over the rationals, coefficients from the
/// constant term up. The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| q(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The linear polynomial `t - a`.
    pub fn root(a: BigRational) -> Self {
        Self::new(vec![-a, BigRational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut r = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    r[i + j] += a * b;
                }
            }
        }
        Self::new(r)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * q(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dl = d.leading().expect("division by the zero polynomial").clone();
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = &r[i] / &dl;
            if c.is_zero() {
                continue;
            }
            for (j, x) in d.coeffs.iter().enumerate() {
                if !x.is_zero() {
                    r[i - dd + j] -= &c * x;
                }
            }
            quot[i - dd] = c;
        }
        r.truncate(dd);
        (Self::new(quot), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Whether `d` divides `self` exactly.
    pub fn divisible_by(&self, d: &Self) -> bool {
        self.rem(d).is_zero()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.scale(&(BigRational::one() / l)),
        }
    }

    /// Primitive integer multiple (positive leading coefficient); keeps the
    /// intermediate sizes of Euclid's algorithm in check.
    fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let ints = crate::linalg::clear_denominators(&self.coeffs);
        let mut p = Self::new(ints.into_iter().map(BigRational::from_integer).collect());
        if p.leading().is_some_and(|l| l.is_negative()) {
            p = p.scale(&q(-1));
        }
        p
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.primitive(), o.primitive());
        while !b.is_zero() {
            let r = a.rem(&b).primitive();
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `q / gcd(q, q')`, monic.
    pub fn squarefree_part(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::InvalidInput("squarefree part of zero".into()));
        }
        let g = self.gcd(&self.derivative());
        Ok(self.div_rem(&g).0.monic())
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Resultant by the Sylvester determinant, with the convention
    /// `Res(a, b) = lc(a)^deg b * prod b(roots of a)`.
    pub fn resultant(&self, o: &Self) -> BigRational {
        let (Some(m), Some(n)) = (self.degree(), o.degree()) else {
            return BigRational::zero();
        };
        sylvester_det(&self.coeffs, m, &o.coeffs, n)
    }

    /// Multiplicity of `r` as a root of `self` (assumes `r` rational).
    pub fn root_multiplicity(&self, r: &BigRational) -> usize {
        let lin = Self::root(r.clone());
        let mut p = self.clone();
        let mut k = 0;
        while !p.is_zero() && p.divisible_by(&lin) {
            p = p.div_rem(&lin).0;
            k += 1;
        }
        k
    }
}

/// Determinant of the Sylvester matrix of two coefficient lists with the
/// given formal degrees (leading coefficients may vanish).
pub(crate) fn sylvester_det(a: &[BigRational], m: usize, b: &[BigRational], n: usize) -> BigRational {
    let size = m + n;
    if size == 0 {
        return BigRational::one();
    }
    let get = |v: &[BigRational], i: usize| v.get(i).cloned().unwrap_or_else(BigRational::zero);
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![BigRational::zero(); size];
        for i in 0..=m {
            row[shift + i] = get(a, m - i);
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![BigRational::zero(); size];
        for i in 0..=n {
            row[shift + i] = get(b, n - i);
        }
        rows.push(row);
    }
    let mut scale = BigRational::one();
    let int_rows: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let l = row
                .iter()
                .fold(BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
            scale /= BigRational::from_integer(l.clone());
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    BigRational::from_integer(bareiss::determinant(int_rows)) * scale
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let a = c.abs();
            let mono = match i {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{i}"),
            };
            match (mono.is_empty(), a.is_one()) {
                (true, _) => write!(f, "{}", fmt_rational(&a))?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{}*{mono}", fmt_rational(&a))?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roots(rs: &[i64]) -> UniPoly {
        rs.iter()
            .fold(UniPoly::one(), |acc, &r| acc.mul(&UniPoly::root(q(r))))
    }

    #[test]
    fn squarefree_examples() {
        let t2 = UniPoly::from_i64(&[0, 0, 1]);
        assert_eq!(t2.squarefree_part().unwrap(), UniPoly::from_i64(&[0, 1]));
        let p = roots(&[1, 2]);
        assert_eq!(p.squarefree_part().unwrap(), p);
        let r = roots(&[1, 1, 1, -5, -5]);
        assert_eq!(r.squarefree_part().unwrap(), roots(&[1, -5]));
        assert!(UniPoly::zero().squarefree_part().is_err());
    }

    #[test]
    fn squarefree_is_idempotent() {
        let r = roots(&[3, 3, 0, 7]).scale(&q(5));
        let s = r.squarefree_part().unwrap();
        assert_eq!(s.squarefree_part().unwrap(), s);
    }

    #[test]
    fn division() {
        let a = roots(&[1, 2, 3]);
        let b = roots(&[2]);
        let (quo, rem) = a.div_rem(&b);
        assert!(rem.is_zero());
        assert_eq!(quo, roots(&[1, 3]));
        assert_eq!(a.gcd(&roots(&[2, 5])), roots(&[2]));
    }

    #[test]
    fn resultant_of_linear_factors() {
        // Res(t - a, t - b) = a - b with this convention.
        let r = UniPoly::root(q(3)).resultant(&UniPoly::root(q(7)));
        assert_eq!(r, q(-4));
        // Common root gives zero.
        assert!(roots(&[1, 2]).resultant(&roots(&[2, 9])).is_zero());
    }

    #[test]
    fn multiplicity() {
        let p = roots(&[2, 2, 2, 5]);
        assert_eq!(p.root_multiplicity(&q(2)), 3);
        assert_eq!(p.root_multiplicity(&q(4)), 0);
    }
}
