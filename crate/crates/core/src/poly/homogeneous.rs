use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::binary::BinaryForm;
use super::monomial::{dim_s, graded_basis, Monomial};
use crate::error::{Error, Result};
use crate::linalg::{clear_denominators, normalize_sign};

/// A homogeneous polynomial in `x, y, z` with rational coefficients.
///
/// The zero polynomial keeps the degree it was created with.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomogeneousPoly {
    degree: u32,
    terms: BTreeMap<Monomial, BigRational>,
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

impl HomogeneousPoly {
    pub fn zero(degree: u32) -> Self {
        HomogeneousPoly {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(Monomial::ONE, c)
    }

    pub fn monomial(m: Monomial, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        HomogeneousPoly {
            degree: m.degree(),
            terms,
        }
    }

    /// `x`, `y`, `z` for `i = 0, 1, 2`.
    pub fn var(i: usize) -> Self {
        Self::monomial(Monomial::var(i), BigRational::one())
    }

    /// `a x + b y + c z`.
    pub fn linear(a: i64, b: i64, c: i64) -> Self {
        let mut f = Self::zero(1);
        for (i, v) in [a, b, c].into_iter().enumerate() {
            f.add_term(Monomial::var(i), q(v));
        }
        f
    }

    /// Builds a polynomial from terms, rejecting mixed degrees. Zero
    /// coefficients are dropped; an all-zero input needs `degree_hint`.
    pub fn from_terms(
        terms: impl IntoIterator<Item = (Monomial, BigRational)>,
        degree_hint: Option<u32>,
    ) -> Result<Self> {
        let mut map: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m, c) in terms {
            *map.entry(m).or_insert_with(BigRational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        let mut degrees: Vec<u32> = map.keys().map(Monomial::degree).collect();
        degrees.sort_unstable();
        degrees.dedup();
        match degrees.len() {
            0 => Ok(Self::zero(degree_hint.unwrap_or(0))),
            1 => Ok(HomogeneousPoly {
                degree: degrees[0],
                terms: map,
            }),
            _ => {
                let top = *degrees.last().unwrap();
                let offending = map
                    .keys()
                    .filter(|m| m.degree() != top)
                    .map(|m| format!("{m} (degree {})", m.degree()))
                    .collect::<Vec<_>>()
                    .join(", ");
                Err(Error::Inhomogeneous { degrees, offending })
            }
        }
    }

    /// Coefficients listed in [`graded_basis`] order.
    pub fn from_dense(degree: u32, coeffs: &[BigRational]) -> Self {
        let mut f = Self::zero(degree);
        for (m, c) in graded_basis(degree).into_iter().zip(coeffs) {
            f.add_term(m, c.clone());
        }
        f
    }

    pub fn from_int_dense(degree: u32, coeffs: &[BigInt]) -> Self {
        let mut f = Self::zero(degree);
        for (m, c) in graded_basis(degree).into_iter().zip(coeffs) {
            f.add_term(m, BigRational::from_integer(c.clone()));
        }
        f
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        debug_assert_eq!(m.degree(), self.degree);
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn to_dense(&self) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); dim_s(self.degree.into())];
        for (m, c) in &self.terms {
            v[m.index()] = c.clone();
        }
        v
    }

    /// Primitive integer coefficient vector (a nonzero rational multiple of
    /// the dense coefficients, first nonzero entry positive).
    pub fn to_int_dense(&self) -> Vec<BigInt> {
        normalize_sign(clear_denominators(&self.to_dense()))
    }

    /// The same curve with primitive integer coefficients.
    pub fn primitive(&self) -> Self {
        Self::from_int_dense(self.degree, &self.to_int_dense())
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.degree, o.degree, "adding forms of different degrees");
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&q(-1)))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.degree);
        }
        HomogeneousPoly {
            degree: self.degree,
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero(self.degree + o.degree);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(BigRational::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut r = Self::zero(self.degree.saturating_sub(1));
        for (m, c) in &self.terms {
            let mut e = m.exponents();
            if e[i] == 0 {
                continue;
            }
            let k = e[i];
            e[i] -= 1;
            r.add_term(Monomial::from_exponents(e), c * q(k.into()));
        }
        r
    }

    /// `(f_x, f_y, f_z)`.
    pub fn partials(&self) -> Result<[Self; 3]> {
        if self.degree == 0 {
            return Err(Error::InvalidInput(
                "partial derivatives of a constant".into(),
            ));
        }
        Ok([self.derivative(0), self.derivative(1), self.derivative(2)])
    }

    pub fn eval(&self, p: &[BigRational; 3]) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, e) in p.iter().zip(m.exponents()) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_int(&self, p: &[BigInt; 3]) -> BigRational {
        self.eval(&[
            BigRational::from_integer(p[0].clone()),
            BigRational::from_integer(p[1].clone()),
            BigRational::from_integer(p[2].clone()),
        ])
    }

    /// `f(M v)`: substitutes `x_i -> sum_j M[i][j] x_j`.
    pub fn substitute_linear(&self, m: &[[BigInt; 3]; 3]) -> Self {
        let forms: Vec<HomogeneousPoly> = (0..3)
            .map(|i| {
                let mut l = Self::zero(1);
                for j in 0..3 {
                    l.add_term(Monomial::var(j), BigRational::from_integer(m[i][j].clone()));
                }
                l
            })
            .collect();
        let powers: Vec<Vec<HomogeneousPoly>> = forms
            .iter()
            .map(|l| {
                let mut p = vec![Self::constant(BigRational::one())];
                for e in 1..=self.degree {
                    let next = p[e as usize - 1].mul(l);
                    p.push(next);
                }
                p
            })
            .collect();
        let mut r = Self::zero(self.degree);
        for (mono, c) in &self.terms {
            let e = mono.exponents();
            let t = powers[0][e[0] as usize]
                .mul(&powers[1][e[1] as usize])
                .mul(&powers[2][e[2] as usize]);
            r = r.add(&t.scale(c));
        }
        r
    }

    /// Restriction to the line through `p` and `q`: the binary form
    /// `f(s p + u q)` in `(s, u)`.
    pub fn restrict_to_line(&self, p: &[BigInt; 3], qpt: &[BigInt; 3]) -> BinaryForm {
        // Coefficient of s^i u^(d-i) in f(s p + u q).
        let d = self.degree as usize;
        let mut coeffs = vec![BigRational::zero(); d + 1];
        let lin: Vec<(BigInt, BigInt)> = (0..3).map(|i| (p[i].clone(), qpt[i].clone())).collect();
        // Powers of each linear binary form a s + b u, as coefficient lists in s.
        let pow_lists: Vec<Vec<Vec<BigInt>>> = lin
            .iter()
            .map(|(a, b)| {
                let mut list = vec![vec![BigInt::one()]];
                for e in 1..=d {
                    let prev: &Vec<BigInt> = &list[e - 1];
                    let mut next = vec![BigInt::zero(); e + 1];
                    for (i, c) in prev.iter().enumerate() {
                        next[i + 1] += c * a;
                        next[i] += c * b;
                    }
                    list.push(next);
                }
                list
            })
            .collect();
        for (m, c) in &self.terms {
            let e = m.exponents();
            let mut prod = vec![BigInt::one()];
            for v in 0..3 {
                prod = mul_int_lists(&prod, &pow_lists[v][e[v] as usize]);
            }
            for (i, x) in prod.iter().enumerate() {
                if !x.is_zero() {
                    coeffs[i] += c * BigRational::from_integer(x.clone());
                }
            }
        }
        BinaryForm::new(coeffs)
    }

    /// `f(x, y, 1)` as an affine polynomial in `(x, y)`.
    pub fn dehomogenize(&self) -> AffinePoly {
        let mut g = AffinePoly::default();
        for (m, c) in &self.terms {
            g.add_term(m.a, m.b, c.clone());
        }
        g
    }

    /// `z^d g(x/z, y/z)`.
    pub fn homogenize(g: &AffinePoly, d: u32) -> Result<Self> {
        if g.degree().is_some_and(|e| e > d) {
            return Err(Error::InvalidInput(format!(
                "cannot homogenize a polynomial of degree {} to degree {d}",
                g.degree().unwrap()
            )));
        }
        let mut f = Self::zero(d);
        for (&(a, b), c) in &g.terms {
            f.add_term(Monomial::new(a, b, d - a - b), c.clone());
        }
        Ok(f)
    }

    /// Whether every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }
}

fn mul_int_lists(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    r
}

pub(crate) fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn fmt_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (String, &'a BigRational)>,
) -> fmt::Result {
    let mut first = true;
    for (mono, c) in terms {
        let neg = c.is_negative();
        let abs = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        }
        first = false;
        if mono == "1" {
            write!(f, "{}", fmt_rational(&abs))?;
        } else if abs.is_one() {
            write!(f, "{mono}")?;
        } else {
            write!(f, "{}*{mono}", fmt_rational(&abs))?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for HomogeneousPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.terms.iter().rev().map(|(m, c)| (m.to_string(), c)))
    }
}

/// Affine polynomial in `x, y` (used for closures of affine curves).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AffinePoly {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl AffinePoly {
    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), BigRational)>) -> Self {
        let mut g = AffinePoly::default();
        for ((a, b), c) in terms {
            g.add_term(a, b, c);
        }
        g
    }

    fn add_term(&mut self, a: u32, b: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((a, b)).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|(a, b)| a + b).max()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.terms.iter()
    }
}

impl fmt::Display for AffinePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(
            f,
            self.terms
                .iter()
                .rev()
                .map(|(&(a, b), c)| (Monomial::new(a, b, 0).to_string(), c)),
        )
    }
}
