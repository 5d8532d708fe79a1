use num_rational::BigRational;
use num_traits::Zero;

use super::univariate::UniPoly;

/// Binary form of degree `e` in `(s, u)`; `coeffs[i]` is the coefficient of
/// `s^i u^(e-i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    coeffs: Vec<BigRational>,
}

impl BinaryForm {
    /// `coeffs` must be nonempty; its length fixes the degree.
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form needs a degree");
        BinaryForm { coeffs }
    }

    pub fn zero(degree: usize) -> Self {
        Self::new(vec![BigRational::zero(); degree + 1])
    }

    /// `u^k * g(s)` homogenized to degree `deg g + k`.
    pub fn from_dehomogenized(g: &UniPoly, u_power: usize) -> Self {
        let e = g.degree().unwrap_or(0) + u_power;
        let mut coeffs = vec![BigRational::zero(); e + 1];
        for (i, c) in g.coeffs().iter().enumerate() {
            coeffs[i] = c.clone();
        }
        Self::new(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `F(s, 1)`.
    pub fn dehomogenize(&self) -> UniPoly {
        UniPoly::new(self.coeffs.clone())
    }

    /// Multiplicity of the root `(1:0)`, i.e. of the factor `u`.
    pub fn u_multiplicity(&self) -> usize {
        match self.dehomogenize().degree() {
            Some(k) => self.degree() - k,
            None => self.degree() + 1,
        }
    }

    /// No repeated linear factor over an algebraic closure.
    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        let g = self.dehomogenize();
        self.u_multiplicity() <= 1 && (g.degree() == Some(0) || g.is_squarefree())
    }

    /// Product of the distinct linear factors, monic in the `s`-chart.
    pub fn squarefree_part(&self) -> BinaryForm {
        assert!(!self.is_zero(), "squarefree part of the zero form");
        let g = self.dehomogenize().squarefree_part().expect("nonzero");
        Self::from_dehomogenized(&g, self.u_multiplicity().min(1))
    }

    /// Whether `self` divides `other` as binary forms.
    pub fn divides(&self, other: &BinaryForm) -> bool {
        if other.is_zero() {
            return true;
        }
        if self.is_zero() {
            return false;
        }
        self.u_multiplicity() <= other.u_multiplicity()
            && other.dehomogenize().divisible_by(&self.dehomogenize())
    }

    pub fn mul(&self, o: &BinaryForm) -> BinaryForm {
        let mut c = vec![BigRational::zero(); self.degree() + o.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(c)
    }

    pub fn eval(&self, s: &BigRational, u: &BigRational) -> BigRational {
        let e = self.degree();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * num_traits::pow(s.clone(), i) * num_traits::pow(u.clone(), e - i))
            .fold(BigRational::zero(), |a, b| a + b)
    }
}

impl std::fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let e = self.degree() as u32;
        let mut h = super::HomogeneousPoly::zero(e);
        for (i, c) in self.coeffs.iter().enumerate() {
            h = h.add(&super::HomogeneousPoly::monomial(
                super::Monomial::new(i as u32, e - i as u32, 0),
                c.clone(),
            ));
        }
        write!(f, "{}", h.to_string().replace('x', "s").replace('y', "u"))
    }
}
