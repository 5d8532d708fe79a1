//! Restriction of a curve to the pencil of lines through a rational point.
//!
//! The point is first moved to `(0:0:1)` by a unimodular integer matrix `U`
//! whose third column is the point, so `g(v) = f(U v)`. The lines through
//! `(0:0:1)` are `u x - s y = 0` for `(s:u)` in the projective line. The
//! affine chart `u = 1` is parametrized by `s`, with points `(s : 1 : t)` on
//! each line; the single remaining direction `(1:0)` is the line `y = 0`,
//! with points `(1 : 0 : t)`, and is stored separately.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::binary::BinaryForm;
use super::homogeneous::HomogeneousPoly;
use super::monomial::Monomial;
use super::univariate::{sylvester_det, UniPoly};
use crate::error::{Error, Result};

/// Polynomial in `(s, t)`: `parts[j]` is the coefficient of `t^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPoly {
    parts: Vec<UniPoly>,
}

impl BiPoly {
    pub fn new(mut parts: Vec<UniPoly>) -> Self {
        while parts.last().is_some_and(UniPoly::is_zero) {
            parts.pop();
        }
        BiPoly { parts }
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn deg_t(&self) -> Option<usize> {
        self.parts.len().checked_sub(1)
    }

    pub fn deg_s(&self) -> usize {
        self.parts.iter().filter_map(UniPoly::degree).max().unwrap_or(0)
    }

    pub fn coeff_t(&self, j: usize) -> UniPoly {
        self.parts.get(j).cloned().unwrap_or_default()
    }

    pub fn derivative_t(&self) -> BiPoly {
        BiPoly::new(
            self.parts
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, p)| p.scale(&BigRational::from_integer(j.into())))
                .collect(),
        )
    }

    /// `F(s0, t)` as a polynomial in `t`.
    pub fn eval_s(&self, s0: &BigRational) -> UniPoly {
        UniPoly::new(self.parts.iter().map(|p| p.eval(s0)).collect())
    }
}

/// Resultant with respect to `t`, as a polynomial in `s`.
///
/// Defined as the determinant of the Sylvester matrix built from the formal
/// `t`-degrees `m = deg_t F`, `n = deg_t G` (rows of `F` first), so that
/// `Res_t(t - a, t - b) = a - b` and specializing `s` commutes with taking the
/// resultant. Computed by evaluation at `deg + 1` integer points and
/// interpolation.
pub fn resultant_t(f: &BiPoly, g: &BiPoly) -> Result<UniPoly> {
    let (Some(m), Some(n)) = (f.deg_t(), g.deg_t()) else {
        return Err(Error::InvalidInput("resultant of a zero polynomial".into()));
    };
    if m == 0 || n == 0 {
        return Err(Error::InvalidInput(
            "resultant needs positive t-degree".into(),
        ));
    }
    let bound = n * f.deg_s() + m * g.deg_s();
    let xs: Vec<BigRational> = (0..=bound as i64)
        .map(|i| BigRational::from_integer(i.into()))
        .collect();
    let ys: Vec<BigRational> = xs
        .iter()
        .map(|x| {
            let a: Vec<BigRational> = f.parts.iter().map(|p| p.eval(x)).collect();
            let b: Vec<BigRational> = g.parts.iter().map(|p| p.eval(x)).collect();
            sylvester_det(&a, m, &b, n)
        })
        .collect();
    Ok(interpolate(&xs, &ys))
}

/// Newton interpolation through `(xs[i], ys[i])`.
pub fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> UniPoly {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut p = UniPoly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        p = p
            .mul(&UniPoly::root(xs[i].clone()))
            .add(&UniPoly::constant(dd[i].clone()));
    }
    p
}

/// A 3x3 integer matrix.
pub type IntMatrix3 = [[BigInt; 3]; 3];

pub fn identity3() -> IntMatrix3 {
    std::array::from_fn(|i| std::array::from_fn(|j| BigInt::from(u8::from(i == j))))
}

pub fn mat_mul3(a: &IntMatrix3, b: &IntMatrix3) -> IntMatrix3 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..3).map(|k| &a[i][k] * &b[k][j]).sum())
    })
}

pub fn det3(m: &IntMatrix3) -> BigInt {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
        - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

/// Inverse of a unimodular matrix (adjugate times the determinant).
pub fn inverse_unimodular(m: &IntMatrix3) -> IntMatrix3 {
    let det = det3(m);
    assert!(det.abs().is_one(), "matrix is not unimodular");
    let cof = |i: usize, j: usize| {
        let r: Vec<usize> = (0..3).filter(|&x| x != i).collect();
        let c: Vec<usize> = (0..3).filter(|&x| x != j).collect();
        let minor = &m[r[0]][c[0]] * &m[r[1]][c[1]] - &m[r[0]][c[1]] * &m[r[1]][c[0]];
        if (i + j).is_multiple_of(2) {
            minor
        } else {
            -minor
        }
    };
    std::array::from_fn(|i| std::array::from_fn(|j| cof(j, i) * &det))
}

/// Primitive integer coordinates with the first nonzero entry positive.
pub fn normalize_point(p: &[BigInt; 3]) -> Result<[BigInt; 3]> {
    let g = p.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return Err(Error::InvalidInput("(0:0:0) is not a point".into()));
    }
    let sign = if p.iter().find(|x| !x.is_zero()).unwrap().is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    Ok(std::array::from_fn(|i| &p[i] / &g * &sign))
}

/// Unimodular `U` with `U e_3 = p`, for a primitive integer point `p`.
/// Deterministic: built from Euclid's algorithm on the coordinates.
pub fn unimodular_completion(p: &[BigInt; 3]) -> IntMatrix3 {
    let mut v = p.clone();
    // Column operations on `vinv` mirror the row operations on `v`, so that
    // always `vinv * v = p`.
    let mut vinv = identity3();
    loop {
        let nz: Vec<usize> = (0..3).filter(|&i| !v[i].is_zero()).collect();
        if nz.len() <= 1 {
            break;
        }
        let (mut i, mut j) = (nz[0], nz[1]);
        if v[i].abs() < v[j].abs() {
            std::mem::swap(&mut i, &mut j);
        }
        let q = v[i].div_floor(&v[j]);
        let qv = &q * &v[j];
        v[i] -= qv;
        for r in 0..3 {
            let add = &q * &vinv[r][i];
            vinv[r][j] += add;
        }
    }
    let k = (0..3).find(|&i| !v[i].is_zero()).expect("nonzero point");
    let sign = v[k].clone();
    debug_assert!(sign.abs().is_one());
    // Move column k to position 2 and fix the sign.
    let mut u = vinv.clone();
    for r in 0..3 {
        u[r][2] = &vinv[r][k] * &sign;
        u[r][k] = vinv[r][2].clone();
    }
    if k == 2 {
        for r in 0..3 {
            u[r][2] = &vinv[r][2] * &sign;
        }
    }
    u
}

/// The curve seen from the pencil of lines through a rational point.
#[derive(Clone, Debug)]
pub struct PencilRestriction {
    /// Base point, primitive integer coordinates.
    pub base_point: [BigInt; 3],
    /// Unimodular `U` with `U e_3 = p`; the moved polynomial is `f(U v)`.
    pub transform: IntMatrix3,
    pub moved: HomogeneousPoly,
    /// `f_i(x, y)` of degree `i`, the coefficient of `z^(d-i)` in the moved
    /// polynomial, for `i = 0..=d`.
    pub layers: Vec<BinaryForm>,
    /// `F(s, t) = g(s, 1, t)`, the affine chart of the pencil.
    pub chart: BiPoly,
    /// `g(1, 0, t)`, the line of direction `(1:0)`.
    pub at_infinity: UniPoly,
}

impl PencilRestriction {
    /// Multiplicity of the curve at the base point; 0 if it is off the curve.
    pub fn multiplicity(&self) -> usize {
        self.layers
            .iter()
            .position(|l| !l.is_zero())
            .unwrap_or(self.layers.len())
    }

    /// Brings a form in the moved coordinates back to the original ones.
    pub fn to_original(&self, h: &HomogeneousPoly) -> HomogeneousPoly {
        h.substitute_linear(&inverse_unimodular(&self.transform))
    }

    /// `P(x, y)` for a binary form `P(s, u)` in pencil coordinates: the product
    /// of the lines `u_i x - s_i y` of its roots, in the original coordinates.
    pub fn lines_of(&self, form: &BinaryForm) -> HomogeneousPoly {
        let e = form.degree() as u32;
        let mut h = HomogeneousPoly::zero(e);
        for (i, c) in form.coeffs().iter().enumerate() {
            h = h.add(&HomogeneousPoly::monomial(
                Monomial::new(i as u32, e - i as u32, 0),
                c.clone(),
            ));
        }
        self.to_original(&h)
    }
}

/// Restricts `f` to the pencil of lines through the rational point `p`.
pub fn restrict_to_pencil(f: &HomogeneousPoly, p: &[BigInt; 3]) -> Result<PencilRestriction> {
    let p = normalize_point(p)?;
    let u = unimodular_completion(&p);
    let g = f.substitute_linear(&u);
    let d = g.degree() as usize;
    let mut layers: Vec<BinaryForm> = (0..=d).map(BinaryForm::zero).collect();
    for (m, c) in g.terms() {
        let i = (m.a + m.b) as usize;
        let mut coeffs = layers[i].coeffs().to_vec();
        coeffs[m.a as usize] = c.clone();
        layers[i] = BinaryForm::new(coeffs);
    }
    let one = BigRational::one();
    let zero = BigRational::zero();
    let mut parts = vec![UniPoly::zero(); d + 1];
    let mut inf = vec![BigRational::zero(); d + 1];
    for (i, l) in layers.iter().enumerate() {
        parts[d - i] = l.dehomogenize();
        inf[d - i] = l.eval(&one, &zero);
    }
    Ok(PencilRestriction {
        base_point: p,
        transform: u,
        moved: g,
        layers,
        chart: BiPoly::new(parts),
        at_infinity: UniPoly::new(inf),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    fn pt(a: i64, b: i64, c: i64) -> [BigInt; 3] {
        [a.into(), b.into(), c.into()]
    }

    #[test]
    fn completion_is_unimodular() {
        for p in [pt(0, 0, 1), pt(1, 0, 0), pt(3, 5, 7), pt(6, 10, 15), pt(0, 1, -1), pt(-4, 9, 0)] {
            let p = normalize_point(&p).unwrap();
            let u = unimodular_completion(&p);
            assert!(det3(&u).abs().is_one());
            let col: [BigInt; 3] = std::array::from_fn(|i| u[i][2].clone());
            assert_eq!(col, p);
            let inv = inverse_unimodular(&u);
            assert_eq!(mat_mul3(&u, &inv), identity3());
        }
    }

    #[test]
    fn resultant_examples() {
        // Res_t(t^2 - s, t) = -s with the Sylvester convention (F rows first).
        let f = BiPoly::new(vec![UniPoly::from_i64(&[0, -1]), UniPoly::zero(), UniPoly::one()]);
        let g = BiPoly::new(vec![UniPoly::zero(), UniPoly::one()]);
        assert_eq!(resultant_t(&f, &g).unwrap(), UniPoly::from_i64(&[0, -1]));
        // Res_t(t - a(s), t - b(s)) = a - b.
        let a = UniPoly::from_i64(&[1, 2, 1]);
        let b = UniPoly::from_i64(&[0, 3]);
        let fa = BiPoly::new(vec![a.scale(&q(-1)), UniPoly::one()]);
        let fb = BiPoly::new(vec![b.scale(&q(-1)), UniPoly::one()]);
        assert_eq!(resultant_t(&fa, &fb).unwrap(), a.sub(&b));
        assert!(resultant_t(&f, &BiPoly::new(vec![])).is_err());
    }

    #[test]
    fn discriminant_vanishes_at_double_roots() {
        // F = t^2 - s(s-1)^2 ... repeated root when s = 0 or s = 1.
        let c0 = UniPoly::from_i64(&[0, -1, 2, -1]);
        let f = BiPoly::new(vec![c0, UniPoly::zero(), UniPoly::one()]);
        let disc = resultant_t(&f, &f.derivative_t()).unwrap();
        for s0 in -3..5 {
            let s0 = q(s0);
            let has_double = !f.eval_s(&s0).is_squarefree();
            assert_eq!(disc.eval(&s0).is_zero(), has_double, "s = {s0}");
        }
    }

    #[test]
    fn xyz_through_origin_of_chart() {
        let f = HomogeneousPoly::var(0)
            .mul(&HomogeneousPoly::var(1))
            .mul(&HomogeneousPoly::var(2));
        let r = restrict_to_pencil(&f, &pt(0, 0, 1)).unwrap();
        assert_eq!(r.multiplicity(), 2);
        // F(s, t) = s * t
        assert_eq!(r.chart.deg_t(), Some(1));
        assert_eq!(r.chart.coeff_t(1), UniPoly::from_i64(&[0, 1]));
        assert!(r.chart.coeff_t(0).is_zero());
    }

    #[test]
    fn point_off_curve_has_nonzero_constant_layer() {
        let f = HomogeneousPoly::var(0).pow(3).add(&HomogeneousPoly::var(1).pow(3)).add(
            &HomogeneousPoly::var(2).pow(3),
        );
        let r = restrict_to_pencil(&f, &pt(1, 1, 1)).unwrap();
        assert_eq!(r.multiplicity(), 0);
        assert!(!r.layers[0].is_zero());
    }
}
