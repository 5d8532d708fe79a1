use std::fmt;

/// `x^a y^b z^c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { a: 0, b: 0, c: 0 };

    pub fn new(a: u32, b: u32, c: u32) -> Self {
        Monomial { a, b, c }
    }

    /// `x`, `y` or `z` for `i = 0, 1, 2`.
    pub fn var(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Self::from_exponents(e)
    }

    pub fn from_exponents(e: [u32; 3]) -> Self {
        Monomial::new(e[0], e[1], e[2])
    }

    pub fn exponents(&self) -> [u32; 3] {
        [self.a, self.b, self.c]
    }

    pub fn degree(&self) -> u32 {
        self.a + self.b + self.c
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial::new(self.a + o.a, self.b + o.b, self.c + o.c)
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.a <= o.a && self.b <= o.b && self.c <= o.c
    }

    /// Position inside [`graded_basis`] of its own degree.
    pub fn index(&self) -> usize {
        let k = self.degree() as usize;
        let r = k - self.a as usize;
        r * (r + 1) / 2 + self.c as usize
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, e) in ["x", "y", "z"].iter().zip(self.exponents()) {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// `dim S_k = (k+1)(k+2)/2`; zero for negative `k`.
pub fn dim_s(k: i64) -> usize {
    if k < 0 {
        0
    } else {
        let k = k as usize;
        (k + 1) * (k + 2) / 2
    }
}

/// Monomials of degree `k` in graded lexicographic order with `x > y > z`.
pub fn graded_basis(k: u32) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(dim_s(k.into()));
    for a in (0..=k).rev() {
        for b in (0..=k - a).rev() {
            out.push(Monomial::new(a, b, k - a - b));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_sizes() {
        assert_eq!(graded_basis(0), vec![Monomial::ONE]);
        assert_eq!(graded_basis(2).len(), 6);
        assert_eq!(graded_basis(4).len(), 15);
        for k in 0..12 {
            assert_eq!(graded_basis(k).len(), dim_s(k.into()));
        }
    }

    #[test]
    fn index_matches_position() {
        for k in 0..10 {
            for (i, m) in graded_basis(k).iter().enumerate() {
                assert_eq!(m.index(), i);
            }
        }
        assert_eq!(graded_basis(2)[0], Monomial::new(2, 0, 0));
        assert_eq!(graded_basis(2)[1], Monomial::new(1, 1, 0));
    }

    #[test]
    fn display() {
        assert_eq!(Monomial::new(2, 0, 1).to_string(), "x^2*z");
        assert_eq!(Monomial::ONE.to_string(), "1");
    }
}
