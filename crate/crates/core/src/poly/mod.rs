//! Polynomials: homogeneous forms in `x, y, z`, binary forms, univariate
//! polynomials and the pencil restriction used by the modularity tests.

mod binary;
mod homogeneous;
mod monomial;
pub mod pencil;
mod univariate;

use num_rational::BigRational;
use num_traits::Zero;

pub use binary::BinaryForm;
pub use homogeneous::{AffinePoly, HomogeneousPoly};
pub use monomial::{dim_s, graded_basis, Monomial};
pub use pencil::{resultant_t, restrict_to_pencil, BiPoly, PencilRestriction};
pub use univariate::UniPoly;

use crate::linalg::DenseMatrix;

/// Matrix of `h -> g h` from `S_k` to `S_(k + deg g)` in graded bases.
pub fn mult_matrix(g: &HomogeneousPoly, k: u32) -> DenseMatrix {
    let e = g.degree();
    let rows = dim_s((k + e).into());
    let basis = graded_basis(k);
    let mut m = DenseMatrix::zeros(rows, basis.len());
    for (j, mono) in basis.iter().enumerate() {
        for (gm, c) in g.terms() {
            let r = gm.mul(mono).index();
            let v = m.get(r, j) + c;
            m.set(r, j, v);
        }
    }
    m
}

/// Whether the coefficients are all zero.
pub fn all_zero(v: &[BigRational]) -> bool {
    v.iter().all(Zero::is_zero)
}
