//! Exact arithmetic: rationals, sparse multivariate polynomials, rational
//! functions and linear algebra over exact fields.

pub mod field;
pub mod gcd;
pub mod matrix;
pub mod poly;
pub mod ratfunc;

pub use field::{format_rational, parse_rational, rat, Field, Rational, Ring};
pub use gcd::{div_exact, gcd};
pub use matrix::Matrix;
pub use poly::{vars, Monomial, MultiPolynomial, Poly, Vars};
pub use ratfunc::{parse_ratfunc, LazyFrac, ParamElement, RatFunc};

/// `true` iff the element is the zero of its field.
pub fn is_zero<F: Field>(x: &F) -> bool {
    x.is_zero()
}

/// Right kernel of `m`, normalized so each vector's first nonzero entry is 1.
pub fn kernel_basis<F: Field>(m: &Matrix<F>) -> Vec<Vec<F>> {
    m.kernel_basis()
}
