use std::collections::BTreeMap;

use super::{primed_vars, ConeEquation, ConeTerm, EquationTag};
use crate::algebra::{Monomial, MultiPolynomial, Rational};
use crate::lattice::{CurveLabel, DivisorClass, Surface};

fn matrices(s: &Surface) -> [[[usize; 3]; 3]; 3] {
    let e = |i: u8| s.index_of(&CurveLabel::E(i));
    let m = |i: u8, j: u8| s.index_of(&CurveLabel::Line(i, j));
    let q = |i: u8| s.index_of(&CurveLabel::Conic(vec![i]));
    [
        [[e(1), q(1), m(2, 3)], [e(2), q(2), m(1, 3)], [e(3), q(3), m(1, 2)]],
        [[q(4), q(5), q(6)], [e(4), e(5), e(6)], [m(5, 6), m(4, 6), m(4, 5)]],
        [[m(1, 4), m(2, 4), m(3, 4)], [m(1, 5), m(2, 5), m(3, 5)], [m(1, 6), m(2, 6), m(3, 6)]],
    ]
}

const PERMS: [([usize; 3], i64); 6] =
    [([0, 1, 2], 1), ([1, 2, 0], 1), ([2, 0, 1], 1), ([0, 2, 1], -1), ([2, 1, 0], -1), ([1, 0, 2], -1)];

/// Terms of `det M1 + det M2 + det M3 - tr(M1 M2 M3)` keyed by the sorted
/// triple of curve indices.
pub fn cubic_terms(s: &Surface) -> BTreeMap<[usize; 3], i64> {
    assert_eq!(s.r(), 6, "the cubic form lives on 27 coordinates");
    let ms = matrices(s);
    let mut out: BTreeMap<[usize; 3], i64> = BTreeMap::new();
    let mut add = |mut t: [usize; 3], c: i64| {
        t.sort_unstable();
        let e = out.entry(t).or_insert(0);
        *e += c;
    };
    for m in &ms {
        for (p, sign) in PERMS {
            add([m[0][p[0]], m[1][p[1]], m[2][p[2]]], sign);
        }
    }
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                add([ms[0][i][j], ms[1][j][k], ms[2][k][i]], -1);
            }
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// The cubic form as a polynomial in the primed coordinates.
pub fn e6_cubic_form(s: &Surface) -> MultiPolynomial {
    let v = primed_vars(s);
    let mut f = MultiPolynomial::zero_in(&v);
    for (t, c) in cubic_terms(s) {
        let mut exps = vec![0u16; s.len()];
        for i in t {
            exps[i] += 1;
        }
        f.add_term(Monomial::from_exponents(&exps), Rational::from_integer(c.into()));
    }
    f
}

/// The 27 partial derivatives of the cubic form; the derivative by the
/// coordinate of `E` has degree `-K - E`.
pub fn h6_equations(s: &Surface) -> Vec<ConeEquation> {
    let terms = cubic_terms(s);
    (0..s.len())
        .map(|e| {
            let mut eq_terms = Vec::new();
            for (t, c) in &terms {
                if let Some(pos) = t.iter().position(|&x| x == e) {
                    let rest: Vec<usize> = t.iter().enumerate().filter(|&(k, _)| k != pos).map(|(_, &x)| x).collect();
                    eq_terms.push(ConeTerm { a: rest[0], b: rest[1], coeff: Rational::from_integer((*c).into()) });
                }
            }
            let class = DivisorClass::anticanonical(6).sub(s.class(e));
            ConeEquation::new(EquationTag::Partial(s.label(e).clone()), class, eq_terms)
        })
        .collect()
}
