//! The 134 quadrics cutting out the E7 cone, in the `x^{ij}, y_{ij}`
//! coordinates `(i < j <= 8)` mapped onto curves.

use super::{ConeEquation, ConeTerm, EquationTag};
use crate::algebra::{rat, Rational, Ring};
use crate::lattice::{CurveLabel, DivisorClass, Surface};

/// A coordinate up to sign: `(curve index, +1 | -1)`.
type Signed = (usize, i64);

struct Dictionary<'a> {
    s: &'a Surface,
}

impl Dictionary<'_> {
    /// `x^{ij}` with `x^{ji} = -x^{ij}`: `x^{i8} = eta_i`, `x^{kl} = nu_{kl}`.
    fn x(&self, i: u8, j: u8) -> Signed {
        let (lo, hi, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
        let label = if hi == 8 { CurveLabel::E(lo) } else { CurveLabel::Conic(vec![lo, hi]) };
        (self.s.index_of(&label), sign)
    }

    /// `y_{ij}` with `y_{ji} = -y_{ij}`: `y_{i8} = lambda_i`, `y_{kl} = mu_{kl}`.
    fn y(&self, i: u8, j: u8) -> Signed {
        let (lo, hi, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
        let label = if hi == 8 { CurveLabel::Cubic(lo) } else { CurveLabel::Line(lo, hi) };
        (self.s.index_of(&label), sign)
    }
}

fn term(p: Signed, q: Signed, c: Rational) -> ConeTerm {
    ConeTerm { a: p.0, b: q.0, coeff: c.mul(&rat(p.1 * q.1, 1)) }
}

/// Sign of a permutation of `1..=n` given in one-line notation.
fn permutation_sign(p: &[u8]) -> i64 {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Class of a curve coordinate, used to read off the degree of an equation.
fn degree(s: &Surface, t: &ConeTerm) -> DivisorClass {
    s.class(t.a).add(s.class(t.b))
}

/// `u^{ijkl}` (70), `v^i_j` (56) and `v^i_i` (8), in that order.
pub fn h7_equations(s: &Surface) -> Vec<ConeEquation> {
    assert_eq!(s.r(), 7, "the quadrics live on 56 coordinates");
    let d = Dictionary { s };
    let one = rat(1, 1);
    let mut out = Vec::with_capacity(134);
    let all: Vec<u8> = (1..=8).collect();
    for i in 1..=8u8 {
        for j in i + 1..=8 {
            for k in j + 1..=8 {
                for l in k + 1..=8 {
                    let c: Vec<u8> = all.iter().copied().filter(|x| ![i, j, k, l].contains(x)).collect();
                    let (a, b, cc, dd) = (c[0], c[1], c[2], c[3]);
                    let sigma = rat(permutation_sign(&[i, j, k, l, a, b, cc, dd]), 1);
                    let terms = vec![
                        term(d.x(i, j), d.x(k, l), one.clone()),
                        term(d.x(i, k), d.x(j, l), one.neg()),
                        term(d.x(i, l), d.x(j, k), one.clone()),
                        term(d.y(a, b), d.y(cc, dd), sigma.clone()),
                        term(d.y(a, cc), d.y(b, dd), sigma.neg()),
                        term(d.y(a, dd), d.y(b, cc), sigma.clone()),
                    ];
                    let class = degree(s, &terms[0]);
                    out.push(ConeEquation::new(EquationTag::U([i, j, k, l]), class, terms));
                }
            }
        }
    }
    for i in 1..=8u8 {
        for j in 1..=8u8 {
            if i == j {
                continue;
            }
            let terms: Vec<ConeTerm> =
                (1..=8u8).filter(|&k| k != i && k != j).map(|k| term(d.x(i, k), d.y(k, j), one.clone())).collect();
            let class = degree(s, &terms[0]);
            out.push(ConeEquation::new(EquationTag::V(i, j), class, terms));
        }
    }
    let (three_quarters, quarter) = (rat(-3, 4), rat(1, 4));
    for i in 1..=8u8 {
        let mut terms: Vec<ConeTerm> =
            (1..=8u8).filter(|&j| j != i).map(|j| term(d.x(i, j), d.y(i, j), three_quarters.clone())).collect();
        for j in 1..=8u8 {
            for k in j + 1..=8 {
                if j != i && k != i {
                    terms.push(term(d.x(j, k), d.y(j, k), quarter.clone()));
                }
            }
        }
        out.push(ConeEquation::new(EquationTag::VDiag(i), DivisorClass::anticanonical(7), terms));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::RulingSymbol;

    #[test]
    fn counts_and_tags() {
        let s = Surface::new(7).unwrap();
        let eqs = h7_equations(&s);
        assert_eq!(eqs.len(), 134);
        let v81 = eqs.iter().find(|e| e.tag == EquationTag::V(8, 1)).unwrap();
        assert_eq!(v81.symbol, Some(RulingSymbol::D1(1)));
        let u = eqs.iter().find(|e| e.tag == EquationTag::U([2, 3, 5, 8])).unwrap();
        assert_eq!(u.symbol, Some(RulingSymbol::D2(2, 3, 5)));
        for e in &eqs {
            assert!(e.is_homogeneous(&s), "{}", e.tag);
            let n = if matches!(e.tag, EquationTag::VDiag(_)) { 28 } else { 6 };
            assert_eq!(e.terms.len(), n, "{}", e.tag);
        }
    }

    #[test]
    fn signs() {
        assert_eq!(permutation_sign(&[1, 2, 3, 4, 5, 6, 7, 8]), 1);
        assert_eq!(permutation_sign(&[1, 2, 3, 5, 4, 6, 7, 8]), -1);
    }
}
