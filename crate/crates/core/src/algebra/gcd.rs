//! Exact division and greatest common divisors in `Q[x_1, ..., x_n]`.
//!
//! The GCD is the classical recursive algorithm: split off the content with
//! respect to the highest occurring variable, then run a primitive
//! pseudo-remainder sequence on the primitive parts.

use super::field::{Field, Rational, Ring};
use super::poly::{Monomial, MultiPolynomial, Poly};

/// Divides `a` by `b` if the division is exact, otherwise `None`.
pub fn div_exact(a: &MultiPolynomial, b: &MultiPolynomial) -> Option<MultiPolynomial> {
    assert!(!b.is_zero(), "division by the zero polynomial");
    let vars = a.vars().clone();
    if b.is_constant() {
        let inv = b.constant_term().inv()?;
        return Some(a.scale(&inv));
    }
    let (lm_b, lc_b) = b.leading().map(|(m, c)| (m.clone(), c.clone()))?;
    let lc_inv = lc_b.inv()?;
    let mut rem = a.clone();
    let mut quot = MultiPolynomial::zero_in(&vars);
    while let Some((lm_r, lc_r)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
        if !lm_b.divides(&lm_r) {
            return None;
        }
        let m = lm_b.div_into(&lm_r);
        let c = lc_r.mul(&lc_inv);
        rem = rem.sub(&b.mul_monomial(&m, &c));
        quot.add_term(m, c);
    }
    Some(quot)
}

/// Scales `p` so that its leading coefficient is 1 (zero stays zero).
pub fn make_monic(p: &MultiPolynomial) -> MultiPolynomial {
    match p.leading() {
        Some((_, c)) if !c.is_one() => p.scale(&c.inv().expect("nonzero leading coefficient")),
        _ => p.clone(),
    }
}

/// Greatest common divisor, normalized to leading coefficient 1.
///
/// `gcd(0, 0) = 0`; a nonzero constant argument yields 1.
pub fn gcd(a: &MultiPolynomial, b: &MultiPolynomial) -> MultiPolynomial {
    make_monic(&gcd_rec(a, b))
}

fn one_like(p: &MultiPolynomial) -> MultiPolynomial {
    MultiPolynomial::term(p.vars(), Monomial::one(), Rational::one())
}

fn monomial_content(p: &MultiPolynomial) -> Monomial {
    let mut it = p.terms().map(|(m, _)| m.clone());
    let first = it.next().unwrap_or_default();
    it.fold(first, |acc, m| acc.gcd(&m))
}

fn gcd_rec(a: &MultiPolynomial, b: &MultiPolynomial) -> MultiPolynomial {
    if a.is_zero() {
        return make_monic(b);
    }
    if b.is_zero() {
        return make_monic(a);
    }
    if a.is_constant() || b.is_constant() {
        return one_like(a).with_vars(b.vars());
    }
    if a.nterms() == 1 || b.nterms() == 1 {
        let m = monomial_content(a).gcd(&monomial_content(b));
        return MultiPolynomial::term(a.vars(), m, Rational::one()).with_vars(b.vars());
    }
    if a == b {
        return make_monic(a);
    }
    let vars = {
        let va = a.vars();
        let vb = b.vars();
        if va.len() >= vb.len() {
            va.clone()
        } else {
            vb.clone()
        }
    };
    let main = *a.support().iter().chain(b.support().iter()).max().expect("non-constant input");
    let da = a.degree_in(main);
    let db = b.degree_in(main);
    if da == 0 {
        return gcd_rec(a, &content(b, main));
    }
    if db == 0 {
        return gcd_rec(&content(a, main), b);
    }
    let ca = content(a, main);
    let cb = content(b, main);
    let c = gcd_rec(&ca, &cb);
    let pa = div_exact(a, &ca).expect("content divides");
    let pb = div_exact(b, &cb).expect("content divides");
    let g = primitive_prs(pa, pb, main);
    make_monic(&c.mul(&g).with_vars(&vars))
}

/// GCD of the coefficients of `p` viewed as a polynomial in `var`.
fn content(p: &MultiPolynomial, var: usize) -> MultiPolynomial {
    let coeffs = p.to_univariate(var);
    let mut g = MultiPolynomial::zero_in(p.vars());
    // Fewest terms first tends to shrink the running gcd fastest.
    let mut nonzero: Vec<&MultiPolynomial> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    nonzero.sort_by_key(|c| c.nterms());
    for c in nonzero {
        g = gcd_rec(&g, c);
        if g.is_constant() {
            return one_like(p);
        }
    }
    g
}

fn primitive_part(p: &MultiPolynomial, var: usize) -> MultiPolynomial {
    let c = content(p, var);
    make_monic(&div_exact(p, &c).expect("content divides"))
}

/// Pseudo-remainder of `a` by `b` with respect to `var`.
fn prem(a: &MultiPolynomial, b: &MultiPolynomial, var: usize) -> MultiPolynomial {
    let db = b.degree_in(var);
    let ub = b.to_univariate(var);
    let lb = ub[db as usize].clone();
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(var) >= db {
        let dr = r.degree_in(var);
        let lr = r.to_univariate(var)[dr as usize].clone();
        let shift = Poly::term(r.vars(), Monomial::var(var, dr - db), Rational::one());
        r = r.mul(&lb).sub(&lr.mul(&shift).mul(b));
    }
    r
}

fn primitive_prs(a: MultiPolynomial, b: MultiPolynomial, var: usize) -> MultiPolynomial {
    let (mut a, mut b) = if a.degree_in(var) >= b.degree_in(var) { (a, b) } else { (b, a) };
    loop {
        let r = prem(&a, &b, var);
        if r.is_zero() {
            return primitive_part(&b, var);
        }
        if r.degree_in(var) == 0 {
            return one_like(&a);
        }
        a = b;
        b = primitive_part(&r, var);
    }
}
