//! Sparse multivariate polynomials over an arbitrary coefficient ring.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! graded lexicographic. Exponent vectors are stored with trailing zeros
//! trimmed, so a polynomial over a prefix of another polynomial's variable
//! list is directly compatible with it (constants in particular need no
//! variable list at all).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use super::field::{Rational, Ring};

/// Ordered list of variable names shared between polynomials.
pub type Vars = Arc<Vec<String>>;

/// Builds a variable list from string slices.
pub fn vars<S: AsRef<str>>(names: &[S]) -> Vars {
    Arc::new(names.iter().map(|s| s.as_ref().to_string()).collect())
}

/// Exponent vector with trailing zeros removed.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(SmallVec<[u16; 8]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        let mut v: SmallVec<[u16; 8]> = exps.iter().copied().collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        Monomial(v)
    }

    pub fn var(index: usize, exp: u16) -> Self {
        let mut v: SmallVec<[u16; 8]> = SmallVec::from_elem(0, index + 1);
        v[index] = exp;
        Monomial::from_exponents(&v)
    }

    pub fn exp(&self, index: usize) -> u16 {
        self.0.get(index).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    /// Number of slots needed, i.e. one past the last variable with a
    /// positive exponent.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.len().max(other.len());
        let v: SmallVec<[u16; 8]> = (0..n).map(|i| self.exp(i) + other.exp(i)).collect();
        Monomial(v)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.len() <= other.len() && (0..self.len()).all(|i| self.0[i] <= other.0[i])
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn div_into(&self, other: &Monomial) -> Monomial {
        let v: SmallVec<[u16; 8]> = (0..other.len()).map(|i| other.0[i] - self.exp(i)).collect();
        Monomial::from_exponents(&v)
    }

    /// Componentwise minimum.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let n = self.len().min(other.len());
        let v: SmallVec<[u16; 8]> = (0..n).map(|i| self.0[i].min(other.0[i])).collect();
        Monomial::from_exponents(&v)
    }

    /// Sets the exponent of `index` to zero.
    pub fn without(&self, index: usize) -> Monomial {
        if index >= self.len() {
            return self.clone();
        }
        let mut v = self.0.clone();
        v[index] = 0;
        Monomial::from_exponents(&v)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let n = self.len().max(other.len());
            for i in 0..n {
                match self.exp(i).cmp(&other.exp(i)) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial with coefficients in `C`. No zero coefficient is ever
/// stored.
#[derive(Clone, Debug)]
pub struct Poly<C> {
    vars: Vars,
    terms: BTreeMap<Monomial, C>,
}

/// Polynomial with exact rational coefficients.
pub type MultiPolynomial = Poly<Rational>;

fn empty_vars() -> Vars {
    thread_local! {
        static EMPTY: Vars = Arc::new(Vec::new());
    }
    EMPTY.with(|v| v.clone())
}

/// Picks the longer of two compatible variable lists.
///
/// Panics if neither list is a prefix of the other: mixing polynomials from
/// unrelated variable universes is a programming error.
fn unify(a: &Vars, b: &Vars) -> Vars {
    if Arc::ptr_eq(a, b) {
        return a.clone();
    }
    let (short, long) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    assert!(
        long[..short.len()] == short[..],
        "incompatible variable lists {:?} and {:?}",
        a,
        b
    );
    long.clone()
}

impl<C: Ring> Poly<C> {
    pub fn zero_in(vars: &Vars) -> Self {
        Poly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::term(&empty_vars(), Monomial::one(), c)
    }

    pub fn term(vars: &Vars, mono: Monomial, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            assert!(mono.len() <= vars.len(), "monomial exceeds variable list");
            terms.insert(mono, c);
        }
        Poly { vars: vars.clone(), terms }
    }

    /// The variable with index `i`.
    pub fn var(vars: &Vars, i: usize) -> Self {
        Self::term(vars, Monomial::var(i, 1), C::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(vars: &Vars, terms: I) -> Self {
        let mut p = Self::zero_in(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    /// Reinterprets the polynomial over a longer variable list that has the
    /// current one as a prefix.
    pub fn with_vars(mut self, vars: &Vars) -> Self {
        self.vars = unify(&self.vars, vars);
        self
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, C)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&Monomial::one())
    }

    /// Leading term under the graded lexicographic order.
    pub fn leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> C {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(C::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.keys().map(|m| m.exp(var)).max().unwrap_or(0)
    }

    /// Indices of the variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        let n = self.terms.keys().map(|m| m.len()).max().unwrap_or(0);
        (0..n).filter(|&i| self.terms.keys().any(|m| m.exp(i) > 0)).collect()
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        assert!(m.len() <= self.vars.len(), "monomial exceeds variable list");
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = existing.add(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero_in(&self.vars);
        }
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, x)| {
                let y = x.mul(c);
                (!y.is_zero()).then(|| (m.clone(), y))
            })
            .collect();
        Poly { vars: self.vars.clone(), terms }
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &C) -> Self {
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, x)| {
                let y = x.mul(c);
                (!y.is_zero()).then(|| (m.mul(mono), y))
            })
            .collect();
        Poly { vars: self.vars.clone(), terms }
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let mut out = Poly { vars: unify(&self.vars, &other.vars), terms: self.terms.clone() };
        for (m, c) in &other.terms {
            let c = if negate { c.neg() } else { c.clone() };
            out.add_term(m.clone(), c);
        }
        out
    }

    /// Evaluates the polynomial at `values`, mapping each coefficient into
    /// the target ring with `coeff`.
    pub fn eval_with<T: Ring>(&self, values: &[T], coeff: impl Fn(&C) -> T) -> T {
        let mut acc = T::zero();
        for (m, c) in &self.terms {
            let mut t = coeff(c);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = t.mul(&values[i].pow(e as u32));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        let mut out = Poly::zero_in(&self.vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Writes the polynomial as a univariate polynomial in `var`: the entry
    /// at position `k` is the coefficient of `var^k`, itself free of `var`.
    pub fn to_univariate(&self, var: usize) -> Vec<Poly<C>> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![Self::zero_in(&self.vars); deg + 1];
        for (m, c) in &self.terms {
            out[m.exp(var) as usize].add_term(m.without(var), c.clone());
        }
        out
    }

    pub fn from_univariate(coeffs: &[Poly<C>], var: usize, vars: &Vars) -> Self {
        let mut out = Self::zero_in(vars);
        for (k, c) in coeffs.iter().enumerate() {
            let shift = Monomial::var(var, k as u16);
            for (m, x) in &c.terms {
                out.add_term(m.mul(&shift), x.clone());
            }
        }
        out
    }
}

impl<C: Ring> PartialEq for Poly<C> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<C: Ring + Eq> Eq for Poly<C> {}

impl<C: Ring> Ring for Poly<C> {
    fn zero() -> Self {
        Self::zero_in(&empty_vars())
    }
    fn one() -> Self {
        Self::constant(C::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }
    fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero_in(&unify(&self.vars, &other.vars));
        if self.is_zero() || other.is_zero() {
            return out;
        }
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        out
    }
    fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect();
        Poly { vars: self.vars.clone(), terms }
    }
    fn from_rational(q: &Rational) -> Self {
        Self::constant(C::from_rational(q))
    }
    fn as_rational(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::from_integer(0.into()));
        }
        if self.is_constant() {
            self.constant_term().as_rational()
        } else {
            None
        }
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial, vars: &[String]) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        let name = vars.get(i).map(String::as_str).unwrap_or("?");
        if e == 1 {
            write!(f, "{name}")?;
        } else {
            write!(f, "{name}^{e}")?;
        }
    }
    Ok(())
}

impl<C: Ring> fmt::Display for Poly<C> {
    /// Terms from the largest monomial down; non-rational coefficients are
    /// parenthesized.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, body) = match c.as_rational() {
                Some(q) if super::field::rational_is_negative(&q) => (true, (-q).to_string()),
                Some(q) => (false, q.to_string()),
                None => (false, format!("({c})")),
            };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{body}")?;
            } else {
                if body != "1" {
                    write!(f, "{body}*")?;
                }
                write_monomial(f, m, &self.vars)?;
            }
        }
        Ok(())
    }
}
