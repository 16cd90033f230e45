//! Rational functions over `Q`: the coefficient field for symbolic surface
//! parameters.

use std::fmt;


use super::field::{Field, Rational, Ring};
use super::gcd::{div_exact, gcd, make_monic};
use super::poly::{Monomial, MultiPolynomial, Vars};
use crate::error::{Error, Result};

/// Quotient of two polynomials in lowest terms with a monic denominator
/// (leading coefficient 1 under the graded lexicographic order), so equality
/// and zero tests are purely syntactic.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFunc {
    num: MultiPolynomial,
    den: MultiPolynomial,
}

/// Element of the coefficient field of the surface parameters.
pub type ParamElement = RatFunc;

impl RatFunc {
    pub fn from_poly(p: MultiPolynomial) -> Self {
        RatFunc { num: p, den: MultiPolynomial::one() }
    }

    pub fn var(vars: &Vars, i: usize) -> Self {
        Self::from_poly(MultiPolynomial::var(vars, i))
    }

    pub fn constant(q: Rational) -> Self {
        Self::from_poly(MultiPolynomial::constant(q))
    }

    /// Builds `num/den` and normalizes. Fails if `den` is zero.
    pub fn new(num: MultiPolynomial, den: MultiPolynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: MultiPolynomial, den: MultiPolynomial) -> Self {
        if num.is_zero() {
            return RatFunc { num, den: MultiPolynomial::one() };
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_constant() {
                (num, den)
            } else {
                (
                    div_exact(&num, &g).expect("gcd divides numerator"),
                    div_exact(&den, &g).expect("gcd divides denominator"),
                )
            }
        };
        let lc = den.leading_coeff();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.inv().expect("nonzero leading coefficient");
            RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn numer(&self) -> &MultiPolynomial {
        &self.num
    }

    pub fn denom(&self) -> &MultiPolynomial {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Evaluates at a rational point. Fails if the denominator vanishes there.
    pub fn specialize(&self, values: &[Rational]) -> Result<Rational> {
        let d = self.den.eval_with(values, |c| c.clone());
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval_with(values, |c| c.clone()) / d)
    }

    /// Variable list of the numerator and denominator combined.
    pub fn vars(&self) -> &Vars {
        if self.num.vars().len() >= self.den.vars().len() {
            self.num.vars()
        } else {
            self.den.vars()
        }
    }
}

impl Ring for RatFunc {
    fn zero() -> Self {
        Self::from_poly(MultiPolynomial::zero())
    }
    fn one() -> Self {
        Self::from_poly(MultiPolynomial::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::normalized(self.num.add(&other.num), self.den.clone());
        }
        if self.den.is_constant() && other.den.is_constant() {
            let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
            return Self::normalized(num, self.den.mul(&other.den));
        }
        // Henrici: with g = gcd(b, d), the sum a/b + c/d has numerator
        // a*(d/g) + c*(b/g), and only g can share factors with it.
        let g = gcd(&self.den, &other.den);
        let b1 = div_exact(&self.den, &g).expect("gcd divides");
        let d1 = div_exact(&other.den, &g).expect("gcd divides");
        let num = self.num.mul(&d1).add(&other.num.mul(&b1));
        if num.is_zero() {
            return Self::zero();
        }
        let h = gcd(&num, &g);
        let num = div_exact(&num, &h).expect("gcd divides");
        let g1 = div_exact(&g, &h).expect("gcd divides");
        let den = b1.mul(&d1).mul(&g1);
        let lc = den.leading_coeff();
        let inv = lc.inv().expect("nonzero");
        RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_constant() && other.den.is_constant() {
            return Self::normalized(self.num.mul(&other.num), self.den.mul(&other.den));
        }
        // Cross-cancel so the product is already in lowest terms.
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let a = div_exact(&self.num, &g1).expect("gcd divides");
        let d = div_exact(&other.den, &g1).expect("gcd divides");
        let c = div_exact(&other.num, &g2).expect("gcd divides");
        let b = div_exact(&self.den, &g2).expect("gcd divides");
        let den = b.mul(&d);
        let inv = den.leading_coeff().inv().expect("nonzero");
        RatFunc { num: a.mul(&c).scale(&inv), den: den.scale(&inv) }
    }
    fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }
    fn from_rational(q: &Rational) -> Self {
        Self::constant(q.clone())
    }
    fn as_rational(&self) -> Option<Rational> {
        if self.num.is_constant() && self.den.is_constant() {
            Some(self.num.constant_term() / self.den.constant_term())
        } else {
            None
        }
    }
}

impl Field for RatFunc {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::normalized(self.den.clone(), self.num.clone()))
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else if self.num.nterms() == 1 {
            write!(f, "{}/({})", self.num, self.den)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Fraction without GCD normalization. Only constant factors are cancelled;
/// zero testing stays exact because it looks at the numerator alone, and
/// equality uses cross-multiplication.
#[derive(Clone, Debug)]
pub struct LazyFrac {
    num: MultiPolynomial,
    den: MultiPolynomial,
}

impl LazyFrac {
    pub fn from_poly(p: MultiPolynomial) -> Self {
        LazyFrac { num: p, den: MultiPolynomial::one() }
    }

    /// Converts to the canonical representation.
    pub fn normalize(&self) -> RatFunc {
        RatFunc::normalized(self.num.clone(), self.den.clone())
    }

    fn tidy(num: MultiPolynomial, den: MultiPolynomial) -> Self {
        if num.is_zero() {
            return LazyFrac { num, den: MultiPolynomial::one() };
        }
        if den.is_constant() {
            let inv = den.constant_term().inv().expect("nonzero denominator");
            return LazyFrac { num: num.scale(&inv), den: MultiPolynomial::one() };
        }
        let inv = den.leading_coeff().inv().expect("nonzero");
        LazyFrac { num: num.scale(&inv), den: make_monic(&den) }
    }
}

impl PartialEq for LazyFrac {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Ring for LazyFrac {
    fn zero() -> Self {
        Self::from_poly(MultiPolynomial::zero())
    }
    fn one() -> Self {
        Self::from_poly(MultiPolynomial::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::tidy(self.num.add(&other.num), self.den.clone());
        }
        Self::tidy(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        Self::tidy(self.num.mul(&other.num), self.den.mul(&other.den))
    }
    fn neg(&self) -> Self {
        LazyFrac { num: self.num.neg(), den: self.den.clone() }
    }
    fn from_rational(q: &Rational) -> Self {
        Self::from_poly(MultiPolynomial::constant(q.clone()))
    }
    fn as_rational(&self) -> Option<Rational> {
        if self.num.is_constant() && self.den.is_constant() {
            Some(self.num.constant_term() / self.den.constant_term())
        } else {
            None
        }
    }
}

impl Field for LazyFrac {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::tidy(self.den.clone(), self.num.clone()))
        }
    }
}

impl fmt::Display for LazyFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

/// Parses an arithmetic expression over the given variables into a rational
/// function. Accepts integers, variable names, `+ - * / ^` and parentheses.
pub fn parse_ratfunc(src: &str, vars: &Vars) -> Result<RatFunc> {
    let tokens = tokenize(src)?;
    let mut p = Parser { tokens, pos: 0, vars };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!("trailing input in {src:?}")));
    }
    Ok(e)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let n: num_bigint::BigInt = s.parse().map_err(|_| Error::Parse(s.clone()))?;
            out.push(Tok::Num(Rational::from_integer(n)));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Tok>,
    pos: usize,
    vars: &'a Vars,
}

impl Parser<'_> {
    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some(Tok::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let t = self.term()?;
            acc = if op == '+' { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        loop {
            match self.peek_op() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some('/') => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = acc.div(&d).ok_or(Error::DivisionByZero)?;
                }
                // Juxtaposition such as `2a` or `a(b-c)` multiplies.
                None if matches!(self.tokens.get(self.pos), Some(Tok::Ident(_)) | Some(Tok::Num(_))) => {
                    acc = acc.mul(&self.unary()?);
                }
                Some('(') => {
                    acc = acc.mul(&self.unary()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc> {
        if self.peek_op() == Some('-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        if self.peek_op() == Some('+') {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            match self.tokens.get(self.pos).cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n
                        .to_integer()
                        .try_into()
                        .map_err(|_| Error::Parse("exponent too large".into()))?;
                    Ok(base.pow(e))
                }
                _ => Err(Error::Parse("expected integer exponent".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<RatFunc> {
        match self.tokens.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(RatFunc::constant(n))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let i = self
                    .vars
                    .iter()
                    .position(|v| *v == name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable {name}")))?;
                Ok(RatFunc::from_poly(MultiPolynomial::term(
                    self.vars,
                    Monomial::var(i, 1),
                    Rational::one(),
                )))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            t => Err(Error::Parse(format!("unexpected token {t:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::rat;
    use crate::algebra::poly::vars;

    fn abcd() -> Vars {
        vars(&["a", "b", "c", "d"])
    }

    fn p(s: &str) -> RatFunc {
        parse_ratfunc(s, &abcd()).unwrap()
    }

    #[test]
    fn inverse_cancels() {
        assert_eq!(p("1/b").mul(&p("b")), RatFunc::one());
    }

    #[test]
    fn specialization() {
        let x = p("(d-c)/d");
        assert_eq!(x.specialize(&[rat(0, 1), rat(0, 1), rat(1, 1), rat(2, 1)]).unwrap(), rat(1, 2));
        assert!(p("1/d").specialize(&[rat(1, 1), rat(1, 1), rat(1, 1), rat(0, 1)]).is_err());
    }

    #[test]
    fn zero_tests() {
        assert!(p("a*b - b*a").is_zero());
        assert!(!p("a*d - b*c").is_zero());
        assert!(!p("d*(a-c)*(1-b) - c*(b-d)*(1-a)").is_zero());
    }

    #[test]
    fn normal_form_is_canonical() {
        let x = p("(a^2 - b^2)/(2*a + 2*b)");
        assert_eq!(x, p("a/2 - b/2"));
        assert!(x.is_polynomial());
        let y = p("(a*d - b*c)/(b*d)").add(&p("c/d"));
        assert_eq!(y, p("a/b"));
        assert_eq!(y.denom().to_string(), "b");
    }

    #[test]
    fn lazy_fractions_agree_with_canonical() {
        let v = abcd();
        let a = LazyFrac::from_poly(MultiPolynomial::var(&v, 0));
        let b = LazyFrac::from_poly(MultiPolynomial::var(&v, 1));
        let s = a.div(&b).unwrap().add(&b.div(&a).unwrap());
        let t = a.mul(&a).add(&b.mul(&b)).div(&a.mul(&b)).unwrap();
        assert_eq!(s, t);
        assert_eq!(s.normalize(), p("a/b + b/a"));
        assert!(s.sub(&t).is_zero());
    }

    #[test]
    fn parser_errors() {
        assert!(parse_ratfunc("a +", &abcd()).is_err());
        assert!(parse_ratfunc("z", &abcd()).is_err());
        assert!(parse_ratfunc("a/(b-b)", &abcd()).is_err());
        assert_eq!(p("2a(b-1)"), p("2*a*b - 2*a"));
    }
}
