//! Quadratic equations of the affine cones over the E6 and E7 flag
//! varieties, written in coordinates indexed by (-1)-curves.

mod e6;
mod e7;
mod psi;

use std::fmt;

use serde::Serialize;

use crate::algebra::{format_rational, vars, MultiPolynomial, Rational, Ring, Vars};
use crate::error::{Error, Result};
use crate::lattice::{CurveLabel, DivisorClass, RulingSymbol, Surface};

pub use e6::{cubic_terms, e6_cubic_form, h6_equations};
pub use e7::h7_equations;
pub use psi::{defining_classes, phi_project, psi_parametrize, LambdaRoute};

/// Coordinate names `eta1', mu12', ...` in coordinate order.
pub fn primed_vars(surface: &Surface) -> Vars {
    let names: Vec<String> = surface.curves().iter().map(|c| format!("{}'", c.symbol())).collect();
    vars(&names)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum EquationTag {
    /// Partial derivative of the cubic form by the coordinate of a curve.
    Partial(CurveLabel),
    /// `u^{ijkl}` with `i < j < k < l`.
    U([u8; 4]),
    /// `v^i_j` with `i != j`.
    V(u8, u8),
    /// `v^i_i`.
    VDiag(u8),
}

impl fmt::Display for EquationTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquationTag::Partial(e) => write!(f, "dF/d{}'", e.symbol()),
            EquationTag::U(idx) => write!(f, "u^{}{}{}{}", idx[0], idx[1], idx[2], idx[3]),
            EquationTag::V(i, j) => write!(f, "v^{i}_{j}"),
            EquationTag::VDiag(i) => write!(f, "v^{i}_{i}"),
        }
    }
}

/// `coeff * xi'(a) * xi'(b)`, curve indices in coordinate order, `a < b`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConeTerm {
    pub a: usize,
    pub b: usize,
    pub coeff: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConeEquation {
    pub tag: EquationTag,
    /// Degree under the Picard grading.
    pub class: DivisorClass,
    pub symbol: Option<RulingSymbol>,
    pub terms: Vec<ConeTerm>,
}

impl ConeEquation {
    pub(crate) fn new(tag: EquationTag, class: DivisorClass, mut terms: Vec<ConeTerm>) -> Self {
        for t in terms.iter_mut() {
            if t.a > t.b {
                std::mem::swap(&mut t.a, &mut t.b);
            }
        }
        terms.sort_by_key(|t| (t.a, t.b));
        let symbol = RulingSymbol::of_class(&class);
        ConeEquation { tag, class, symbol, terms }
    }

    /// Coefficient of `xi'(a) xi'(b)`, zero if absent.
    pub fn coeff(&self, a: usize, b: usize) -> Rational {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        self.terms
            .iter()
            .find(|t| t.a == a && t.b == b)
            .map(|t| t.coeff.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn eval<R: Ring>(&self, point: &[R]) -> R {
        self.terms.iter().fold(R::zero(), |acc, t| {
            acc.add(&R::from_rational(&t.coeff).mul(&point[t.a].mul(&point[t.b])))
        })
    }

    pub fn to_poly(&self, vars: &Vars) -> MultiPolynomial {
        self.terms.iter().fold(MultiPolynomial::zero_in(vars), |acc, t| {
            let m = MultiPolynomial::var(vars, t.a).mul(&MultiPolynomial::var(vars, t.b));
            acc.add(&m.scale(&t.coeff))
        })
    }

    /// Every monomial has degree `class` under the Picard grading.
    pub fn is_homogeneous(&self, surface: &Surface) -> bool {
        self.terms.iter().all(|t| surface.class(t.a).add(surface.class(t.b)) == self.class)
    }

    pub fn display(&self, surface: &Surface) -> String {
        let mut out = String::new();
        for (k, t) in self.terms.iter().enumerate() {
            let neg = t.coeff < Rational::zero();
            let mag = if neg { -t.coeff.clone() } else { t.coeff.clone() };
            if k == 0 {
                out.push_str(if neg { "-" } else { "" });
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                out.push_str(&format!("{}*", format_rational(&mag)));
            }
            out.push_str(&format!("{}'*{}'", surface.label(t.a).symbol(), surface.label(t.b).symbol()));
        }
        out
    }
}

/// Residual of every equation at the point.
pub fn verify_on_cone<R: Ring>(equations: &[ConeEquation], point: &[R]) -> Vec<R> {
    equations.iter().map(|e| e.eval(point)).collect()
}

/// Equations of the cone for `r` points: 27 partials or 134 quadrics.
pub fn cone_equations(surface: &Surface) -> Result<Vec<ConeEquation>> {
    match surface.r() {
        6 => Ok(h6_equations(surface)),
        7 => Ok(h7_equations(surface)),
        r => Err(Error::UnsupportedR(r)),
    }
}

/// The equation `p_D` of a (1)-ruling class.
pub fn equation_for_class<'a>(equations: &'a [ConeEquation], class: &DivisorClass) -> Option<&'a ConeEquation> {
    equations.iter().find(|e| e.class == *class && !matches!(e.tag, EquationTag::VDiag(_)))
}

#[derive(Serialize)]
struct MonomialJson {
    curves: [String; 2],
    coefficient: String,
}

#[derive(Serialize)]
struct EquationJson {
    tag: String,
    ruling: String,
    monomials: Vec<MonomialJson>,
}

/// JSON list `{tag, ruling, monomials: [{curves, coefficient}]}`.
pub fn equations_json(surface: &Surface, equations: &[ConeEquation]) -> serde_json::Value {
    let list: Vec<EquationJson> = equations
        .iter()
        .map(|e| EquationJson {
            tag: e.tag.to_string(),
            ruling: e.symbol.as_ref().map(|s| s.to_string()).unwrap_or_else(|| e.class.to_string()),
            monomials: e
                .terms
                .iter()
                .map(|t| MonomialJson {
                    curves: [surface.label(t.a).symbol(), surface.label(t.b).symbol()],
                    coefficient: format_rational(&t.coeff),
                })
                .collect(),
        })
        .collect();
    serde_json::to_value(list).expect("plain data serializes")
}
