//! Conditions on the rescaling factors `xi''(E)`, their solution, and
//! certificates that the rescaled Cox ring spectrum lies on the cone.

mod certify;
mod solver;
mod torus;

use std::fmt;

use rayon::prelude::*;

use crate::algebra::{vars, Field, Poly, RatFunc, Ring, Vars};
use crate::coxring::{CoxRelation, CoxRing, PointConfig};
use crate::error::{Error, Result};
use crate::homspace::{cone_equations, equation_for_class, ConeEquation};
use crate::lattice::{curve_count, CurveLabel, Ruling, Surface};

pub use certify::{
    certify_embedding, certify_symbolic, generic_rescaled_point, negative_control, run_specialized,
    sample_config, sample_plane_point, scoped_equations, Certificate, EquationStatus, RunOptions, SampleRecord,
    Scope, SpecializedRun, SymbolicCertificate, MAX_RESAMPLES,
};
pub use solver::{solve_system, Assignment, Leftover, Stage};
pub use torus::{act_on_factors, torus_character};

/// `N_{r-2} + 2`.
pub fn count_free_parameters(r: usize) -> usize {
    curve_count(r - 2) + 2
}

/// Dimension `N_{r-2} - r + 1` of the family of images after dividing out
/// the torus.
pub fn image_family_dimension(r: usize) -> usize {
    curve_count(r - 2) + 1 - r
}

/// Variable list with one rescaling symbol per curve, in coordinate order.
pub fn rescaling_vars(s: &Surface) -> Vars {
    let names: Vec<String> = s.curves().iter().map(CurveLabel::symbol).collect();
    vars(&names)
}

/// How the two anchor pairs of each ruling are chosen.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum AnchorPolicy {
    /// The arrangement that makes the staged elimination linear: for
    /// `D = E_1 + E` with `(E_2, E) = 0` the pairs through `E_1` and `E_2`;
    /// otherwise the first pair avoiding `E_1` and the pair through `E_1`.
    #[default]
    Elimination,
    /// As `Elimination`, except that the rulings `E_1 + Q_i` are anchored
    /// at their first two pairs of lines.
    Listing,
}

/// Positions of the two anchor pairs within `ruling.pairs`.
pub fn choose_anchors(s: &Surface, ruling: &Ruling, policy: AnchorPolicy) -> Result<(usize, usize)> {
    let e1 = CurveLabel::E(1);
    let e2 = CurveLabel::E(2);
    let not_through = |c: &CurveLabel| ruling.pairs.iter().position(|(a, b)| a != c && b != c);
    let missing = || Error::AnchorMismatch(format!("no anchor arrangement for {}", ruling.name()));
    let Some(p1) = ruling.pair_with(&e1) else {
        // D = E_2 + C_1 for seven points.
        let p2 = ruling.pair_with(&e2).ok_or_else(missing)?;
        return Ok((not_through(&e2).ok_or_else(missing)?, p2));
    };
    let (a, b) = &ruling.pairs[p1];
    let other = if *a == e1 { b } else { a };
    if policy == AnchorPolicy::Listing && matches!(other, CurveLabel::Conic(m) if m.len() == 1) {
        let lines: Vec<usize> = ruling
            .pairs
            .iter()
            .enumerate()
            .filter(|(_, (a, b))| !a.is_exceptional() && !b.is_exceptional())
            .map(|(k, _)| k)
            .collect();
        if lines.len() >= 2 {
            return Ok((lines[0], lines[1]));
        }
    }
    let meets_e2 = s.intersection(s.index_of(other), s.index_of(&e2));
    if meets_e2 == 0 {
        Ok((p1, ruling.pair_with(&e2).ok_or_else(missing)?))
    } else {
        Ok((not_through(&e1).ok_or_else(missing)?, p1))
    }
}

/// `coeff * xi''(a) * xi''(b)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionTerm<F> {
    pub coeff: F,
    pub a: usize,
    pub b: usize,
}

/// One of the two conditions `g_{D,1}`, `g_{D,2}` of a ruling.
#[derive(Clone, Debug, PartialEq)]
pub struct Condition<F> {
    pub name: String,
    pub terms: Vec<ConditionTerm<F>>,
}

impl<F: Field> Condition<F> {
    /// As a polynomial in the rescaling symbols.
    pub fn to_poly(&self, vars: &Vars) -> Poly<F> {
        let mut p = Poly::zero_in(vars);
        for t in &self.terms {
            let m = Poly::<F>::var(vars, t.a).mul(&Poly::var(vars, t.b));
            p = p.add(&m.scale(&t.coeff));
        }
        p
    }

    pub fn display(&self, s: &Surface) -> String {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| format!("({})*{}*{}", t.coeff, s.label(t.a).symbol(), s.label(t.b).symbol()))
            .collect();
        parts.join(" + ")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConditionPair<F> {
    pub ruling: Ruling,
    pub anchors: (usize, usize),
    pub g1: Condition<F>,
    pub g2: Condition<F>,
}

impl<F> fmt::Display for ConditionPair<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ruling.name())
    }
}

/// `g_{D,1} = e_{a1} xi''_{a1} - sum_j e_j alpha_j xi''_j` and the same with
/// `beta` and the second anchor, where `e` are the signs of `p_D` and
/// `alpha_j, beta_j` come from the anchored relations of `D`.
pub fn build_conditions<F: Field>(
    s: &Surface,
    ruling: &Ruling,
    relations: &[CoxRelation<F>],
    cone_eq: &ConeEquation,
) -> Result<ConditionPair<F>> {
    let first = relations.first().ok_or_else(|| Error::AnchorMismatch(format!("{}: no relations", ruling.name())))?;
    let (a1, a2) = first.anchors.ok_or_else(|| Error::AnchorMismatch(format!("{}: unanchored", ruling.name())))?;
    let pairs: Vec<(usize, usize)> =
        ruling.pairs.iter().map(|(a, b)| (s.index_of(a), s.index_of(b))).collect();
    let eps = |k: usize| -> Result<F> {
        let (a, b) = pairs[k];
        let c = cone_eq.coeff(a, b);
        if c.is_zero() {
            return Err(Error::AnchorMismatch(format!(
                "{} has no term {}*{}",
                cone_eq.tag,
                s.label(a),
                s.label(b)
            )));
        }
        Ok(F::from_rational(&c))
    };
    if cone_eq.terms.len() != pairs.len() {
        return Err(Error::AnchorMismatch(format!("{} does not match {}", cone_eq.tag, ruling.name())));
    }
    let mut g1 = vec![ConditionTerm { coeff: eps(a1)?, a: pairs[a1].0, b: pairs[a1].1 }];
    let mut g2 = vec![ConditionTerm { coeff: eps(a2)?, a: pairs[a2].0, b: pairs[a2].1 }];
    for rel in relations {
        if rel.anchors != Some((a1, a2)) {
            return Err(Error::AnchorMismatch(format!("{}: inconsistent anchors", ruling.name())));
        }
        let j = rel.slot.ok_or_else(|| Error::AnchorMismatch(format!("{}: unanchored", ruling.name())))?;
        let (alpha, beta) = rel.alpha_beta().expect("anchored");
        let e = eps(j)?;
        let (a, b) = pairs[j];
        g1.push(ConditionTerm { coeff: e.mul(&alpha).neg(), a, b });
        g2.push(ConditionTerm { coeff: e.mul(&beta).neg(), a, b });
    }
    let name = ruling.name();
    Ok(ConditionPair {
        ruling: ruling.clone(),
        anchors: (a1, a2),
        g1: Condition { name: format!("g[{name},1]"), terms: g1 },
        g2: Condition { name: format!("g[{name},2]"), terms: g2 },
    })
}

/// Everything derived from one point configuration: generators, cone
/// equations, the conditions for the rulings in `M_r`, and their solution.
#[derive(Clone, Debug)]
pub struct Rescaling<F> {
    pub ring: CoxRing<F>,
    pub equations: Vec<ConeEquation>,
    pub conditions: Vec<ConditionPair<F>>,
    pub assignment: Assignment<F>,
}

/// Conditions for every ruling in `M_r` with the given anchor policy.
pub fn membership_conditions<F: Field>(
    ring: &CoxRing<F>,
    equations: &[ConeEquation],
    policy: AnchorPolicy,
) -> Result<Vec<ConditionPair<F>>> {
    let s = ring.surface();
    s.membership_set()?
        .par_iter()
        .map(|rl| {
            let anchors = choose_anchors(s, rl, policy)?;
            let rels = ring.ruling_relations(rl, anchors)?;
            let eq = equation_for_class(equations, &rl.class)
                .ok_or_else(|| Error::AnchorMismatch(format!("no cone equation of degree {}", rl.class)))?;
            build_conditions(s, rl, &rels, eq)
        })
        .collect()
}

impl<F: Field> Rescaling<F> {
    pub fn build(config: PointConfig<F>) -> Result<Self> {
        let ring = CoxRing::new(config)?;
        let equations = cone_equations(ring.surface())?;
        let conditions = membership_conditions(&ring, &equations, AnchorPolicy::Elimination)?;
        let assignment = solve_system(ring.surface(), &conditions)?;
        Ok(Rescaling { ring, equations, conditions, assignment })
    }

    pub fn surface(&self) -> &Surface {
        self.ring.surface()
    }
}

/// A polynomial over `Q(params)` in further variables, as one rational
/// function over `params` followed by those variables.
pub fn flatten(p: &Poly<RatFunc>, params: &Vars) -> RatFunc {
    let mut names: Vec<String> = params.iter().cloned().collect();
    names.extend(p.vars().iter().cloned());
    let all = vars(&names);
    let shift = params.len();
    let mut acc = RatFunc::zero();
    for (m, c) in p.terms() {
        let mut exps = vec![0u16; shift];
        exps.extend_from_slice(m.exponents());
        let mono = crate::algebra::MultiPolynomial::term(&all, crate::algebra::Monomial::from_exponents(&exps), crate::algebra::rat(1, 1));
        let lifted = RatFunc::new(c.numer().clone().with_vars(&all), c.denom().clone().with_vars(&all))
            .expect("denominator is nonzero");
        acc = acc.add(&lifted.mul(&RatFunc::from_poly(mono)));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameter_counts() {
        assert_eq!(count_free_parameters(6), 12);
        assert_eq!(count_free_parameters(7), 18);
        assert_eq!(image_family_dimension(6), 5);
        assert_eq!(image_family_dimension(7), 10);
    }

    #[test]
    fn anchors_follow_the_elimination_roles() {
        let s = Surface::new(6).unwrap();
        let m = s.membership_set().unwrap();
        // E1 + m12 = H - E2: first pair avoiding E1 is (E3, m23).
        let (a1, a2) = choose_anchors(&s, &m[0], AnchorPolicy::Elimination).unwrap();
        assert_eq!(m[0].pairs[a1], (CurveLabel::E(3), CurveLabel::Line(2, 3)));
        assert_eq!(m[0].pairs[a2], (CurveLabel::E(1), CurveLabel::Line(1, 2)));
        // E1 + m13: pairs through E1 and E2.
        let (a1, a2) = choose_anchors(&s, &m[1], AnchorPolicy::Elimination).unwrap();
        assert_eq!(m[1].pairs[a1].0, CurveLabel::E(1));
        assert_eq!(m[1].pairs[a2].0, CurveLabel::E(2));
        let s7 = Surface::new(7).unwrap();
        let last = s7.membership_set().unwrap().pop().unwrap();
        let (a1, a2) = choose_anchors(&s7, &last, AnchorPolicy::Elimination).unwrap();
        assert!(last.pairs[a2].0 == CurveLabel::E(2));
        assert!(last.pairs[a1].0 != CurveLabel::E(2));
    }

    fn numeric(r: usize) -> Rescaling<crate::algebra::Rational> {
        use crate::algebra::rat;
        let params = match r {
            6 => vec![rat(2, 1), rat(-3, 1), rat(5, 1), rat(7, 2)],
            _ => vec![rat(2, 1), rat(-3, 1), rat(5, 1), rat(7, 2), rat(-4, 3), rat(9, 5)],
        };
        Rescaling::build(PointConfig::numeric(r, params).unwrap()).unwrap()
    }

    #[test]
    fn solver_counts_r6() {
        let res = numeric(6);
        let a = &res.assignment;
        assert_eq!(a.bound().len(), 15);
        assert_eq!(a.leftovers().len(), 5);
        assert_eq!(a.free_parameter_count(), 12);
        assert!(a.all_leftovers_vanish());
    }

    #[test]
    fn solver_counts_r7() {
        let res = numeric(7);
        let a = &res.assignment;
        assert_eq!(a.bound().len(), 38);
        assert_eq!(a.leftovers().len(), 18);
        assert_eq!(a.free_parameter_count(), 18);
        assert!(a.all_leftovers_vanish());
    }
}
