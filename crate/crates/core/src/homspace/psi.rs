//! The parametrization of the cone near the locus where `eta'_1 != 0`:
//! the coordinates of `N(E_1)_0` and `eta'_1` determine everything else.

use super::{equation_for_class, ConeEquation, EquationTag};
use crate::algebra::Field;
use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, Surface};

/// Which equation determines `lambda'_1` for seven points.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LambdaRoute {
    #[default]
    V11,
    V21,
}

/// Solves `eq` for the coordinate `unknown`, all others being known.
fn solve_for<F: Field>(eq: &ConeEquation, coords: &[Option<F>], unknown: usize, s: &Surface) -> Result<F> {
    let mut lin = F::zero();
    let mut rest = F::zero();
    for t in &eq.terms {
        let c = F::from_rational(&t.coeff);
        let (u, other) = match (t.a == unknown, t.b == unknown) {
            (true, false) => (true, t.b),
            (false, true) => (true, t.a),
            (false, false) => (false, usize::MAX),
            (true, true) => return Err(Error::SolverStalled(format!("{} is quadratic in {}", eq.tag, s.label(unknown)))),
        };
        let known = |i: usize| {
            coords[i].clone().ok_or_else(|| {
                Error::SolverStalled(format!("{} needs {} before {}", eq.tag, s.label(i), s.label(unknown)))
            })
        };
        if u {
            lin = lin.add(&c.mul(&known(other)?));
        } else {
            rest = rest.add(&c.mul(&known(t.a)?.mul(&known(t.b)?)));
        }
    }
    let inv = lin.inv().ok_or_else(|| Error::VanishingDivisor(format!("{} for {}", eq.tag, s.label(unknown))))?;
    Ok(rest.neg().mul(&inv))
}

/// Extends `eta'_1` and the coordinates of `N(E_1)_0` (in coordinate order)
/// to a point of the cone.
pub fn psi_parametrize<F: Field>(
    s: &Surface,
    equations: &[ConeEquation],
    eta1: &F,
    base: &[F],
    route: LambdaRoute,
) -> Result<Vec<F>> {
    let e1 = s.exceptional(1);
    let zero_set = s.neighbors(e1, 0);
    if base.len() != zero_set.len() {
        return Err(Error::InvalidInput(format!("expected {} free coordinates, got {}", zero_set.len(), base.len())));
    }
    if eta1.is_zero() {
        return Err(Error::VanishingDivisor("eta1'".into()));
    }
    let mut coords: Vec<Option<F>> = vec![None; s.len()];
    coords[e1] = Some(eta1.clone());
    for (&i, v) in zero_set.iter().zip(base) {
        coords[i] = Some(v.clone());
    }
    for e in s.neighbors(e1, 1) {
        let class = s.class(e1).add(s.class(e));
        let eq = equation_for_class(equations, &class)
            .ok_or_else(|| Error::InvalidInput(format!("no equation of degree {class}")))?;
        coords[e] = Some(solve_for(eq, &coords, e, s)?);
    }
    for e in s.neighbors(e1, 2) {
        let tag = match route {
            LambdaRoute::V11 => EquationTag::VDiag(1),
            LambdaRoute::V21 => EquationTag::V(2, 1),
        };
        let eq = equations.iter().find(|q| q.tag == tag).ok_or_else(|| Error::InvalidInput(format!("no {tag}")))?;
        coords[e] = Some(solve_for(eq, &coords, e, s)?);
    }
    coords
        .into_iter()
        .enumerate()
        .map(|(i, c)| c.ok_or_else(|| Error::SolverStalled(format!("{} left undetermined", s.label(i)))))
        .collect()
}

/// Inverse of [`psi_parametrize`]: `(eta'_1, coordinates of N(E_1)_0)`.
pub fn phi_project<F: Field>(s: &Surface, point: &[F]) -> (F, Vec<F>) {
    let e1 = s.exceptional(1);
    (point[e1].clone(), s.neighbors(e1, 0).into_iter().map(|i| point[i].clone()).collect())
}

/// Classes `E_1 + E` whose equations define the parametrization.
pub fn defining_classes(s: &Surface) -> Vec<DivisorClass> {
    let e1 = s.exceptional(1);
    s.neighbors(e1, 1).into_iter().map(|e| s.class(e1).add(s.class(e))).collect()
}
