//! Staged elimination of the rescaling conditions with every `eta''`
//! normalized to 1.
//!
//! At each step the solver takes a ruling whose two conditions are linear,
//! with constant coefficients, in the factors not yet determined, and solves
//! for them. Conditions left over after solving must vanish identically.

use super::{Condition, ConditionPair};
use crate::algebra::{vars, Field, Matrix, Poly, Ring, Vars};
use crate::error::{Error, Result};
use crate::lattice::Surface;

#[derive(Clone, Debug, PartialEq)]
pub struct Stage {
    pub ruling: String,
    pub bound: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Leftover<F> {
    pub condition: String,
    pub residual: Poly<F>,
}

/// Rescaling factors in the normalization `eta''_i = 1`, as polynomials in
/// the remaining free factors `Xi''_00`.
#[derive(Clone, Debug)]
pub struct Assignment<F> {
    r: usize,
    free_vars: Vars,
    free_curves: Vec<usize>,
    values: Vec<Poly<F>>,
    bound: Vec<usize>,
    stages: Vec<Stage>,
    leftovers: Vec<Leftover<F>>,
}

impl<F: Field> Assignment<F> {
    pub fn r(&self) -> usize {
        self.r
    }

    /// Names of the free factors other than the `eta''_i`.
    pub fn free_vars(&self) -> &Vars {
        &self.free_vars
    }

    pub fn free_curves(&self) -> &[usize] {
        &self.free_curves
    }

    /// `r` exceptional factors plus the free ones.
    pub fn free_parameter_count(&self) -> usize {
        self.r + self.free_curves.len()
    }

    /// Factor of every curve as a polynomial in the free factors.
    pub fn values(&self) -> &[Poly<F>] {
        &self.values
    }

    /// Curves whose factor was solved for, in solving order.
    pub fn bound(&self) -> &[usize] {
        &self.bound
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    pub fn leftovers(&self) -> &[Leftover<F>] {
        &self.leftovers
    }

    pub fn all_leftovers_vanish(&self) -> bool {
        self.leftovers.iter().all(|l| l.residual.is_zero())
    }

    /// The factors for arbitrary nonzero `eta''_1..eta''_r` and free values,
    /// obtained from the normalized solution through the torus action.
    pub fn factors(&self, s: &Surface, eta: &[F], free: &[F]) -> Result<Vec<F>> {
        if eta.len() != self.r || free.len() != self.free_curves.len() {
            return Err(Error::InvalidInput(format!(
                "expected {} eta values and {} free values",
                self.r,
                self.free_curves.len()
            )));
        }
        if let Some(k) = eta.iter().chain(free).position(Ring::is_zero) {
            return Err(Error::ZeroFactor(format!("free parameter #{k} is zero")));
        }
        let mut t = vec![F::one()];
        t.extend_from_slice(eta);
        let chi: Vec<F> = (0..s.len()).map(|i| super::torus_character(s.class(i), &t)).collect::<Result<_>>()?;
        let base: Vec<F> = self
            .free_curves
            .iter()
            .zip(free)
            .map(|(&c, v)| v.div(&chi[c]).expect("characters of nonzero values are nonzero"))
            .collect();
        let mut out = Vec::with_capacity(s.len());
        for (i, p) in self.values.iter().enumerate() {
            let v = p.eval_with(&base, |c| c.clone()).mul(&chi[i]);
            if v.is_zero() {
                return Err(Error::ZeroFactor(s.label(i).symbol()));
            }
            out.push(v);
        }
        Ok(out)
    }
}

/// Linear system of one ruling in its undetermined factors:
/// `rows[k].0 . x + rows[k].1 = 0`.
struct LinearForm<F> {
    unknowns: Vec<usize>,
    rows: Vec<(Vec<F>, Poly<F>)>,
}

fn linearize<F: Field>(conds: [&Condition<F>; 2], values: &[Option<Poly<F>>], v: &Vars) -> Option<LinearForm<F>> {
    let mut unknowns: Vec<usize> = Vec::new();
    for c in conds {
        for t in &c.terms {
            for x in [t.a, t.b] {
                if values[x].is_none() && !unknowns.contains(&x) {
                    unknowns.push(x);
                }
            }
        }
    }
    unknowns.sort_unstable();
    let mut rows = Vec::with_capacity(2);
    for c in conds {
        let mut coeffs = vec![F::zero(); unknowns.len()];
        let mut rhs = Poly::zero_in(v);
        for t in &c.terms {
            match (&values[t.a], &values[t.b]) {
                (Some(p), Some(q)) => rhs = rhs.add(&p.mul(q).scale(&t.coeff)),
                (Some(w), None) | (None, Some(w)) => {
                    if !w.is_constant() {
                        return None;
                    }
                    let u = if values[t.a].is_none() { t.a } else { t.b };
                    let k = unknowns.iter().position(|&x| x == u).expect("collected");
                    coeffs[k] = coeffs[k].add(&t.coeff.mul(&w.constant_term()));
                }
                (None, None) => return None,
            }
        }
        rows.push((coeffs, rhs));
    }
    Some(LinearForm { unknowns, rows })
}

impl<F: Field> LinearForm<F> {
    fn rank(&self) -> usize {
        if self.unknowns.is_empty() {
            return 0;
        }
        Matrix::from_rows(self.rows.iter().map(|(c, _)| c.clone()).collect()).rank()
    }

    /// Solves with the first nonsingular choice of rows; returns the
    /// solution and the rows used.
    fn solve(&self) -> (Vec<Poly<F>>, Vec<usize>) {
        let k = self.unknowns.len();
        match k {
            0 => (Vec::new(), Vec::new()),
            1 => {
                let row = self.rows.iter().position(|(c, _)| !c[0].is_zero()).expect("rank 1");
                let (c, rhs) = &self.rows[row];
                (vec![rhs.scale(&c[0].inv().expect("nonzero").neg())], vec![row])
            }
            2 => {
                let (a, r0) = (&self.rows[0].0, &self.rows[0].1);
                let (b, r1) = (&self.rows[1].0, &self.rows[1].1);
                let det = a[0].mul(&b[1]).sub(&a[1].mul(&b[0]));
                let inv = det.inv().expect("rank 2");
                let x0 = r0.scale(&b[1].neg()).add(&r1.scale(&a[1]));
                let x1 = r0.scale(&b[0]).sub(&r1.scale(&a[0]));
                (vec![x0.scale(&inv), x1.scale(&inv)], vec![0, 1])
            }
            _ => unreachable!("two conditions bind at most two factors"),
        }
    }

    fn residual(&self, row: usize, x: &[Poly<F>]) -> Poly<F> {
        let (c, rhs) = &self.rows[row];
        c.iter().zip(x).fold(rhs.clone(), |acc, (a, xi)| acc.add(&xi.scale(a)))
    }
}

/// Solves the conditions of `M_r` for every factor outside
/// `{eta''_i} u Xi''_00`, with `eta'' = 1`.
pub fn solve_system<F: Field>(s: &Surface, conditions: &[ConditionPair<F>]) -> Result<Assignment<F>> {
    let r = s.r();
    let (e1, e2) = (s.exceptional(1), s.exceptional(2));
    let free_curves: Vec<usize> = (0..s.len())
        .filter(|&i| !s.label(i).is_exceptional() && s.intersection(i, e1) == 0 && s.intersection(i, e2) == 0)
        .collect();
    let names: Vec<String> = free_curves.iter().map(|&i| s.label(i).symbol()).collect();
    let v = vars(&names);
    let mut values: Vec<Option<Poly<F>>> = (0..s.len())
        .map(|i| s.label(i).is_exceptional().then(|| Poly::constant(F::one()).with_vars(&v)))
        .collect();
    for (k, &i) in free_curves.iter().enumerate() {
        values[i] = Some(Poly::var(&v, k));
    }

    // Xi''_{ij} has level i + j; lower levels are solved first.
    let level = |i: usize| s.intersection(i, e1) + s.intersection(i, e2);
    let mut pending: Vec<usize> = (0..conditions.len()).collect();
    let mut bound = Vec::new();
    let mut stages = Vec::new();
    let mut leftovers = Vec::new();
    while !pending.is_empty() {
        let mut best: Option<(usize, (i32, usize), LinearForm<F>)> = None;
        for (pos, &ci) in pending.iter().enumerate() {
            let cp = &conditions[ci];
            let Some(form) = linearize([&cp.g1, &cp.g2], &values, &v) else { continue };
            let k = form.unknowns.len();
            if k > 2 || form.rank() != k {
                continue;
            }
            let key = (form.unknowns.iter().map(|&u| level(u)).max().unwrap_or(0), k);
            if best.as_ref().is_none_or(|(_, b, _)| key < *b) {
                best = Some((pos, key, form));
            }
        }
        let Some((pos, _, form)) = best else {
            let names: Vec<String> = pending.iter().map(|&c| conditions[c].ruling.name()).collect();
            return Err(Error::SolverStalled(format!("no linear step among {}", names.join(", "))));
        };
        let cp = &conditions[pending.remove(pos)];
        let (x, pivots) = form.solve();
        for (xi, &u) in x.iter().zip(&form.unknowns) {
            if xi.is_zero() {
                return Err(Error::ZeroFactor(format!("{} from {}", s.label(u).symbol(), cp.ruling.name())));
            }
            values[u] = Some(xi.clone());
        }
        for (row, cond) in [&cp.g1, &cp.g2].into_iter().enumerate() {
            if !pivots.contains(&row) {
                leftovers.push(Leftover { condition: cond.name.clone(), residual: form.residual(row, &x) });
            }
        }
        bound.extend_from_slice(&form.unknowns);
        stages.push(Stage { ruling: cp.ruling.name(), bound: form.unknowns.clone() });
    }
    let values: Vec<Poly<F>> = values
        .into_iter()
        .enumerate()
        .map(|(i, p)| p.ok_or_else(|| Error::SolverStalled(format!("{} is never determined", s.label(i)))))
        .collect::<Result<_>>()?;
    Ok(Assignment { r, free_vars: v, free_curves, values, bound, stages, leftovers })
}
