//! Point configurations in the plane and the Cox ring generators they
//! induce.
//!
//! Every generator is realized as a plane polynomial in `x, y, z` that
//! vanishes to the right order at the blown-up points; relations of a ruling
//! are linear dependencies among the products of its pairs.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{vars, Field, Matrix, Monomial, Poly, RatFunc, Rational, Ring, Vars};
use crate::error::{Error, Result};
use crate::lattice::{CurveLabel, DivisorClass, Ruling, Surface};

pub type PlanePoint<F> = [F; 3];
pub type PlanePolynomial<F> = Poly<F>;

/// Names of the free surface parameters.
pub fn parameter_names(r: usize) -> Result<Vec<String>> {
    let names: Vec<String> = match r {
        6 => ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect(),
        7 => (1..=3).flat_map(|i| [format!("a{i}"), format!("b{i}")]).collect(),
        _ => return Err(Error::UnsupportedR(r)),
    };
    Ok(names)
}

pub fn plane_vars() -> Vars {
    vars(&["x", "y", "z"])
}

/// Monomials of degree `d` in `x, y, z` in the column order used for
/// interpolation determinants.
pub fn plane_monomials(d: u16) -> Vec<Monomial> {
    let m = |e: [u16; 3]| Monomial::from_exponents(&e);
    match d {
        0 => vec![Monomial::one()],
        1 => vec![m([1, 0, 0]), m([0, 1, 0]), m([0, 0, 1])],
        2 => vec![m([2, 0, 0]), m([0, 2, 0]), m([0, 0, 2]), m([1, 1, 0]), m([1, 0, 1]), m([0, 1, 1])],
        3 => vec![
            m([3, 0, 0]),
            m([0, 3, 0]),
            m([0, 0, 3]),
            m([2, 1, 0]),
            m([2, 0, 1]),
            m([1, 2, 0]),
            m([0, 2, 1]),
            m([1, 0, 2]),
            m([0, 1, 2]),
            m([1, 1, 1]),
        ],
        _ => {
            let mut out = Vec::new();
            for i in (0..=d).rev() {
                for j in (0..=d - i).rev() {
                    out.push(m([i, j, d - i - j]));
                }
            }
            out
        }
    }
}

fn eval_monomial<F: Ring>(m: &Monomial, p: &PlanePoint<F>) -> F {
    let mut acc = F::one();
    for (k, coord) in p.iter().enumerate() {
        let e = m.exp(k);
        if e > 0 {
            acc = acc.mul(&coord.pow(e as u32));
        }
    }
    acc
}

/// `d/dx_k` of a monomial, evaluated at `p`.
fn eval_monomial_derivative<F: Ring>(m: &Monomial, k: usize, p: &PlanePoint<F>) -> F {
    let e = m.exp(k);
    if e == 0 {
        return F::zero();
    }
    let mut exps = [m.exp(0), m.exp(1), m.exp(2)];
    exps[k] -= 1;
    eval_monomial(&Monomial::from_exponents(&exps), p).mul(&F::from_i64(e as i64))
}

pub fn eval_plane<F: Ring>(poly: &PlanePolynomial<F>, p: &PlanePoint<F>) -> F {
    poly.terms().fold(F::zero(), |acc, (m, c)| acc.add(&c.mul(&eval_monomial(m, p))))
}

/// The `r` blown-up points: `(1:0:0), (0:1:0), (0:0:1), (1:1:1)` followed by
/// `(1:a:b), (1:c:d)` for six points or `(1:a_k:b_k)` for seven.
#[derive(Clone, Debug)]
pub struct PointConfig<F> {
    r: usize,
    params: Vec<F>,
    points: Vec<PlanePoint<F>>,
}

impl<F: Field> PointConfig<F> {
    /// `params` lists `a, b, c, d` (six points) or `a1, b1, a2, b2, a3, b3`.
    pub fn new(r: usize, params: Vec<F>) -> Result<Self> {
        let expected = parameter_names(r)?.len();
        if params.len() != expected {
            return Err(Error::InvalidInput(format!(
                "r={r} needs {expected} parameters, got {}",
                params.len()
            )));
        }
        let (zero, one) = (F::zero(), F::one());
        let mut points = vec![
            [one.clone(), zero.clone(), zero.clone()],
            [zero.clone(), one.clone(), zero.clone()],
            [zero.clone(), zero.clone(), one.clone()],
            [one.clone(), one.clone(), one.clone()],
        ];
        for pair in params.chunks(2) {
            points.push([one.clone(), pair[0].clone(), pair[1].clone()]);
        }
        Ok(PointConfig { r, params, points })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn params(&self) -> &[F] {
        &self.params
    }

    /// Point `p_i`, 1-indexed.
    pub fn point(&self, i: usize) -> &PlanePoint<F> {
        &self.points[i - 1]
    }

    /// Checks the general position conditions and returns the first
    /// violation found.
    pub fn general_position(&self) -> std::result::Result<(), Degeneracy> {
        let r = self.r;
        for i in 1..=r {
            for j in i + 1..=r {
                for k in j + 1..=r {
                    let m = Matrix::from_rows(vec![
                        self.point(i).to_vec(),
                        self.point(j).to_vec(),
                        self.point(k).to_vec(),
                    ]);
                    if m.determinant().is_zero() {
                        return Err(Degeneracy::Collinear(i, j, k));
                    }
                }
            }
        }
        let conic = plane_monomials(2);
        for omit in subsets_of_size(r, r - 6) {
            let pts: Vec<usize> = (1..=r).filter(|i| !omit.contains(i)).collect();
            let rows = pts.iter().map(|&i| self.monomial_row(&conic, i)).collect();
            if Matrix::from_rows(rows).determinant().is_zero() {
                return Err(Degeneracy::OnConic(pts));
            }
        }
        if r == 7 {
            for i in 1..=7 {
                if self.singular_cubic_matrix(i).rank() != 9 {
                    return Err(Degeneracy::SingularCubic(i));
                }
            }
        }
        Ok(())
    }

    fn monomial_row(&self, monos: &[Monomial], i: usize) -> Vec<F> {
        monos.iter().map(|m| eval_monomial(m, self.point(i))).collect()
    }

    /// Rows: the six other points, then the three partial derivatives at
    /// `p_i`.
    fn singular_cubic_matrix(&self, i: usize) -> Matrix<F> {
        let cubic = plane_monomials(3);
        let mut rows: Vec<Vec<F>> = (1..=7).filter(|&j| j != i).map(|j| self.monomial_row(&cubic, j)).collect();
        for k in 0..3 {
            rows.push(cubic.iter().map(|m| eval_monomial_derivative(m, k, self.point(i))).collect());
        }
        Matrix::from_rows(rows)
    }

    /// The plane polynomial of the generator attached to `label`.
    ///
    /// Non-exceptional curves are realized as the determinant of the
    /// interpolation conditions stacked over the generic monomial row. The
    /// determinant fixes the scale; no further normalization is applied.
    pub fn realize_section(&self, label: &CurveLabel) -> Result<PlanePolynomial<F>> {
        let pv = plane_vars();
        let (monos, rows): (Vec<Monomial>, Vec<Vec<F>>) = match label {
            CurveLabel::E(_) => return Ok(Poly::constant(F::one()).with_vars(&pv)),
            CurveLabel::Line(i, j) => {
                let monos = plane_monomials(1);
                let rows = vec![self.point(*i as usize).to_vec(), self.point(*j as usize).to_vec()];
                (monos, rows)
            }
            CurveLabel::Conic(missing) => {
                let monos = plane_monomials(2);
                let rows = (1..=self.r)
                    .filter(|i| !missing.contains(&(*i as u8)))
                    .map(|i| self.monomial_row(&monos, i))
                    .collect();
                (monos, rows)
            }
            CurveLabel::Cubic(i) => {
                if self.r != 7 {
                    return Err(Error::InvalidInput(format!("{label} needs seven points")));
                }
                let m = self.singular_cubic_matrix(*i as usize);
                let rows = (0..m.nrows()).map(|k| m.row(k).to_vec()).collect();
                (plane_monomials(3), rows)
            }
        };
        let n = monos.len();
        debug_assert_eq!(rows.len(), n - 1);
        let m = Matrix::from_rows(rows);
        let mut poly = Poly::zero_in(&pv);
        for (j, mono) in monos.iter().enumerate() {
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let mut cof = m.select_columns(&cols).determinant();
            if (n - 1 + j) % 2 == 1 {
                cof = cof.neg();
            }
            poly.add_term(mono.clone(), cof);
        }
        if poly.is_zero() {
            return Err(Error::GeneralPosition(format!("{label} is not unique")));
        }
        Ok(poly)
    }
}

impl PointConfig<RatFunc> {
    /// The configuration over the field of rational functions in the
    /// parameters.
    pub fn symbolic(r: usize) -> Result<Self> {
        let names = parameter_names(r)?;
        let v = vars(&names);
        Self::new(r, (0..names.len()).map(|i| RatFunc::var(&v, i)).collect())
    }

    pub fn param_vars(&self) -> Vars {
        vars(&parameter_names(self.r).expect("valid r"))
    }
}

impl PointConfig<Rational> {
    pub fn numeric(r: usize, params: Vec<Rational>) -> Result<Self> {
        Self::new(r, params)
    }
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// The condition a degenerate configuration violates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Degeneracy {
    Collinear(usize, usize, usize),
    OnConic(Vec<usize>),
    SingularCubic(usize),
}

impl fmt::Display for Degeneracy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degeneracy::Collinear(i, j, k) => write!(f, "p{i}, p{j}, p{k} are collinear"),
            Degeneracy::OnConic(pts) => {
                let names: Vec<String> = pts.iter().map(|i| format!("p{i}")).collect();
                write!(f, "{} lie on a conic", names.join(", "))
            }
            Degeneracy::SingularCubic(i) => {
                write!(f, "cubics through all points singular at p{i} are not unique")
            }
        }
    }
}

impl From<Degeneracy> for Error {
    fn from(d: Degeneracy) -> Self {
        Error::GeneralPosition(d.to_string())
    }
}

/// A relation `sum_j c_j xi_j` among the pair products of a ruling.
#[derive(Clone, Debug, PartialEq)]
pub struct CoxRelation<F> {
    pub ruling: DivisorClass,
    /// Pair whose coefficient is normalized to 1, or `None` for an
    /// unanchored kernel vector.
    pub slot: Option<usize>,
    pub anchors: Option<(usize, usize)>,
    /// One coefficient per pair of the ruling.
    pub coeffs: Vec<F>,
}

impl<F: Field> CoxRelation<F> {
    /// `(alpha, beta)`: the coefficients on the two anchor pairs.
    pub fn alpha_beta(&self) -> Option<(F, F)> {
        let (a, b) = self.anchors?;
        Some((self.coeffs[a].clone(), self.coeffs[b].clone()))
    }

    pub fn nonzero_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

/// Generators of the Cox ring realized for one point configuration.
#[derive(Clone, Debug)]
pub struct CoxRing<F> {
    surface: Surface,
    config: PointConfig<F>,
    sections: Vec<PlanePolynomial<F>>,
}

impl<F: Field> CoxRing<F> {
    pub fn new(config: PointConfig<F>) -> Result<Self> {
        config.general_position()?;
        let surface = Surface::new(config.r())?;
        let sections = surface
            .curves()
            .par_iter()
            .map(|c| config.realize_section(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(CoxRing { surface, config, sections })
    }

    pub fn surface(&self) -> &Surface {
        &self.surface
    }

    pub fn config(&self) -> &PointConfig<F> {
        &self.config
    }

    pub fn r(&self) -> usize {
        self.config.r()
    }

    /// Section of curve number `i` in coordinate order.
    pub fn section(&self, i: usize) -> &PlanePolynomial<F> {
        &self.sections[i]
    }

    pub fn sections(&self) -> &[PlanePolynomial<F>] {
        &self.sections
    }

    pub fn pair_indices(&self, ruling: &Ruling) -> Vec<(usize, usize)> {
        ruling.pairs.iter().map(|(a, b)| (self.surface.index_of(a), self.surface.index_of(b))).collect()
    }

    /// Coefficient matrix of the pair products: one column per pair, one row
    /// per monomial occurring in some product.
    pub fn realization_matrix(&self, ruling: &Ruling) -> Matrix<F> {
        let products: Vec<PlanePolynomial<F>> = self
            .pair_indices(ruling)
            .into_iter()
            .map(|(a, b)| self.sections[a].mul(&self.sections[b]))
            .collect();
        let mut rows: BTreeMap<Monomial, Vec<F>> = BTreeMap::new();
        for (j, p) in products.iter().enumerate() {
            for (m, c) in p.terms() {
                rows.entry(m.clone()).or_insert_with(|| vec![F::zero(); products.len()])[j] = c.clone();
            }
        }
        Matrix::from_rows(rows.into_values().collect())
    }

    /// Relations of a (1)-ruling in anchored form: for every pair `s` other
    /// than the anchors, `xi_s + alpha xi_a1 + beta xi_a2`.
    pub fn ruling_relations(&self, ruling: &Ruling, anchors: (usize, usize)) -> Result<Vec<CoxRelation<F>>> {
        let n = ruling.pairs.len();
        let (a1, a2) = anchors;
        if a1 == a2 || a1 >= n || a2 >= n {
            return Err(Error::AnchorMismatch(format!("anchors {a1}, {a2} for {}", ruling.name())));
        }
        let m = self.realization_matrix(ruling);
        let rank = m.rank();
        if rank != 2 {
            return Err(Error::KernelDimension { context: ruling.name(), expected: n - 2, found: n - rank });
        }
        let mut out = Vec::with_capacity(n - 2);
        for s in (0..n).filter(|&s| s != a1 && s != a2) {
            let kernel = m.select_columns(&[s, a1, a2]).kernel_basis();
            if kernel.len() != 1 {
                return Err(Error::KernelDimension {
                    context: format!("{} slot {s}", ruling.name()),
                    expected: 1,
                    found: kernel.len(),
                });
            }
            let v = &kernel[0];
            let lead = v[0].inv().ok_or_else(|| Error::ZeroFactor(format!("{} slot {s}", ruling.name())))?;
            let mut coeffs = vec![F::zero(); n];
            coeffs[s] = F::one();
            coeffs[a1] = v[1].mul(&lead);
            coeffs[a2] = v[2].mul(&lead);
            if coeffs[a1].is_zero() || coeffs[a2].is_zero() {
                return Err(Error::ZeroFactor(format!("{} slot {s}", ruling.name())));
            }
            out.push(CoxRelation { ruling: ruling.class.clone(), slot: Some(s), anchors: Some(anchors), coeffs });
        }
        Ok(out)
    }

    /// Kernel basis of the realization matrix, unanchored. Used for the
    /// anticanonical ruling of seven points.
    pub fn kernel_relations(&self, ruling: &Ruling) -> Vec<CoxRelation<F>> {
        self.realization_matrix(ruling)
            .kernel_basis()
            .into_iter()
            .map(|coeffs| CoxRelation { ruling: ruling.class.clone(), slot: None, anchors: None, coeffs })
            .collect()
    }

    /// All relations: anchored at the first two pairs for every (1)-ruling,
    /// plus the kernel of `-K_7` for seven points.
    pub fn all_relations(&self) -> Result<Vec<CoxRelation<F>>> {
        let ones = self.surface.rulings(1);
        let mut out: Vec<CoxRelation<F>> = ones
            .par_iter()
            .map(|rl| self.ruling_relations(rl, (0, 1)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        if self.r() == 7 {
            for rl in self.surface.rulings(2) {
                let rels = self.kernel_relations(&rl);
                if rels.len() != 25 {
                    return Err(Error::KernelDimension { context: rl.name(), expected: 25, found: rels.len() });
                }
                out.extend(rels);
            }
        }
        Ok(out)
    }

    /// The point of the Cox ring's spectrum over the plane point `q`: each
    /// generator evaluated at `q`, exceptional ones equal to 1.
    pub fn torsor_point(&self, q: &PlanePoint<F>) -> Result<Vec<F>> {
        let mut out = Vec::with_capacity(self.sections.len());
        for (i, s) in self.sections.iter().enumerate() {
            let v = eval_plane(s, q);
            if v.is_zero() {
                return Err(Error::ZeroCoordinate(self.surface.label(i).name()));
            }
            out.push(v);
        }
        Ok(out)
    }

    /// Value of a relation at a coordinate vector.
    pub fn eval_relation(&self, rel: &CoxRelation<F>, point: &[F]) -> F {
        let ruling = self
            .surface
            .ruling_of_class(&rel.ruling)
            .expect("relation belongs to a ruling of this surface");
        self.pair_indices(&ruling)
            .iter()
            .zip(&rel.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .fold(F::zero(), |acc, (&(a, b), c)| acc.add(&c.mul(&point[a].mul(&point[b]))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn numeric6() -> PointConfig<Rational> {
        PointConfig::numeric(6, vec![rat(2, 1), rat(3, 1), rat(5, 1), rat(7, 1)]).unwrap()
    }

    #[test]
    fn lines_through_the_standard_points() {
        let cfg = numeric6();
        let z = Poly::var(&plane_vars(), 2);
        assert_eq!(cfg.realize_section(&CurveLabel::Line(1, 2)).unwrap(), z);
        let (x, y) = (Poly::var(&plane_vars(), 0), Poly::var(&plane_vars(), 1));
        // det[p3; p4; X] = y - x
        assert_eq!(cfg.realize_section(&CurveLabel::Line(3, 4)).unwrap(), y.sub(&x));
    }

    #[test]
    fn degenerate_configurations() {
        let cfg = PointConfig::numeric(6, vec![rat(1, 1), rat(1, 1), rat(5, 1), rat(7, 1)]).unwrap();
        assert!(matches!(cfg.general_position(), Err(Degeneracy::Collinear(..))));
        assert!(numeric6().general_position().is_ok());
        assert!(PointConfig::symbolic(6).unwrap().general_position().is_ok());
    }

    #[test]
    fn sections_vanish_at_their_points() {
        let ring = CoxRing::new(numeric6()).unwrap();
        let s = ring.surface().clone();
        for (i, label) in s.curves().iter().enumerate() {
            let class = label.class(6);
            for p in 1..=6 {
                let v = eval_plane(ring.section(i), ring.config().point(p));
                assert_eq!(v.is_zero(), class.multiplicity(p) > 0, "{label} at p{p}");
            }
        }
    }

    #[test]
    fn relation_counts_and_shape() {
        let ring = CoxRing::new(numeric6()).unwrap();
        let rels = ring.all_relations().unwrap();
        assert_eq!(rels.len(), 81);
        assert!(rels.iter().all(|r| r.nonzero_count() == 3));
        let q = [rat(2, 1), rat(-3, 1), rat(11, 1)];
        let pt = ring.torsor_point(&q).unwrap();
        for rel in &rels {
            assert!(ring.eval_relation(rel, &pt).is_zero());
        }
    }

    #[test]
    fn points_on_lines_are_rejected() {
        let ring = CoxRing::new(numeric6()).unwrap();
        let q = [rat(1, 1), rat(4, 1), rat(0, 1)];
        assert_eq!(ring.torsor_point(&q), Err(Error::ZeroCoordinate("m12".into())));
    }
}
