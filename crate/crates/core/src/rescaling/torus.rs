//! The Neron-Severi torus `(K^*)^{r+1}` acting through characters of the
//! Picard lattice.

use crate::algebra::Field;
use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, Surface};

/// `t_0^d * prod t_i^{c_i}` for the class `d H + sum c_i E_i`.
pub fn torus_character<F: Field>(class: &DivisorClass, t: &[F]) -> Result<F> {
    if t.len() != class.coeffs().len() {
        return Err(Error::MismatchedR(class.r(), t.len().saturating_sub(1)));
    }
    let mut acc = F::one();
    for (ti, &c) in t.iter().zip(class.coeffs()) {
        if c == 0 {
            continue;
        }
        let base = if c > 0 {
            ti.clone()
        } else {
            ti.inv().ok_or_else(|| Error::ZeroFactor("torus coordinate".into()))?
        };
        acc = acc.mul(&base.pow(c.unsigned_abs()));
    }
    if acc.is_zero() {
        return Err(Error::ZeroFactor("torus coordinate".into()));
    }
    Ok(acc)
}

/// Multiplies the factor of every curve by its character.
pub fn act_on_factors<F: Field>(s: &Surface, factors: &[F], t: &[F]) -> Result<Vec<F>> {
    factors.iter().enumerate().map(|(i, f)| Ok(f.mul(&torus_character(s.class(i), t)?))).collect()
}
