//! Certificates: the rescaled torsor points satisfy every cone equation
//! exactly.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use super::{flatten, Rescaling};
use crate::algebra::{
    div_exact, format_rational, gcd, rat, vars, Field, Monomial, MultiPolynomial, Poly, RatFunc, Rational, Ring,
};
use crate::coxring::{parameter_names, PlanePoint, PointConfig};
use crate::error::{Error, Result};
use crate::homspace::{ConeEquation, EquationTag};

/// Attempts per random draw before giving up on a degenerate specialization.
pub const MAX_RESAMPLES: usize = 100;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    /// Only the equations `p_D` for `D` in `M_r`.
    Membership,
    #[default]
    All,
}

fn random_nonzero(rng: &mut ChaCha8Rng) -> Rational {
    let mut n = 0;
    while n == 0 {
        n = rng.gen_range(-12i64..=12);
    }
    rat(n, rng.gen_range(1i64..=5))
}

/// Random surface parameters. Not necessarily in general position.
pub fn sample_config(r: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Rational>> {
    Ok((0..parameter_names(r)?.len()).map(|_| random_nonzero(rng)).collect())
}

pub fn sample_plane_point(rng: &mut ChaCha8Rng) -> PlanePoint<Rational> {
    [random_nonzero(rng), random_nonzero(rng), random_nonzero(rng)]
}

/// Indices of the equations checked under `scope`.
pub fn scoped_equations<F: Field>(resc: &Rescaling<F>, scope: Scope) -> Result<Vec<usize>> {
    match scope {
        Scope::All => Ok((0..resc.equations.len()).collect()),
        Scope::Membership => {
            let classes: Vec<_> = resc.surface().membership_set()?.into_iter().map(|r| r.class).collect();
            Ok((0..resc.equations.len())
                .filter(|&i| {
                    let e = &resc.equations[i];
                    classes.contains(&e.class) && !matches!(e.tag, EquationTag::VDiag(_))
                })
                .collect())
        }
    }
}

/// Residuals of the equations in `eqs` at each rescaled sample point, one
/// row per sample.
pub fn certify_embedding<F: Field>(
    resc: &Rescaling<F>,
    factors: &[F],
    samples: &[PlanePoint<F>],
    eqs: &[usize],
) -> Result<Vec<Vec<F>>> {
    if let Some(i) = factors.iter().position(Ring::is_zero) {
        return Err(Error::ZeroFactor(resc.surface().label(i).symbol()));
    }
    samples
        .par_iter()
        .map(|q| {
            let pt = resc.ring.torsor_point(q)?;
            let scaled: Vec<F> = pt.iter().zip(factors).map(|(x, f)| x.mul(f)).collect();
            Ok(eqs.iter().map(|&e| resc.equations[e].eval(&scaled)).collect())
        })
        .collect()
}

/// Number of nonzero residuals when every factor is 1.
pub fn negative_control<F: Field>(resc: &Rescaling<F>, samples: &[PlanePoint<F>]) -> Result<usize> {
    let ones = vec![F::one(); resc.surface().len()];
    let all: Vec<usize> = (0..resc.equations.len()).collect();
    let res = certify_embedding(resc, &ones, samples, &all)?;
    Ok(res.iter().flatten().filter(|x| !x.is_zero()).count())
}

fn digest(s: &str) -> String {
    hex::encode(Sha256::digest(s.as_bytes()))
}

fn point_strings(q: &PlanePoint<Rational>) -> [String; 3] {
    [format_rational(&q[0]), format_rational(&q[1]), format_rational(&q[2])]
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundRecord {
    pub symbol: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expression: Option<String>,
    pub digest: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct LeftoverRecord {
    pub condition: String,
    pub vanishes: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleRecord {
    pub point: [String; 3],
    pub equations_zero: usize,
    pub failing: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EquationStatus {
    pub tag: String,
    pub ruling: String,
    pub zero_at: usize,
    pub samples: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct NegativeControl {
    pub nonzero_residuals: usize,
    /// The unrescaled point must fail somewhere.
    pub detected: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub r: usize,
    pub mode: String,
    pub seed: Option<u64>,
    pub scope: Scope,
    pub parameters: BTreeMap<String, String>,
    pub resamples: usize,
    pub free_symbols: Vec<String>,
    pub free_values: Vec<String>,
    pub bound: Vec<BoundRecord>,
    pub leftovers: Vec<LeftoverRecord>,
    pub samples: Vec<SampleRecord>,
    pub equations: Vec<EquationStatus>,
    pub negative_control: NegativeControl,
    pub pass: bool,
    pub wall_clock_ms: u128,
}

/// Inputs of a specialized run.
#[derive(Clone, Debug)]
pub struct RunOptions {
    pub r: usize,
    pub params: Option<Vec<Rational>>,
    pub seed: u64,
    pub samples: usize,
    pub scope: Scope,
}

/// A specialized pipeline result, kept for callers that need the exact
/// values behind the certificate.
pub struct SpecializedRun {
    pub rescaling: Rescaling<Rational>,
    pub eta: Vec<Rational>,
    pub free: Vec<Rational>,
    pub factors: Vec<Rational>,
    pub samples: Vec<PlanePoint<Rational>>,
    pub certificate: Certificate,
}

fn is_degenerate(e: &Error) -> bool {
    matches!(
        e,
        Error::GeneralPosition(_)
            | Error::KernelDimension { .. }
            | Error::ZeroFactor(_)
            | Error::VanishingDivisor(_)
            | Error::ZeroCoordinate(_)
            | Error::DivisionByZero
    )
}

/// Full pipeline over a rational specialization: general position,
/// relations, conditions, solution, and the exact check at sampled torsor
/// points. Random draws come from ChaCha8 seeded with `seed`.
pub fn run_specialized(opts: &RunOptions) -> Result<SpecializedRun> {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut resamples = 0;
    let resc = loop {
        let params = match &opts.params {
            Some(p) => p.clone(),
            None => sample_config(opts.r, &mut rng)?,
        };
        match PointConfig::numeric(opts.r, params).and_then(Rescaling::build) {
            Ok(r) => break r,
            Err(e) if opts.params.is_none() && is_degenerate(&e) => {
                resamples += 1;
                if resamples >= MAX_RESAMPLES {
                    return Err(Error::DegeneracyExhausted(resamples));
                }
            }
            Err(e) => return Err(e),
        }
    };
    let s = resc.surface().clone();
    let a = &resc.assignment;
    let (eta, free, factors) = {
        let mut attempt = 0;
        loop {
            let eta: Vec<Rational> = (0..opts.r).map(|_| random_nonzero(&mut rng)).collect();
            let free: Vec<Rational> = (0..a.free_curves().len()).map(|_| random_nonzero(&mut rng)).collect();
            match a.factors(&s, &eta, &free) {
                Ok(f) => break (eta, free, f),
                Err(e) if is_degenerate(&e) => {
                    attempt += 1;
                    resamples += 1;
                    if attempt >= MAX_RESAMPLES {
                        return Err(Error::DegeneracyExhausted(attempt));
                    }
                }
                Err(e) => return Err(e),
            }
        }
    };
    let mut samples = Vec::with_capacity(opts.samples);
    let mut attempt = 0;
    while samples.len() < opts.samples {
        let q = sample_plane_point(&mut rng);
        if resc.ring.torsor_point(&q).is_ok() {
            samples.push(q);
        } else {
            attempt += 1;
            resamples += 1;
            if attempt >= MAX_RESAMPLES {
                return Err(Error::DegeneracyExhausted(attempt));
            }
        }
    }
    let eqs = scoped_equations(&resc, opts.scope)?;
    let residuals = certify_embedding(&resc, &factors, &samples, &eqs)?;
    let failing_control = negative_control(&resc, &samples)?;

    let names = parameter_names(opts.r)?;
    let parameters = names.iter().cloned().zip(resc.ring.config().params().iter().map(format_rational)).collect();
    let mut free_symbols: Vec<String> = (1..=opts.r).map(|i| format!("eta{i}")).collect();
    free_symbols.extend(a.free_vars().iter().cloned());
    let free_values = eta.iter().chain(&free).map(format_rational).collect();
    let bound = a
        .bound()
        .iter()
        .map(|&i| {
            let text = a.values()[i].to_string();
            BoundRecord {
                symbol: s.label(i).symbol(),
                digest: digest(&text),
                expression: (opts.r == 6).then_some(text),
            }
        })
        .collect();
    let leftovers: Vec<LeftoverRecord> = a
        .leftovers()
        .iter()
        .map(|l| LeftoverRecord { condition: l.condition.clone(), vanishes: l.residual.is_zero() })
        .collect();
    let sample_records: Vec<SampleRecord> = samples
        .iter()
        .zip(&residuals)
        .map(|(q, res)| SampleRecord {
            point: point_strings(q),
            equations_zero: res.iter().filter(|x| x.is_zero()).count(),
            failing: eqs
                .iter()
                .zip(res)
                .filter(|(_, x)| !x.is_zero())
                .map(|(&e, _)| resc.equations[e].tag.to_string())
                .collect(),
        })
        .collect();
    let equations: Vec<EquationStatus> = eqs
        .iter()
        .enumerate()
        .map(|(k, &e)| {
            let eq: &ConeEquation = &resc.equations[e];
            EquationStatus {
                tag: eq.tag.to_string(),
                ruling: eq.symbol.as_ref().map(|x| x.to_string()).unwrap_or_else(|| eq.class.to_string()),
                zero_at: residuals.iter().filter(|row| row[k].is_zero()).count(),
                samples: samples.len(),
            }
        })
        .collect();
    let all_zero = residuals.iter().flatten().all(Ring::is_zero);
    let negative = NegativeControl { nonzero_residuals: failing_control, detected: failing_control > 0 };
    let pass = all_zero && leftovers.iter().all(|l| l.vanishes) && negative.detected;
    let certificate = Certificate {
        r: opts.r,
        mode: "specialized".into(),
        seed: Some(opts.seed),
        scope: opts.scope,
        parameters,
        resamples,
        free_symbols,
        free_values,
        bound,
        leftovers,
        samples: sample_records,
        equations,
        negative_control: negative,
        pass,
        wall_clock_ms: started.elapsed().as_millis(),
    };
    Ok(SpecializedRun { rescaling: resc, eta, free, factors, samples, certificate })
}

#[derive(Clone, Debug, Serialize)]
pub struct SymbolicCertificate {
    pub r: usize,
    pub mode: String,
    pub free_symbols: Vec<String>,
    pub bound: Vec<BoundRecord>,
    pub leftovers: Vec<LeftoverRecord>,
    pub equations: Vec<EquationStatus>,
    pub pass: bool,
    pub wall_clock_ms: u128,
}

/// Lifts a plane polynomial into the variables `free ++ [x, y, z]`.
fn lift_plane<F: Field>(p: &Poly<F>, all: &crate::algebra::Vars, shift: usize) -> Poly<F> {
    let mut out = Poly::zero_in(all);
    for (m, c) in p.terms() {
        let mut exps = vec![0u16; shift];
        exps.extend_from_slice(m.exponents());
        out.add_term(Monomial::from_exponents(&exps), c.clone());
    }
    out
}

/// The generic rescaled torsor point, with coordinates polynomial in the
/// free factors (`eta'' = 1`) and the plane coordinates, over the field of
/// the configuration.
pub fn generic_rescaled_point<F: Field>(resc: &Rescaling<F>) -> Vec<Poly<F>> {
    let a = &resc.assignment;
    let mut names: Vec<String> = a.free_vars().iter().cloned().collect();
    names.extend(["x", "y", "z"].map(String::from));
    let all = vars(&names);
    let shift = a.free_vars().len();
    (0..resc.surface().len())
        .into_par_iter()
        .map(|i| a.values()[i].clone().with_vars(&all).mul(&lift_plane(resc.ring.section(i), &all, shift)))
        .collect()
}

fn lcm(a: &MultiPolynomial, b: &MultiPolynomial) -> MultiPolynomial {
    div_exact(&a.mul(b), &gcd(a, b)).expect("the gcd divides the product")
}

/// Coordinates scaled by a common denominator `L`, as polynomials over `Q`
/// in `params ++ free ++ [x, y, z]`. A quadric vanishes at the point iff it
/// vanishes at the scaled point, whose residual is `L^2` times the original.
fn clear_denominators(point: &[Poly<RatFunc>], params: &crate::algebra::Vars) -> Vec<MultiPolynomial> {
    let Some(first) = point.first() else { return Vec::new() };
    let mut names: Vec<String> = params.iter().cloned().collect();
    names.extend(first.vars().iter().cloned());
    let all = vars(&names);
    let shift = params.len();
    let one = MultiPolynomial::constant(rat(1, 1)).with_vars(&all);
    let scaled: Vec<(MultiPolynomial, MultiPolynomial)> = point
        .par_iter()
        .map(|p| {
            let den = p.terms().fold(one.clone(), |acc, (_, c)| lcm(&acc, &c.denom().clone().with_vars(&all)));
            let mut num = MultiPolynomial::zero_in(&all);
            for (m, c) in p.terms() {
                let mut exps = vec![0u16; shift];
                exps.extend_from_slice(m.exponents());
                let cofactor = div_exact(&den, &c.denom().clone().with_vars(&all)).expect("lcm");
                let mono = MultiPolynomial::term(&all, Monomial::from_exponents(&exps), rat(1, 1));
                num = num.add(&c.numer().clone().with_vars(&all).mul(&cofactor).mul(&mono));
            }
            (num, den)
        })
        .collect();
    let common = scaled.iter().fold(one, |acc, (_, d)| lcm(&acc, d));
    scaled
        .into_par_iter()
        .map(|(n, d)| n.mul(&div_exact(&common, &d).expect("lcm")))
        .collect()
}

/// Every cone equation vanishes identically on the generic rescaled torsor
/// point over `Q(params)`.
pub fn certify_symbolic(resc: &Rescaling<RatFunc>) -> Result<SymbolicCertificate> {
    let started = Instant::now();
    let s = resc.surface();
    let a = &resc.assignment;
    let params = vars(&parameter_names(s.r())?);
    let point = clear_denominators(&generic_rescaled_point(resc), &params);
    let residuals: Vec<MultiPolynomial> = resc.equations.par_iter().map(|e| e.eval(&point)).collect();
    let bound = a
        .bound()
        .iter()
        .map(|&i| {
            let text = flatten(&a.values()[i], &params).to_string();
            BoundRecord { symbol: s.label(i).symbol(), digest: digest(&text), expression: Some(text) }
        })
        .collect();
    let leftovers: Vec<LeftoverRecord> = a
        .leftovers()
        .iter()
        .map(|l| LeftoverRecord { condition: l.condition.clone(), vanishes: l.residual.is_zero() })
        .collect();
    let equations: Vec<EquationStatus> = resc
        .equations
        .iter()
        .zip(&residuals)
        .map(|(eq, res)| EquationStatus {
            tag: eq.tag.to_string(),
            ruling: eq.symbol.as_ref().map(|x| x.to_string()).unwrap_or_else(|| eq.class.to_string()),
            zero_at: usize::from(res.is_zero()),
            samples: 1,
        })
        .collect();
    let mut free_symbols: Vec<String> = (1..=s.r()).map(|i| format!("eta{i}")).collect();
    free_symbols.extend(a.free_vars().iter().cloned());
    let pass = residuals.iter().all(Ring::is_zero) && leftovers.iter().all(|l| l.vanishes);
    Ok(SymbolicCertificate {
        r: s.r(),
        mode: "symbolic".into(),
        free_symbols,
        bound,
        leftovers,
        equations,
        pass,
        wall_clock_ms: started.elapsed().as_millis(),
    })
}
