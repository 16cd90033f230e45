//! Command-line front end. Tables go to standard output, certificates and
//! exports are JSON.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{format_rational, parse_rational, Field, RatFunc, Rational};
use crate::coxring::{parameter_names, PointConfig};
use crate::error::{Error, Result};
use crate::homspace::{cone_equations, equations_json};
use crate::lattice::{enumerate_minus_one_curves, enumerate_roots, enumerate_rulings, Surface};
use crate::rescaling::{
    certify_symbolic, flatten, membership_conditions, run_specialized, AnchorPolicy, ConditionPair, Rescaling,
    RunOptions, Scope,
};

/// Environment variable bounding the worker threads.
pub const THREADS_ENV: &str = "TORSOR_THREADS";

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "torsor", version, about = "Exact checks of rescaled Cox ring embeddings into the E6 and E7 cones")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List (-1)-curves, roots or rulings.
    Enumerate {
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum)]
        what: What,
    },
    /// Run the pipeline and write an embedding certificate.
    Verify(VerifyArgs),
    /// Write equations, conditions or solutions as JSON.
    Export(ExportArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum What {
    Curves,
    Roots,
    Rulings,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Symbolic,
    #[default]
    Specialized,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScopeArg {
    /// Only the equations of the rulings that define the conditions.
    Membership,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    H6Equations,
    H7Equations,
    GConditions,
    Solutions,
}

#[derive(clap::Args, Debug, Clone)]
pub struct VerifyArgs {
    #[arg(long)]
    pub r: usize,
    #[arg(long, value_enum, default_value = "specialized")]
    pub mode: Mode,
    /// Parameter bindings `a=1,b=2/3,...`.
    #[arg(long)]
    pub params: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 3)]
    pub samples: usize,
    #[arg(long, value_enum)]
    pub scope: Option<ScopeArg>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Allow the symbolic mode for seven points.
    #[arg(long)]
    pub force_symbolic: bool,
}

#[derive(clap::Args, Debug, Clone)]
pub struct ExportArgs {
    #[arg(long)]
    pub r: usize,
    #[arg(long, value_enum)]
    pub target: Target,
    /// Specialize the points; the default is symbolic for six points.
    #[arg(long)]
    pub params: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Anchor arrangement used for the conditions.
    #[arg(long, default_value = "elimination")]
    pub anchors: AnchorArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub force_symbolic: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AnchorArg {
    Elimination,
    Listing,
}

/// Validated inputs of `verify`.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub r: usize,
    pub mode: Mode,
    pub params: Option<Vec<(String, String)>>,
    pub seed: Option<u64>,
    pub scope: Scope,
    pub samples: usize,
    pub out: Option<PathBuf>,
    pub force_symbolic: bool,
    pub threads: Option<usize>,
}

fn check_r(r: usize) -> Result<()> {
    match r {
        6 | 7 => Ok(()),
        _ => Err(Error::UnsupportedR(r)),
    }
}

/// Parses `k=v,...` against the parameter names of `r`; every name must be
/// bound exactly once.
pub fn parse_params(r: usize, text: &str) -> Result<Vec<Rational>> {
    let names = parameter_names(r)?;
    let mut values: Vec<Option<Rational>> = vec![None; names.len()];
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::InvalidInput(format!("binding `{item}` is not of the form name=value")))?;
        let pos = names
            .iter()
            .position(|n| n == k.trim())
            .ok_or_else(|| Error::InvalidInput(format!("unknown parameter `{}` (expected {})", k.trim(), names.join(", "))))?;
        if values[pos].is_some() {
            return Err(Error::InvalidInput(format!("parameter `{}` bound twice", names[pos])));
        }
        let q = parse_rational(v).ok_or_else(|| Error::Parse(format!("`{}` is not a rational number", v.trim())))?;
        values[pos] = Some(q);
    }
    values
        .into_iter()
        .zip(&names)
        .map(|(v, n)| v.ok_or_else(|| Error::InvalidInput(format!("parameter `{n}` is not bound"))))
        .collect()
}

fn threads_from_env() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(Some)
            .map_err(|_| Error::InvalidInput(format!("{THREADS_ENV}={v} is not a thread count"))),
        Err(_) => Ok(None),
    }
}

impl RunConfig {
    pub fn from_args(args: &VerifyArgs) -> Result<Self> {
        check_r(args.r)?;
        if args.mode == Mode::Symbolic && args.r == 7 && !args.force_symbolic {
            return Err(Error::InvalidInput("symbolic mode for r=7 needs --force-symbolic".into()));
        }
        if args.mode == Mode::Symbolic && (args.params.is_some() || args.seed.is_some()) {
            return Err(Error::InvalidInput("symbolic mode takes no --params or --seed".into()));
        }
        if args.mode == Mode::Specialized && args.params.is_none() && args.seed.is_none() {
            return Err(Error::InvalidInput("specialized mode needs --params or --seed".into()));
        }
        if args.mode == Mode::Specialized && args.samples == 0 {
            return Err(Error::InvalidInput("--samples must be positive".into()));
        }
        let params = match &args.params {
            Some(p) => {
                let values = parse_params(args.r, p)?;
                Some(parameter_names(args.r)?.into_iter().zip(values.iter().map(format_rational)).collect())
            }
            None => None,
        };
        let scope = match args.scope {
            Some(ScopeArg::Membership) => Scope::Membership,
            Some(ScopeArg::All) | None => Scope::All,
        };
        Ok(RunConfig {
            r: args.r,
            mode: args.mode,
            params,
            // With explicit bindings the seed only drives the sample points.
            seed: if args.mode == Mode::Specialized { Some(args.seed.unwrap_or(0)) } else { None },
            scope,
            samples: args.samples,
            out: args.out.clone(),
            force_symbolic: args.force_symbolic,
            threads: threads_from_env()?,
        })
    }

    fn param_values(&self) -> Option<Vec<Rational>> {
        self.params
            .as_ref()
            .map(|p| p.iter().map(|(_, v)| parse_rational(v).expect("validated")).collect())
    }
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidInput(_)
        | Error::Parse(_)
        | Error::UnsupportedR(_)
        | Error::MismatchedR(..)
        | Error::GeneralPosition(_) => EXIT_INVALID,
        Error::DegeneracyExhausted(_) => EXIT_DEGENERATE,
        _ => EXIT_FAIL,
    }
}

fn emit(out: &Option<PathBuf>, value: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(value).expect("json values serialize") + "\n";
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display()))),
        None => {
            std::io::stdout().write_all(text.as_bytes()).ok();
            Ok(())
        }
    }
}

/// Rows of `enumerate`.
pub fn cmd_enumerate(r: usize, what: What) -> Result<Vec<String>> {
    Ok(match what {
        What::Curves => enumerate_minus_one_curves(r)?
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{:>3}  {:<8} {:<12} {}", i, c.symbol(), c.name(), c.class(r)))
            .collect(),
        What::Roots => enumerate_roots(r)?.iter().enumerate().map(|(i, c)| format!("{i:>3}  {c}")).collect(),
        What::Rulings => {
            let mut all = enumerate_rulings(r, 1)?;
            all.extend(enumerate_rulings(r, 2)?);
            all.iter()
                .map(|rl| {
                    let pairs: Vec<String> =
                        rl.pairs.iter().map(|(a, b)| format!("{}+{}", a.symbol(), b.symbol())).collect();
                    format!("{:<10} k={}  {:<24} {} pairs: {}", rl.name(), rl.k, rl.class.to_string(), rl.pairs.len(), pairs.join(" "))
                })
                .collect()
        }
    })
}

/// Runs `verify` and returns the certificate and whether it passed.
pub fn cmd_verify(cfg: &RunConfig) -> Result<(Value, bool)> {
    let (mut value, pass) = match cfg.mode {
        Mode::Symbolic => {
            let resc = Rescaling::build(PointConfig::symbolic(cfg.r)?)?;
            let cert = certify_symbolic(&resc)?;
            let pass = cert.pass;
            (serde_json::to_value(cert).expect("serializable"), pass)
        }
        Mode::Specialized => {
            let run = run_specialized(&RunOptions {
                r: cfg.r,
                params: cfg.param_values(),
                seed: cfg.seed.unwrap_or(0),
                samples: cfg.samples,
                scope: cfg.scope,
            })?;
            let pass = run.certificate.pass;
            (serde_json::to_value(run.certificate).expect("serializable"), pass)
        }
    };
    value
        .as_object_mut()
        .expect("certificates are objects")
        .insert("config".into(), serde_json::to_value(cfg).expect("serializable"));
    Ok((value, pass))
}

fn conditions_json<F: Field>(s: &Surface, conds: &[ConditionPair<F>], show: impl Fn(&F) -> String) -> Value {
    let list: Vec<Value> = conds
        .iter()
        .map(|cp| {
            let cond = |c: &crate::rescaling::Condition<F>| {
                json!({
                    "name": c.name,
                    "terms": c.terms.iter().map(|t| json!({
                        "curves": [s.label(t.a).symbol(), s.label(t.b).symbol()],
                        "coefficient": show(&t.coeff),
                    })).collect::<Vec<_>>(),
                })
            };
            let (a1, a2) = cp.anchors;
            let anchors = [a1, a2].map(|k| {
                let (a, b) = &cp.ruling.pairs[k];
                [a.symbol(), b.symbol()]
            });
            json!({
                "ruling": cp.ruling.name(),
                "class": cp.ruling.class.to_string(),
                "anchors": anchors,
                "g1": cond(&cp.g1),
                "g2": cond(&cp.g2),
            })
        })
        .collect();
    Value::Array(list)
}

fn solutions_json<F: Field>(resc: &Rescaling<F>, show: impl Fn(&crate::algebra::Poly<F>) -> String) -> Value {
    let s = resc.surface();
    let a = &resc.assignment;
    let mut free: Vec<String> = (1..=s.r()).map(|i| format!("eta{i}")).collect();
    free.extend(a.free_vars().iter().cloned());
    json!({
        "normalization": "eta'' = 1",
        "free": free,
        "solutions": a.bound().iter().map(|&i| json!({
            "curve": s.label(i).symbol(),
            "value": show(&a.values()[i]),
        })).collect::<Vec<_>>(),
        "stages": a.stages().iter().map(|st| json!({
            "ruling": st.ruling,
            "bound": st.bound.iter().map(|&i| s.label(i).symbol()).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "leftovers": a.leftovers().iter().map(|l| json!({
            "condition": l.condition,
            "vanishes": l.residual.is_zero(),
        })).collect::<Vec<_>>(),
    })
}

fn specialized_params(r: usize, args: &ExportArgs) -> Result<Option<Vec<Rational>>> {
    if let Some(p) = &args.params {
        return parse_params(r, p).map(Some);
    }
    if let Some(seed) = args.seed {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        return crate::rescaling::sample_config(r, &mut rng).map(Some);
    }
    if r == 7 && !args.force_symbolic {
        return Err(Error::InvalidInput("r=7 exports need --params, --seed or --force-symbolic".into()));
    }
    Ok(None)
}

pub fn cmd_export(args: &ExportArgs) -> Result<Value> {
    let r = args.r;
    check_r(r)?;
    let s = Surface::new(r)?;
    match args.target {
        Target::H6Equations | Target::H7Equations => {
            let want = if args.target == Target::H6Equations { 6 } else { 7 };
            if r != want {
                return Err(Error::InvalidInput(format!("this target needs --r {want}")));
            }
            Ok(equations_json(&s, &cone_equations(&s)?))
        }
        Target::GConditions => {
            let policy = match args.anchors {
                AnchorArg::Elimination => AnchorPolicy::Elimination,
                AnchorArg::Listing => AnchorPolicy::Listing,
            };
            let eqs = cone_equations(&s)?;
            match specialized_params(r, args)? {
                Some(p) => {
                    let ring = crate::coxring::CoxRing::new(PointConfig::numeric(r, p)?)?;
                    Ok(conditions_json(&s, &membership_conditions(&ring, &eqs, policy)?, format_rational))
                }
                None => {
                    let ring = crate::coxring::CoxRing::new(PointConfig::<RatFunc>::symbolic(r)?)?;
                    Ok(conditions_json(&s, &membership_conditions(&ring, &eqs, policy)?, RatFunc::to_string))
                }
            }
        }
        Target::Solutions => match specialized_params(r, args)? {
            Some(p) => {
                let resc = Rescaling::build(PointConfig::numeric(r, p)?)?;
                Ok(solutions_json(&resc, |v| v.to_string()))
            }
            None => {
                let cfg = PointConfig::<RatFunc>::symbolic(r)?;
                let params = cfg.param_vars();
                let resc = Rescaling::build(cfg)?;
                Ok(solutions_json(&resc, |v| flatten(v, &params).to_string()))
            }
        },
    }
}

fn configure_threads() -> Result<()> {
    if let Some(n) = threads_from_env()? {
        // A second initialization in the same process is harmless.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

/// Executes a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let result = configure_threads().and_then(|()| match cli.command {
        Command::Enumerate { r, what } => cmd_enumerate(r, what).map(|rows| {
            let mut out = std::io::stdout().lock();
            for row in &rows {
                if writeln!(out, "{row}").is_err() {
                    break;
                }
            }
            eprintln!("{} rows", rows.len());
            EXIT_PASS
        }),
        Command::Verify(args) => {
            let cfg = RunConfig::from_args(&args)?;
            let (cert, pass) = cmd_verify(&cfg)?;
            emit(&cfg.out, &cert)?;
            let zero = cert["equations"]
                .as_array()
                .map(|eqs| eqs.iter().filter(|e| e["zero_at"] == e["samples"]).count())
                .unwrap_or(0);
            let total = cert["equations"].as_array().map_or(0, Vec::len);
            eprintln!("{} ({zero}/{total} equations zero)", if pass { "PASS" } else { "FAIL" });
            Ok(if pass { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Export(args) => {
            let value = cmd_export(&args)?;
            emit(&args.out, &value)?;
            Ok(EXIT_PASS)
        }
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
