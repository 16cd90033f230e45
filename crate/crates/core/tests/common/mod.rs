#![allow(dead_code)]

use std::collections::BTreeSet;

use torsor::algebra::{parse_ratfunc, rat, vars, RatFunc, Ring, Vars};
use torsor::coxring::{CoxRing, PointConfig};
use torsor::homspace::{cone_equations, cubic_terms, psi_parametrize, LambdaRoute};
use torsor::lattice::{CurveLabel, Surface};
use torsor::rescaling::{flatten, membership_conditions, rescaling_vars, AnchorPolicy, Rescaling};

pub const G1: &str = "(a*d-b*c)";
pub const G2: &str = "((a-1)*(d-1)-(b-1)*(c-1))";
pub const G3: &str = "(d*(a-c)*(1-b)-c*(b-d)*(1-a))";

fn expand(src: &str) -> String {
    src.replace("G1", G1).replace("G2", G2).replace("G3", G3)
}

pub fn parse(src: &str, v: &Vars) -> RatFunc {
    parse_ratfunc(&expand(src), v).unwrap_or_else(|e| panic!("fixture `{src}`: {e}"))
}

pub fn same(a: &RatFunc, b: &RatFunc) -> bool {
    a.sub(b).is_zero()
}

pub fn params6() -> Vec<String> {
    ["a", "b", "c", "d"].map(String::from).to_vec()
}

/// The curve `E` of the ruling `E_1 + E`, the two listed conditions, and
/// whether the listing orders them opposite to the anchor roles.
pub struct ConditionFixture {
    pub curve: CurveLabel,
    pub g1: &'static str,
    pub g2: &'static str,
    pub swapped: bool,
}

pub fn condition_fixtures() -> Vec<ConditionFixture> {
    let l = |i, j| CurveLabel::Line(i, j);
    let q = |i| CurveLabel::Conic(vec![i]);
    let f = |curve, g1, g2, swapped| ConditionFixture { curve, g1, g2, swapped };
    vec![
        f(l(1, 2), "-eta3*mu23 - eta4*mu24 - b*eta5*mu25 - d*eta6*mu26", "eta1*mu12 + eta4*mu24 + eta5*mu25 + eta6*mu26", false),
        f(l(1, 3), "-eta1*mu13 + eta4*mu34 + eta5*mu35 + eta6*mu36", "eta2*mu23 + eta4*mu34 + a*eta5*mu35 + c*eta6*mu36", false),
        f(l(1, 4), "-eta1*mu14 + eta3*mu34 + (b-1)*eta5*mu45 + (1-d)*eta6*mu46", "-eta2*mu24 + eta3*mu34 + (b-a)*eta5*mu45 + (c-d)*eta6*mu46", false),
        f(l(1, 5), "-eta2*mu25 + a/b*eta3*mu35 + (a-b)/b*eta4*mu45 + G1/b*eta6*mu56", "-eta1*mu15 + 1/b*eta3*mu35 + (1-b)/b*eta4*mu45 + (d-b)/b*eta6*mu56", true),
        f(l(1, 6), "-eta1*mu16 + 1/d*eta3*mu36 + (d-1)/d*eta4*mu46 + (b-d)/d*eta5*mu56", "-eta2*mu26 + c/d*eta3*mu36 + (d-c)/d*eta4*mu46 - G1/d*eta5*mu56", false),
        f(q(2), "a*(c-d)*eta1*lambda2 + (d-1)*eta2*lambda1 - mu34*mu56 + mu36*mu45", "G1*eta1*lambda2 + (b-d)*eta2*lambda1 - mu35*mu46 - mu36*mu45", false),
        f(q(3), "b*(c-d)*eta1*lambda3 + (c-1)*eta3*lambda1 - mu24*mu56 + mu26*mu45", "G1*eta1*lambda3 + (a-c)*eta3*lambda1 - mu25*mu46 - mu26*mu45", false),
        f(q(4), "b*c*eta1*lambda4 + (b*c-b-c+1)*eta4*lambda1 - mu23*mu56 + mu26*mu35", "(a*d-b*c)*eta1*lambda4 + G2*eta4*lambda1 + mu25*mu36 - mu26*mu35", false),
        f(q(5), "(d-c)*eta1*lambda5 + G2*eta5*lambda1 - mu24*mu36 + mu26*mu34", "c*eta1*lambda5 + (a-c)*(1-b)*eta5*lambda1 - mu23*mu46 - mu26*mu34", true),
        f(q(6), "(b-a)*eta1*lambda6 + G2*eta6*lambda1 + mu24*mu35 - mu25*mu34", "a*eta1*lambda6 + (c-a)*(d-1)*eta6*lambda1 - mu23*mu45 + mu25*mu34", true),
    ]
}

/// Closed forms with every `eta'' = 1`, in the order listed. The `mu12`
/// entry carries `-mu34`; the printed `+mu34` contradicts `g[E1+m12,2]`
/// (see `PRINTED_MU12`).
pub const SOLUTIONS: [(&str, &str); 15] = [
    ("mu13", "mu34 + mu35 + mu36"),
    ("mu23", "-mu34 - a*mu35 - c*mu36"),
    ("mu14", "mu34 + (b-1)*mu45 + (1-d)*mu46"),
    ("mu24", "mu34 + (b-a)*mu45 + (c-d)*mu46"),
    ("mu15", "1/b*mu35 + (1-b)/b*mu45 + (d-b)/b*mu56"),
    ("mu25", "a/b*mu35 + (a-b)/b*mu45 + G1/b*mu56"),
    ("mu16", "1/d*mu36 + (d-1)/d*mu46 + (b-d)/d*mu56"),
    ("mu26", "c/d*mu36 + (d-c)/d*mu46 - G1/d*mu56"),
    ("lambda1", "-G1/G3*mu34*mu56 - a*(d-c)/G3*mu35*mu46 - c*(b-a)/G3*mu36*mu45"),
    ("lambda2", "(b-d)/G3*mu34*mu56 + (1-d)/G3*mu35*mu46 + (1-b)/G3*mu36*mu45"),
    ("mu12", "-mu34 - a/b*mu35 - c/d*mu36 + (a-b)*(b-1)/b*mu45 + (d-c)*(d-1)/d*mu46 + (b-d)*G1/(b*d)*mu56"),
    (
        "lambda3",
        "(a-c)/G3*mu34*mu56 + a*(1-c)/(b*G3)*mu35*mu46 + c*(1-a)/(d*G3)*mu36*mu45 + 1/(b*d)*mu45*mu46 - 1/d*mu45*mu56 + 1/b*mu46*mu56",
    ),
    (
        "lambda4",
        "G2/G3*mu34*mu56 - 1/(b*d)*mu35*mu36 + (1-d)*(c-d)*(a-1)/(d*G3)*mu35*mu46 - 1/d*mu35*mu56 + (1-c)*(b-1)*(a-b)/(b*G3)*mu36*mu45 - 1/b*mu36*mu56",
    ),
    (
        "lambda5",
        "1/d*mu34*mu36 - 1/d*mu34*mu46 + (b-d)*(1-a)*G1/(d*G3)*mu34*mu56 + a*G2/G3*mu35*mu46 + (b-1)*(a-b)*(a-c)/G3*mu36*mu45 - mu36*mu46",
    ),
    (
        "lambda6",
        "-1/b*mu34*mu35 - 1/b*mu34*mu45 + (1-c)*(b-d)*G1/(b*G3)*mu34*mu56 - mu35*mu45 + (d-1)*(c-d)*(a-c)/G3*mu35*mu46 + c*G2/G3*mu36*mu45",
    ),
];

pub const PRINTED_MU12: &str =
    "mu34 - a/b*mu35 - c/d*mu36 + (a-b)*(b-1)/b*mu45 + (d-c)*(d-1)/d*mu46 + (b-d)*G1/(b*d)*mu56";

/// `-(mu24 + mu25 + mu26)`: the listed `g[E1+m12,2]` with `eta'' = 1`,
/// evaluated at the listed first-stage values.
pub fn mu12_from_listing(all: &Vars) -> RatFunc {
    let get = |n: &str| parse(SOLUTIONS.iter().find(|(k, _)| *k == n).unwrap().1, all);
    get("mu24").add(&get("mu25")).add(&get("mu26")).neg()
}

/// Factors solved in the first stage (from the rulings through `E_2`'s
/// complement) and in the second.
pub const FIRST_STAGE: [&str; 10] = ["mu13", "mu23", "mu14", "mu24", "mu15", "mu25", "mu16", "mu26", "lambda1", "lambda2"];
pub const SECOND_STAGE: [&str; 5] = ["mu12", "lambda3", "lambda4", "lambda5", "lambda6"];

/// The nine `+1` monomials of the cubic form.
pub fn plus_one_terms() -> Vec<[CurveLabel; 3]> {
    let e = CurveLabel::E;
    let m = CurveLabel::Line;
    let q = |i| CurveLabel::Conic(vec![i]);
    vec![
        [e(1), m(1, 2), q(2)],
        [e(2), m(2, 3), q(3)],
        [e(3), m(1, 3), q(1)],
        [e(4), m(4, 6), q(6)],
        [e(5), m(4, 5), q(4)],
        [e(6), m(5, 6), q(5)],
        [m(1, 4), m(2, 5), m(3, 6)],
        [m(1, 5), m(2, 6), m(3, 4)],
        [m(1, 6), m(2, 4), m(3, 5)],
    ]
}

pub fn plus_one_terms_match() -> bool {
    let s = Surface::new(6).unwrap();
    let expected: BTreeSet<[usize; 3]> = plus_one_terms()
        .iter()
        .map(|t| {
            let mut k = [s.index_of(&t[0]), s.index_of(&t[1]), s.index_of(&t[2])];
            k.sort_unstable();
            k
        })
        .collect();
    let terms = cubic_terms(&s);
    let plus: BTreeSet<[usize; 3]> = terms.iter().filter(|(_, &c)| c == 1).map(|(k, _)| *k).collect();
    terms.len() == 45 && terms.values().all(|&c| c == 1 || c == -1) && plus == expected
}

/// Generated conditions compared with the listing. Returns mismatches.
pub fn condition_mismatches() -> Vec<String> {
    let s = Surface::new(6).unwrap();
    let ring = CoxRing::new(PointConfig::<RatFunc>::symbolic(6).unwrap()).unwrap();
    let eqs = cone_equations(&s).unwrap();
    let conds = membership_conditions(&ring, &eqs, AnchorPolicy::Listing).unwrap();
    let params = vars(&params6());
    let rv = rescaling_vars(&s);
    let mut names = params6();
    names.extend(rv.iter().cloned());
    let all = vars(&names);
    let mut bad = Vec::new();
    if conds.len() != 10 {
        bad.push(format!("{} rulings instead of 10", conds.len()));
    }
    let e1 = s.class(s.exceptional(1)).clone();
    for fx in condition_fixtures() {
        let class = e1.add(&fx.curve.class(6));
        let Some(cp) = conds.iter().find(|c| c.ruling.class == class) else {
            bad.push(format!("no ruling E1+{}", fx.curve.symbol()));
            continue;
        };
        let got1 = flatten(&cp.g1.to_poly(&rv), &params);
        let got2 = flatten(&cp.g2.to_poly(&rv), &params);
        let (want1, want2) = (parse(fx.g1, &all), parse(fx.g2, &all));
        let (w1, w2) = if fx.swapped { (&want2, &want1) } else { (&want1, &want2) };
        if !same(&got1, w1) {
            bad.push(format!("g[E1+{},1]: got {got1}, expected {w1}", fx.curve.symbol()));
        }
        if !same(&got2, w2) {
            bad.push(format!("g[E1+{},2]: got {got2}, expected {w2}", fx.curve.symbol()));
        }
    }
    bad
}

pub fn symbolic_rescaling6() -> Rescaling<RatFunc> {
    Rescaling::build(PointConfig::<RatFunc>::symbolic(6).unwrap()).unwrap()
}

/// Solved factors compared with the closed forms. Returns mismatches.
pub fn solution_mismatches(resc: &Rescaling<RatFunc>) -> Vec<String> {
    let s = resc.surface();
    let a = &resc.assignment;
    let params = vars(&params6());
    let mut names = params6();
    names.extend(a.free_vars().iter().cloned());
    let all = vars(&names);
    let mut bad = Vec::new();
    let bound: Vec<String> = a.bound().iter().map(|&i| s.label(i).symbol()).collect();
    let expected: BTreeSet<&str> = SOLUTIONS.iter().map(|(n, _)| *n).collect();
    if bound.iter().map(String::as_str).collect::<BTreeSet<_>>() != expected {
        bad.push(format!("bound set {bound:?}"));
    }
    for (name, src) in SOLUTIONS {
        let i = s.curves().iter().position(|c| c.symbol() == name).unwrap();
        let got = flatten(&a.values()[i], &params);
        let want = parse(src, &all);
        if !same(&got, &want) {
            bad.push(format!("{name}: got {got}, expected {want}"));
        }
    }
    let first: BTreeSet<&str> = bound[..10].iter().map(String::as_str).collect();
    if first != FIRST_STAGE.into_iter().collect() {
        bad.push(format!("first stage {:?}", &bound[..10]));
    }
    let second: BTreeSet<&str> = bound[10..].iter().map(String::as_str).collect();
    if second != SECOND_STAGE.into_iter().collect() {
        bad.push(format!("second stage {:?}", &bound[10..]));
    }
    bad
}

// ---- parametrization displays ----

/// `mu'_{1,i}` and `lambda'_i` for six points, with `eta' = 1`.
pub const PSI6: [(&str, &str); 10] = [
    ("mu12", "mu23 + mu24 + mu25 + mu26"),
    ("mu13", "mu23 - mu34 - mu35 - mu36"),
    ("mu14", "-mu24 - mu34 + mu45 - mu46"),
    ("mu15", "-mu25 - mu35 - mu45 + mu56"),
    ("mu16", "-mu26 - mu36 + mu46 - mu56"),
    ("lambda2", "mu34*mu56 + mu35*mu46 + mu36*mu45 + lambda1"),
    ("lambda3", "-mu24*mu56 - mu25*mu46 - mu26*mu45 + lambda1"),
    ("lambda4", "-mu23*mu56 + mu25*mu36 - mu26*mu35 - lambda1"),
    ("lambda5", "-mu23*mu46 - mu24*mu36 + mu26*mu34 - lambda1"),
    ("lambda6", "-mu23*mu45 + mu24*mu35 - mu25*mu34 - lambda1"),
];

pub const PSI7_LAMBDA1: &str = "-mu23*mu45*mu67 + mu23*mu46*mu57 - mu23*mu47*mu56 + mu24*mu35*mu67 - mu24*mu36*mu57 \
    + mu24*mu37*mu56 - mu25*mu34*mu67 + mu25*mu36*mu47 - mu25*mu37*mu46 + mu26*mu34*mu57 \
    - mu26*mu35*mu47 + mu26*mu37*mu45 - mu27*mu34*mu56 + mu27*mu35*mu46 - mu27*mu36*mu45 \
    - mu23*lambda2 + mu23*lambda3 - mu24*lambda2 + mu24*lambda4 - mu25*lambda2 + mu25*lambda5 \
    - mu26*lambda2 + mu26*lambda6 - mu27*lambda2 + mu27*lambda7 - mu34*lambda3 + mu34*lambda4 \
    - mu35*lambda3 + mu35*lambda5 - mu36*lambda3 + mu36*lambda6 - mu37*lambda3 + mu37*lambda7 \
    - mu45*lambda4 + mu45*lambda5 - mu46*lambda4 + mu46*lambda6 - mu47*lambda4 + mu47*lambda7 \
    - mu56*lambda5 + mu56*lambda6 - mu57*lambda5 + mu57*lambda7 - mu67*lambda6 + mu67*lambda7";

/// The symbolic point with every `eta' = 1` and the other coordinates of
/// `N(E_1)_0` free, over the polynomial ring in those coordinates.
pub fn symbolic_psi(r: usize, route: LambdaRoute) -> (Surface, Vars, Vec<RatFunc>) {
    let s = Surface::new(r).unwrap();
    let eqs = cone_equations(&s).unwrap();
    let e1 = s.exceptional(1);
    let base_idx = s.neighbors(e1, 0);
    let free: Vec<usize> = base_idx.iter().copied().filter(|&i| !s.label(i).is_exceptional()).collect();
    let names: Vec<String> = free.iter().map(|&i| s.label(i).symbol()).collect();
    let v = vars(&names);
    let one = RatFunc::constant(rat(1, 1));
    let base: Vec<RatFunc> = base_idx
        .iter()
        .map(|&i| match free.iter().position(|&f| f == i) {
            Some(k) => RatFunc::var(&v, k),
            None => one.clone(),
        })
        .collect();
    let pt = psi_parametrize(&s, &eqs, &one, &base, route).unwrap();
    (s, v, pt)
}

/// Displayed six-point formulas that the parametrization does not reproduce.
pub fn psi6_mismatches() -> Vec<String> {
    let (s, v, pt) = symbolic_psi(6, LambdaRoute::V11);
    let mut bad = Vec::new();
    for (name, src) in PSI6 {
        let i = s.curves().iter().position(|c| c.symbol() == name).unwrap();
        let want = parse(src, &v);
        if !same(&pt[i], &want) {
            bad.push(format!("{name}': got {}, expected {want}", pt[i]));
        }
    }
    bad
}

/// The listed `lambda'_1` names the base coordinates `nu'_{1,l}` as
/// `lambda'_l`; with that renaming it must agree term for term.
pub fn psi7_lambda1_matches() -> bool {
    let (s, v, pt) = symbolic_psi(7, LambdaRoute::V11);
    let mut renamed = PSI7_LAMBDA1.to_string();
    for l in 2..=7 {
        renamed = renamed.replace(&format!("lambda{l}"), &format!("nu1{l}"));
    }
    same(&parse(&renamed, &v), &pt[s.index_of(&CurveLabel::Cubic(1))])
}

pub fn vanishes_on_cone(r: usize, route: LambdaRoute) -> usize {
    let (s, _, pt) = symbolic_psi(r, route);
    let eqs = cone_equations(&s).unwrap();
    eqs.iter().filter(|e| !e.eval(&pt).is_zero()).count()
}
