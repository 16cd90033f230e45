//! The Picard lattice of the plane blown up in `r` points.
//!
//! Classes are written in the basis `(H, E_1, ..., E_r)` with intersection
//! form `diag(1, -1, ..., -1)`. The (-1)-curves are found by exhaustive
//! search and named by their geometric origin: exceptional curves `E_i`,
//! lines `m_{i,j}`, conics and (for seven points) singular cubics.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Number of (-1)-curves on the blow-up in `r` general points.
pub fn curve_count(r: usize) -> usize {
    match r {
        1 => 1,
        2 => 3,
        3 => 6,
        4 => 10,
        5 => 16,
        6 => 27,
        7 => 56,
        _ => panic!("no (-1)-curve count for r={r}"),
    }
}

/// Number of roots of the root system attached to `r`.
pub fn root_count(r: usize) -> usize {
    match r {
        3 => 8,
        4 => 20,
        5 => 40,
        6 => 72,
        7 => 126,
        _ => panic!("no root count for r={r}"),
    }
}

pub fn root_system_name(r: usize) -> &'static str {
    match r {
        3 => "A2+A1",
        4 => "A4",
        5 => "D5",
        6 => "E6",
        7 => "E7",
        _ => "?",
    }
}

fn check_r(r: usize) -> Result<()> {
    if (3..=7).contains(&r) {
        Ok(())
    } else {
        Err(Error::UnsupportedR(r))
    }
}

/// A class `d H + c_1 E_1 + ... + c_r E_r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DivisorClass {
    coeffs: Vec<i32>,
}

impl DivisorClass {
    /// `coeffs = [d, c_1, ..., c_r]`.
    pub fn new(coeffs: Vec<i32>) -> Self {
        assert!(!coeffs.is_empty());
        DivisorClass { coeffs }
    }

    pub fn zero(r: usize) -> Self {
        DivisorClass { coeffs: vec![0; r + 1] }
    }

    pub fn hyperplane(r: usize) -> Self {
        let mut c = Self::zero(r);
        c.coeffs[0] = 1;
        c
    }

    /// `E_i`, 1-indexed.
    pub fn exceptional(r: usize, i: usize) -> Self {
        let mut c = Self::zero(r);
        c.coeffs[i] = 1;
        c
    }

    pub fn canonical(r: usize) -> Self {
        let mut c = vec![1; r + 1];
        c[0] = -3;
        DivisorClass { coeffs: c }
    }

    pub fn anticanonical(r: usize) -> Self {
        Self::canonical(r).scale(-1)
    }

    pub fn r(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `H`.
    pub fn degree(&self) -> i32 {
        self.coeffs[0]
    }

    /// Coefficient of `E_i`, 1-indexed.
    pub fn coeff(&self, i: usize) -> i32 {
        self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[i32] {
        &self.coeffs
    }

    /// Multiplicity of the plane curve at `p_i`, i.e. `-coeff(i)`.
    pub fn multiplicity(&self, i: usize) -> i32 {
        -self.coeffs[i]
    }

    pub fn intersection(&self, other: &Self) -> Result<i32> {
        if self.r() != other.r() {
            return Err(Error::MismatchedR(self.r(), other.r()));
        }
        Ok(self.dot(other))
    }

    pub(crate) fn dot(&self, other: &Self) -> i32 {
        self.coeffs[0] * other.coeffs[0]
            - self.coeffs[1..].iter().zip(&other.coeffs[1..]).map(|(a, b)| a * b).sum::<i32>()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.r(), other.r());
        DivisorClass { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i32) -> Self {
        DivisorClass { coeffs: self.coeffs.iter().map(|a| a * k).collect() }
    }

    /// Self-intersection -2 and orthogonal to the canonical class.
    pub fn is_root(&self) -> bool {
        self.dot(self) == -2 && self.dot(&Self::canonical(self.r())) == 0
    }

    /// Self-intersection -1 and anticanonical degree 1.
    pub fn is_minus_one_class(&self) -> bool {
        self.dot(self) == -1 && self.dot(&Self::anticanonical(self.r())) == 1
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        let d = self.coeffs[0];
        if d != 0 {
            parts.push(match d {
                1 => "H".into(),
                -1 => "-H".into(),
                _ => format!("{d}H"),
            });
        }
        for (i, &c) in self.coeffs.iter().enumerate().skip(1) {
            if c == 0 {
                continue;
            }
            let body = match c.abs() {
                1 => format!("E{i}"),
                a => format!("{a}E{i}"),
            };
            if parts.is_empty() {
                parts.push(if c < 0 { format!("-{body}") } else { body });
            } else {
                parts.push(format!("{} {body}", if c < 0 { "-" } else { "+" }));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// Geometric name of a (-1)-curve. The derived ordering is the coordinate
/// order used throughout: exceptional curves, lines, conics, cubics, each
/// by index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CurveLabel {
    /// Exceptional divisor over `p_i`.
    E(u8),
    /// Strict transform of the line through `p_i` and `p_j`, `i < j`.
    Line(u8, u8),
    /// Strict transform of the conic through all points except the listed
    /// ones (one omitted point for `r = 6`, two for `r = 7`).
    Conic(Vec<u8>),
    /// Cubic through all seven points, singular at `p_i`.
    Cubic(u8),
}

impl CurveLabel {
    pub fn class(&self, r: usize) -> DivisorClass {
        match self {
            CurveLabel::E(i) => DivisorClass::exceptional(r, *i as usize),
            CurveLabel::Line(i, j) => {
                let mut c = DivisorClass::hyperplane(r);
                c.coeffs[*i as usize] = -1;
                c.coeffs[*j as usize] = -1;
                c
            }
            CurveLabel::Conic(missing) => {
                let mut c = vec![-1; r + 1];
                c[0] = 2;
                for &m in missing {
                    c[m as usize] = 0;
                }
                DivisorClass::new(c)
            }
            CurveLabel::Cubic(i) => {
                let mut c = vec![-1; r + 1];
                c[0] = 3;
                c[*i as usize] = -2;
                DivisorClass::new(c)
            }
        }
    }

    /// Recovers the label of a (-1)-class.
    pub fn from_class(class: &DivisorClass) -> Option<Self> {
        let r = class.r();
        let c = class.coeffs();
        let idx = |pred: &dyn Fn(i32) -> bool| -> Vec<u8> {
            (1..=r).filter(|&i| pred(c[i])).map(|i| i as u8).collect()
        };
        let label = match c[0] {
            0 => {
                let ones = idx(&|x| x == 1);
                (ones.len() == 1).then(|| CurveLabel::E(ones[0]))?
            }
            1 => {
                let m = idx(&|x| x == -1);
                (m.len() == 2).then(|| CurveLabel::Line(m[0], m[1]))?
            }
            2 => CurveLabel::Conic(idx(&|x| x == 0)),
            3 => {
                let m = idx(&|x| x == -2);
                (m.len() == 1).then(|| CurveLabel::Cubic(m[0]))?
            }
            _ => return None,
        };
        (label.class(r) == *class).then_some(label)
    }

    /// Geometric name, e.g. `E1`, `m12`, `Q3`, `Q12`, `C4`.
    pub fn name(&self) -> String {
        match self {
            CurveLabel::E(i) => format!("E{i}"),
            CurveLabel::Line(i, j) => format!("m{i}{j}"),
            CurveLabel::Conic(m) => format!("Q{}", m.iter().map(|i| i.to_string()).collect::<String>()),
            CurveLabel::Cubic(i) => format!("C{i}"),
        }
    }

    /// Name of the Cox generator: `eta`, `mu`, `nu` (conics for seven
    /// points), `lambda` (conics for six points, cubics for seven).
    pub fn symbol(&self) -> String {
        match self {
            CurveLabel::E(i) => format!("eta{i}"),
            CurveLabel::Line(i, j) => format!("mu{i}{j}"),
            CurveLabel::Conic(m) if m.len() == 1 => format!("lambda{}", m[0]),
            CurveLabel::Conic(m) => {
                format!("nu{}", m.iter().map(|i| i.to_string()).collect::<String>())
            }
            CurveLabel::Cubic(i) => format!("lambda{i}"),
        }
    }

    pub fn is_exceptional(&self) -> bool {
        matches!(self, CurveLabel::E(_))
    }
}

impl fmt::Display for CurveLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// All (-1)-curves for `r` points, by bounded exhaustive search over degree
/// `0..=3` and multiplicities `-1..=2`, sorted in coordinate order.
pub fn enumerate_minus_one_curves(r: usize) -> Result<Vec<CurveLabel>> {
    check_r(r)?;
    let mut found = Vec::new();
    let mut mult = vec![-1i32; r];
    loop {
        for d in 0..=3 {
            let mut coeffs = vec![d];
            coeffs.extend(mult.iter().map(|m| -m));
            let class = DivisorClass::new(coeffs);
            if class.is_minus_one_class() {
                let label = CurveLabel::from_class(&class).ok_or_else(|| {
                    Error::InvalidInput(format!("unlabelled (-1)-class {class}"))
                })?;
                found.push(label);
            }
        }
        if !odometer(&mut mult, -1, 2) {
            break;
        }
    }
    found.sort();
    debug_assert_eq!(found.len(), curve_count(r));
    Ok(found)
}

/// Advances `digits` through the box `[lo, hi]^n`; false once exhausted.
fn odometer(digits: &mut [i32], lo: i32, hi: i32) -> bool {
    for d in digits.iter_mut() {
        if *d < hi {
            *d += 1;
            return true;
        }
        *d = lo;
    }
    false
}

/// All roots: classes with `(a, a) = -2` orthogonal to `K`.
pub fn enumerate_roots(r: usize) -> Result<Vec<DivisorClass>> {
    check_r(r)?;
    let mut roots = Vec::new();
    let mut c = vec![-1i32; r];
    loop {
        for d in -2..=2 {
            let mut coeffs = vec![d];
            coeffs.extend_from_slice(&c);
            let class = DivisorClass::new(coeffs);
            if class.is_root() {
                roots.push(class);
            }
        }
        if !odometer(&mut c, -1, 1) {
            break;
        }
    }
    roots.sort();
    Ok(roots)
}

/// Reflection `v + (v, a) a` in the root `a`.
pub fn weyl_reflect(alpha: &DivisorClass, v: &DivisorClass) -> Result<DivisorClass> {
    if !alpha.is_root() {
        return Err(Error::NotARoot(alpha.to_string()));
    }
    let k = alpha.intersection(v)?;
    Ok(v.add(&alpha.scale(k)))
}

/// Name of a ruling. Six points: the ruling `-K_6 - E` is named by `E`.
/// Seven points: the families `D^(1)..D^(5)` indexed by point sets, and the
/// anticanonical class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RulingSymbol {
    Dual(CurveLabel),
    D1(u8),
    D2(u8, u8, u8),
    D3(u8, u8),
    D4(u8, u8, u8, u8),
    D5(u8),
    AntiCanonical,
}

impl RulingSymbol {
    pub fn of_class(class: &DivisorClass) -> Option<Self> {
        let r = class.r();
        if *class == DivisorClass::anticanonical(r) {
            return Some(RulingSymbol::AntiCanonical);
        }
        if r == 6 {
            let dual = DivisorClass::anticanonical(6).sub(class);
            return CurveLabel::from_class(&dual).map(RulingSymbol::Dual);
        }
        if r != 7 {
            return None;
        }
        let c = class.coeffs();
        let with = |v: i32| -> Vec<u8> { (1..=7).filter(|&i| c[i] == v).map(|i| i as u8).collect() };
        let sym = match c[0] {
            1 => {
                let m = with(-1);
                (m.len() == 1).then(|| RulingSymbol::D1(m[0]))?
            }
            2 => {
                let m = with(0);
                (m.len() == 3).then(|| RulingSymbol::D2(m[0], m[1], m[2]))?
            }
            3 => {
                let (i, j) = (with(0), with(-2));
                (i.len() == 1 && j.len() == 1).then(|| RulingSymbol::D3(i[0], j[0]))?
            }
            4 => {
                let m = with(-1);
                (m.len() == 4).then(|| RulingSymbol::D4(m[0], m[1], m[2], m[3]))?
            }
            5 => {
                let m = with(-1);
                (m.len() == 1).then(|| RulingSymbol::D5(m[0]))?
            }
            _ => return None,
        };
        Some(sym)
    }
}

impl fmt::Display for RulingSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RulingSymbol::Dual(e) => write!(f, "-K-{e}"),
            RulingSymbol::D1(i) => write!(f, "D1_{i}"),
            RulingSymbol::D2(i, j, k) => write!(f, "D2_{i},{j},{k}"),
            RulingSymbol::D3(i, j) => write!(f, "D3_{i},{j}"),
            RulingSymbol::D4(i, j, k, l) => write!(f, "D4_{i},{j},{k},{l}"),
            RulingSymbol::D5(i) => write!(f, "D5_{i}"),
            RulingSymbol::AntiCanonical => write!(f, "-K"),
        }
    }
}

/// A class that is a sum of two (-1)-curves meeting with multiplicity `k`,
/// with every such decomposition listed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ruling {
    pub class: DivisorClass,
    pub k: i32,
    /// Unordered pairs stored as `(smaller, larger)`, sorted.
    pub pairs: Vec<(CurveLabel, CurveLabel)>,
    pub symbol: Option<RulingSymbol>,
}

impl Ruling {
    /// Position of the pair containing `curve`.
    pub fn pair_with(&self, curve: &CurveLabel) -> Option<usize> {
        self.pairs.iter().position(|(a, b)| a == curve || b == curve)
    }

    /// Position of the pair `{a, b}`.
    pub fn pair_index(&self, a: &CurveLabel, b: &CurveLabel) -> Option<usize> {
        self.pairs.iter().position(|(x, y)| (x == a && y == b) || (x == b && y == a))
    }

    pub fn name(&self) -> String {
        match &self.symbol {
            Some(s) => s.to_string(),
            None => self.class.to_string(),
        }
    }
}

/// The (-1)-curves of one surface together with their classes and
/// intersection numbers.
#[derive(Clone, Debug)]
pub struct Surface {
    r: usize,
    curves: Vec<CurveLabel>,
    classes: Vec<DivisorClass>,
    index: HashMap<CurveLabel, usize>,
    gram: Vec<Vec<i32>>,
}

impl Surface {
    pub fn new(r: usize) -> Result<Self> {
        let curves = enumerate_minus_one_curves(r)?;
        let classes: Vec<DivisorClass> = curves.iter().map(|c| c.class(r)).collect();
        let index = curves.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        let gram = classes.iter().map(|a| classes.iter().map(|b| a.dot(b)).collect()).collect();
        Ok(Surface { r, curves, classes, index, gram })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn curves(&self) -> &[CurveLabel] {
        &self.curves
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn label(&self, i: usize) -> &CurveLabel {
        &self.curves[i]
    }

    pub fn class(&self, i: usize) -> &DivisorClass {
        &self.classes[i]
    }

    pub fn index_of(&self, label: &CurveLabel) -> usize {
        *self.index.get(label).unwrap_or_else(|| panic!("{label} is not a curve for r={}", self.r))
    }

    pub fn try_index_of(&self, label: &CurveLabel) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn intersection(&self, a: usize, b: usize) -> i32 {
        self.gram[a][b]
    }

    /// Curves meeting curve `e` with intersection number exactly `k`.
    pub fn neighbors(&self, e: usize, k: i32) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.gram[e][j] == k).collect()
    }

    /// Curves meeting curve `e` positively.
    pub fn neighbors_positive(&self, e: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.gram[e][j] > 0).collect()
    }

    pub fn exceptional(&self, i: usize) -> usize {
        self.index_of(&CurveLabel::E(i as u8))
    }

    /// All `k`-rulings, each with its complete pair list.
    pub fn rulings(&self, k: i32) -> Vec<Ruling> {
        let mut by_class: BTreeMap<DivisorClass, Vec<(CurveLabel, CurveLabel)>> = BTreeMap::new();
        for a in 0..self.len() {
            for b in a + 1..self.len() {
                if self.gram[a][b] == k {
                    let class = self.classes[a].add(&self.classes[b]);
                    by_class.entry(class).or_default().push((self.curves[a].clone(), self.curves[b].clone()));
                }
            }
        }
        let mut rulings: Vec<Ruling> = by_class
            .into_iter()
            .map(|(class, mut pairs)| {
                pairs.sort();
                let symbol = RulingSymbol::of_class(&class);
                Ruling { class, k, pairs, symbol }
            })
            .collect();
        let dual_order = |rl: &Ruling| match &rl.symbol {
            Some(RulingSymbol::Dual(e)) => Some(self.index_of(e)),
            _ => None,
        };
        rulings.sort_by(|x, y| {
            dual_order(x)
                .cmp(&dual_order(y))
                .then_with(|| x.symbol.cmp(&y.symbol))
                .then_with(|| x.class.cmp(&y.class))
        });
        rulings
    }

    /// The ruling with the given class, if any (searching `k = 1, 2`).
    pub fn ruling_of_class(&self, class: &DivisorClass) -> Option<Ruling> {
        (1..=2).flat_map(|k| self.rulings(k)).find(|rl| rl.class == *class)
    }

    /// The rulings whose cone equations cut out the cone near the locus
    /// where every exceptional coordinate is nonzero: `E_1 + E` for each `E`
    /// meeting `E_1` once, plus `E_2 + C_1` for seven points.
    pub fn membership_set(&self) -> Result<Vec<Ruling>> {
        if !(6..=7).contains(&self.r) {
            return Err(Error::UnsupportedR(self.r));
        }
        let e1 = self.exceptional(1);
        let rulings = self.rulings(1);
        let find = |class: &DivisorClass| {
            rulings.iter().find(|rl| rl.class == *class).cloned().expect("class is a (1)-ruling")
        };
        let mut out: Vec<Ruling> =
            self.neighbors(e1, 1).into_iter().map(|e| find(&self.classes[e1].add(&self.classes[e]))).collect();
        if self.r == 7 {
            let c1 = CurveLabel::Cubic(1).class(7);
            out.push(find(&DivisorClass::exceptional(7, 2).add(&c1)));
        }
        Ok(out)
    }
}

pub fn enumerate_rulings(r: usize, k: i32) -> Result<Vec<Ruling>> {
    Ok(Surface::new(r)?.rulings(k))
}

pub fn membership_set(r: usize) -> Result<Vec<Ruling>> {
    Surface::new(r)?.membership_set()
}
