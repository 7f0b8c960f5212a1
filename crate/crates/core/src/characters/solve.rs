use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::WeightSystem;
use crate::algebra::{coproduct_reduced, TensorVector};
use crate::error::{Error, Result};
use crate::exec::{self, Mode};
use crate::graph::{catalog, enumerate_class_with, CanonicalGraph, Restriction};
use crate::linalg::{self, Solution};
use crate::rational::Rational;

/// One equation `Σ coeffs[i]·x_i + constant = 0` from `W(Δ_b Γ) = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub source: CanonicalGraph,
    pub expansion: TensorVector,
    pub coeffs: Vec<Rational>,
    pub constant: Rational,
    /// Γ is transpose-symmetric, so the equation holds automatically for
    /// symmetric weights.
    pub redundant: bool,
}

impl Constraint {
    pub fn is_trivial(&self) -> bool {
        self.constant.is_zero() && self.coeffs.iter().all(Zero::is_zero)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstraintSystem {
    pub order: usize,
    /// One representative per unknown (transpose orbit when symmetric).
    pub unknowns: Vec<CanonicalGraph>,
    pub equations: Vec<Constraint>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Unique,
    Affine { dim: usize },
    Infeasible,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Unique => f.write_str("unique"),
            Status::Affine { dim } => write!(f, "dim={dim}"),
            Status::Infeasible => f.write_str("infeasible"),
        }
    }
}

impl FromStr for Status {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unique" => Ok(Status::Unique),
            "infeasible" => Ok(Status::Infeasible),
            _ => s
                .strip_prefix("dim=")
                .and_then(|d| d.parse().ok())
                .map(|dim| Status::Affine { dim })
                .ok_or_else(|| Error::Precondition(format!("bad status {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub order: usize,
    #[serde(with = "status_str")]
    pub status: Status,
}

mod status_str {
    use super::Status;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(s: &Status, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&s.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Status, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug)]
pub struct SolveConfig {
    pub max_order: usize,
    pub restriction: Restriction,
    /// Fixed weights; must include `b_0`.
    pub normalization: Vec<(CanonicalGraph, Rational)>,
    pub multiplicative: bool,
    pub symmetric: bool,
    /// Skip equations from symmetric Γ when the symmetric flag is on.
    pub drop_redundant: bool,
    pub mode: Mode,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            max_order: 3,
            restriction: Restriction::Forest,
            normalization: default_normalization(),
            multiplicative: true,
            symmetric: true,
            drop_redundant: true,
            mode: Mode::default(),
        }
    }
}

impl SolveConfig {
    pub fn new(max_order: usize, restriction: Restriction) -> Self {
        SolveConfig { max_order, restriction, ..Self::default() }
    }
}

/// `W(b_0) = W(b_1) = 1`.
pub fn default_normalization() -> Vec<(CanonicalGraph, Rational)> {
    vec![(catalog::b0(), Rational::one()), (catalog::b1(), Rational::one())]
}

#[derive(Clone, Debug)]
pub struct SolveOutcome {
    pub weights: WeightSystem,
    pub report: Vec<ReportEntry>,
    pub systems: Vec<ConstraintSystem>,
    /// Forest-class solve, present when the full class became infeasible.
    pub fallback: Option<Box<SolveOutcome>>,
}

impl SolveOutcome {
    pub fn is_infeasible(&self) -> bool {
        self.report.iter().any(|r| r.status == Status::Infeasible)
    }

    pub fn is_unique(&self) -> bool {
        self.report.iter().all(|r| r.status == Status::Unique)
    }

    pub fn to_json(&self) -> Result<serde_json::Value> {
        Ok(serde_json::to_value(self.weights.to_json(&self.report)?)?)
    }
}

enum Lin {
    Known(Rational),
    Unknown(usize),
}

struct Order<'a> {
    n: usize,
    weights: &'a WeightSystem,
    fixed: &'a BTreeMap<CanonicalGraph, Rational>,
    index: BTreeMap<CanonicalGraph, usize>,
}

impl Order<'_> {
    fn value(&self, g: &CanonicalGraph) -> Result<Lin> {
        let w = self.weights;
        if g.n() < self.n || !w.restriction().admits(g.graph()) {
            return Ok(Lin::Known(w.weight(g)?));
        }
        let key = self.key(g);
        if let Some(v) = self.fixed.get(g).or_else(|| self.fixed.get(&key)) {
            return Ok(Lin::Known(v.clone()));
        }
        if w.is_multiplicative() && !g.is_prime() {
            let mut acc = Rational::one();
            for f in g.prime_factors() {
                acc *= w.weight(&f)?;
            }
            return Ok(Lin::Known(acc));
        }
        self.index
            .get(&key)
            .map(|&i| Lin::Unknown(i))
            .ok_or_else(|| Error::Unsolved { graph: g.to_string(), solved: w.solved_order() })
    }

    fn key(&self, g: &CanonicalGraph) -> CanonicalGraph {
        if self.weights.is_symmetric() {
            g.clone().min(g.transpose())
        } else {
            g.clone()
        }
    }
}

/// Builds one equation per Γ in the order-`n` class with three boundary
/// points. `weights` must be solved through `n − 1`; `fixed` holds
/// normalized order-`n` values.
pub fn assemble_constraints(
    weights: &WeightSystem,
    n: usize,
    fixed: &BTreeMap<CanonicalGraph, Rational>,
    mode: Mode,
) -> Result<ConstraintSystem> {
    let r = weights.restriction();
    let mut order = Order { n, weights, fixed, index: BTreeMap::new() };
    let mut unknowns = Vec::new();
    for g in enumerate_class_with(mode, n, 2, r) {
        let key = order.key(&g);
        let is_fixed = fixed.contains_key(&g) || fixed.contains_key(&key);
        let structural = g.is_prime() || (!weights.is_multiplicative() && !g.is_unit());
        if structural && !is_fixed && !order.index.contains_key(&key) {
            order.index.insert(key.clone(), unknowns.len());
            unknowns.push(key);
        }
    }
    let sources = enumerate_class_with(mode, n, 3, r);
    let order = &order;
    let width = unknowns.len();
    let equations = exec::map(mode, sources, |source| -> Result<Constraint> {
        let expansion = coproduct_reduced(&source)?;
        let mut coeffs = vec![Rational::zero(); width];
        let mut constant = Rational::zero();
        for (q, s, c) in expansion.iter() {
            match (order.value(q)?, order.value(s)?) {
                (Lin::Known(a), Lin::Known(b)) => constant += c * a * b,
                (Lin::Unknown(i), Lin::Known(b)) | (Lin::Known(b), Lin::Unknown(i)) => {
                    coeffs[i] += c * b
                }
                (Lin::Unknown(_), Lin::Unknown(_)) => {
                    return Err(Error::Precondition("two unknowns in one product".into()))
                }
            }
        }
        let redundant = weights.is_symmetric() && source.is_symmetric();
        Ok(Constraint { source, expansion, coeffs, constant, redundant })
    });
    let equations = equations.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(ConstraintSystem { order: n, unknowns, equations })
}

/// Exact solve of one order's system.
pub fn solve_system(system: &ConstraintSystem, drop_redundant: bool) -> Solution {
    let rows: Vec<(Vec<Rational>, Rational)> = system
        .equations
        .iter()
        .filter(|e| !(drop_redundant && e.redundant))
        .map(|e| (e.coeffs.clone(), -e.constant.clone()))
        .collect();
    linalg::solve(system.unknowns.len(), &rows)
}

/// Solves `W(Δ_b Γ) = 0` order by order through `max_order`.
pub fn solve_weights(config: &SolveConfig) -> Result<SolveOutcome> {
    let mut w = WeightSystem::new(config.restriction, config.multiplicative, config.symmetric);
    let mut by_order: BTreeMap<usize, BTreeMap<CanonicalGraph, Rational>> = BTreeMap::new();
    for (g, v) in &config.normalization {
        by_order.entry(g.n()).or_default().insert(g.clone(), v.clone());
    }
    let b0 = catalog::b0();
    match by_order.get(&0).and_then(|m| m.get(&b0)) {
        Some(v) => w.set(b0, v.clone())?,
        None => return Err(Error::Precondition("W(b0) normalization is required".into())),
    }
    let mut report = Vec::new();
    let mut systems = Vec::new();
    let empty = BTreeMap::new();
    for n in 1..=config.max_order {
        let fixed = by_order.get(&n).unwrap_or(&empty);
        for (g, v) in fixed {
            w.set(g.clone(), v.clone())?;
        }
        let system = assemble_constraints(&w, n, fixed, config.mode)?;
        let solution = solve_system(&system, config.drop_redundant);
        let (status, values) = match solution {
            Solution::Unique(x) => (Status::Unique, Some(x)),
            Solution::Affine { particular, dim } => (Status::Affine { dim }, Some(particular)),
            Solution::Infeasible => (Status::Infeasible, None),
        };
        report.push(ReportEntry { order: n, status });
        let Some(values) = values else {
            systems.push(system);
            break;
        };
        for (g, v) in system.unknowns.iter().zip(values) {
            w.set(g.clone(), v)?;
        }
        w.mark_solved(n);
        systems.push(system);
    }
    let mut outcome = SolveOutcome { weights: w, report, systems, fallback: None };
    if outcome.is_infeasible() && config.restriction == Restriction::Full {
        let forest = SolveConfig { restriction: Restriction::Forest, ..config.clone() };
        outcome.fallback = Some(Box::new(solve_weights(&forest)?));
    }
    Ok(outcome)
}

/// Graphs Γ of order `n` (within the restriction) with `W(Δ_b Γ) ≠ 0`.
pub fn cocycle_defects(w: &WeightSystem, n: usize) -> Result<Vec<(CanonicalGraph, Rational)>> {
    let mut out = Vec::new();
    for g in enumerate_class_with(Mode::default(), n, 3, w.restriction()) {
        let value = w.evaluate_tensor(&coproduct_reduced(&g)?)?;
        if !value.is_zero() {
            out.push((g, value));
        }
    }
    Ok(out)
}

/// Reads a weights file written by [`SolveOutcome::to_json`].
pub fn load_weights(json: &str) -> Result<WeightSystem> {
    Ok(WeightSystem::from_json(serde_json::from_str(json)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog::*;
    use crate::rational::int;

    #[test]
    fn order_two_full() {
        let out = solve_weights(&SolveConfig::new(2, Restriction::Full)).unwrap();
        assert!(out.is_unique());
        let w = &out.weights;
        for g in [bn_left(2), bn_right(2), b1_squared()] {
            assert_eq!(w.weight(&g).unwrap(), int(1), "{g}");
        }
        for n in 0..=2 {
            assert!(cocycle_defects(w, n).unwrap().is_empty());
        }
    }

    #[test]
    fn order_two_equations() {
        let out = solve_weights(&SolveConfig::new(2, Restriction::Full)).unwrap();
        let sys = &out.systems[1];
        assert_eq!(sys.unknowns, vec![bn_left(2).min(bn_right(2))]);
        let t2l = sys.equations.iter().find(|e| e.source == t2_left()).unwrap();
        assert_eq!(t2l.coeffs, vec![int(1)]);
        assert_eq!(t2l.constant, int(-1));
        let c2e = sys.equations.iter().find(|e| e.source == c2()).unwrap();
        assert!(c2e.redundant);
        assert!(c2e.is_trivial());
        assert!(out.systems[0].equations.iter().all(Constraint::is_trivial));
    }

    #[test]
    fn asymmetric_c2_equation() {
        let mut cfg = SolveConfig::new(2, Restriction::Full);
        cfg.symmetric = false;
        let out = solve_weights(&cfg).unwrap();
        let sys = &out.systems[1];
        let c2e = sys.equations.iter().find(|e| e.source == c2()).unwrap();
        let il = sys.unknowns.iter().position(|g| *g == bn_left(2)).unwrap();
        let ir = sys.unknowns.iter().position(|g| *g == bn_right(2)).unwrap();
        assert_eq!((c2e.coeffs[il].clone(), c2e.coeffs[ir].clone()), (int(1), int(-1)));
        assert!(out.is_unique());
    }

    #[test]
    fn constant_case() {
        let out = solve_weights(&SolveConfig::new(4, Restriction::ZeroInDegree)).unwrap();
        assert!(out.is_unique());
        for n in 0..=4 {
            assert_eq!(out.weights.weight(&b1_power(n)).unwrap(), int(1));
        }
    }

    #[test]
    fn missing_b0_normalization() {
        let mut cfg = SolveConfig::new(2, Restriction::Full);
        cfg.normalization = vec![(b1(), int(1))];
        assert!(solve_weights(&cfg).is_err());
    }

    #[test]
    fn status_text() {
        for s in [Status::Unique, Status::Affine { dim: 2 }, Status::Infeasible] {
            assert_eq!(s.to_string().parse::<Status>().unwrap(), s);
        }
    }

    #[test]
    fn json_round_trip() {
        let out = solve_weights(&SolveConfig::new(2, Restriction::Full)).unwrap();
        let text = out.to_json().unwrap().to_string();
        let w = load_weights(&text).unwrap();
        for (g, v) in out.weights.table().unwrap() {
            assert_eq!(w.weight(&g).unwrap(), v);
        }
    }
}
