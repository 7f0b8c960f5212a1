//! Named verification suites over the whole library. Each check records what
//! was expected and what came out; a suite passes when all its checks do.

use std::fmt;
use std::str::FromStr;

use num_traits::One;
use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    associator, bracket, compose, compose_basis, coproduct_reduced, duality_check, exp_product, GraphVector,
    TensorVector,
};
use crate::characters::{
    antipode, antipode_geometric, moyal_element, solve_weights, unitarity_check, SolveConfig, Status, WeightSystem,
};
use crate::error::{Error, Result};
use crate::evaluator::{jacobi_defect, moyal_oracle, Bivector, JacobiMode, PolySeries, Polynomial, StarProduct};
use crate::exec::{self, Mode};
use crate::graph::{catalog, enumerate_class, violation, CanonicalGraph, Restriction};
use crate::rational::{self, int};
use crate::trees::{binary_trees, ck_coproduct_cuts, ck_coproduct_subgraphs, graph_to_tree, tree_to_graph};

pub const APPENDIX: &str = include_str!("../data/appendix.txt");
pub const ANTIPODE: &str = include_str!("../data/antipode.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Appendix,
    Duality,
    Prelie,
    Moyal,
    Jacobi,
    Assoc,
    Antipode,
    Trees,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Appendix,
        Suite::Duality,
        Suite::Prelie,
        Suite::Moyal,
        Suite::Jacobi,
        Suite::Assoc,
        Suite::Antipode,
        Suite::Trees,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Appendix => "appendix",
            Suite::Duality => "duality",
            Suite::Prelie => "prelie",
            Suite::Moyal => "moyal",
            Suite::Jacobi => "jacobi",
            Suite::Assoc => "assoc",
            Suite::Antipode => "antipode",
            Suite::Trees => "trees",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub expected: String,
    pub got: String,
}

impl Check {
    pub fn new(name: impl Into<String>, expected: impl fmt::Display, got: impl fmt::Display) -> Self {
        let (expected, got) = (expected.to_string(), got.to_string());
        Check { name: name.into(), passed: expected == got, expected, got }
    }

    pub fn flag(name: impl Into<String>, passed: bool, detail: impl fmt::Display) -> Self {
        Check {
            name: name.into(),
            passed,
            expected: "true".into(),
            got: if passed { "true".into() } else { format!("false ({detail})") },
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {}", self.name)?;
        if !self.passed {
            write!(f, "\n  expected: {}\n  got:      {}", self.expected, self.got)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let ok = self.checks.iter().filter(|c| c.passed).count();
        writeln!(f, "{}: {ok}/{} checks passed", self.suite, self.checks.len())
    }
}

pub fn run(suite: Suite, mode: Mode) -> Result<SuiteReport> {
    let checks = match suite {
        Suite::Appendix => golden_checks(APPENDIX)?,
        Suite::Duality => duality(mode)?,
        Suite::Prelie => prelie(mode)?,
        Suite::Moyal => moyal()?,
        Suite::Jacobi => jacobi()?,
        Suite::Assoc => assoc()?,
        Suite::Antipode => antipodes()?,
        Suite::Trees => trees()?,
    };
    Ok(SuiteReport { suite, checks })
}

/// Graph part plus tensor part, the common shape of every golden value.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Value {
    pub graphs: GraphVector,
    pub tensors: TensorVector,
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (g, c) in self.graphs.iter() {
            parts.push(format!("{} {g}", rational::signed(c)));
        }
        for (l, r, c) in self.tensors.iter() {
            parts.push(format!("{} {l} (x) {r}", rational::signed(c)));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

fn named(name: &str) -> Result<CanonicalGraph> {
    catalog::by_name(name).ok_or_else(|| Error::Precondition(format!("unknown graph name {name:?}")))
}

/// Parses `2*b1 - 1/2*b1L (x) b0 + c2`, or `0`.
pub fn parse_value(text: &str) -> Result<Value> {
    let mut value = Value::default();
    let text = text.trim();
    if text == "0" {
        return Ok(value);
    }
    let mut tokens = Vec::new();
    let mut sign = int(1);
    let mut current = String::new();
    for word in text.split_whitespace() {
        match word {
            "+" | "-" => {
                if !current.trim().is_empty() {
                    tokens.push((sign.clone(), std::mem::take(&mut current)));
                }
                sign = if word == "-" { int(-1) } else { int(1) };
            }
            w => {
                if current.is_empty() && tokens.is_empty() && w.starts_with('-') {
                    sign = int(-1);
                    current.push_str(&w[1..]);
                } else {
                    current.push(' ');
                    current.push_str(w);
                }
            }
        }
    }
    if !current.trim().is_empty() {
        tokens.push((sign, current));
    }
    for (sign, term) in tokens {
        let term = term.trim();
        let (coeff, body) = match term.split_once('*') {
            Some((c, b)) => (rational::parse(c)?, b.trim()),
            None => (int(1), term),
        };
        let c = sign * coeff;
        match body.split_once("(x)") {
            Some((l, r)) => value.tensors.add_term(named(l.trim())?, named(r.trim())?, c),
            None => value.graphs.add_term(named(body)?, c),
        }
    }
    Ok(value)
}

fn evaluate_operation(op: &str) -> Result<Value> {
    let words: Vec<&str> = op.split_whitespace().collect();
    let vector = |s: &str| named(s).map(GraphVector::basis);
    Ok(match words.as_slice() {
        ["compose", a, b] => Value { graphs: compose(&vector(a)?, &vector(b)?), ..Value::default() },
        ["bracket", a, b] => Value { graphs: bracket(&vector(a)?, &vector(b)?)?, ..Value::default() },
        ["coproduct", a] => Value { tensors: coproduct_reduced(&named(a)?)?, ..Value::default() },
        ["antipode", a] => {
            let s = antipode(&named(a)?)?;
            Value { graphs: s.graphs, tensors: s.tensors }
        }
        _ => return Err(Error::Precondition(format!("unknown operation {op:?}"))),
    })
}

/// Runs every `[tag] operation = expected` line of a golden file.
pub fn golden_checks(text: &str) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let bad = || Error::Precondition(format!("malformed golden line {line:?}"));
        let rest = line.strip_prefix('[').ok_or_else(bad)?;
        let (tag, rest) = rest.split_once(']').ok_or_else(bad)?;
        let (op, expected) = rest.split_once('=').ok_or_else(bad)?;
        let expected = parse_value(expected)?;
        let got = evaluate_operation(op)?;
        checks.push(Check {
            name: format!("{tag}: {}", op.trim()),
            passed: got == expected,
            expected: expected.to_string(),
            got: got.to_string(),
        });
    }
    Ok(checks)
}

fn closure_violations(v: &GraphVector) -> Vec<String> {
    v.graphs().filter_map(|g| violation(g.m(), g.legs()).map(|e| format!("{g}: {e}"))).collect()
}

fn duality(mode: Mode) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for n in 0..=3 {
        let bigs = enumerate_class(n, 3, Restriction::Full);
        let mut pairs = Vec::new();
        for k in 0..=n {
            for g1 in enumerate_class(k, 2, Restriction::Full) {
                for g2 in enumerate_class(n - k, 2, Restriction::Full) {
                    pairs.push((g1.clone(), g2));
                }
            }
        }
        let results = exec::map(mode, pairs, |(g1, g2)| -> Result<(usize, usize, Vec<String>)> {
            let mut bad = 0;
            for big in &bigs {
                if !duality_check(&g1, &g2, big)?.holds() {
                    bad += 1;
                }
            }
            Ok((bigs.len(), bad, closure_violations(&compose_basis(&g1, &g2))))
        });
        let (mut total, mut bad, mut closure) = (0, 0, Vec::new());
        for r in results {
            let (t, b, c) = r?;
            total += t;
            bad += b;
            closure.extend(c);
        }
        checks.push(Check::new(format!("pairing duality, internal degree {n} ({total} cases)"), 0, bad));
        checks.push(Check::new(format!("composition closure, internal degree {n}"), "[]", format!("{closure:?}")));
    }
    Ok(checks)
}

/// Graphs with `n ≤ max_n` internal vertices and one to three boundary points.
fn prelie_pool(max_n: usize) -> Vec<Vec<CanonicalGraph>> {
    (0..=max_n).map(|n| (1..=3).flat_map(|m| enumerate_class(n, m, Restriction::Full)).collect()).collect()
}

/// `A(a,b,c) − (−1)^{(m_b−1)(m_c−1)} A(a,c,b)`, which for two boundary
/// points everywhere is the plain sum `A(a,b,c) + A(a,c,b)`.
fn associator_defect(a: &CanonicalGraph, b: &CanonicalGraph, c: &CanonicalGraph) -> (GraphVector, Vec<String>) {
    let odd = (b.m() - 1) * (c.m() - 1) % 2 == 1;
    let (a, b, c) = (GraphVector::basis(a.clone()), GraphVector::basis(b.clone()), GraphVector::basis(c.clone()));
    let mut closure = closure_violations(&compose(&compose(&a, &b), &c));
    closure.extend(closure_violations(&compose(&a, &compose(&b, &c))));
    let (x, y) = (associator(&a, &b, &c), associator(&a, &c, &b));
    (if odd { x + y } else { x - y }, closure)
}

/// Triples of degrees `(i, j, k)` summing to `n`.
fn compositions3(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for i in 0..=n {
        for j in 0..=n - i {
            out.push((i, j, n - i - j));
        }
    }
    out
}

fn triples(pool: &[Vec<CanonicalGraph>], n: usize) -> Vec<(CanonicalGraph, CanonicalGraph, CanonicalGraph)> {
    let mut out = Vec::new();
    for (i, j, k) in compositions3(n) {
        for a in &pool[i] {
            for b in &pool[j] {
                for c in &pool[k] {
                    out.push((a.clone(), b.clone(), c.clone()));
                }
            }
        }
    }
    out
}

fn prelie(mode: Mode) -> Result<Vec<Check>> {
    let two: Vec<Vec<CanonicalGraph>> = (0..=3).map(|n| enumerate_class(n, 2, Restriction::Full)).collect();
    let mixed = prelie_pool(3);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let shapes = compositions3(3);
    let mut sampled = Vec::new();
    while sampled.len() < 64 {
        let &(i, j, k) = shapes.choose(&mut rng).expect("nonempty");
        let pick = |rng: &mut ChaCha8Rng, d: usize| mixed[d].choose(rng).cloned();
        if let (Some(a), Some(b), Some(c)) = (pick(&mut rng, i), pick(&mut rng, j), pick(&mut rng, k)) {
            sampled.push((a, b, c));
        }
    }
    let cases = [
        ("two boundary points, total degree <= 2", (0..=2).flat_map(|n| triples(&two, n)).collect::<Vec<_>>()),
        ("two boundary points, total degree 3", triples(&two, 3)),
        ("graded, 1-3 boundary points, total degree <= 2", (0..=2).flat_map(|n| triples(&mixed, n)).collect()),
        ("graded, 1-3 boundary points, sampled at total degree 3", sampled),
    ];
    let mut checks = Vec::new();
    for (label, triples) in cases {
        let count = triples.len();
        let results = exec::map(mode, triples, |(a, b, c)| {
            let (defect, closure) = associator_defect(&a, &b, &c);
            (defect.is_zero(), closure)
        });
        let bad = results.iter().filter(|(ok, _)| !ok).count();
        let closure: Vec<String> = results.into_iter().flat_map(|(_, c)| c).collect();
        checks.push(Check::new(format!("associator symmetry, {label} ({count} triples)"), 0, bad));
        checks.push(Check::new(format!("composition closure, {label}"), "[]", format!("{closure:?}")));
    }
    Ok(checks)
}

fn monomials(d: usize, max_degree: u32) -> Vec<Polynomial> {
    fn go(d: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Polynomial>) {
        if prefix.len() == d {
            out.push(Polynomial::monomial(d, prefix.clone(), int(1)));
            return;
        }
        for e in 0..=left {
            prefix.push(e);
            go(d, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(d, max_degree, &mut Vec::new(), &mut out);
    out.sort_by_key(|p| p.degree().unwrap_or(0));
    out
}

fn degree(p: &Polynomial) -> u32 {
    p.degree().unwrap_or(0)
}

fn solve_unique(order: usize, r: Restriction) -> Result<(WeightSystem, bool)> {
    let outcome = solve_weights(&SolveConfig::new(order, r))?;
    let unique = outcome.report.iter().all(|e| e.status == Status::Unique) && outcome.fallback.is_none();
    Ok((outcome.weights, unique))
}

fn moyal() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let (w, unique) = solve_unique(4, Restriction::ZeroInDegree)?;
    checks.push(Check::flag("zero-in-degree solve through order 4 is unique", unique, "solver report"));
    let mut non_one = Vec::new();
    for (g, v) in w.table()? {
        if !v.is_one() {
            non_one.push(format!("{g}={v}"));
        }
    }
    checks.push(Check::new("solved weights are all 1", "[]", format!("{non_one:?}")));
    let z = moyal_element(&w, 4)?;
    checks.push(Check::new("Moyal element is exp(b1)", exp_product(&GraphVector::basis(catalog::b1()), 4)?, z));
    let alpha = Bivector::standard();
    let star = StarProduct::new(&alpha, &w, 4)?;
    let ms = monomials(2, 3);
    let mut bad = Vec::new();
    let mut count = 0;
    for f in &ms {
        for g in &ms {
            if degree(f) + degree(g) > 3 {
                continue;
            }
            count += 1;
            if star.apply(f, g)? != moyal_oracle(f, g, &alpha, 4)? {
                bad.push(format!("{f} * {g}"));
            }
        }
    }
    checks.push(Check::new(format!("star product equals Moyal oracle on {count} monomial pairs"), "[]", format!("{bad:?}")));
    let x1sq = Polynomial::parse("x1^2", 2)?;
    let x2sq = Polynomial::parse("x2^2", 2)?;
    checks.push(Check::new(
        "x1^2 * x2^2 through eps^2",
        "x1^2*x2^2 + eps*(4*x1*x2) + eps^2*(2)",
        StarProduct::new(&alpha, &w, 2)?.apply(&x1sq, &x2sq)?,
    ));
    Ok(checks)
}

fn jacobi() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for (name, alpha) in [("so(3)", Bivector::so3()), ("2-dim nonabelian", Bivector::affine_line())] {
        let args: Vec<Polynomial> = monomials(alpha.dim(), 2).into_iter().filter(|p| degree(p) >= 1).collect();
        for mode in [JacobiMode::Alt, JacobiMode::Span] {
            let mut bad = Vec::new();
            for f in &args {
                for g in &args {
                    for h in &args {
                        let d = jacobi_defect(&alpha, f, g, h, mode)?;
                        if !d.is_zero() {
                            bad.push(format!("({f}, {g}, {h}) -> {d}"));
                        }
                    }
                }
            }
            let label = match mode {
                JacobiMode::Alt => "alternation of U(c2) vanishes",
                JacobiMode::Span => "U(t2R) - U(t2L) - sigma U(c2) vanishes",
            };
            bad.truncate(3);
            checks.push(Check::new(format!("{name}: {label}"), "[]", format!("{bad:?}")));
        }
    }
    Ok(checks)
}

fn first_nonzero(s: &PolySeries) -> String {
    match s.coeffs().iter().position(|p| !p.is_zero()) {
        Some(k) => format!("eps^{k}*({})", s.coeff(k)),
        None => "0".into(),
    }
}

/// `(f⋆g)⋆h − f⋆(g⋆h)` over all monomial triples of total degree ≤ 4.
pub fn associativity_sweep(star: &StarProduct, mode: Mode) -> Result<Vec<String>> {
    let ms = monomials(2, 4);
    let mut triples = Vec::new();
    for f in &ms {
        for g in &ms {
            for h in &ms {
                if degree(f) + degree(g) + degree(h) <= 4 {
                    triples.push((f.clone(), g.clone(), h.clone()));
                }
            }
        }
    }
    let results = exec::map(mode, triples, |(f, g, h)| {
        star.associativity_defect(&f, &g, &h).map(|d| (d.is_zero(), format!("({f}, {g}, {h}): {}", first_nonzero(&d))))
    });
    let mut bad = Vec::new();
    for r in results {
        let (ok, text) = r?;
        if !ok {
            bad.push(text);
        }
    }
    Ok(bad)
}

/// The two associativity settings: a quadratic bivector with full-class
/// order-2 weights, and the linear one with forest order-3 weights.
pub fn associativity_cases() -> Result<Vec<(String, StarProduct)>> {
    let quadratic = {
        let mut a = Bivector::zero(2);
        a.set(1, 2, Polynomial::parse("x1^2 + x1*x2", 2)?)?;
        a
    };
    let (full, _) = solve_unique(2, Restriction::Full)?;
    let (forest, _) = solve_unique(3, Restriction::Forest)?;
    Ok(vec![
        ("quadratic α12 = x1^2 + x1*x2, full weights, through eps^2".into(), StarProduct::new(&quadratic, &full, 2)?),
        ("linear α12 = x2, forest weights, through eps^3".into(), StarProduct::new(&Bivector::affine_line(), &forest, 3)?),
    ])
}

fn assoc() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for (label, star) in associativity_cases()? {
        let bad = associativity_sweep(&star, Mode::default())?;
        let total = bad.len();
        let shown: Vec<String> = bad.into_iter().take(3).collect();
        checks.push(Check::new(
            format!("{label}: failing triples"),
            "0",
            if total == 0 { "0".into() } else { format!("{total}, e.g. {shown:?}") },
        ));
    }
    Ok(checks)
}

fn antipodes() -> Result<Vec<Check>> {
    let mut checks = golden_checks(ANTIPODE)?;
    let mut bad = Vec::new();
    let mut count = 0;
    for n in 0..=3 {
        for g in enumerate_class(n, 3, Restriction::Full) {
            count += 1;
            if antipode(&g)? != antipode_geometric(&g)? {
                bad.push(g.to_string());
            }
        }
    }
    checks.push(Check::new(format!("recursive and geometric antipode agree ({count} graphs)"), "[]", format!("{bad:?}")));
    let (w, _) = solve_unique(3, Restriction::Forest)?;
    checks.push(Check::flag("W(S(Γ)) = -W(Γ) for forest weights through order 3", unitarity_check(&w, 3)?, "unitarity"));
    let (w, _) = solve_unique(2, Restriction::Full)?;
    checks.push(Check::flag("W(S(Γ)) = -W(Γ) for full weights through order 2", unitarity_check(&w, 2)?, "unitarity"));
    Ok(checks)
}

fn trees() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let mut count = 0;
    let mut bad = Vec::new();
    for n in 1..=5 {
        for t in binary_trees(n) {
            count += 1;
            if ck_coproduct_cuts(&t) != ck_coproduct_subgraphs(&t) {
                bad.push(t.to_string());
            }
        }
    }
    checks.push(Check::new(format!("cut and subgraph coproducts agree ({count} trees)"), "[]", format!("{bad:?}")));
    let mut count = 0;
    let mut bad = Vec::new();
    for n in 0..=4 {
        for g in enumerate_class(n, 2, Restriction::Forest) {
            count += 1;
            let back = graph_to_tree(&g).and_then(|f| tree_to_graph(&f));
            if back.as_ref() != Ok(&g) {
                bad.push(g.to_string());
            }
        }
    }
    checks.push(Check::new(format!("graph -> tree -> graph round trip ({count} graphs)"), "[]", format!("{bad:?}")));
    let combs: Vec<bool> = (1..=4)
        .map(|n| {
            tree_to_graph(&crate::trees::Forest::from(crate::trees::RootedTree::left_comb(n))).ok()
                == Some(catalog::bn_left(n))
        })
        .collect();
    checks.push(Check::new("left combs map to left Bernoulli graphs", "[true, true, true, true]", format!("{combs:?}")));
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_parsing() {
        let v = parse_value("-t2L - b1 (x) b1 + 1/2*b2L (x) b0").unwrap();
        assert_eq!(v.graphs, GraphVector::term(catalog::t2_left(), int(-1)));
        assert_eq!(v.tensors.coeff(&catalog::bn_left(2), &catalog::b0()), rational::ratio(1, 2));
        assert_eq!(v.tensors.coeff(&catalog::b1(), &catalog::b1()), int(-1));
        assert!(parse_value("0").unwrap().graphs.is_zero());
        assert!(parse_value("b9X").is_err());
    }

    #[test]
    fn appendix_and_antipode_goldens() {
        for text in [APPENDIX, ANTIPODE] {
            for c in golden_checks(text).unwrap() {
                assert!(c.passed, "{c}");
            }
        }
    }

    #[test]
    fn broken_golden_is_reported() {
        let checks = golden_checks("[wrong] compose b0 b1 = b1R - b1L").unwrap();
        assert!(!checks[0].passed);
        assert!(checks[0].to_string().contains("wrong"));
        assert!(golden_checks("compose b0 b1 = 0").is_err());
    }

    #[test]
    fn suite_names() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }
}
