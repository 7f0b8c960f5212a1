use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{b, canonicalize, has_circuit, v, violation, AdmissibleGraph, CanonicalGraph, Target};
use crate::error::{Error, Result};
use crate::exec::{self, Mode};

/// Subclass filter on internal in-degrees.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Restriction {
    Full,
    /// Every internal vertex has at most one parent.
    #[default]
    Forest,
    /// No internal vertex has a parent.
    ZeroInDegree,
}

impl Restriction {
    pub fn admits(self, g: &AdmissibleGraph) -> bool {
        match self {
            Restriction::Full => true,
            Restriction::Forest => g.is_forest(),
            Restriction::ZeroInDegree => g.is_zero_in_degree(),
        }
    }
}

impl FromStr for Restriction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Restriction::Full),
            "forest" => Ok(Restriction::Forest),
            "constant" | "zero-in-degree" => Ok(Restriction::ZeroInDegree),
            other => Err(Error::Precondition(format!(
                "unknown restriction {other:?} (expected full, forest or constant)"
            ))),
        }
    }
}

impl fmt::Display for Restriction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Restriction::Full => "full",
            Restriction::Forest => "forest",
            Restriction::ZeroInDegree => "zero-in-degree",
        })
    }
}

pub fn enumerate_class(n: usize, m: usize, restriction: Restriction) -> Vec<CanonicalGraph> {
    enumerate_class_with(Mode::default(), n, m, restriction)
}

/// All canonical graphs with `n` internal and `m` boundary vertices passing
/// the restriction, sorted.
///
/// Every acyclic graph has a topological labeling where vertex k only points
/// at later vertices, so generating those labelings covers the class.
pub fn enumerate_class_with(
    mode: Mode,
    n: usize,
    m: usize,
    restriction: Restriction,
) -> Vec<CanonicalGraph> {
    let choices: Vec<Vec<[Target; 2]>> = (0..n)
        .map(|k| {
            let cands: Vec<Target> = (1..=m).map(b).chain((k + 2..=n).map(v)).collect();
            pairs(&cands)
        })
        .collect();
    let mut labeled: Vec<Vec<[Target; 2]>> = vec![Vec::new()];
    for options in &choices {
        labeled = labeled
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |p| {
                    let mut next = prefix.clone();
                    next.push(*p);
                    next
                })
            })
            .collect();
    }
    let canon = exec::map(mode, labeled, |legs| {
        let g = AdmissibleGraph { m, legs };
        restriction.admits(&g).then(|| canonicalize(&g))
    });
    canon.into_iter().flatten().collect::<BTreeSet<_>>().into_iter().collect()
}

fn pairs(cands: &[Target]) -> Vec<[Target; 2]> {
    let mut out = Vec::new();
    for (i, &a) in cands.iter().enumerate() {
        for &c in &cands[i + 1..] {
            out.push([a, c]);
        }
    }
    out
}

/// Reference generator: every ordered leg assignment over all targets,
/// filtered by the invariants and deduplicated. Exponential; for tests.
pub fn naive_enumeration(n: usize, m: usize, restriction: Restriction) -> Vec<CanonicalGraph> {
    let targets: Vec<Target> = (1..=m).map(b).chain((1..=n).map(v)).collect();
    let t = targets.len();
    let total = (t * t).pow(n as u32);
    let mut found = BTreeSet::new();
    for code in 0..total {
        let mut c = code;
        let mut legs = Vec::with_capacity(n);
        for _ in 0..n {
            let x = targets[c % t];
            c /= t;
            let y = targets[c % t];
            c /= t;
            legs.push([x, y]);
        }
        if violation(m, &legs).is_some() || has_circuit(&legs) {
            continue;
        }
        let g = AdmissibleGraph::new(m, legs).expect("filtered");
        if restriction.admits(&g) {
            found.insert(canonicalize(&g));
        }
    }
    found.into_iter().collect()
}
