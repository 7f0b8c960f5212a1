//! Admissible graphs: ordered boundary points, internal vertices with exactly
//! two outgoing legs, no self-edges, no parallel edges and no circuits.

mod canon;
pub mod catalog;
mod enumerate;
mod structure;
mod text;

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use canon::{automorphism_count, canonical_labeling, canonicalize};
pub use enumerate::{enumerate_class, enumerate_class_with, naive_enumeration, Restriction};
pub use structure::{heights, pad, prime_factorize, product, Heights, Side};
pub use text::{parse_graph, GraphJson};

/// Endpoint of a leg. Indices are 1-based; boundary targets sort before
/// internal ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Target {
    B(u8),
    V(u8),
}

impl Target {
    pub fn is_boundary(self) -> bool {
        matches!(self, Target::B(_))
    }

    /// 0-based internal index, if this is an internal target.
    pub fn internal(self) -> Option<usize> {
        match self {
            Target::V(k) => Some(k as usize - 1),
            Target::B(_) => None,
        }
    }

    /// 0-based boundary index, if this is a boundary target.
    pub fn boundary(self) -> Option<usize> {
        match self {
            Target::B(i) => Some(i as usize - 1),
            Target::V(_) => None,
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::B(i) => write!(f, "B{i}"),
            Target::V(k) => write!(f, "V{k}"),
        }
    }
}

pub(crate) fn b(i: usize) -> Target {
    Target::B(i as u8)
}

pub(crate) fn v(k: usize) -> Target {
    Target::V(k as u8)
}

pub(crate) fn sorted_pair(a: Target, b: Target) -> [Target; 2] {
    if a <= b {
        [a, b]
    } else {
        [b, a]
    }
}

/// A validated admissible graph with `m` boundary points and
/// `legs.len()` internal vertices. Each leg pair is stored sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AdmissibleGraph {
    m: usize,
    legs: Vec<[Target; 2]>,
}

impl AdmissibleGraph {
    pub fn new(m: usize, legs: Vec<[Target; 2]>) -> Result<Self> {
        if let Some(problem) = violation(m, &legs) {
            return Err(Error::InvalidGraph(problem));
        }
        let legs = legs.into_iter().map(|[a, b]| sorted_pair(a, b)).collect();
        Ok(Self { m, legs })
    }

    /// The boundary-only graph with `m` points (`b_0` for `m = 2`).
    pub fn unit(m: usize) -> Self {
        Self { m, legs: Vec::new() }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.legs.len()
    }

    pub fn legs(&self) -> &[[Target; 2]] {
        &self.legs
    }

    /// In-degree of each internal vertex (edges from other internal vertices).
    pub fn internal_in_degrees(&self) -> Vec<usize> {
        in_degrees(self.m, &self.legs).1
    }

    /// In-degree of each boundary point.
    pub fn boundary_in_degrees(&self) -> Vec<usize> {
        in_degrees(self.m, &self.legs).0
    }

    /// Every internal vertex has at most one parent.
    pub fn is_forest(&self) -> bool {
        self.internal_in_degrees().iter().all(|&d| d <= 1)
    }

    pub fn is_zero_in_degree(&self) -> bool {
        self.internal_in_degrees().iter().all(|&d| d == 0)
    }

    /// Always false for a constructed graph; kept as an explicit predicate.
    pub fn has_circuit(&self) -> bool {
        has_circuit(&self.legs)
    }

    pub fn canonicalize(&self) -> CanonicalGraph {
        canonicalize(self)
    }
}

/// Names the first violated invariant of a raw leg list, if any.
pub fn violation(m: usize, legs: &[[Target; 2]]) -> Option<String> {
    if m == 0 {
        return Some("boundary count must be at least 1".into());
    }
    let n = legs.len();
    if n > u8::MAX as usize || m > u8::MAX as usize {
        return Some("graph too large".into());
    }
    for (k, pair) in legs.iter().enumerate() {
        for t in pair {
            let ok = match *t {
                Target::B(i) => (1..=m).contains(&(i as usize)),
                Target::V(j) => (1..=n).contains(&(j as usize)),
            };
            if !ok {
                return Some(format!("target {t} of vertex {} out of range", k + 1));
            }
            if *t == Target::V(k as u8 + 1) {
                return Some(format!("self-edge at vertex {}", k + 1));
            }
        }
        if pair[0] == pair[1] {
            return Some(format!(
                "parallel edges: vertex {} has two legs to {}",
                k + 1,
                pair[0]
            ));
        }
    }
    if has_circuit(legs) {
        return Some("directed circuit among internal vertices".into());
    }
    None
}

/// Cycle detection over the internal-to-internal edges.
pub fn has_circuit(legs: &[[Target; 2]]) -> bool {
    // 0 unvisited, 1 on stack, 2 done
    fn visit(k: usize, legs: &[[Target; 2]], state: &mut [u8]) -> bool {
        state[k] = 1;
        for t in legs[k] {
            if let Some(j) = t.internal() {
                if j >= legs.len() {
                    continue;
                }
                if state[j] == 1 || (state[j] == 0 && visit(j, legs, state)) {
                    return true;
                }
            }
        }
        state[k] = 2;
        false
    }
    let mut state = vec![0u8; legs.len()];
    (0..legs.len()).any(|k| state[k] == 0 && visit(k, legs, &mut state))
}

fn in_degrees(m: usize, legs: &[[Target; 2]]) -> (Vec<usize>, Vec<usize>) {
    let mut boundary = vec![0; m];
    let mut internal = vec![0; legs.len()];
    for t in legs.iter().flatten() {
        match *t {
            Target::B(i) => boundary[i as usize - 1] += 1,
            Target::V(j) => internal[j as usize - 1] += 1,
        }
    }
    (boundary, internal)
}

/// An admissible graph whose encoding `(m, n, legs)` is lexicographically
/// minimal over all relabelings of its internal vertices. Two graphs are
/// isomorphic (boundary fixed pointwise) iff their canonical forms are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalGraph(AdmissibleGraph);

impl CanonicalGraph {
    pub(crate) fn from_canonical_unchecked(g: AdmissibleGraph) -> Self {
        CanonicalGraph(g)
    }

    pub fn graph(&self) -> &AdmissibleGraph {
        &self.0
    }

    pub fn m(&self) -> usize {
        self.0.m
    }

    pub fn n(&self) -> usize {
        self.0.legs.len()
    }

    pub fn legs(&self) -> &[[Target; 2]] {
        &self.0.legs
    }

    pub fn is_forest(&self) -> bool {
        self.0.is_forest()
    }

    pub fn is_zero_in_degree(&self) -> bool {
        self.0.is_zero_in_degree()
    }

    pub fn has_circuit(&self) -> bool {
        self.0.has_circuit()
    }

    /// Boundary order reversed, `B(i) -> B(m + 1 - i)`, recanonicalized.
    pub fn transpose(&self) -> CanonicalGraph {
        let m = self.m();
        let legs = self
            .legs()
            .iter()
            .map(|pair| {
                let flip = |t: Target| match t {
                    Target::B(i) => b(m + 1 - i as usize),
                    other => other,
                };
                sorted_pair(flip(pair[0]), flip(pair[1]))
            })
            .collect();
        canonicalize(&AdmissibleGraph { m, legs })
    }

    pub fn is_symmetric(&self) -> bool {
        self.transpose() == *self
    }

    pub fn automorphism_count(&self) -> u64 {
        automorphism_count(self)
    }

    pub fn prime_factors(&self) -> Vec<CanonicalGraph> {
        prime_factorize(self)
    }

    /// Exactly one factor and at least one internal vertex. Units are not prime.
    pub fn is_prime(&self) -> bool {
        self.n() >= 1 && prime_factorize(self).len() == 1
    }

    pub fn is_unit(&self) -> bool {
        self.n() == 0
    }
}

impl Ord for CanonicalGraph {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.m(), self.n(), self.legs()).cmp(&(other.m(), other.n(), other.legs()))
    }
}

impl PartialOrd for CanonicalGraph {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for AdmissibleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={};n={}", self.m, self.n())?;
        for (k, [a, b]) in self.legs.iter().enumerate() {
            write!(f, ";v{}:{a},{b}", k + 1)?;
        }
        Ok(())
    }
}

impl fmt::Display for CanonicalGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for CanonicalGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson::from(self.graph()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for CanonicalGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let json = GraphJson::deserialize(d)?;
        let g = AdmissibleGraph::try_from(json).map_err(serde::de::Error::custom)?;
        Ok(canonicalize(&g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_invariant_violations() {
        let err = AdmissibleGraph::new(2, vec![[b(1), b(1)]]).unwrap_err();
        assert!(err.to_string().contains("parallel"));
        let err = AdmissibleGraph::new(2, vec![[b(1), v(1)]]).unwrap_err();
        assert!(err.to_string().contains("self-edge"));
        let err = AdmissibleGraph::new(2, vec![[b(1), v(2)], [b(2), v(1)]]).unwrap_err();
        assert!(err.to_string().contains("circuit"));
        let err = AdmissibleGraph::new(2, vec![[b(1), b(3)]]).unwrap_err();
        assert!(err.to_string().contains("out of range"));
        assert!(AdmissibleGraph::new(0, vec![]).is_err());
    }

    #[test]
    fn in_degrees_and_forest() {
        let g = catalog::c2();
        assert_eq!(g.graph().boundary_in_degrees(), vec![1, 1, 1]);
        assert!(g.is_forest());
        assert!(!g.is_zero_in_degree());
        assert!(catalog::c2_left().is_zero_in_degree());
        // V1 and V2 both point at V3
        let h = AdmissibleGraph::new(2, vec![[b(1), v(3)], [b(2), v(3)], [b(1), b(2)]]).unwrap();
        assert!(!h.is_forest());
        assert!(!h.has_circuit());
    }

    #[test]
    fn transpose_examples() {
        use catalog::*;
        assert_eq!(bn_left(2).transpose(), bn_right(2));
        assert_eq!(c2().transpose(), c2());
        assert_eq!(c2_left().transpose(), c2_right());
        assert_eq!(t2_left().transpose(), t2_right());
        assert!(b1().is_symmetric());
    }

    #[test]
    fn primes() {
        use catalog::*;
        assert!(c2().is_prime());
        assert!(t2_left().is_prime());
        assert!(!c2_left().is_prime());
        assert!(!b1_squared().is_prime());
        assert!(!b0().is_prime());
        assert!(bn_left(2).is_prime());
    }
}
