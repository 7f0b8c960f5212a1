use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::CanonicalGraph;
use crate::rational::{self, Rational};

/// Finite rational combination of canonical graphs. Zero coefficients are
/// never stored; iteration follows the canonical order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GraphVector {
    terms: BTreeMap<CanonicalGraph, Rational>,
}

impl GraphVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(g: CanonicalGraph) -> Self {
        Self::term(g, Rational::one())
    }

    pub fn term(g: CanonicalGraph, c: Rational) -> Self {
        let mut v = Self::zero();
        v.add_term(g, c);
        v
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (CanonicalGraph, Rational)>) -> Self {
        let mut v = Self::zero();
        for (g, c) in terms {
            v.add_term(g, c);
        }
        v
    }

    pub fn add_term(&mut self, g: CanonicalGraph, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(g.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn coeff(&self, g: &CanonicalGraph) -> Rational {
        self.terms.get(g).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CanonicalGraph, &Rational)> {
        self.terms.iter()
    }

    pub fn graphs(&self) -> impl Iterator<Item = &CanonicalGraph> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(g, x)| (g.clone(), x * c)))
    }

    /// Common boundary arity; `None` for the zero vector.
    pub fn arity(&self) -> Result<Option<usize>> {
        let mut ms = self.terms.keys().map(|g| g.m());
        let Some(first) = ms.next() else { return Ok(None) };
        if ms.all(|m| m == first) {
            Ok(Some(first))
        } else {
            Err(Error::MixedArity)
        }
    }

    /// Terms with exactly `n` internal vertices.
    pub fn component(&self, n: usize) -> Self {
        self.filter(|g| g.n() == n)
    }

    pub fn truncate(&self, max_n: usize) -> Self {
        self.filter(|g| g.n() <= max_n)
    }

    pub fn filter(&self, keep: impl Fn(&CanonicalGraph) -> bool) -> Self {
        GraphVector {
            terms: self
                .terms
                .iter()
                .filter(|(g, _)| keep(g))
                .map(|(g, c)| (g.clone(), c.clone()))
                .collect(),
        }
    }

    /// Applies a linear map given on basis graphs.
    pub fn map_linear(&self, f: impl Fn(&CanonicalGraph) -> GraphVector) -> Self {
        let mut out = Self::zero();
        for (g, c) in &self.terms {
            out += f(g).scale(c);
        }
        out
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|g| g.n()).max()
    }
}

impl AddAssign<GraphVector> for GraphVector {
    fn add_assign(&mut self, rhs: GraphVector) {
        for (g, c) in rhs.terms {
            self.add_term(g, c);
        }
    }
}

impl AddAssign<&GraphVector> for GraphVector {
    fn add_assign(&mut self, rhs: &GraphVector) {
        for (g, c) in &rhs.terms {
            self.add_term(g.clone(), c.clone());
        }
    }
}

impl Add for GraphVector {
    type Output = GraphVector;
    fn add(mut self, rhs: GraphVector) -> GraphVector {
        self += rhs;
        self
    }
}

impl Add for &GraphVector {
    type Output = GraphVector;
    fn add(self, rhs: &GraphVector) -> GraphVector {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Neg for GraphVector {
    type Output = GraphVector;
    fn neg(self) -> GraphVector {
        self.scale(&-Rational::one())
    }
}

impl Neg for &GraphVector {
    type Output = GraphVector;
    fn neg(self) -> GraphVector {
        self.scale(&-Rational::one())
    }
}

impl Sub for GraphVector {
    type Output = GraphVector;
    fn sub(self, rhs: GraphVector) -> GraphVector {
        self + (-rhs)
    }
}

impl Sub for &GraphVector {
    type Output = GraphVector;
    fn sub(self, rhs: &GraphVector) -> GraphVector {
        self + &(-rhs)
    }
}

impl Mul<&Rational> for &GraphVector {
    type Output = GraphVector;
    fn mul(self, c: &Rational) -> GraphVector {
        self.scale(c)
    }
}

impl FromIterator<(CanonicalGraph, Rational)> for GraphVector {
    fn from_iter<I: IntoIterator<Item = (CanonicalGraph, Rational)>>(iter: I) -> Self {
        Self::from_terms(iter)
    }
}

/// One `coeff graph` per line; `0` for the zero vector.
impl fmt::Display for GraphVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return writeln!(f, "0");
        }
        for (g, c) in &self.terms {
            writeln!(f, "{:>6}  {g}", rational::signed(c))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    graph: CanonicalGraph,
    #[serde(with = "rational::serde_str")]
    coeff: Rational,
}

impl Serialize for GraphVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(g, c)| TermJson { graph: g.clone(), coeff: c.clone() })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GraphVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<TermJson>::deserialize(d)?;
        Ok(terms.into_iter().map(|t| (t.graph, t.coeff)).collect())
    }
}

/// Finite rational combination of ordered graph pairs `(left ⊗ right)`;
/// left is the quotient, right the subgraph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TensorVector {
    terms: BTreeMap<(CanonicalGraph, CanonicalGraph), Rational>,
}

impl TensorVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(left: CanonicalGraph, right: CanonicalGraph, c: Rational) -> Self {
        let mut t = Self::zero();
        t.add_term(left, right, c);
        t
    }

    pub fn add_term(&mut self, left: CanonicalGraph, right: CanonicalGraph, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = (left, right);
        let slot = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn coeff(&self, left: &CanonicalGraph, right: &CanonicalGraph) -> Rational {
        self.terms
            .get(&(left.clone(), right.clone()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CanonicalGraph, &CanonicalGraph, &Rational)> {
        self.terms.iter().map(|((l, r), c)| (l, r, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for ((l, r), x) in &self.terms {
            out.add_term(l.clone(), r.clone(), x * c);
        }
        out
    }
}

impl AddAssign<&TensorVector> for TensorVector {
    fn add_assign(&mut self, rhs: &TensorVector) {
        for ((l, r), c) in &rhs.terms {
            self.add_term(l.clone(), r.clone(), c.clone());
        }
    }
}

impl Add for &TensorVector {
    type Output = TensorVector;
    fn add(self, rhs: &TensorVector) -> TensorVector {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Neg for &TensorVector {
    type Output = TensorVector;
    fn neg(self) -> TensorVector {
        self.scale(&-Rational::one())
    }
}

impl Sub for &TensorVector {
    type Output = TensorVector;
    fn sub(self, rhs: &TensorVector) -> TensorVector {
        self + &(-rhs)
    }
}

impl fmt::Display for TensorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return writeln!(f, "0");
        }
        for ((l, r), c) in &self.terms {
            writeln!(f, "{:>6}  {l}  (x)  {r}", rational::signed(c))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PairJson {
    left: CanonicalGraph,
    right: CanonicalGraph,
    #[serde(with = "rational::serde_str")]
    coeff: Rational,
}

impl Serialize for TensorVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<PairJson> = self
            .terms
            .iter()
            .map(|((l, r), c)| PairJson { left: l.clone(), right: r.clone(), coeff: c.clone() })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TensorVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let mut out = TensorVector::zero();
        for t in Vec::<PairJson>::deserialize(d)? {
            out.add_term(t.left, t.right, t.coeff);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog::*;
    use crate::rational::int;

    #[test]
    fn cancellation_drops_terms() {
        let mut v = GraphVector::basis(b1());
        v.add_term(b1(), int(-1));
        assert!(v.is_zero());
        let v = GraphVector::basis(b1()) - GraphVector::basis(b1());
        assert_eq!(v, GraphVector::zero());
        let mut t = TensorVector::term(b1(), b0(), int(2));
        t.add_term(b1(), b0(), int(-2));
        assert!(t.is_zero());
    }

    #[test]
    fn arity_checks() {
        let v = GraphVector::basis(b1()) + GraphVector::basis(b1_left());
        assert_eq!(v.arity(), Err(Error::MixedArity));
        assert_eq!(GraphVector::zero().arity(), Ok(None));
    }

    #[test]
    fn json_round_trip() {
        let v = GraphVector::from_terms([(b1(), int(3)), (bn_left(2), Rational::new(1.into(), 2.into()))]);
        let s = serde_json::to_string(&v).unwrap();
        assert!(s.contains("\"coeff\":\"1/2\""));
        assert_eq!(serde_json::from_str::<GraphVector>(&s).unwrap(), v);
        let t = TensorVector::term(bn_left(2), b0(), int(-1));
        let s = serde_json::to_string(&t).unwrap();
        assert!(s.contains("\"left\""));
        assert_eq!(serde_json::from_str::<TensorVector>(&s).unwrap(), t);
    }
}
