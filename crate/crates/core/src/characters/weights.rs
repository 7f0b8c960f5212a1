use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{GraphVector, TensorVector};
use crate::error::{Error, Result};
use crate::graph::{catalog, enumerate_class, CanonicalGraph, Restriction};
use crate::rational::{self, Rational};

/// Rational weights on `m = 2` graphs, populated order by order.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightSystem {
    restriction: Restriction,
    multiplicative: bool,
    symmetric: bool,
    solved_order: usize,
    values: BTreeMap<CanonicalGraph, Rational>,
}

impl WeightSystem {
    /// Empty system with `W(b_0) = 1`, solved through order 0.
    pub fn new(restriction: Restriction, multiplicative: bool, symmetric: bool) -> Self {
        let mut values = BTreeMap::new();
        values.insert(catalog::b0(), Rational::one());
        WeightSystem { restriction, multiplicative, symmetric, solved_order: 0, values }
    }

    /// Multiplicative, symmetric system with every admitted graph weighted 1
    /// through `order`.
    pub fn ones(restriction: Restriction, order: usize) -> Self {
        let mut w = Self::new(restriction, true, true);
        for n in 1..=order {
            for g in enumerate_class(n, 2, restriction) {
                if g.is_prime() {
                    w.values.insert(g, Rational::one());
                }
            }
        }
        w.solved_order = order;
        w
    }

    pub fn restriction(&self) -> Restriction {
        self.restriction
    }

    pub fn is_multiplicative(&self) -> bool {
        self.multiplicative
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn solved_order(&self) -> usize {
        self.solved_order
    }


    /// Stores a weight (and its transpose's, when symmetric). Graphs outside
    /// the restriction are rejected.
    pub fn set(&mut self, g: CanonicalGraph, value: Rational) -> Result<()> {
        if g.m() != 2 {
            return Err(Error::Arity { expected: 2, got: g.m() });
        }
        if !self.restriction.admits(g.graph()) {
            return Err(Error::Precondition(format!("{g} is outside the {} class", self.restriction)));
        }
        if self.symmetric {
            self.values.insert(g.transpose(), value.clone());
        }
        self.values.insert(g, value);
        Ok(())
    }

    /// Extends the solved range without adding values.
    pub fn mark_solved(&mut self, order: usize) {
        self.solved_order = self.solved_order.max(order);
    }

    /// Stored value only, no derivation.
    pub fn stored(&self, g: &CanonicalGraph) -> Option<&Rational> {
        self.values.get(g)
    }

    /// `W(Γ)` for an `m = 2` graph: zero outside the restriction, a product
    /// over prime factors when multiplicative.
    pub fn weight(&self, g: &CanonicalGraph) -> Result<Rational> {
        if g.m() != 2 {
            return Err(Error::Arity { expected: 2, got: g.m() });
        }
        if !self.restriction.admits(g.graph()) {
            return Ok(Rational::zero());
        }
        if let Some(v) = self.values.get(g) {
            return Ok(v.clone());
        }
        if g.n() > self.solved_order {
            return Err(Error::Unsolved { graph: g.to_string(), solved: self.solved_order });
        }
        if self.symmetric {
            if let Some(v) = self.values.get(&g.transpose()) {
                return Ok(v.clone());
            }
        }
        if self.multiplicative && !g.is_prime() && !g.is_unit() {
            let mut acc = Rational::one();
            for f in g.prime_factors() {
                acc *= self.weight(&f)?;
            }
            return Ok(acc);
        }
        Err(Error::Unsolved { graph: g.to_string(), solved: self.solved_order })
    }

    pub fn evaluate(&self, v: &GraphVector) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (g, c) in v.iter() {
            acc += c * self.weight(g)?;
        }
        Ok(acc)
    }

    /// Linear on tensors, multiplicative across the two factors.
    pub fn evaluate_tensor(&self, tv: &TensorVector) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (l, r, c) in tv.iter() {
            acc += c * self.weight(l)? * self.weight(r)?;
        }
        Ok(acc)
    }

    /// Every admitted graph through the solved order with its weight.
    pub fn table(&self) -> Result<Vec<(CanonicalGraph, Rational)>> {
        let mut out = Vec::new();
        for n in 0..=self.solved_order {
            for g in enumerate_class(n, 2, self.restriction) {
                let w = self.weight(&g)?;
                out.push((g, w));
            }
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct ValueJson {
    pub graph: CanonicalGraph,
    #[serde(with = "rational::serde_str")]
    pub weight: Rational,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct WeightsJson {
    pub restriction: Restriction,
    pub orders: usize,
    pub values: Vec<ValueJson>,
    #[serde(default)]
    pub report: Vec<super::solve::ReportEntry>,
}

impl WeightSystem {
    pub(crate) fn to_json(&self, report: &[super::solve::ReportEntry]) -> Result<WeightsJson> {
        Ok(WeightsJson {
            restriction: self.restriction,
            orders: self.solved_order,
            values: self
                .table()?
                .into_iter()
                .map(|(graph, weight)| ValueJson { graph, weight })
                .collect(),
            report: report.to_vec(),
        })
    }

    pub(crate) fn from_json(json: WeightsJson) -> Self {
        let mut w = WeightSystem::new(json.restriction, false, false);
        for v in json.values {
            w.values.insert(v.graph, v.weight);
        }
        w.solved_order = json.orders;
        w
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::coproduct_reduced;
    use crate::graph::catalog::*;
    use crate::rational::int;

    #[test]
    fn evaluation_examples() {
        let w = WeightSystem::ones(Restriction::Full, 2);
        assert_eq!(w.evaluate_tensor(&coproduct_reduced(&t2_left()).unwrap()).unwrap(), int(0));
        assert_eq!(w.evaluate(&GraphVector::zero()).unwrap(), int(0));
        let mut w = WeightSystem::new(Restriction::Full, true, true);
        w.set(b1(), int(3)).unwrap();
        w.mark_solved(2);
        assert_eq!(w.weight(&b1_squared()).unwrap(), int(9));
        assert!(matches!(w.weight(&bn_left(2)), Err(Error::Unsolved { .. })));
        assert!(matches!(w.weight(&bn_left(3)), Err(Error::Unsolved { .. })));
    }

    #[test]
    fn symmetric_set_covers_transpose() {
        let mut w = WeightSystem::new(Restriction::Forest, true, true);
        w.set(b1(), int(1)).unwrap();
        w.set(bn_left(2), int(5)).unwrap();
        w.mark_solved(2);
        assert_eq!(w.weight(&bn_right(2)).unwrap(), int(5));
    }

    #[test]
    fn restriction_zeroes_outside() {
        let w = WeightSystem::ones(Restriction::ZeroInDegree, 2);
        assert_eq!(w.weight(&bn_left(2)).unwrap(), int(0));
        assert_eq!(w.weight(&b1_squared()).unwrap(), int(1));
        let mut w = WeightSystem::new(Restriction::ZeroInDegree, true, true);
        assert!(w.set(bn_left(2), int(1)).is_err());
    }
}
