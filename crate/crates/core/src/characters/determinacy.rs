//! Weights as affine functions of the left Bernoulli weights `W(b_n^L)`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::coproduct_reduced;
use crate::error::{Error, Result};
use crate::graph::{catalog, enumerate_class, CanonicalGraph, Restriction};
use crate::linalg;
use crate::rational::Rational;

/// `constant + Σ coeff_k · p_k`, where `p_k = W(b_k^L)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AffineExpr {
    pub constant: Rational,
    pub coeffs: BTreeMap<usize, Rational>,
}

impl AffineExpr {
    pub fn constant(c: Rational) -> Self {
        AffineExpr { constant: c, coeffs: BTreeMap::new() }
    }

    pub fn parameter(k: usize) -> Self {
        AffineExpr { constant: Rational::zero(), coeffs: BTreeMap::from([(k, Rational::one())]) }
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.coeffs.is_empty()
    }

    fn add_scaled(&mut self, other: &AffineExpr, c: &Rational) {
        self.constant += &other.constant * c;
        for (k, x) in &other.coeffs {
            let slot = self.coeffs.entry(*k).or_insert_with(Rational::zero);
            *slot += x * c;
            if slot.is_zero() {
                self.coeffs.remove(k);
            }
        }
    }

    fn scaled(&self, c: &Rational) -> AffineExpr {
        let mut out = AffineExpr::default();
        out.add_scaled(self, c);
        out
    }

    fn mul(&self, other: &AffineExpr) -> Result<AffineExpr> {
        match (self.is_constant(), other.is_constant()) {
            (true, _) => Ok(other.scaled(&self.constant)),
            (_, true) => Ok(self.scaled(&other.constant)),
            _ => Err(Error::Precondition("product of two parameter-dependent weights".into())),
        }
    }

    pub fn evaluate(&self, params: &BTreeMap<usize, Rational>) -> Rational {
        let mut acc = self.constant.clone();
        for (k, c) in &self.coeffs {
            acc += c * params.get(k).cloned().unwrap_or_else(Rational::zero);
        }
        acc
    }
}

impl fmt::Display for AffineExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.constant)?;
        for (k, c) in &self.coeffs {
            write!(f, " + ({c})*W(b{k}L)")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct OrderDeterminacy {
    pub order: usize,
    /// Every non-Bernoulli unknown is pinned down by the parameters.
    pub determined: bool,
    pub expressions: Vec<(CanonicalGraph, AffineExpr)>,
    /// Conditions left on the parameters themselves (`expr = 0`).
    pub constraints: Vec<AffineExpr>,
}

/// Solves the symmetric, multiplicative system through `max_order` with the
/// left Bernoulli weights (`n ≥ 2`) left free, normalized by
/// `W(b_0) = W(b_1) = 1`.
pub fn bernoulli_determinacy(restriction: Restriction, max_order: usize) -> Result<Vec<OrderDeterminacy>> {
    let key = |g: &CanonicalGraph| g.clone().min(g.transpose());
    let mut known: BTreeMap<CanonicalGraph, AffineExpr> = BTreeMap::new();
    known.insert(catalog::b0(), AffineExpr::constant(Rational::one()));
    known.insert(catalog::b1(), AffineExpr::constant(Rational::one()));
    let mut report = Vec::new();
    for n in 2..=max_order {
        let bern = key(&catalog::bn_left(n));
        if restriction.admits(bern.graph()) {
            known.insert(bern.clone(), AffineExpr::parameter(n));
        }
        let unknowns: Vec<CanonicalGraph> = enumerate_class(n, 2, restriction)
            .into_iter()
            .filter(|g| g.is_prime() && key(g) == *g && *g != bern)
            .collect();
        let index: BTreeMap<&CanonicalGraph, usize> = unknowns.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let width = unknowns.len();
        let mut rows: Vec<(Vec<Rational>, AffineExpr)> = Vec::new();
        for source in enumerate_class(n, 3, restriction) {
            if source.is_symmetric() {
                continue;
            }
            let mut coeffs = vec![Rational::zero(); width];
            let mut rest = AffineExpr::default();
            for (q, s, c) in coproduct_reduced(&source)?.iter() {
                let (top, other) = if q.n() == n { (q, s) } else if s.n() == n { (s, q) } else {
                    let v = value(&known, restriction, q)?.mul(&value(&known, restriction, s)?)?;
                    rest.add_scaled(&v, c);
                    continue;
                };
                let factor = value(&known, restriction, other)?;
                if !factor.is_constant() {
                    return Err(Error::Precondition("parameter times unknown".into()));
                }
                let c = c * &factor.constant;
                match index.get(&key(top)) {
                    Some(&i) if restriction.admits(top.graph()) => coeffs[i] += c,
                    _ => rest.add_scaled(&value(&known, restriction, top)?, &c),
                }
            }
            rows.push((coeffs, rest));
        }
        let params: Vec<usize> = (2..=n).collect();
        let mut matrix: Vec<Vec<Rational>> = rows
            .iter()
            .map(|(a, e)| {
                let mut row = a.clone();
                row.extend(params.iter().map(|k| e.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)));
                row.push(e.constant.clone());
                row
            })
            .collect();
        let pivots = linalg::rref(&mut matrix, width);
        let to_expr = |row: &[Rational], negate: bool| {
            let sign = if negate { -Rational::one() } else { Rational::one() };
            let mut e = AffineExpr::constant(&row[width + params.len()] * &sign);
            for (j, k) in params.iter().enumerate() {
                let c = &row[width + j] * &sign;
                if !c.is_zero() {
                    e.coeffs.insert(*k, c);
                }
            }
            e
        };
        let determined = pivots.len() == width;
        let mut expressions = Vec::new();
        for (row, &col) in matrix.iter().zip(&pivots) {
            let e = to_expr(row, true);
            if determined {
                known.insert(unknowns[col].clone(), e.clone());
            }
            expressions.push((unknowns[col].clone(), e));
        }
        let mut leftover: Vec<Vec<Rational>> = matrix[pivots.len()..].iter().map(|r| r[width..].to_vec()).collect();
        linalg::rref(&mut leftover, params.len());
        let pad = vec![Rational::zero(); width];
        let constraints = leftover
            .iter()
            .map(|r| [pad.as_slice(), r.as_slice()].concat())
            .map(|row| to_expr(&row, false))
            .filter(|e| !e.is_zero())
            .collect();
        report.push(OrderDeterminacy { order: n, determined, expressions, constraints });
        if !determined {
            break;
        }
    }
    Ok(report)
}

fn value(known: &BTreeMap<CanonicalGraph, AffineExpr>, r: Restriction, g: &CanonicalGraph) -> Result<AffineExpr> {
    if !r.admits(g.graph()) {
        return Ok(AffineExpr::default());
    }
    let k = g.clone().min(g.transpose());
    if let Some(e) = known.get(&k) {
        return Ok(e.clone());
    }
    if g.is_unit() {
        return Ok(AffineExpr::constant(Rational::one()));
    }
    if !g.is_prime() {
        let mut acc = AffineExpr::constant(Rational::one());
        for f in g.prime_factors() {
            acc = acc.mul(&value(known, r, &f)?)?;
        }
        return Ok(acc);
    }
    Err(Error::Unsolved { graph: g.to_string(), solved: g.n().saturating_sub(1) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn forest_weights_follow_bernoulli() {
        let report = bernoulli_determinacy(Restriction::Forest, 3).unwrap();
        assert_eq!(report.len(), 2);
        assert!(report.iter().all(|r| r.determined));
        // order 2 has no non-Bernoulli prime, and pins W(b2L) = 1
        assert!(report[0].expressions.is_empty());
        assert_eq!(
            report[0].constraints,
            vec![AffineExpr { constant: int(-1), coeffs: BTreeMap::from([(2, int(1))]) }]
        );
    }
}
