use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::WeightSystem;
use crate::algebra::{apply_t, apply_t_tensor, coproduct_reduced, GraphVector, TensorVector};
use crate::error::{Error, Result};
use crate::graph::{enumerate_class, CanonicalGraph};
use crate::rational::Rational;

/// `S(Γ)` split into a graph part and formal `quotient ⊗ subgraph` products.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AntipodeValue {
    pub graphs: GraphVector,
    pub tensors: TensorVector,
}

impl AntipodeValue {
    /// `Γ ↦ −Γ^t` on the graph part, factor-wise transpose on products.
    pub fn apply_t(&self) -> AntipodeValue {
        AntipodeValue { graphs: apply_t(&self.graphs), tensors: apply_t_tensor(&self.tensors) }
    }

    pub fn scale(&self, c: &Rational) -> AntipodeValue {
        AntipodeValue { graphs: self.graphs.scale(c), tensors: self.tensors.scale(c) }
    }
}

/// Reduced coproduct in the graded sense: `Δ_b` for three boundary points;
/// two-point bivector graphs have no proper normal subgraphs.
fn reduced(g: &CanonicalGraph) -> Result<TensorVector> {
    match g.m() {
        2 => Ok(TensorVector::zero()),
        3 => coproduct_reduced(g),
        m => Err(Error::Arity { expected: 3, got: m }),
    }
}

/// `S(Γ) = −Γ − Σ S(Γ/γ) γ`, with `S(Γ/γ) = −Γ/γ` since quotients have two
/// boundary points.
pub fn antipode(g: &CanonicalGraph) -> Result<AntipodeValue> {
    let graphs = GraphVector::term(g.clone(), -Rational::one());
    let mut tensors = TensorVector::zero();
    for (q, s, c) in reduced(g)?.iter() {
        let sq = antipode(q)?;
        if !sq.tensors.is_zero() {
            return Err(Error::Precondition("nested antipode products".into()));
        }
        for (qq, cq) in sq.graphs.iter() {
            tensors.add_term(qq.clone(), s.clone(), -(c * cq));
        }
    }
    Ok(AntipodeValue { graphs, tensors })
}

/// `S = Σ_k (ηε − id)^{*k}`. Each convolution step splits the leftmost
/// factor with the reduced coproduct; `ηε − id` is `−id` on graphs.
pub fn antipode_geometric(g: &CanonicalGraph) -> Result<AntipodeValue> {
    let mut words: BTreeMap<Vec<CanonicalGraph>, Rational> = BTreeMap::new();
    let mut layer: BTreeMap<Vec<CanonicalGraph>, Rational> = BTreeMap::new();
    layer.insert(vec![g.clone()], -Rational::one());
    while !layer.is_empty() {
        let mut next: BTreeMap<Vec<CanonicalGraph>, Rational> = BTreeMap::new();
        for (word, c) in &layer {
            *words.entry(word.clone()).or_insert_with(Rational::zero) += c;
            for (q, s, d) in reduced(&word[0])?.iter() {
                let mut w = vec![q.clone(), s.clone()];
                w.extend_from_slice(&word[1..]);
                // one more factor of −id on the new piece
                *next.entry(w).or_insert_with(Rational::zero) -= c * d;
            }
        }
        next.retain(|_, c| !c.is_zero());
        layer = next;
    }
    let mut out = AntipodeValue::default();
    for (word, c) in words {
        match word.as_slice() {
            [a] => out.graphs.add_term(a.clone(), c),
            [a, b] => out.tensors.add_term(a.clone(), b.clone(), c),
            _ if c.is_zero() => {}
            _ => return Err(Error::Precondition("antipode word longer than two factors".into())),
        }
    }
    Ok(out)
}

/// Evaluates `S(Γ)` with `W` on two-point graphs and `extension` on
/// three-point graphs.
pub fn evaluate_antipode(w: &WeightSystem, s: &AntipodeValue, extension: &Rational) -> Result<Rational> {
    let mut acc = w.evaluate_tensor(&s.tensors)?;
    for (g, c) in s.graphs.iter() {
        acc += c * if g.m() == 3 { extension.clone() } else { w.weight(g)? };
    }
    Ok(acc)
}

/// `W(S(Γ)) = −W(Γ)` on every three-point graph of the restriction class
/// through `order`. The three-point weight is a free symbol, so the check
/// runs with two different values for it.
pub fn unitarity_check(w: &WeightSystem, order: usize) -> Result<bool> {
    let extensions = [Rational::zero(), Rational::one()];
    for n in 0..=order {
        for g in enumerate_class(n, 3, w.restriction()) {
            let s = antipode(&g)?;
            for e in &extensions {
                if evaluate_antipode(w, &s, e)? != -e.clone() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
