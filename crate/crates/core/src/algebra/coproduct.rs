use num_traits::One;

use super::{GraphVector, TensorVector};
use crate::error::{Error, Result};
use crate::graph::{self, catalog, canonicalize, AdmissibleGraph, CanonicalGraph, Target};
use crate::rational::{int, Rational};

/// A normal subgraph of Γ: internal vertices closed under out-edges whose
/// boundary part is the consecutive run `run_start .. run_start + run_len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalSubgraphWitness {
    /// 1-based first boundary point of the run.
    pub run_start: usize,
    pub run_len: usize,
    /// 1-based internal vertices of Γ in the subgraph.
    pub internal: Vec<usize>,
    pub subgraph: CanonicalGraph,
    pub quotient: CanonicalGraph,
    /// `(−1)^{run_start − 1}`.
    pub sign: i64,
}

/// Collapses the run and the marked internal vertices to one boundary point.
/// `None` when that would create parallel edges.
pub fn quotient(
    g: &CanonicalGraph,
    run_start: usize,
    run_len: usize,
    members: &[bool],
) -> Option<CanonicalGraph> {
    let s = run_start;
    let collapse = graph::b(s);
    let mut index = vec![0usize; g.n()];
    let mut next = 0;
    for (k, &inside) in members.iter().enumerate() {
        if !inside {
            next += 1;
            index[k] = next;
        }
    }
    let mut legs = Vec::with_capacity(next);
    for (k, pair) in g.legs().iter().enumerate() {
        if members[k] {
            continue;
        }
        let map = |t: Target| match t {
            Target::B(j) => {
                let j = j as usize;
                if j < s {
                    graph::b(j)
                } else if j < s + run_len {
                    collapse
                } else {
                    graph::b(j - run_len + 1)
                }
            }
            Target::V(j) if members[j as usize - 1] => collapse,
            Target::V(j) => graph::v(index[j as usize - 1]),
        };
        let (a, c) = (map(pair[0]), map(pair[1]));
        if a == c {
            return None;
        }
        legs.push([a, c]);
    }
    let m = g.m() - run_len + 1;
    Some(canonicalize(&AdmissibleGraph::new(m, legs).expect("quotient is admissible")))
}

fn induced(g: &CanonicalGraph, run_start: usize, run_len: usize, members: &[bool]) -> CanonicalGraph {
    let mut index = vec![0usize; g.n()];
    let mut next = 0;
    for (k, &inside) in members.iter().enumerate() {
        if inside {
            next += 1;
            index[k] = next;
        }
    }
    let legs = g
        .legs()
        .iter()
        .enumerate()
        .filter(|(k, _)| members[*k])
        .map(|(_, pair)| {
            pair.map(|t| match t {
                Target::B(j) => graph::b(j as usize - run_start + 1),
                Target::V(j) => graph::v(index[j as usize - 1]),
            })
        })
        .collect();
    canonicalize(&AdmissibleGraph::new(run_len, legs).expect("induced subgraph is admissible"))
}

/// All non-trivial normal subgraphs whose boundary run has the given length
/// and whose quotient is admissible.
pub fn normal_subgraphs(g: &CanonicalGraph, run_len: usize) -> Vec<NormalSubgraphWitness> {
    let (m, n) = (g.m(), g.n());
    let mut out = Vec::new();
    if run_len == 0 || run_len > m {
        return out;
    }
    for s in 1..=m - run_len + 1 {
        let in_run = |t: Target| match t {
            Target::B(j) => (s..s + run_len).contains(&(j as usize)),
            Target::V(_) => false,
        };
        for mask in 0u32..(1 << n) {
            let members: Vec<bool> = (0..n).map(|k| mask >> k & 1 == 1).collect();
            if run_len == m && members.iter().all(|&x| x) {
                continue;
            }
            let closed = (0..n).filter(|&k| members[k]).all(|k| {
                g.legs()[k].iter().all(|&t| {
                    in_run(t) || t.internal().is_some_and(|j| members[j])
                })
            });
            if !closed {
                continue;
            }
            let Some(q) = quotient(g, s, run_len, &members) else {
                continue;
            };
            out.push(NormalSubgraphWitness {
                run_start: s,
                run_len,
                internal: (0..n).filter(|&k| members[k]).map(|k| k + 1).collect(),
                subgraph: induced(g, s, run_len, &members),
                quotient: q,
                sign: if (s - 1) % 2 == 0 { 1 } else { -1 },
            });
        }
    }
    out
}

fn require_three(g: &CanonicalGraph) -> Result<()> {
    if g.m() == 3 {
        Ok(())
    } else {
        Err(Error::Arity { expected: 3, got: g.m() })
    }
}

/// `Δ_b Γ = Σ sign · (Γ/γ) ⊗ γ` over normal subgraphs on two adjacent points.
pub fn coproduct_reduced(g: &CanonicalGraph) -> Result<TensorVector> {
    require_three(g)?;
    Ok(sum_witnesses(normal_subgraphs(g, 2).iter()))
}

/// `Δ_b` restricted to prime subgraphs (and `b_0`).
pub fn coproduct_prime(g: &CanonicalGraph) -> Result<TensorVector> {
    require_three(g)?;
    if !g.is_prime() {
        return Err(Error::NotPrime(g.to_string()));
    }
    let ws = normal_subgraphs(g, 2);
    Ok(sum_witnesses(ws.iter().filter(|w| w.subgraph.is_prime() || w.subgraph.is_unit())))
}

fn sum_witnesses<'a>(ws: impl Iterator<Item = &'a NormalSubgraphWitness>) -> TensorVector {
    let mut out = TensorVector::zero();
    for w in ws {
        out.add_term(w.quotient.clone(), w.subgraph.clone(), int(w.sign));
    }
    out
}

/// Coefficient of `g1 ⊗ g2`.
pub fn pairing(tv: &TensorVector, g1: &CanonicalGraph, g2: &CanonicalGraph) -> Rational {
    tv.coeff(g1, g2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityCheck {
    pub composed: Rational,
    pub paired: Rational,
}

impl DualityCheck {
    pub fn holds(&self) -> bool {
        self.composed == self.paired
    }
}

/// Compares the coefficient of Γ in `g1 ∘ g2` with `⟨g1 ⊗ g2, Δ_b Γ⟩`.
pub fn duality_check(g1: &CanonicalGraph, g2: &CanonicalGraph, big: &CanonicalGraph) -> Result<DualityCheck> {
    let composed = super::compose_basis(g1, g2).coeff(big);
    let paired = pairing(&coproduct_reduced(big)?, g1, g2);
    Ok(DualityCheck { composed, paired })
}

/// Which adjacent boundary pair to collapse.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pair {
    /// Points (1,2).
    Left,
    /// Points (2,3).
    Right,
}

/// `Γ / b_0^{L|R}`, or `None` when the collapse creates parallel edges.
pub fn collapse_pair(g: &CanonicalGraph, pair: Pair) -> Result<Option<CanonicalGraph>> {
    require_three(g)?;
    let start = match pair {
        Pair::Left => 1,
        Pair::Right => 2,
    };
    Ok(quotient(g, start, 2, &vec![false; g.n()]))
}

/// `σ_m(Γ) = Γ/b_0^L − Γ/b_0^R`.
pub fn merger(g: &CanonicalGraph) -> Result<GraphVector> {
    let mut out = GraphVector::zero();
    if let Some(q) = collapse_pair(g, Pair::Left)? {
        out.add_term(q, Rational::one());
    }
    if let Some(q) = collapse_pair(g, Pair::Right)? {
        out.add_term(q, -Rational::one());
    }
    Ok(out)
}

/// `σ_i(Γ) = (Γ/b_0^i) ⊗ b_0`.
pub fn boundary_reduce(g: &CanonicalGraph, pair: Pair) -> Result<TensorVector> {
    Ok(match collapse_pair(g, pair)? {
        Some(q) => TensorVector::term(q, catalog::b0(), Rational::one()),
        None => TensorVector::zero(),
    })
}

/// `T ⊗ T`; the two signs of `T` cancel, leaving factor-wise transposes.
pub fn apply_t_tensor(tv: &TensorVector) -> TensorVector {
    let mut out = TensorVector::zero();
    for (l, r, c) in tv.iter() {
        out.add_term(l.transpose(), r.transpose(), c.clone());
    }
    out
}
