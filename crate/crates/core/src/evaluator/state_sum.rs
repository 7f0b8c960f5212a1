use std::collections::BTreeMap;

use num_traits::One;

use super::{Bivector, Polynomial};
use crate::algebra::{insertion_graphs, GraphVector};
use crate::error::{Error, Result};
use crate::exec::{self, Mode};
use crate::graph::{canonical_labeling, AdmissibleGraph, CanonicalGraph, Target};
use crate::rational::{int, Rational};

/// Boundary points reachable from each internal vertex, sorted.
fn reach_sets(g: &AdmissibleGraph) -> Vec<Vec<usize>> {
    fn visit(k: usize, g: &AdmissibleGraph, memo: &mut Vec<Option<Vec<usize>>>) -> Vec<usize> {
        if let Some(r) = &memo[k] {
            return r.clone();
        }
        let mut r = Vec::new();
        for t in g.legs()[k] {
            match t {
                Target::B(i) => r.push(i as usize),
                Target::V(j) => r.extend(visit(j as usize - 1, g, memo)),
            }
        }
        r.sort_unstable();
        r.dedup();
        memo[k] = Some(r.clone());
        r
    }
    let mut memo = vec![None; g.n()];
    (0..g.n()).map(|k| visit(k, g, &mut memo)).collect()
}

/// Leg pairs in evaluation order: a leg comes first when the boundary points
/// it reaches lie further left (compared by leftmost point, rightmost point,
/// then the whole set); remaining ties keep the stored order.
pub fn oriented_legs(g: &AdmissibleGraph) -> Vec<[Target; 2]> {
    let reach = reach_sets(g);
    let key = |t: Target| {
        let r = match t {
            Target::B(i) => vec![i as usize],
            Target::V(j) => reach[j as usize - 1].clone(),
        };
        (r[0], r[r.len() - 1], r, t)
    };
    g.legs()
        .iter()
        .map(|&[a, c]| if key(a) <= key(c) { [a, c] } else { [c, a] })
        .collect()
}

fn check_inputs(m: usize, alpha: &Bivector, fs: &[Polynomial]) -> Result<()> {
    if fs.len() != m {
        return Err(Error::Arity { expected: m, got: fs.len() });
    }
    for f in fs {
        if f.nvars() != alpha.dim() {
            return Err(Error::Dimension { expected: alpha.dim(), got: f.nvars() });
        }
    }
    Ok(())
}

pub fn state_sum(g: &CanonicalGraph, alpha: &Bivector, fs: &[Polynomial]) -> Result<Polynomial> {
    state_sum_with(Mode::default(), g, alpha, fs)
}

/// `U_Γ(α^n)(f_1, …, f_m)`: sum over all assignments of coordinate indices
/// to edges. Vertex `k` contributes `α^{I(e_k^1) I(e_k^2)}` differentiated
/// along its incoming edges, boundary point `j` contributes `f_j`
/// differentiated along its incoming edges.
pub fn state_sum_with(mode: Mode, g: &CanonicalGraph, alpha: &Bivector, fs: &[Polynomial]) -> Result<Polynomial> {
    check_inputs(g.m(), alpha, fs)?;
    let d = alpha.dim();
    let n = g.n();
    let legs = oriented_legs(g.graph());
    let mut into_vertex = vec![Vec::new(); n];
    let mut into_boundary = vec![Vec::new(); g.m()];
    for (k, pair) in legs.iter().enumerate() {
        for (s, t) in pair.iter().enumerate() {
            match *t {
                Target::B(i) => into_boundary[i as usize - 1].push(2 * k + s),
                Target::V(j) => into_vertex[j as usize - 1].push(2 * k + s),
            }
        }
    }
    let edges = 2 * n;
    let total = d.pow(edges as u32);
    let chunk = (total / 64).max(1);
    let ranges: Vec<(usize, usize)> = (0..total).step_by(chunk).map(|a| (a, (a + chunk).min(total))).collect();
    let term = |code: usize| -> Polynomial {
        let mut idx = vec![0usize; edges];
        let mut c = code;
        for slot in idx.iter_mut() {
            *slot = c % d;
            c /= d;
        }
        let mut acc = Polynomial::one(d);
        for k in 0..n {
            if idx[2 * k] == idx[2 * k + 1] {
                return Polynomial::zero(d);
            }
            let along: Vec<usize> = into_vertex[k].iter().map(|&e| idx[e]).collect();
            let factor = alpha.entry(idx[2 * k], idx[2 * k + 1]).derivatives(&along);
            if factor.is_zero() {
                return factor;
            }
            acc = &acc * &factor;
        }
        for (j, f) in fs.iter().enumerate() {
            let along: Vec<usize> = into_boundary[j].iter().map(|&e| idx[e]).collect();
            let factor = f.derivatives(&along);
            if factor.is_zero() {
                return factor;
            }
            acc = &acc * &factor;
        }
        acc
    };
    Ok(exec::map_reduce(
        mode,
        ranges,
        |(a, b)| (a..b).fold(Polynomial::zero(d), |acc, code| &acc + &term(code)),
        || Polynomial::zero(d),
        |x, y| &x + &y,
    ))
}

/// Linear extension of the state sum.
pub fn state_sum_vector(v: &GraphVector, alpha: &Bivector, fs: &[Polynomial]) -> Result<Polynomial> {
    let mut acc = Polynomial::zero(alpha.dim());
    for (g, c) in v.iter() {
        acc = &acc + &state_sum(g, alpha, fs)?.scale(c);
    }
    Ok(acc)
}

fn orientation_first_slot(g: &AdmissibleGraph) -> Vec<usize> {
    oriented_legs(g)
        .iter()
        .zip(g.legs())
        .map(|(o, s)| if o[0] == s[0] { 0 } else { 1 })
        .collect()
}

/// Signed insertion sum in which every summand also carries the sign
/// comparing the leg order inherited from `g1` and `g2` with the composite's
/// own evaluation order. Its state sum is the Gerstenhaber composition of the
/// two operators.
pub fn compose_oriented(g1: &CanonicalGraph, g2: &CanonicalGraph) -> Result<GraphVector> {
    let first1 = orientation_first_slot(g1.graph());
    let first2 = orientation_first_slot(g2.graph());
    let mut out = GraphVector::zero();
    for i in 1..=g1.m() {
        let sign_i = if (i - 1) * (g2.m() - 1) % 2 == 0 { 1 } else { -1 };
        let mut tally: BTreeMap<CanonicalGraph, i64> = BTreeMap::new();
        for ins in insertion_graphs(g1, i, g2)? {
            let (canon, perm) = canonical_labeling(&ins.graph());
            let own = oriented_legs(canon.graph());
            let relabel = |t: Target| match t {
                Target::V(j) => Target::V(perm[j as usize - 1] as u8 + 1),
                other => other,
            };
            let mut sign = sign_i;
            for (k, pair) in ins.legs.iter().enumerate() {
                let f = if k < ins.n1 { first1[k] } else { first2[k - ins.n1] };
                let inherited = [relabel(pair[f]), relabel(pair[1 - f])];
                if inherited != own[perm[k]] {
                    sign = -sign;
                }
            }
            *tally.entry(canon).or_default() += sign;
        }
        for (g, c) in tally {
            out.add_term(g, int(c));
        }
    }
    Ok(out)
}

/// `Σ_i (−1)^{(i−1)(m'−1)} U_{g1}(f_1, …, U_{g2}(f_i, …), …)` computed on
/// operators directly.
pub fn gerstenhaber(g1: &CanonicalGraph, g2: &CanonicalGraph, alpha: &Bivector, fs: &[Polynomial]) -> Result<Polynomial> {
    let (m1, m2) = (g1.m(), g2.m());
    check_inputs(m1 + m2 - 1, alpha, fs)?;
    let mut acc = Polynomial::zero(alpha.dim());
    for i in 1..=m1 {
        let inner = state_sum(g2, alpha, &fs[i - 1..i - 1 + m2])?;
        let mut args: Vec<Polynomial> = fs[..i - 1].to_vec();
        args.push(inner);
        args.extend_from_slice(&fs[i - 1 + m2..]);
        let sign = if (i - 1) * (m2 - 1) % 2 == 0 { Rational::one() } else { -Rational::one() };
        acc = &acc + &state_sum(g1, alpha, &args)?.scale(&sign);
    }
    Ok(acc)
}
