use std::str::FromStr;

use super::{b, canonicalize, sorted_pair, AdmissibleGraph, CanonicalGraph, Target};
use crate::error::{Error, Result};

/// Boundary product of two basis graphs: internal structures glued over a
/// shared boundary. `None` when the arities differ.
pub fn product(g1: &CanonicalGraph, g2: &CanonicalGraph) -> Option<CanonicalGraph> {
    if g1.m() != g2.m() {
        return None;
    }
    let shift = g1.n() as u8;
    let mut legs = g1.legs().to_vec();
    legs.extend(g2.legs().iter().map(|pair| {
        pair.map(|t| match t {
            Target::V(j) => Target::V(j + shift),
            other => other,
        })
    }));
    Some(canonicalize(&AdmissibleGraph { m: g1.m(), legs }))
}

/// Connected components of the internal-edge structure, each rebased as a
/// graph on the full boundary. Sorted; units have no factors.
pub fn prime_factorize(g: &CanonicalGraph) -> Vec<CanonicalGraph> {
    let n = g.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for (k, pair) in g.legs().iter().enumerate() {
        for t in pair {
            if let Some(j) = t.internal() {
                let (a, c) = (find(&mut parent, k), find(&mut parent, j));
                parent[a] = c;
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for k in 0..n {
        let r = find(&mut parent, k);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(k);
    }
    let mut factors: Vec<CanonicalGraph> = groups
        .iter()
        .map(|members| canonicalize(&induced(g.graph(), members)))
        .collect();
    factors.sort();
    factors
}

/// Subgraph on the given internal vertices (closed under out-edges),
/// keeping the full boundary.
fn induced(g: &AdmissibleGraph, members: &[usize]) -> AdmissibleGraph {
    let mut index = vec![usize::MAX; g.n()];
    for (new, &old) in members.iter().enumerate() {
        index[old] = new;
    }
    let legs = members
        .iter()
        .map(|&k| {
            g.legs()[k].map(|t| match t {
                Target::V(j) => Target::V(index[j as usize - 1] as u8 + 1),
                other => other,
            })
        })
        .collect();
    AdmissibleGraph { m: g.m(), legs }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Heights {
    pub left: i64,
    pub right: i64,
}

impl Heights {
    /// `φ = φ_R − φ_L`.
    pub fn phi(&self) -> i64 {
        self.right - self.left
    }
}

/// In-degrees of the two boundary points of an `m = 2` graph.
pub fn heights(g: &CanonicalGraph) -> Result<Heights> {
    if g.m() != 2 {
        return Err(Error::Arity { expected: 2, got: g.m() });
    }
    let d = g.graph().boundary_in_degrees();
    Ok(Heights { left: d[0] as i64, right: d[1] as i64 })
}

/// Where an `m = 2` graph sits inside three boundary points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// Points (2,3), point 1 bare.
    Left,
    /// Points (1,2), point 3 bare.
    Right,
    /// Points (1,3), point 2 bare.
    Middle,
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            "middle" => Ok(Side::Middle),
            other => Err(Error::Precondition(format!("unknown side {other:?}"))),
        }
    }
}

pub fn pad(g: &CanonicalGraph, side: Side) -> Result<CanonicalGraph> {
    if g.m() != 2 {
        return Err(Error::Arity { expected: 2, got: g.m() });
    }
    let (p1, p2) = match side {
        Side::Left => (2, 3),
        Side::Right => (1, 2),
        Side::Middle => (1, 3),
    };
    let legs = g
        .legs()
        .iter()
        .map(|pair| {
            let map = |t: Target| match t {
                Target::B(1) => b(p1),
                Target::B(_) => b(p2),
                other => other,
            };
            sorted_pair(map(pair[0]), map(pair[1]))
        })
        .collect();
    Ok(canonicalize(&AdmissibleGraph { m: 3, legs }))
}
