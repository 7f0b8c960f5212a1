//! Rooted trees with L/R-labelled leaves, their Connes-Kreimer coproduct and
//! the correspondence with forest graphs on two boundary points.
//!
//! Text form: a node is `(c1,c2)` with children nodes or the leaves `L`, `R`;
//! forests are bracketed, `[(L,R),(L,(L,R))]`. Coproduct trunks may have
//! nodes with fewer than two children, e.g. `(L)`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{canonicalize, AdmissibleGraph, CanonicalGraph, Target};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    L,
    R,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Child {
    Leaf(Label),
    Node(RootedTree),
}

/// Internal node with its children kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootedTree {
    children: Vec<Child>,
}

impl RootedTree {
    pub fn new(mut children: Vec<Child>) -> Self {
        children.sort();
        RootedTree { children }
    }

    pub fn node(a: Child, b: Child) -> Self {
        Self::new(vec![a, b])
    }

    pub fn children(&self) -> &[Child] {
        &self.children
    }

    /// Number of internal nodes.
    pub fn size(&self) -> usize {
        1 + self.subtrees().map(RootedTree::size).sum::<usize>()
    }

    pub fn subtrees(&self) -> impl Iterator<Item = &RootedTree> {
        self.children.iter().filter_map(|c| match c {
            Child::Node(t) => Some(t),
            Child::Leaf(_) => None,
        })
    }

    pub fn is_binary(&self) -> bool {
        self.children.len() == 2 && self.subtrees().all(RootedTree::is_binary)
    }

    /// `(L, (L, … (L, R)))` with `n` nodes.
    pub fn left_comb(n: usize) -> Self {
        assert!(n >= 1);
        let mut t = Self::node(Child::Leaf(Label::L), Child::Leaf(Label::R));
        for _ in 1..n {
            t = Self::node(Child::Leaf(Label::L), Child::Node(t));
        }
        t
    }
}

impl From<RootedTree> for Child {
    fn from(t: RootedTree) -> Self {
        Child::Node(t)
    }
}

impl fmt::Display for Child {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Child::Leaf(Label::L) => write!(f, "L"),
            Child::Leaf(Label::R) => write!(f, "R"),
            Child::Node(t) => write!(f, "{t}"),
        }
    }
}

impl fmt::Display for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.children.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Multiset of trees in sorted order; the empty forest is the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Forest(Vec<RootedTree>);

impl Forest {
    pub fn new(mut trees: Vec<RootedTree>) -> Self {
        trees.sort();
        Forest(trees)
    }

    pub fn empty() -> Self {
        Forest(Vec::new())
    }

    pub fn trees(&self) -> &[RootedTree] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(RootedTree::size).sum()
    }
}

impl From<RootedTree> for Forest {
    fn from(t: RootedTree) -> Self {
        Forest(vec![t])
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, "]")
    }
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax { position: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn child(&mut self) -> Result<Child> {
        match self.peek() {
            Some(b'L') => {
                self.pos += 1;
                Ok(Child::Leaf(Label::L))
            }
            Some(b'R') => {
                self.pos += 1;
                Ok(Child::Leaf(Label::R))
            }
            Some(b'(') => Ok(Child::Node(self.tree()?)),
            _ => Err(self.error("expected 'L', 'R' or '('")),
        }
    }

    fn tree(&mut self) -> Result<RootedTree> {
        self.expect(b'(')?;
        let mut children = Vec::new();
        if self.peek() != Some(b')') {
            children.push(self.child()?);
            while self.peek() == Some(b',') {
                self.pos += 1;
                children.push(self.child()?);
            }
        }
        self.expect(b')')?;
        Ok(RootedTree::new(children))
    }

    fn forest(&mut self) -> Result<Forest> {
        self.expect(b'[')?;
        let mut trees = Vec::new();
        if self.peek() != Some(b']') {
            trees.push(self.tree()?);
            while self.peek() == Some(b',') {
                self.pos += 1;
                trees.push(self.tree()?);
            }
        }
        self.expect(b']')?;
        Ok(Forest::new(trees))
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.error("trailing input")),
        }
    }
}

pub fn parse_tree(text: &str) -> Result<RootedTree> {
    let mut p = Parser { text: text.as_bytes(), pos: 0 };
    let t = p.tree()?;
    p.finish()?;
    Ok(t)
}

/// Accepts a bracketed forest or a single tree.
pub fn parse_forest(text: &str) -> Result<Forest> {
    let mut p = Parser { text: text.as_bytes(), pos: 0 };
    let f = if p.peek() == Some(b'[') { p.forest()? } else { Forest::from(p.tree()?) };
    p.finish()?;
    Ok(f)
}

/// `Σ coeff · (left ⊗ right)` over forests.
pub type ForestTensor = BTreeMap<(Forest, Forest), i64>;

pub fn format_tensor(t: &ForestTensor) -> String {
    if t.is_empty() {
        return "0".into();
    }
    let parts: Vec<String> = t
        .iter()
        .map(|((a, b), c)| if *c == 1 { format!("{a} ⊗ {b}") } else { format!("{c}*{a} ⊗ {b}") })
        .collect();
    parts.join(" + ")
}

fn forest_product(a: &[Forest]) -> Forest {
    Forest::new(a.iter().flat_map(|f| f.0.iter().cloned()).collect())
}

/// All `(trunk, pruned)` pairs from admissible cuts of the subtree rooted at
/// `t`, where the trunk still contains `t`'s root.
fn cuts_below(t: &RootedTree) -> Vec<(RootedTree, Forest)> {
    // For every child either keep it (recursing into its own cuts) or cut the
    // edge leading to it.
    let mut acc: Vec<(Vec<Child>, Vec<Forest>)> = vec![(Vec::new(), Vec::new())];
    for c in &t.children {
        let mut next = Vec::new();
        for (kept, pruned) in &acc {
            match c {
                Child::Leaf(_) => {
                    let mut k = kept.clone();
                    k.push(c.clone());
                    next.push((k, pruned.clone()));
                }
                Child::Node(s) => {
                    for (trunk, below) in cuts_below(s) {
                        let mut k = kept.clone();
                        k.push(Child::Node(trunk));
                        let mut p = pruned.clone();
                        p.push(below);
                        next.push((k, p));
                    }
                    let mut p = pruned.clone();
                    p.push(Forest::from(s.clone()));
                    next.push((kept.clone(), p));
                }
            }
        }
        acc = next;
    }
    acc.into_iter().map(|(k, p)| (RootedTree::new(k), forest_product(&p))).collect()
}

/// Admissible-cut coproduct `Σ_c R^c(t) ⊗ P^c(t)`: root-side part on the
/// left, pruned forest on the right, plus the total cut `∅ ⊗ t`.
pub fn ck_coproduct_cuts(t: &RootedTree) -> ForestTensor {
    let mut out = ForestTensor::new();
    for (trunk, pruned) in cuts_below(t) {
        *out.entry((Forest::from(trunk), pruned)).or_default() += 1;
    }
    *out.entry((Forest::empty(), Forest::from(t.clone()))).or_default() += 1;
    out
}

/// Flat view: node ids in preorder, each with its parent and children.
struct Flat {
    parent: Vec<Option<usize>>,
    leaves: Vec<Vec<Label>>,
}

fn flatten(t: &RootedTree) -> Flat {
    fn go(t: &RootedTree, parent: Option<usize>, flat: &mut Flat) {
        let id = flat.parent.len();
        flat.parent.push(parent);
        flat.leaves.push(Vec::new());
        for c in &t.children {
            match c {
                Child::Leaf(l) => flat.leaves[id].push(*l),
                Child::Node(s) => go(s, Some(id), flat),
            }
        }
    }
    let mut flat = Flat { parent: Vec::new(), leaves: Vec::new() };
    go(t, None, &mut flat);
    flat
}

fn rebuild(flat: &Flat, keep: &[bool], root: usize) -> RootedTree {
    let mut children: Vec<Child> = flat.leaves[root].iter().map(|&l| Child::Leaf(l)).collect();
    for (v, p) in flat.parent.iter().enumerate() {
        if *p == Some(root) && keep[v] {
            children.push(Child::Node(rebuild(flat, keep, v)));
        }
    }
    RootedTree::new(children)
}

/// `Σ_γ (t/γ) ⊗ γ` over node subsets `γ` closed under taking descendants;
/// `t/γ` deletes the nodes of `γ`.
pub fn ck_coproduct_subgraphs(t: &RootedTree) -> ForestTensor {
    let flat = flatten(t);
    let n = flat.parent.len();
    let mut out = ForestTensor::new();
    for mask in 0u32..(1 << n) {
        let inside = |v: usize| mask & (1 << v) != 0;
        let closed = (0..n).all(|v| match flat.parent[v] {
            Some(p) => !inside(p) || inside(v),
            None => true,
        });
        if !closed {
            continue;
        }
        let keep: Vec<bool> = (0..n).map(|v| !inside(v)).collect();
        let gamma_keep: Vec<bool> = (0..n).map(inside).collect();
        let gamma_roots = (0..n).filter(|&v| inside(v) && flat.parent[v].is_none_or(|p| !inside(p)));
        let gamma = Forest::new(gamma_roots.map(|r| rebuild(&flat, &gamma_keep, r)).collect());
        let quotient = if inside(0) { Forest::empty() } else { Forest::from(rebuild(&flat, &keep, 0)) };
        *out.entry((quotient, gamma)).or_default() += 1;
    }
    out
}

/// Forest graph on two boundary points to its forest of trees: roots are the
/// vertices nobody points at, an edge to `B1` becomes an `L` leaf and an edge
/// to `B2` an `R` leaf.
pub fn graph_to_tree(g: &CanonicalGraph) -> Result<Forest> {
    if g.m() != 2 {
        return Err(Error::Arity { expected: 2, got: g.m() });
    }
    if !g.graph().is_forest() {
        return Err(Error::NotForest(g.to_string()));
    }
    fn node(k: usize, legs: &[[Target; 2]]) -> RootedTree {
        RootedTree::new(
            legs[k]
                .iter()
                .map(|t| match *t {
                    Target::B(1) => Child::Leaf(Label::L),
                    Target::B(_) => Child::Leaf(Label::R),
                    Target::V(j) => Child::Node(node(j as usize - 1, legs)),
                })
                .collect(),
        )
    }
    let indeg = g.graph().internal_in_degrees();
    Ok(Forest::new((0..g.n()).filter(|&k| indeg[k] == 0).map(|k| node(k, g.legs())).collect()))
}

/// Inverse of [`graph_to_tree`]; every tree must be binary and no node may
/// carry two equal leaves (that would be a doubled edge).
pub fn tree_to_graph(f: &Forest) -> Result<CanonicalGraph> {
    fn add(t: &RootedTree, legs: &mut Vec<[Target; 2]>) -> Result<u8> {
        if t.children.len() != 2 {
            return Err(Error::InvalidGraph(format!("node {t} is not binary")));
        }
        let id = legs.len();
        legs.push([Target::B(0); 2]);
        let mut pair = [Target::B(0); 2];
        for (slot, c) in t.children.iter().enumerate() {
            pair[slot] = match c {
                Child::Leaf(Label::L) => Target::B(1),
                Child::Leaf(Label::R) => Target::B(2),
                Child::Node(s) => Target::V(add(s, legs)?),
            };
        }
        legs[id] = pair;
        Ok(id as u8 + 1)
    }
    let mut legs = Vec::new();
    for t in f.trees() {
        add(t, &mut legs)?;
    }
    Ok(canonicalize(&AdmissibleGraph::new(2, legs)?))
}

/// All binary trees with exactly `n` nodes and L/R leaves, canonical and
/// without repetition.
pub fn binary_trees(n: usize) -> Vec<RootedTree> {
    let mut by_size: Vec<Vec<RootedTree>> = vec![Vec::new()];
    for k in 1..=n {
        let mut level = std::collections::BTreeSet::new();
        let leaf_options = [Child::Leaf(Label::L), Child::Leaf(Label::R)];
        let options = |size: usize| -> Vec<Child> {
            if size == 0 {
                leaf_options.to_vec()
            } else {
                by_size[size].iter().cloned().map(Child::Node).collect()
            }
        };
        for a in 0..k {
            let b = k - 1 - a;
            for x in options(a) {
                for y in options(b) {
                    level.insert(RootedTree::node(x.clone(), y));
                }
            }
        }
        by_size.push(level.into_iter().collect());
    }
    by_size.swap_remove(n)
}

/// All forests of binary trees with `n` nodes in total.
pub fn binary_forests(n: usize) -> Vec<Forest> {
    fn go(n: usize, min: Option<&RootedTree>, cache: &[Vec<RootedTree>]) -> Vec<Vec<RootedTree>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for k in 1..=n {
            for t in &cache[k] {
                if min.is_some_and(|m| t < m) {
                    continue;
                }
                for mut rest in go(n - k, Some(t), cache) {
                    rest.push(t.clone());
                    out.push(rest);
                }
            }
        }
        out
    }
    let cache: Vec<Vec<RootedTree>> = (0..=n).map(|k| if k == 0 { Vec::new() } else { binary_trees(k) }).collect();
    go(n, None, &cache).into_iter().map(Forest::new).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{catalog::*, enumerate_class, Restriction};

    fn t(s: &str) -> RootedTree {
        parse_tree(s).unwrap()
    }

    #[test]
    fn text_round_trip() {
        for s in ["(L,R)", "(L,(L,R))", "((L,R),(R,R))", "(L)", "()"] {
            assert_eq!(t(s).to_string(), s);
        }
        assert_eq!(t("((L,R), L)").to_string(), "(L,(L,R))");
        assert_eq!(parse_forest("[(L,R), (L,L)]").unwrap().to_string(), "[(L,L),(L,R)]");
        assert_eq!(parse_forest("[]").unwrap(), Forest::empty());
        assert!(parse_tree("(L,X)").is_err());
        assert!(parse_tree("(L,R))").is_err());
    }

    #[test]
    fn coproduct_examples() {
        let single = t("(L,R)");
        assert_eq!(ck_coproduct_cuts(&single).len(), 2);
        let chain = t("(L,(L,R))");
        let d = ck_coproduct_cuts(&chain);
        assert_eq!(d.len(), 3);
        assert_eq!(d.get(&(Forest::from(t("(L)")), Forest::from(t("(L,R)")))), Some(&1));
        let comb = RootedTree::left_comb(3);
        assert_eq!(ck_coproduct_cuts(&comb).values().sum::<i64>(), 4);
        for tree in [single, chain, comb] {
            assert_eq!(ck_coproduct_cuts(&tree), ck_coproduct_subgraphs(&tree));
        }
    }

    #[test]
    fn coproduct_forms_agree() {
        for n in 1..=4 {
            for tree in binary_trees(n) {
                assert_eq!(ck_coproduct_cuts(&tree), ck_coproduct_subgraphs(&tree), "{tree}");
            }
        }
    }

    #[test]
    fn tree_counts() {
        // trees: a node picks an unordered pair of children
        let counts: Vec<usize> = (1..=4).map(|n| binary_trees(n).len()).collect();
        assert_eq!(counts[0], 3);
        assert_eq!(counts[1], 2 * 3);
        assert_eq!(binary_forests(2).len(), 6 + 6);
    }

    #[test]
    fn graph_correspondence() {
        assert_eq!(graph_to_tree(&b1()).unwrap(), Forest::from(t("(L,R)")));
        assert_eq!(graph_to_tree(&bn_left(2)).unwrap(), Forest::from(t("(L,(L,R))")));
        assert_eq!(graph_to_tree(&b1_squared()).unwrap().to_string(), "[(L,R),(L,R)]");
        assert_eq!(graph_to_tree(&b0()).unwrap(), Forest::empty());
        for n in 1..=4 {
            assert_eq!(tree_to_graph(&Forest::from(RootedTree::left_comb(n))).unwrap(), bn_left(n));
        }
        let two_parents = crate::graph::parse_graph("m=2;n=3;v1:B1,V3;v2:B2,V3;v3:B1,B2").unwrap().canonicalize();
        assert!(matches!(graph_to_tree(&two_parents), Err(Error::NotForest(_))));
        assert!(tree_to_graph(&Forest::from(t("(L,L)"))).is_err());
        assert!(tree_to_graph(&Forest::from(t("(L)"))).is_err());
        for n in 0..=3 {
            for g in enumerate_class(n, 2, Restriction::Forest) {
                assert_eq!(tree_to_graph(&graph_to_tree(&g).unwrap()).unwrap(), g);
            }
        }
    }
}
