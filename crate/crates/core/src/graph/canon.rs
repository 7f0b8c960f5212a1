use super::{sorted_pair, AdmissibleGraph, CanonicalGraph, Target};

/// Relabels internal vertices by `perm` (`perm[old] = new`, 0-based) and
/// returns the relabeled leg list, each pair sorted.
pub(crate) fn relabel(legs: &[[Target; 2]], perm: &[usize]) -> Vec<[Target; 2]> {
    let mut out = vec![[Target::B(0), Target::B(0)]; legs.len()];
    for (old, pair) in legs.iter().enumerate() {
        let map = |t: Target| match t {
            Target::V(j) => Target::V(perm[j as usize - 1] as u8 + 1),
            other => other,
        };
        out[perm[old]] = sorted_pair(map(pair[0]), map(pair[1]));
    }
    out
}

/// Visits every permutation of `0..n` (Heap's algorithm).
pub(crate) fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut p: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    f(&p);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            f(&p);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

struct Search {
    best: Vec<[Target; 2]>,
    best_perm: Vec<usize>,
    hits: u64,
}

fn search(g: &AdmissibleGraph) -> Search {
    let legs = g.legs();
    let mut s = Search {
        best: legs.to_vec(),
        best_perm: (0..legs.len()).collect(),
        hits: 0,
    };
    for_each_permutation(legs.len(), |perm| {
        let cand = relabel(legs, perm);
        match cand.cmp(&s.best) {
            std::cmp::Ordering::Less => {
                s.best = cand;
                s.best_perm = perm.to_vec();
                s.hits = 1;
            }
            std::cmp::Ordering::Equal => s.hits += 1,
            std::cmp::Ordering::Greater => {}
        }
    });
    s
}

pub fn canonicalize(g: &AdmissibleGraph) -> CanonicalGraph {
    canonical_labeling(g).0
}

/// Canonical form together with the relabeling used (`perm[old] = new`).
pub fn canonical_labeling(g: &AdmissibleGraph) -> (CanonicalGraph, Vec<usize>) {
    let s = search(g);
    let graph = AdmissibleGraph { m: g.m(), legs: s.best };
    (CanonicalGraph::from_canonical_unchecked(graph), s.best_perm)
}

/// Internal-vertex permutations fixing the leg structure, boundary fixed.
pub fn automorphism_count(g: &CanonicalGraph) -> u64 {
    search(g.graph()).hits
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{b, catalog, enumerate_class, v, Restriction};
    use proptest::prelude::*;

    #[test]
    fn relabeled_b1_and_swapped_c2l() {
        let g = AdmissibleGraph::new(2, vec![[b(2), b(1)]]).unwrap();
        assert_eq!(canonicalize(&g), catalog::b1());
        let g = AdmissibleGraph::new(3, vec![[b(1), b(3)], [b(1), b(2)]]).unwrap();
        assert_eq!(canonicalize(&g), catalog::c2_left());
    }

    #[test]
    fn automorphisms() {
        assert_eq!(catalog::b1().automorphism_count(), 1);
        assert_eq!(catalog::b1_squared().automorphism_count(), 2);
        assert_eq!(catalog::bn_left(2).automorphism_count(), 1);
        assert_eq!(catalog::b0().automorphism_count(), 1);
    }

    #[test]
    fn permutation_count() {
        let mut count = 0;
        for_each_permutation(4, |_| count += 1);
        assert_eq!(count, 24);
    }

    #[test]
    fn idempotent_on_small_classes() {
        for m in 2..=3 {
            for n in 0..=3 {
                for g in enumerate_class(n, m, Restriction::Full) {
                    assert_eq!(canonicalize(g.graph()), g);
                }
            }
        }
    }

    #[test]
    fn labeling_maps_to_canonical() {
        let g = AdmissibleGraph::new(3, vec![[b(2), b(3)], [b(1), v(1)]]).unwrap();
        let (c, perm) = canonical_labeling(&g);
        assert_eq!(relabel(g.legs(), &perm), c.legs());
    }

    fn class_upto3() -> Vec<CanonicalGraph> {
        let mut all = Vec::new();
        for m in 2..=3 {
            for n in 0..=3 {
                all.extend(enumerate_class(n, m, Restriction::Full));
            }
        }
        all
    }

    fn permuted() -> impl Strategy<Value = (CanonicalGraph, Vec<usize>)> {
        proptest::sample::select(class_upto3()).prop_flat_map(|g| {
            let perm: Vec<usize> = (0..g.n()).collect();
            (Just(g), Just(perm).prop_shuffle())
        })
    }

    proptest! {
        #[test]
        fn isomorphism_invariance((g, perm) in permuted()) {
            let moved = AdmissibleGraph::new(g.m(), relabel(g.legs(), &perm)).unwrap();
            prop_assert_eq!(canonicalize(&moved), g);
        }
    }
}
