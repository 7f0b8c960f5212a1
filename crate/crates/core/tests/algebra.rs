use graphstar::algebra::{
    bracket, compose, compose_leibniz, coproduct_prime, coproduct_reduced, divide_by_automorphisms, exp_product,
    log_product, merger, GraphVector,
};
use graphstar::graph::{catalog::*, enumerate_class, CanonicalGraph, Restriction};
use graphstar::rational::int;
use graphstar::verify::{self, Suite};
use graphstar::exec::Mode;
use proptest::prelude::*;

fn pool(max_n: usize) -> Vec<CanonicalGraph> {
    (0..=max_n).flat_map(|n| enumerate_class(n, 2, Restriction::Full)).collect()
}

#[test]
fn suites_pass() {
    for s in [Suite::Appendix, Suite::Duality, Suite::Prelie] {
        let report = verify::run(s, Mode::default()).unwrap();
        assert!(report.passed(), "{report}");
    }
}

#[test]
fn bracket_is_graded_symmetric_on_two_points() {
    let p = pool(2);
    for a in &p {
        for b in &p {
            let (va, vb) = (GraphVector::basis(a.clone()), GraphVector::basis(b.clone()));
            // both arguments have odd degree m - 1 = 1
            assert_eq!(bracket(&va, &vb).unwrap(), bracket(&vb, &va).unwrap());
        }
    }
}

#[test]
fn exp_and_log_are_inverse() {
    let mut v = GraphVector::basis(b1());
    v.add_term(bn_left(2), int(3));
    v.add_term(bn_right(2), int(-1));
    let e = exp_product(&v, 3).unwrap();
    assert_eq!(log_product(&e, 3).unwrap(), v);
    assert!(log_product(&v, 3).is_err());
}

#[test]
fn prime_coproduct_restricts_reduced() {
    for n in 1..=3 {
        for g in enumerate_class(n, 3, Restriction::Full).into_iter().filter(CanonicalGraph::is_prime) {
            let full = coproduct_reduced(&g).unwrap();
            for (l, r, c) in coproduct_prime(&g).unwrap().iter() {
                assert_eq!(full.coeff(l, r), *c, "{g}");
            }
        }
    }
    assert!(coproduct_prime(&b1_squared()).is_err());
}

#[test]
fn merger_of_units() {
    assert!(merger(&unit(3)).unwrap().is_zero());
    assert!(merger(&b0()).is_err());
}

proptest! {
    #[test]
    fn symmetry_factors_intertwine_compositions(i in 0usize..64, j in 0usize..64) {
        let p = pool(2);
        let (a, b) = (GraphVector::basis(p[i % p.len()].clone()), GraphVector::basis(p[j % p.len()].clone()));
        prop_assert_eq!(
            divide_by_automorphisms(&compose(&a, &b)),
            compose_leibniz(&divide_by_automorphisms(&a), &divide_by_automorphisms(&b))
        );
    }

    #[test]
    fn composition_is_bilinear(i in 0usize..64, j in 0usize..64, k in 0usize..64, c in -5i64..5) {
        let p = pool(2);
        let a = GraphVector::basis(p[i % p.len()].clone());
        let b = GraphVector::basis(p[j % p.len()].clone());
        let d = GraphVector::basis(p[k % p.len()].clone());
        let lhs = compose(&a, &(b.scale(&int(c)) + d.clone()));
        prop_assert_eq!(lhs, compose(&a, &b).scale(&int(c)) + compose(&a, &d));
    }
}
