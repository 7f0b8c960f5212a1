use graphstar::characters::{solve_weights, SolveConfig};
use graphstar::evaluator::{
    bch_report, moyal_oracle, poisson_bracket, state_sum_with, Bivector, Polynomial, StarProduct,
};
use graphstar::exec::Mode;
use graphstar::graph::{catalog::*, enumerate_class, Restriction};
use graphstar::verify::{self, Suite};
use proptest::prelude::*;

fn p(s: &str, d: usize) -> Polynomial {
    Polynomial::parse(s, d).unwrap()
}

fn poly(d: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u32..3, d), -3i64..4), 1..4).prop_map(move |terms| {
        terms.into_iter().fold(Polynomial::zero(d), |acc, (e, c)| {
            &acc + &Polynomial::monomial(d, e, graphstar::rational::int(c))
        })
    })
}

#[test]
fn worked_examples() {
    let alpha = Bivector::from_json(r#"{"dim":2,"entries":{"1,2":"1"}}"#).unwrap();
    let w = solve_weights(&SolveConfig::new(2, Restriction::ZeroInDegree)).unwrap().weights;
    let s = StarProduct::new(&alpha, &w, 2).unwrap().apply(&p("x1^2", 2), &p("x2^2", 2)).unwrap();
    assert_eq!(s.to_string(), "x1^2*x2^2 + eps*(4*x1*x2) + eps^2*(2)");
    assert_eq!(s, moyal_oracle(&p("x1^2", 2), &p("x2^2", 2), &alpha, 2).unwrap());
}

#[test]
fn suites_pass() {
    for s in [Suite::Moyal, Suite::Jacobi] {
        let report = verify::run(s, Mode::default()).unwrap();
        assert!(report.passed(), "{report}");
    }
}

#[test]
fn associativity_suite_reports_the_order_two_gap() {
    let report = verify::run(Suite::Assoc, Mode::default()).unwrap();
    assert_eq!(report.checks.len(), 2);
    assert!(!report.passed());
}

#[test]
fn bch_report_lists_both_sides() {
    let w = solve_weights(&SolveConfig::new(3, Restriction::Forest)).unwrap().weights;
    let text = bch_report(&w, &Bivector::affine_line(), 3).unwrap();
    assert!(text.contains("degree 2: 1/2*[x,y]"));
    assert!(text.contains("x1^3 * x2:"));
}

#[test]
fn bivector_json_round_trip() {
    for a in [Bivector::so3(), Bivector::affine_line(), Bivector::standard()] {
        assert_eq!(Bivector::from_json(&a.to_json()).unwrap(), a);
    }
    let flipped = Bivector::from_json(r#"{"dim":2,"entries":{"2,1":"x1"}}"#).unwrap();
    assert_eq!(flipped.entry(0, 1), -&p("x1", 2));
    assert!(Bivector::from_json(r#"{"dim":2,"entries":{"1,1":"x1"}}"#).is_err());
    assert!(Bivector::from_json(r#"{"dim":2,"entries":{"1,2":"x3"}}"#).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn parallel_state_sum_is_identical(f in poly(3), g in poly(3), idx in 0usize..100) {
        let pool: Vec<_> = (0..=3).flat_map(|n| enumerate_class(n, 2, Restriction::Full)).collect();
        let graph = &pool[idx % pool.len()];
        let a = Bivector::so3();
        let args = [f, g];
        prop_assert_eq!(
            state_sum_with(Mode::Sequential, graph, &a, &args).unwrap(),
            state_sum_with(Mode::Parallel, graph, &a, &args).unwrap()
        );
    }

    #[test]
    fn first_order_term_is_the_bracket(f in poly(3), g in poly(3)) {
        let a = Bivector::so3();
        let w = solve_weights(&SolveConfig::new(1, Restriction::Forest)).unwrap().weights;
        let s = StarProduct::new(&a, &w, 1).unwrap().apply(&f, &g).unwrap();
        prop_assert_eq!(s.coeff(0), &f * &g);
        prop_assert_eq!(s.coeff(1), poisson_bracket(&a, &f, &g));
    }

    #[test]
    fn first_order_associativity_holds_for_any_tensor(f in poly(2), g in poly(2), h in poly(2), q in poly(2)) {
        let mut a = Bivector::zero(2);
        a.set(1, 2, q).unwrap();
        let w = solve_weights(&SolveConfig::new(1, Restriction::Full)).unwrap().weights;
        let star = StarProduct::new(&a, &w, 1).unwrap();
        prop_assert!(star.associativity_defect(&f, &g, &h).unwrap().is_zero());
    }

    #[test]
    fn unit_graph_is_multiplication(f in poly(2), g in poly(2)) {
        let a = Bivector::affine_line();
        prop_assert_eq!(
            graphstar::evaluator::state_sum(&b0(), &a, &[f.clone(), g.clone()]).unwrap(),
            &f * &g
        );
    }
}
