//! One line per acceptance criterion. Exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use graphstar::algebra::{
    apply_t, apply_t_tensor, collapse_pair, coproduct_reduced, GraphVector, Pair, TensorVector,
};
use graphstar::characters::{
    associativity_component, cocycle_defects, solve_weights, SolveConfig, Status,
};
use graphstar::evaluator::{bch_oracle, format_lie};
use graphstar::exec::Mode;
use graphstar::graph::{catalog::*, enumerate_class, heights, Restriction};
use graphstar::rational::{int, ratio};
use graphstar::verify::{self, Check, Suite, SuiteReport};
use graphstar::Result;

struct Outcome {
    passed: bool,
    detail: String,
}

fn from_checks<'a>(checks: impl IntoIterator<Item = &'a Check>) -> Outcome {
    let checks: Vec<&Check> = checks.into_iter().collect();
    let failed: Vec<&&Check> = checks.iter().filter(|c| !c.passed).collect();
    let detail = if failed.is_empty() {
        format!("{} checks", checks.len())
    } else {
        failed.iter().map(|c| format!("{}: got {}", c.name, c.got)).collect::<Vec<_>>().join("; ")
    };
    Outcome { passed: failed.is_empty(), detail }
}

fn suite(s: Suite) -> Result<SuiteReport> {
    verify::run(s, Mode::default())
}

fn checks_named<'a>(report: &'a SuiteReport, needle: &'a str) -> impl Iterator<Item = &'a Check> {
    report.checks.iter().filter(move |c| c.name.contains(needle))
}

fn all_unique(report: &[graphstar::characters::ReportEntry]) -> bool {
    report.iter().all(|e| e.status == Status::Unique)
}

fn order_two() -> Result<Outcome> {
    let outcome = solve_weights(&SolveConfig::new(2, Restriction::Full))?;
    let w = &outcome.weights;
    let mut checks = vec![Check::flag("unique", all_unique(&outcome.report) && outcome.fallback.is_none(), "report")];
    for g in [bn_left(2), bn_right(2), b1_squared()] {
        checks.push(Check::new(format!("W({g})"), int(1), w.weight(&g)?));
    }
    let mut z = GraphVector::basis(b0()) + GraphVector::basis(b1());
    z.add_term(b1_squared(), ratio(1, 2));
    z.add_term(bn_left(2), int(1));
    z.add_term(bn_right(2), int(1));
    checks.push(Check::flag("degree-2 part of Z∘Z", associativity_component(&z, 2).is_zero(), "nonzero"));
    Ok(from_checks(&checks))
}

fn order_three_forest() -> Result<Outcome> {
    let outcome = solve_weights(&SolveConfig::new(3, Restriction::Forest))?;
    let w = &outcome.weights;
    let mut checks = vec![Check::flag("unique", all_unique(&outcome.report), "report")];
    for n in 0..=3 {
        checks.push(Check::new(format!("W(Δ_b Γ) = 0, degree {n}"), "[]", format!("{:?}", cocycle_defects(w, n)?)));
    }
    checks.push(Check::new("W(b3L) = W(b3R)", w.weight(&bn_left(3))?, w.weight(&bn_right(3))?));
    let mut want = TensorVector::term(bn_left(3), b0(), int(1));
    want.add_term(bn_left(2), b1(), int(-1));
    checks.push(Check::new("Δ_b Γ_3", &want, coproduct_reduced(&gamma(3))?));
    Ok(from_checks(&checks))
}

fn symmetry() -> Result<Outcome> {
    let (mut equivariant, mut middle, mut height) = (0, 0, 0);
    let mut count = 0;
    for n in 0..=3 {
        for g in enumerate_class(n, 3, Restriction::Full) {
            count += 1;
            let d = coproduct_reduced(&g)?;
            let mut rhs = TensorVector::zero();
            for (h, c) in apply_t(&GraphVector::basis(g.clone())).iter() {
                rhs += &coproduct_reduced(h)?.scale(c);
            }
            if apply_t_tensor(&d) != rhs {
                equivariant += 1;
            }
            let has_middle = g.graph().boundary_in_degrees()[1] > 0;
            if !has_middle && !d.is_zero() {
                middle += 1;
            }
            if let (Some(l), Some(r)) = (collapse_pair(&g, Pair::Left)?, collapse_pair(&g, Pair::Right)?) {
                let (hl, hr) = (heights(&l)?.right, heights(&r)?.right);
                let ok = if has_middle { hl < hr } else { l == r };
                if !ok {
                    height += 1;
                }
            }
        }
    }
    Ok(from_checks(&[
        Check::new(format!("T-equivariance failures over {count} graphs"), 0, equivariant),
        Check::new("nonzero coproducts without middle legs", 0, middle),
        Check::new("height inequality failures", 0, height),
    ]))
}

fn bch() -> Result<Outcome> {
    let h = bch_oracle(3);
    Ok(from_checks(&[
        Check::new("degree 2", "1/2*[x,y]", format_lie(h.component(2))),
        Check::new("degree 3", "1/12*[x,[x,y]] + 1/12*[[x,y],y]", format_lie(h.component(3))),
    ]))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut results: Vec<(usize, &str, Result<Outcome>)> = Vec::new();
    let duality = suite(Suite::Duality);
    let prelie = suite(Suite::Prelie);
    let closure = match (&duality, &prelie) {
        (Ok(d), Ok(p)) => Ok(from_checks(checks_named(d, "closure").chain(checks_named(p, "closure")))),
        (Err(e), _) | (_, Err(e)) => Err(e.clone()),
    };
    results.push((1, "appendix identities", suite(Suite::Appendix).map(|r| from_checks(&r.checks))));
    results.push((2, "composition/coproduct duality", duality.map(|r| from_checks(checks_named(&r, "duality")))));
    results.push((3, "pre-Lie associator", prelie.map(|r| from_checks(checks_named(&r, "associator")))));
    results.push((4, "composition closure", closure));
    results.push((5, "order-2 full-class solve", order_two()));
    results.push((6, "order-3 forest solve", order_three_forest()));
    results.push((7, "constant case", suite(Suite::Moyal).map(|r| from_checks(&r.checks))));
    results.push((8, "antipode", suite(Suite::Antipode).map(|r| from_checks(&r.checks))));
    results.push((9, "symmetry machinery", symmetry()));
    results.push((10, "Jacobi", suite(Suite::Jacobi).map(|r| from_checks(&r.checks))));
    results.push((11, "associativity of the star product", suite(Suite::Assoc).map(|r| from_checks(&r.checks))));
    results.push((12, "BCH oracle", bch()));
    results.push((13, "trees", suite(Suite::Trees).map(|r| from_checks(&r.checks))));

    let mut failed = 0;
    for (k, name, outcome) in results {
        let (passed, detail) = match outcome {
            Ok(o) => (o.passed, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !passed {
            failed += 1;
        }
        println!("criterion {k:>2} {}: {name} ({detail})", if passed { "PASS" } else { "FAIL" });
    }
    println!("acceptance: {}/13 passed in {:.1?}", 13 - failed, start.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
