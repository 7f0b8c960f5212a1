use num_bigint::BigInt;

use super::WeightSystem;
use crate::algebra::{compose_leibniz, log_product, GraphVector};
use crate::error::Result;
use crate::graph::{enumerate_class, CanonicalGraph};
use crate::rational::{factorial, Rational};

/// `Z = Σ W(Γ)/|Aut Γ| · Γ` over the weight system's class through `max_order`.
pub fn moyal_element(w: &WeightSystem, max_order: usize) -> Result<GraphVector> {
    let mut out = GraphVector::zero();
    for n in 0..=max_order {
        for g in enumerate_class(n, 2, w.restriction()) {
            let c = w.weight(&g)? / Rational::from_integer(BigInt::from(g.automorphism_count()));
            out.add_term(g, c);
        }
    }
    Ok(out)
}

/// `log Z` under the boundary product.
pub fn hausdorff_element(z: &GraphVector, max_order: usize) -> Result<GraphVector> {
    log_product(z, max_order)
}

/// `|Aut Γ| / n!`.
pub fn symmetry_factor(g: &CanonicalGraph) -> Rational {
    Rational::new(BigInt::from(g.automorphism_count()), factorial(g.n()))
}

/// Internal-degree-`n` component of `Z ∘ Z` (Leibniz counting), which
/// vanishes when the weights solve the order-`n` constraints.
pub fn associativity_component(z: &GraphVector, n: usize) -> GraphVector {
    let trimmed = z.truncate(n);
    compose_leibniz(&trimmed, &trimmed).component(n)
}
