//! Pre-Lie and Hopf operations on exact combinations of graphs.

mod compose;
mod coproduct;
mod vector;

pub use compose::{
    apply_t, associator, boundary_product, bracket, compose, compose_basis, compose_leibniz,
    compose_leibniz_basis, delta, divide_by_automorphisms, exp_product, insert_at, insertion_graphs,
    log_product, Insertion,
};
pub use coproduct::{
    apply_t_tensor, boundary_reduce, collapse_pair, coproduct_prime, coproduct_reduced, duality_check,
    merger, normal_subgraphs, pairing, quotient, DualityCheck, NormalSubgraphWitness, Pair,
};
pub use vector::{GraphVector, TensorVector};
