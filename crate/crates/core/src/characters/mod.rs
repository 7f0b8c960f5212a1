//! Weight systems and the associativity constraints `W(Δ_b Γ) = 0`.

mod antipode;
mod determinacy;
mod moyal;
mod solve;
mod weights;

pub use antipode::{antipode, antipode_geometric, evaluate_antipode, unitarity_check, AntipodeValue};
pub use determinacy::{bernoulli_determinacy, AffineExpr, OrderDeterminacy};
pub use moyal::{associativity_component, hausdorff_element, moyal_element, symmetry_factor};
pub use solve::{
    assemble_constraints, cocycle_defects, default_normalization, load_weights, solve_system,
    solve_weights, Constraint, ConstraintSystem, ReportEntry, SolveConfig, SolveOutcome, Status,
};
pub use weights::WeightSystem;
