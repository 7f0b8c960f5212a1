//! Exact combinatorial calculus of admissible graphs for star-products.
//!
//! Graphs live in [`graph`]: admissible graphs with ordered boundary points and
//! bivalent internal vertices, their canonical forms and enumeration.
//! [`algebra`] builds the boundary product, the pre-Lie insertion composition,
//! the reduced coproduct and friends on exact-rational linear combinations.
//! [`characters`] solves the associativity constraints `W(Δ_b Γ) = 0` order by
//! order, and [`evaluator`] turns graphs into multidifferential operators on
//! polynomials through the Kontsevich state sum. [`trees`] holds the
//! Connes-Kreimer side.
//!
//! All coefficients are [`Rational`]s; there is no floating point anywhere.

pub mod algebra;
pub mod characters;
pub mod error;
pub mod evaluator;
pub mod exec;
pub mod graph;
pub mod linalg;
pub mod rational;
pub mod trees;
pub mod verify;

pub use error::{Error, Result};
pub use rational::Rational;
