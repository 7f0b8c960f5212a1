//! Graphs as multidifferential operators on polynomials.

mod bch;
mod bivector;
mod jacobi;
mod poly;
mod series;
mod star;
mod state_sum;

pub use bch::{bch_oracle, bch_report, format_lie, is_lyndon, lyndon_words, BchSeries, FreeAlgebraElement, LieMonomial};
pub use bivector::Bivector;
pub use jacobi::{jacobi_defect, jacobi_defect_with_sigma, sigma, JacobiMode};
pub use poly::Polynomial;
pub use series::PolySeries;
pub use star::{associativity_defect, moyal_oracle, poisson_bracket, star_product, StarProduct};
pub use state_sum::{
    compose_oriented, gerstenhaber, oriented_legs, state_sum, state_sum_vector, state_sum_with,
};
