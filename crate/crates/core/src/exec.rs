//! Sequential or rayon-parallel execution of independent work items.
//!
//! Every parallel path collects into an order-preserving `Vec` (or an exactly
//! commutative sum), so results never depend on the schedule. Without the
//! `parallel` feature [`Mode::Parallel`] runs sequentially.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    Sequential,
    #[default]
    Parallel,
}

impl Mode {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Mode::Parallel
    }
}

/// Maps `f` over `items`, preserving order.
pub fn map<T, U, F>(mode: Mode, items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        use rayon::prelude::*;
        return items.into_par_iter().map(f).collect();
    }
    let _ = mode;
    items.into_iter().map(f).collect()
}

/// Maps `f` over `items` and folds the results with an associative,
/// commutative `combine`.
pub fn map_reduce<T, U, F, C, I>(mode: Mode, items: Vec<T>, f: F, identity: I, combine: C) -> U
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
    C: Fn(U, U) -> U + Sync + Send,
    I: Fn() -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        use rayon::prelude::*;
        return items.into_par_iter().map(f).reduce(&identity, &combine);
    }
    let _ = mode;
    items.into_iter().map(f).fold(identity(), combine)
}
