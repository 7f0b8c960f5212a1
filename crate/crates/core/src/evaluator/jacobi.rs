use std::str::FromStr;

use super::{state_sum, Bivector, Polynomial};
use crate::error::{Error, Result};
use crate::graph::catalog::{c2, t2_left, t2_right};

/// Sign in `U(t_2^R) − U(t_2^L) − σ U(c_2) = 0` for the evaluation leg order.
pub fn sigma() -> i64 {
    let text = include_str!("../../data/jacobi_sigma.txt");
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .and_then(|l| l.parse().ok())
        .expect("data/jacobi_sigma.txt holds +1 or -1")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JacobiMode {
    Alt,
    Span,
}

impl FromStr for JacobiMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "alt" => Ok(JacobiMode::Alt),
            "span" => Ok(JacobiMode::Span),
            _ => Err(Error::Precondition(format!("unknown jacobi mode {s:?}"))),
        }
    }
}

const PERMUTATIONS: [([usize; 3], i64); 6] =
    [([0, 1, 2], 1), ([1, 2, 0], 1), ([2, 0, 1], 1), ([1, 0, 2], -1), ([0, 2, 1], -1), ([2, 1, 0], -1)];

pub fn jacobi_defect(alpha: &Bivector, f: &Polynomial, g: &Polynomial, h: &Polynomial, mode: JacobiMode) -> Result<Polynomial> {
    jacobi_defect_with_sigma(alpha, f, g, h, mode, sigma())
}

pub fn jacobi_defect_with_sigma(
    alpha: &Bivector,
    f: &Polynomial,
    g: &Polynomial,
    h: &Polynomial,
    mode: JacobiMode,
    sigma: i64,
) -> Result<Polynomial> {
    let args = [f.clone(), g.clone(), h.clone()];
    match mode {
        JacobiMode::Alt => {
            let mut acc = Polynomial::zero(alpha.dim());
            for (perm, sign) in PERMUTATIONS {
                let permuted = perm.map(|i| args[i].clone());
                let u = state_sum(&c2(), alpha, &permuted)?;
                acc = if sign > 0 { &acc + &u } else { &acc - &u };
            }
            Ok(acc)
        }
        JacobiMode::Span => {
            let r = state_sum(&t2_right(), alpha, &args)?;
            let l = state_sum(&t2_left(), alpha, &args)?;
            let c = state_sum(&c2(), alpha, &args)?;
            let c = if sigma > 0 { c } else { -&c };
            Ok(&(&r - &l) - &c)
        }
    }
}
