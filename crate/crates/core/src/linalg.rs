//! Exact Gauss-Jordan elimination over the rationals.

use num_traits::{One, Zero};

use crate::rational::Rational;

/// Reduces `rows` in place to reduced row echelon form, considering only the
/// first `ncols` columns as pivot candidates. Returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<Rational>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    let mut work = rows.to_vec();
    rref(&mut work, ncols).len()
}

#[derive(Clone, Debug, PartialEq)]
pub enum Solution {
    Unique(Vec<Rational>),
    /// Solution set of positive dimension; `particular` sets free variables to 0.
    Affine { particular: Vec<Rational>, dim: usize },
    Infeasible,
}

/// Solves `a · x = b` where each row is `(a, b)`.
pub fn solve(ncols: usize, rows: &[(Vec<Rational>, Rational)]) -> Solution {
    let mut aug: Vec<Vec<Rational>> = rows
        .iter()
        .map(|(a, b)| {
            assert_eq!(a.len(), ncols, "row width");
            let mut row = a.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug, ncols);
    let inconsistent = aug
        .iter()
        .skip(pivots.len())
        .any(|row| !row[ncols].is_zero());
    if inconsistent {
        return Solution::Infeasible;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (row, &c) in aug.iter().zip(&pivots) {
        x[c] = row[ncols].clone();
    }
    if pivots.len() == ncols {
        Solution::Unique(x)
    } else {
        Solution::Affine { particular: x, dim: ncols - pivots.len() }
    }
}
