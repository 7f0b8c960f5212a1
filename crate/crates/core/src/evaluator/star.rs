use num_traits::Zero;

use super::{state_sum, Bivector, PolySeries, Polynomial};
use crate::characters::WeightSystem;
use crate::error::{Error, Result};
use crate::graph::{enumerate_class, CanonicalGraph, Restriction};
use crate::rational::{factorial, Rational};

/// Checks that graphs outside the weight system's class really evaluate to
/// zero on `α`, so that summing over that class alone is the full product.
fn check_restriction(alpha: &Bivector, r: Restriction) -> Result<()> {
    match r {
        Restriction::Full => Ok(()),
        Restriction::Forest if alpha.is_linear() || alpha.is_constant() => Ok(()),
        Restriction::Forest => Err(Error::Bivector("linear (forest weights need linear α)")),
        Restriction::ZeroInDegree if alpha.is_constant() => Ok(()),
        Restriction::ZeroInDegree => Err(Error::Bivector("constant (zero-in-degree weights need constant α)")),
    }
}

/// `f ⋆ g = Σ_k ε^k Σ_{Γ ∈ G_{k,2}} W(Γ)/|Aut Γ| · U_Γ(α^k)(f, g)` with the
/// per-order graph coefficients computed once.
#[derive(Clone, Debug)]
pub struct StarProduct {
    alpha: Bivector,
    order: usize,
    terms: Vec<Vec<(CanonicalGraph, Rational)>>,
}

impl StarProduct {
    pub fn new(alpha: &Bivector, w: &WeightSystem, order: usize) -> Result<Self> {
        check_restriction(alpha, w.restriction())?;
        let mut terms = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut level = Vec::new();
            for g in enumerate_class(k, 2, w.restriction()) {
                let c = w.weight(&g)? / Rational::from_integer(g.automorphism_count().into());
                if !c.is_zero() {
                    level.push((g, c));
                }
            }
            terms.push(level);
        }
        Ok(StarProduct { alpha: alpha.clone(), order, terms })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Graphs with nonzero coefficient at `ε^k`.
    pub fn terms(&self, k: usize) -> &[(CanonicalGraph, Rational)] {
        &self.terms[k]
    }

    /// The `ε^k` coefficient of `f ⋆ g`.
    pub fn component(&self, k: usize, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
        let args = [f.clone(), g.clone()];
        let mut acc = Polynomial::zero(self.alpha.dim());
        for (graph, c) in &self.terms[k] {
            acc = &acc + &state_sum(graph, &self.alpha, &args)?.scale(c);
        }
        Ok(acc)
    }

    pub fn apply(&self, f: &Polynomial, g: &Polynomial) -> Result<PolySeries> {
        let mut out = PolySeries::zero(self.alpha.dim(), self.order);
        for k in 0..=self.order {
            out.add_at(k, &self.component(k, f, g)?);
        }
        Ok(out)
    }

    /// Bilinear extension to series, truncated at the product's order.
    pub fn apply_series(&self, a: &PolySeries, b: &PolySeries) -> Result<PolySeries> {
        let mut out = PolySeries::zero(self.alpha.dim(), self.order);
        for (i, p) in a.coeffs().iter().enumerate() {
            for (j, q) in b.coeffs().iter().enumerate() {
                if p.is_zero() || q.is_zero() {
                    continue;
                }
                if i + j > self.order {
                    continue;
                }
                for k in 0..=self.order - i - j {
                    out.add_at(i + j + k, &self.component(k, p, q)?);
                }
            }
        }
        Ok(out)
    }

    /// `(f ⋆ g) ⋆ h − f ⋆ (g ⋆ h)`.
    pub fn associativity_defect(&self, f: &Polynomial, g: &Polynomial, h: &Polynomial) -> Result<PolySeries> {
        let n = self.order;
        let fs = PolySeries::constant(f.clone(), n);
        let hs = PolySeries::constant(h.clone(), n);
        let left = self.apply_series(&self.apply(f, g)?, &hs)?;
        let right = self.apply_series(&fs, &self.apply(g, h)?)?;
        Ok(left.sub(&right))
    }
}

pub fn star_product(f: &Polynomial, g: &Polynomial, alpha: &Bivector, w: &WeightSystem, order: usize) -> Result<PolySeries> {
    StarProduct::new(alpha, w, order)?.apply(f, g)
}

pub fn associativity_defect(
    f: &Polynomial,
    g: &Polynomial,
    h: &Polynomial,
    alpha: &Bivector,
    w: &WeightSystem,
    order: usize,
) -> Result<PolySeries> {
    StarProduct::new(alpha, w, order)?.associativity_defect(f, g, h)
}

/// Constant-coefficient Moyal product `exp(ε α^{ij} ∂_i ⊗ ∂_j)(f ⊗ g)`,
/// expanded directly on tensors without any graphs.
pub fn moyal_oracle(f: &Polynomial, g: &Polynomial, alpha: &Bivector, order: usize) -> Result<PolySeries> {
    if !alpha.is_constant() {
        return Err(Error::Bivector("constant"));
    }
    let d = alpha.dim();
    if f.nvars() != d || g.nvars() != d {
        return Err(Error::Dimension { expected: d, got: if f.nvars() != d { f.nvars() } else { g.nvars() } });
    }
    let mut out = PolySeries::zero(d, order);
    let mut tensors = vec![(f.clone(), g.clone())];
    for k in 0..=order {
        let mut sum = Polynomial::zero(d);
        for (a, b) in &tensors {
            sum = &sum + &(a * b);
        }
        let inv = Rational::new(1.into(), factorial(k));
        out.add_at(k, &sum.scale(&inv));
        let mut next = Vec::new();
        for (a, b) in &tensors {
            for i in 0..d {
                for j in 0..d {
                    let c = alpha.entry(i, j);
                    if c.is_zero() {
                        continue;
                    }
                    let (da, db) = (a.derivative(i), b.derivative(j));
                    if !da.is_zero() && !db.is_zero() {
                        next.push((&c * &da, db));
                    }
                }
            }
        }
        tensors = next;
    }
    Ok(out)
}

/// `Σ_{ij} α^{ij} ∂_i f ∂_j g`.
pub fn poisson_bracket(alpha: &Bivector, f: &Polynomial, g: &Polynomial) -> Polynomial {
    let d = alpha.dim();
    let mut acc = Polynomial::zero(d);
    for i in 0..d {
        for j in 0..d {
            let term = &(&alpha.entry(i, j) * &f.derivative(i)) * &g.derivative(j);
            acc = &acc + &term;
        }
    }
    acc
}
