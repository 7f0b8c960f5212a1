use std::fmt;

use super::Polynomial;
use crate::rational::Rational;

/// `Σ_{k ≤ N} ε^k p_k`, truncated at `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySeries {
    nvars: usize,
    coeffs: Vec<Polynomial>,
}

impl PolySeries {
    pub fn zero(nvars: usize, order: usize) -> Self {
        PolySeries { nvars, coeffs: vec![Polynomial::zero(nvars); order + 1] }
    }

    /// `p` as a series constant in ε.
    pub fn constant(p: Polynomial, order: usize) -> Self {
        let mut s = Self::zero(p.nvars(), order);
        s.coeffs[0] = p;
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Coefficient of `ε^k` (zero beyond the truncation order).
    pub fn coeff(&self, k: usize) -> Polynomial {
        self.coeffs.get(k).cloned().unwrap_or_else(|| Polynomial::zero(self.nvars))
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn add_at(&mut self, k: usize, p: &Polynomial) {
        if k <= self.order() {
            self.coeffs[k] = &self.coeffs[k] + p;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Polynomial::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        PolySeries { nvars: self.nvars, coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect() }
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut s = Self::zero(self.nvars, order);
        for k in 0..=order.min(self.order()) {
            s.coeffs[k] = self.coeffs[k].clone();
        }
        s
    }

    pub fn add(&self, other: &PolySeries) -> Self {
        let order = self.order().min(other.order());
        let mut s = self.truncate(order);
        for k in 0..=order {
            s.coeffs[k] = &s.coeffs[k] + &other.coeffs[k];
        }
        s
    }

    pub fn sub(&self, other: &PolySeries) -> Self {
        self.add(&other.scale(&-Rational::from_integer(1.into())))
    }

    /// Cauchy product, truncated at the smaller order.
    pub fn mul(&self, other: &PolySeries) -> Self {
        let order = self.order().min(other.order());
        let mut s = Self::zero(self.nvars, order);
        for a in 0..=order {
            for b in 0..=order - a {
                let t = &self.coeffs[a] * &other.coeffs[b];
                s.add_at(a + b, &t);
            }
        }
        s
    }
}

/// `p0 + eps*(p1) + eps^2*(p2)`, skipping zero coefficients.
impl fmt::Display for PolySeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, p) in self.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            parts.push(match k {
                0 => p.to_string(),
                1 => format!("eps*({p})"),
                _ => format!("eps^{k}*({p})"),
            });
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn display_and_arithmetic() {
        let mut s = PolySeries::zero(2, 2);
        s.add_at(0, &Polynomial::parse("x1^2*x2^2", 2).unwrap());
        s.add_at(1, &Polynomial::parse("4*x1*x2", 2).unwrap());
        s.add_at(2, &Polynomial::constant(2, int(2)));
        assert_eq!(s.to_string(), "x1^2*x2^2 + eps*(4*x1*x2) + eps^2*(2)");
        assert!(s.sub(&s).is_zero());
        assert_eq!(PolySeries::zero(2, 3).to_string(), "0");
        let e = {
            let mut e = PolySeries::zero(2, 2);
            e.add_at(1, &Polynomial::one(2));
            e
        };
        let sq = e.mul(&e);
        assert_eq!(sq.coeff(2), Polynomial::one(2));
        assert!(e.mul(&sq).is_zero());
    }
}
