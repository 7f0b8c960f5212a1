//! `log(e^x e^y)` in the truncated free algebra on two letters, rewritten in
//! the Lyndon bracket basis.

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;

use num_traits::{One, Zero};

use super::{Bivector, Polynomial, StarProduct};
use crate::characters::WeightSystem;
use crate::error::Result;
use crate::linalg::{solve, Solution};
use crate::rational::{int, Rational};

/// Words over `{x, y}` (letters 0 and 1) with rational coefficients, all of
/// length at most `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeAlgebraElement {
    order: usize,
    terms: BTreeMap<Vec<u8>, Rational>,
}

impl FreeAlgebraElement {
    pub fn zero(order: usize) -> Self {
        FreeAlgebraElement { order, terms: BTreeMap::new() }
    }

    pub fn one(order: usize) -> Self {
        Self::word(order, vec![], Rational::one())
    }

    pub fn x(order: usize) -> Self {
        Self::word(order, vec![0], Rational::one())
    }

    pub fn y(order: usize) -> Self {
        Self::word(order, vec![1], Rational::one())
    }

    pub fn word(order: usize, w: Vec<u8>, c: Rational) -> Self {
        let mut e = Self::zero(order);
        e.add_term(w, c);
        e
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn add_term(&mut self, w: Vec<u8>, c: Rational) {
        if w.len() > self.order || c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn coeff(&self, w: &[u8]) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Homogeneous part of degree `k`.
    pub fn component(&self, k: usize) -> Self {
        FreeAlgebraElement {
            order: self.order,
            terms: self.terms.iter().filter(|(w, _)| w.len() == k).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.order);
        for (w, a) in &self.terms {
            out.add_term(w.clone(), a * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut out = Self::zero(order);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                if u.len() + v.len() <= order {
                    out.add_term([u.as_slice(), v.as_slice()].concat(), a * b);
                }
            }
        }
        out
    }

    /// `[a, b] = ab − ba`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    fn power_series(&self, coeff: impl Fn(usize) -> Rational) -> Self {
        let mut out = Self::zero(self.order);
        let mut power = Self::one(self.order);
        for k in 0..=self.order {
            out = out.add(&power.scale(&coeff(k)));
            power = power.mul(self);
        }
        out
    }

    /// `exp(a)` for `a` without constant term.
    pub fn exp(&self) -> Self {
        debug_assert!(self.coeff(&[]).is_zero());
        self.power_series(|k| Rational::new(1.into(), crate::rational::factorial(k)))
    }

    /// `log(a)` for `a` with constant term 1.
    pub fn log(&self) -> Self {
        let a = self.sub(&Self::one(self.order));
        a.power_series(|k| match k {
            0 => Rational::zero(),
            k if k % 2 == 1 => Rational::new(1.into(), (k as i64).into()),
            k => Rational::new((-1).into(), (k as i64).into()),
        })
    }
}

impl fmt::Display for FreeAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut words: Vec<_> = self.terms.iter().collect();
        words.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then(a.0.cmp(b.0)));
        for (i, (w, c)) in words.into_iter().enumerate() {
            let text: String = if w.is_empty() { "1".into() } else { w.iter().map(|&l| letter(l)).collect() };
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{text}")?;
            } else {
                write!(f, "{c}*{text}")?;
            }
        }
        Ok(())
    }
}

fn letter(l: u8) -> char {
    if l == 0 {
        'x'
    } else {
        'y'
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum LieMonomial {
    Letter(u8),
    Bracket(Box<LieMonomial>, Box<LieMonomial>),
}

impl LieMonomial {
    pub fn degree(&self) -> usize {
        match self {
            LieMonomial::Letter(_) => 1,
            LieMonomial::Bracket(a, b) => a.degree() + b.degree(),
        }
    }

    pub fn expand(&self, order: usize) -> FreeAlgebraElement {
        match self {
            LieMonomial::Letter(l) => FreeAlgebraElement::word(order, vec![*l], Rational::one()),
            LieMonomial::Bracket(a, b) => a.expand(order).commutator(&b.expand(order)),
        }
    }

    /// Standard bracketing of a Lyndon word: split off the longest proper
    /// Lyndon suffix.
    pub fn standard(word: &[u8]) -> Self {
        if word.len() == 1 {
            return LieMonomial::Letter(word[0]);
        }
        let split = (1..word.len()).find(|&i| is_lyndon(&word[i..])).expect("letters are Lyndon");
        LieMonomial::Bracket(Box::new(Self::standard(&word[..split])), Box::new(Self::standard(&word[split..])))
    }
}

impl fmt::Display for LieMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieMonomial::Letter(l) => write!(f, "{}", letter(*l)),
            LieMonomial::Bracket(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

pub fn is_lyndon(w: &[u8]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

pub fn lyndon_words(k: usize) -> Vec<Vec<u8>> {
    (0..1u32 << k)
        .map(|bits| (0..k).rev().map(|i| ((bits >> i) & 1) as u8).collect::<Vec<u8>>())
        .filter(|w| is_lyndon(w))
        .collect()
}

/// Homogeneous components of `log(e^x e^y)` in the Lyndon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BchSeries {
    pub components: Vec<Vec<(LieMonomial, Rational)>>,
}

impl BchSeries {
    pub fn order(&self) -> usize {
        self.components.len()
    }

    /// Degree-`k` component, `k ≥ 1`.
    pub fn component(&self, k: usize) -> &[(LieMonomial, Rational)] {
        &self.components[k - 1]
    }

    /// Expansion back into words.
    pub fn element(&self) -> FreeAlgebraElement {
        let n = self.order();
        let mut out = FreeAlgebraElement::zero(n);
        for (l, c) in self.components.iter().flatten() {
            out = out.add(&l.expand(n).scale(c));
        }
        out
    }
}

pub fn format_lie(terms: &[(LieMonomial, Rational)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let parts: Vec<String> =
        terms.iter().map(|(l, c)| if c.is_one() { l.to_string() } else { format!("{c}*{l}") }).collect();
    parts.join(" + ")
}

impl fmt::Display for BchSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, terms) in self.components.iter().enumerate() {
            writeln!(f, "degree {}: {}", k + 1, format_lie(terms))?;
        }
        Ok(())
    }
}

pub fn bch_oracle(order: usize) -> BchSeries {
    let n = order;
    let h = FreeAlgebraElement::x(n).exp().mul(&FreeAlgebraElement::y(n).exp()).log();
    let mut components = Vec::new();
    for k in 1..=n {
        let basis: Vec<LieMonomial> = lyndon_words(k).iter().map(|w| LieMonomial::standard(w)).collect();
        let expanded: Vec<FreeAlgebraElement> = basis.iter().map(|l| l.expand(n)).collect();
        let target = h.component(k);
        let rows: Vec<(Vec<Rational>, Rational)> = (0..1u32 << k)
            .map(|bits| {
                let w: Vec<u8> = (0..k).rev().map(|i| ((bits >> i) & 1) as u8).collect();
                (expanded.iter().map(|e| e.coeff(&w)).collect(), target.coeff(&w))
            })
            .collect();
        let coeffs = match solve(basis.len(), &rows) {
            Solution::Unique(x) => x,
            other => unreachable!("Lyndon brackets form a basis, got {other:?}"),
        };
        components.push(basis.into_iter().zip(coeffs).filter(|(_, c)| !c.is_zero()).collect());
    }
    BchSeries { components }
}

/// Side-by-side listing of `x_1^n ⋆ x_2` for `n ≤ order` and the oracle's
/// components. Nothing is asserted.
pub fn bch_report(w: &WeightSystem, alpha: &Bivector, order: usize) -> Result<String> {
    let star = StarProduct::new(alpha, w, order)?;
    let d = alpha.dim();
    let mut out = String::new();
    let _ = writeln!(out, "log(e^x e^y) in the Lyndon basis:");
    let _ = write!(out, "{}", bch_oracle(order));
    let _ = writeln!(out, "star products on the given bivector:");
    let y = Polynomial::var(d, 2.min(d));
    for n in 1..=order {
        let x = Polynomial::monomial(d, (0..d).map(|i| if i == 0 { n as u32 } else { 0 }).collect(), int(1));
        let _ = writeln!(out, "x1^{n} * x{}: {}", 2.min(d), star.apply(&x, &y)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn low_degrees() {
        let h = bch_oracle(3);
        assert_eq!(format_lie(h.component(1)), "x + y");
        assert_eq!(format_lie(h.component(2)), "1/2*[x,y]");
        assert_eq!(h.component(3).len(), 2);
        assert_eq!(format_lie(h.component(3)), "1/12*[x,[x,y]] + 1/12*[[x,y],y]");
    }

    #[test]
    fn higher_degrees_reexpand() {
        let n = 5;
        let h = bch_oracle(n);
        let direct = FreeAlgebraElement::x(n).exp().mul(&FreeAlgebraElement::y(n).exp()).log();
        assert_eq!(h.element(), direct);
        assert_eq!(h.component(4).len(), 1);
        assert_eq!(h.component(4)[0].1, ratio(1, 24));
    }

    #[test]
    fn lyndon_counts() {
        let counts: Vec<usize> = (1..=6).map(|k| lyndon_words(k).len()).collect();
        assert_eq!(counts, vec![2, 1, 2, 3, 6, 9]);
        assert_eq!(LieMonomial::standard(&[0, 0, 1]).to_string(), "[x,[x,y]]");
        assert_eq!(LieMonomial::standard(&[0, 1, 1]).to_string(), "[[x,y],y]");
    }

    #[test]
    fn exp_log_inverse() {
        let a = FreeAlgebraElement::x(4).add(&FreeAlgebraElement::y(4).scale(&int(3)));
        assert_eq!(a.exp().log(), a);
    }
}
