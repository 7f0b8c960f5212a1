use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Sparse polynomial in `x1..xd` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    /// `x_i`, 1-based.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!((1..=nvars).contains(&i), "variable index out of range");
        let mut e = vec![0; nvars];
        e[i - 1] = 1;
        Self::monomial(nvars, e, Rational::one())
    }

    pub fn monomial(nvars: usize, exponents: Vec<u32>, c: Rational) -> Self {
        assert_eq!(exponents.len(), nvars);
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exponents, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_constant(&self) -> bool {
        self.degree().unwrap_or(0) == 0
    }

    /// Zero or homogeneous of degree one.
    pub fn is_linear_homogeneous(&self) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == 1)
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// `∂/∂x_i`, 0-based index.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = e.clone();
                f[i] -= 1;
                out.add_term(f, c * Rational::from_integer(e[i].into()));
            }
        }
        out
    }

    /// Applies `∂_{i_1} ⋯ ∂_{i_k}` (0-based indices).
    pub fn derivatives(&self, indices: &[usize]) -> Self {
        let mut out = self.clone();
        for &i in indices {
            if out.is_zero() {
                break;
            }
            out = out.derivative(i);
        }
        out
    }

    pub fn parse(text: &str, nvars: usize) -> Result<Self> {
        PolyParser { s: text.as_bytes(), pos: 0, nvars }.parse()
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars.max(rhs.nvars));
        for (e, c) in &self.terms {
            for (f, d) in &rhs.terms {
                let g = e.iter().zip(f).map(|(a, b)| a + b).collect();
                out.add_term(g, c * d);
            }
        }
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

fn monomial_text(e: &[u32]) -> String {
    e.iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| if k == 1 { format!("x{}", i + 1) } else { format!("x{}^{k}", i + 1) })
        .collect::<Vec<_>>()
        .join("*")
}

/// Highest total degree first, e.g. `x1^2*x2 - 3/2*x1 + 2`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let mono = monomial_text(e);
            let mag = c.abs();
            let body = match (mono.is_empty(), mag.is_one()) {
                (true, _) => mag.to_string(),
                (false, true) => mono,
                (false, false) => format!("{mag}*{mono}"),
            };
            match (k, c.is_negative()) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

struct PolyParser<'a> {
    s: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl PolyParser<'_> {
    fn err(&self, message: &str) -> Error {
        Error::Syntax { position: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.s.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn digits(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.s.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
    }

    fn parse(mut self) -> Result<Polynomial> {
        let mut out = Polynomial::zero(self.nvars);
        let mut first = true;
        loop {
            let sign = match self.peek() {
                None if !first => break,
                None => return Err(self.err("empty polynomial")),
                Some(b'+') => {
                    self.pos += 1;
                    Rational::one()
                }
                Some(b'-') => {
                    self.pos += 1;
                    -Rational::one()
                }
                Some(_) if first => Rational::one(),
                Some(_) => return Err(self.err("expected + or -")),
            };
            first = false;
            let (e, c) = self.term()?;
            out.add_term(e, c * sign);
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Vec<u32>, Rational)> {
        let mut e = vec![0u32; self.nvars];
        let mut c = Rational::one();
        loop {
            match self.peek() {
                Some(b'x') => {
                    self.pos += 1;
                    let at = self.pos;
                    let i: usize = self.digits()?.parse().map_err(|_| self.err("bad index"))?;
                    if !(1..=self.nvars).contains(&i) {
                        return Err(Error::Syntax { position: at, message: format!("x{i} outside x1..x{}", self.nvars) });
                    }
                    let mut k = 1;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        k = self.digits()?.parse().map_err(|_| self.err("bad exponent"))?;
                    }
                    e[i - 1] += k;
                }
                Some(d) if d.is_ascii_digit() => {
                    let mut text = self.digits()?;
                    if self.peek() == Some(b'/') {
                        self.pos += 1;
                        text = format!("{text}/{}", self.digits()?);
                    }
                    c *= rational::parse(&text)?;
                }
                _ => return Err(self.err("expected a number or variable")),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok((e, c));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    #[test]
    fn parse_and_print() {
        let p = Polynomial::parse("3/2*x1*x3 - x2^2 + 4", 3).unwrap();
        assert_eq!(p.to_string(), "3/2*x1*x3 - x2^2 + 4");
        assert_eq!(Polynomial::parse("x1^2*x2^2", 2).unwrap().to_string(), "x1^2*x2^2");
        assert_eq!(Polynomial::parse("-x1", 2).unwrap(), Polynomial::var(2, 1).scale(&int(-1)));
        assert!(Polynomial::parse("x3", 2).is_err());
        assert!(Polynomial::parse("x1 x2", 2).is_err());
        assert!(Polynomial::parse("", 2).is_err());
        assert_eq!(Polynomial::parse("2*3", 1).unwrap(), Polynomial::constant(1, int(6)));
    }

    #[test]
    fn calculus() {
        let p = Polynomial::parse("x1^3*x2 + x2", 2).unwrap();
        assert_eq!(p.derivative(0), Polynomial::parse("3*x1^2*x2", 2).unwrap());
        assert_eq!(p.derivatives(&[0, 0, 0, 1]), Polynomial::constant(2, int(6)));
        assert_eq!(p.degree(), Some(4));
        assert!(Polynomial::parse("x1 - 1/2*x2", 2).unwrap().is_linear_homogeneous());
        assert!(!Polynomial::parse("x1 + 1", 2).unwrap().is_linear_homogeneous());
        assert_eq!(Polynomial::constant(2, ratio(1, 2)).to_string(), "1/2");
    }

    fn poly() -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec(((0u32..3, 0u32..3), -3i64..4), 0..4).prop_map(|ts| {
            ts.into_iter().fold(Polynomial::zero(2), |acc, ((a, b), c)| {
                &acc + &Polynomial::monomial(2, vec![a, b], int(c))
            })
        })
    }

    proptest! {
        #[test]
        fn leibniz_rule(p in poly(), q in poly(), i in 0usize..2) {
            let lhs = (&p * &q).derivative(i);
            let rhs = &(&p.derivative(i) * &q) + &(&p * &q.derivative(i));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn text_round_trip(p in poly()) {
            prop_assert_eq!(Polynomial::parse(&p.to_string(), 2).unwrap(), p);
        }
    }
}
