use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::Polynomial;
use crate::error::{Error, Result};
use crate::rational::{int, Rational};

/// Antisymmetric 2-tensor `α^{ij}` with polynomial entries; only `i < j`
/// is stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bivector {
    dim: usize,
    upper: BTreeMap<(usize, usize), Polynomial>,
}

impl Bivector {
    pub fn zero(dim: usize) -> Self {
        Bivector { dim, upper: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Sets `α^{ij}` (1-based, `i ≠ j`); `α^{ji}` follows by antisymmetry.
    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) -> Result<()> {
        if i == j || !(1..=self.dim).contains(&i) || !(1..=self.dim).contains(&j) {
            return Err(Error::Precondition(format!("bad bivector index ({i},{j})")));
        }
        if p.nvars() != self.dim {
            return Err(Error::Dimension { expected: self.dim, got: p.nvars() });
        }
        let (key, p) = if i < j { ((i, j), p) } else { ((j, i), -&p) };
        if p.is_zero() {
            self.upper.remove(&key);
        } else {
            self.upper.insert(key, p);
        }
        Ok(())
    }

    /// `α^{ij}`, 0-based.
    pub fn entry(&self, i: usize, j: usize) -> Polynomial {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => Polynomial::zero(self.dim),
            Less => self.upper.get(&(i + 1, j + 1)).cloned().unwrap_or_else(|| Polynomial::zero(self.dim)),
            Greater => -&self.entry(j, i),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.upper.values().all(Polynomial::is_constant)
    }

    /// Every entry zero or homogeneous of degree one.
    pub fn is_linear(&self) -> bool {
        self.upper.values().all(Polynomial::is_linear_homogeneous)
    }

    /// `d = 2`, `α^{12} = 1`.
    pub fn standard() -> Self {
        let mut a = Self::zero(2);
        a.set(1, 2, Polynomial::constant(2, int(1))).expect("valid");
        a
    }

    /// Constant `α^{ij} = c_{ij}` in dimension `dim` from `(i, j, c)` triples.
    pub fn constant(dim: usize, entries: &[(usize, usize, Rational)]) -> Result<Self> {
        let mut a = Self::zero(dim);
        for (i, j, c) in entries {
            a.set(*i, *j, Polynomial::constant(dim, c.clone()))?;
        }
        Ok(a)
    }

    /// Lie-Poisson structure of so(3): `α^{ij} = ε_{ijk} x_k`.
    pub fn so3() -> Self {
        let mut a = Self::zero(3);
        let x = |k| Polynomial::var(3, k);
        a.set(1, 2, x(3)).expect("valid");
        a.set(2, 3, x(1)).expect("valid");
        a.set(3, 1, x(2)).expect("valid");
        a
    }

    /// The two-dimensional nonabelian Lie algebra `[e_1, e_2] = e_2`:
    /// `α^{12} = x_2`.
    pub fn affine_line() -> Self {
        let mut a = Self::zero(2);
        a.set(1, 2, Polynomial::var(2, 2)).expect("valid");
        a
    }

    /// Reads `{"dim":d,"entries":{"i,j":"poly"}}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let json: BivectorJson = serde_json::from_str(text)?;
        let mut a = Self::zero(json.dim);
        for (key, poly) in &json.entries {
            let (i, j) = key
                .split_once(',')
                .and_then(|(i, j)| Some((i.trim().parse().ok()?, j.trim().parse().ok()?)))
                .ok_or_else(|| Error::Precondition(format!("bad entry key {key:?}")))?;
            a.set(i, j, Polynomial::parse(poly, json.dim)?)?;
        }
        Ok(a)
    }

    pub fn to_json(&self) -> String {
        let json = BivectorJson {
            dim: self.dim,
            entries: self.upper.iter().map(|((i, j), p)| (format!("{i},{j}"), p.to_string())).collect(),
        };
        serde_json::to_string(&json).expect("serializable")
    }
}

#[derive(Serialize, Deserialize)]
struct BivectorJson {
    dim: usize,
    entries: BTreeMap<String, String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antisymmetry() {
        let a = Bivector::so3();
        for i in 0..3 {
            assert!(a.entry(i, i).is_zero());
            for j in 0..3 {
                assert_eq!(a.entry(i, j), -&a.entry(j, i));
            }
        }
        assert_eq!(a.entry(2, 0), Polynomial::var(3, 2));
        assert!(a.is_linear());
        assert!(!a.is_constant());
        assert!(Bivector::standard().is_constant());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"dim":3,"entries":{"1,2":"x3","2,3":"x1","1,3":"-x2"}}"#;
        let a = Bivector::from_json(text).unwrap();
        assert_eq!(a, Bivector::so3());
        assert_eq!(Bivector::from_json(&a.to_json()).unwrap(), a);
        assert!(Bivector::from_json(r#"{"dim":2,"entries":{"1,1":"1"}}"#).is_err());
    }
}
