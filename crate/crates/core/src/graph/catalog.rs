//! Named graphs. All constructors return canonical forms.

use super::{b, canonicalize, pad, v, AdmissibleGraph, CanonicalGraph, Side, Target};

fn build(m: usize, legs: Vec<[Target; 2]>) -> CanonicalGraph {
    canonicalize(&AdmissibleGraph::new(m, legs).expect("catalog graph is admissible"))
}

/// The unit of the boundary product with `m` points.
pub fn unit(m: usize) -> CanonicalGraph {
    canonicalize(&AdmissibleGraph::unit(m))
}

pub fn b0() -> CanonicalGraph {
    unit(2)
}

/// The single boundary point, unit of composition.
pub fn bullet() -> CanonicalGraph {
    unit(1)
}

pub fn b1() -> CanonicalGraph {
    build(2, vec![[b(1), b(2)]])
}

fn chain(m: usize, n: usize, side: Target, last: [Target; 2]) -> CanonicalGraph {
    assert!(n >= 1, "chain needs at least one vertex");
    let mut legs: Vec<_> = (1..n).map(|k| [side, v(k + 1)]).collect();
    legs.push(last);
    build(m, legs)
}

/// Left Bernoulli graph: a chain whose side legs all land on B1.
pub fn bn_left(n: usize) -> CanonicalGraph {
    if n == 0 {
        return b0();
    }
    chain(2, n, b(1), [b(1), b(2)])
}

pub fn bn_right(n: usize) -> CanonicalGraph {
    if n == 0 {
        return b0();
    }
    chain(2, n, b(2), [b(1), b(2)])
}

/// `b_1^n`, the n-fold boundary power of `b_1`.
pub fn b1_power(n: usize) -> CanonicalGraph {
    build(2, vec![[b(1), b(2)]; n])
}

pub fn b1_squared() -> CanonicalGraph {
    b1_power(2)
}

pub fn b1_left() -> CanonicalGraph {
    build(3, vec![[b(1), b(2)]])
}

pub fn b1_middle() -> CanonicalGraph {
    build(3, vec![[b(1), b(3)]])
}

pub fn b1_right() -> CanonicalGraph {
    build(3, vec![[b(2), b(3)]])
}

pub fn t2_left() -> CanonicalGraph {
    build(3, vec![[b(1), v(2)], [b(2), b(3)]])
}

pub fn t2_right() -> CanonicalGraph {
    build(3, vec![[v(2), b(3)], [b(1), b(2)]])
}

pub fn c2() -> CanonicalGraph {
    build(3, vec![[b(2), v(2)], [b(1), b(3)]])
}

pub fn c2_left() -> CanonicalGraph {
    build(3, vec![[b(1), b(2)], [b(1), b(3)]])
}

pub fn c2_right() -> CanonicalGraph {
    build(3, vec![[b(1), b(3)], [b(2), b(3)]])
}

/// Chain with side legs on B1 whose last vertex spans (B2, B3).
pub fn gamma(n: usize) -> CanonicalGraph {
    chain(3, n, b(1), [b(2), b(3)])
}

/// Looks up a graph by name. Accepted names: `b0`, `bullet`, `unit3`,
/// `b1`, `b<n>L`, `b<n>R`, `b1^<n>` (also `b1sq`), `b1L`, `b1M`, `b1R`,
/// `t2L`, `t2R`, `c2`, `c2L`, `c2R`, `G<n>`. A trailing `.` pads on the
/// right, a leading `.` on the left, and a `|M` suffix pads in the middle.
pub fn by_name(name: &str) -> Option<CanonicalGraph> {
    let name = name.trim();
    if let Some(rest) = name.strip_suffix("|M") {
        return by_name(rest).and_then(|g| pad(&g, Side::Middle).ok());
    }
    if let Some(rest) = name.strip_prefix('.') {
        return by_name(rest).and_then(|g| pad(&g, Side::Left).ok());
    }
    if let Some(rest) = name.strip_suffix('.') {
        return by_name(rest).and_then(|g| pad(&g, Side::Right).ok());
    }
    let fixed = match name {
        "b0" => Some(b0()),
        "bullet" => Some(bullet()),
        "unit3" => Some(unit(3)),
        "b1" => Some(b1()),
        "b1sq" => Some(b1_squared()),
        "b1L" => Some(b1_left()),
        "b1M" => Some(b1_middle()),
        "b1R" => Some(b1_right()),
        "t2L" => Some(t2_left()),
        "t2R" => Some(t2_right()),
        "c2" => Some(c2()),
        "c2L" => Some(c2_left()),
        "c2R" => Some(c2_right()),
        _ => None,
    };
    if fixed.is_some() {
        return fixed;
    }
    let small = |s: &str| s.parse::<usize>().ok().filter(|&k| (1..=8).contains(&k));
    if let Some(k) = name.strip_prefix("b1^").and_then(small) {
        return Some(b1_power(k));
    }
    if let Some(k) = name.strip_prefix('G').and_then(small) {
        return Some(gamma(k));
    }
    let body = name.strip_prefix('b')?;
    if let Some(k) = body.strip_suffix('L').and_then(small) {
        return Some(bn_left(k));
    }
    if let Some(k) = body.strip_suffix('R').and_then(small) {
        return Some(bn_right(k));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_resolve() {
        assert_eq!(by_name("b2L"), Some(bn_left(2)));
        assert_eq!(by_name("b1^3"), Some(b1_power(3)));
        assert_eq!(by_name("b1."), Some(b1_left()));
        assert_eq!(by_name(".b1"), Some(b1_right()));
        assert_eq!(by_name("b1|M"), Some(b1_middle()));
        assert_eq!(by_name("G1"), Some(b1_right()));
        assert_eq!(by_name("b1L."), None);
        assert_eq!(by_name("nope"), None);
    }

    #[test]
    fn b1_is_both_bernoulli() {
        assert_eq!(bn_left(1), b1());
        assert_eq!(bn_right(1), b1());
        assert_ne!(bn_left(3), bn_right(3));
    }

    #[test]
    fn gamma_two_is_t2_left() {
        assert_eq!(gamma(2), t2_left());
    }
}
