use num_bigint::BigInt;
use num_traits::One;

use super::GraphVector;
use crate::error::{Error, Result};
use crate::exec::{self, Mode};
use crate::graph::{self, catalog, canonicalize, AdmissibleGraph, CanonicalGraph, Target};
use crate::rational::{int, Rational};

/// A labeled summand of an insertion. Vertices `0..n1` come from the outer
/// graph and `n1..` from the inserted one; `legs[k][s]` is the image of
/// slot `s` of the source vertex's (sorted) leg pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Insertion {
    pub m: usize,
    pub n1: usize,
    pub legs: Vec<[Target; 2]>,
}

impl Insertion {
    pub fn graph(&self) -> AdmissibleGraph {
        AdmissibleGraph::new(self.m, self.legs.clone()).expect("insertion stays admissible")
    }
}

/// All labeled summands of `g1 ∘_i g2`: the boundary of `g2` replaces point
/// `i` of `g1`, and every edge of `g1` into point `i` independently lands on
/// any vertex of `g2`, internal or boundary.
pub fn insertion_graphs(g1: &CanonicalGraph, i: usize, g2: &CanonicalGraph) -> Result<Vec<Insertion>> {
    let (m1, m2, n1, n2) = (g1.m(), g2.m(), g1.n(), g2.n());
    if !(1..=m1).contains(&i) {
        return Err(Error::IndexOutOfRange { index: i, m: m1 });
    }
    let m = m1 + m2 - 1;
    let outer = |t: Target| match t {
        Target::B(j) if (j as usize) < i => t,
        Target::B(j) if (j as usize) > i => graph::b(j as usize + m2 - 1),
        other => other,
    };
    let inner = |t: Target| match t {
        Target::B(k) => graph::b(i - 1 + k as usize),
        Target::V(k) => graph::v(n1 + k as usize),
    };
    let mut base: Vec<[Target; 2]> = g1.legs().iter().map(|p| p.map(outer)).collect();
    base.extend(g2.legs().iter().map(|p| p.map(inner)));
    let slots: Vec<(usize, usize)> = (0..n1)
        .flat_map(|k| (0..2).map(move |s| (k, s)))
        .filter(|&(k, s)| g1.legs()[k][s] == Target::B(i as u8))
        .collect();
    let landing: Vec<Target> = (1..=m2)
        .map(|k| graph::b(i - 1 + k))
        .chain((1..=n2).map(|k| graph::v(n1 + k)))
        .collect();
    let total = landing.len().pow(slots.len() as u32);
    let mut out = Vec::with_capacity(total);
    for code in 0..total {
        let mut legs = base.clone();
        let mut c = code;
        for &(k, s) in &slots {
            legs[k][s] = landing[c % landing.len()];
            c /= landing.len();
        }
        out.push(Insertion { m, n1, legs });
    }
    Ok(out)
}

/// `g1 ∘_i g2` with every summand counted with its Leibniz multiplicity.
pub fn insert_at(g1: &CanonicalGraph, i: usize, g2: &CanonicalGraph) -> Result<GraphVector> {
    let mut out = GraphVector::zero();
    for ins in insertion_graphs(g1, i, g2)? {
        out.add_term(canonicalize(&ins.graph()), Rational::one());
    }
    Ok(out)
}

fn insertion_sign(i: usize, m2: usize) -> Rational {
    int(if (i - 1) * (m2 - 1) % 2 == 0 { 1 } else { -1 })
}

/// `Σ_i (−1)^{(i−1)(m'−1)} g1 ∘_i g2` with raw Leibniz counts.
pub fn compose_leibniz_basis(g1: &CanonicalGraph, g2: &CanonicalGraph) -> GraphVector {
    let mut out = GraphVector::zero();
    for i in 1..=g1.m() {
        let part = insert_at(g1, i, g2).expect("index in range");
        out += part.scale(&insertion_sign(i, g2.m()));
    }
    out
}

/// Composition of unlabeled graphs: each summand Γ of the Leibniz sum is
/// weighted by `|Aut Γ| / (|Aut g1| |Aut g2|)`, which counts the ways Γ
/// contains `g2` as an inserted subgraph with quotient `g1`.
pub fn compose_basis(g1: &CanonicalGraph, g2: &CanonicalGraph) -> GraphVector {
    let denom = BigInt::from(g1.automorphism_count() * g2.automorphism_count());
    let raw = compose_leibniz_basis(g1, g2);
    raw.iter()
        .map(|(g, c)| {
            let w = Rational::new(BigInt::from(g.automorphism_count()), denom.clone());
            (g.clone(), c * w)
        })
        .collect()
}

fn bilinear(
    v1: &GraphVector,
    v2: &GraphVector,
    f: impl Fn(&CanonicalGraph, &CanonicalGraph) -> GraphVector + Sync + Send,
) -> GraphVector {
    let pairs: Vec<_> = v1
        .iter()
        .flat_map(|(a, x)| v2.iter().map(move |(c, y)| (a, c, x * y)))
        .collect();
    let parts = exec::map(Mode::default(), pairs, |(a, c, xy)| f(a, c).scale(&xy));
    let mut out = GraphVector::zero();
    for p in parts {
        out += p;
    }
    out
}

/// The pre-Lie composition on graphs.
pub fn compose(v1: &GraphVector, v2: &GraphVector) -> GraphVector {
    bilinear(v1, v2, compose_basis)
}

/// The signed insertion sum with Leibniz multiplicities, bilinearly extended.
pub fn compose_leibniz(v1: &GraphVector, v2: &GraphVector) -> GraphVector {
    bilinear(v1, v2, compose_leibniz_basis)
}

pub fn boundary_product(v1: &GraphVector, v2: &GraphVector) -> GraphVector {
    bilinear(v1, v2, |a, c| match graph::product(a, c) {
        Some(g) => GraphVector::basis(g),
        None => GraphVector::zero(),
    })
}

/// `[v1, v2] = v1∘v2 − (−1)^{(m−1)(m'−1)} v2∘v1`.
pub fn bracket(v1: &GraphVector, v2: &GraphVector) -> Result<GraphVector> {
    let (Some(m1), Some(m2)) = (v1.arity()?, v2.arity()?) else {
        return Ok(GraphVector::zero());
    };
    let forward = compose(v1, v2);
    let backward = compose(v2, v1);
    Ok(if (m1 - 1) * (m2 - 1) % 2 == 0 {
        forward - backward
    } else {
        forward + backward
    })
}

/// `(v1∘v2)∘v3 − v1∘(v2∘v3)`.
pub fn associator(v1: &GraphVector, v2: &GraphVector, v3: &GraphVector) -> GraphVector {
    compose(&compose(v1, v2), v3) - compose(v1, &compose(v2, v3))
}

/// `δ = [b_0, ·]`.
pub fn delta(v: &GraphVector) -> Result<GraphVector> {
    bracket(&GraphVector::basis(catalog::b0()), v)
}

/// `Γ ↦ −Γ^t`, extended linearly.
pub fn apply_t(v: &GraphVector) -> GraphVector {
    v.iter().map(|(g, c)| (g.transpose(), -c.clone())).collect()
}

/// `Γ ↦ Γ / |Aut Γ|`.
pub fn divide_by_automorphisms(v: &GraphVector) -> GraphVector {
    v.iter()
        .map(|(g, c)| (g.clone(), c / int(g.automorphism_count() as i64)))
        .collect()
}

fn unit_for(v: &GraphVector) -> Result<CanonicalGraph> {
    Ok(catalog::unit(v.arity()?.unwrap_or(2)))
}

/// `Σ_k v^k / k!` under the boundary product, truncated at internal degree
/// `max_order`. `v` must have no degree-0 part.
pub fn exp_product(v: &GraphVector, max_order: usize) -> Result<GraphVector> {
    if !v.component(0).is_zero() {
        return Err(Error::Precondition("exp needs a vector without degree-0 terms".into()));
    }
    let unit = GraphVector::basis(unit_for(v)?);
    let mut power = unit.clone();
    let mut out = unit;
    for k in 1..=max_order {
        power = boundary_product(&power, v).truncate(max_order).scale(&Rational::new(1.into(), k.into()));
        if power.is_zero() {
            break;
        }
        out += &power;
    }
    Ok(out)
}

/// `log(unit + w) = Σ_k (−1)^{k+1} w^k / k`, truncated at `max_order`.
/// `v` must have coefficient 1 on the unit and no other degree-0 terms.
pub fn log_product(v: &GraphVector, max_order: usize) -> Result<GraphVector> {
    let unit = unit_for(v)?;
    let degree0 = v.component(0);
    if degree0 != GraphVector::basis(unit.clone()) {
        return Err(Error::Precondition("log needs coefficient 1 on the unit".into()));
    }
    let w = v - &degree0;
    let mut power = GraphVector::basis(unit);
    let mut out = GraphVector::zero();
    for k in 1..=max_order {
        power = boundary_product(&power, &w).truncate(max_order);
        if power.is_zero() {
            break;
        }
        let sign = if k % 2 == 1 { 1 } else { -1 };
        out += power.scale(&Rational::new(sign.into(), k.into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{catalog::*, pad, Side};
    use crate::rational::ratio;

    fn bv(g: CanonicalGraph) -> GraphVector {
        GraphVector::basis(g)
    }

    fn lin(terms: &[(CanonicalGraph, i64)]) -> GraphVector {
        terms.iter().map(|(g, c)| (g.clone(), int(*c))).collect()
    }

    #[test]
    fn insert_examples() {
        assert_eq!(insert_at(&b0(), 1, &b1()).unwrap(), bv(b1_left()));
        assert_eq!(insert_at(&b1(), 1, &b0()).unwrap(), lin(&[(b1_middle(), 1), (b1_right(), 1)]));
        assert_eq!(
            insert_at(&b1(), 1, &b1()).unwrap(),
            lin(&[
                (t2_right(), 1),
                (c2_left(), 1),
                (graph::product(&b1_left(), &b1_right()).unwrap(), 1),
            ])
        );
        assert!(insert_at(&b1(), 3, &b1()).is_err());
    }

    #[test]
    fn appendix_compositions() {
        assert!(compose(&bv(b0()), &bv(b0())).is_zero());
        assert_eq!(compose(&bv(b0()), &bv(b1())), lin(&[(b1_left(), 1), (b1_right(), -1)]));
        assert_eq!(compose(&bv(b1()), &bv(b0())), lin(&[(b1_right(), 1), (b1_left(), -1)]));
        assert_eq!(
            compose(&bv(b1()), &bv(b1())),
            lin(&[(t2_right(), 1), (t2_left(), -1), (c2_left(), 1), (c2_right(), -1)])
        );
        let sq = b1_squared();
        assert_eq!(
            compose(&bv(b0()), &bv(sq.clone())),
            lin(&[(pad(&sq, Side::Right).unwrap(), 1), (pad(&sq, Side::Left).unwrap(), -1)])
        );
        let b2l = bn_left(2);
        assert_eq!(
            compose(&bv(b2l.clone()), &bv(b0())),
            lin(&[
                (pad(&b2l, Side::Left).unwrap(), 1),
                (pad(&b2l, Side::Right).unwrap(), -1),
                (t2_left(), 1),
                (c2(), 1),
            ])
        );
    }

    #[test]
    fn brackets_and_delta() {
        assert!(bracket(&bv(b0()), &bv(b1())).unwrap().is_zero());
        assert_eq!(bracket(&bv(b0()), &bv(bn_left(2))).unwrap(), lin(&[(t2_left(), 1), (c2(), 1)]));
        assert_eq!(
            delta(&bv(b1_squared())).unwrap(),
            lin(&[(c2_right(), 1), (c2_left(), -1)])
        );
        let b2 = bv(bn_left(2)) + bv(bn_right(2));
        assert_eq!(delta(&b2).unwrap(), lin(&[(t2_left(), 1), (t2_right(), -1)]));
        let mixed = bv(b1()) + bv(b1_left());
        assert_eq!(bracket(&mixed, &bv(b0())), Err(Error::MixedArity));
    }

    #[test]
    fn leibniz_count_doubles_the_square_term() {
        let got = compose_leibniz(&bv(b0()), &bv(b1_squared())) + compose_leibniz(&bv(b1_squared()), &bv(b0()));
        assert_eq!(got, lin(&[(c2_right(), 2), (c2_left(), -2)]));
    }

    #[test]
    fn unit_weight_cancellation() {
        let b0v = bv(b0());
        let total = compose(&bv(b1()), &bv(b1()))
            + bracket(&b0v, &bv(b1_squared())).unwrap()
            + bracket(&b0v, &bv(bn_left(2))).unwrap()
            + bracket(&b0v, &bv(bn_right(2))).unwrap();
        assert!(total.is_zero());
    }

    #[test]
    fn associators() {
        assert!(associator(&bv(b0()), &bv(b0()), &bv(b0())).is_zero());
        let a = associator(&bv(b1()), &bv(b1()), &bv(b0())) + associator(&bv(b1()), &bv(b0()), &bv(b1()));
        assert!(a.is_zero());
        assert!(associator(&bv(b1()), &bv(b1()), &bv(b1())).is_zero());
    }

    #[test]
    fn bullet_is_composition_unit() {
        for g in [b1(), bn_left(2), c2()] {
            assert_eq!(compose(&bv(bullet()), &bv(g.clone())), bv(g.clone()));
            assert_eq!(compose(&bv(g.clone()), &bv(bullet())), bv(g.clone()).scale(&int(g.m() as i64)));
        }
    }

    #[test]
    fn products_and_series() {
        assert_eq!(boundary_product(&bv(b1()), &bv(b1())), bv(b1_squared()));
        assert_eq!(boundary_product(&bv(b0()), &bv(bn_left(2))), bv(bn_left(2)));
        assert!(boundary_product(&bv(b1()), &bv(b1_left())).is_zero());
        let e = exp_product(&bv(b1()), 3).unwrap();
        let want: GraphVector = (0..=3)
            .map(|k| (b1_power(k), ratio(1, [1, 1, 2, 6][k])))
            .collect();
        assert_eq!(e, want);
        assert_eq!(log_product(&exp_product(&bv(b1()), 4).unwrap(), 4).unwrap(), bv(b1()));
        let v = bv(b0()) + bv(b1_squared());
        let want = bv(b1_squared()) - bv(b1_power(4)).scale(&ratio(1, 2));
        assert_eq!(log_product(&v, 4).unwrap(), want);
        assert!(exp_product(&bv(b0()), 2).is_err());
        assert!(log_product(&bv(b1()), 2).is_err());
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(apply_t(&bv(bn_left(2))), bv(bn_right(2)).scale(&int(-1)));
        assert_eq!(apply_t(&bv(b1())), bv(b1()).scale(&int(-1)));
    }
}
