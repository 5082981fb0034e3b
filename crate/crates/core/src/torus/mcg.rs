use std::fmt;

use super::{CurveClass, KMulticurve};
use crate::{Error, Result};

/// A mapping class of the once-holed torus acting on curves through its
/// image in SL(2, ℤ), `(p, q) ↦ (a p + b q, c p + d q)` up to sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MCGElement {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

impl MCGElement {
    pub const IDENTITY: MCGElement = MCGElement { a: 1, b: 0, c: 0, d: 1 };
    /// Dehn twist `[[1, 1], [0, 1]]`.
    pub const TWIST: MCGElement = MCGElement { a: 1, b: 1, c: 0, d: 1 };
    /// Order-four rotation `[[0, 1], [-1, 0]]`.
    pub const ROTATION: MCGElement = MCGElement { a: 0, b: 1, c: -1, d: 0 };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let det = a * d - b * c;
        if det != 1 {
            return Err(Error::NotUnimodular(det));
        }
        Ok(MCGElement { a, b, c, d })
    }

    pub fn entries(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn inverse(&self) -> Self {
        MCGElement { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// Matrix product `self · other` (apply `other` first).
    pub fn compose(&self, other: &MCGElement) -> Self {
        MCGElement {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    #[inline]
    pub fn apply_vector(&self, (p, q): (i64, i64)) -> (i64, i64) {
        (self.a * p + self.b * q, self.c * p + self.d * q)
    }

    #[inline]
    pub fn apply_curve(&self, c: &CurveClass) -> CurveClass {
        let (p, q) = self.apply_vector(c.vector());
        CurveClass::from_primitive(p, q)
    }

    /// Diagonal action on a k-multicurve; weights are unchanged.
    pub fn apply(&self, gamma: &KMulticurve) -> KMulticurve {
        gamma.map_curves(|c| self.apply_curve(c))
    }
}

impl fmt::Display for MCGElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intersection;
    use proptest::prelude::*;

    fn pair(a: (i64, i64), b: (i64, i64)) -> KMulticurve {
        KMulticurve::unit(vec![CurveClass::new(a.0, a.1).unwrap(), CurveClass::new(b.0, b.1).unwrap()]).unwrap()
    }

    #[test]
    fn apply_examples() {
        let std = KMulticurve::standard_pair();
        assert_eq!(MCGElement::IDENTITY.apply(&std), std);
        assert_eq!(MCGElement::TWIST.apply(&std), pair((1, 0), (1, 1)));
        assert_eq!(MCGElement::ROTATION.apply(&std), pair((0, 1), (1, 0)));
    }

    #[test]
    fn rejects_non_unimodular() {
        assert_eq!(MCGElement::new(2, 0, 0, 1), Err(Error::NotUnimodular(2)));
        assert_eq!(MCGElement::new(0, 1, 1, 0), Err(Error::NotUnimodular(-1)));
    }

    #[test]
    fn group_laws() {
        let t = MCGElement::TWIST;
        let s = MCGElement::ROTATION;
        assert_eq!(t.compose(&t.inverse()), MCGElement::IDENTITY);
        let s2 = s.compose(&s);
        assert_eq!(s2.compose(&s2), MCGElement::IDENTITY);
        let st = s.compose(&t);
        let st3 = st.compose(&st).compose(&st);
        assert_eq!(st3.compose(&st3), MCGElement::IDENTITY);
    }

    fn primitive() -> impl Strategy<Value = CurveClass> {
        (-200i64..200, -200i64..200).prop_filter_map("primitive", |(p, q)| CurveClass::new(p, q).ok())
    }

    fn unimodular() -> impl Strategy<Value = MCGElement> {
        proptest::collection::vec(0usize..4, 0..12).prop_map(|word| {
            let gens =
                [MCGElement::TWIST, MCGElement::TWIST.inverse(), MCGElement::ROTATION, MCGElement::ROTATION.inverse()];
            word.into_iter().fold(MCGElement::IDENTITY, |acc, i| acc.compose(&gens[i]))
        })
    }

    proptest! {
        #[test]
        fn intersection_symmetric(u in primitive(), v in primitive()) {
            prop_assert_eq!(intersection(&u, &v), intersection(&v, &u));
            prop_assert_eq!(intersection(&u, &v) == 0, u == v);
        }

        #[test]
        fn intersection_invariant(u in primitive(), v in primitive(), a in unimodular()) {
            prop_assert_eq!(
                intersection(&a.apply_curve(&u), &a.apply_curve(&v)),
                intersection(&u, &v)
            );
        }
    }
}
