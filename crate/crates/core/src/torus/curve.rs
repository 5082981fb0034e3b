use std::fmt;

use num_integer::Integer;

use crate::{Error, Result};

/// An essential simple closed curve on the once-holed torus, stored as the
/// canonical representative of a primitive vector `±(p, q)`: `p > 0`, or
/// `p = 0` and `q = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveClass {
    p: i64,
    q: i64,
}

impl CurveClass {
    pub const ALPHA: CurveClass = CurveClass { p: 1, q: 0 };
    pub const BETA: CurveClass = CurveClass { p: 0, q: 1 };

    pub fn new(p: i64, q: i64) -> Result<Self> {
        if (p, q) == (0, 0) || p.gcd(&q) != 1 {
            return Err(Error::NotPrimitive(p, q));
        }
        Ok(Self::from_primitive(p, q))
    }

    /// Canonicalize a vector already known to be primitive.
    #[inline]
    pub(crate) fn from_primitive(p: i64, q: i64) -> Self {
        debug_assert_eq!(p.gcd(&q), 1);
        if p < 0 || (p == 0 && q < 0) {
            CurveClass { p: -p, q: -q }
        } else {
            CurveClass { p, q }
        }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn vector(&self) -> (i64, i64) {
        (self.p, self.q)
    }

    /// Signed determinant of the canonical representatives.
    #[inline]
    pub fn det(&self, other: &CurveClass) -> i64 {
        self.p * other.q - self.q * other.p
    }

    pub fn l1_norm(&self) -> i64 {
        self.p.abs() + self.q.abs()
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// Geometric intersection number `|p_u q_v - q_u p_v|`.
#[inline]
pub fn intersection(u: &CurveClass, v: &CurveClass) -> u64 {
    u.det(v).unsigned_abs()
}
