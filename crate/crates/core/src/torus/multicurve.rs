use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{intersection, CurveClass};
use crate::exact::{format_rational, parse_rational};
use crate::{Error, Rational, Result};

/// Ordered tuple of weighted curves `(w_1 γ_1, …, w_k γ_k)`.
///
/// Text form: `w1*(p1,q1);w2*(p2,q2);…` with weights written `num/den`.
/// Parsing also accepts integer or decimal weights and omitted weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KMulticurve {
    components: Vec<(CurveClass, Rational)>,
}

impl KMulticurve {
    pub fn new(components: Vec<(CurveClass, Rational)>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::EmptyMulticurve);
        }
        if let Some((_, w)) = components.iter().find(|(_, w)| !w.is_positive()) {
            return Err(Error::NonPositiveWeight(format_rational(*w)));
        }
        Ok(KMulticurve { components })
    }

    /// All weights equal to one.
    pub fn unit(curves: Vec<CurveClass>) -> Result<Self> {
        Self::new(curves.into_iter().map(|c| (c, Rational::one())).collect())
    }

    /// The pair `(α, β)` of curves meeting once.
    pub fn standard_pair() -> Self {
        KMulticurve { components: vec![(CurveClass::ALPHA, Rational::one()), (CurveClass::BETA, Rational::one())] }
    }

    #[inline]
    pub(crate) fn weighted_pair(v: CurveClass, wv: Rational, w: CurveClass, ww: Rational) -> Self {
        KMulticurve { components: vec![(v, wv), (w, ww)] }
    }

    pub fn components(&self) -> &[(CurveClass, Rational)] {
        &self.components
    }

    pub fn curves(&self) -> impl Iterator<Item = &CurveClass> {
        self.components.iter().map(|(c, _)| c)
    }

    pub fn k(&self) -> usize {
        self.components.len()
    }

    pub(crate) fn map_curves<F: Fn(&CurveClass) -> CurveClass>(&self, f: F) -> Self {
        KMulticurve { components: self.components.iter().map(|(c, w)| (f(c), *w)).collect() }
    }

    /// Pairwise intersection numbers `i(γ_i, γ_j)` for `i < j`.
    pub fn pairwise_intersections(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for (i, (a, _)) in self.components.iter().enumerate() {
            for (b, _) in &self.components[i + 1..] {
                out.push(intersection(a, b));
            }
        }
        out
    }
}

impl fmt::Display for KMulticurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (c, w)) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{}*{}", format_rational(*w), c)?;
        }
        Ok(())
    }
}

impl FromStr for KMulticurve {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let comps =
            s.split(';').filter(|t| !t.trim().is_empty()).map(parse_weighted_curve).collect::<Result<Vec<_>>>()?;
        KMulticurve::new(comps)
    }
}

/// Parse `w*(p,q)`, `(p,q)`, `w*a`, `b`, … (`a` = α = (1,0), `b` = β = (0,1)).
pub(crate) fn parse_weighted_curve(s: &str) -> Result<(CurveClass, Rational)> {
    let s = s.trim();
    let (weight, curve) = match s.rsplit_once('*') {
        Some((w, c)) => (parse_rational(w)?, c.trim()),
        None => (Rational::one(), s),
    };
    let class = match curve {
        "a" => CurveClass::ALPHA,
        "b" => CurveClass::BETA,
        _ => {
            let inner = curve
                .strip_prefix('(')
                .and_then(|c| c.strip_suffix(')'))
                .ok_or_else(|| Error::Parse(format!("expected (p,q), got {curve:?}")))?;
            let (p, q) = inner.split_once(',').ok_or_else(|| Error::Parse(format!("expected (p,q), got {curve:?}")))?;
            let p: i64 = p.trim().parse().map_err(|_| Error::Parse(format!("bad integer {p:?}")))?;
            let q: i64 = q.trim().parse().map_err(|_| Error::Parse(format!("bad integer {q:?}")))?;
            CurveClass::new(p, q)?
        }
    };
    if !weight.is_positive() {
        return Err(Error::NonPositiveWeight(format_rational(weight)));
    }
    Ok((class, weight))
}

/// A weighted multicurve that fills the torus: its parts span at least two
/// directions, so `Σ w_j |det(v_j, λ)|` vanishes only at `λ = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FillingMulticurve {
    parts: Vec<(CurveClass, Rational)>,
    // Integer weights over a common denominator, for fast exact evaluation.
    int_weights: Vec<i64>,
    denom: i64,
}

impl FillingMulticurve {
    pub fn new(parts: Vec<(CurveClass, Rational)>) -> Result<Self> {
        if let Some((_, w)) = parts.iter().find(|(_, w)| !w.is_positive()) {
            return Err(Error::NonPositiveWeight(format_rational(*w)));
        }
        let first = parts.first().ok_or(Error::NotFilling)?.0;
        if parts.iter().all(|(c, _)| *c == first) {
            return Err(Error::NotFilling);
        }
        let denom = parts.iter().fold(1i64, |acc, (_, w)| acc.lcm(w.denom()));
        let int_weights = parts.iter().map(|(_, w)| (w * denom).to_integer()).collect();
        Ok(FillingMulticurve { parts, int_weights, denom })
    }

    /// `α + β`.
    pub fn alpha_plus_beta() -> Self {
        Self::new(vec![(CurveClass::ALPHA, Rational::one()), (CurveClass::BETA, Rational::one())]).expect("α + β fills")
    }

    pub fn parts(&self) -> &[(CurveClass, Rational)] {
        &self.parts
    }

    /// Common denominator of the weights.
    pub(crate) fn denom(&self) -> i64 {
        self.denom
    }

    /// `Σ w_j |det(v_j, (p, q))|` as an exact rational.
    #[inline]
    pub fn pair_with(&self, (p, q): (i64, i64)) -> Rational {
        Rational::new(self.pair_scaled(p, q), self.denom)
    }

    /// `denom · Σ w_j |det(v_j, (p, q))|`, an integer.
    #[inline]
    pub(crate) fn pair_scaled(&self, p: i64, q: i64) -> i64 {
        self.parts.iter().zip(&self.int_weights).map(|((c, _), w)| w * (c.p() * q - c.q() * p).abs()).sum()
    }

    pub(crate) fn pair_rational(&self, p: Rational, q: Rational) -> Rational {
        self.parts.iter().map(|(c, w)| w * (q * c.p() - p * c.q()).abs()).fold(Rational::zero(), |a, b| a + b)
    }

    pub(crate) fn pair_f64(&self, x: f64, y: f64) -> f64 {
        self.parts
            .iter()
            .map(|(c, w)| crate::exact::rational_to_f64(*w) * (c.p() as f64 * y - c.q() as f64 * x).abs())
            .sum()
    }

    pub(crate) fn scaled(&self, t: Rational) -> Self {
        Self::new(self.parts.iter().map(|(c, w)| (*c, w * t)).collect()).expect("scaling preserves filling")
    }
}

/// The vector `(w_i · i(σ, γ_i))_i`.
pub fn intersection_vector(sigma: &FillingMulticurve, gamma: &KMulticurve) -> Vec<Rational> {
    gamma.components().iter().map(|(c, w)| w * sigma.pair_with(c.vector())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(p: i64, q: i64) -> CurveClass {
        CurveClass::new(p, q).unwrap()
    }

    fn r(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn text_round_trip() {
        let g: KMulticurve = "1/2*(2,1);3*(-1,1)".parse().unwrap();
        assert_eq!(g.components(), &[(c(2, 1), Rational::new(1, 2)), (c(1, -1), r(3))]);
        assert_eq!(g.to_string(), "1/2*(2,1);3/1*(1,-1)");
        assert_eq!(g.to_string().parse::<KMulticurve>().unwrap(), g);
        let std: KMulticurve = "(1,0);(0,1)".parse().unwrap();
        assert_eq!(std, KMulticurve::standard_pair());
        assert!("0*(1,0)".parse::<KMulticurve>().is_err());
        assert!("(2,2)".parse::<KMulticurve>().is_err());
        assert!("".parse::<KMulticurve>().is_err());
    }

    #[test]
    fn filling_criterion() {
        assert!(FillingMulticurve::new(vec![(c(1, 0), r(1)), (c(-1, 0), r(2))]).is_err());
        assert!(FillingMulticurve::new(vec![]).is_err());
        assert!(FillingMulticurve::new(vec![(c(1, 0), r(1)), (c(1, 1), r(2))]).is_ok());
    }

    #[test]
    fn intersection_vector_examples() {
        let ab = FillingMulticurve::alpha_plus_beta();
        assert_eq!(intersection_vector(&ab, &KMulticurve::standard_pair()), vec![r(1), r(1)]);
        let g = KMulticurve::unit(vec![c(1, 1), c(1, 0)]).unwrap();
        assert_eq!(intersection_vector(&ab, &g), vec![r(2), r(1)]);
        let two_a_b = FillingMulticurve::new(vec![(c(1, 0), r(2)), (c(0, 1), r(1))]).unwrap();
        let g = KMulticurve::unit(vec![c(0, 1), c(0, 1)]).unwrap();
        assert_eq!(intersection_vector(&two_a_b, &g), vec![r(2), r(2)]);
    }
}
