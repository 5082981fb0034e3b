use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed};

use super::multicurve::parse_weighted_curve;
use super::{CurveClass, FillingMulticurve, KMulticurve};
use crate::exact::{format_rational, parse_rational, rational_to_f64};
use crate::{Error, Length, Rational, Result};

/// A positive, 1-homogeneous length function on the lamination chart ℝ²/±.
///
/// Both kinds are norms on ℝ², which is what the enumeration relies on:
/// along any affine line the value is convex.
///
/// Spec strings: `i:<w1>*(p1,q1)+<w2>*(p2,q2)+…` (weights default to 1,
/// `a`/`b` abbreviate `(1,0)`/`(0,1)`), `flat`, or `<w>*flat`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LengthFunctional {
    /// `λ ↦ i(σ, λ) = Σ w_j |det(v_j, λ)|`.
    Intersection(FillingMulticurve),
    /// `λ ↦ scale · √(p² + q²)`.
    Flat { scale: Rational },
}

impl LengthFunctional {
    pub fn intersection(sigma: FillingMulticurve) -> Self {
        LengthFunctional::Intersection(sigma)
    }

    /// `i(α + β, ·)`, which is the ℓ¹ norm `|p| + |q|`.
    pub fn alpha_plus_beta() -> Self {
        LengthFunctional::Intersection(FillingMulticurve::alpha_plus_beta())
    }

    pub fn flat() -> Self {
        LengthFunctional::Flat { scale: Rational::one() }
    }

    pub fn scaled(&self, t: Rational) -> Result<Self> {
        if !t.is_positive() {
            return Err(Error::NonPositiveWeight(format_rational(t)));
        }
        Ok(match self {
            LengthFunctional::Intersection(s) => LengthFunctional::Intersection(s.scaled(t)),
            LengthFunctional::Flat { scale } => LengthFunctional::Flat { scale: scale * t },
        })
    }

    #[inline]
    pub fn eval_vector(&self, (p, q): (i64, i64)) -> Length {
        match self {
            LengthFunctional::Intersection(s) => Length::Rational(s.pair_with((p, q))),
            LengthFunctional::Flat { scale } => Length::Sqrt(Rational::from_integer(p * p + q * q) * scale * scale),
        }
    }

    #[inline]
    pub fn eval_curve(&self, c: &CurveClass) -> Length {
        self.eval_vector(c.vector())
    }

    /// Exact value at a rational chart point.
    pub fn eval_point(&self, p: Rational, q: Rational) -> Length {
        match self {
            LengthFunctional::Intersection(s) => Length::Rational(s.pair_rational(p, q)),
            LengthFunctional::Flat { scale } => Length::Sqrt((p * p + q * q) * scale * scale),
        }
    }

    #[inline]
    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        match self {
            LengthFunctional::Intersection(s) => s.pair_f64(x, y),
            LengthFunctional::Flat { scale } => rational_to_f64(*scale) * x.hypot(y),
        }
    }

    /// Per-component lengths `w_i φ(γ_i)`.
    pub fn component_lengths(&self, gamma: &KMulticurve) -> Vec<Length> {
        gamma.components().iter().map(|(c, w)| self.eval_curve(c).scale(*w)).collect()
    }

    pub fn component_lengths_f64(&self, gamma: &KMulticurve) -> Vec<f64> {
        gamma
            .components()
            .iter()
            .map(|(c, w)| rational_to_f64(*w) * self.eval_f64(c.p() as f64, c.q() as f64))
            .collect()
    }

    /// Minimum and maximum of `φ(x) / ‖x‖₁` over nonzero `x`.
    pub fn l1_ratio_bounds(&self) -> (f64, f64) {
        match self {
            LengthFunctional::Flat { scale } => {
                let s = rational_to_f64(*scale);
                (s / 2f64.sqrt(), s)
            }
            LengthFunctional::Intersection(sigma) => {
                // Linear along each edge of the ℓ¹ sphere except where λ ∥ v_j.
                let mut candidates = vec![(1.0, 0.0), (0.0, 1.0)];
                for (c, _) in sigma.parts() {
                    let n = c.l1_norm() as f64;
                    candidates.push((c.p() as f64 / n, c.q() as f64 / n));
                }
                candidates.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &(x, y)| {
                    let v = self.eval_f64(x, y);
                    (lo.min(v), hi.max(v))
                })
            }
        }
    }

    /// Directions (angles in `[0, π)`) where the functional fails to be smooth
    /// on the unit circle.
    pub fn kink_angles(&self) -> Vec<f64> {
        match self {
            LengthFunctional::Flat { .. } => Vec::new(),
            LengthFunctional::Intersection(sigma) => sigma
                .parts()
                .iter()
                .map(|(c, _)| {
                    let a = (c.q() as f64).atan2(c.p() as f64);
                    if a < 0.0 {
                        a + std::f64::consts::PI
                    } else {
                        a
                    }
                })
                .collect(),
        }
    }
}

impl fmt::Display for LengthFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LengthFunctional::Flat { scale } if scale.is_one() => f.write_str("flat"),
            LengthFunctional::Flat { scale } => write!(f, "{}*flat", format_rational(*scale)),
            LengthFunctional::Intersection(s) => {
                f.write_str("i:")?;
                for (i, (c, w)) in s.parts().iter().enumerate() {
                    if i > 0 {
                        f.write_str("+")?;
                    }
                    write!(f, "{}*{}", format_rational(*w), c)?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for LengthFunctional {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("i:") {
            let parts = split_top_level(rest, '+').into_iter().map(parse_weighted_curve).collect::<Result<Vec<_>>>()?;
            return Ok(LengthFunctional::Intersection(FillingMulticurve::new(parts)?));
        }
        if s == "flat" {
            return Ok(LengthFunctional::flat());
        }
        if let Some(w) = s.strip_suffix("*flat") {
            return LengthFunctional::flat().scaled(parse_rational(w)?);
        }
        Err(Error::Parse(format!("unknown functional spec {s:?}; expected i:… or flat")))
    }
}

fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}
