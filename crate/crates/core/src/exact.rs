//! Exact lengths and cutoff comparisons.
//!
//! Every length the torus model produces is either a rational number
//! (intersection functionals) or the square root of a rational number
//! (flat norms). Cutoff tests `Σ ℓ_i ≤ L` are decided exactly by isolating
//! and squaring the radicals.

use std::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub type Rational = Ratio<i64>;
type Wide = Ratio<i128>;
type Big = Ratio<BigInt>;

/// A nonnegative length that is exactly representable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Length {
    Rational(Rational),
    /// `√s` for a nonnegative rational `s`.
    Sqrt(Rational),
}

impl Length {
    pub fn zero() -> Self {
        Length::Rational(Rational::zero())
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Length::Rational(q) => rational_to_f64(*q),
            Length::Sqrt(s) => rational_to_f64(*s).sqrt(),
        }
    }

    pub fn square(&self) -> Rational {
        match self {
            Length::Rational(q) => q * q,
            Length::Sqrt(s) => *s,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Length::Rational(q) => q.is_zero(),
            Length::Sqrt(s) => s.is_zero(),
        }
    }

    /// Multiply by a nonnegative rational.
    pub fn scale(&self, t: Rational) -> Length {
        match self {
            Length::Rational(q) => Length::Rational(q * t),
            Length::Sqrt(s) => Length::Sqrt(s * t * t),
        }
    }

    /// Exact `self == other` as real numbers.
    pub fn value_eq(&self, other: &Length) -> bool {
        self.square() == other.square()
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Rational(q) => write!(f, "{}", format_rational(*q)),
            Length::Sqrt(s) => write!(f, "sqrt({})", format_rational(*s)),
        }
    }
}

fn widen(q: Rational) -> Wide {
    Wide::new_raw(*q.numer() as i128, *q.denom() as i128)
}

fn wide_sqrt_le(square: Wide, bound: &Wide) -> bool {
    !bound.is_negative() && square <= bound * bound
}

/// Exact test of `Σ terms ≤ bound`.
pub fn sum_le(terms: &[Length], bound: Rational) -> bool {
    // Float filter: each side is accurate to a few ulps, so a relative gap of
    // 1e-9 decides the comparison; only near-ties go to exact arithmetic.
    let lhs: f64 = terms.iter().map(Length::to_f64).sum();
    let rhs = rational_to_f64(bound);
    let band = 1e-9 * (lhs.abs() + rhs.abs());
    if lhs.is_finite() && rhs.is_finite() {
        if lhs < rhs - band {
            return true;
        }
        if lhs > rhs + band {
            return false;
        }
    }
    sum_le_exact(terms, bound)
}

fn sum_le_exact(terms: &[Length], bound: Rational) -> bool {
    let mut rest = widen(bound);
    let mut radicals: Vec<Wide> = Vec::with_capacity(terms.len());
    for t in terms {
        match t {
            Length::Rational(q) => rest -= widen(*q),
            Length::Sqrt(s) if s.is_zero() => {}
            Length::Sqrt(s) => radicals.push(widen(*s)),
        }
    }
    match radicals.as_slice() {
        [] => !rest.is_negative(),
        [a] => wide_sqrt_le(*a, &rest),
        [a, b] => {
            // √a + √b ≤ R  ⇔  R ≥ 0 ∧ 2√(ab) ≤ R² - a - b
            if rest.is_negative() {
                return false;
            }
            let slack = rest * rest - a - b;
            !slack.is_negative() && Wide::from_integer(4) * a * b <= slack * slack
        }
        _ => radicals_le(&radicals, &rest),
    }
}

/// `√q` when it is rational.
fn rational_sqrt(q: &Big) -> Option<Big> {
    let (n, d) = (q.numer(), q.denom());
    if n.is_negative() {
        return None;
    }
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| Big::new_raw(rn, rd))
}

/// `Σ √a_i ≤ bound` for any number of radicals.
///
/// Radicands whose quotient is a rational square are merged first. The square
/// roots left over are then linearly independent over ℚ together with 1, so
/// their sum is irrational and never equals the bound, and refining the
/// precision always terminates.
fn radicals_le(radicals: &[Wide], bound: &Wide) -> bool {
    let big = |q: &Wide| Big::new(BigInt::from(*q.numer()), BigInt::from(*q.denom()));
    let mut target = big(bound);
    let mut classes: Vec<(Big, Big)> = Vec::new();
    for a in radicals.iter().map(big) {
        if let Some(r) = rational_sqrt(&a) {
            target -= r;
            continue;
        }
        let hit = classes.iter_mut().find_map(|(rep, c)| rational_sqrt(&(&a / &*rep)).map(|r| (c, r)));
        match hit {
            Some((c, r)) => *c += r,
            None => classes.push((a, Big::one())),
        }
    }
    if target.is_negative() {
        return false;
    }
    if classes.is_empty() {
        return true;
    }
    let mut bits = 64usize;
    loop {
        let scale = BigInt::one() << bits;
        let (mut lo, mut hi) = (Big::zero(), Big::zero());
        for (a, c) in &classes {
            // √(n/d) = √(nd)/d, bracketed by floor(2^bits √(nd)) and one more
            let s = (a.numer() * a.denom() * &scale * &scale).sqrt();
            let den = a.denom() * &scale;
            lo += c * Big::new(s.clone(), den.clone());
            hi += c * Big::new(s + 1, den);
        }
        if hi <= target {
            return true;
        }
        if lo > target {
            return false;
        }
        bits *= 2;
    }
}

/// Exact `a ≤ b`.
pub fn length_le(a: Length, b: Length) -> bool {
    match b {
        Length::Rational(q) => sum_le(&[a], q),
        Length::Sqrt(s) => match a {
            Length::Rational(p) => p.is_negative() || p * p <= s,
            Length::Sqrt(r) => r <= s,
        },
    }
}

/// Integer interval `{t ∈ [lo, hi] : feasible(t)}` for a convex `f` whose
/// sublevel set `{f ≤ budget}` is what `feasible` decides exactly.
///
/// Floating-point searches locate the interval and `feasible` settles the
/// endpoints, so the result is exact as long as `f` is accurate to within a
/// few ulps.
pub(crate) fn level_interval<F, P>(lo: i64, hi: i64, f: F, budget: f64, feasible: P) -> Option<(i64, i64)>
where
    F: Fn(i64) -> f64,
    P: Fn(i64) -> bool,
{
    // smallest t with f(t+1) - f(t) >= 0
    let t_min = first_true(lo, hi, |t| f(t + 1) - f(t) >= 0.0);
    let anchor = [t_min, t_min - 1, t_min + 1].into_iter().find(|&t| feasible(t))?;
    let tol = budget.abs() * 1e-12;
    let mut left = first_true(lo, anchor, |t| f(t) <= budget + tol);
    while left > lo && feasible(left - 1) {
        left -= 1;
    }
    while left < anchor && !feasible(left) {
        left += 1;
    }
    let mut right = first_true(anchor, hi, |t| f(t) > budget + tol) - 1;
    right = right.max(anchor);
    while right < hi && feasible(right + 1) {
        right += 1;
    }
    while right > anchor && !feasible(right) {
        right -= 1;
    }
    Some((left, right))
}

/// Smallest `t` in `[lo, hi]` with `pred(t)` for monotone `pred`; `hi` if none.
fn first_true<P: Fn(i64) -> bool>(mut lo: i64, mut hi: i64, pred: P) -> i64 {
    while lo < hi {
        let mid = lo + (hi - lo).div_euclid(2);
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

pub fn rational_to_f64(q: Rational) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

/// Serialize as `num/den`.
pub fn format_rational(q: Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parse `n`, `n/d` or a finite decimal such as `2.5`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let err = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| err())?;
        let d: i64 = d.trim().parse().map_err(|_| err())?;
        if d == 0 {
            return Err(err());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 15 {
            return Err(err());
        }
        let negative = int.starts_with('-');
        let int_val: i64 =
            if int.is_empty() || int == "-" || int == "+" { 0 } else { int.parse().map_err(|_| err())? };
        let den = 10i64.checked_pow(frac.len() as u32).ok_or_else(err)?;
        let frac_val: i64 = frac.parse().map_err(|_| err())?;
        let mag = int_val.abs().checked_mul(den).and_then(|x| x.checked_add(frac_val)).ok_or_else(err)?;
        return Ok(Rational::new(if negative { -mag } else { mag }, den));
    }
    s.parse::<i64>().map(Rational::from_integer).map_err(|_| err())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3").unwrap(), q(3, 1));
        assert_eq!(parse_rational("6/4").unwrap(), q(3, 2));
        assert_eq!(parse_rational("0.25").unwrap(), q(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), q(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert_eq!(format_rational(q(3, 1)), "3/1");
    }

    #[test]
    fn radical_sums_on_the_boundary() {
        // √2 + √8 = 3√2 = √18, so the sum equals √18 but exceeds 4.
        let terms = [Length::Sqrt(q(2, 1)), Length::Sqrt(q(8, 1))];
        assert!(!sum_le(&terms, q(4, 1)));
        assert!(sum_le(&terms, q(43, 10)));
        // 3 + 4 = 7 exactly, written as radicals
        let terms = [Length::Sqrt(q(9, 1)), Length::Sqrt(q(16, 1))];
        assert!(sum_le(&terms, q(7, 1)));
        assert!(!sum_le(&terms, q(6999, 1000)));
        // mixed
        let terms = [Length::Rational(q(1, 2)), Length::Sqrt(q(25, 4))];
        assert!(sum_le(&terms, q(3, 1)));
        assert!(!sum_le(&terms, q(29, 10)));
    }

    #[test]
    fn length_comparisons() {
        assert!(length_le(Length::Rational(q(5, 1)), Length::Sqrt(q(25, 1))));
        assert!(!length_le(Length::Sqrt(q(26, 1)), Length::Rational(q(5, 1))));
        assert!(Length::Rational(q(5, 1)).value_eq(&Length::Sqrt(q(25, 1))));
    }

    proptest! {
        #[test]
        fn two_radicals_match_float(a in 0i64..10_000, b in 0i64..10_000, r in 0i64..400) {
            let exact = sum_le(&[Length::Sqrt(q(a, 1)), Length::Sqrt(q(b, 1))], q(r, 1));
            let approx = (a as f64).sqrt() + (b as f64).sqrt();
            if (approx - r as f64).abs() > 1e-9 {
                prop_assert_eq!(exact, approx <= r as f64);
            }
        }
    }

    #[test]
    fn three_radicals() {
        let s = |n: i64, d: i64| Length::Sqrt(q(n, d));
        // √2 + √3 + √5 = 5.382332...
        assert!(sum_le_exact(&[s(2, 1), s(3, 1), s(5, 1)], q(539, 100)));
        assert!(!sum_le_exact(&[s(2, 1), s(3, 1), s(5, 1)], q(538, 100)));
        assert!(sum_le_exact(&[s(1, 1), s(4, 1), s(9, 1)], q(6, 1)));
        assert!(!sum_le_exact(&[s(1, 1), s(4, 1), s(9, 1)], q(599, 100)));
        // √2 + √8 + √(1/2) = 3.5√2 = 4.949747...
        let t = [s(2, 1), s(8, 1), s(1, 2)];
        assert!(sum_le_exact(&t, q(49498, 10000)));
        assert!(!sum_le_exact(&t, q(49497, 10000)));
        let with_rational = [s(2, 1), Length::Rational(q(1, 3)), s(3, 1), s(12, 1)];
        // √2 + 1/3 + 3√3 = 6.943699...
        assert!(sum_le_exact(&with_rational, q(69437, 10000)));
        assert!(!sum_le_exact(&with_rational, q(69436, 10000)));
    }

    proptest::proptest! {
        #[test]
        fn filter_agrees_with_exact(
            a in 0i64..2000, b in 0i64..2000, c in 1i64..200, d in 1i64..50, n in 0i64..60, m in 1i64..7,
        ) {
            let terms = [Length::Sqrt(q(a, d)), Length::Sqrt(q(b, 1)), Length::Rational(q(n, m))];
            let bound = q(c, 1);
            proptest::prop_assert_eq!(sum_le(&terms, bound), sum_le_exact(&terms, bound));
        }

        #[test]
        fn many_radicals_agree_with_floats_off_ties(
            a in 1i64..500, b in 1i64..500, c in 1i64..500, d in 1i64..9, bound in 1i64..80,
        ) {
            let terms = [Length::Sqrt(q(a, d)), Length::Sqrt(q(b, 1)), Length::Sqrt(q(c, 1))];
            let lhs: f64 = terms.iter().map(Length::to_f64).sum();
            let exact = sum_le_exact(&terms, q(bound, 1));
            if (lhs - bound as f64).abs() > 1e-9 {
                proptest::prop_assert_eq!(exact, lhs <= bound as f64);
            }
        }

        #[test]
        fn many_radicals_decide_exact_ties(x in 0i64..40, y in 0i64..40, z in 0i64..40, w in 1i64..30) {
            // √(x²w) + √(y²w) + √(z²w) = (x+y+z)√w, rational exactly when w is a square
            let terms = [Length::Sqrt(q(x * x * w, 1)), Length::Sqrt(q(y * y * w, 1)), Length::Sqrt(q(z * z * w, 1))];
            let r = (w as f64).sqrt();
            let s = (x + y + z) as f64 * r;
            let bound = s.round() as i64;
            let square = r.fract() == 0.0;
            let want = if square || x + y + z == 0 { s <= bound as f64 } else { s < bound as f64 };
            proptest::prop_assert_eq!(sum_le_exact(&terms, q(bound, 1)), want);
        }
    }
}
