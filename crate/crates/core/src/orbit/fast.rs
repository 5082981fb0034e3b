//! Direct enumeration of `{(v, w) : det(v, w) = ±1, a φ(v) + b φ(w) ≤ L}`.
//!
//! For each primitive `v` the partners are `w = w₀ + t v`, `t ∈ ℤ`, with
//! `det(v, w₀) = 1`; different `t` give different curves, so no deduplication
//! is needed. `t ↦ φ(w₀ + t v)` is convex, hence the admissible `t` form an
//! integer interval, located with float searches and then settled exactly.

use num_integer::Integer;
use num_traits::ToPrimitive;

use super::OrbitQuery;
use crate::exact::{level_interval, rational_to_f64, sum_le};
use crate::torus::{CurveClass, KMulticurve, LengthFunctional};
use crate::{Length, Rational};

#[derive(Debug, Clone)]
pub(crate) struct FastPath {
    phi: LengthFunctional,
    weight_v: Rational,
    weight_w: Rational,
    cutoff: Rational,
    cutoff_f: f64,
    weight_v_f: f64,
    weight_w_f: f64,
    /// Every admissible `v` has `‖v‖₁ ≤ max_l1`.
    max_l1: i64,
    integer_test: Option<IntegerTest>,
}

/// `A·S(v) + B·S(w) ≤ C` where `S = denom · i(σ, ·)` is an integer.
#[derive(Debug, Clone)]
struct IntegerTest {
    a: i128,
    b: i128,
    c: i128,
}

impl FastPath {
    pub(crate) fn new(query: &OrbitQuery) -> Self {
        let comps = query.basepoint.components();
        let (v0, weight_v) = comps[0];
        let (w0, weight_w) = comps[1];
        debug_assert_eq!(crate::intersection(&v0, &w0), 1);
        let phi = query.functional.clone();
        let (lo, _) = phi.l1_ratio_bounds();
        let cutoff_f = rational_to_f64(query.cutoff);
        let max_l1 = (cutoff_f / (rational_to_f64(weight_v) * lo)).floor() as i64 + 1;

        let integer_test = match &phi {
            LengthFunctional::Intersection(sigma) => {
                // a·S_v/D + b·S_w/D ≤ L  ⇔  (a·m)·S_v + (b·m)·S_w ≤ (L·m)·D
                let m = weight_v.denom().lcm(weight_w.denom()).lcm(query.cutoff.denom());
                Some(IntegerTest {
                    a: (weight_v * m).to_integer() as i128,
                    b: (weight_w * m).to_integer() as i128,
                    c: (query.cutoff * m).to_integer() as i128 * sigma.denom() as i128,
                })
            }
            LengthFunctional::Flat { .. } => None,
        };

        FastPath {
            phi,
            weight_v,
            weight_w,
            cutoff: query.cutoff,
            cutoff_f,
            weight_v_f: rational_to_f64(weight_v),
            weight_w_f: rational_to_f64(weight_w),
            max_l1,
            integer_test,
        }
    }

    /// Split the `p`-coordinate range `[0, max_l1]` into `n` contiguous blocks
    /// of roughly equal work (the number of `q` values shrinks linearly in `p`).
    pub(crate) fn partitions(&self, n: usize) -> Vec<FastPartition<'_>> {
        let top = self.max_l1;
        let weight = |p: i64| (2 * (top - p) + 1).max(1) as f64;
        let total: f64 = (0..=top).map(weight).sum();
        let mut bounds = vec![0i64];
        let mut acc = 0.0;
        let mut next = 1;
        for p in 0..=top {
            acc += weight(p);
            while next < n && acc >= total * next as f64 / n as f64 {
                bounds.push(p + 1);
                next += 1;
            }
        }
        while bounds.len() < n {
            bounds.push(top + 1);
        }
        bounds.push(top + 1);
        (0..n).map(|i| FastPartition::new(self, bounds[i], bounds[i + 1])).collect()
    }

    #[inline]
    fn phi_f(&self, (p, q): (i64, i64)) -> f64 {
        self.phi.eval_f64(p as f64, q as f64)
    }

    #[inline]
    fn feasible(&self, v: (i64, i64), w: (i64, i64), v_len: &Length) -> bool {
        match (&self.integer_test, &self.phi) {
            (Some(t), LengthFunctional::Intersection(sigma)) => {
                let sv = sigma.pair_scaled(v.0, v.1) as i128;
                let sw = sigma.pair_scaled(w.0, w.1) as i128;
                t.a * sv + t.b * sw <= t.c
            }
            _ => {
                let w_len = self.phi.eval_vector(w).scale(self.weight_w);
                sum_le(&[*v_len, w_len], self.cutoff)
            }
        }
    }

    /// Admissible `t`-interval for the partner family of `v`, if any.
    fn partner_range(&self, v: (i64, i64)) -> Option<((i64, i64), i64, i64)> {
        let v_phi = self.phi_f(v);
        let budget = (self.cutoff_f - self.weight_v_f * v_phi) / self.weight_w_f;
        if budget <= 0.0 {
            return None;
        }
        // det(v, w) = p·w_q - q·w_p = 1
        let eg = v.0.extended_gcd(&v.1);
        debug_assert_eq!(eg.gcd, 1);
        let mut w0 = (-eg.y, eg.x);
        let vv = (v.0 * v.0 + v.1 * v.1) as f64;
        let shift = (-((w0.0 * v.0 + w0.1 * v.1) as f64) / vv).round() as i64;
        w0 = (w0.0 + shift * v.0, w0.1 + shift * v.1);

        let w_at = |t: i64| (w0.0 + t * v.0, w0.1 + t * v.1);
        let f = |t: i64| self.phi_f(w_at(t));
        let reach = ((budget + self.phi_f(w0)) / v_phi).ceil() as i64 + 1;

        let v_len = self.phi.eval_vector(v).scale(self.weight_v);
        let feasible = |t: i64| self.feasible(v, w_at(t), &v_len);
        let (left, right) = level_interval(-reach, reach, f, budget, feasible)?;
        Some((w0, left, right))
    }

    #[inline]
    fn make(&self, v: CurveClass, w: (i64, i64)) -> KMulticurve {
        KMulticurve::weighted_pair(v, self.weight_v, CurveClass::from_primitive(w.0, w.1), self.weight_w)
    }
}

/// Lazily enumerates the `v` with `p ∈ [p_start, p_end)`.
pub struct FastPartition<'a> {
    path: &'a FastPath,
    p: i64,
    p_end: i64,
    q: i64,
    q_end: i64,
    current: Option<(CurveClass, (i64, i64), i64, i64)>,
}

impl<'a> FastPartition<'a> {
    fn new(path: &'a FastPath, p_start: i64, p_end: i64) -> Self {
        let mut part = FastPartition { path, p: p_start, p_end, q: 0, q_end: -1, current: None };
        part.reset_row();
        part
    }

    fn reset_row(&mut self) {
        if self.p == 0 {
            // only (0, 1) is canonical on the q-axis
            self.q = 1;
            self.q_end = 1;
        } else {
            let r = self.path.max_l1 - self.p;
            self.q = -r;
            self.q_end = r;
        }
    }

    /// Next primitive `v` in this partition with a nonempty partner range.
    fn advance_v(&mut self) -> bool {
        let path = self.path;
        while self.p < self.p_end {
            while self.q <= self.q_end {
                let (p, q) = (self.p, self.q);
                self.q += 1;
                if path.weight_v_f * path.phi_f((p, q)) >= path.cutoff_f * (1.0 + 1e-12) {
                    continue;
                }
                if p.gcd(&q) != 1 {
                    continue;
                }
                if let Some((w0, lo, hi)) = path.partner_range((p, q)) {
                    if lo <= hi {
                        self.current = Some((CurveClass::from_primitive(p, q), w0, lo, hi));
                        return true;
                    }
                }
            }
            self.p += 1;
            if self.p < self.p_end {
                self.reset_row();
            }
        }
        false
    }

    /// Number of elements not yet yielded.
    pub fn count_remaining(mut self) -> u64 {
        let mut n = 0u64;
        if let Some((_, _, lo, hi)) = self.current.take() {
            n += (hi - lo + 1) as u64;
        }
        while self.advance_v() {
            let (_, _, lo, hi) = self.current.take().expect("advanced");
            n += (hi - lo + 1).to_u64().unwrap_or(0);
        }
        n
    }
}

impl Iterator for FastPartition<'_> {
    type Item = KMulticurve;

    fn next(&mut self) -> Option<KMulticurve> {
        loop {
            if let Some((v, w0, lo, hi)) = &mut self.current {
                if *lo <= *hi {
                    let t = *lo;
                    *lo += 1;
                    let w = (w0.0 + t * v.p(), w0.1 + t * v.q());
                    return Some(self.path.make(*v, w));
                }
                self.current = None;
            }
            if !self.advance_v() {
                return None;
            }
        }
    }
}
