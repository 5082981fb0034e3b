use super::ecdf::EmpiricalCDF;
use crate::measures::{RadialLaw, RatioDistribution};

/// A cumulative distribution function with left limits.
pub trait Cdf {
    fn cdf(&self, t: f64) -> f64;

    /// `lim_{s↑t} F(s)`; equal to `cdf` for continuous laws.
    fn cdf_left(&self, t: f64) -> f64 {
        self.cdf(t)
    }
}

impl<F: Fn(f64) -> f64> Cdf for F {
    fn cdf(&self, t: f64) -> f64 {
        self(t)
    }
}

impl Cdf for RatioDistribution {
    fn cdf(&self, t: f64) -> f64 {
        RatioDistribution::cdf(self, t)
    }

    fn cdf_left(&self, t: f64) -> f64 {
        RatioDistribution::cdf_left(self, t)
    }
}

impl Cdf for RadialLaw {
    fn cdf(&self, t: f64) -> f64 {
        RadialLaw::cdf(self, t)
    }
}

/// `sup_t |F̂(t) − F(t)|`, attained at a sample point from one side or the
/// other: `max_i max(F̂(x_i) − F(x_i), F(x_i⁻) − F̂(x_i⁻))`.
pub fn ks_statistic<C: Cdf + ?Sized>(emp: &EmpiricalCDF, model: &C) -> f64 {
    assert!(!emp.is_empty(), "empty sample");
    let n = emp.len() as f64;
    let mut prev = 0u64;
    let mut d = 0.0f64;
    for (x, c) in emp.steps() {
        let upper = c as f64 / n - model.cdf(x);
        let lower = model.cdf_left(x) - prev as f64 / n;
        d = d.max(upper).max(lower);
        prev = c;
    }
    d.clamp(0.0, 1.0)
}

/// `sup_t |F̂_a(t) − F̂_b(t)|`.
pub fn ks_two_sample(a: &EmpiricalCDF, b: &EmpiricalCDF) -> f64 {
    assert!(!a.is_empty() && !b.is_empty(), "empty sample");
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let sa: Vec<(f64, u64)> = a.steps().collect();
    let sb: Vec<(f64, u64)> = b.steps().collect();
    let (mut i, mut j) = (0, 0);
    let (mut ca, mut cb) = (0u64, 0u64);
    let mut d = 0.0f64;
    while i < sa.len() || j < sb.len() {
        let x = match (sa.get(i), sb.get(j)) {
            (Some(p), Some(q)) => p.0.min(q.0),
            (Some(p), None) => p.0,
            (None, Some(q)) => q.0,
            (None, None) => unreachable!(),
        };
        if i < sa.len() && sa[i].0 == x {
            ca = sa[i].1;
            i += 1;
        }
        if j < sb.len() && sb[j].0 == x {
            cb = sb[j].1;
            j += 1;
        }
        d = d.max((ca as f64 / na - cb as f64 / nb).abs());
    }
    d
}
