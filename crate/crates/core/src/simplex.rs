//! The standard simplex and ℓ¹ polar coordinates.

use rand::Rng;
use rand_distr::Exp1;

use crate::{Error, Result};

const SUM_TOLERANCE: f64 = 1e-12;

/// A point of the standard simplex `{x >= 0 : x_1 + ... + x_k = 1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexPoint {
    coords: Vec<f64>,
}

impl SimplexPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::DimensionMismatch { expected: 1, got: 0 });
        }
        if let Some(&bad) = coords.iter().find(|c| !c.is_finite() || **c < 0.0) {
            return Err(Error::NegativeCoordinate(bad));
        }
        let sum: f64 = coords.iter().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::NotOnSimplex(sum));
        }
        Ok(SimplexPoint { coords })
    }

    /// Wraps coordinates already known to lie on the simplex.
    pub(crate) fn from_normalized(coords: Vec<f64>) -> Self {
        SimplexPoint { coords }
    }

    /// Barycenter of the `k`-simplex.
    pub fn barycenter(k: usize) -> Self {
        SimplexPoint { coords: vec![1.0 / k as f64; k] }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn on_boundary(&self) -> bool {
        self.coords.contains(&0.0)
    }
}

/// Direction on the simplex together with the ℓ¹ radius.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarPoint {
    pub direction: SimplexPoint,
    pub radius: f64,
}

impl PolarPoint {
    pub fn recompose(&self) -> Vec<f64> {
        self.direction.coords.iter().map(|c| c * self.radius).collect()
    }
}

/// ℓ¹ polar decomposition `x ↦ (x / ‖x‖, ‖x‖)`.
pub fn polar(v: &[f64]) -> Result<PolarPoint> {
    if let Some(&bad) = v.iter().find(|c| !c.is_finite() || **c < 0.0) {
        return Err(Error::NegativeCoordinate(bad));
    }
    let radius: f64 = v.iter().sum();
    if radius == 0.0 {
        return Err(Error::ZeroVector);
    }
    let coords = v.iter().map(|c| c / radius).collect();
    Ok(PolarPoint { direction: SimplexPoint { coords }, radius })
}

/// Membership in `cone(U) = {t u : t ∈ [0, 1], u ∈ U}`. The origin belongs to
/// every cone.
pub fn in_cone<U>(u: U, x: &[f64]) -> bool
where
    U: Fn(&SimplexPoint) -> bool,
{
    if x.iter().any(|c| *c < 0.0) {
        return false;
    }
    match polar(x) {
        Err(_) => true,
        Ok(p) => p.radius <= 1.0 && u(&p.direction),
    }
}

/// Riemannian volume of the standard `k`-simplex, `√k / (k-1)!`.
pub fn volume(k: usize) -> f64 {
    assert!(k >= 1);
    (k as f64).sqrt() / factorial(k - 1)
}

pub(crate) fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// Draw a point uniformly (w.r.t. Lebesgue measure) from the `k`-simplex.
pub fn sample_uniform<R: Rng + ?Sized>(rng: &mut R, k: usize) -> Vec<f64> {
    let mut e: Vec<f64> = (0..k).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let s: f64 = e.iter().sum();
    for x in &mut e {
        *x /= s;
    }
    e
}
