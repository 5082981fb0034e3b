use serde::Serialize;

use crate::mc::{self, Estimate};
use crate::simplex::{factorial, sample_uniform, volume, SimplexPoint};
use crate::{Error, Result, SurfaceType};

/// `(2n - 1)! / √n` with `n = 3g - 3 + r`.
pub fn pants_constant(n: u32) -> f64 {
    factorial(2 * n as usize - 1) / (n as f64).sqrt()
}

/// Density, with respect to Lebesgue measure on the simplex, of the limiting
/// length-fraction law of a pants decomposition:
/// `x ↦ (6g-7+2r)! / √(3g-3+r) · ∏ x_i`.
pub fn pants_density(surface: SurfaceType, x: &SimplexPoint) -> Result<f64> {
    let n = surface.pants_count();
    if n == 0 {
        return Err(Error::Unsupported(format!(
            "surface (g={}, r={}) has no pants curves",
            surface.genus(),
            surface.boundary_count()
        )));
    }
    if x.dim() != n as usize {
        return Err(Error::DimensionMismatch { expected: n as usize, got: x.dim() });
    }
    Ok(pants_constant(n) * x.coords().iter().product::<f64>())
}

/// `∫_{Δ_n} ∏ x_i dLeb = √n / (2n - 1)!`, kept symbolic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DirichletNorm {
    /// the value is `√sqrt_of / factorial_of!`
    pub sqrt_of: u32,
    pub factorial_of: u32,
}

impl DirichletNorm {
    pub fn value(&self) -> f64 {
        (self.sqrt_of as f64).sqrt() / factorial(self.factorial_of as usize)
    }
}

pub fn dirichlet_norm(n: u32) -> DirichletNorm {
    assert!(n >= 1, "dirichlet_norm needs n >= 1");
    DirichletNorm { sqrt_of: n, factorial_of: 2 * n - 1 }
}

/// Monte Carlo estimate of the total mass of [`pants_density`] over the simplex.
pub fn pants_mass_mc(surface: SurfaceType, samples: u64, seed: u64) -> Result<Estimate> {
    let n = surface.pants_count() as usize;
    if n == 0 {
        return Err(Error::Unsupported("surface has no pants curves".into()));
    }
    let c = pants_constant(n as u32);
    let vol = volume(n);
    Ok(mc::mean(seed, samples, |rng| {
        let x = sample_uniform(rng, n);
        c * x.iter().product::<f64>()
    })
    .scale(vol))
}
