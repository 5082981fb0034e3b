//! Limit laws on the simplex of length fractions, as densities with respect to
//! Lebesgue measure on `Δ_k`.

use super::cone::ConeMeasure;
use super::pants::pants_constant;
use crate::error::{Error, Result};
use crate::mc::{self, Estimate};
use crate::simplex::{sample_uniform, volume, SimplexPoint};
use crate::SurfaceType;

#[derive(Debug, Clone, PartialEq)]
pub enum DensityKind {
    /// `∏ x_i` for a pants decomposition of the surface
    Pants(SurfaceType),
    Uniform,
    /// Cone-wise constant density of a measure whose terms are all square
    /// and invertible
    ConeDerived(ConeMeasure),
}

/// `x ↦ normalization · raw(x)` where `raw` is the unnormalized evaluator of
/// `kind`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOnSimplex {
    k: usize,
    kind: DensityKind,
    normalization: f64,
}

impl DensityOnSimplex {
    pub fn pants(surface: SurfaceType) -> Result<Self> {
        let n = surface.pants_count();
        if n == 0 {
            return Err(Error::Unsupported("surface has no pants curves".into()));
        }
        Ok(DensityOnSimplex { k: n as usize, kind: DensityKind::Pants(surface), normalization: pants_constant(n) })
    }

    pub fn uniform(k: usize) -> Self {
        assert!(k >= 1);
        DensityOnSimplex { k, kind: DensityKind::Uniform, normalization: 1.0 / volume(k) }
    }

    /// Normalized direction law `U ↦ cm(cone U) / cm(cone Δ_k)`.
    ///
    /// Uses `Leb(cone U) = Leb_Δ(U) / (k √k)` for the cone of height 1 over
    /// `U ⊂ Δ_k`.
    pub fn from_cone(cm: ConeMeasure) -> Result<Self> {
        if !cm.is_exact() {
            return Err(Error::Unsupported("cone-derived densities need invertible square maps".into()));
        }
        let k = cm.dim();
        let total = cm.total_mass();
        let normalization = 1.0 / (k as f64 * (k as f64).sqrt() * total);
        Ok(DensityOnSimplex { k, kind: DensityKind::ConeDerived(cm), normalization })
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn kind(&self) -> &DensityKind {
        &self.kind
    }

    pub fn normalization(&self) -> f64 {
        self.normalization
    }

    pub fn density(&self, x: &SimplexPoint) -> Result<f64> {
        if x.dim() != self.k {
            return Err(Error::DimensionMismatch { expected: self.k, got: x.dim() });
        }
        let raw = match &self.kind {
            DensityKind::Pants(_) => x.coords().iter().product(),
            DensityKind::Uniform => 1.0,
            DensityKind::ConeDerived(cm) => cone_raw(cm, x.coords()),
        };
        Ok(self.normalization * raw)
    }

    /// `𝔭({a : a₁ ≤ t})` for `k = 2`.
    pub fn fraction_cdf(&self, t: f64) -> Result<f64> {
        if self.k != 2 {
            return Err(Error::DimensionMismatch { expected: 2, got: self.k });
        }
        let t = t.clamp(0.0, 1.0);
        Ok(match &self.kind {
            DensityKind::Uniform => t,
            // ∫₀ᵗ 6s(1-s) ds
            DensityKind::Pants(_) => t * t * (3.0 - 2.0 * t),
            DensityKind::ConeDerived(cm) => {
                // each term has constant density on the fractions swept by its image cone
                let (mut below, mut total) = (0.0, 0.0);
                for term in cm.terms() {
                    let img = term.image_rays();
                    let frac = |i: usize| img[(0, i)] / (img[(0, i)] + img[(1, i)]);
                    let (a, b) = (frac(0).min(frac(1)), frac(0).max(frac(1)));
                    let w = term.coefficient / term.map.determinant().abs();
                    below += w * (t.min(b) - a).max(0.0);
                    total += w * (b - a);
                }
                below / total
            }
        })
    }

    /// Monte Carlo estimate of `𝔭(U)` from uniform points of the simplex.
    pub fn mass_mc<U>(&self, u: U, samples: u64, seed: u64) -> Estimate
    where
        U: Fn(&SimplexPoint) -> bool + Sync,
    {
        let k = self.k;
        let vol = volume(k);
        mc::mean(seed, samples, |rng| {
            let x = SimplexPoint::from_normalized(sample_uniform(rng, k));
            if u(&x) {
                self.density(&x).expect("dimension checked")
            } else {
                0.0
            }
        })
        .scale(vol)
    }
}

/// `Σ c/|det L| · 1{x ∈ L(cone)}`, the Lebesgue density of `cm` at `x`.
fn cone_raw(cm: &ConeMeasure, x: &[f64]) -> f64 {
    let y = nalgebra::DVector::from_column_slice(x);
    cm.terms()
        .iter()
        .filter_map(|term| {
            let inv = term.image_rays().try_inverse()?;
            let s = inv * &y;
            let scale = s.amax().max(1.0);
            if s.iter().all(|&v| v >= -1e-12 * scale) {
                Some(term.coefficient / term.map.determinant().abs())
            } else {
                None
            }
        })
        .sum()
}

/// The limit law of length fractions of the pair `(α, β)` on the once-holed
/// torus: uniform on `Δ₂`, i.e. density `1/√2`.
pub fn p_measure_torus_pair() -> DensityOnSimplex {
    DensityOnSimplex::uniform(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::torus_pair_cone_measure;

    #[test]
    fn torus_pair_examples() {
        let p = p_measure_torus_pair();
        let mid = SimplexPoint::new(vec![0.5, 0.5]).unwrap();
        assert!((p.density(&mid).unwrap() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert_eq!(p.fraction_cdf(0.25).unwrap(), 0.25);
        let total = p.mass_mc(|_| true, 10_000, 1);
        assert!((total.value - 1.0).abs() < 1e-12);
        let quarter = p.mass_mc(|x| x.coords()[0] <= 0.25, 200_000, 2);
        assert!(quarter.within_sigmas(0.25, 4.0));
    }

    #[test]
    fn cone_derived_torus_pair_is_uniform() {
        let d = DensityOnSimplex::from_cone(torus_pair_cone_measure()).unwrap();
        let u = p_measure_torus_pair();
        for a in [0.0, 0.1, 0.5, 0.93, 1.0] {
            let x = SimplexPoint::new(vec![a, 1.0 - a]).unwrap();
            let got = d.density(&x).unwrap();
            // on the shared boundary ray both quadrant terms count
            if a > 0.0 && a < 1.0 {
                assert!((got - u.density(&x).unwrap()).abs() < 1e-14, "{a}: {got}");
            }
            assert!((d.fraction_cdf(a).unwrap() - a).abs() < 1e-15);
        }
    }

    #[test]
    fn pants_density_matches_pants_kind() {
        let s = SurfaceType::new(1, 2).unwrap();
        let d = DensityOnSimplex::pants(s).unwrap();
        let x = SimplexPoint::new(vec![0.5, 0.5]).unwrap();
        assert!((d.density(&x).unwrap() - 3.0 * 2f64.sqrt() / 4.0).abs() < 1e-14);
        assert!((d.fraction_cdf(0.5).unwrap() - 0.5).abs() < 1e-15);
        assert!((d.fraction_cdf(0.25).unwrap() - 0.15625).abs() < 1e-15);
        let mc = d.mass_mc(|x| x.coords()[0] <= 0.25, 200_000, 3);
        assert!(mc.within_sigmas(0.15625, 4.0), "{mc:?}");
    }

    #[test]
    fn pants_vanishes_on_boundary() {
        let d = DensityOnSimplex::pants(SurfaceType::new(2, 0).unwrap()).unwrap();
        let x = SimplexPoint::new(vec![0.0, 0.4, 0.6]).unwrap();
        assert_eq!(d.density(&x).unwrap(), 0.0);
    }

    #[test]
    fn densities_integrate_to_one() {
        let cases = [
            DensityOnSimplex::uniform(3),
            DensityOnSimplex::pants(SurfaceType::new(2, 0).unwrap()).unwrap(),
            DensityOnSimplex::pants(SurfaceType::new(1, 3).unwrap()).unwrap(),
        ];
        for d in cases {
            let est = d.mass_mc(|_| true, 400_000, 9);
            assert!((est.value - 1.0).abs() <= 4.0 * est.std_error + 1e-12, "{est:?}");
        }
    }

    #[test]
    fn skewed_cone_density_integrates_to_one() {
        use crate::measures::{ConeMeasure, ConeTerm};
        use nalgebra::DMatrix;
        let term =
            ConeTerm::new(2.0, DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 0.0, 1.0]), DMatrix::identity(2, 2)).unwrap();
        let d = DensityOnSimplex::from_cone(ConeMeasure::new(2, vec![term]).unwrap()).unwrap();
        let est = d.mass_mc(|_| true, 400_000, 4);
        assert!(est.within_sigmas(1.0, 4.0), "{est:?}");
        // image cone spans fractions a₁ ∈ [1/2, 1]
        assert_eq!(d.fraction_cdf(0.5).unwrap(), 0.0);
        assert!((d.fraction_cdf(0.75).unwrap() - 0.5).abs() < 1e-15);
    }
}
