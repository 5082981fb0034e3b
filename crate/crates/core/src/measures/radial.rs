use crate::{Error, Result, SurfaceType};

/// Limit law `d t^{d-1} dt` on `[0, 1]` of the normalized total length, with
/// `d = 6g - 6 + 2r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialLaw {
    d: u32,
}

pub fn radial_law(surface: SurfaceType) -> Result<RadialLaw> {
    RadialLaw::new(surface.complexity())
}

impl RadialLaw {
    pub fn new(d: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::Unsupported("radial law needs 6g-6+2r >= 1".into()));
        }
        Ok(RadialLaw { d })
    }

    pub fn exponent(&self) -> u32 {
        self.d
    }

    pub fn density(&self, t: f64) -> f64 {
        if (0.0..=1.0).contains(&t) {
            self.d as f64 * t.powi(self.d as i32 - 1)
        } else {
            0.0
        }
    }

    pub fn cdf(&self, t: f64) -> f64 {
        t.clamp(0.0, 1.0).powi(self.d as i32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_and_genus_two() {
        let torus = radial_law(SurfaceType::ONCE_HOLED_TORUS).unwrap();
        assert_eq!(torus.density(0.5), 1.0);
        assert_eq!(torus.cdf(0.5), 0.25);
        assert_eq!(torus.cdf(1.0), 1.0);
        let g2 = radial_law(SurfaceType::new(2, 0).unwrap()).unwrap();
        assert_eq!(g2.cdf(0.5), 0.5f64.powi(6));
        assert!(radial_law(SurfaceType::new(0, 3).unwrap()).is_err());
    }

    #[test]
    fn integrates_to_one() {
        let law = RadialLaw::new(6).unwrap();
        let m = 10_000;
        let h = 1.0 / m as f64;
        let s: f64 = (0..m).map(|i| law.density((i as f64 + 0.5) * h) * h).sum();
        assert!((s - 1.0).abs() < 1e-6);
    }
}
