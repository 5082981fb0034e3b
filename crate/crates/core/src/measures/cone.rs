//! Finite sums `Σ c_j (L_j)_* Leb|cone(R_j)` of push-forwards of Lebesgue
//! measure on simplicial cones.

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::Exp1;

use super::clip::{clipped_area, clipped_volume};
use crate::error::{Error, Result};
use crate::mc::{self, Estimate};
use crate::simplex::factorial;

const SINGULAR_TOL: f64 = 1e-12;

/// One summand: `coefficient · map_* Leb` on the cone spanned by the columns
/// of `rays`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConeTerm {
    pub coefficient: f64,
    /// `k × m`
    pub map: DMatrix<f64>,
    /// `m × m`, one generating ray per column
    pub rays: DMatrix<f64>,
}

impl ConeTerm {
    pub fn new(coefficient: f64, map: DMatrix<f64>, rays: DMatrix<f64>) -> Result<Self> {
        if !(coefficient > 0.0 && coefficient.is_finite()) {
            return Err(Error::InvalidConeMeasure(format!("coefficient {coefficient} is not positive")));
        }
        if !rays.is_square() || map.ncols() != rays.nrows() {
            return Err(Error::DimensionMismatch { expected: map.ncols(), got: rays.nrows() });
        }
        if rays.determinant().abs() < SINGULAR_TOL {
            return Err(Error::InvalidConeMeasure("cone rays are linearly dependent".into()));
        }
        let images = &map * &rays;
        let scale = images.amax().max(1.0);
        if images.iter().any(|&y| y < -1e-12 * scale) {
            return Err(Error::InvalidConeMeasure("map does not send the cone into the positive orthant".into()));
        }
        if images.column_iter().any(|c| c.sum() <= 0.0) {
            return Err(Error::InvalidConeMeasure("a cone ray is mapped to 0".into()));
        }
        Ok(ConeTerm { coefficient, map, rays })
    }

    pub fn source_dim(&self) -> usize {
        self.rays.nrows()
    }

    /// Images `L r_i` of the rays, as columns.
    pub fn image_rays(&self) -> DMatrix<f64> {
        &self.map * &self.rays
    }

    /// `‖L r_i‖₁` for each ray.
    fn ray_norms(&self) -> Vec<f64> {
        self.image_rays().column_iter().map(|c| c.sum()).collect()
    }

    /// Mass of `{y : ‖y‖₁ ≤ 1}`.
    pub fn unit_mass(&self) -> f64 {
        let m = self.source_dim();
        let prod: f64 = self.ray_norms().iter().product();
        self.coefficient * self.rays.determinant().abs() / (factorial(m) * prod)
    }

    /// `|det L|` when the map is square and invertible.
    fn invertible_det(&self) -> Result<f64> {
        let det = self.map.determinant().abs();
        let scale = self.map.amax().max(f64::MIN_POSITIVE).powi(self.map.nrows() as i32);
        if det <= SINGULAR_TOL * scale {
            return Err(Error::SingularMap);
        }
        Ok(det)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConeMeasure {
    k: usize,
    terms: Vec<ConeTerm>,
}

impl ConeMeasure {
    pub fn new(k: usize, terms: Vec<ConeTerm>) -> Result<Self> {
        for t in &terms {
            if t.map.nrows() != k {
                return Err(Error::DimensionMismatch { expected: k, got: t.map.nrows() });
            }
        }
        Ok(ConeMeasure { k, terms })
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> &[ConeTerm] {
        &self.terms
    }

    /// Mass of `cone(Δ_k) = {y ≥ 0 : ‖y‖₁ ≤ 1}`.
    pub fn total_mass(&self) -> f64 {
        self.terms.iter().map(ConeTerm::unit_mass).sum()
    }

    /// True when every term has an invertible square map, so the measure has
    /// a density with respect to Lebesgue measure that is exactly computable.
    pub fn is_exact(&self) -> bool {
        self.terms.iter().all(|t| t.source_dim() == self.k && t.invertible_det().is_ok())
    }
}

/// Axis-aligned box `[lo, hi]`; empty when some `lo_i ≥ hi_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxRegion {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl BoxRegion {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch { expected: lo.len(), got: hi.len() });
        }
        Ok(BoxRegion { lo, hi })
    }

    pub fn unit(k: usize) -> Self {
        BoxRegion { lo: vec![0.0; k], hi: vec![1.0; k] }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lo.iter().zip(&self.hi).any(|(a, b)| a >= b)
    }

    pub fn contains(&self, y: &[f64]) -> bool {
        y.iter().zip(self.lo.iter().zip(&self.hi)).all(|(v, (a, b))| *a <= *v && *v <= *b)
    }
}

/// `A_* cm`: composes every term's map with `A` (`k' × k`).
pub fn pushforward(cm: &ConeMeasure, a: &DMatrix<f64>) -> Result<ConeMeasure> {
    if a.ncols() != cm.k {
        return Err(Error::DimensionMismatch { expected: cm.k, got: a.ncols() });
    }
    let terms = cm
        .terms
        .iter()
        .map(|t| ConeTerm::new(t.coefficient, a * &t.map, t.rays.clone()))
        .collect::<Result<Vec<_>>>()?;
    ConeMeasure::new(a.nrows(), terms)
}

/// Mass of `bx`.
///
/// Terms with an invertible map in dimension at most 3 are evaluated exactly
/// by clipping the box against the image cone; all others by Monte Carlo with
/// `samples` draws each. Rank-deficient square maps are rejected.
pub fn eval_box(cm: &ConeMeasure, bx: &BoxRegion, samples: u64, seed: u64) -> Result<Estimate> {
    if bx.dim() != cm.k {
        return Err(Error::DimensionMismatch { expected: cm.k, got: bx.dim() });
    }
    let mut total = Estimate::exact(0.0);
    for (j, term) in cm.terms.iter().enumerate() {
        let square = term.source_dim() == cm.k;
        let det = if square { Some(term.invertible_det()?) } else { None };
        if bx.is_empty() {
            continue;
        }
        let est = match det {
            Some(det) if cm.k <= 3 => Estimate::exact(term.coefficient / det * image_cone_volume(term, bx)),
            _ => {
                if samples == 0 {
                    return Err(Error::Unsupported("Monte Carlo term needs samples >= 1".into()));
                }
                term_mc(term, bx, samples, mc::derive_seed(seed, j as u64))
            }
        };
        total = total + est;
    }
    Ok(total)
}

/// Lebesgue volume of `bx ∩ cone(L r_1, …, L r_k)` for `k ≤ 3`.
fn image_cone_volume(term: &ConeTerm, bx: &BoxRegion) -> f64 {
    let k = bx.dim();
    // y = Σ s_i (L r_i) with s ≥ 0  ⇔  rows of (L R)⁻¹ pair nonnegatively with y
    let inv = term.image_rays().try_inverse().expect("invertible image rays");
    let lo: Vec<f64> = bx.lo.iter().map(|v| v.max(0.0)).collect();
    let hi = &bx.hi;
    if lo.iter().zip(hi).any(|(a, b)| a >= b) {
        return 0.0;
    }
    match k {
        1 => (hi[0] - lo[0]).max(0.0),
        2 => {
            let normals: Vec<[f64; 2]> = (0..2).map(|i| [inv[(i, 0)], inv[(i, 1)]]).collect();
            clipped_area([lo[0], lo[1]], [hi[0], hi[1]], &normals)
        }
        3 => {
            let normals: Vec<[f64; 3]> = (0..3).map(|i| [inv[(i, 0)], inv[(i, 1)], inv[(i, 2)]]).collect();
            clipped_volume([lo[0], lo[1], lo[2]], [hi[0], hi[1], hi[2]], &normals)
        }
        _ => unreachable!("exact path is limited to dimension 3"),
    }
}

/// Samples `s` uniformly from `{s ≥ 0 : Σ s_i β_i ≤ B}` where `β_i = ‖L r_i‖₁`
/// and `B` bounds `‖y‖₁` on the box; this region maps onto everything the
/// term can put in the box.
fn term_mc(term: &ConeTerm, bx: &BoxRegion, samples: u64, seed: u64) -> Estimate {
    let m = term.source_dim();
    let images = term.image_rays();
    let beta = term.ray_norms();
    let bound: f64 = bx.hi.iter().map(|v| v.max(0.0)).sum();
    if bound <= 0.0 {
        return Estimate::exact(0.0);
    }
    let prod: f64 = beta.iter().product();
    let region = term.rays.determinant().abs() * bound.powi(m as i32) / (factorial(m) * prod);
    let hit = mc::mean(seed, samples, |rng| {
        let e: Vec<f64> = (0..=m).map(|_| rng.sample::<f64, _>(Exp1)).collect();
        let total: f64 = e.iter().sum();
        let mut y = vec![0.0; images.nrows()];
        for i in 0..m {
            let s = bound * e[i] / (total * beta[i]);
            for (r, yr) in y.iter_mut().enumerate() {
                *yr += s * images[(r, i)];
            }
        }
        if bx.contains(&y) {
            1.0
        } else {
            0.0
        }
    });
    hit.scale(term.coefficient * region)
}

/// `I(·, (α, β))` on the lamination chart of the once-holed torus: Lebesgue
/// measure on ℝ²/± split into the quadrants `p, q ≥ 0` and `p ≥ 0 ≥ q`, each
/// mapped to `(|q|, |p|)`.
pub fn torus_pair_cone_measure() -> ConeMeasure {
    let upper = ConeTerm::new(
        1.0,
        DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]),
        DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 1.0]),
    );
    let lower = ConeTerm::new(
        1.0,
        DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]),
        DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]),
    );
    ConeMeasure::new(2, vec![upper.expect("valid term"), lower.expect("valid term")]).expect("valid measure")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(lo: &[f64], hi: &[f64]) -> BoxRegion {
        BoxRegion::new(lo.to_vec(), hi.to_vec()).unwrap()
    }

    #[test]
    fn torus_examples() {
        let cm = torus_pair_cone_measure();
        assert_eq!(eval_box(&cm, &BoxRegion::unit(2), 0, 1).unwrap(), Estimate::exact(2.0));
        assert_eq!(eval_box(&cm, &b(&[0.0, 0.0], &[1.0, 0.5]), 0, 1).unwrap(), Estimate::exact(1.0));
        assert_eq!(eval_box(&cm, &b(&[0.2, 0.3], &[0.2, 0.9]), 0, 1).unwrap().value, 0.0);
        assert!((cm.total_mass() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn identity_pushforward_is_equal() {
        let cm = torus_pair_cone_measure();
        assert_eq!(pushforward(&cm, &DMatrix::identity(2, 2)).unwrap(), cm);
    }

    #[test]
    fn scaling_pushforward() {
        let cm = torus_pair_cone_measure();
        let t = 3.0;
        let scaled = pushforward(&cm, &(DMatrix::identity(2, 2) * t)).unwrap();
        // (tI)_* μ (tB) = μ(B)
        let bx = b(&[0.1, 0.2], &[0.7, 0.4]);
        let big = b(&[0.3, 0.6], &[2.1, 1.2]);
        let a = eval_box(&cm, &bx, 0, 0).unwrap().value;
        let c = eval_box(&scaled, &big, 0, 0).unwrap().value;
        assert!((a - c).abs() < 1e-14);
        // a single term over a fixed box picks up t^{-k} from the Jacobian
        let one = ConeMeasure::new(2, vec![cm.terms()[0].clone()]).unwrap();
        let one_scaled = pushforward(&one, &(DMatrix::identity(2, 2) * t)).unwrap();
        let u = eval_box(&one, &BoxRegion::unit(2), 0, 0).unwrap().value;
        let v = eval_box(&one_scaled, &BoxRegion::unit(2), 0, 0).unwrap().value;
        assert!((u / v - t * t).abs() < 1e-12);
    }

    #[test]
    fn singular_square_map_rejected() {
        let term =
            ConeTerm::new(1.0, DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 1.0]), DMatrix::identity(2, 2)).unwrap();
        let cm = ConeMeasure::new(2, vec![term]).unwrap();
        assert_eq!(eval_box(&cm, &BoxRegion::unit(2), 100, 0), Err(Error::SingularMap));
    }

    #[test]
    fn invalid_terms_rejected() {
        let id = DMatrix::<f64>::identity(2, 2);
        assert!(ConeTerm::new(0.0, id.clone(), id.clone()).is_err());
        assert!(ConeTerm::new(1.0, -id.clone(), id.clone()).is_err());
        assert!(ConeTerm::new(1.0, id.clone(), DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 4.0])).is_err());
        assert!(ConeTerm::new(1.0, DMatrix::identity(3, 3), id).is_err());
    }

    /// Exact 3d path against Monte Carlo on a skewed cone.
    #[test]
    fn exact_3d_matches_mc() {
        let map = DMatrix::from_row_slice(3, 3, &[1.0, 0.5, 0.0, 0.0, 1.0, 0.3, 0.2, 0.0, 1.0]);
        let rays = DMatrix::from_row_slice(3, 3, &[1.0, 1.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 1.0]);
        let term = ConeTerm::new(1.5, map, rays).unwrap();
        let exact = ConeMeasure::new(3, vec![term.clone()]).unwrap();
        let bx = b(&[0.1, 0.0, 0.2], &[0.9, 0.7, 1.1]);
        let e = eval_box(&exact, &bx, 0, 0).unwrap();
        let est = term_mc(&term, &bx, 400_000, 11);
        assert!(est.within_sigmas(e.value, 4.0), "{est:?} vs {e:?}");
    }

    /// A 2 × 3 map (non-square, so always sampled) has finitely additive box masses.
    #[test]
    fn mc_additive_over_boxes() {
        let map = DMatrix::from_row_slice(2, 3, &[1.0, 0.0, 1.0, 0.0, 1.0, 1.0]);
        let term = ConeTerm::new(1.0, map, DMatrix::identity(3, 3)).unwrap();
        let cm = ConeMeasure::new(2, vec![term]).unwrap();
        let whole = eval_box(&cm, &b(&[0.0, 0.0], &[1.0, 1.0]), 200_000, 5).unwrap();
        let left = eval_box(&cm, &b(&[0.0, 0.0], &[0.4, 1.0]), 200_000, 6).unwrap();
        let right = eval_box(&cm, &b(&[0.4, 0.0], &[1.0, 1.0]), 200_000, 7).unwrap();
        let sum = left + right;
        let diff = Estimate { value: whole.value - sum.value, std_error: whole.std_error.hypot(sum.std_error) };
        assert!(diff.within_sigmas(0.0, 3.0), "{whole:?} vs {sum:?}");
        // total mass of the unit ℓ¹ ball from the closed form
        let ball = cm.total_mass();
        assert!((ball - 1.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn mc_matches_exact_in_2d() {
        let cm = torus_pair_cone_measure();
        let bx = b(&[0.1, 0.2], &[0.8, 0.6]);
        let exact = eval_box(&cm, &bx, 0, 0).unwrap().value;
        let mut total = Estimate::exact(0.0);
        for (j, t) in cm.terms().iter().enumerate() {
            total = total + term_mc(t, &bx, 200_000, j as u64);
        }
        assert!((exact - 2.0 * 0.7 * 0.4).abs() < 1e-14);
        assert!(total.within_sigmas(exact, 4.0), "{total:?}");
    }
}
