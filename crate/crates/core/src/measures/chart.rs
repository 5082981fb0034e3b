//! Angular decomposition of the chart ℝ²/± into sectors where every involved
//! functional is either linear or a multiple of the Euclidean norm.

use std::f64::consts::PI;

use crate::exact::rational_to_f64;
use crate::torus::LengthFunctional;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum LocalForm {
    /// `u ↦ g · u`
    Linear(f64, f64),
    /// `u ↦ s |u|`
    Round(f64),
}

impl LocalForm {
    pub(crate) fn at(phi: &LengthFunctional, theta: f64) -> Self {
        match phi {
            LengthFunctional::Flat { scale } => LocalForm::Round(rational_to_f64(*scale)),
            LengthFunctional::Intersection(sigma) => {
                let (ux, uy) = (theta.cos(), theta.sin());
                let (mut gx, mut gy) = (0.0, 0.0);
                for (c, w) in sigma.parts() {
                    let (p, q) = (c.p() as f64, c.q() as f64);
                    let s = (p * uy - q * ux).signum();
                    let w = rational_to_f64(*w);
                    gx -= w * s * q;
                    gy += w * s * p;
                }
                LocalForm::Linear(gx, gy)
            }
        }
    }

    pub(crate) fn value(&self, theta: f64) -> f64 {
        match *self {
            LocalForm::Linear(gx, gy) => gx * theta.cos() + gy * theta.sin(),
            LocalForm::Round(s) => s,
        }
    }

    /// `∫_a^b dθ / (2 φ(u_θ)²)`: the Lebesgue area of `{φ ≤ 1}` in the sector.
    pub(crate) fn sector_area(&self, a: f64, b: f64) -> f64 {
        match *self {
            LocalForm::Round(s) => (b - a) / (2.0 * s * s),
            LocalForm::Linear(gx, gy) => {
                let g2 = gx * gx + gy * gy;
                let tg = gy.atan2(gx);
                ((b - tg).tan() - (a - tg).tan()) / (2.0 * g2)
            }
        }
    }

    /// Angle in `[0, π)` of the direction where a linear form peaks.
    pub(crate) fn peak_angle(&self) -> Option<f64> {
        match *self {
            LocalForm::Linear(gx, gy) => Some(gy.atan2(gx).rem_euclid(PI)),
            LocalForm::Round(_) => None,
        }
    }
}

/// Sector boundaries in `[0, π]` for the given functionals.
pub(crate) fn sectors(functionals: &[&LengthFunctional]) -> Vec<(f64, f64)> {
    let mut cuts = vec![0.0, PI];
    for phi in functionals {
        cuts.extend(phi.kink_angles());
    }
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
    cuts.windows(2).map(|w| (w[0], w[1])).filter(|(a, b)| b - a > 1e-15).collect()
}
