//! Law of `ψ/φ` under normalized Thurston measure on `{φ ≤ 1}`.
//!
//! `ψ/φ` depends only on the direction `θ ∈ [0, π)` of a chart point and the
//! measure of `{φ ≤ 1}` in an angular cell is known in closed form, so the
//! law is computed by deterministic angular quadrature. Cells are cut at
//! every kink and at every peak of a linear piece, which makes `ψ/φ`
//! monotone on each cell; the mass of a cell is spread uniformly over the
//! ratio range it covers.

use serde::Serialize;

use super::chart::{sectors, LocalForm};
use crate::torus::LengthFunctional;

const ATOM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioDistribution {
    /// `(value, mass)` for each sector on which `ψ/φ` is constant
    atoms: Vec<(f64, f64)>,
    knots: Vec<f64>,
    /// CDF just below each knot
    left: Vec<f64>,
    /// CDF at each knot
    right: Vec<f64>,
    resolution: usize,
}

impl RatioDistribution {
    pub fn support(&self) -> (f64, f64) {
        (self.knots[0], *self.knots.last().expect("nonempty"))
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn cdf(&self, t: f64) -> f64 {
        self.eval(t, false)
    }

    /// `P(ratio < t)`
    pub fn cdf_left(&self, t: f64) -> f64 {
        self.eval(t, true)
    }

    fn eval(&self, t: f64, strict: bool) -> f64 {
        let i = self.knots.partition_point(|&x| x < t);
        if i == self.knots.len() {
            return 1.0;
        }
        if self.knots[i] == t {
            return if strict { self.left[i] } else { self.right[i] };
        }
        if i == 0 {
            return 0.0;
        }
        let (x0, x1) = (self.knots[i - 1], self.knots[i]);
        let (f0, f1) = (self.right[i - 1], self.left[i]);
        f0 + (f1 - f0) * (t - x0) / (x1 - x0)
    }

    /// `n + 1` evenly spaced `(t, F(t))` over the support.
    pub fn table(&self, n: usize) -> Vec<(f64, f64)> {
        let (a, b) = self.support();
        if n == 0 || a == b {
            return vec![(b, 1.0)];
        }
        (0..=n)
            .map(|i| {
                let t = if i == n { b } else { a + (b - a) * i as f64 / n as f64 };
                (t, self.cdf(t))
            })
            .collect()
    }
}

/// `𝔯_{ψ/φ}` with about `resolution` angular cells over `[0, π)`.
pub fn ratio_distribution(psi: &LengthFunctional, phi: &LengthFunctional, resolution: usize) -> RatioDistribution {
    let resolution = resolution.max(1);
    let mut atoms: Vec<(f64, f64)> = Vec::new();
    // (lo, hi, mass); lo == hi is a point mass
    let mut cells: Vec<(f64, f64, f64)> = Vec::new();

    for (a, b) in sectors(&[psi, phi]) {
        let mid = 0.5 * (a + b);
        let fpsi = LocalForm::at(psi, mid);
        let fphi = LocalForm::at(phi, mid);
        if let Some(r) = constant_ratio(&fpsi, &fphi) {
            atoms.push((r, fphi.sector_area(a, b)));
            continue;
        }
        let mut cuts = vec![a, b];
        for f in [&fpsi, &fphi] {
            if let Some(p) = f.peak_angle() {
                if p > a && p < b {
                    cuts.push(p);
                }
            }
        }
        cuts.sort_by(f64::total_cmp);
        for w in cuts.windows(2) {
            let (c, d) = (w[0], w[1]);
            let n = ((resolution as f64 * (d - c) / std::f64::consts::PI).ceil() as usize).max(1);
            let theta = |i: usize| if i == n { d } else { c + (d - c) * i as f64 / n as f64 };
            let ratio = |t: f64| fpsi.value(t) / fphi.value(t);
            let mut r0 = ratio(theta(0));
            for i in 0..n {
                let r1 = ratio(theta(i + 1));
                cells.push((r0.min(r1), r0.max(r1), fphi.sector_area(theta(i), theta(i + 1))));
                r0 = r1;
            }
        }
    }

    atoms.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut merged: Vec<(f64, f64)> = Vec::new();
    for (r, m) in atoms {
        match merged.last_mut() {
            Some(last) if (r - last.0).abs() <= ATOM_TOL * r.abs().max(1.0) => last.1 += m,
            _ => merged.push((r, m)),
        }
    }
    let total: f64 = merged.iter().map(|a| a.1).sum::<f64>() + cells.iter().map(|c| c.2).sum::<f64>();
    for a in &mut merged {
        a.1 /= total;
    }
    for c in &mut cells {
        c.2 /= total;
    }

    let (knots, left, right) = build_cdf(&merged, &cells);
    RatioDistribution { atoms: merged, knots, left, right, resolution }
}

fn constant_ratio(fpsi: &LocalForm, fphi: &LocalForm) -> Option<f64> {
    match (*fpsi, *fphi) {
        (LocalForm::Round(s), LocalForm::Round(t)) => Some(s / t),
        (LocalForm::Linear(ax, ay), LocalForm::Linear(bx, by)) => {
            let cross = ax * by - ay * bx;
            let scale = ax.hypot(ay) * bx.hypot(by);
            (cross.abs() <= ATOM_TOL * scale).then(|| (ax * bx + ay * by) / (bx * bx + by * by))
        }
        _ => None,
    }
}

/// Piecewise-linear CDF with jumps, evaluated at every breakpoint.
fn build_cdf(atoms: &[(f64, f64)], cells: &[(f64, f64, f64)]) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let mut knots: Vec<f64> = atoms.iter().map(|a| a.0).collect();
    for &(lo, hi, _) in cells {
        knots.push(lo);
        knots.push(hi);
    }
    knots.sort_by(f64::total_cmp);
    knots.dedup();
    let at = |x: f64| knots.binary_search_by(|k| k.total_cmp(&x)).expect("knot present");

    let n = knots.len();
    let mut jump = vec![0.0; n];
    let mut slope_delta = vec![0.0; n];
    for &(r, m) in atoms {
        jump[at(r)] += m;
    }
    for &(lo, hi, m) in cells {
        if hi > lo {
            let s = m / (hi - lo);
            slope_delta[at(lo)] += s;
            slope_delta[at(hi)] -= s;
        } else {
            jump[at(lo)] += m;
        }
    }

    let (mut left, mut right) = (vec![0.0; n], vec![0.0; n]);
    let (mut f, mut slope) = (0.0, 0.0);
    for i in 0..n {
        if i > 0 {
            f += slope * (knots[i] - knots[i - 1]);
        }
        left[i] = f;
        f += jump[i];
        right[i] = f;
        slope += slope_delta[i];
    }
    let end = f;
    for v in left.iter_mut().chain(right.iter_mut()) {
        *v = (*v / end).clamp(0.0, 1.0);
    }
    right[n - 1] = 1.0;
    (knots, left, right)
}
