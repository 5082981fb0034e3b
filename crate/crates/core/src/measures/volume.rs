use super::chart::{sectors, LocalForm};
use crate::exact::{level_interval, sum_le};
use crate::torus::LengthFunctional;
use crate::Rational;

/// Number of nonzero integer points of ℝ²/± with `φ ≤ L`.
pub fn lattice_count(phi: &LengthFunctional, cutoff: u64) -> u64 {
    let (lo, _) = phi.l1_ratio_bounds();
    let bound = Rational::from_integer(cutoff as i64);
    let reach = (cutoff as f64 / lo).floor() as i64 + 1;
    let mut total = 0u64;
    for p in -reach..=reach {
        let f = |q: i64| phi.eval_f64(p as f64, q as f64);
        let feasible = |q: i64| sum_le(&[phi.eval_vector((p, q))], bound);
        if let Some((a, b)) = level_interval(-reach, reach, f, cutoff as f64, feasible) {
            total += (b - a + 1) as u64;
        }
    }
    // drop the origin, then identify ±x
    (total - 1) / 2
}

/// Scaling-limit estimate `#{x ∈ (ℤ² ∖ 0)/± : φ(x) ≤ L} / L²` of the Thurston
/// volume `B(φ)` of `{φ ≤ 1}`.
pub fn thurston_volume_lattice(phi: &LengthFunctional, cutoff: u64) -> f64 {
    assert!(cutoff >= 1, "cutoff must be at least 1");
    lattice_count(phi, cutoff) as f64 / (cutoff as f64 * cutoff as f64)
}

/// Closed form of `B(φ)`: the area of `{φ ≤ 1}` modulo sign.
pub fn thurston_volume(phi: &LengthFunctional) -> f64 {
    sectors(&[phi]).into_iter().map(|(a, b)| LocalForm::at(phi, 0.5 * (a + b)).sector_area(a, b)).sum()
}
