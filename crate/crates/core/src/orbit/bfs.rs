//! Breadth-first orbit exploration, the reference oracle for [`super::enumerate`].
//!
//! Any element of the orbit ball can be reduced back to a basepoint-like
//! element by elementary row operations that never increase the weighted ℓ¹
//! total, and each row operation is a word of length at most three in the
//! twist and rotation. Hence exploring every element whose φ-total is at most
//! `max(L, φ(γ°)) · (max φ/ℓ¹) / (min φ/ℓ¹)` covers the ball.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_integer::Integer;

use super::within_cutoff;
use crate::exact::rational_to_f64;
use crate::torus::{KMulticurve, LengthFunctional, MCGElement};
use crate::Rational;

pub const DEFAULT_GENERATORS: [MCGElement; 2] = [MCGElement::TWIST, MCGElement::ROTATION];

fn expansion_bound(basepoint: &KMulticurve, phi: &LengthFunctional, cutoff: Rational) -> f64 {
    let (lo, hi) = phi.l1_ratio_bounds();
    let base: f64 = phi.component_lengths_f64(basepoint).iter().sum();
    rational_to_f64(cutoff).max(base) * (hi / lo) * (1.0 + 1e-9)
}

/// Word-length cap under which the ball is covered.
pub fn default_word_bound(basepoint: &KMulticurve, phi: &LengthFunctional, cutoff: Rational) -> usize {
    let (lo, _) = phi.l1_ratio_bounds();
    let denom = basepoint.components().iter().fold(1i64, |acc, (_, w)| acc.lcm(w.denom()));
    let min_weight = basepoint.components().iter().map(|(_, w)| rational_to_f64(*w)).fold(f64::INFINITY, f64::min);
    let l1_total = expansion_bound(basepoint, phi, cutoff) / lo;
    let steps = (l1_total * denom as f64 / min_weight.min(1.0)).ceil() as usize + 2;
    3 * steps + 4
}

/// Orbit ball by breadth-first search with the default word bound.
pub fn orbit_bfs(
    basepoint: &KMulticurve,
    phi: &LengthFunctional,
    cutoff: Rational,
    generators: &[MCGElement],
) -> BTreeSet<KMulticurve> {
    let bound = default_word_bound(basepoint, phi, cutoff);
    orbit_bfs_with_bound(basepoint, phi, cutoff, generators, bound)
}

pub fn orbit_bfs_with_bound(
    basepoint: &KMulticurve,
    phi: &LengthFunctional,
    cutoff: Rational,
    generators: &[MCGElement],
    max_word_length: usize,
) -> BTreeSet<KMulticurve> {
    let mut gens: Vec<MCGElement> = Vec::with_capacity(2 * generators.len());
    for g in generators {
        for h in [*g, g.inverse()] {
            if !gens.contains(&h) {
                gens.push(h);
            }
        }
    }
    let expand_below = expansion_bound(basepoint, phi, cutoff);

    let mut seen: HashSet<KMulticurve> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(basepoint.clone());
    queue.push_back((basepoint.clone(), 0usize));
    while let Some((node, depth)) = queue.pop_front() {
        if depth >= max_word_length {
            continue;
        }
        let total: f64 = phi.component_lengths_f64(&node).iter().sum();
        if total > expand_below {
            continue;
        }
        for g in &gens {
            let child = g.apply(&node);
            if seen.insert(child.clone()) {
                queue.push_back((child, depth + 1));
            }
        }
    }
    seen.into_iter().filter(|g| within_cutoff(phi, g, cutoff)).collect()
}
