//! Mapping class group orbits of k-multicurves on the once-holed torus,
//! truncated at a length cutoff.
//!
//! [`enumerate`] streams `M(L) = {γ ∈ Map·γ° : Σ φ(γ_i) ≤ L}`. For a pair of
//! curves meeting once the orbit is the set of all ordered pairs with
//! intersection number one, which is enumerated directly; every other
//! basepoint goes through the breadth-first oracle [`orbit_bfs`].

mod bfs;
mod fast;
mod growth;

use rayon::prelude::*;
use serde::Serialize;

pub use bfs::{default_word_bound, orbit_bfs, orbit_bfs_with_bound, DEFAULT_GENERATORS};
pub use growth::{count_growth, GrowthRow};

use crate::torus::{KMulticurve, LengthFunctional};
use crate::{Error, Rational, Result};
use fast::{FastPartition, FastPath};

/// Largest orbit (in elements) [`OrbitStream::materialize`] will hold in memory.
pub const DEFAULT_MEMORY_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitQuery {
    pub basepoint: KMulticurve,
    pub functional: LengthFunctional,
    pub cutoff: Rational,
}

impl OrbitQuery {
    pub fn new(basepoint: KMulticurve, functional: LengthFunctional, cutoff: Rational) -> Result<Self> {
        if cutoff <= Rational::from_integer(0) {
            return Err(Error::NonPositiveCutoff);
        }
        Ok(OrbitQuery { basepoint, functional, cutoff })
    }

    /// Standard pair `(α, β)` with unit weights.
    pub fn standard(functional: LengthFunctional, cutoff: Rational) -> Result<Self> {
        Self::new(KMulticurve::standard_pair(), functional, cutoff)
    }

    pub fn with_cutoff(&self, cutoff: Rational) -> Result<Self> {
        Self::new(self.basepoint.clone(), self.functional.clone(), cutoff)
    }

    /// Whether the closed-form unimodular-pair enumeration applies.
    pub fn has_fast_path(&self) -> bool {
        self.basepoint.k() == 2 && self.basepoint.pairwise_intersections() == [1]
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct QuerySummary {
    pub basepoint: String,
    pub phi: String,
    pub cutoff: String,
}

impl From<&OrbitQuery> for QuerySummary {
    fn from(q: &OrbitQuery) -> Self {
        QuerySummary { basepoint: q.basepoint.to_string(), phi: q.functional.to_string(), cutoff: q.cutoff.to_string() }
    }
}

/// Deterministic, duplicate-free stream of the orbit elements below the cutoff.
///
/// The stream can be split into disjoint partitions whose concatenation, in
/// partition order, is exactly the unpartitioned sequence.
#[derive(Debug, Clone)]
pub struct OrbitStream {
    query: OrbitQuery,
    source: Source,
}

#[derive(Debug, Clone)]
enum Source {
    Fast(FastPath),
    Materialized(Vec<KMulticurve>),
}

/// Enumerate the orbit ball of `query`.
pub fn enumerate(query: OrbitQuery) -> Result<OrbitStream> {
    let source = if query.has_fast_path() {
        Source::Fast(FastPath::new(&query))
    } else {
        let ball = orbit_bfs(&query.basepoint, &query.functional, query.cutoff, &DEFAULT_GENERATORS);
        Source::Materialized(ball.into_iter().collect())
    };
    Ok(OrbitStream { query, source })
}

impl OrbitStream {
    pub fn query(&self) -> &OrbitQuery {
        &self.query
    }

    /// Split into `n` disjoint partitions (at least one).
    pub fn partitions(&self, n: usize) -> Vec<OrbitPartition<'_>> {
        let n = n.max(1);
        match &self.source {
            Source::Fast(f) => f.partitions(n).into_iter().map(OrbitPartition::Fast).collect(),
            Source::Materialized(v) => {
                let chunk = v.len().div_ceil(n).max(1);
                let mut out: Vec<_> = v.chunks(chunk).map(|c| OrbitPartition::Slice(c.iter())).collect();
                out.resize_with(n, || OrbitPartition::Slice([].iter()));
                out
            }
        }
    }

    pub fn iter(&self) -> OrbitPartition<'_> {
        self.partitions(1).pop().expect("one partition")
    }

    /// `|M(L)|` without materializing the elements.
    pub fn count(&self) -> u64 {
        self.count_partitioned(rayon::current_num_threads().max(1))
    }

    pub fn count_partitioned(&self, n: usize) -> u64 {
        match &self.source {
            Source::Fast(f) => f.partitions(n.max(1)).into_par_iter().map(|p| p.count_remaining()).sum(),
            Source::Materialized(v) => v.len() as u64,
        }
    }

    /// Collect every element, refusing when the orbit exceeds `budget`.
    pub fn materialize(&self, budget: u64) -> Result<Vec<KMulticurve>> {
        let projected = self.count();
        if projected > budget {
            return Err(Error::BudgetExceeded { projected, budget });
        }
        Ok(self.iter().collect())
    }

    /// Fold each of `n` partitions in parallel with a private accumulator.
    /// Accumulators are returned in partition order.
    pub fn fold_partitions<A, I, F>(&self, n: usize, init: I, fold: F) -> Vec<A>
    where
        A: Send,
        I: Fn() -> A + Sync,
        F: Fn(&mut A, KMulticurve) + Sync,
    {
        self.partitions(n)
            .into_par_iter()
            .map(|part| {
                let mut acc = init();
                for g in part {
                    fold(&mut acc, g);
                }
                acc
            })
            .collect()
    }

    /// Intersection numbers shared by every element of the orbit.
    pub fn invariant_intersections(&self) -> Vec<u64> {
        self.query.basepoint.pairwise_intersections()
    }
}

/// One partition of an [`OrbitStream`].
pub enum OrbitPartition<'a> {
    Fast(FastPartition<'a>),
    Slice(std::slice::Iter<'a, KMulticurve>),
}

impl Iterator for OrbitPartition<'_> {
    type Item = KMulticurve;

    fn next(&mut self) -> Option<KMulticurve> {
        match self {
            OrbitPartition::Fast(f) => f.next(),
            OrbitPartition::Slice(s) => s.next().cloned(),
        }
    }
}

/// Sum of the component lengths of `gamma` as an exact cutoff test.
pub fn within_cutoff(phi: &LengthFunctional, gamma: &KMulticurve, cutoff: Rational) -> bool {
    crate::exact::sum_le(&phi.component_lengths(gamma), cutoff)
}
