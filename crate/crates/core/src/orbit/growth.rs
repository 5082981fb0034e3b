use serde::Serialize;

use super::{enumerate, OrbitQuery};
use crate::exact::rational_to_f64;
use crate::{Error, Rational, Result};

/// One row `(L, |M(L)|, |M(L)| / L^d)` of a growth table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthRow {
    #[serde(serialize_with = "crate::experiment::ser_rational")]
    pub cutoff: Rational,
    pub count: u64,
    pub normalized: f64,
}

/// Orbit counts over an ascending grid of cutoffs. On the once-holed torus
/// the normalizing exponent is `d = 2`.
pub fn count_growth(query: &OrbitQuery, grid: &[Rational], partitions: usize) -> Result<Vec<GrowthRow>> {
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Parse("cutoff grid must be strictly ascending".into()));
    }
    grid.iter()
        .map(|&l| {
            let stream = enumerate(query.with_cutoff(l)?)?;
            let count = stream.count_partitioned(partitions);
            let lf = rational_to_f64(l);
            Ok(GrowthRow { cutoff: l, count, normalized: count as f64 / (lf * lf) })
        })
        .collect()
}
