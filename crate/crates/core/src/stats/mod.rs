//! Mergeable empirical distributions over orbit enumerations and their
//! distances to the limit laws.

mod ecdf;
mod histogram;
mod ks;
mod record;

pub use ecdf::{EmpiricalCDF, SKETCH_THRESHOLD};
pub use histogram::SimplexHistogram;
pub use ks::{ks_statistic, ks_two_sample, Cdf};
pub use record::{max_gap, ratio_vector, record_lengths, record_ratios, LengthRecord, RatioRecord};
