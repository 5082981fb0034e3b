//! Exact model of the once-holed torus.
//!
//! Essential simple closed curves are primitive vectors of ℤ² up to sign, the
//! geometric intersection number is `|det|`, and the mapping class group acts
//! through SL(2, ℤ). Measured laminations live in the chart ℝ² / ±.

mod curve;
mod functional;
mod mcg;
mod multicurve;

pub use curve::{intersection, CurveClass};
pub use functional::LengthFunctional;
pub use mcg::MCGElement;
pub use multicurve::{intersection_vector, FillingMulticurve, KMulticurve};
