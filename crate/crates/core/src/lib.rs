//! Orbit counting and limit laws for multicurves on low-complexity surfaces.
//!
//! The crate enumerates mapping class group orbits of curve pairs on the
//! once-holed torus below a length cutoff, evaluates the closed-form limit
//! measures those orbits equidistribute towards (simplex laws, the radial
//! law, ratio laws, Thurston volumes) and compares the two with streaming
//! empirical statistics.
//!
//! Exact integer and rational arithmetic is used for everything that decides
//! orbit membership or cutoff inclusion; floating point only enters at the
//! density/statistics boundary.

pub mod cli;
pub mod error;
pub mod exact;
pub mod experiment;
pub mod mc;
pub mod measures;
pub mod orbit;
pub mod simplex;
pub mod stats;
pub mod surface;
pub mod torus;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{Length, Rational};
pub use simplex::{in_cone, polar, PolarPoint, SimplexPoint};
pub use surface::SurfaceType;
pub use torus::{
    intersection, intersection_vector, CurveClass, FillingMulticurve, KMulticurve, LengthFunctional, MCGElement,
};
