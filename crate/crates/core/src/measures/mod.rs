//! Limit measures: simplex densities, the radial law, ratio laws, Thurston
//! volumes and polyhedral cone push-forwards.
//!
//! Thurston measure on the once-holed torus is normalized as the scaling
//! limit of integer points of the chart ℝ²/±, which makes it Lebesgue measure
//! on ℝ² modulo sign. Other common normalizations differ by factors of 2.

mod chart;
mod clip;
mod cone;
mod density;
mod pants;
mod radial;
mod ratio;
mod volume;

pub use cone::{eval_box, pushforward, torus_pair_cone_measure, BoxRegion, ConeMeasure, ConeTerm};
pub use density::{p_measure_torus_pair, DensityKind, DensityOnSimplex};
pub use pants::{dirichlet_norm, pants_constant, pants_density, pants_mass_mc, DirichletNorm};
pub use radial::{radial_law, RadialLaw};
pub use ratio::{ratio_distribution, RatioDistribution};
pub use volume::{lattice_count, thurston_volume, thurston_volume_lattice};
