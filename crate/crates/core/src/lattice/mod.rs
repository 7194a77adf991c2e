//! Lattice point configurations, their face lattices, and lattice polytopes.

mod faces;
pub mod hull;
mod point;
mod polytope;

pub(crate) use faces::is_subset;
pub use faces::{Budget, Configuration, Face};
pub use point::{normalize_configuration, AffineLatticeMap, LatticePoint, PointConfiguration};
pub use polytope::{inequality_lattice_points, normalized_mixed_volume, LatticePolytope};
