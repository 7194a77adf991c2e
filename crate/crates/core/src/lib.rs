//! Fano schemes of linear spaces on complete intersections in projective toric
//! varieties: Cayley structures, restriction degrees, hypothesis checks, and
//! exact plane counts by equivariant localization.

pub mod analysis;
pub mod cayley;
pub mod chow;
pub mod corpus;
pub mod divisors;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod par;

pub use cayley::{
    component_dimension, enumerate_cayley_structures, induced_projection, leq,
    maximal_cayley_structures, pi_faces, CayleyStructure, LatticeProjection,
};
pub use error::{Error, Result};
pub use lattice::{
    normalize_configuration, normalized_mixed_volume, AffineLatticeMap, Budget, Configuration,
    Face, LatticePoint, LatticePolytope, PointConfiguration,
};
