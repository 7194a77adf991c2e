//! Intersection theory on the Grassmann bundles `Gr(k+1, E)` over `Z_pi`, and
//! plane counts by torus localization.

mod bundle;
mod cayley_sum;
mod count;
mod intersection;
mod localization;
mod schubert;

pub use bundle::{universal_bundle, universal_bundle_for_face, SplitBundle};
pub use cayley_sum::{cayley_sum_configuration, CayleySumConfiguration};
pub use count::{full_count, ComponentReport, FullCountReport};
pub use intersection::{nef_divisor_of_polytope, toric_intersection_number};
pub use localization::{
    count_k_planes, count_k_planes_with, fixed_points, FixedPoint, LocalizationOptions,
    LocalizationResult,
};
pub use schubert::schubert_oracle;
