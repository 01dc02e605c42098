//! Exact polyhedral primitives: projection, facets, cone decompositions and
//! hulls.

pub mod cone;
pub mod facets;
pub mod hull;
pub mod projection;

pub use cone::{caratheodory_decompose, reduce_support, verify_separator, ConeDecomposition};
pub use facets::{interior_margin, irredundant_facets, irredundant_indices, redundancy_witness};
pub use hull::{
    convex_coefficients, hull_intersect_space, in_hull, planar_hull, planar_hull_forms, HullIndex, HullWitness,
};
pub use projection::{project_out_real, project_out_reals, Combination, ProjectedForm, Projection};
