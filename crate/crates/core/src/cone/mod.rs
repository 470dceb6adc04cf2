//! Points, seminorms, cone representations, normlike-bases and polytopes.

pub mod base;
pub mod point;
pub mod polytope;
pub mod rep;
pub mod seminorm;

pub use base::{default_density, hull_base, normlike_base, sample_cone_point, BaseSet, Exactness};
pub use point::{Point, Tolerances};
pub use polytope::{
    hull_s0, meets_interior, polytope_contains, polytope_contains_zero, polytope_distance, polytopes_disjoint,
    separating_hyperplane, Disjointness, Polytope, Separator,
};
pub use rep::{ConeRep, Lineality, Membership};
pub use seminorm::SeminormSpec;
