//! Permutations, the group-spec language, and materialization of concrete
//! permutation groups by generator closure.

pub mod group;
pub mod perm;
pub mod schreier;
pub mod spec;

pub use group::{
    canonical_generators, enumerate_elements, materialize, predicted_order, PermGroup, DEFAULT_ELEMENT_CAP,
};
pub use perm::{compose, order_of, Permutation};
pub use spec::{parse_group_spec, GroupSpec, LinearParams, NAMED_GROUPS};
