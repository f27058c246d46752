//! Finite fields `GF(p^a)`, special linear groups, and their permutation
//! action on projective points.

pub mod field;
pub mod matrix;

pub use field::{is_irreducible, make_field, Field, FieldDescriptor, Fq, MAX_FIELD_ORDER};
pub use matrix::{
    check_projective_bounds, gl_generators, normalize, pgl_order, projective_action, projective_degree,
    projective_points, psl_order, sl_generators, sl_order, SquareMatrix, MAX_PROJECTIVE_DEGREE, MAX_PROJECTIVE_ORDER,
};
