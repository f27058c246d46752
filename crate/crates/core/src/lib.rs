//! Element-order statistics and subgroup lattices of small finite groups,
//! with decision procedures for the B_ψ and meo-group properties.

pub mod analysis;
pub mod error;
pub mod families;
pub mod gfmatrix;
pub mod groupcore;
pub mod orderstats;
pub mod properties;
pub mod subgroups;
pub mod util;

pub use error::{Error, Result};
