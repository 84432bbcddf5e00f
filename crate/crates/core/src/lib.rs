//! Mean and Gauss curvature of non-degenerate surfaces in Minkowski 3-space,
//! and rotational linear Weingarten surfaces `aH + bK = c` about timelike,
//! spacelike, and lightlike axes.

// `!(x > 0.0)` is deliberate throughout: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod autodiff;
pub mod curvature;
pub mod error;
pub mod mesh;
pub mod minkowski;
pub mod rotational;
pub mod sign;
pub mod solver;
pub mod verify;

pub use error::{Error, Result};
pub use minkowski::{causal_character, lorentz_cross, lorentz_dot, CausalCharacter, MVec3};
pub use sign::Sign;
