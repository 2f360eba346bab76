//! Exact computations for groups `GL_n` and `SL_n` over truncated power
//! series rings `F_q[π]/π^r`: matrix groups and flags, Lie algebra orbits,
//! character tables, induced realizations and point counts.

pub mod arith;
pub mod chars;
pub mod dlreal;
pub mod embed;
pub mod error;
pub mod groups;
pub mod lefschetz;
pub mod liealg;

pub use error::{Error, Result};
