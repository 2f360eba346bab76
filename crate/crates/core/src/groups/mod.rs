//! Matrix groups `GL_n` and `SL_n` over `W = F_{q^a}[π]/π^r`.

pub mod algo;
pub mod enumerate;
pub mod group;
pub mod matrix;
pub mod named;
pub mod spec;

pub use enumerate::{congruence_kernel, enumerate, frobenius_fixed, reduce_group};
pub use group::{Classes, MatrixGroup};
pub use matrix::{Mat, MatSpace};
pub use spec::{Family, GroupSpec, DEFAULT_BUDGET};
