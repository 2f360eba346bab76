//! Exact arithmetic: finite fields, truncated power-series rings, cyclotomic
//! numbers, and prime-field linear algebra.

pub mod cyclo;
pub mod field;
pub mod linalg;
pub mod modp;
pub mod poly;
pub mod ring;

pub use cyclo::{CyclotomicNumber, CyclotomicRecord};
pub use field::{Fe, FieldElem, GaloisField};
pub use ring::{TruncatedRing, TruncatedRingElem};
