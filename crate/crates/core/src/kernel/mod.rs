//! Exact arithmetic: the field `Q(a1, ..., ap)`, multi-indices, sparse
//! combinations and dense matrices.

pub mod combo;
pub mod matrix;
pub mod mindex;
pub mod parse;
pub mod poly;
pub mod scalar;

pub use combo::SparseCombo;
pub use matrix::Matrix;
pub use mindex::MIndex;
pub use poly::{Mono, Poly};
pub use scalar::Scalar;
