//! Sparse exact tensors in `Mat_n (x) Mat_n` and `Mat_n^{(x)3}`, the
//! matrices built from a triple, and the identity checks on them.

mod build;
mod checks;
mod element;

pub use build::*;
pub use checks::*;
pub use element::{idx2, idx3, Index, Placement, Tensor};
