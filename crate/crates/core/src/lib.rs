//! Exact construction and verification of the quantized r-matrices
//! attached to Belavin-Drinfeld triples for `gl(n)`.
//!
//! Everything is computed over Laurent polynomials in `q` with rational
//! exponents and rational coefficients, so every identity check is an
//! exact zero test.

pub mod bd;
pub mod cg;
pub mod chains;
pub mod error;
pub mod exec;
pub mod linalg;
pub mod report;
pub mod s_solver;
pub mod scalar;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};
