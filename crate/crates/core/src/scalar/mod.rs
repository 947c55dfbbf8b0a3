//! Exact scalars: rationals, Laurent polynomials in `q` with rational
//! exponents, and truncated power series in `hbar` (with `q = e^hbar`).

mod hseries;
mod laurent;
mod rational;

pub use hseries::HSeries;
pub use laurent::Laurent;
pub use rational::{as_string, parse_rational, rat, rat_int, rational_to_string, Rational};
