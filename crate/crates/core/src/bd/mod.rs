//! Belavin-Drinfeld triples of type `A_{n-1}`: roots, validation,
//! enumeration, the extension of `T` to positive roots, and T-pairs.

mod enumerate;
mod pairs;
mod root;
mod triple;

pub use enumerate::{enumerate_triples, enumerate_triples_with, DEFAULT_MAX_N};
pub use pairs::{Pass, Sign, TPair, TripleContext, UnitPair, Weights};
pub use root::PositiveRoot;
pub use triple::{validate_triple, BdTriple, Side, TripleSpec, Violation};
