use thiserror::Error;

use crate::bd::Violation;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid triple: {}", format_violations(.0))]
    InvalidTriple(Vec<Violation>),

    #[error("dimension {n} exceeds the configured bound {bound}")]
    ResourceLimit { n: usize, bound: usize },

    #[error("enumeration produced more than {bound} chains")]
    ChainLimit { bound: usize },

    #[error("gcd({n}, {m}) != 1")]
    NotCoprime { n: usize, m: usize },

    #[error("dimension mismatch: expected n={expected}, got n={found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("leg mismatch: {0}")]
    LegMismatch(String),

    #[error("s does not solve the constraint system for this triple")]
    SNotSolution,

    #[error("T^{k} is undefined on e_{i} - e_{j}")]
    UndefinedPower { i: usize, j: usize, k: usize },

    #[error("pair is not generated by this triple: {0}")]
    ForeignPair(String),

    #[error("outside the domain of {map}: {detail}")]
    Domain { map: &'static str, detail: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable tag for the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidTriple(_) => "invalid-triple",
            Error::ResourceLimit { .. } | Error::ChainLimit { .. } => "resource-limit",
            Error::NotCoprime { .. } => "not-coprime",
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::LegMismatch(_) => "leg-mismatch",
            Error::SNotSolution => "s-not-solution",
            Error::UndefinedPower { .. } => "undefined-power",
            Error::ForeignPair(_) => "foreign-pair",
            Error::Domain { .. } => "domain",
            Error::Parse(_) => "parse",
            Error::Internal(_) => "internal",
        }
    }

    /// Violations carried by an invalid-triple error.
    pub fn violations(&self) -> &[Violation] {
        match self {
            Error::InvalidTriple(v) => v,
            _ => &[],
        }
    }
}

fn format_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
