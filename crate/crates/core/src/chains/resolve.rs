//! Selection of the chain-weight convention against the matrix product.

use serde::Serialize;

use super::chain::{expand_jrj, Convention};
use crate::bd::{enumerate_triples, TripleContext};
use crate::error::Result;
use crate::exec::{self, Execution};
use crate::tensor::{ess_bar, ProductOrder};

/// Default largest dimension the resolver sweeps.
pub const DEFAULT_RESOLVER_MAX_N: usize = 5;

#[derive(Clone, Debug, Serialize)]
pub struct ConventionTally {
    pub convention: Convention,
    /// Triples on which the chain expansion disagrees with `J^{-1} R_st J^{21}`.
    pub mismatches: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Resolution {
    pub max_n: usize,
    pub triples: usize,
    pub tallies: Vec<ConventionTally>,
    /// Records consistent with every triple in the sweep.
    pub consistent: Vec<Convention>,
    /// The consistent record, when it is unique.
    pub selected: Option<Convention>,
}

/// Compares the chain expansion under every convention with the tensor
/// product for all triples with `2 <= n <= max_n`.
pub fn resolve_conventions(max_n: usize, mode: Execution) -> Result<Resolution> {
    let mut triples = Vec::new();
    for n in 2..=max_n {
        triples.extend(enumerate_triples(n)?);
    }
    let per_triple = exec::map(mode, &triples, |t| -> Result<Vec<bool>> {
        let ctx = TripleContext::new(t);
        let oracle = ess_bar(&ctx, ProductOrder::default())?;
        Convention::all()
            .iter()
            .map(|c| Ok(expand_jrj(&ctx, *c)? == oracle))
            .collect()
    });
    let mut mismatches = [0usize; 4];
    for row in per_triple {
        for (k, ok) in row?.into_iter().enumerate() {
            if !ok {
                mismatches[k] += 1;
            }
        }
    }
    let tallies: Vec<ConventionTally> = Convention::all()
        .iter()
        .zip(mismatches)
        .map(|(c, m)| ConventionTally {
            convention: *c,
            mismatches: m,
        })
        .collect();
    let consistent: Vec<Convention> = tallies
        .iter()
        .filter(|t| t.mismatches == 0)
        .map(|t| t.convention)
        .collect();
    let selected = match consistent.as_slice() {
        [c] => Some(*c),
        _ => None,
    };
    Ok(Resolution {
        max_n,
        triples: triples.len(),
        tallies,
        consistent,
        selected,
    })
}
