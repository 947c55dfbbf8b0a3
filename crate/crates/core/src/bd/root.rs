use std::fmt;

use serde::{Deserialize, Serialize};

/// The positive root `e_i - e_j` with `1 <= i < j <= n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PositiveRoot {
    pub i: usize,
    pub j: usize,
}

impl PositiveRoot {
    pub fn new(i: usize, j: usize) -> Self {
        assert!(i < j, "positive root needs i < j, got ({i}, {j})");
        Self { i, j }
    }

    /// The simple root `alpha_a = e_a - e_{a+1}`.
    pub fn simple(a: usize) -> Self {
        Self { i: a, j: a + 1 }
    }

    pub fn size(&self) -> usize {
        self.j - self.i
    }

    /// Indices `a` of the simple roots `alpha_a` summing to this root.
    pub fn constituents(&self) -> std::ops::Range<usize> {
        self.i..self.j
    }

    /// Matrix unit `e_alpha = e_{ij}`.
    pub fn unit(&self) -> (usize, usize) {
        (self.i, self.j)
    }

    /// Matrix unit `e_{-alpha} = e_{ji}`.
    pub fn neg_unit(&self) -> (usize, usize) {
        (self.j, self.i)
    }

    /// All positive roots for dimension `n`, in lexicographic order.
    pub fn all(n: usize) -> Vec<PositiveRoot> {
        (1..=n)
            .flat_map(|i| ((i + 1)..=n).map(move |j| PositiveRoot { i, j }))
            .collect()
    }
}

impl fmt::Display for PositiveRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}-e{}", self.i, self.j)
    }
}
