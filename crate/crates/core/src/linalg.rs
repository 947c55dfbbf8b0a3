//! Exact Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use crate::scalar::Rational;

/// Reduced row echelon form of an augmented system.
#[derive(Clone, Debug)]
pub struct Reduced {
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
    cols: usize,
    consistent: bool,
}

impl Reduced {
    /// Reduces `a x = b`, with `a` given row by row.
    pub fn new(a: &[Vec<Rational>], b: &[Rational], cols: usize) -> Self {
        let mut rows: Vec<Vec<Rational>> = a
            .iter()
            .zip(b)
            .map(|(row, rhs)| {
                let mut r = row.clone();
                r.push(rhs.clone());
                r
            })
            .collect();
        let mut pivots = Vec::new();
        let mut top = 0;
        for col in 0..cols {
            let Some(p) = (top..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(top, p);
            let inv = Rational::one() / &rows[top][col];
            for v in rows[top].iter_mut() {
                *v = &*v * &inv;
            }
            let pivot_row = rows[top].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == top || row[col].is_zero() {
                    continue;
                }
                let f = row[col].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v = &*v - &(&f * pv);
                }
            }
            pivots.push(col);
            top += 1;
        }
        let consistent = rows[top..].iter().all(|r| r[cols].is_zero());
        Self {
            rows,
            pivots,
            cols,
            consistent,
        }
    }

    pub fn is_consistent(&self) -> bool {
        self.consistent
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// The solution with every free variable set to zero.
    pub fn particular(&self) -> Option<Vec<Rational>> {
        if !self.consistent {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (r, &c) in self.pivots.iter().enumerate() {
            x[c] = self.rows[r][self.cols].clone();
        }
        Some(x)
    }

    /// One kernel vector per free column, in column order.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let free: Vec<usize> = (0..self.cols).filter(|c| !self.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (r, &c) in self.pivots.iter().enumerate() {
                    v[c] = -self.rows[r][f].clone();
                }
                v
            })
            .collect()
    }
}

/// Rank of a list of vectors.
pub fn rank(vectors: &[Vec<Rational>]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let cols = first.len();
    let zeros = vec![Rational::zero(); vectors.len()];
    Reduced::new(vectors, &zeros, cols).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn solves_small_system() {
        // x + y = 3, x - y = 1
        let a = vec![vec![rat(1, 1), rat(1, 1)], vec![rat(1, 1), rat(-1, 1)]];
        let red = Reduced::new(&a, &[rat(3, 1), rat(1, 1)], 2);
        assert_eq!(red.particular().unwrap(), vec![rat(2, 1), rat(1, 1)]);
        assert!(red.kernel().is_empty());
    }

    #[test]
    fn detects_inconsistency() {
        let a = vec![vec![rat(1, 1)], vec![rat(2, 1)]];
        let red = Reduced::new(&a, &[rat(1, 1), rat(1, 1)], 1);
        assert!(!red.is_consistent());
        assert!(red.particular().is_none());
    }

    #[test]
    fn kernel_vectors_are_solutions() {
        let a = vec![vec![rat(1, 1), rat(2, 1), rat(3, 1)]];
        let red = Reduced::new(&a, &[rat(0, 1)], 3);
        let ker = red.kernel();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            let dot: Rational = a[0].iter().zip(v).map(|(x, y)| x * y).sum();
            assert!(dot.is_zero());
        }
        assert_eq!(rank(&ker), 2);
    }
}
