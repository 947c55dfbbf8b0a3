use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::root::PositiveRoot;
use super::triple::{BdTriple, Side};
use crate::error::{Error, Result};
use crate::scalar::{rat, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

impl Sign {
    /// `S_x`: +1 or -1.
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
        })
    }
}

/// Passing status of a pair on one side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Pass {
    No,
    Half,
    Full,
}

impl Pass {
    pub fn weight(self) -> Rational {
        match self {
            Pass::No => rat(0, 1),
            Pass::Half => rat(1, 2),
            Pass::Full => rat(1, 1),
        }
    }

    /// Weight doubled, as an integer.
    pub fn twice(self) -> i64 {
        match self {
            Pass::No => 0,
            Pass::Half => 1,
            Pass::Full => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Weights {
    #[serde(with = "crate::scalar::as_string")]
    pub right: Rational,
    #[serde(with = "crate::scalar::as_string")]
    pub left: Rational,
    #[serde(with = "crate::scalar::as_string")]
    pub sym: Rational,
    #[serde(with = "crate::scalar::as_string")]
    pub anti: Rational,
}

/// The pair of matrix units `e_{ab} (x) e_{cd}`, stored 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct UnitPair {
    pub first: (usize, usize),
    pub second: (usize, usize),
}

impl UnitPair {
    pub fn new(first: (usize, usize), second: (usize, usize)) -> Self {
        Self { first, second }
    }

    /// Product in `Mat_n (x) Mat_n`, or `None` when it vanishes.
    pub fn mul(&self, other: &UnitPair) -> Option<UnitPair> {
        if self.first.1 == other.first.0 && self.second.1 == other.second.0 {
            Some(UnitPair {
                first: (self.first.0, other.first.1),
                second: (self.second.0, other.second.1),
            })
        } else {
            None
        }
    }

    pub fn is_diagonal(&self) -> bool {
        self.first.0 == self.first.1 || self.second.0 == self.second.1
    }

    pub fn index(&self) -> [usize; 4] {
        [self.first.0, self.first.1, self.second.0, self.second.1]
    }
}

impl fmt::Display for UnitPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "e{}{}(x)e{}{}",
            self.first.0, self.first.1, self.second.0, self.second.1
        )
    }
}

/// A T-pair. Positive pairs are `(T^k a, -a)` with `k >= 1`; negative
/// pairs are `(-a, T^k a)` with `k >= 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TPair {
    pub sign: Sign,
    pub lower: PositiveRoot,
    pub higher: PositiveRoot,
    pub order: usize,
    /// `C_{lower, higher}`; 0 for order-zero pairs.
    pub reversal: u8,
    pub right: Pass,
    pub left: Pass,
}

impl TPair {
    pub fn size(&self) -> usize {
        self.lower.size()
    }

    pub fn reverses(&self) -> bool {
        self.reversal == 1
    }

    /// `C_x` as literally defined, where order-zero negative pairs get 1.
    pub fn literal_c(&self) -> u8 {
        if self.order == 0 {
            1
        } else {
            self.reversal
        }
    }

    /// `C_x` with the order-zero value supplied by the caller.
    pub fn c_with(&self, order_zero: u8) -> u8 {
        if self.order == 0 {
            order_zero
        } else {
            self.reversal
        }
    }

    /// `C_x (|x| - 1)` using `reversal` for `C_x`.
    pub fn twist(&self) -> i64 {
        (self.reversal as i64) * (self.size() as i64 - 1)
    }

    pub fn units(&self) -> UnitPair {
        match self.sign {
            Sign::Positive => UnitPair::new(self.higher.unit(), self.lower.neg_unit()),
            Sign::Negative => UnitPair::new(self.lower.neg_unit(), self.higher.unit()),
        }
    }

    pub fn weights(&self) -> Weights {
        let right = self.right.weight();
        let left = self.left.weight();
        Weights {
            sym: &right + &left,
            anti: &right - &left,
            right,
            left,
        }
    }

    /// `P^s` doubled.
    pub fn sym_twice(&self) -> i64 {
        self.right.twice() + self.left.twice()
    }

    /// `P^a` doubled.
    pub fn anti_twice(&self) -> i64 {
        self.right.twice() - self.left.twice()
    }

    pub fn is_half(&self) -> bool {
        self.right == Pass::Half || self.left == Pass::Half
    }
}

impl fmt::Display for TPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Positive => write!(f, "({}, -({}))", self.higher, self.lower),
            Sign::Negative => write!(f, "(-({}), {})", self.lower, self.higher),
        }
    }
}

/// A triple with its T-pairs and passing data precomputed.
#[derive(Clone, Debug)]
pub struct TripleContext {
    triple: BdTriple,
    roots: Vec<PositiveRoot>,
    positive: Vec<TPair>,
    negative: Vec<TPair>,
    po_right: HashMap<PositiveRoot, usize>,
    po_left: HashMap<PositiveRoot, usize>,
    by_units: HashMap<UnitPair, TPair>,
    max_order: usize,
}

impl TripleContext {
    pub fn new(triple: &BdTriple) -> Self {
        let n = triple.n();
        let roots = PositiveRoot::all(n);
        let mut po_right = HashMap::new();
        let mut po_left = HashMap::new();
        for &r in &roots {
            if let Some(k) = triple.passing_order(r, Side::Right) {
                po_right.insert(r, k);
            }
            if let Some(k) = triple.passing_order(r, Side::Left) {
                po_left.insert(r, k);
            }
        }
        let mut positive = Vec::new();
        let mut negative = Vec::new();
        let mut max_order = 0;
        for &alpha in &roots {
            let zero = TPair {
                sign: Sign::Negative,
                lower: alpha,
                higher: alpha,
                order: 0,
                reversal: 0,
                right: Pass::No,
                left: Pass::No,
            };
            negative.push(zero);
            let mut k = 1;
            while let Some(beta) = triple.apply_t(alpha, k) {
                let reversal = triple.orientation(alpha, k).expect("defined power");
                let pass = |po: Option<&usize>| match po {
                    Some(&p) if k == p => Pass::Half,
                    Some(&p) if k > p && triple.orientation(alpha, p).ok() == Some(reversal) => Pass::Full,
                    _ => Pass::No,
                };
                let right = pass(po_right.get(&alpha));
                let left = pass(po_left.get(&alpha));
                let base = TPair {
                    sign: Sign::Positive,
                    lower: alpha,
                    higher: beta,
                    order: k,
                    reversal,
                    right,
                    left,
                };
                positive.push(base);
                negative.push(TPair {
                    sign: Sign::Negative,
                    ..base
                });
                max_order = max_order.max(k);
                k += 1;
            }
        }
        positive.sort();
        negative.sort();
        let by_units = positive
            .iter()
            .chain(negative.iter())
            .map(|p| (p.units(), *p))
            .collect();
        Self {
            triple: triple.clone(),
            roots,
            positive,
            negative,
            po_right,
            po_left,
            by_units,
            max_order,
        }
    }

    pub fn triple(&self) -> &BdTriple {
        &self.triple
    }

    pub fn n(&self) -> usize {
        self.triple.n()
    }

    pub fn roots(&self) -> &[PositiveRoot] {
        &self.roots
    }

    pub fn positive(&self) -> &[TPair] {
        &self.positive
    }

    pub fn negative(&self) -> &[TPair] {
        &self.negative
    }

    pub fn all_pairs(&self) -> impl Iterator<Item = &TPair> {
        self.positive.iter().chain(self.negative.iter())
    }

    /// Largest order of a positive pair (0 when there are none).
    pub fn max_order(&self) -> usize {
        self.max_order
    }

    pub fn passing_order(&self, alpha: PositiveRoot, side: Side) -> Option<usize> {
        match side {
            Side::Right => self.po_right.get(&alpha).copied(),
            Side::Left => self.po_left.get(&alpha).copied(),
        }
    }

    /// The pair whose `E_x` equals the given matrix units, if any.
    pub fn pair_from_units(&self, units: &UnitPair) -> Option<TPair> {
        self.by_units.get(units).copied()
    }

    pub fn lookup(&self, sign: Sign, lower: PositiveRoot, higher: PositiveRoot) -> Option<TPair> {
        let units = match sign {
            Sign::Positive => UnitPair::new(higher.unit(), lower.neg_unit()),
            Sign::Negative => UnitPair::new(lower.neg_unit(), higher.unit()),
        };
        self.pair_from_units(&units)
    }

    /// `k >= 1` with `T^k alpha = beta`.
    pub fn precedes(&self, alpha: PositiveRoot, beta: PositiveRoot) -> Option<usize> {
        self.lookup(Sign::Positive, alpha, beta).map(|p| p.order)
    }

    /// Passing weights of a pair, checked for membership in this triple.
    pub fn passing_weights(&self, pair: &TPair) -> Result<Weights> {
        match self.pair_from_units(&pair.units()) {
            Some(p) if p == *pair => Ok(p.weights()),
            _ => Err(Error::ForeignPair(pair.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cg31() -> TripleContext {
        TripleContext::new(&BdTriple::new(3, [(1, 2)]).unwrap())
    }

    #[test]
    fn empty_triple_pairs() {
        let ctx = TripleContext::new(&BdTriple::empty(4));
        assert!(ctx.positive().is_empty());
        assert_eq!(ctx.negative().len(), 6);
        assert!(ctx.negative().iter().all(|p| p.order == 0 && p.lower == p.higher));
        for p in ctx.negative() {
            let w = ctx.passing_weights(p).unwrap();
            assert_eq!(w.sym, rat(0, 1));
            assert_eq!(w.anti, rat(0, 1));
        }
    }

    #[test]
    fn cg31_pairs_and_weights() {
        let ctx = cg31();
        let a1 = PositiveRoot::simple(1);
        let a2 = PositiveRoot::simple(2);
        assert_eq!(ctx.positive().len(), 1);
        let x = ctx.positive()[0];
        assert_eq!((x.lower, x.higher, x.order), (a1, a2, 1));
        assert_eq!(ctx.negative().len(), 4);
        assert_eq!(ctx.negative().iter().filter(|p| p.order == 1).count(), 1);
        let w = ctx.passing_weights(&x).unwrap();
        assert_eq!(w.right, rat(1, 2));
        assert_eq!(w.left, rat(0, 1));
        assert_eq!(w.sym, rat(1, 2));
        assert_eq!(w.anti, rat(1, 2));
        assert_eq!(x.units(), UnitPair::new((2, 3), (2, 1)));
    }

    #[test]
    fn foreign_pair_is_rejected() {
        let ctx = cg31();
        let other = TripleContext::new(&BdTriple::new(3, [(2, 1)]).unwrap());
        assert!(ctx.passing_weights(&other.positive()[0]).is_err());
    }

    #[test]
    fn reversing_triple_reversal_flag() {
        let ctx = TripleContext::new(&BdTriple::new(5, [(1, 4), (2, 3)]).unwrap());
        let x = ctx
            .lookup(Sign::Positive, PositiveRoot::new(1, 3), PositiveRoot::new(3, 5))
            .unwrap();
        assert!(x.reverses());
        assert_eq!(x.literal_c(), 1);
        let zero = ctx
            .lookup(Sign::Negative, PositiveRoot::new(1, 3), PositiveRoot::new(1, 3))
            .unwrap();
        assert_eq!((zero.literal_c(), zero.reversal), (1, 0));
    }

    #[test]
    fn unit_products() {
        let x = UnitPair::new((1, 2), (3, 2));
        let y = UnitPair::new((2, 3), (2, 1));
        assert_eq!(x.mul(&y), Some(UnitPair::new((1, 3), (3, 1))));
        assert_eq!(y.mul(&x), None);
    }
}
