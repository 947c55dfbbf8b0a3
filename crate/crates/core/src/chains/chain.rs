//! TP-chains: enumeration, weights, and the expansion of `J^{-1} R_st J^{21}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::quadruple::{product_q, unit_entry};
use crate::bd::{Pass, Sign, TPair, TripleContext, UnitPair};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::scalar::{rat_int, Laurent, Rational};
use crate::tensor::{idx2, Tensor};

/// Upper bound on the number of chains any enumeration may return.
pub const DEFAULT_CHAIN_LIMIT: usize = 2_000_000;

/// A nonempty sequence of T-pairs, positive ones first, with nonzero
/// `E_{x_1} ... E_{x_k}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TPChain {
    pairs: Vec<TPair>,
    m: usize,
}

impl TPChain {
    pub fn new(pairs: Vec<TPair>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::Internal("empty chain".into()));
        }
        let m = pairs.iter().take_while(|p| p.sign == Sign::Positive).count();
        if pairs[m..].iter().any(|p| p.sign == Sign::Positive) {
            return Err(Error::Internal(format!(
                "positive pair after a negative one in {}",
                display_pairs(&pairs)
            )));
        }
        if product_q(&pairs).is_none() {
            return Err(Error::Internal(format!(
                "chain {} has zero product",
                display_pairs(&pairs)
            )));
        }
        Ok(Self { pairs, m })
    }

    pub fn pairs(&self) -> &[TPair] {
        &self.pairs
    }

    /// Number of leading positive pairs.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// `x_i`, 1-based.
    pub fn at(&self, i: usize) -> &TPair {
        &self.pairs[i - 1]
    }

    pub fn product(&self) -> UnitPair {
        product_q(&self.pairs).expect("chain product is nonzero")
    }

    pub fn is_outer(&self) -> bool {
        let (pos, neg) = self.pairs.split_at(self.m);
        pos.windows(2).all(|w| w[0].order > w[1].order) && neg.windows(2).all(|w| w[0].order < w[1].order)
    }

    /// `E(x)`: whether `x_m` is half left-passed or `x_{m+1}` half right-passed.
    pub fn half_passed(&self) -> bool {
        (self.m >= 1 && self.at(self.m).left == Pass::Half)
            || (self.m < self.len() && self.at(self.m + 1).right == Pass::Half)
    }

    /// Copy with positions `i..i+width` (1-based) replaced by `with`.
    pub fn splice(&self, i: usize, width: usize, with: &[TPair]) -> Result<Self> {
        let mut pairs = self.pairs[..i - 1].to_vec();
        pairs.extend_from_slice(with);
        pairs.extend_from_slice(&self.pairs[i - 1 + width..]);
        Self::new(pairs)
    }
}

fn display_pairs(pairs: &[TPair]) -> String {
    let parts: Vec<String> = pairs.iter().map(|p| p.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

impl fmt::Display for TPChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (m={})", display_pairs(&self.pairs), self.m)
    }
}

/// Adjacency table `E_a E_b != 0` over all pairs of a triple.
struct Compat {
    pairs: Vec<TPair>,
    next: Vec<Vec<usize>>,
}

impl Compat {
    fn new(ctx: &TripleContext) -> Self {
        let pairs: Vec<TPair> = ctx.all_pairs().copied().collect();
        let next = pairs
            .iter()
            .map(|a| {
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(_, b)| a.units().mul(&b.units()).is_some())
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        Self { pairs, next }
    }
}

fn limit_error(limit: usize) -> Error {
    Error::ChainLimit { bound: limit }
}

/// All outer chains of the triple.
pub fn outer_chains(ctx: &TripleContext) -> Result<Vec<TPChain>> {
    outer_chains_with(ctx, DEFAULT_CHAIN_LIMIT, Execution::default())
}

pub fn outer_chains_with(ctx: &TripleContext, limit: usize, mode: Execution) -> Result<Vec<TPChain>> {
    let compat = Compat::new(ctx);
    let starts: Vec<usize> = (0..compat.pairs.len()).collect();
    let parts = exec::map(mode, &starts, |&s| {
        let mut out = Vec::new();
        let mut path = vec![s];
        grow_outer(&compat, &mut path, &mut out, limit)?;
        Ok::<_, Error>(out)
    });
    collect_limited(parts, limit)
}

fn grow_outer(compat: &Compat, path: &mut Vec<usize>, out: &mut Vec<Vec<TPair>>, limit: usize) -> Result<()> {
    out.push(path.iter().map(|&i| compat.pairs[i]).collect());
    if out.len() > limit {
        return Err(limit_error(limit));
    }
    let last = compat.pairs[*path.last().expect("nonempty")];
    for &j in &compat.next[*path.last().expect("nonempty")] {
        let cand = compat.pairs[j];
        let ok = match (last.sign, cand.sign) {
            (Sign::Positive, Sign::Positive) => cand.order < last.order,
            (Sign::Positive, Sign::Negative) => true,
            (Sign::Negative, Sign::Negative) => cand.order > last.order,
            (Sign::Negative, Sign::Positive) => false,
        };
        if ok {
            path.push(j);
            grow_outer(compat, path, out, limit)?;
            path.pop();
        }
    }
    Ok(())
}

fn collect_limited(parts: Vec<Result<Vec<Vec<TPair>>>>, limit: usize) -> Result<Vec<TPChain>> {
    let mut all = Vec::new();
    for part in parts {
        for pairs in part? {
            all.push(TPChain::new(pairs)?);
            if all.len() > limit {
                return Err(limit_error(limit));
            }
        }
    }
    all.sort();
    Ok(all)
}

/// All chains in `TPC_{len, m}`, outer or not.
pub fn chains_of_shape(ctx: &TripleContext, len: usize, m: usize) -> Result<Vec<TPChain>> {
    if len == 0 || m > len {
        return Ok(Vec::new());
    }
    let compat = Compat::new(ctx);
    let mut out = Vec::new();
    let mut path = Vec::new();
    grow_shape(&compat, len, m, &mut path, &mut out)?;
    collect_limited(vec![Ok(out)], DEFAULT_CHAIN_LIMIT)
}

fn grow_shape(compat: &Compat, len: usize, m: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<TPair>>) -> Result<()> {
    if path.len() == len {
        out.push(path.iter().map(|&i| compat.pairs[i]).collect());
        if out.len() > DEFAULT_CHAIN_LIMIT {
            return Err(limit_error(DEFAULT_CHAIN_LIMIT));
        }
        return Ok(());
    }
    let want = if path.len() < m { Sign::Positive } else { Sign::Negative };
    let cands: Vec<usize> = match path.last() {
        Some(&l) => compat.next[l].clone(),
        None => (0..compat.pairs.len()).collect(),
    };
    for j in cands {
        if compat.pairs[j].sign == want {
            path.push(j);
            grow_shape(compat, len, m, path, out)?;
            path.pop();
        }
    }
    Ok(())
}

/// Sign of the `C_x (|x| - 1)` exponent in the chain weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExponentSign {
    /// `(-q)^{+S_x C_x (|x| - 1)}`.
    Plus,
    /// `(-q)^{-S_x C_x (|x| - 1)}`.
    Minus,
}

/// Reading of the chain weight: exponent sign and `C_x` for order-zero pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Convention {
    pub exponent_sign: ExponentSign,
    pub order_zero_c: u8,
}

impl Convention {
    /// The record the resolver selects; frozen here.
    pub const RESOLVED: Convention = Convention {
        exponent_sign: ExponentSign::Plus,
        order_zero_c: 0,
    };

    pub fn all() -> [Convention; 4] {
        [
            Convention {
                exponent_sign: ExponentSign::Plus,
                order_zero_c: 0,
            },
            Convention {
                exponent_sign: ExponentSign::Plus,
                order_zero_c: 1,
            },
            Convention {
                exponent_sign: ExponentSign::Minus,
                order_zero_c: 0,
            },
            Convention {
                exponent_sign: ExponentSign::Minus,
                order_zero_c: 1,
            },
        ]
    }

    fn sigma(self) -> i64 {
        match self.exponent_sign {
            ExponentSign::Plus => 1,
            ExponentSign::Minus => -1,
        }
    }
}

impl Default for Convention {
    fn default() -> Self {
        Self::RESOLVED
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.exponent_sign {
            ExponentSign::Plus => "+",
            ExponentSign::Minus => "-",
        };
        write!(f, "exponent {s}S_x C_x(|x|-1), order-zero C = {}", self.order_zero_c)
    }
}

/// `P(x) = (-1)^m (q - q^{-1})^k q^{E(x)} prod (-q)^{+-S C (|x_i| - 1)} q^{P^a(x_i)}`.
pub fn chain_weight(chain: &TPChain, convention: Convention) -> Laurent {
    let mut neg_q_exp = 0i64;
    let mut q_exp: Rational = rat_int(i64::from(chain.half_passed()));
    for x in chain.pairs() {
        let c = x.c_with(convention.order_zero_c) as i64;
        neg_q_exp += convention.sigma() * x.sign.value() * c * (x.size() as i64 - 1);
        q_exp += x.weights().anti;
    }
    let sign = if chain.m().is_multiple_of(2) { 1 } else { -1 };
    Laurent::neg_q_pow(neg_q_exp).shift(&q_exp).scale(&rat_int(sign)) * Laurent::q_minus_q_inv().pow(chain.len() as u32)
}

/// `sum_{i != j} e_ii (x) e_jj + q sum_i e_ii (x) e_ii`.
pub fn diagonal_part(n: usize) -> Tensor {
    let mut t = Tensor::zero(n, 2);
    for i in 1..=n {
        for j in 1..=n {
            let v = if i == j { Laurent::q_pow_int(1) } else { Laurent::one() };
            t.add_entry(idx2(i, i, j, j), v);
        }
    }
    t
}

/// `sum_{outer x} weight(x) E_{Q(x)}` plus the diagonal part.
pub fn expand_with(ctx: &TripleContext, chains: &[TPChain], weight: impl Fn(&TPChain) -> Laurent) -> Tensor {
    let mut t = diagonal_part(ctx.n());
    for c in chains {
        unit_entry(&mut t, &c.product(), weight(c));
    }
    t
}

pub fn expand_jrj(ctx: &TripleContext, convention: Convention) -> Result<Tensor> {
    let chains = outer_chains(ctx)?;
    Ok(expand_with(ctx, &chains, |c| chain_weight(c, convention)))
}
