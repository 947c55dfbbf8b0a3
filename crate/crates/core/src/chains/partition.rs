//! The partition of the outer chains into cancelling blocks.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::chain::{chain_weight, outer_chains, Convention, TPChain};
use super::maps::{chain_phi_prime, chain_psi_left, chain_psi_right, is_reversed_minus, is_reversed_plus, ChainImages};
use super::quadruple::unit_entry;
use crate::bd::{Sign, TripleContext};
use crate::error::Result;
use crate::report::CheckOutcome;
use crate::scalar::{rat_int, Laurent};
use crate::tensor::Tensor;

/// Outer chains of a triple with their images under every chain map.
pub struct ChainSet {
    pub chains: Vec<TPChain>,
    pub images: Vec<ChainImages>,
    index: HashMap<TPChain, usize>,
    /// Chains whose images could not be computed, with the error.
    pub failures: Vec<(TPChain, String)>,
}

impl ChainSet {
    pub fn new(ctx: &TripleContext) -> Result<Self> {
        Self::from_chains(ctx, outer_chains(ctx)?)
    }

    pub fn from_chains(ctx: &TripleContext, chains: Vec<TPChain>) -> Result<Self> {
        let mut images = Vec::with_capacity(chains.len());
        let mut kept = Vec::with_capacity(chains.len());
        let mut failures = Vec::new();
        for c in chains {
            match ChainImages::new(ctx, &c) {
                Ok(img) => {
                    images.push(img);
                    kept.push(c);
                }
                Err(e) => failures.push((c, e.to_string())),
            }
        }
        let index = kept.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        Ok(Self {
            chains: kept,
            images,
            index,
            failures,
        })
    }

    pub fn images_of(&self, c: &TPChain) -> Option<&ChainImages> {
        self.index.get(c).map(|&i| &self.images[i])
    }

    pub fn contains(&self, c: &TPChain) -> bool {
        self.index.contains_key(c)
    }

    pub fn in_cb(&self, c: &Option<TPChain>) -> bool {
        c.as_ref().and_then(|c| self.images_of(c)).is_some_and(|i| i.in_cb())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum BlockKind {
    /// Rooted at `x` in `C_a^+ u C_c^+`.
    CancelPlus,
    /// Rooted at `x` in `C_a^- u C_c^-`.
    CancelMinus,
    /// Rooted at a single positive pair.
    SinglePositive,
    /// Rooted at a single negative pair.
    SingleNegative,
}

#[derive(Clone, Debug)]
pub struct Block {
    pub root: TPChain,
    pub kind: BlockKind,
    pub members: BTreeSet<TPChain>,
}

/// Builds every block `A_x`. Errors from the maps become entries of the
/// returned failure list.
pub fn partition_blocks(ctx: &TripleContext, set: &ChainSet) -> (Vec<Block>, Vec<String>) {
    let mut failures = Vec::new();
    let mut reversed_pre: BTreeMap<(Sign, TPChain), Vec<TPChain>> = BTreeMap::new();
    for c in &set.chains {
        for sign in [Sign::Positive, Sign::Negative] {
            let reversed = match sign {
                Sign::Positive => is_reversed_plus(c),
                Sign::Negative => is_reversed_minus(c),
            };
            if !reversed {
                continue;
            }
            match chain_phi_prime(ctx, c, sign) {
                Ok(Some(root)) => reversed_pre.entry((sign, root)).or_default().push(c.clone()),
                Ok(None) => failures.push(format!("Phi' undefined on reversed chain {c}")),
                Err(e) => failures.push(format!("Phi' failed on {c}: {e}")),
            }
        }
    }

    let mut blocks = Vec::new();
    for img in &set.images {
        let x = &img.chain;
        let mut roots = Vec::new();
        if img.in_ca_signed(Sign::Positive) || img.in_cc(Sign::Positive) {
            roots.push(BlockKind::CancelPlus);
        }
        if img.in_ca_signed(Sign::Negative) || img.in_cc(Sign::Negative) {
            roots.push(BlockKind::CancelMinus);
        }
        if x.len() == 1 {
            roots.push(if x.m() == 1 {
                BlockKind::SinglePositive
            } else {
                BlockKind::SingleNegative
            });
        }
        for kind in roots {
            let mut members = BTreeSet::new();
            members.insert(x.clone());
            let mut add = |r: Result<Option<TPChain>>, what: &str| match r {
                Ok(Some(c)) => {
                    members.insert(c.clone());
                    Some(c)
                }
                Ok(None) => None,
                Err(e) => {
                    failures.push(format!("{what} failed on {x}: {e}"));
                    None
                }
            };
            let sign = match kind {
                BlockKind::CancelPlus => {
                    add(Ok(img.psi_plus.clone()), "Psi_+");
                    add(Ok(img.psi_left.clone()), "Psi^l");
                    if let Some(p) = &img.psi_plus {
                        add(chain_psi_left(ctx, p), "Psi^l after Psi_+");
                    }
                    Sign::Positive
                }
                BlockKind::CancelMinus => {
                    add(Ok(img.psi_minus.clone()), "Psi_-");
                    add(Ok(img.psi_right.clone()), "Psi^r");
                    if let Some(p) = &img.psi_minus {
                        add(chain_psi_right(ctx, p), "Psi^r after Psi_-");
                    }
                    Sign::Negative
                }
                BlockKind::SinglePositive => {
                    if let Some(y) = add(Ok(img.psi_left.clone()), "Psi^l") {
                        add(chain_psi_left(ctx, &y), "Psi^l twice");
                    }
                    Sign::Positive
                }
                BlockKind::SingleNegative => {
                    if let Some(y) = add(Ok(img.psi_right.clone()), "Psi^r") {
                        add(chain_psi_right(ctx, &y), "Psi^r twice");
                    }
                    Sign::Negative
                }
            };
            if let Some(pre) = reversed_pre.get(&(sign, x.clone())) {
                members.extend(pre.iter().cloned());
            }
            blocks.push(Block {
                root: x.clone(),
                kind,
                members,
            });
        }
    }
    (blocks, failures)
}

/// Closed form of the block sum for a single-pair root:
/// `(q - q^{-1}) (-1)^{C(|x|-1)} (-S) q^{S [P^s + C(|x|-1)]} E_x`.
pub fn singleton_sum(ctx: &TripleContext, root: &TPChain, convention: Convention) -> Tensor {
    let x = root.at(1);
    let twist = x.c_with(convention.order_zero_c) as i64 * (x.size() as i64 - 1);
    let s = x.sign.value();
    let parity = if twist % 2 == 0 { 1 } else { -1 };
    let exp = (x.weights().sym + rat_int(twist)) * rat_int(s);
    let value = Laurent::q_minus_q_inv().shift(&exp).scale(&rat_int(-s * parity));
    let mut t = Tensor::zero(ctx.n(), 2);
    unit_entry(&mut t, &x.units(), value);
    t
}

fn block_sum(ctx: &TripleContext, block: &Block, weight: &dyn Fn(&TPChain) -> Laurent) -> Tensor {
    let mut t = Tensor::zero(ctx.n(), 2);
    for y in &block.members {
        unit_entry(&mut t, &y.product(), weight(y));
    }
    t
}

pub fn partition_check(ctx: &TripleContext, convention: Convention) -> Result<Vec<CheckOutcome>> {
    partition_check_with(ctx, convention, &|c| chain_weight(c, convention))
}

/// Partition and cancellation checks with a caller-supplied chain weight.
pub fn partition_check_with(
    ctx: &TripleContext,
    convention: Convention,
    weight: &dyn Fn(&TPChain) -> Laurent,
) -> Result<Vec<CheckOutcome>> {
    let set = ChainSet::new(ctx)?;
    let mut partition = CheckOutcome::new("partition");
    let mut cancel = CheckOutcome::new("block-cancellation");
    let mut single = CheckOutcome::new("singleton-block-sum");
    for (c, e) in &set.failures {
        partition.fail(format!("chain maps failed on {c}: {e}"));
    }
    let (blocks, failures) = partition_blocks(ctx, &set);
    for f in failures {
        partition.fail(f);
    }

    let mut cover: HashMap<&TPChain, usize> = HashMap::new();
    for b in &blocks {
        for y in &b.members {
            if !set.contains(y) {
                partition.fail(format!("block of {} contains non-outer chain {y}", b.root));
            }
            *cover.entry(y).or_default() += 1;
        }
    }
    for c in &set.chains {
        match cover.get(c).copied().unwrap_or(0) {
            1 => {}
            k => partition.fail(format!("{c} lies in {k} blocks")),
        }
    }

    for b in &blocks {
        let sum = block_sum(ctx, b, weight);
        match b.kind {
            BlockKind::CancelPlus | BlockKind::CancelMinus => {
                cancel.expect(sum.is_zero(), || {
                    format!(
                        "block of {} ({} members) sums to a nonzero tensor",
                        b.root,
                        b.members.len()
                    )
                });
            }
            BlockKind::SinglePositive | BlockKind::SingleNegative => {
                let expected = singleton_sum(ctx, &b.root, convention);
                single.expect(sum == expected, || {
                    format!("block of {} does not sum to its closed form", b.root)
                });
            }
        }
    }
    Ok(vec![partition, cancel, single])
}
