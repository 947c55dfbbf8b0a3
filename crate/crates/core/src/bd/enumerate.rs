use std::collections::BTreeMap;

use super::triple::{validate_triple, BdTriple};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};

pub const DEFAULT_MAX_N: usize = 8;

/// All valid triples for dimension `n`, sorted by `(gamma1, gamma2, t)`.
pub fn enumerate_triples(n: usize) -> Result<Vec<BdTriple>> {
    enumerate_triples_with(n, DEFAULT_MAX_N, Execution::default())
}

pub fn enumerate_triples_with(n: usize, bound: usize, mode: Execution) -> Result<Vec<BdTriple>> {
    if n > bound {
        return Err(Error::ResourceLimit { n, bound });
    }
    if n < 2 {
        return Err(Error::InvalidTriple(vec![
            super::triple::Violation::DimensionTooSmall { n },
        ]));
    }
    let r = n - 1;
    let masks: Vec<u32> = (0..(1u32 << r)).collect();
    let per_mask = exec::map(mode, &masks, |&mask| {
        let gamma1: Vec<usize> = (1..=r).filter(|a| mask & (1 << (a - 1)) != 0).collect();
        triples_on(n, &gamma1)
    });
    let mut all: Vec<BdTriple> = per_mask.into_iter().flatten().collect();
    all.sort_by_key(|t| t.sort_key());
    Ok(all)
}

/// Maximal runs of consecutive indices.
fn segments(gamma1: &[usize]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &a in gamma1 {
        match out.last_mut() {
            Some((_, end)) if *end + 1 == a => *end = a,
            _ => out.push((a, a)),
        }
    }
    out
}

fn triples_on(n: usize, gamma1: &[usize]) -> Vec<BdTriple> {
    let segs = segments(gamma1);
    let mut out = Vec::new();
    let mut images: Vec<(usize, usize)> = Vec::new();
    let mut map = BTreeMap::new();
    place(n, &segs, 0, &mut images, &mut map, &mut out);
    out
}

fn place(
    n: usize,
    segs: &[(usize, usize)],
    idx: usize,
    images: &mut Vec<(usize, usize)>,
    map: &mut BTreeMap<usize, usize>,
    out: &mut Vec<BdTriple>,
) {
    if idx == segs.len() {
        let t = BdTriple::from_parts_unchecked(n, map.clone());
        if validate_triple(&t.to_spec()).is_empty() {
            out.push(t);
        }
        return;
    }
    let (lo, hi) = segs[idx];
    let len = hi - lo + 1;
    for start in 1..=(n - len) {
        let end = start + len - 1;
        // images of distinct segments may neither overlap nor touch
        if images.iter().any(|&(s, e)| start <= e + 1 && s <= end + 1) {
            continue;
        }
        let flips: &[bool] = if len == 1 { &[false] } else { &[false, true] };
        for &flip in flips {
            for a in lo..=hi {
                let b = if flip { end - (a - lo) } else { start + (a - lo) };
                map.insert(a, b);
            }
            images.push((start, end));
            place(n, segs, idx + 1, images, map, out);
            images.pop();
            for a in lo..=hi {
                map.remove(&a);
            }
        }
    }
}
