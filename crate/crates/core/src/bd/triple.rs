use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::root::PositiveRoot;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Raw triple data as it appears in JSON, before validation.
///
/// `{"n": 3, "gamma1": [1], "gamma2": [2], "t": {"1": 2}}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleSpec {
    pub n: usize,
    pub gamma1: Vec<usize>,
    pub gamma2: Vec<usize>,
    pub t: BTreeMap<String, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    DimensionTooSmall { n: usize },
    OutOfBounds { field: &'static str, index: usize },
    MalformedKey { key: String },
    NotBijective { detail: String },
    IsometryViolation { a: usize, b: usize },
    NilpotencyViolation { cycle: Vec<usize> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DimensionTooSmall { n } => write!(f, "n = {n} < 2"),
            Violation::OutOfBounds { field, index } => {
                write!(f, "{field} index {index} out of bounds")
            }
            Violation::MalformedKey { key } => write!(f, "malformed t key {key:?}"),
            Violation::NotBijective { detail } => write!(f, "not bijective: {detail}"),
            Violation::IsometryViolation { a, b } => {
                write!(f, "isometry fails on simple roots {a}, {b}")
            }
            Violation::NilpotencyViolation { cycle } => write!(f, "T has cycle {cycle:?}"),
        }
    }
}

/// Checks a candidate triple and returns every failed condition.
pub fn validate_triple(spec: &TripleSpec) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = spec.n;
    if n < 2 {
        out.push(Violation::DimensionTooSmall { n });
    }
    let in_range = |a: usize| a >= 1 && a < n;
    for (field, set) in [("gamma1", &spec.gamma1), ("gamma2", &spec.gamma2)] {
        for &a in set {
            if !in_range(a) {
                out.push(Violation::OutOfBounds { field, index: a });
            }
        }
    }
    let mut t = BTreeMap::new();
    for (k, &v) in &spec.t {
        match k.trim().parse::<usize>() {
            Ok(a) => {
                if !in_range(a) {
                    out.push(Violation::OutOfBounds { field: "t", index: a });
                }
                if !in_range(v) {
                    out.push(Violation::OutOfBounds { field: "t", index: v });
                }
                t.insert(a, v);
            }
            Err(_) => out.push(Violation::MalformedKey { key: k.clone() }),
        }
    }
    if !out.is_empty() {
        return out;
    }
    out.extend(structural_violations(&spec.gamma1, &spec.gamma2, &t));
    out
}

fn structural_violations(gamma1: &[usize], gamma2: &[usize], t: &BTreeMap<usize, usize>) -> Vec<Violation> {
    let mut out = Vec::new();
    let g1: BTreeSet<usize> = gamma1.iter().copied().collect();
    let g2: BTreeSet<usize> = gamma2.iter().copied().collect();
    if g1.len() != gamma1.len() || g2.len() != gamma2.len() {
        out.push(Violation::NotBijective {
            detail: "repeated simple roots".into(),
        });
    }
    if g1.len() != g2.len() {
        out.push(Violation::NotBijective {
            detail: format!("|gamma1| = {} but |gamma2| = {}", g1.len(), g2.len()),
        });
    }
    let domain: BTreeSet<usize> = t.keys().copied().collect();
    if domain != g1 {
        out.push(Violation::NotBijective {
            detail: "t is not defined exactly on gamma1".into(),
        });
    }
    let image: BTreeSet<usize> = t.values().copied().collect();
    if image.len() != t.len() {
        out.push(Violation::NotBijective {
            detail: "t is not injective".into(),
        });
    }
    if image != g2 {
        out.push(Violation::NotBijective {
            detail: "t does not map onto gamma2".into(),
        });
    }
    for (&a, &ta) in t {
        for (&b, &tb) in t.range((a + 1)..) {
            if (a.abs_diff(b) == 1) != (ta.abs_diff(tb) == 1) {
                out.push(Violation::IsometryViolation { a, b });
            }
        }
    }
    let mut reported: BTreeSet<usize> = BTreeSet::new();
    for &start in t.keys() {
        let mut seen = Vec::new();
        let mut cur = start;
        while let Some(&next) = t.get(&cur) {
            if let Some(pos) = seen.iter().position(|&x| x == cur) {
                let cycle: Vec<usize> = seen[pos..].to_vec();
                let key = *cycle.iter().min().unwrap();
                if reported.insert(key) {
                    out.push(Violation::NilpotencyViolation { cycle });
                }
                break;
            }
            seen.push(cur);
            cur = next;
        }
    }
    out
}

/// A validated Belavin-Drinfeld triple of type `A_{n-1}`.
///
/// Simple roots are the 1-based indices `a` of `alpha_a = e_a - e_{a+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BdTriple {
    n: usize,
    gamma1: Vec<usize>,
    gamma2: Vec<usize>,
    t: BTreeMap<usize, usize>,
}

impl BdTriple {
    pub fn new(n: usize, t: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let t: BTreeMap<usize, usize> = t.into_iter().collect();
        let spec = TripleSpec {
            n,
            gamma1: t.keys().copied().collect(),
            gamma2: t.values().copied().collect(),
            t: t.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        };
        Self::from_spec(&spec)
    }

    pub fn empty(n: usize) -> Self {
        assert!(n >= 2);
        Self {
            n,
            gamma1: vec![],
            gamma2: vec![],
            t: BTreeMap::new(),
        }
    }

    pub fn from_spec(spec: &TripleSpec) -> Result<Self> {
        let violations = validate_triple(spec);
        if !violations.is_empty() {
            return Err(Error::InvalidTriple(violations));
        }
        let t: BTreeMap<usize, usize> = spec.t.iter().map(|(k, v)| (k.trim().parse().unwrap(), *v)).collect();
        let mut gamma2: Vec<usize> = t.values().copied().collect();
        gamma2.sort_unstable();
        Ok(Self {
            n: spec.n,
            gamma1: t.keys().copied().collect(),
            gamma2,
            t,
        })
    }

    /// Internal constructor for enumeration, where validity is established
    /// by construction.
    pub(crate) fn from_parts_unchecked(n: usize, t: BTreeMap<usize, usize>) -> Self {
        let mut gamma2: Vec<usize> = t.values().copied().collect();
        gamma2.sort_unstable();
        Self {
            n,
            gamma1: t.keys().copied().collect(),
            gamma2,
            t,
        }
    }

    pub fn to_spec(&self) -> TripleSpec {
        TripleSpec {
            n: self.n,
            gamma1: self.gamma1.clone(),
            gamma2: self.gamma2.clone(),
            t: self.t.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gamma1(&self) -> &[usize] {
        &self.gamma1
    }

    pub fn gamma2(&self) -> &[usize] {
        &self.gamma2
    }

    pub fn t_map(&self) -> &BTreeMap<usize, usize> {
        &self.t
    }

    pub fn t(&self, a: usize) -> Option<usize> {
        self.t.get(&a).copied()
    }

    /// Sort key `(gamma1, gamma2, images of gamma1 in order)`.
    pub fn sort_key(&self) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
        (
            self.gamma1.clone(),
            self.gamma2.clone(),
            self.t.values().copied().collect(),
        )
    }

    /// `T^k(alpha)` for the additive extension of `T`, or `None` when some
    /// intermediate image has a constituent outside `gamma1`.
    pub fn apply_t(&self, alpha: PositiveRoot, k: usize) -> Option<PositiveRoot> {
        self.track(alpha, k).map(|(root, _)| root)
    }

    /// Image root plus the image of the left-end simple root.
    fn track(&self, alpha: PositiveRoot, k: usize) -> Option<(PositiveRoot, usize)> {
        let mut cur = alpha;
        let mut left = alpha.i;
        for _ in 0..k {
            let mut lo = usize::MAX;
            let mut hi = 0;
            for a in cur.constituents() {
                let b = self.t(a)?;
                lo = lo.min(b);
                hi = hi.max(b);
            }
            if hi - lo + 1 != cur.size() {
                return None;
            }
            left = self.t(left)?;
            cur = PositiveRoot { i: lo, j: hi + 1 };
        }
        Some((cur, left))
    }

    /// `C_{alpha, T^k alpha}`: 0 when `T^k` preserves orientation on
    /// `alpha`, 1 when it reverses it.
    pub fn orientation(&self, alpha: PositiveRoot, k: usize) -> Result<u8> {
        let (image, left) = self.track(alpha, k).ok_or(Error::UndefinedPower {
            i: alpha.i,
            j: alpha.j,
            k,
        })?;
        Ok(if left == image.i { 0 } else { 1 })
    }

    /// The least `k > 0` with `T^k alpha` abutting `alpha` on the given side.
    pub fn passing_order(&self, alpha: PositiveRoot, side: Side) -> Option<usize> {
        let (i, j) = (alpha.i as isize, alpha.j as isize);
        let target = match side {
            Side::Right => (j, 2 * j - i),
            Side::Left => (2 * i - j, i),
        };
        if target.0 < 1 || target.1 > self.n as isize {
            return None;
        }
        let target = PositiveRoot {
            i: target.0 as usize,
            j: target.1 as usize,
        };
        let mut k = 1;
        let mut cur = self.apply_t(alpha, 1);
        while let Some(root) = cur {
            if root == target {
                return Some(k);
            }
            k += 1;
            cur = self.apply_t(root, 1);
        }
        None
    }

    /// The `k >= 1` with `T^k alpha = beta`, if any.
    pub fn precedes(&self, alpha: PositiveRoot, beta: PositiveRoot) -> Option<usize> {
        let mut k = 1;
        let mut cur = self.apply_t(alpha, 1);
        while let Some(root) = cur {
            if root == beta {
                return Some(k);
            }
            k += 1;
            cur = self.apply_t(root, 1);
        }
        None
    }
}

impl fmt::Display for BdTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} T{{", self.n)?;
        for (idx, (a, b)) in self.t.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}->{b}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for BdTriple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_spec().serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: usize, t: &[(usize, usize)]) -> TripleSpec {
        TripleSpec {
            n,
            gamma1: t.iter().map(|p| p.0).collect(),
            gamma2: t.iter().map(|p| p.1).collect(),
            t: t.iter().map(|(a, b)| (a.to_string(), *b)).collect(),
        }
    }

    #[test]
    fn cremmer_gervais_3_1_is_valid() {
        assert!(validate_triple(&spec(3, &[(1, 2)])).is_empty());
    }

    #[test]
    fn fixed_point_is_not_nilpotent() {
        let v = validate_triple(&spec(3, &[(1, 1)]));
        assert_eq!(v, vec![Violation::NilpotencyViolation { cycle: vec![1] }]);
    }

    #[test]
    fn reversing_pair_is_valid() {
        assert!(validate_triple(&spec(5, &[(1, 4), (2, 3)])).is_empty());
    }

    #[test]
    fn isometry_witness() {
        let v = validate_triple(&spec(5, &[(1, 1), (2, 3)]));
        assert!(v.contains(&Violation::IsometryViolation { a: 1, b: 2 }));
    }

    #[test]
    fn out_of_bounds_and_bijection() {
        let v = validate_triple(&spec(3, &[(3, 1)]));
        assert!(matches!(v[0], Violation::OutOfBounds { index: 3, .. }));
        let mut s = spec(4, &[(1, 2), (2, 3)]);
        s.gamma2 = vec![2];
        let v = validate_triple(&s);
        assert!(v.iter().any(|x| matches!(x, Violation::NotBijective { .. })));
        assert_eq!(
            validate_triple(&spec(1, &[])),
            vec![Violation::DimensionTooSmall { n: 1 }]
        );
    }

    #[test]
    fn apply_t_examples() {
        let cg = BdTriple::new(3, [(1, 2)]).unwrap();
        assert_eq!(cg.apply_t(PositiveRoot::simple(1), 1), Some(PositiveRoot::simple(2)));
        assert_eq!(cg.apply_t(PositiveRoot::simple(2), 1), None);
        let rev = BdTriple::new(5, [(1, 4), (2, 3)]).unwrap();
        assert_eq!(rev.apply_t(PositiveRoot::new(1, 3), 1), Some(PositiveRoot::new(3, 5)));
        assert_eq!(rev.orientation(PositiveRoot::new(1, 3), 1).unwrap(), 1);
        assert_eq!(rev.orientation(PositiveRoot::simple(1), 1).unwrap(), 0);
        assert!(rev.orientation(PositiveRoot::new(2, 4), 1).is_err());
    }

    #[test]
    fn passing_order_examples() {
        let cg = BdTriple::new(3, [(1, 2)]).unwrap();
        let a1 = PositiveRoot::simple(1);
        assert_eq!(cg.passing_order(a1, Side::Right), Some(1));
        assert_eq!(cg.passing_order(a1, Side::Left), None);
        let e = BdTriple::empty(4);
        for r in PositiveRoot::all(4) {
            assert_eq!(e.passing_order(r, Side::Right), None);
            assert_eq!(e.passing_order(r, Side::Left), None);
        }
    }

    #[test]
    fn spec_round_trip_json() {
        let t = BdTriple::new(5, [(1, 4), (2, 3)]).unwrap();
        let js = serde_json::to_string(&t).unwrap();
        assert_eq!(js, r#"{"n":5,"gamma1":[1,2],"gamma2":[3,4],"t":{"1":4,"2":3}}"#);
        let back: TripleSpec = serde_json::from_str(&js).unwrap();
        assert_eq!(BdTriple::from_spec(&back).unwrap(), t);
    }
}
