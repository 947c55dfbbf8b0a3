//! Compatible pairs of T-pairs and the bijections between their classes.

use std::fmt;

use serde::Serialize;

use crate::bd::{Pass, PositiveRoot, Side, Sign, TPair, TripleContext, UnitPair};
use crate::error::{Error, Result};
use crate::scalar::{rat_int, Laurent};
use crate::tensor::{idx2, Tensor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignClass {
    Same,
    Opposite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Trend {
    Increasing,
    Constant,
    Decreasing,
}

/// A compatible ordered pair `(first, second)` with `E_first E_second != 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Quadruple {
    pub first: TPair,
    pub second: TPair,
    pub class: SignClass,
    pub trend: Trend,
    pub good: bool,
}

impl Quadruple {
    pub fn is_same(&self) -> bool {
        self.class == SignClass::Same
    }

    pub fn is_opposite(&self) -> bool {
        self.class == SignClass::Opposite
    }
}

impl fmt::Display for Quadruple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.first, self.second)
    }
}

/// `0 | a` holds only for `a = 0`.
pub fn divides(d: usize, a: usize) -> bool {
    if d == 0 {
        a == 0
    } else {
        a.is_multiple_of(d)
    }
}

/// The matrix units of `E_{x_1} ... E_{x_k}`, or `None` when the product is zero.
pub fn product_q(pairs: &[TPair]) -> Option<UnitPair> {
    let (head, rest) = pairs.split_first()?;
    rest.iter().try_fold(head.units(), |acc, p| acc.mul(&p.units()))
}

pub fn compatible(x: &TPair, y: &TPair) -> bool {
    x.units().mul(&y.units()).is_some()
}

pub fn classify_quadruple(x: &TPair, y: &TPair) -> Option<Quadruple> {
    if !compatible(x, y) {
        return None;
    }
    let (class, a, b) = if x.sign == y.sign {
        (SignClass::Same, x.order, y.order)
    } else {
        (SignClass::Opposite, x.size(), y.size())
    };
    let trend = match a.cmp(&b) {
        std::cmp::Ordering::Less => Trend::Increasing,
        std::cmp::Ordering::Equal => Trend::Constant,
        std::cmp::Ordering::Greater => Trend::Decreasing,
    };
    Some(Quadruple {
        first: *x,
        second: *y,
        class,
        trend,
        good: !divides(a.abs_diff(b), a),
    })
}

/// Every compatible ordered pair of T-pairs of the triple.
pub fn all_quadruples(ctx: &TripleContext) -> Vec<Quadruple> {
    let pairs: Vec<TPair> = ctx.all_pairs().copied().collect();
    let mut out = Vec::new();
    for x in &pairs {
        for y in &pairs {
            if let Some(q) = classify_quadruple(x, y) {
                out.push(q);
            }
        }
    }
    out
}

/// Image of `phi`: a same-sign quadruple for good inputs, a single pair for bad ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhiImage {
    Quad(TPair, TPair),
    Single(TPair),
}

impl PhiImage {
    pub fn pairs(&self) -> Vec<TPair> {
        match *self {
            PhiImage::Quad(a, b) => vec![a, b],
            PhiImage::Single(a) => vec![a],
        }
    }
}

fn domain(map: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        map,
        detail: detail.into(),
    }
}

pub fn phi(ctx: &TripleContext, x: &TPair, y: &TPair) -> Result<PhiImage> {
    let quad = classify_quadruple(x, y)
        .filter(|q| q.is_opposite() && q.trend != Trend::Constant)
        .ok_or_else(|| domain("phi", format!("({x}, {y}) is not an opposite-sign quadruple")))?;
    let z = product_q(&[*x, *y]).expect("compatible");
    if !quad.good {
        return ctx
            .pair_from_units(&z)
            .map(PhiImage::Single)
            .ok_or_else(|| domain("phi", format!("Q({x}, {y}) = {z} is not a T-pair")));
    }
    let increasing = quad.trend == Trend::Increasing;
    let (small, big) = if increasing { (x, y) } else { (y, x) };
    let q = small.size() % (big.size() - small.size());
    let sign = big.sign;
    let mut found = Vec::new();
    let candidates = match sign {
        Sign::Positive => ctx.positive(),
        Sign::Negative => ctx.negative(),
    };
    for v in candidates.iter().filter(|v| v.size() == q) {
        let vu = v.units();
        let rest = if increasing {
            if vu.first.1 != z.first.1 || vu.second.1 != z.second.1 {
                continue;
            }
            UnitPair::new((z.first.0, vu.first.0), (z.second.0, vu.second.0))
        } else {
            if vu.first.0 != z.first.0 || vu.second.0 != z.second.0 {
                continue;
            }
            UnitPair::new((vu.first.1, z.first.1), (vu.second.1, z.second.1))
        };
        if let Some(u) = ctx.pair_from_units(&rest).filter(|u| u.sign == sign) {
            found.push(if increasing { (u, *v) } else { (*v, u) });
        }
    }
    match found.as_slice() {
        [(a, b)] => Ok(PhiImage::Quad(*a, *b)),
        [] => Err(domain("phi", format!("no same-sign preimage of Q({x}, {y})"))),
        _ => Err(Error::Internal(format!(
            "phi({x}, {y}) has {} candidate images",
            found.len()
        ))),
    }
}

/// Coefficient vector of a sum of positive roots.
struct RootSum {
    coeffs: Vec<i64>,
}

impl RootSum {
    fn new(n: usize) -> Self {
        Self { coeffs: vec![0; n + 2] }
    }

    fn add(&mut self, r: PositiveRoot) {
        self.coeffs[r.i] += 1;
        self.coeffs[r.j] -= 1;
    }

    fn root(&self) -> Option<PositiveRoot> {
        let nz: Vec<(usize, i64)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| (i, *c))
            .collect();
        match nz.as_slice() {
            [(i, 1), (j, -1)] => Some(PositiveRoot::new(*i, *j)),
            _ => None,
        }
    }
}

fn power(ctx: &TripleContext, map: &'static str, r: PositiveRoot, k: usize) -> Result<PositiveRoot> {
    ctx.triple()
        .apply_t(r, k)
        .ok_or_else(|| domain(map, format!("T^{k} undefined on {r}")))
}

/// `sum_{k in ks} T^k(base) + T^{tail_k}(tail)`, as a single root.
fn root_series(
    ctx: &TripleContext,
    map: &'static str,
    base: Option<PositiveRoot>,
    ks: impl IntoIterator<Item = usize>,
    tail: (PositiveRoot, usize),
) -> Result<PositiveRoot> {
    let mut acc = RootSum::new(ctx.n());
    if let Some(b) = base {
        for k in ks {
            acc.add(power(ctx, map, b, k)?);
        }
    }
    acc.add(power(ctx, map, tail.0, tail.1)?);
    acc.root().ok_or_else(|| domain(map, "image is not a positive root"))
}

fn sum_powers(
    ctx: &TripleContext,
    map: &'static str,
    base: PositiveRoot,
    ks: impl IntoIterator<Item = usize>,
) -> Result<PositiveRoot> {
    let mut acc = RootSum::new(ctx.n());
    for k in ks {
        acc.add(power(ctx, map, base, k)?);
    }
    acc.root().ok_or_else(|| domain(map, "image is not a positive root"))
}

fn lookup(ctx: &TripleContext, map: &'static str, sign: Sign, l: PositiveRoot, h: PositiveRoot) -> Result<TPair> {
    ctx.lookup(sign, l, h)
        .filter(|p| p.lower == l && p.higher == h && p.sign == sign)
        .ok_or_else(|| domain(map, format!("({sign}, {l}, {h}) is not a T-pair")))
}

/// `psi` on a non-constant same-sign quadruple. Increasing input `(u, v)`
/// maps to `(x, y)`; decreasing input `(v, u)` maps to `(y, x)`.
pub fn psi(ctx: &TripleContext, first: &TPair, second: &TPair) -> Result<(TPair, TPair)> {
    const MAP: &str = "psi";
    let quad = classify_quadruple(first, second)
        .filter(|q| q.is_same() && q.trend != Trend::Constant)
        .ok_or_else(|| {
            domain(
                MAP,
                format!("({first}, {second}) is not a non-constant same-sign quadruple"),
            )
        })?;
    let decreasing = quad.trend == Trend::Decreasing;
    let (u, v) = if decreasing { (second, first) } else { (first, second) };
    let d = v.order - u.order;
    let ou = u.order;
    let (p, q) = if ou % d != 0 {
        (ou / d, ou % d)
    } else if u.sign == Sign::Negative {
        (ou / d, 0)
    } else {
        (ou / d - 1, d)
    };
    let mut w = RootSum::new(ctx.n());
    w.add(u.lower);
    w.add(v.lower);
    let w = w
        .root()
        .ok_or_else(|| domain(MAP, format!("{} + {} is not a root", u.lower, v.lower)))?;
    let vl = v.lower;
    let x_l = root_series(ctx, MAP, Some(w), (0..p).map(|t| q + t * d), (vl, ou))?;
    let x_h = root_series(ctx, MAP, Some(w), (1..=p).map(|t| t * d), (vl, (p + 1) * d))?;
    let y_l = root_series(ctx, MAP, Some(w), (0..=p).map(|t| t * d), (vl, (p + 1) * d))?;
    let y_h = root_series(ctx, MAP, Some(w), (0..=p).map(|t| q + t * d), (vl, v.order))?;
    let x = lookup(ctx, MAP, u.sign.flip(), x_l, x_h)?;
    let y = lookup(ctx, MAP, u.sign, y_l, y_h)?;
    Ok(if decreasing { (y, x) } else { (x, y) })
}

/// Whether `v` lies in `PTP^side` or `HPTP^side_-`.
pub fn in_passing_domain(v: &TPair, side: Side) -> bool {
    let pass = match side {
        Side::Right => v.right,
        Side::Left => v.left,
    };
    pass == Pass::Full || (pass == Pass::Half && v.sign == Sign::Negative)
}

/// `psi^r` (returns `(x, y)`) and `psi^l` (returns `(y, x)`).
pub fn psi_side(ctx: &TripleContext, v: &TPair, side: Side) -> Result<(TPair, TPair)> {
    let map = match side {
        Side::Right => "psi_r",
        Side::Left => "psi_l",
    };
    if !in_passing_domain(v, side) {
        return Err(domain(map, format!("{v} is not passed on this side")));
    }
    let po = ctx
        .passing_order(v.lower, side)
        .ok_or_else(|| Error::Internal(format!("passed pair {v} without passing order")))?;
    let ov = v.order;
    let (p, q) = if !ov.is_multiple_of(po) {
        (ov / po, ov % po)
    } else if v.sign == Sign::Negative {
        (ov / po, 0)
    } else {
        (ov / po - 1, po)
    };
    let vl = v.lower;
    let x_l = sum_powers(ctx, map, vl, (0..p).map(|t| q + t * po))?;
    let x_h = sum_powers(ctx, map, vl, (1..=p).map(|t| t * po))?;
    let y_l = sum_powers(ctx, map, vl, (0..=p).map(|t| t * po))?;
    let y_h = sum_powers(ctx, map, vl, (0..=p).map(|t| q + t * po))?;
    let x = lookup(ctx, map, v.sign.flip(), x_l, x_h)?;
    let y = lookup(ctx, map, v.sign, y_l, y_h)?;
    Ok(match side {
        Side::Right => (x, y),
        Side::Left => (y, x),
    })
}

pub fn psi_r(ctx: &TripleContext, v: &TPair) -> Result<(TPair, TPair)> {
    psi_side(ctx, v, Side::Right)
}

pub fn psi_l(ctx: &TripleContext, v: &TPair) -> Result<(TPair, TPair)> {
    psi_side(ctx, v, Side::Left)
}

/// `sum C_x (|x| - 1)` with the given `C` for order-zero pairs.
pub fn twist_sum(pairs: &[TPair], order_zero_c: u8) -> i64 {
    pairs
        .iter()
        .map(|p| p.c_with(order_zero_c) as i64 * (p.size() as i64 - 1))
        .sum()
}

/// `s_q(x_1, ..., x_k) = (-q)^{-sum C_x (|x| - 1)}`.
pub fn s_q(pairs: &[TPair], order_zero_c: u8) -> Laurent {
    Laurent::neg_q_pow(-twist_sum(pairs, order_zero_c))
}

/// `s = s_q` at `q = 1`.
pub fn s_one(pairs: &[TPair], order_zero_c: u8) -> i64 {
    if twist_sum(pairs, order_zero_c) % 2 == 0 {
        1
    } else {
        -1
    }
}

pub(crate) fn unit_entry(t: &mut Tensor, z: &UnitPair, value: Laurent) {
    t.add_entry(idx2(z.first.0, z.first.1, z.second.0, z.second.1), value);
}

/// `eps` from passing weights and orientations:
/// `-sum (-1)^{C(|a|-1)} [P^s + C(|a|-1)] (e_b (x) e_{-a} + e_{-a} (x) e_b)`.
pub fn eps_combinatorial(ctx: &TripleContext) -> Tensor {
    let mut t = Tensor::zero(ctx.n(), 2);
    for x in ctx.positive() {
        let twist = x.twist();
        let sign = if twist % 2 == 0 { -1 } else { 1 };
        let coeff = (x.weights().sym + rat_int(twist)) * rat_int(sign);
        let value = Laurent::constant(coeff);
        let (b0, b1) = x.higher.unit();
        let (a0, a1) = x.lower.neg_unit();
        t.add_entry(idx2(b0, b1, a0, a1), value.clone());
        t.add_entry(idx2(a0, a1, b0, b1), value);
    }
    t
}
