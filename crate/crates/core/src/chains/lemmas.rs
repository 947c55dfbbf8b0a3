//! Exhaustive scans of the structural statements about quadruples and chains.
//!
//! Each scan returns a [`CheckOutcome`] whose violations carry a witness.

use std::cmp::Ordering;
use std::collections::HashSet;

use super::chain::{chains_of_shape, Convention, TPChain};
use super::maps::{
    chain_phi, is_half_passed, is_left_passed, is_reversed, is_reversed_minus, is_reversed_plus, is_right_passed,
    is_special, is_special_minus, is_special_plus, is_two_one, special_of, ChainImages,
};
use super::partition::ChainSet;
use super::quadruple::{
    all_quadruples, classify_quadruple, eps_combinatorial, in_passing_domain, phi, product_q, psi, psi_side, s_one,
    s_q, unit_entry, PhiImage, Quadruple, Trend,
};
use crate::bd::{Pass, Side, Sign, TPair, TripleContext};
use crate::report::CheckOutcome;
use crate::scalar::{rat, rat_int, Laurent};
use crate::tensor::{build_eps_direct, classical_a, diagonal_projector, idx2, Tensor};

fn pass_of(p: &TPair, side: Side) -> i64 {
    match side {
        Side::Right => p.right.twice(),
        Side::Left => p.left.twice(),
    }
}

fn other(side: Side) -> Side {
    match side {
        Side::Right => Side::Left,
        Side::Left => Side::Right,
    }
}

/// Mutual inverses `phi`/`psi`, `phi`/`psi^r`, `phi`/`psi^l`, with `Q` and
/// `s_q` preserved.
pub fn scan_bijections(ctx: &TripleContext, quads: &[Quadruple], convention: Convention) -> CheckOutcome {
    let oz = convention.order_zero_c;
    let mut out = CheckOutcome::new("bijections");
    for q in quads {
        let (x, y) = (q.first, q.second);
        let zq = product_q(&[x, y]);
        let sq = s_q(&[x, y], oz);
        if q.is_opposite() {
            match phi(ctx, &x, &y) {
                Err(e) => out.fail(format!("phi({x}, {y}): {e}")),
                Ok(PhiImage::Quad(u, v)) => {
                    let class = classify_quadruple(&u, &v);
                    out.expect(q.good, || format!("phi({q}) gave a pair of pairs on a bad input"));
                    out.expect(class.is_some_and(|c| c.is_same() && c.trend != Trend::Constant), || {
                        format!("phi({q}) = ({u}, {v}) is not a non-constant same-sign quadruple")
                    });
                    out.expect(product_q(&[u, v]) == zq, || format!("phi({q}) changes Q"));
                    out.expect(s_q(&[u, v], oz) == sq, || format!("phi({q}) changes s_q"));
                    match psi(ctx, &u, &v) {
                        Ok(back) => out.expect(back == (x, y), || format!("psi(phi({q})) = ({}, {})", back.0, back.1)),
                        Err(e) => out.fail(format!("psi(phi({q})): {e}")),
                    }
                }
                Ok(PhiImage::Single(v)) => {
                    out.expect(!q.good, || format!("phi({q}) gave a single pair on a good input"));
                    out.expect(Some(v.units()) == zq, || format!("phi({q}) = {v} differs from Q"));
                    out.expect(s_q(&[v], oz) == sq, || format!("phi({q}) = {v} changes s_q"));
                    let side = if q.trend == Trend::Increasing {
                        Side::Right
                    } else {
                        Side::Left
                    };
                    out.expect(in_passing_domain(&v, side), || {
                        format!("phi({q}) = {v} is not passed on the expected side")
                    });
                    match psi_side(ctx, &v, side) {
                        Ok(back) => {
                            out.expect(back == (x, y), || format!("psi^*(phi({q})) = ({}, {})", back.0, back.1))
                        }
                        Err(e) => out.fail(format!("psi^*(phi({q})): {e}")),
                    }
                }
            }
        } else if q.trend != Trend::Constant {
            match psi(ctx, &x, &y) {
                Err(e) => out.fail(format!("psi({q}): {e}")),
                Ok((a, b)) => {
                    let class = classify_quadruple(&a, &b);
                    out.expect(class.is_some_and(|c| c.is_opposite() && c.good), || {
                        format!("psi({q}) = ({a}, {b}) is not a good opposite-sign quadruple")
                    });
                    out.expect(product_q(&[a, b]) == zq, || format!("psi({q}) changes Q"));
                    out.expect(s_q(&[a, b], oz) == sq, || format!("psi({q}) changes s_q"));
                    match phi(ctx, &a, &b) {
                        Ok(img) => out.expect(img == PhiImage::Quad(x, y), || {
                            format!("phi(psi({q})) = {:?}", img.pairs())
                        }),
                        Err(e) => out.fail(format!("phi(psi({q})): {e}")),
                    }
                }
            }
        }
    }
    for v in ctx.all_pairs() {
        for (side, trend) in [(Side::Right, Trend::Increasing), (Side::Left, Trend::Decreasing)] {
            if !in_passing_domain(v, side) {
                continue;
            }
            match psi_side(ctx, v, side) {
                Err(e) => out.fail(format!("psi^{side:?}({v}): {e}")),
                Ok((a, b)) => {
                    let class = classify_quadruple(&a, &b);
                    out.expect(
                        class.is_some_and(|c| c.is_opposite() && !c.good && c.trend == trend),
                        || format!("psi^{side:?}({v}) = ({a}, {b}) has the wrong class"),
                    );
                    out.expect(product_q(&[a, b]) == Some(v.units()), || {
                        format!("psi^{side:?}({v}) changes Q")
                    });
                    out.expect(s_q(&[a, b], oz) == s_q(&[*v], oz), || {
                        format!("psi^{side:?}({v}) changes s_q")
                    });
                    match phi(ctx, &a, &b) {
                        Ok(img) => out.expect(img == PhiImage::Single(*v), || {
                            format!("phi(psi^{side:?}({v})) = {:?}", img.pairs())
                        }),
                        Err(e) => out.fail(format!("phi(psi^{side:?}({v})): {e}")),
                    }
                }
            }
        }
    }
    out
}

/// Orientation constraints on compatible quadruples.
pub fn scan_orientation(quads: &[Quadruple]) -> CheckOutcome {
    let mut out = CheckOutcome::new("nc");
    for q in quads {
        if q.trend == Trend::Constant {
            continue;
        }
        let (low, high) = if q.trend == Trend::Increasing {
            (q.first, q.second)
        } else {
            (q.second, q.first)
        };
        if q.is_same() {
            out.expect(!low.reverses(), || format!("{q}: lower-order pair reverses"));
            if high.reverses() {
                out.expect(2 * low.order < high.order, || {
                    format!("{q}: reversing higher pair with 2 Ord(u) >= Ord(v)")
                });
            }
        } else {
            out.expect(!high.reverses(), || format!("{q}: larger pair reverses"));
            if low.reverses() {
                out.expect(2 * low.size() <= high.size(), || {
                    format!("{q}: reversing smaller pair with 2|x| > |y|")
                });
            }
        }
    }
    out
}

/// Reversal pattern of `phi` images.
pub fn scan_reversal_pattern(ctx: &TripleContext, quads: &[Quadruple]) -> CheckOutcome {
    let mut out = CheckOutcome::new("psq");
    for q in quads.iter().filter(|q| q.is_opposite()) {
        let inc = q.trend == Trend::Increasing;
        let (x, y) = if inc { (q.first, q.second) } else { (q.second, q.first) };
        match phi(ctx, &q.first, &q.second) {
            Err(e) => out.fail(format!("phi({q}): {e}")),
            Ok(PhiImage::Quad(a, b)) => {
                let (u, v) = if inc { (a, b) } else { (b, a) };
                if [x, y, u, v].iter().any(TPair::reverses) {
                    out.expect(
                        x.reverses() && v.reverses() && !y.reverses() && !u.reverses() && x.size() == v.size(),
                        || format!("{q} -> ({u}, {v}): unexpected reversal pattern"),
                    );
                }
            }
            Ok(PhiImage::Single(v)) => {
                if [x, y, v].iter().any(TPair::reverses) {
                    out.expect(
                        x.reverses() && v.reverses() && !y.reverses() && x.size() == v.size(),
                        || format!("{q} -> {v}: unexpected reversal pattern"),
                    );
                }
            }
        }
    }
    out
}

/// `(a) or (b)` for the pair-of-pairs and single-pair passing statements.
/// `side` is the side called `l` for increasing quadruples.
fn alt_ab(v: &TPair, x: &TPair, y: &TPair, side: Side) -> bool {
    let (l, r) = (side, other(side));
    let a = pass_of(v, l) == pass_of(y, r) + pass_of(x, l) && pass_of(y, l) == 0;
    let b = pass_of(v, l) == pass_of(y, l) && pass_of(x, l) == 0 && pass_of(y, r) == 0;
    a || b
}

fn alt_cd(v: &TPair, x: &TPair, u: &TPair, side: Side) -> bool {
    let (l, r) = (side, other(side));
    let c = pass_of(v, r) == pass_of(x, r) + pass_of(u, r) && pass_of(u, l) == 0;
    let d = pass_of(v, r) == pass_of(u, l) && pass_of(u, r) == 0 && pass_of(x, r) == 0;
    c || d
}

/// Passing weights across `phi` on good and bad opposite-sign quadruples.
pub fn scan_passing(ctx: &TripleContext, quads: &[Quadruple]) -> (CheckOutcome, CheckOutcome) {
    let mut good = CheckOutcome::new("pq");
    let mut bad = CheckOutcome::new("ppp");
    for q in quads.iter().filter(|q| q.is_opposite()) {
        let inc = q.trend == Trend::Increasing;
        let (x, y) = if inc { (q.first, q.second) } else { (q.second, q.first) };
        let side = if inc { Side::Left } else { Side::Right };
        match phi(ctx, &q.first, &q.second) {
            Err(e) => {
                let out = if q.good { &mut good } else { &mut bad };
                out.fail(format!("phi({q}): {e}"));
            }
            Ok(PhiImage::Quad(a, b)) => {
                let (u, v) = if inc { (a, b) } else { (b, a) };
                good.expect(alt_ab(&v, &x, &y, side), || {
                    format!("{q} -> ({u}, {v}): neither (a) nor (b)")
                });
                good.expect(alt_cd(&v, &x, &u, side), || {
                    format!("{q} -> ({u}, {v}): neither (c) nor (d)")
                });
            }
            Ok(PhiImage::Single(v)) => {
                let r = other(side);
                bad.expect(pass_of(&v, r) > 0, || format!("{q} -> {v}: image not passed"));
                bad.expect(pass_of(&v, r) + pass_of(&x, r) == 2, || {
                    format!("{q} -> {v}: passing weights of v and x do not sum to 1")
                });
                bad.expect(alt_ab(&v, &x, &y, side), || format!("{q} -> {v}: neither (a) nor (b)"));
            }
        }
    }
    (good, bad)
}

fn s_value(pairs: &[TPair], oz: u8) -> Laurent {
    Laurent::from_int(s_one(pairs, oz))
}

/// `sum_{CTQ_s^c} s(x,y) E_Q = sum_{TP} (1 - |x|) s(x) C_x E_x`.
pub fn scan_constant_class(ctx: &TripleContext, quads: &[Quadruple], convention: Convention) -> CheckOutcome {
    let oz = convention.order_zero_c;
    let mut out = CheckOutcome::new("constant-class-sum");
    let mut lhs = Tensor::zero(ctx.n(), 2);
    for q in quads.iter().filter(|q| q.is_same() && q.trend == Trend::Constant) {
        let z = product_q(&[q.first, q.second]).expect("compatible");
        unit_entry(&mut lhs, &z, s_value(&[q.first, q.second], oz));
    }
    let mut rhs = Tensor::zero(ctx.n(), 2);
    for x in ctx.all_pairs() {
        let coeff = (1 - x.size() as i64) * x.c_with(oz) as i64 * s_one(&[*x], oz);
        unit_entry(&mut rhs, &x.units(), Laurent::from_int(coeff));
    }
    out.expect(lhs == rhs, || diff_witness(&lhs, &rhs));
    out
}

fn diff_witness(a: &Tensor, b: &Tensor) -> String {
    let d = a - b;
    let first = d
        .entries()
        .next()
        .map(|(idx, v)| format!("tensors differ at {:?} by {v}", &idx[..4]));
    first.unwrap_or_else(|| "tensors differ".into())
}

/// The direct derivation of `eps` through compatible quadruples.
pub fn scan_eps_direct(ctx: &TripleContext, quads: &[Quadruple], convention: Convention) -> CheckOutcome {
    let oz = convention.order_zero_c;
    let n = ctx.n();
    let mut out = CheckOutcome::new("fep-direct");
    let a = classical_a(ctx);
    let b = diagonal_projector(n);
    let mut lower = Tensor::zero(n, 2);
    for i in 1..=n {
        for j in (i + 1)..=n {
            lower.add_entry(idx2(j, i, i, j), Laurent::one());
        }
    }
    let half = Laurent::constant(rat(1, 2));
    let lhs = &(&(&(&a * &a) + &(&a * &lower)) + &(&lower * &a)) + &(&(&a * &b) + &(&b * &a)).scale(&half);
    let eps = build_eps_direct(ctx);
    out.expect(lhs == eps, || {
        format!("expanded square differs from eps: {}", diff_witness(&lhs, &eps))
    });

    let mut mid = Tensor::zero(n, 2);
    for q in quads {
        let z = product_q(&[q.first, q.second]).expect("compatible");
        let s = s_value(&[q.first, q.second], oz);
        let v = if q.is_same() { s } else { -s };
        unit_entry(&mut mid, &z, v);
    }
    let mut last = Tensor::zero(n, 2);
    for x in ctx.all_pairs() {
        let s = s_one(&[*x], oz);
        let c = x.c_with(oz) as i64;
        unit_entry(&mut last, &x.units(), Laurent::from_int((1 - x.size() as i64) * s * c));
        if x.right == Pass::Full || x.left == Pass::Full {
            unit_entry(&mut last, &x.units(), Laurent::from_int(-s));
        }
        if x.is_half() {
            unit_entry(&mut mid, &x.units(), half.scale(&rat_int(-x.sign.value() * s)));
            unit_entry(&mut last, &x.units(), half.scale(&rat_int(-s)));
        }
    }
    out.expect(mid == eps, || {
        format!("quadruple sum differs from eps: {}", diff_witness(&mid, &eps))
    });
    out.expect(last == eps, || {
        format!("pair sum differs from eps: {}", diff_witness(&last, &eps))
    });
    let comb = eps_combinatorial(ctx);
    out.expect(comb == eps, || {
        format!("combinatorial eps differs: {}", diff_witness(&comb, &eps))
    });
    out
}

/// All quadruple-level scans.
pub fn quadruple_scans(ctx: &TripleContext, convention: Convention) -> Vec<CheckOutcome> {
    let quads = all_quadruples(ctx);
    let mut checks = vec![
        scan_bijections(ctx, &quads, convention),
        scan_orientation(&quads),
        scan_reversal_pattern(ctx, &quads),
    ];
    let (pq, ppp) = scan_passing(ctx, &quads);
    checks.push(pq);
    checks.push(ppp);
    checks.push(scan_constant_class(ctx, &quads, convention));
    checks.push(scan_eps_direct(ctx, &quads, convention));
    checks
}

fn ord_cmp(a: &TPair, b: &TPair) -> Ordering {
    a.order.cmp(&b.order)
}

fn is_outer(c: &Option<TPChain>) -> bool {
    c.as_ref().is_some_and(TPChain::is_outer)
}

/// Order relations carried through two applications of `psi`.
pub fn scan_ail(ctx: &TripleContext) -> CheckOutcome {
    let mut out = CheckOutcome::new("ail");
    let second_step = |out: &mut CheckOutcome, x1: &TPair, x2: &TPair, y2: &TPair, y3: &TPair, tag: &str| {
        if x1.order <= y2.order {
            return;
        }
        match psi(ctx, x1, y2) {
            Ok((_, z2)) => out.expect(ord_cmp(x1, x2) == ord_cmp(&z2, y3), || {
                format!("{tag}: x1={x1}, x2={x2}, z2={z2}, y3={y3}")
            }),
            Err(e) => out.fail(format!("{tag}: psi({x1}, {y2}): {e}")),
        }
    };
    match chains_of_shape(ctx, 3, 3) {
        Ok(chains) => {
            for c in chains {
                let (x1, x2, x3) = (c.at(1), c.at(2), c.at(3));
                if x2.order <= x3.order {
                    continue;
                }
                match psi(ctx, x2, x3) {
                    Ok((y2, y3)) => second_step(&mut out, x1, x2, &y2, &y3, "(i)"),
                    Err(e) => out.fail(format!("(i) psi({x2}, {x3}): {e}")),
                }
            }
        }
        Err(e) => out.fail(e.to_string()),
    }
    match chains_of_shape(ctx, 2, 2) {
        Ok(chains) => {
            for c in chains {
                let (x1, x2) = (c.at(1), c.at(2));
                if x2.left != Pass::Full {
                    continue;
                }
                match psi_side(ctx, x2, Side::Left) {
                    Ok((y2, y3)) => second_step(&mut out, x1, x2, &y2, &y3, "(ii)"),
                    Err(e) => out.fail(format!("(ii) psi^l({x2}): {e}")),
                }
            }
        }
        Err(e) => out.fail(e.to_string()),
    }
    out
}

pub fn scan_ail2(ctx: &TripleContext) -> CheckOutcome {
    let mut out = CheckOutcome::new("ail2");
    let finish = |out: &mut CheckOutcome, x1: &TPair, y2: &TPair, y3: &TPair, tag: &str| {
        if y2.order >= x1.order {
            return;
        }
        match psi(ctx, x1, y2) {
            Ok((_, z2)) => out.expect(z2.order < y3.order, || {
                format!("{tag}: x1={x1}, y2={y2}, z2={z2}, y3={y3}")
            }),
            Err(e) => out.fail(format!("{tag}: psi({x1}, {y2}): {e}")),
        }
    };
    match chains_of_shape(ctx, 3, 1) {
        Ok(chains) => {
            for c in chains {
                let (x1, x2, x3) = (c.at(1), c.at(2), c.at(3));
                if x1.size() <= x2.size() + x3.size() || x2.order >= x3.order {
                    continue;
                }
                match psi(ctx, x2, x3) {
                    Ok((y2, y3)) => finish(&mut out, x1, &y2, &y3, "(i)"),
                    Err(e) => out.fail(format!("(i) psi({x2}, {x3}): {e}")),
                }
            }
        }
        Err(e) => out.fail(e.to_string()),
    }
    match chains_of_shape(ctx, 2, 1) {
        Ok(chains) => {
            for c in chains {
                let (x1, x2) = (c.at(1), c.at(2));
                if x1.size() <= x2.size() || x2.right == Pass::No {
                    continue;
                }
                match psi_side(ctx, x2, Side::Right) {
                    Ok((y2, y3)) => finish(&mut out, x1, &y2, &y3, "(ii)"),
                    Err(e) => out.fail(format!("(ii) psi^r({x2}): {e}")),
                }
            }
        }
        Err(e) => out.fail(e.to_string()),
    }
    out
}

pub fn scan_pmol(ctx: &TripleContext, set: &ChainSet) -> CheckOutcome {
    let mut out = CheckOutcome::new("pmol");
    for c in set.chains.iter().filter(|c| c.len() == 4 && c.m() == 2) {
        let (x1, x2, x3, x4) = (c.at(1), c.at(2), c.at(3), c.at(4));
        if !(x2.size() < x3.size() + x4.size() && x3.size() < x2.size() + x1.size()) {
            continue;
        }
        let left = psi(ctx, x1, x2).and_then(|(y1, y2)| TPChain::new(vec![y1, y2, *x3, *x4]));
        let right = psi(ctx, x3, x4).and_then(|(y3, y4)| TPChain::new(vec![*x1, *x2, y3, y4]));
        match (left, right) {
            (Ok(l), Ok(r)) => {
                out.expect((x2.size() > x3.size()) == l.is_outer(), || {
                    format!("{c}: |x2| > |x3| disagrees with outerness of {l}")
                });
                out.expect((x3.size() > x2.size()) == r.is_outer(), || {
                    format!("{c}: |x3| > |x2| disagrees with outerness of {r}")
                });
            }
            (Err(e), _) | (_, Err(e)) => out.fail(format!("{c}: {e}")),
        }
    }
    out
}

pub fn scan_bps(ctx: &TripleContext) -> CheckOutcome {
    let mut out = CheckOutcome::new("bps");
    match chains_of_shape(ctx, 2, 1) {
        Ok(chains) => {
            for c in chains {
                let (x1, x2) = (c.at(1), c.at(2));
                if x1.size() <= x2.size() || x1.left != Pass::Full {
                    continue;
                }
                match psi_side(ctx, x1, Side::Left) {
                    Ok((_, y2)) => out.expect(y2.order < x2.order, || {
                        format!("{c}: psi^l(x1) second component {y2} has order >= Ord(x2)")
                    }),
                    Err(e) => out.fail(format!("{c}: psi^l: {e}")),
                }
            }
        }
        Err(e) => out.fail(e.to_string()),
    }
    out
}

pub fn scan_onp(set: &ChainSet) -> CheckOutcome {
    let mut out = CheckOutcome::new("onp");
    for c in set.chains.iter().filter(|c| c.len() == 3 && c.m() == 2) {
        let (x1, x2, x3) = (c.at(1), c.at(2), c.at(3));
        if x2.size() < x3.size() && x3.size() < x1.size() + x2.size() {
            out.expect(x2.left != Pass::Full, || format!("{c}: x2 is left-passed"));
            out.expect(x3.right == Pass::No, || format!("{c}: x3 is right-passed"));
        }
    }
    out
}

pub fn scan_rcl(ctx: &TripleContext, set: &ChainSet) -> CheckOutcome {
    let mut out = CheckOutcome::new("rcl");
    for img in set.images.iter().filter(|i| is_reversed(&i.chain)) {
        let x = &img.chain;
        let shape = (x.len(), x.m());
        out.expect(shape == (3, 1) || shape == (3, 2), || {
            format!("{x}: reversed with shape {shape:?}")
        });
        for (name, im) in [
            ("Phi", &img.phi),
            ("Psi_+", &img.psi_plus),
            ("Psi_-", &img.psi_minus),
            ("Psi^l", &img.psi_left),
            ("Psi^r", &img.psi_right),
        ] {
            out.expect(!is_outer(im), || format!("{x}: {name} image is outer"));
        }
        let z = match chain_phi(ctx, x) {
            Ok(z) => z,
            Err(e) => {
                out.fail(format!("{x}: Phi: {e}"));
                continue;
            }
        };
        if is_reversed_plus(x) {
            out.expect(img.psi_minus.is_none(), || format!("{x}: Psi_- defined on RC_+"));
            match &img.psi_plus {
                Some(y) if y.len() == 3 && y.m() == 1 => out.expect(y.at(2).order == y.at(3).order, || {
                    format!("{x}: Psi_+ = {y} orders differ")
                }),
                other => out.fail(format!("{x}: Psi_+ = {other:?} not in TPC_(3,1)")),
            }
            match &z {
                Some(z) if (z.len(), z.m()) == (3, 3) || (z.len(), z.m()) == (2, 2) => out
                    .expect(z.at(1).order == z.at(2).order, || {
                        format!("{x}: Phi = {z} orders differ")
                    }),
                other => out.fail(format!("{x}: Phi = {other:?} has the wrong shape")),
            }
        }
        if is_reversed_minus(x) {
            out.expect(img.psi_plus.is_none(), || format!("{x}: Psi_+ defined on RC_-"));
            match &img.psi_minus {
                Some(y) if y.len() == 3 && y.m() == 2 => out.expect(y.at(1).order == y.at(2).order, || {
                    format!("{x}: Psi_- = {y} orders differ")
                }),
                other => out.fail(format!("{x}: Psi_- = {other:?} not in TPC_(3,2)")),
            }
            match &z {
                Some(z) if (z.len(), z.m()) == (3, 0) => out.expect(z.at(2).order == z.at(3).order, || {
                    format!("{x}: Phi = {z} orders differ")
                }),
                Some(z) if (z.len(), z.m()) == (2, 0) => out.expect(z.at(1).order == z.at(2).order, || {
                    format!("{x}: Phi = {z} orders differ")
                }),
                other => out.fail(format!("{x}: Phi = {other:?} has the wrong shape")),
            }
        }
    }
    out
}

fn small_shape(x: &TPChain) -> bool {
    matches!((x.len(), x.m()), (1, 0) | (1, 1) | (2, 1))
}

pub fn scan_pg1(set: &ChainSet) -> CheckOutcome {
    let mut out = CheckOutcome::new("pg1");
    for img in &set.images {
        let x = &img.chain;
        for sign in [Sign::Positive, Sign::Negative] {
            if !special_of(x, sign) {
                continue;
            }
            let psi_img = match sign {
                Sign::Positive => &img.psi_plus,
                Sign::Negative => &img.psi_minus,
            };
            let (a, b) = (is_outer(psi_img), is_outer(&img.phi));
            out.expect(a != b, || format!("(i) {x}: Psi outer = {a}, Phi outer = {b}"));
            if a {
                let y = psi_img.as_ref().expect("outer image");
                out.expect(special_of(y, sign), || format!("(i) {x}: Psi image {y} not special"));
            }
        }
        if !is_special(x) && !small_shape(x) {
            let (a, b) = (is_outer(&img.psi_plus), is_outer(&img.psi_minus));
            out.expect(!(a && b), || format!("(ii) {x}: both Psi_+ and Psi_- outer"));
            if !a && !b {
                out.expect(is_reversed(x), || {
                    format!("(ii) {x}: no outer Psi image but not reversed")
                });
            }
            if a {
                let y = img.psi_plus.as_ref().expect("outer image");
                out.expect(is_special(y) || is_two_one(y), || {
                    format!("(ii) {x}: Psi_+ image {y} not special")
                });
            }
            if b {
                let y = img.psi_minus.as_ref().expect("outer image");
                out.expect(is_special(y) || is_two_one(y), || {
                    format!("(ii) {x}: Psi_- image {y} not special")
                });
            }
        }
        let passed = is_left_passed(x) || is_right_passed(x) || is_half_passed(x);
        if passed && !small_shape(x) {
            out.expect(is_special(x), || format!("(iii) {x}: passed but not special"));
        }
        if is_special_plus(x) && is_left_passed(x) {
            out.expect(
                img.psi_left
                    .as_ref()
                    .is_some_and(|y| y.is_outer() && is_special_plus(y)),
                || format!("(iii) {x}: Psi^l image not an outer SPC_+ chain"),
            );
        }
        if is_special_minus(x) && (is_right_passed(x) || is_half_passed(x)) {
            out.expect(
                img.psi_right
                    .as_ref()
                    .is_some_and(|y| y.is_outer() && is_special_minus(y)),
                || format!("(iii) {x}: Psi^r image not an outer SPC_- chain"),
            );
        }
    }
    out
}

/// `C_a, C_b, C_c, RC, TPC_{1,1}, TPC_{1,0}` partition the outer chains.
pub fn scan_ds(set: &ChainSet) -> CheckOutcome {
    let mut out = CheckOutcome::new("ds");
    for img in &set.images {
        let x = &img.chain;
        let flags = [
            ("C_a", img.in_ca()),
            ("C_b", img.in_cb()),
            ("C_c", img.in_cc(Sign::Positive) || img.in_cc(Sign::Negative)),
            ("RC", is_reversed(x)),
            ("TPC_(1,1)", x.len() == 1 && x.m() == 1),
            ("TPC_(1,0)", x.len() == 1 && x.m() == 0),
        ];
        let hits: Vec<&str> = flags.iter().filter(|f| f.1).map(|f| f.0).collect();
        out.expect(hits.len() == 1, || format!("{x} lies in {hits:?}"));
    }
    out
}

pub fn scan_ctc(set: &ChainSet) -> CheckOutcome {
    let mut out = CheckOutcome::new("ctc");
    let images_of = |c: &Option<TPChain>| -> Option<&ChainImages> { c.as_ref().and_then(|c| set.images_of(c)) };
    for sign in [Sign::Positive, Sign::Negative] {
        let mut seen = HashSet::new();
        for img in &set.images {
            if !(img.in_ca_signed(sign) || img.in_cc(sign)) {
                continue;
            }
            let y = match sign {
                Sign::Positive => &img.psi_plus,
                Sign::Negative => &img.psi_minus,
            };
            out.expect(images_of(y).is_some_and(|i| i.in_cb_signed(sign)), || {
                format!("(i) {}: Psi image {y:?} not in C_b of the same sign", img.chain)
            });
            if let Some(y) = y {
                out.expect(seen.insert(y.clone()), || format!("(i) {y} hit twice"));
            }
        }
    }
    let mut seen_r = HashSet::new();
    let mut seen_l = HashSet::new();
    for img in &set.images {
        let x = &img.chain;
        let right = is_right_passed(x) || is_half_passed(x);
        let left = is_left_passed(x);
        if right && (img.in_ca_signed(Sign::Negative) || img.in_cb_signed(Sign::Negative)) {
            let target = images_of(&img.psi_right);
            out.expect(
                target.is_some_and(|t| {
                    t.in_cb_signed(Sign::Negative) && !(is_right_passed(&t.chain) || is_half_passed(&t.chain))
                }),
                || format!("(ii) {x}: Psi^r image {:?} not in C_b^- minus RPC/HPC", img.psi_right),
            );
            if let Some(y) = &img.psi_right {
                out.expect(seen_r.insert(y.clone()), || format!("(ii) {y} hit twice by Psi^r"));
            }
        }
        if left && (img.in_ca_signed(Sign::Positive) || img.in_cb_signed(Sign::Positive)) {
            let target = images_of(&img.psi_left);
            out.expect(
                target.is_some_and(|t| t.in_cb_signed(Sign::Positive) && !is_left_passed(&t.chain)),
                || format!("(ii) {x}: Psi^l image {:?} not in C_b^+ minus LPC", img.psi_left),
            );
            if let Some(y) = &img.psi_left {
                out.expect(seen_l.insert(y.clone()), || format!("(ii) {y} hit twice by Psi^l"));
            }
        }
        if img.in_cc(Sign::Positive) || img.in_cc(Sign::Negative) {
            out.expect(!(left || right), || format!("(iii) {x}: C_c chain is passed"));
        }
        if right && (img.in_ca_signed(Sign::Positive) || img.in_cb_signed(Sign::Positive)) {
            out.expect(!set.in_cb(&img.psi_right), || {
                format!("(iv) {x}: Psi^r image lies in C_b")
            });
        }
        if left && (img.in_ca_signed(Sign::Negative) || img.in_cb_signed(Sign::Negative)) {
            out.expect(!set.in_cb(&img.psi_left), || {
                format!("(iv) {x}: Psi^l image lies in C_b")
            });
        }
        if img.in_cb() {
            out.expect(!is_outer(&img.psi_plus) && !is_outer(&img.psi_minus), || {
                format!("(v) {x}: a Psi image of a C_b chain is outer")
            });
        }
    }
    out
}

/// All chain-level scans over the outer chains of a triple.
pub fn chain_scans(ctx: &TripleContext) -> Vec<CheckOutcome> {
    let set = match ChainSet::new(ctx) {
        Ok(s) => s,
        Err(e) => {
            let mut c = CheckOutcome::new("chains");
            c.fail(e.to_string());
            return vec![c];
        }
    };
    let mut maps = CheckOutcome::new("chain-maps");
    for (c, e) in &set.failures {
        maps.fail(format!("{c}: {e}"));
    }
    vec![
        maps,
        scan_ail(ctx),
        scan_ail2(ctx),
        scan_pmol(ctx, &set),
        scan_bps(ctx),
        scan_onp(&set),
        scan_rcl(ctx, &set),
        scan_pg1(&set),
        scan_ds(&set),
        scan_ctc(&set),
    ]
}
