//! Maps between TP-chains and the chain classes they induce.
//!
//! Every map returns `Ok(None)` when it is not defined on its argument and an
//! error when the underlying pair map fails on an input it should accept.

use super::chain::TPChain;
use super::quadruple::{in_passing_domain, phi, product_q, psi, psi_side};
use crate::bd::{Pass, Side, Sign, TPair, TripleContext};
use crate::error::{Error, Result};

/// `Phi`: `phi` on positions `(m, m + 1)`.
pub fn chain_phi(ctx: &TripleContext, x: &TPChain) -> Result<Option<TPChain>> {
    let m = x.m();
    if m == 0 || m >= x.len() {
        return Ok(None);
    }
    let image = phi(ctx, x.at(m), x.at(m + 1))?;
    x.splice(m, 2, &image.pairs()).map(Some)
}

fn psi_at(ctx: &TripleContext, x: &TPChain, i: usize) -> Result<Option<TPChain>> {
    let (a, b) = (x.at(i), x.at(i + 1));
    if a.order == b.order {
        return Ok(None);
    }
    let (c, d) = psi(ctx, a, b)?;
    x.splice(i, 2, &[c, d]).map(Some)
}

/// `Psi_+`: `psi` on positions `(m - 1, m)`, for `m >= 2`.
pub fn chain_psi_plus(ctx: &TripleContext, x: &TPChain) -> Result<Option<TPChain>> {
    if x.m() < 2 {
        return Ok(None);
    }
    psi_at(ctx, x, x.m() - 1)
}

/// `Psi_-`: `psi` on positions `(m + 1, m + 2)`, for `m <= len - 2`.
pub fn chain_psi_minus(ctx: &TripleContext, x: &TPChain) -> Result<Option<TPChain>> {
    if x.m() + 2 > x.len() {
        return Ok(None);
    }
    psi_at(ctx, x, x.m() + 1)
}

/// `Psi^l`: `psi^l` on `x_m` for left-passed chains.
pub fn chain_psi_left(ctx: &TripleContext, x: &TPChain) -> Result<Option<TPChain>> {
    if !is_left_passed(x) {
        return Ok(None);
    }
    let (a, b) = psi_side(ctx, x.at(x.m()), Side::Left)?;
    x.splice(x.m(), 1, &[a, b]).map(Some)
}

/// `Psi^r`: `psi^r` on `x_{m+1}` for right- or half-passed chains.
pub fn chain_psi_right(ctx: &TripleContext, x: &TPChain) -> Result<Option<TPChain>> {
    if !(is_right_passed(x) || is_half_passed(x)) {
        return Ok(None);
    }
    let v = x.at(x.m() + 1);
    debug_assert!(in_passing_domain(v, Side::Right));
    let (a, b) = psi_side(ctx, v, Side::Right)?;
    x.splice(x.m() + 1, 1, &[a, b]).map(Some)
}

pub fn is_left_passed(x: &TPChain) -> bool {
    x.m() >= 1 && x.at(x.m()).left == Pass::Full
}

pub fn is_right_passed(x: &TPChain) -> bool {
    x.m() < x.len() && x.at(x.m() + 1).right == Pass::Full
}

pub fn is_half_passed(x: &TPChain) -> bool {
    x.m() < x.len() && x.at(x.m() + 1).right == Pass::Half
}

/// `SPC_-`: `len >= m + 1 >= 3` and `|x_{m+1}| > |x_m| + |x_{m-1}|`.
pub fn is_special_minus(x: &TPChain) -> bool {
    let m = x.m();
    x.len() > m && m >= 2 && x.at(m + 1).size() > x.at(m).size() + x.at(m - 1).size()
}

/// `SPC_+`: `len >= m + 2 >= 3` and `|x_m| > |x_{m+1}| + |x_{m+2}|`.
pub fn is_special_plus(x: &TPChain) -> bool {
    let m = x.m();
    x.len() >= m + 2 && m >= 1 && x.at(m).size() > x.at(m + 1).size() + x.at(m + 2).size()
}

pub fn is_special(x: &TPChain) -> bool {
    is_special_plus(x) || is_special_minus(x)
}

/// `RC_-`: `3 <= m + 2 <= len` with `x_m` and `x_{m+2}` reversing.
pub fn is_reversed_minus(x: &TPChain) -> bool {
    let m = x.m();
    m >= 1 && m + 2 <= x.len() && x.at(m).reverses() && x.at(m + 2).reverses()
}

/// `RC_+`: `3 <= m + 1 <= len` with `x_{m-1}` and `x_{m+1}` reversing.
pub fn is_reversed_plus(x: &TPChain) -> bool {
    let m = x.m();
    m >= 2 && m < x.len() && x.at(m - 1).reverses() && x.at(m + 1).reverses()
}

pub fn is_reversed(x: &TPChain) -> bool {
    is_reversed_plus(x) || is_reversed_minus(x)
}

fn q_pair(ctx: &TripleContext, a: &TPair, b: &TPair) -> Result<TPair> {
    product_q(&[*a, *b])
        .and_then(|z| ctx.pair_from_units(&z))
        .ok_or_else(|| Error::Domain {
            map: "Q",
            detail: format!("Q({a}, {b}) is not a T-pair"),
        })
}

/// `Psi'` on a reversed outer chain of the given sign.
pub fn chain_psi_prime(ctx: &TripleContext, x: &TPChain, sign: Sign) -> Result<Option<TPChain>> {
    let (image, reversed) = match sign {
        Sign::Positive => (chain_psi_plus(ctx, x)?, is_reversed_plus(x)),
        Sign::Negative => (chain_psi_minus(ctx, x)?, is_reversed_minus(x)),
    };
    let y = match image {
        Some(y) if reversed && y.len() == 3 => y,
        _ => return Ok(None),
    };
    let (y1, y2, y3) = (y.at(1), y.at(2), y.at(3));
    let pairs = match sign {
        Sign::Negative => vec![q_pair(ctx, y1, y2)?, *y3],
        Sign::Positive => vec![*y1, q_pair(ctx, y2, y3)?],
    };
    TPChain::new(pairs).map(Some)
}

/// `Phi'` on a reversed outer chain of the given sign.
pub fn chain_phi_prime(ctx: &TripleContext, x: &TPChain, sign: Sign) -> Result<Option<TPChain>> {
    let reversed = match sign {
        Sign::Positive => is_reversed_plus(x),
        Sign::Negative => is_reversed_minus(x),
    };
    if !reversed {
        return Ok(None);
    }
    let z = match chain_phi(ctx, x)? {
        Some(z) => z,
        None => return Ok(None),
    };
    let pairs = match (sign, z.len()) {
        (Sign::Negative, 3) => vec![*z.at(1), q_pair(ctx, z.at(2), z.at(3))?],
        (Sign::Negative, 2) => vec![q_pair(ctx, z.at(1), z.at(2))?],
        (Sign::Positive, 3) => vec![q_pair(ctx, z.at(1), z.at(2))?, *z.at(3)],
        (Sign::Positive, 2) => vec![q_pair(ctx, z.at(1), z.at(2))?],
        _ => return Ok(None),
    };
    TPChain::new(pairs).map(Some)
}

/// Images of an outer chain under every chain map, with the class data
/// the partition is built from.
#[derive(Clone, Debug)]
pub struct ChainImages {
    pub chain: TPChain,
    pub phi: Option<TPChain>,
    pub psi_plus: Option<TPChain>,
    pub psi_minus: Option<TPChain>,
    pub psi_left: Option<TPChain>,
    pub psi_right: Option<TPChain>,
}

fn outer(c: &Option<TPChain>) -> bool {
    c.as_ref().is_some_and(|c| c.is_outer())
}

impl ChainImages {
    pub fn new(ctx: &TripleContext, chain: &TPChain) -> Result<Self> {
        Ok(Self {
            chain: chain.clone(),
            phi: chain_phi(ctx, chain)?,
            psi_plus: chain_psi_plus(ctx, chain)?,
            psi_minus: chain_psi_minus(ctx, chain)?,
            psi_left: chain_psi_left(ctx, chain)?,
            psi_right: chain_psi_right(ctx, chain)?,
        })
    }

    /// `C_a`: special, with `Phi(x)` not outer.
    pub fn in_ca(&self) -> bool {
        is_special(&self.chain) && !outer(&self.phi)
    }

    /// `C_b`: special or in `TPC_{2,1}`, with `Phi(x)` outer.
    pub fn in_cb(&self) -> bool {
        let x = &self.chain;
        (is_special(x) || (x.len() == 2 && x.m() == 1)) && outer(&self.phi)
    }

    /// `C_c^+` or `C_c^-`: neither special nor reversed, with `Psi_+-(x)` outer.
    pub fn in_cc(&self, sign: Sign) -> bool {
        let x = &self.chain;
        if is_special(x) || is_reversed(x) {
            return false;
        }
        match sign {
            Sign::Positive => outer(&self.psi_plus),
            Sign::Negative => outer(&self.psi_minus),
        }
    }

    pub fn in_ca_signed(&self, sign: Sign) -> bool {
        self.in_ca() && special_of(&self.chain, sign)
    }

    /// `C_b` restricted to one sign. Chains in `TPC_{2,1}` belong to both.
    pub fn in_cb_signed(&self, sign: Sign) -> bool {
        self.in_cb() && (special_of(&self.chain, sign) || is_two_one(&self.chain))
    }
}

pub fn is_two_one(x: &TPChain) -> bool {
    x.len() == 2 && x.m() == 1
}

pub fn special_of(x: &TPChain, sign: Sign) -> bool {
    match sign {
        Sign::Positive => is_special_plus(x),
        Sign::Negative => is_special_minus(x),
    }
}
