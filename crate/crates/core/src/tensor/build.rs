//! Constructors for the classical and quantum matrices attached to a
//! triple and an `s`.

use crate::bd::TripleContext;
use crate::error::{Error, Result};
use crate::s_solver::{check_s, SElement};
use crate::scalar::{rat, rat_int, Laurent, Rational};

use super::element::{idx2, Index, Tensor};

/// `P = sum e_ij (x) e_ji`.
pub fn flip_operator(n: usize) -> Tensor {
    let mut t = Tensor::zero(n, 2);
    for i in 1..=n {
        for j in 1..=n {
            t.add_entry(idx2(i, j, j, i), Laurent::one());
        }
    }
    t
}

/// `P^0 = sum e_ii (x) e_ii`.
pub fn diagonal_projector(n: usize) -> Tensor {
    Tensor::from_entries(n, 2, (1..=n).map(|i| (idx2(i, i, i, i), Laurent::one())))
}

/// `r_st = 1/2 P^0 + sum_{alpha > 0} e_{-alpha} (x) e_alpha`.
pub fn classical_standard(n: usize) -> Tensor {
    let mut t = diagonal_projector(n).scale(&Laurent::constant(rat(1, 2)));
    for i in 1..=n {
        for j in (i + 1)..=n {
            t.add_entry(idx2(j, i, i, j), Laurent::one());
        }
    }
    t
}

/// `a = sum_{alpha < beta} (-1)^{C(|alpha|-1)} (e_{-alpha} (x) e_beta - e_beta (x) e_{-alpha})`.
pub fn classical_a(ctx: &TripleContext) -> Tensor {
    let mut t = Tensor::zero(ctx.n(), 2);
    for x in ctx.positive() {
        let sign = if x.twist() % 2 == 0 { 1 } else { -1 };
        let (b0, b1) = x.higher.unit();
        let (a0, a1) = x.lower.neg_unit();
        t.add_entry(idx2(a0, a1, b0, b1), Laurent::from_int(sign));
        t.add_entry(idx2(b0, b1, a0, a1), Laurent::from_int(-sign));
    }
    t
}

/// `s` viewed as `sum s_ij e_ii (x) e_jj`.
pub fn s_tensor(s: &SElement) -> Tensor {
    let n = s.n();
    let mut t = Tensor::zero(n, 2);
    for i in 1..=n {
        for j in 1..=n {
            t.add_entry(idx2(i, i, j, j), Laurent::constant(s.get(i, j).clone()));
        }
    }
    t
}

#[derive(Clone, Debug)]
pub struct Classical {
    pub p: Tensor,
    pub p0: Tensor,
    pub r_st: Tensor,
    pub a: Tensor,
    pub r: Tensor,
}

/// `P`, `P^0`, `r_st`, `a` and `r = s + a + r_st`.
pub fn build_classical(ctx: &TripleContext, s: &SElement) -> Result<Classical> {
    if !check_s(ctx.triple(), s) {
        return Err(Error::SNotSolution);
    }
    let n = ctx.n();
    let r_st = classical_standard(n);
    let a = classical_a(ctx);
    let r = &(&s_tensor(s) + &a) + &r_st;
    Ok(Classical {
        p: flip_operator(n),
        p0: diagonal_projector(n),
        r_st,
        a,
        r,
    })
}

/// `eps = a r_st + r_st a + a^2`, evaluated by tensor products.
pub fn build_eps_direct(ctx: &TripleContext) -> Tensor {
    let a = classical_a(ctx);
    let r_st = classical_standard(ctx.n());
    let ar = &a * &r_st;
    let ra = &r_st * &a;
    let aa = &a * &a;
    &(&ar + &ra) + &aa
}

/// `R_st = q P^0 + sum_{i != j} e_ii (x) e_jj + (q - q^{-1}) sum_{i > j} e_ij (x) e_ji`.
pub fn quantum_standard(n: usize) -> Tensor {
    let mut t = Tensor::zero(n, 2);
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                t.add_entry(idx2(i, i, i, i), Laurent::q_pow_int(1));
            } else {
                t.add_entry(idx2(i, i, j, j), Laurent::one());
            }
            if i > j {
                t.add_entry(idx2(i, j, j, i), Laurent::q_minus_q_inv());
            }
        }
    }
    t
}

/// `q^s = sum q^{s_ij} e_ii (x) e_jj`.
pub fn q_power_s(s: &SElement) -> Tensor {
    let n = s.n();
    let mut t = Tensor::zero(n, 2);
    for i in 1..=n {
        for j in 1..=n {
            t.add_entry(idx2(i, i, j, j), Laurent::q_pow(s.get(i, j).clone()));
        }
    }
    t
}

/// Exponent picked up by entry `(i, j, k, l)` under `q^s x q^s`.
pub fn conjugation_exponent(s: &SElement, idx: &Index) -> Rational {
    let (i, j, k, l) = (idx[0] as usize, idx[1] as usize, idx[2] as usize, idx[3] as usize);
    s.get(i, k) + s.get(j, l)
}

/// `q^s x q^s`, computed entrywise.
pub fn conjugate_q_s(x: &Tensor, s: &SElement) -> Tensor {
    x.map_values(|idx, v| v.shift(&conjugation_exponent(s, idx)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Route {
    /// `a~_entry = a_entry q^{a_entry eps_entry}` from the tensor-level `eps`.
    #[default]
    ViaEps,
    /// Closed form in terms of passing weights.
    ViaPassing,
}

/// `a~` from `a` and `eps`.
pub fn a_tilde(ctx: &TripleContext) -> Tensor {
    let a = classical_a(ctx);
    let eps = build_eps_direct(ctx);
    a.map_values(|idx, v| {
        let coeff = v.constant_term();
        let e = eps.at(idx).constant_term();
        Laurent::monomial(coeff.clone(), &coeff * &e)
    })
}

/// `R_st + (q - q^{-1}) a~`.
pub fn ggs_bar(ctx: &TripleContext, route: Route) -> Tensor {
    let n = ctx.n();
    let r_st = quantum_standard(n);
    match route {
        Route::ViaEps => &r_st + &a_tilde(ctx).scale(&Laurent::q_minus_q_inv()),
        Route::ViaPassing => {
            let mut t = r_st;
            for x in ctx.positive() {
                let twist = x.twist();
                let sign = if twist % 2 == 0 { 1 } else { -1 };
                let exp = x.weights().sym + rat_int(twist);
                let scale = Laurent::q_minus_q_inv().scale(&rat_int(sign));
                let (b0, b1) = x.higher.unit();
                let (a0, a1) = x.lower.neg_unit();
                t.add_entry(idx2(a0, a1, b0, b1), scale.shift(&-exp.clone()));
                t.add_entry(idx2(b0, b1, a0, a1), -scale.shift(&exp));
            }
            t
        }
    }
}

pub fn build_r_ggs_route(ctx: &TripleContext, s: &SElement, route: Route) -> Result<Tensor> {
    if !check_s(ctx.triple(), s) {
        return Err(Error::SNotSolution);
    }
    Ok(conjugate_q_s(&ggs_bar(ctx, route), s))
}

/// `R_GGS = q^s (R_st + (q - q^{-1}) a~) q^s`, built both ways and compared.
pub fn build_r_ggs(ctx: &TripleContext, s: &SElement) -> Result<Tensor> {
    let via_eps = build_r_ggs_route(ctx, s, Route::ViaEps)?;
    let via_passing = build_r_ggs_route(ctx, s, Route::ViaPassing)?;
    if via_eps != via_passing {
        return Err(Error::Internal(format!(
            "the two constructions of R_GGS disagree for {}",
            ctx.triple()
        )));
    }
    Ok(via_eps)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ProductOrder {
    /// `J = J_1 J_2 ... J_m`.
    #[default]
    Ascending,
    /// `J = J_m ... J_2 J_1`.
    Descending,
}

#[derive(Clone, Debug)]
pub struct Twist {
    pub factors: Vec<Tensor>,
    pub j: Tensor,
    pub j_inv: Tensor,
}

/// `J_k = 1 + sum_{beta = T^k alpha} (-q)^{-C(|alpha|-1)} q^{P^a} (q - q^{-1}) e_beta (x) e_{-alpha}`.
pub fn twist_factor(ctx: &TripleContext, k: usize) -> Tensor {
    let n = ctx.n();
    let mut t = Tensor::identity(n, 2);
    for x in ctx.positive().iter().filter(|x| x.order == k) {
        let coeff = Laurent::neg_q_pow(-x.twist()).shift(&x.weights().anti) * Laurent::q_minus_q_inv();
        let u = x.units();
        t.add_entry(idx2(u.first.0, u.first.1, u.second.0, u.second.1), coeff);
    }
    t
}

/// Inverse of `1 + N` for nilpotent `N` by the finite series `sum (-N)^k`.
pub fn neumann_inverse(j: &Tensor) -> Result<Tensor> {
    let n = j.n();
    let one = Tensor::identity(n, j.legs());
    let minus_nil = &one - j;
    let mut term = one.clone();
    let mut sum = one;
    for _ in 0..(n * n) {
        term = &term * &minus_nil;
        if term.is_zero() {
            return Ok(sum);
        }
        sum = &sum + &term;
    }
    Err(Error::Internal("Neumann series did not terminate".into()))
}

pub fn build_twist(ctx: &TripleContext, order: ProductOrder) -> Result<Twist> {
    let n = ctx.n();
    let factors: Vec<Tensor> = (1..=ctx.max_order()).map(|k| twist_factor(ctx, k)).collect();
    let mut j = Tensor::identity(n, 2);
    let seq: Box<dyn Iterator<Item = &Tensor>> = match order {
        ProductOrder::Ascending => Box::new(factors.iter()),
        ProductOrder::Descending => Box::new(factors.iter().rev()),
    };
    for f in seq {
        j = &j * f;
    }
    let j_inv = neumann_inverse(&j)?;
    Ok(Twist { factors, j, j_inv })
}

/// `J^{-1} R_st J^{21}`.
pub fn ess_bar(ctx: &TripleContext, order: ProductOrder) -> Result<Tensor> {
    let tw = build_twist(ctx, order)?;
    let r_st = quantum_standard(ctx.n());
    Ok(&(&tw.j_inv * &r_st) * &tw.j.flip()?)
}

/// `R_J = q^s J^{-1} R_st J^{21} q^s`.
pub fn build_r_j(ctx: &TripleContext, s: &SElement) -> Result<Tensor> {
    build_r_j_with(ctx, s, ProductOrder::default())
}

pub fn build_r_j_with(ctx: &TripleContext, s: &SElement, order: ProductOrder) -> Result<Tensor> {
    if !check_s(ctx.triple(), s) {
        return Err(Error::SNotSolution);
    }
    Ok(conjugate_q_s(&ess_bar(ctx, order)?, s))
}

/// The earlier presentation `q^{-s} (R_st + (q^{-1} - q) a~^T_{q^{-1}}) q^{-s}`.
pub fn original_form(ctx: &TripleContext, s: &SElement) -> Tensor {
    let inner = &quantum_standard(ctx.n())
        + &a_tilde(ctx)
            .invert_q()
            .transpose_factors()
            .scale(&-Laurent::q_minus_q_inv());
    conjugate_q_s(&inner, &s.scale(&rat(-1, 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bd::{enumerate_triples, BdTriple};
    use crate::s_solver::solve_s;

    fn cg31() -> TripleContext {
        TripleContext::new(&BdTriple::new(3, [(1, 2)]).unwrap())
    }

    fn cg31_s() -> SElement {
        SElement::from_upper(3, &[rat(1, 6), rat(-1, 6), rat(1, 6)])
    }

    #[test]
    fn empty_triple_classical() {
        let ctx = TripleContext::new(&BdTriple::empty(3));
        let c = build_classical(&ctx, &SElement::zero(3)).unwrap();
        assert!(c.a.is_zero());
        assert_eq!(c.r, c.r_st);
        assert!(build_eps_direct(&ctx).is_zero());
    }

    #[test]
    fn cg31_a_and_eps() {
        let ctx = cg31();
        let a = classical_a(&ctx);
        let expect = Tensor::from_entries(
            3,
            2,
            [
                (idx2(2, 1, 2, 3), Laurent::one()),
                (idx2(2, 3, 2, 1), Laurent::from_int(-1)),
            ],
        );
        assert_eq!(a, expect);
        let eps = build_eps_direct(&ctx);
        let half = Laurent::constant(rat(-1, 2));
        let expect = Tensor::from_entries(3, 2, [(idx2(2, 3, 2, 1), half.clone()), (idx2(2, 1, 2, 3), half)]);
        assert_eq!(eps, expect);
    }

    #[test]
    fn r_plus_r21_is_p() {
        for n in 2..=4 {
            for t in enumerate_triples(n).unwrap() {
                let ctx = TripleContext::new(&t);
                let s = solve_s(&t).unwrap().particular;
                let c = build_classical(&ctx, &s).unwrap();
                assert_eq!(&c.r + &c.r.flip().unwrap(), c.p, "{t}");
            }
        }
    }

    #[test]
    fn classical_rejects_bad_s() {
        assert!(matches!(
            build_classical(&cg31(), &SElement::zero(3)),
            Err(Error::SNotSolution)
        ));
    }

    #[test]
    fn empty_triple_quantum_is_standard() {
        let ctx = TripleContext::new(&BdTriple::empty(3));
        let s = SElement::zero(3);
        assert_eq!(build_r_ggs(&ctx, &s).unwrap(), quantum_standard(3));
        assert_eq!(build_r_j(&ctx, &s).unwrap(), quantum_standard(3));
        let tw = build_twist(&ctx, ProductOrder::Ascending).unwrap();
        assert_eq!(tw.j, Tensor::identity(3, 2));
        assert_eq!(tw.j_inv, Tensor::identity(3, 2));
    }

    #[test]
    fn cg31_ggs_entry() {
        let ctx = cg31();
        let r = build_r_ggs(&ctx, &cg31_s()).unwrap();
        // (q - q^{-1}) q^{-1/2} q^{s_22 + s_13}
        let expect = Laurent::q_minus_q_inv().shift(&(rat(-1, 2) + rat(-1, 6)));
        assert_eq!(r.at(&idx2(2, 1, 2, 3)), expect);
    }

    #[test]
    fn cg31_twist() {
        let ctx = cg31();
        let tw = build_twist(&ctx, ProductOrder::Ascending).unwrap();
        let n_part = Laurent::q_minus_q_inv().shift(&rat(1, 2));
        let mut expect = Tensor::identity(3, 2);
        expect.add_entry(idx2(2, 3, 2, 1), n_part.clone());
        assert_eq!(tw.j, expect);
        let mut inv = Tensor::identity(3, 2);
        inv.add_entry(idx2(2, 3, 2, 1), -n_part);
        assert_eq!(tw.j_inv, inv);
    }

    #[test]
    fn twist_inverse_all_small_triples() {
        for n in 2..=4 {
            for t in enumerate_triples(n).unwrap() {
                let ctx = TripleContext::new(&t);
                let tw = build_twist(&ctx, ProductOrder::Ascending).unwrap();
                assert_eq!(&tw.j * &tw.j_inv, Tensor::identity(n, 2), "{t}");
            }
        }
    }

    #[test]
    fn q_power_conjugation_matches_products() {
        let s = cg31_s();
        let ctx = cg31();
        let bar = ggs_bar(&ctx, Route::ViaEps);
        let qs = q_power_s(&s);
        assert_eq!(&(&qs * &bar) * &qs, conjugate_q_s(&bar, &s));
    }

    #[test]
    fn flip_operator_is_symmetric() {
        let p = flip_operator(3);
        assert_eq!(p.flip().unwrap(), p);
    }
}
