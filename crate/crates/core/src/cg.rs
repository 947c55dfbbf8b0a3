//! Generalized Cremmer-Gervais triples: `Gamma_1 = Gamma \ {alpha_{n-m}}`,
//! `Gamma_2 = Gamma \ {alpha_m}`, `T(alpha_i) = alpha_{Res(i + m)}`.

use num_integer::Integer;
use serde::Serialize;

use crate::bd::{enumerate_triples, BdTriple, Pass, TPair, TripleContext};
use crate::error::{Error, Result};
use crate::report::CheckOutcome;
use crate::s_solver::{check_s, SElement};
use crate::scalar::{rat, rat_int, Laurent, Rational};
use crate::tensor::{conjugate_q_s, idx2, quantum_standard, Tensor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CgParams {
    pub n: usize,
    pub m: usize,
}

impl CgParams {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n < 2 || m == 0 || m >= n || n.gcd(&m) != 1 {
            return Err(Error::NotCoprime { n, m });
        }
        Ok(Self { n, m })
    }

    /// Every admissible shift for dimension `n`.
    pub fn all(n: usize) -> Vec<CgParams> {
        (1..n).filter_map(|m| CgParams::new(n, m).ok()).collect()
    }

    /// `Res(x)`: residue mod `n` in `{1, ..., n}`.
    pub fn res(&self, x: i64) -> i64 {
        let n = self.n as i64;
        let r = x.rem_euclid(n);
        if r == 0 {
            n
        } else {
            r
        }
    }

    /// `Res(x / m)`, the division taken in `Z/n`.
    pub fn res_div(&self, x: i64) -> i64 {
        self.res(x * self.m_inverse())
    }

    fn m_inverse(&self) -> i64 {
        let e = (self.m as i64).extended_gcd(&(self.n as i64));
        e.x.rem_euclid(self.n as i64)
    }
}

pub fn make_cg(params: CgParams) -> Result<BdTriple> {
    let p = CgParams::new(params.n, params.m)?;
    let (n, m) = (p.n, p.m);
    let t = (1..n)
        .filter(|&i| i != n - m)
        .map(|i| (i, p.res((i + m) as i64) as usize));
    BdTriple::new(n, t)
}

/// `s_ii = 0`, `s_ij = 1/2 - Res((j - i) / m) / n`.
pub fn cg_s(params: CgParams) -> Result<SElement> {
    let triple = make_cg(params)?;
    let n = params.n;
    let entry = |i: usize, j: usize| -> Rational {
        if i == j {
            rat(0, 1)
        } else {
            rat(1, 2) - rat(params.res_div(j as i64 - i as i64), n as i64)
        }
    };
    let rows: Vec<Vec<Rational>> = (1..=n).map(|i| (1..=n).map(|j| entry(i, j)).collect()).collect();
    let s = SElement::from_matrix(rows)
        .map_err(|e| Error::Internal(format!("closed-form s for {params:?} is not antisymmetric: {e}")))?;
    if !check_s(&triple, &s) {
        return Err(Error::Internal(format!(
            "closed-form s fails the constraints for {params:?}"
        )));
    }
    Ok(s)
}

/// `q^s R_st q^s + sum (q - q^{-1}) [q^{-2 Ord/n} e_{-a} (x) e_b - q^{2 Ord/n} e_b (x) e_{-a}]`.
pub fn cg_r(params: CgParams) -> Result<Tensor> {
    let s = cg_s(params)?;
    let ctx = TripleContext::new(&make_cg(params)?);
    let mut t = conjugate_q_s(&quantum_standard(params.n), &s);
    for x in ctx.positive() {
        let e = rat(2 * x.order as i64, params.n as i64);
        let (b0, b1) = x.higher.unit();
        let (a0, a1) = x.lower.neg_unit();
        t.add_entry(idx2(a0, a1, b0, b1), Laurent::q_minus_q_inv().shift(&-e.clone()));
        t.add_entry(idx2(b0, b1, a0, a1), -Laurent::q_minus_q_inv().shift(&e));
    }
    Ok(t)
}

/// Indices `(i, j, k)` with `x = (e_k - e_{i+k-j}, e_i - e_j)`.
fn ijk(x: &TPair) -> (i64, i64, i64) {
    (x.lower.j as i64, x.lower.i as i64, x.higher.i as i64)
}

fn bracket(b: bool) -> Rational {
    rat_int(i64::from(b))
}

#[derive(Clone, Debug, Serialize)]
pub struct AppendixReport {
    pub params: CgParams,
    pub pairs: usize,
    pub checks: Vec<CheckOutcome>,
}

impl AppendixReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }
}

/// Checks `P^s(x) - r(x) = 2 Ord(x) / n` and its indicator decomposition
/// for every positive T-pair of the triple.
pub fn appendix_identity(params: CgParams) -> Result<AppendixReport> {
    let s = cg_s(params)?;
    let ctx = TripleContext::new(&make_cg(params)?);
    let n = params.n as i64;
    let sv = |a: i64, b: i64| s.get(a as usize, b as usize).clone();
    let res = |x: i64| params.res_div(x);

    let mut identity = CheckOutcome::new("ps-minus-r");
    let mut orient = CheckOutcome::new("orientation-preserved");
    let mut ord = CheckOutcome::new("order-residue");
    let mut decomposition = CheckOutcome::new("bracket-decomposition");
    let mut boundary = CheckOutcome::new("half-passed-boundary");
    let mut indicators = CheckOutcome::new("passing-indicators");

    for x in ctx.positive() {
        let (i, j, k) = ijk(x);
        let w = x.weights();
        let r = sv(j, i + k - j) + sv(i, k);
        let ord_x = x.order as i64;

        identity.expect(&w.sym - &r == rat(2 * ord_x, n), || {
            format!("{x}: P^s = {}, r = {}, Ord = {ord_x}", w.sym, r)
        });
        orient.expect(x.reversal == 0, || format!("{x} reverses orientation"));
        ord.expect(res(k - j) == ord_x, || {
            format!("{x}: Res((k-j)/m) = {} but Ord = {ord_x}", res(k - j))
        });

        let half = rat(1, 2);
        let on_left = 2 * j == i + k;
        let on_right = i == k;
        let m_ijk = bracket(!on_left) * bracket(res(k - j) > res(i + k - 2 * j))
            - bracket(!on_right) * bracket(res(k - j) < res(k - i));
        let first = rat_int(1) + &half * bracket(on_left) + &half * bracket(on_right)
            - rat(res(i + k - 2 * j), n)
            - rat(res(k - i), n);
        let second =
            rat_int(1) + &half * bracket(on_left) - &half * bracket(on_right) - rat(2 * res(k - j), n) + &m_ijk;
        decomposition.expect(r == first, || format!("{x}: r = {r}, residue expansion {first}"));
        decomposition.expect(r == second, || format!("{x}: r = {r}, bracket form {second}"));

        boundary.expect(on_right == (x.right == Pass::Half), || {
            format!("{x}: i = k is {on_right} but right passing is {:?}", x.right)
        });
        boundary.expect(on_left == (x.left == Pass::Half), || {
            format!("{x}: 2j = i + k is {on_left} but left passing is {:?}", x.left)
        });
        let lhs = bracket(res(k - j) > res(i + k - 2 * j));
        let rhs = bracket(res(k - j) > res(k - i));
        if !on_left {
            indicators.expect(lhs == w.left, || format!("{x}: left indicator {lhs}, P^l = {}", w.left));
        }
        if !on_right {
            indicators.expect(rhs == w.right, || {
                format!("{x}: right indicator {rhs}, P^r = {}", w.right)
            });
        }
        if !(on_left || on_right) {
            indicators.expect(rat_int(1) + &m_ijk == &lhs + &rhs, || {
                format!(
                    "{x}: 1 + M = {} but the indicators sum to {}",
                    rat_int(1) + &m_ijk,
                    &lhs + &rhs
                )
            });
        }
    }

    Ok(AppendixReport {
        params,
        pairs: ctx.positive().len(),
        checks: vec![identity, orient, ord, decomposition, boundary, indicators],
    })
}

pub fn euler_phi(n: usize) -> usize {
    (1..=n).filter(|&k| n.gcd(&k) == 1).count()
}

/// Enumerated triples omitting exactly one simple root.
pub fn maximal_triples(n: usize) -> Result<Vec<BdTriple>> {
    Ok(enumerate_triples(n)?
        .into_iter()
        .filter(|t| t.gamma1().len() + 2 == n)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{build_r_ggs, hecke_residual, qybe_residual};

    fn p(n: usize, m: usize) -> CgParams {
        CgParams::new(n, m).unwrap()
    }

    #[test]
    fn construction_examples() {
        let t = make_cg(p(3, 1)).unwrap();
        assert_eq!((t.gamma1(), t.gamma2(), t.t(1)), (&[1][..], &[2][..], Some(2)));
        let t = make_cg(p(3, 2)).unwrap();
        assert_eq!((t.gamma1(), t.gamma2(), t.t(2)), (&[2][..], &[1][..], Some(1)));
        assert!(matches!(CgParams::new(4, 2), Err(Error::NotCoprime { n: 4, m: 2 })));
    }

    #[test]
    fn s_for_three_one() {
        let s = cg_s(p(3, 1)).unwrap();
        assert_eq!(*s.get(1, 2), rat(1, 6));
        assert_eq!(*s.get(1, 3), rat(-1, 6));
        assert_eq!(*s.get(2, 3), rat(1, 6));
    }

    #[test]
    fn s_has_trace_zero_first_component() {
        for n in 2..=9 {
            for params in CgParams::all(n) {
                let s = cg_s(params).unwrap();
                for i in 1..=n {
                    let row: Rational = (1..=n).map(|j| s.get(i, j).clone()).sum();
                    assert_eq!(row, rat(0, 1), "{params:?} row {i}");
                }
            }
        }
    }

    #[test]
    fn r_coefficient_example() {
        let r = cg_r(p(3, 1)).unwrap();
        let expected = -Laurent::q_minus_q_inv().shift(&rat(2, 3));
        assert_eq!(r.at(&idx2(2, 3, 2, 1)), expected);
    }

    #[test]
    fn two_one_is_a_quantization() {
        let r = cg_r(p(2, 1)).unwrap();
        assert!(qybe_residual(&r).unwrap().is_zero());
        assert!(hecke_residual(&r).unwrap().is_zero());
    }

    #[test]
    fn r_matches_ggs_small() {
        for n in 2..=5 {
            for params in CgParams::all(n) {
                let ctx = TripleContext::new(&make_cg(params).unwrap());
                let ggs = build_r_ggs(&ctx, &cg_s(params).unwrap()).unwrap();
                assert_eq!(cg_r(params).unwrap(), ggs, "{params:?}");
            }
        }
    }

    #[test]
    fn appendix_example_pair() {
        let params = p(3, 1);
        let s = cg_s(params).unwrap();
        let r = s.get(1, 3) + s.get(2, 2);
        assert_eq!(r, rat(-1, 6));
        let report = appendix_identity(params).unwrap();
        assert_eq!(report.pairs, 1);
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn appendix_sweep_to_nine() {
        for n in 2..=9 {
            for params in CgParams::all(n) {
                let report = appendix_identity(params).unwrap();
                assert!(report.passed(), "{report:?}");
            }
        }
    }

    #[test]
    fn maximal_triples_are_cg() {
        for n in 2..=5 {
            let mut found = maximal_triples(n).unwrap();
            let mut cg: Vec<BdTriple> = CgParams::all(n).into_iter().map(|q| make_cg(q).unwrap()).collect();
            found.sort();
            cg.sort();
            assert_eq!(found, cg);
            assert_eq!(found.len(), euler_phi(n));
        }
    }
}
