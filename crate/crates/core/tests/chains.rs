use ggs_core::bd::{enumerate_triples, BdTriple, PositiveRoot, Sign, TPair, TripleContext, UnitPair};
use ggs_core::chains::*;
use ggs_core::exec::Execution;
use ggs_core::scalar::{rat, Laurent};
use ggs_core::tensor::{build_eps_direct, ess_bar, idx2, ProductOrder, Tensor};
use ggs_core::Error;

fn cg31() -> TripleContext {
    TripleContext::new(&BdTriple::new(3, [(1, 2)]).unwrap())
}

fn unit_tensor(n: usize, u: &UnitPair) -> Tensor {
    let [a, b, c, d] = u.index();
    let mut t = Tensor::zero(n, 2);
    t.add_entry(idx2(a, b, c, d), Laurent::one());
    t
}

#[test]
fn empty_triple_has_only_order_zero_singletons() {
    for n in 2..=5 {
        let ctx = TripleContext::new(&BdTriple::empty(n));
        let chains = outer_chains(&ctx).unwrap();
        assert_eq!(chains.len(), n * (n - 1) / 2);
        for c in &chains {
            assert_eq!(c.len(), 1);
            assert_eq!(c.m(), 0);
            assert_eq!(c.at(1).order, 0);
        }
        assert_eq!(
            expand_jrj(&ctx, Convention::RESOLVED).unwrap(),
            ess_bar(&ctx, ProductOrder::Ascending).unwrap()
        );
    }
}

#[test]
fn cg31_epsilon() {
    let ctx = cg31();
    let mut expected = Tensor::zero(3, 2);
    expected.add_entry(idx2(2, 3, 2, 1), Laurent::constant(rat(-1, 2)));
    expected.add_entry(idx2(2, 1, 2, 3), Laurent::constant(rat(-1, 2)));
    assert_eq!(eps_combinatorial(&ctx), expected);
    assert_eq!(build_eps_direct(&ctx), expected);
}

#[test]
fn psi_r_rejects_half_passed_positive_pair() {
    let ctx = cg31();
    let x = ctx
        .lookup(Sign::Positive, PositiveRoot::simple(1), PositiveRoot::simple(2))
        .unwrap();
    assert!(matches!(psi_r(&ctx, &x), Err(Error::Domain { .. })));
    let neg = ctx
        .lookup(Sign::Negative, PositiveRoot::simple(1), PositiveRoot::simple(2))
        .unwrap();
    assert!(psi_r(&ctx, &neg).is_ok());
}

#[test]
fn phi_then_psi_returns_good_quadruples() {
    for n in 3..=4 {
        for t in enumerate_triples(n).unwrap() {
            let ctx = TripleContext::new(&t);
            for quad in all_quadruples(&ctx) {
                if !quad.good || quad.trend == Trend::Constant {
                    continue;
                }
                if let PhiImage::Quad(u, v) = phi(&ctx, &quad.first, &quad.second).unwrap() {
                    let back = psi(&ctx, &u, &v).unwrap();
                    assert_eq!(back, (quad.first, quad.second), "{t}: {quad}");
                    assert_eq!(product_q(&[u, v]), product_q(&[quad.first, quad.second]));
                }
            }
        }
    }
}

#[test]
fn product_matches_tensor_multiplication() {
    let ctx = TripleContext::new(&BdTriple::new(4, [(1, 2), (2, 3)]).unwrap());
    let pairs: Vec<TPair> = ctx.all_pairs().copied().collect();
    for x in &pairs {
        for y in &pairs {
            let brute = &unit_tensor(4, &x.units()) * &unit_tensor(4, &y.units());
            match product_q(&[*x, *y]) {
                Some(u) => assert_eq!(brute, unit_tensor(4, &u)),
                None => assert!(brute.is_zero()),
            }
            assert_eq!(compatible(x, y), !brute.is_zero());
        }
    }
}

#[test]
fn corrupted_weight_breaks_cancellation() {
    let ctx = TripleContext::new(&BdTriple::new(4, [(1, 2), (2, 3)]).unwrap());
    let clean = partition_check(&ctx, Convention::RESOLVED).unwrap();
    assert!(clean.iter().all(|c| c.passed()), "{clean:?}");

    let victim = outer_chains(&ctx).unwrap().into_iter().find(|c| c.len() >= 2).unwrap();
    let corrupted = |c: &TPChain| {
        let w = chain_weight(c, Convention::RESOLVED);
        if *c == victim {
            w.scale(&rat(2, 1))
        } else {
            w
        }
    };
    let dirty = partition_check_with(&ctx, Convention::RESOLVED, &corrupted).unwrap();
    assert!(dirty.iter().any(|c| !c.passed()));
}

#[test]
fn weights_vanish_to_the_chain_length() {
    for t in enumerate_triples(4).unwrap() {
        let ctx = TripleContext::new(&t);
        for c in outer_chains(&ctx).unwrap() {
            let series = chain_weight(&c, Convention::RESOLVED).expand_hbar(c.len());
            let coeffs = series.coeffs();
            assert!(coeffs[..c.len()].iter().all(|v| *v == rat(0, 1)), "{c}");
            assert_ne!(coeffs[c.len()], rat(0, 1), "{c}");
        }
    }
}

#[test]
fn enumeration_modes_agree() {
    let ctx = TripleContext::new(&BdTriple::new(5, [(1, 2), (2, 3), (3, 4)]).unwrap());
    let seq = outer_chains_with(&ctx, DEFAULT_CHAIN_LIMIT, Execution::Sequential).unwrap();
    let par = outer_chains_with(&ctx, DEFAULT_CHAIN_LIMIT, Execution::Parallel).unwrap();
    assert_eq!(seq, par);
    assert!(matches!(
        outer_chains_with(&ctx, 3, Execution::Sequential),
        Err(Error::ChainLimit { bound: 3 })
    ));
}

#[test]
fn resolver_separates_records_at_five() {
    let res = resolve_conventions(5, Execution::Parallel).unwrap();
    assert_eq!(res.selected, Some(Convention::RESOLVED));
    assert_eq!(res.consistent, vec![Convention::RESOLVED]);
}
