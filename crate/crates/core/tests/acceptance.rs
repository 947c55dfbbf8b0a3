//! Acceptance suite: one test per criterion, each printing a PASS or FAIL
//! line. Every comparison is an exact equality of rational data.

use ggs_core::bd::{enumerate_triples, BdTriple, TripleContext};
use ggs_core::cg::{appendix_identity, cg_r, cg_s, euler_phi, make_cg, maximal_triples, CgParams};
use ggs_core::chains::{
    all_quadruples, chain_scans, eps_combinatorial, expand_jrj, partition_check, quadruple_scans, resolve_conventions,
    scan_bijections, Convention,
};
use ggs_core::exec::Execution;
use ggs_core::report::CheckOutcome;
use ggs_core::s_solver::{l_space, SElement};
use ggs_core::tensor::{
    build_classical, build_eps_direct, build_r_ggs, build_r_j, build_r_j_with, build_twist, commutator_with_diagonal,
    hecke_residual, quantum_standard, quasiclassical_mismatches, qybe_residual, ProductOrder, Tensor,
};
use ggs_core::verify::{s_samples, SMode};

/// Seed for the random homogeneous offsets of `s`.
const OFFSET_SEED: u64 = 20_240_917;
const OFFSET_COUNT: usize = 3;
/// Residuals and differences must be the empty tensor.
const TOLERANCE: &str = "exact";

fn triples_up_to(max_n: usize) -> Vec<BdTriple> {
    (2..=max_n).flat_map(|n| enumerate_triples(n).unwrap()).collect()
}

fn samples(t: &BdTriple) -> Vec<(String, SElement)> {
    s_samples(
        t,
        &SMode::RandomOffset {
            seed: OFFSET_SEED,
            count: OFFSET_COUNT,
        },
    )
    .unwrap()
}

fn verdict(number: u32, title: &str, cases: usize, failures: &[String]) {
    if failures.is_empty() {
        println!("PASS #{number} {title} ({cases} cases, tolerance {TOLERANCE})");
    } else {
        println!("FAIL #{number} {title} ({} of {cases} cases fail)", failures.len());
        for f in failures.iter().take(10) {
            println!("    {f}");
        }
    }
    assert!(failures.is_empty(), "criterion {number} failed");
}

fn outcome_failures(t: &BdTriple, outcomes: &[CheckOutcome]) -> Vec<String> {
    outcomes
        .iter()
        .filter(|c| !c.passed())
        .map(|c| format!("{t} [{}]: {}", c.name, c.violations[0]))
        .collect()
}

#[test]
fn criterion_01_ggs_quantizes() {
    let mut failures = Vec::new();
    let mut cases = 0;
    for t in triples_up_to(4) {
        let ctx = TripleContext::new(&t);
        for (label, s) in samples(&t) {
            cases += 1;
            let r = build_r_ggs(&ctx, &s).unwrap();
            if !qybe_residual(&r).unwrap().is_zero() {
                failures.push(format!("{t}, s = {label}: QYBE residual nonzero"));
            }
            if !hecke_residual(&r).unwrap().is_zero() {
                failures.push(format!("{t}, s = {label}: Hecke residual nonzero"));
            }
        }
    }
    verdict(1, "R_GGS satisfies QYBE and Hecke, n <= 4", cases, &failures);
}

#[test]
fn criterion_02_twisted_equals_ggs() {
    assert_eq!(ProductOrder::default(), ProductOrder::Ascending);
    let mut failures = Vec::new();
    let mut cases = 0;
    for t in triples_up_to(4) {
        let ctx = TripleContext::new(&t);
        for (label, s) in samples(&t) {
            cases += 1;
            if build_r_j(&ctx, &s).unwrap() != build_r_ggs(&ctx, &s).unwrap() {
                failures.push(format!("{t}, s = {label}: R_J != R_GGS"));
            }
        }
    }
    let reversed = triples_up_to(4)
        .iter()
        .filter(|t| {
            let ctx = TripleContext::new(t);
            let s = &samples(t)[0].1;
            build_r_j_with(&ctx, s, ProductOrder::Descending).unwrap() != build_r_ggs(&ctx, s).unwrap()
        })
        .count();
    println!("    J = ... J_2 J_1 would differ from R_GGS on {reversed} triples");
    verdict(
        2,
        "R_J = R_GGS entrywise with J = J_1 J_2 ..., n <= 4",
        cases,
        &failures,
    );
}

#[test]
fn criterion_03_twisted_quantizes() {
    let mut failures = Vec::new();
    let mut cases = 0;
    for t in triples_up_to(4) {
        let ctx = TripleContext::new(&t);
        for (label, s) in samples(&t) {
            cases += 1;
            let r = build_r_j(&ctx, &s).unwrap();
            if !qybe_residual(&r).unwrap().is_zero() {
                failures.push(format!("{t}, s = {label}: QYBE residual of R_J nonzero"));
            }
            if !hecke_residual(&r).unwrap().is_zero() {
                failures.push(format!("{t}, s = {label}: Hecke residual of R_J nonzero"));
            }
        }
    }
    verdict(3, "R_J satisfies QYBE and Hecke, n <= 4", cases, &failures);
}

#[test]
fn criterion_04_epsilon_formula() {
    let triples = triples_up_to(5);
    let failures: Vec<String> = triples
        .iter()
        .filter(|t| {
            let ctx = TripleContext::new(t);
            build_eps_direct(&ctx) != eps_combinatorial(&ctx)
        })
        .map(|t| format!("{t}: direct and combinatorial epsilon differ"))
        .collect();
    verdict(
        4,
        "epsilon by products = epsilon by T-pairs, n <= 5",
        triples.len(),
        &failures,
    );
}

/// `J^{-1} R_st J^{21}` by explicit tensor products.
fn twisted_product(ctx: &TripleContext) -> Tensor {
    let tw = build_twist(ctx, ProductOrder::default()).unwrap();
    let r_st = quantum_standard(ctx.n());
    let left = tw.j_inv.try_mul(&r_st).unwrap();
    left.try_mul(&tw.j.flip().unwrap()).unwrap()
}

#[test]
fn criterion_05_chain_expansion() {
    let mut failures = Vec::new();
    let triples = triples_up_to(4);
    for t in &triples {
        let ctx = TripleContext::new(t);
        if expand_jrj(&ctx, Convention::RESOLVED).unwrap() != twisted_product(&ctx) {
            failures.push(format!("{t}: chain expansion differs from J^-1 R_st J^21"));
        }
    }
    let small = resolve_conventions(3, Execution::Parallel).unwrap();
    let tallies: Vec<String> = small
        .tallies
        .iter()
        .map(|t| format!("({}): {}", t.convention, t.mismatches))
        .collect();
    println!(
        "    resolver, n <= 3, mismatching triples per record: {}",
        tallies.join("; ")
    );
    if small.consistent.len() != 1 {
        failures.push(format!(
            "resolver over n <= 3 finds {} consistent records, not exactly one",
            small.consistent.len()
        ));
    }
    if small.consistent.first() != Some(&Convention::RESOLVED) {
        failures.push("frozen record is not consistent over n <= 3".into());
    }
    verdict(
        5,
        "chain expansion under the resolved record, n <= 4",
        triples.len() + 1,
        &failures,
    );
}

#[test]
fn criterion_06_quadruple_bijections() {
    let mut failures = Vec::new();
    let mut cases = 0;
    for t in triples_up_to(5) {
        let ctx = TripleContext::new(&t);
        let quads = all_quadruples(&ctx);
        cases += quads.len();
        let outcome = scan_bijections(&ctx, &quads, Convention::RESOLVED);
        failures.extend(outcome_failures(&t, &[outcome]));
    }
    verdict(6, "phi/psi, phi/psi^r, phi/psi^l round trips, n <= 5", cases, &failures);
}

#[test]
fn criterion_07_partition_and_cancellation() {
    let mut failures = Vec::new();
    let triples = triples_up_to(4);
    for t in &triples {
        let ctx = TripleContext::new(t);
        failures.extend(outcome_failures(
            t,
            &partition_check(&ctx, Convention::RESOLVED).unwrap(),
        ));
    }
    verdict(
        7,
        "outer chains partition into cancelling blocks, n <= 4",
        triples.len(),
        &failures,
    );
}

#[test]
fn criterion_08_cremmer_gervais() {
    let mut failures = Vec::new();
    let mut cases = 0;
    for n in 2..=7 {
        for p in CgParams::all(n) {
            cases += 1;
            let ctx = TripleContext::new(&make_cg(p).unwrap());
            let ggs = build_r_ggs(&ctx, &cg_s(p).unwrap()).unwrap();
            if cg_r(p).unwrap() != ggs {
                failures.push(format!("({}, {}): closed form differs from R_GGS", p.n, p.m));
            }
        }
    }
    for n in 2..=6 {
        cases += 1;
        let found = maximal_triples(n).unwrap().len();
        if found != euler_phi(n) {
            failures.push(format!("n = {n}: {found} maximal triples, phi(n) = {}", euler_phi(n)));
        }
    }
    verdict(
        8,
        "Cremmer-Gervais closed form (n <= 7) and count (n <= 6)",
        cases,
        &failures,
    );
}

#[test]
fn criterion_09_appendix_identity() {
    let mut failures = Vec::new();
    let mut cases = 0;
    for n in 2..=9 {
        for p in CgParams::all(n) {
            let report = appendix_identity(p).unwrap();
            cases += report.pairs;
            let t = make_cg(p).unwrap();
            failures.extend(outcome_failures(&t, &report.checks));
        }
    }
    verdict(
        9,
        "P^s - r = 2 Ord / n with its bracket decomposition, n <= 9",
        cases,
        &failures,
    );
}

#[test]
fn criterion_10_quasiclassical_limit() {
    let mut failures = Vec::new();
    let mut cases = 0;
    for t in triples_up_to(4) {
        let ctx = TripleContext::new(&t);
        for (label, s) in samples(&t) {
            cases += 1;
            let r = build_r_ggs(&ctx, &s).unwrap();
            let classical = build_classical(&ctx, &s).unwrap();
            let bad = quasiclassical_mismatches(&r, &classical.r).unwrap();
            if let Some(m) = bad.first() {
                failures.push(format!(
                    "{t}, s = {label}: {} entries differ, first at {:?}",
                    bad.len(),
                    &m.index[..4]
                ));
            }
        }
    }
    verdict(10, "R_GGS = 1 + 2h r + 2h^2 r^2 + O(h^3), n <= 4", cases, &failures);
}

#[test]
fn criterion_11_lemma_scans() {
    let mut failures = Vec::new();
    let mut cases = 0;
    for t in triples_up_to(5) {
        let ctx = TripleContext::new(&t);
        let mut outcomes = quadruple_scans(&ctx, Convention::RESOLVED);
        if t.n() <= 4 {
            outcomes.extend(chain_scans(&ctx));
        }
        cases += outcomes.len();
        failures.extend(outcome_failures(&t, &outcomes));
    }
    verdict(
        11,
        "quadruple lemmas (n <= 5) and chain lemmas (n <= 4)",
        cases,
        &failures,
    );
}

#[test]
fn criterion_12_commutant_symmetry() {
    let mut failures = Vec::new();
    let mut cases = 0;
    for t in triples_up_to(4) {
        let ctx = TripleContext::new(&t);
        let basis = l_space(&t);
        for (label, s) in samples(&t) {
            let r = build_r_ggs(&ctx, &s).unwrap();
            for x in &basis {
                cases += 1;
                if !commutator_with_diagonal(&r, x).is_zero() {
                    failures.push(format!("{t}, s = {label}: [1 (x) x + x (x) 1, R] != 0 for x = {x:?}"));
                }
            }
        }
    }
    verdict(
        12,
        "R_GGS commutes with 1 (x) x + x (x) 1 for x in l, n <= 4",
        cases,
        &failures,
    );
}
