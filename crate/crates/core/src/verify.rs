//! Batch verification of the identity checks over sets of triples.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bd::{BdTriple, TripleContext};
use crate::cg::{appendix_identity, cg_s, make_cg, CgParams};
use crate::chains::{chain_scans, eps_combinatorial, expand_jrj, partition_check, quadruple_scans, Convention};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::report::{CheckOutcome, TripleReport};
use crate::s_solver::{check_s, l_space, solve_s, SElement};
use crate::scalar::{rat, Rational};
use crate::tensor::{
    build_classical, build_eps_direct, build_r_ggs, build_r_j, commutator_with_diagonal, ess_bar, hecke_residual,
    quasiclassical_mismatches, qybe_residual, symmetry_commutant_check, ProductOrder, Tensor,
};

/// Nonzero entries quoted per failing residual.
const WITNESS_LIMIT: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Qybe,
    Hecke,
    Equality,
    Epsilon,
    Bijections,
    Chains,
    Partition,
    Quasiclassical,
    Commutant,
    Appendix,
}

impl Check {
    pub const ALL: [Check; 10] = [
        Check::Qybe,
        Check::Hecke,
        Check::Equality,
        Check::Epsilon,
        Check::Bijections,
        Check::Chains,
        Check::Partition,
        Check::Quasiclassical,
        Check::Commutant,
        Check::Appendix,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Qybe => "qybe",
            Check::Hecke => "hecke",
            Check::Equality => "equality",
            Check::Epsilon => "epsilon",
            Check::Bijections => "bijections",
            Check::Chains => "chains",
            Check::Partition => "partition",
            Check::Quasiclassical => "quasiclassical",
            Check::Commutant => "commutant",
            Check::Appendix => "appendix",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown check '{s}'")))
    }
}

/// Which values of `s` each triple is checked with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SMode {
    /// The particular solution of the constraint system.
    Particular,
    /// The closed-form trace-zero `s` of a Cremmer-Gervais triple.
    Cg,
    /// A caller-supplied `s`.
    Given(SElement),
    /// The particular solution plus `count` seeded offsets in the
    /// homogeneous solution space.
    RandomOffset { seed: u64, count: usize },
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub checks: Vec<Check>,
    pub s_mode: SMode,
    pub convention: Convention,
    pub mode: Execution,
}

impl VerifyConfig {
    pub fn new(checks: Vec<Check>) -> Self {
        Self {
            checks,
            s_mode: SMode::Particular,
            convention: Convention::RESOLVED,
            mode: Execution::default(),
        }
    }
}

/// Small random rational with numerator and denominator bounded by 10.
fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-10..=10), rng.gen_range(1..=10))
}

/// Cremmer-Gervais parameters of a triple, if it is one.
pub fn cg_params_of(triple: &BdTriple) -> Option<CgParams> {
    let n = triple.n();
    if triple.gamma2().len() + 2 != n {
        return None;
    }
    let m = (1..n).find(|a| !triple.gamma2().contains(a))?;
    let params = CgParams::new(n, m).ok()?;
    (make_cg(params).ok()? == *triple).then_some(params)
}

/// Labelled values of `s` for one triple.
pub fn s_samples(triple: &BdTriple, s_mode: &SMode) -> Result<Vec<(String, SElement)>> {
    match s_mode {
        SMode::Particular => Ok(vec![("particular".into(), solve_s(triple)?.particular)]),
        SMode::Cg => {
            let params = cg_params_of(triple)
                .ok_or_else(|| Error::Parse(format!("{triple} is not a Cremmer-Gervais triple")))?;
            Ok(vec![(format!("cg({},{})", params.n, params.m), cg_s(params)?)])
        }
        SMode::Given(s) => {
            if s.n() != triple.n() {
                return Err(Error::DimensionMismatch {
                    expected: triple.n(),
                    found: s.n(),
                });
            }
            if !check_s(triple, s) {
                return Err(Error::SNotSolution);
            }
            Ok(vec![("given".into(), s.clone())])
        }
        SMode::RandomOffset { seed, count } => {
            let sol = solve_s(triple)?;
            let mut out = vec![("particular".to_string(), sol.particular.clone())];
            if sol.homogeneous_basis.is_empty() {
                return Ok(out);
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            for k in 1..=*count {
                let coeffs: Vec<Rational> = sol.homogeneous_basis.iter().map(|_| small_rational(&mut rng)).collect();
                out.push((format!("offset-{k}"), sol.combination(&coeffs)));
            }
            Ok(out)
        }
    }
}

fn residual_witness(t: &Tensor) -> String {
    let idx: Vec<String> = t
        .entries()
        .take(WITNESS_LIMIT)
        .map(|(i, v)| format!("{:?} -> {v}", &i[..2 * t.legs()]))
        .collect();
    format!("{} nonzero entries, e.g. {}", t.len(), idx.join("; "))
}

fn diff_witness(a: &Tensor, b: &Tensor) -> String {
    residual_witness(&(a - b))
}

fn prefixed(name: &str, outcome: CheckOutcome) -> CheckOutcome {
    CheckOutcome {
        name: format!("{name}/{}", outcome.name),
        violations: outcome.violations,
    }
}

/// Per-`s` matrices, built once and shared by the checks that need them.
struct Built {
    label: String,
    s: SElement,
    ggs: Tensor,
    rj: Option<Tensor>,
}

/// Runs the selected checks on one triple.
pub fn verify_triple(triple: &BdTriple, config: &VerifyConfig) -> Result<TripleReport> {
    let ctx = TripleContext::new(triple);
    let wants = |c: Check| config.checks.contains(&c);
    let needs_ggs = [
        Check::Qybe,
        Check::Hecke,
        Check::Equality,
        Check::Quasiclassical,
        Check::Commutant,
    ]
    .into_iter()
    .any(wants);
    let needs_rj = wants(Check::Qybe) || wants(Check::Hecke) || wants(Check::Equality);

    let built: Vec<Built> = if needs_ggs {
        s_samples(triple, &config.s_mode)?
            .into_iter()
            .map(|(label, s)| {
                let ggs = build_r_ggs(&ctx, &s)?;
                let rj = if needs_rj { Some(build_r_j(&ctx, &s)?) } else { None };
                Ok(Built { label, s, ggs, rj })
            })
            .collect::<Result<_>>()?
    } else {
        Vec::new()
    };

    let mut report = TripleReport::new(triple.clone());
    let mut sorted = config.checks.clone();
    sorted.sort();
    sorted.dedup();
    for check in sorted {
        match check {
            Check::Qybe | Check::Hecke => {
                let residual = if check == Check::Qybe {
                    qybe_residual
                } else {
                    hecke_residual
                };
                let mut out = CheckOutcome::new(check.name());
                for b in &built {
                    let candidates = [("R_GGS", Some(&b.ggs)), ("R_J", b.rj.as_ref())];
                    for (what, r) in candidates {
                        let Some(r) = r else { continue };
                        let res = residual(r)?;
                        out.expect(res.is_zero(), || {
                            format!("{what}, s = {}: {}", b.label, residual_witness(&res))
                        });
                    }
                }
                report.checks.push(out);
            }
            Check::Equality => {
                let mut out = CheckOutcome::new("equality");
                for b in &built {
                    let rj = b.rj.as_ref().expect("R_J is built for the equality check");
                    out.expect(*rj == b.ggs, || {
                        format!("s = {}: R_J - R_GGS has {}", b.label, diff_witness(rj, &b.ggs))
                    });
                }
                report.checks.push(out);
            }
            Check::Epsilon => {
                let mut out = CheckOutcome::new("epsilon");
                let direct = build_eps_direct(&ctx);
                let combinatorial = eps_combinatorial(&ctx);
                out.expect(direct == combinatorial, || diff_witness(&direct, &combinatorial));
                report.checks.push(out);
            }
            Check::Bijections => {
                for c in quadruple_scans(&ctx, config.convention) {
                    report.checks.push(prefixed("bijections", c));
                }
            }
            Check::Chains => {
                let mut out = CheckOutcome::new("chains/expansion");
                let expanded = expand_jrj(&ctx, config.convention)?;
                let product = ess_bar(&ctx, ProductOrder::default())?;
                out.expect(expanded == product, || diff_witness(&expanded, &product));
                report.checks.push(out);
                for c in chain_scans(&ctx) {
                    report.checks.push(prefixed("chains", c));
                }
            }
            Check::Partition => {
                for c in partition_check(&ctx, config.convention)? {
                    report.checks.push(prefixed("partition", c));
                }
            }
            Check::Quasiclassical => {
                let mut out = CheckOutcome::new("quasiclassical");
                for b in &built {
                    let classical = build_classical(&ctx, &b.s)?;
                    let bad = quasiclassical_mismatches(&b.ggs, &classical.r)?;
                    out.expect(bad.is_empty(), || {
                        let first: Vec<String> = bad
                            .iter()
                            .take(WITNESS_LIMIT)
                            .map(|m| format!("{:?}: {:?} vs {:?}", &m.index[..4], m.expanded, m.expected))
                            .collect();
                        format!(
                            "s = {}: {} entries differ, e.g. {}",
                            b.label,
                            bad.len(),
                            first.join("; ")
                        )
                    });
                }
                report.checks.push(out);
            }
            Check::Commutant => {
                let mut out = CheckOutcome::new("commutant");
                let basis = l_space(triple);
                for b in &built {
                    if !symmetry_commutant_check(&b.ggs, &basis) {
                        for x in &basis {
                            let c = commutator_with_diagonal(&b.ggs, x);
                            out.expect(c.is_zero(), || {
                                let xs: Vec<String> = x.iter().map(|v| v.to_string()).collect();
                                format!("s = {}, x = ({}): {}", b.label, xs.join(", "), residual_witness(&c))
                            });
                        }
                    }
                }
                report.checks.push(out);
            }
            Check::Appendix => {
                if let Some(params) = cg_params_of(triple) {
                    for c in appendix_identity(params)?.checks {
                        report.checks.push(prefixed("appendix", c));
                    }
                }
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub triples: Vec<TripleReport>,
    pub passed: bool,
}

/// Runs [`verify_triple`] on every triple, in parallel when enabled. The
/// report keeps the input order.
pub fn verify_triples(triples: &[BdTriple], config: &VerifyConfig) -> Result<VerifyReport> {
    let results = exec::map(config.mode, triples, |t| verify_triple(t, config));
    let triples = results.into_iter().collect::<Result<Vec<_>>>()?;
    let passed = triples.iter().all(TripleReport::passed);
    Ok(VerifyReport {
        checks: config.checks.clone(),
        triples,
        passed,
    })
}
