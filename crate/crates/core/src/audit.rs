//! Seeded, boundary-enriched audit of the stratum partition, plus the
//! comparison of the two θ' forms against the group law and the
//! structure-level transport.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::action::{compose_pairs, rho_apply_transport, rho_apply_with, AdaptedPair, ThetaForm};
use crate::algebra::ParamVector;
use crate::error::{Error, Result};
use crate::invariants::{eval_at, stratum_invariants};
use crate::registry::Registry;
use crate::sampling::{boundary_expressions, boundary_sample, random_pair, random_params};

#[derive(Clone, Debug)]
pub struct AuditConfig {
    pub samples: usize,
    pub seed: u64,
    /// Probability of forcing each boundary expression to vanish.
    pub boundary_prob: f64,
    /// Probability of a nonzero imaginary part in each sampled value.
    pub complex_prob: f64,
    pub max_examples: usize,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig { samples: 100_000, seed: 0, boundary_prob: 0.5, complex_prob: 0.2, max_examples: 5 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Finding {
    pub count: usize,
    pub examples: Vec<ParamVector>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OverlapFinding {
    /// Every stratum whose predicate holds, in registry order.
    pub strata: Vec<String>,
    /// Stratum chosen by first match.
    pub resolved_to: String,
    pub count: usize,
    pub examples: Vec<ParamVector>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FormCheck {
    pub form: ThetaForm,
    pub samples: usize,
    pub identity_failures: usize,
    pub composition_failures: usize,
    pub transport_failures: usize,
}

impl FormCheck {
    pub fn passes(&self) -> bool {
        self.identity_failures == 0 && self.composition_failures == 0 && self.transport_failures == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ThetaArbitration {
    pub checks: Vec<FormCheck>,
    /// The single form that satisfies every check, if any.
    pub verdict: Option<ThetaForm>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub dim: usize,
    pub samples: usize,
    pub seed: u64,
    pub registry_version: u32,
    pub counts: BTreeMap<String, usize>,
    pub gaps: Finding,
    pub overlaps: Vec<OverlapFinding>,
    /// Points whose first-match stratum has an invariant with vanishing denominator.
    pub undefined_invariants: BTreeMap<String, Finding>,
    pub theta_arbitration: ThetaArbitration,
}

impl AuditReport {
    pub fn is_clean(&self) -> bool {
        self.gaps.count == 0 && self.overlaps.is_empty() && self.undefined_invariants.is_empty()
    }
}

enum Outcome {
    Gap,
    Hit { matched: Vec<String>, undefined: bool },
}

fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn audit_partition(reg: &Registry, dim: usize, cfg: &AuditConfig) -> Result<AuditReport> {
    let strata = reg.strata(dim)?;
    let exprs = boundary_expressions(strata);
    // conditions as (expression index, must be nonzero), so each expression
    // is evaluated once per sample
    let compiled: Vec<Vec<(usize, bool)>> = strata
        .iter()
        .map(|s| {
            s.conditions
                .iter()
                .map(|c| (exprs.iter().position(|e| *e == c.expr).expect("collected"), c.nonzero))
                .collect()
        })
        .collect();
    let results: Vec<(usize, ParamVector, Outcome)> = (0..cfg.samples)
        .into_par_iter()
        .map(|i| -> Result<(usize, ParamVector, Outcome)> {
            let mut rng = sample_rng(cfg.seed, i as u64);
            // one sample in five is unconstrained
            let p = if i % 5 == 0 {
                random_params(&mut rng, dim, cfg.complex_prob)
            } else {
                boundary_sample(&mut rng, dim, &exprs, cfg.boundary_prob, cfg.complex_prob)
            };
            let zero = exprs.iter().map(|e| Ok(eval_at(e, &p)?.is_zero())).collect::<Result<Vec<bool>>>()?;
            let matched: Vec<usize> = (0..strata.len())
                .filter(|&s| compiled[s].iter().all(|&(e, nonzero)| zero[e] != nonzero))
                .collect();
            let outcome = match matched.first() {
                None => Outcome::Gap,
                Some(&first) => Outcome::Hit {
                    undefined: matches!(stratum_invariants(&strata[first], &p), Err(Error::DenominatorZero { .. })),
                    matched: matched.iter().map(|&s| strata[s].id.clone()).collect(),
                },
            };
            Ok((i, p, outcome))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut counts: BTreeMap<String, usize> = strata.iter().map(|s| (s.id.clone(), 0)).collect();
    let mut gaps = Finding { count: 0, examples: Vec::new() };
    let mut overlaps: BTreeMap<Vec<String>, OverlapFinding> = BTreeMap::new();
    let mut undefined: BTreeMap<String, Finding> = BTreeMap::new();
    for (_, p, outcome) in results {
        match outcome {
            Outcome::Gap => {
                gaps.count += 1;
                if gaps.examples.len() < cfg.max_examples {
                    gaps.examples.push(p);
                }
            }
            Outcome::Hit { matched, undefined: undef } => {
                let first = matched[0].clone();
                *counts.get_mut(&first).expect("known stratum") += 1;
                if matched.len() > 1 {
                    let o = overlaps.entry(matched.clone()).or_insert_with(|| OverlapFinding {
                        strata: matched.clone(),
                        resolved_to: first.clone(),
                        count: 0,
                        examples: Vec::new(),
                    });
                    o.count += 1;
                    if o.examples.len() < cfg.max_examples {
                        o.examples.push(p.clone());
                    }
                }
                if undef {
                    let f = undefined.entry(first).or_insert_with(|| Finding { count: 0, examples: Vec::new() });
                    f.count += 1;
                    if f.examples.len() < cfg.max_examples {
                        f.examples.push(p);
                    }
                }
            }
        }
    }
    Ok(AuditReport {
        dim,
        samples: cfg.samples,
        seed: cfg.seed,
        registry_version: reg.version,
        counts,
        gaps,
        overlaps: overlaps.into_values().collect(),
        undefined_invariants: undefined,
        theta_arbitration: arbitrate_theta(&[dim], 50, cfg.seed),
    })
}

fn check_form(form: ThetaForm, dims: &[usize], samples: usize, seed: u64) -> FormCheck {
    let mut check = FormCheck { form, samples: 0, identity_failures: 0, composition_failures: 0, transport_failures: 0 };
    for &dim in dims {
        for i in 0..samples {
            let mut rng = sample_rng(seed ^ 0x9e37_79b9, (dim * samples + i) as u64);
            let p = random_params(&mut rng, dim, 0.2);
            let g = random_pair(&mut rng, 0.2);
            let h = random_pair(&mut rng, 0.2);
            let rho = |pair: &AdaptedPair, q: &ParamVector| rho_apply_with(pair, q, form);
            check.samples += 1;
            if rho(&AdaptedPair::identity(), &p) != p {
                check.identity_failures += 1;
            }
            if rho(&h, &rho(&g, &p)) != rho(&compose_pairs(&h, &g), &p) {
                check.composition_failures += 1;
            }
            if rho_apply_transport(&g, &p).ok() != Some(rho(&g, &p)) {
                check.transport_failures += 1;
            }
        }
    }
    check
}

/// Runs both θ' forms through the identity and composition laws and the
/// transport comparison.
pub fn arbitrate_theta(dims: &[usize], samples_per_dim: usize, seed: u64) -> ThetaArbitration {
    let checks: Vec<FormCheck> = [ThetaForm::Standard, ThetaForm::ScaledCorrection]
        .into_iter()
        .map(|f| check_form(f, dims, samples_per_dim, seed))
        .collect();
    let passing: Vec<ThetaForm> = checks.iter().filter(|c| c.passes()).map(|c| c.form).collect();
    let verdict = if passing.len() == 1 { Some(passing[0]) } else { None };
    ThetaArbitration { checks, verdict }
}
