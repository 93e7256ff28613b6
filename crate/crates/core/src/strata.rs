//! Stratum membership, classification and canonical representatives.

use crate::algebra::ParamVector;
use crate::error::{Error, Result};
use crate::expr::Sym;
use crate::invariants::{eval_at, resolve_param_symbol, stratum_invariants};
use crate::polynomial::{Field, RatFn};
use crate::registry::{Family, Registry, StratumDef};
use crate::scalar::Scalar;

pub fn enumerate_strata(reg: &Registry, dim: usize) -> Result<&[StratumDef]> {
    reg.strata(dim)
}

/// Literal predicate test.
pub fn matches(stratum: &StratumDef, p: &ParamVector) -> Result<bool> {
    if p.dim() != stratum.dim {
        return Ok(false);
    }
    for c in &stratum.conditions {
        if eval_at(&c.expr, p)?.is_zero() == c.nonzero {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every stratum whose predicate holds at p, in registry order.
pub fn matching_strata<'r>(reg: &'r Registry, p: &ParamVector) -> Result<Vec<&'r StratumDef>> {
    let mut out = Vec::new();
    for s in reg.strata(p.dim())? {
        if matches(s, p)? {
            out.push(s);
        }
    }
    Ok(out)
}

/// First matching stratum.
pub fn classify<'r>(reg: &'r Registry, p: &ParamVector) -> Result<&'r StratumDef> {
    for s in reg.strata(p.dim())? {
        if matches(s, p)? {
            return Ok(s);
        }
    }
    Err(Error::Unclassifiable { dim: p.dim() })
}

fn family_env_value<F: Field>(
    family: &Family,
    n: usize,
    slot: usize,
    lambda: &mut dyn FnMut(usize) -> Result<F>,
) -> Result<F> {
    family.params[slot].eval(&mut |s| match s {
        Sym::Lambda(k) => lambda(k),
        other => Err(Error::Registry(format!("symbol {other} in family of n = {n}"))),
    })
}

pub fn instantiate_family(family: &Family, dim: usize, lambdas: &[Scalar]) -> Result<ParamVector> {
    let n = dim - 1;
    let mut lam = |k: usize| -> Result<Scalar> {
        lambdas.get(k - 1).cloned().ok_or_else(|| Error::InvalidParams(format!("missing value for l{k}")))
    };
    let slots = (0..n - 1).map(|s| family_env_value(family, n, s, &mut lam)).collect::<Result<Vec<_>>>()?;
    ParamVector::from_slots(n, slots)
}

/// True when the family is evaluated at an excluded parameter value.
pub fn family_avoided(family: &Family, lambdas: &[Scalar]) -> Result<bool> {
    for e in &family.avoid {
        let v: Scalar = e.eval(&mut |s| match s {
            Sym::Lambda(k) => {
                lambdas.get(k - 1).cloned().ok_or_else(|| Error::InvalidParams(format!("missing value for l{k}")))
            }
            other => Err(Error::Registry(format!("symbol {other} in avoid list"))),
        })?;
        if v.is_zero() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Solves invariant_j(family(λ)) = targets_j for λ_1, λ_2, … in turn.
/// Each equation must become linear in the fresh λ once earlier ones are fixed.
pub fn solve_family(stratum: &StratumDef, family: &Family, targets: &[Scalar]) -> Result<Vec<Scalar>> {
    let n = stratum.dim - 1;
    let fail = |reason: String| Error::ReconstructionFailure { id: stratum.id.clone(), reason };
    let mut solved: Vec<Scalar> = Vec::new();
    for (j, (inv, target)) in stratum.invariants.iter().zip(targets).enumerate() {
        // later λ may appear and cancel; evaluate at two probe values and
        // require the same result
        let probes = [Scalar::from_ratio(3, 7)?, Scalar::from_ratio(-11, 5)?];
        let vals = probes
            .iter()
            .map(|later| {
                let lambda = |k: usize| -> RatFn {
                    match (k - 1).cmp(&j) {
                        std::cmp::Ordering::Less => RatFn::from_scalar(&solved[k - 1]),
                        std::cmp::Ordering::Equal => RatFn::x(),
                        std::cmp::Ordering::Greater => RatFn::from_scalar(later),
                    }
                };
                let mut alpha = |k: usize| family_env_value(family, n, k - 3, &mut |k| Ok(lambda(k)));
                let mut theta = || family_env_value(family, n, n - 2, &mut |k| Ok(lambda(k)));
                inv.eval::<RatFn>(&mut |s| resolve_param_symbol(s, &mut alpha, &mut theta))
            })
            .collect::<Result<Vec<RatFn>>>()
            .map_err(|e| fail(format!("invariant {} on the family: {e}", j + 1)))?;
        if vals[0] != vals[1] {
            return Err(fail(format!("invariant {} depends on later parameters", j + 1)));
        }
        let val = &vals[0];
        let eq = val.num().sub(&val.den().scale(target));
        match eq.degree() {
            None => return Err(fail(format!("invariant {} does not depend on l{}", j + 1, j + 1))),
            Some(0) => return Err(fail(format!("value {target} of invariant {} is not attained", j + 1))),
            Some(1) => {
                let c = eq.coeffs();
                solved.push((-&c[0]).checked_div(&c[1]).expect("nonzero leading coefficient"));
            }
            Some(d) => return Err(fail(format!("invariant {} has degree {d} in l{}", j + 1, j + 1))),
        }
    }
    Ok(solved)
}

/// Representative of the orbit of p inside its stratum's normal-form family.
pub fn canonical_representative(reg: &Registry, p: &ParamVector) -> Result<ParamVector> {
    let stratum = classify(reg, p)?;
    let targets = stratum_invariants(stratum, p)?;
    let family = stratum.canonical_family();
    let lambdas = solve_family(stratum, family, &targets)?;
    let rep = instantiate_family(family, stratum.dim, &lambdas)?;
    let fail = |reason: &str| Error::ReconstructionFailure { id: stratum.id.clone(), reason: reason.to_string() };
    if classify(reg, &rep).map_err(|_| fail("representative is unclassifiable"))?.id != stratum.id {
        return Err(fail("representative left the stratum"));
    }
    if stratum_invariants(stratum, &rep).map_err(|_| fail("representative has undefined invariants"))? != targets {
        return Err(fail("representative has different invariants"));
    }
    Ok(rep)
}

/// Same stratum and equal invariants.
pub fn is_isomorphic(reg: &Registry, p: &ParamVector, q: &ParamVector) -> Result<bool> {
    if p.dim() != q.dim() {
        return Ok(false);
    }
    let sp = classify(reg, p)?;
    let sq = classify(reg, q)?;
    if sp.id != sq.id {
        return Ok(false);
    }
    Ok(stratum_invariants(sp, p)? == stratum_invariants(sq, q)?)
}
