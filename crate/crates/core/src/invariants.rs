//! Δ/Θ quantities, evaluation of registry invariants and the U_1 normal form.

use crate::action::{rho_apply, AdaptedPair};
use crate::algebra::ParamVector;
use crate::error::{Error, Result};
use crate::expr::{Expr, Sym};
use crate::polynomial::Field;
use crate::registry::{Registry, StratumDef};
use crate::scalar::Scalar;

/// Δ_k = α_k + (-1)^k C_{k-2} α_3^{k-2} with C the Catalan numbers.
pub fn delta_coefficient(k: usize) -> i64 {
    let cat = [1i64, 1, 2, 5, 14, 42, 132, 429];
    let c = cat[k - 2];
    if k % 2 == 0 {
        c
    } else {
        -c
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaTheta {
    /// (k, Δ_k) for 4 ≤ k ≤ min(n, 7)
    pub delta: Vec<(usize, Scalar)>,
    /// (k, Θ_k = θ - α_k) for 4 ≤ k ≤ n
    pub theta: Vec<(usize, Scalar)>,
}

impl DeltaTheta {
    pub fn delta(&self, k: usize) -> Option<&Scalar> {
        self.delta.iter().find(|(j, _)| *j == k).map(|(_, v)| v)
    }

    pub fn theta(&self, k: usize) -> Option<&Scalar> {
        self.theta.iter().find(|(j, _)| *j == k).map(|(_, v)| v)
    }
}

pub fn deltas(p: &ParamVector) -> DeltaTheta {
    let n = p.n();
    let a3 = p.alpha(3);
    let delta = (4..=n.min(7))
        .map(|k| {
            let c = Scalar::from_int(delta_coefficient(k));
            (k, p.alpha(k) + &(&c * &a3.pow(k as i32 - 2).expect("nonnegative")))
        })
        .collect();
    let theta = (4..=n).map(|k| (k, p.theta() - p.alpha(k))).collect();
    DeltaTheta { delta, theta }
}

/// Resolves parameter symbols given α_k and θ in any field.
pub fn resolve_param_symbol<F: Field>(
    s: Sym,
    alpha: &mut dyn FnMut(usize) -> Result<F>,
    theta: &mut dyn FnMut() -> Result<F>,
) -> Result<F> {
    match s {
        Sym::Alpha(k) => alpha(k),
        Sym::Theta => theta(),
        Sym::Delta(k) => {
            let a3 = alpha(3)?;
            let c = F::from_scalar(&Scalar::from_int(delta_coefficient(k)));
            Ok(alpha(k)?.add(&c.mul(&a3.powi(k as i32 - 2)?)))
        }
        Sym::ThetaDiff(k) => Ok(theta()?.sub(&alpha(k)?)),
        Sym::Lambda(k) => Err(Error::Registry(format!("family parameter l{k} in a parameter expression"))),
    }
}

/// Evaluates an expression in α, θ, Δ, Θ at p.
pub fn eval_at(e: &Expr, p: &ParamVector) -> Result<Scalar> {
    let n = p.n();
    let mut alpha = |k: usize| -> Result<Scalar> {
        if (3..=n).contains(&k) {
            Ok(p.alpha(k).clone())
        } else {
            Err(Error::IndexOutOfRange { index: k, lo: 3, hi: n })
        }
    };
    let mut theta = || Ok(p.theta().clone());
    e.eval(&mut |s| resolve_param_symbol(s, &mut alpha, &mut theta))
}

pub fn stratum_invariants(stratum: &StratumDef, p: &ParamVector) -> Result<Vec<Scalar>> {
    if p.dim() != stratum.dim {
        return Err(Error::DimensionMismatch { expected: stratum.dim, got: p.dim() });
    }
    // the invariants are only claimed inside the stratum
    for c in &stratum.conditions {
        let zero = eval_at(&c.expr, p)?.is_zero();
        if c.nonzero && zero {
            return Err(Error::DenominatorZero { expr: c.expr.to_string() });
        }
        if !c.nonzero && !zero {
            return Err(Error::InvalidParams(format!("{} requires {} = 0", stratum.id, c.expr.infix())));
        }
    }
    stratum.invariants.iter().map(|e| eval_at(e, p)).collect()
}

/// True when ρ(pair, p) stays in the stratum of p and has the same invariants.
pub fn is_invariant_under_action(reg: &Registry, stratum: &StratumDef, p: &ParamVector, pair: &AdaptedPair) -> Result<bool> {
    let q = rho_apply(pair, p);
    let sp = crate::strata::classify(reg, p)?;
    let sq = crate::strata::classify(reg, &q)?;
    if sp.id != stratum.id || sq.id != stratum.id {
        return Ok(false);
    }
    Ok(stratum_invariants(stratum, p)? == stratum_invariants(stratum, &q)?)
}

/// The distinguished pair x0 = 2α3/Δ4, y0 = α4/(2α3²) of a point in U_1.
pub fn u1_normalising_pair(p: &ParamVector) -> Result<AdaptedPair> {
    let a3 = p.alpha(3);
    let d4 = p.alpha(4) + &(&Scalar::from_int(2) * &(a3 * a3));
    if a3.is_zero() || d4.is_zero() {
        return Err(Error::NotInU1);
    }
    let two = Scalar::from_int(2);
    let x0 = (&two * a3).checked_div(&d4)?;
    let y0 = p.alpha(4).checked_div(&(&two * &(a3 * a3)))?;
    AdaptedPair::from_xy(&x0, &y0)
}

/// Components α'_5, …, α'_n, θ' of ρ at the normalising pair. The first two
/// normalised values are always (1, 0) and are checked here.
pub fn u1_signature(p: &ParamVector) -> Result<Vec<Scalar>> {
    let pair = u1_normalising_pair(p)?;
    let q = rho_apply(&pair, p);
    assert!(q.alpha(3).is_one() && q.alpha(4).is_zero(), "U_1 normalisation failed for {p}");
    Ok(q.slots()[2..].to_vec())
}
