//! Random parameter vectors, pairs and boundary-enriched samples.

use rand::Rng;

use crate::action::AdaptedPair;
use crate::algebra::ParamVector;
use crate::expr::{Expr, Sym};
use crate::invariants::eval_at;
use crate::registry::{Registry, StratumDef};
use crate::scalar::Scalar;
use crate::strata::classify;

/// Small Gaussian rational; the imaginary part is nonzero with probability `complex`.
pub fn random_scalar<R: Rng + ?Sized>(rng: &mut R, complex: f64) -> Scalar {
    let part = |rng: &mut R| Scalar::from_ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4)).expect("nonzero den");
    let re = part(rng);
    if rng.gen_bool(complex) {
        &re + &(&part(rng) * &Scalar::i())
    } else {
        re
    }
}

pub fn random_nonzero_scalar<R: Rng + ?Sized>(rng: &mut R, complex: f64) -> Scalar {
    loop {
        let s = random_scalar(rng, complex);
        if !s.is_zero() {
            return s;
        }
    }
}

pub fn random_params<R: Rng + ?Sized>(rng: &mut R, dim: usize, complex: f64) -> ParamVector {
    let slots = (0..dim - 2).map(|_| random_scalar(rng, complex)).collect();
    ParamVector::from_dim_slots(dim, slots).expect("shape")
}

pub fn random_pair<R: Rng + ?Sized>(rng: &mut R, complex: f64) -> AdaptedPair {
    loop {
        let a = random_nonzero_scalar(rng, complex);
        let b = random_scalar(rng, complex);
        if let Ok(p) = AdaptedPair::new(a, b) {
            return p;
        }
    }
}

/// Highest parameter slot an expression depends on.
pub fn lead_slot(e: &Expr, n: usize) -> Option<usize> {
    e.symbols()
        .into_iter()
        .filter_map(|s| match s {
            Sym::Alpha(k) | Sym::Delta(k) => Some(k - 3),
            Sym::Theta | Sym::ThetaDiff(_) => Some(n - 2),
            Sym::Lambda(_) => None,
        })
        .max()
}

fn with_slot(p: &ParamVector, s: usize, v: Scalar) -> ParamVector {
    let mut slots = p.slots();
    slots[s] = v;
    ParamVector::from_slots(p.n(), slots).expect("shape")
}

/// Moves the lead slot so that `e` vanishes, when `e` is affine and
/// non-constant in that slot.
pub fn force_zero(e: &Expr, p: &ParamVector) -> Option<ParamVector> {
    let s = lead_slot(e, p.n())?;
    let v = p.slot(s).clone();
    let f = |x: Scalar| eval_at(e, &with_slot(p, s, x)).ok();
    let f0 = f(v.clone())?;
    let f1 = f(&v + &Scalar::one())?;
    let f2 = f(&v + &Scalar::from_int(2))?;
    let c = &f1 - &f0;
    if c.is_zero() || &f2 - &f1 != c {
        return None;
    }
    let nv = &v - &f0.checked_div(&c).ok()?;
    Some(with_slot(p, s, nv))
}

/// Distinct predicate expressions of one dimension, ordered by lead slot.
pub fn boundary_expressions(strata: &[StratumDef]) -> Vec<Expr> {
    let mut out: Vec<Expr> = Vec::new();
    for s in strata {
        for c in &s.conditions {
            if !out.contains(&c.expr) {
                out.push(c.expr.clone());
            }
        }
    }
    let n = strata.first().map_or(4, |s| s.dim - 1);
    out.sort_by_key(|e| lead_slot(e, n));
    out
}

/// Random point where a random subset of `exprs` has been forced to vanish.
pub fn boundary_sample<R: Rng + ?Sized>(rng: &mut R, dim: usize, exprs: &[Expr], prob: f64, complex: f64) -> ParamVector {
    let mut p = random_params(rng, dim, complex);
    for e in exprs {
        if rng.gen_bool(prob) {
            if let Some(q) = force_zero(e, &p) {
                p = q;
            }
        }
    }
    p
}

/// Random point whose first-match stratum is `target`, by forcing its zero
/// conditions plus random extra boundaries; None after `attempts` misses.
pub fn sample_in_stratum<R: Rng + ?Sized>(
    rng: &mut R,
    reg: &Registry,
    target: &StratumDef,
    attempts: usize,
    complex: f64,
) -> Option<ParamVector> {
    let all = boundary_expressions(reg.strata(target.dim).ok()?);
    let n = target.dim - 1;
    for _ in 0..attempts {
        let mut forced: Vec<&Expr> = target.conditions.iter().filter(|c| !c.nonzero).map(|c| &c.expr).collect();
        for e in &all {
            if rng.gen_bool(0.2) && !forced.contains(&e) {
                forced.push(e);
            }
        }
        forced.sort_by_key(|e| lead_slot(e, n));
        let mut p = random_params(rng, target.dim, complex);
        for e in forced {
            if let Some(q) = force_zero(e, &p) {
                p = q;
            }
        }
        if classify(reg, &p).map(|s| s.id == target.id).unwrap_or(false) {
            return Some(p);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn forcing_zeroes_expression() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let e = Expr::parse("(+ D6 (* 6 a3 D5))").unwrap();
        for _ in 0..20 {
            let p = random_params(&mut rng, 8, 0.3);
            let q = force_zero(&e, &p).unwrap();
            assert!(eval_at(&e, &q).unwrap().is_zero());
            assert_eq!(p.slots()[..3], q.slots()[..3]);
        }
    }

    #[test]
    fn every_stratum_can_be_sampled() {
        let reg = Registry::bundled();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for d in reg.dims() {
            for s in reg.strata(d).unwrap() {
                assert!(sample_in_stratum(&mut rng, reg, s, 500, 0.2).is_some(), "dim {d} {}", s.id);
            }
        }
    }
}
