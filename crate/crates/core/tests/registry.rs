use std::collections::BTreeMap;

use filiform::invariants::{u1_normalising_pair, u1_signature};
use filiform::sampling::{random_params, sample_in_stratum};
use filiform::strata::{family_avoided, instantiate_family, solve_family};
use filiform::tables::classification_entry;
use filiform::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SWEEP: [(i64, i64); 5] = [(0, 1), (1, 1), (-1, 1), (2, 1), (7, 3)];

fn sweep_points(arity: usize) -> Vec<Vec<Scalar>> {
    let mut pts = vec![vec![]];
    for _ in 0..arity {
        pts = pts
            .into_iter()
            .flat_map(|p: Vec<Scalar>| {
                SWEEP.iter().map(move |&(a, b)| {
                    let mut q = p.clone();
                    q.push(Scalar::from_ratio(a, b).unwrap());
                    q
                })
            })
            .collect();
    }
    pts
}

#[test]
fn families_lie_in_their_strata() {
    let reg = Registry::bundled();
    for d in reg.dims() {
        for s in reg.strata(d).unwrap() {
            for fam in [&s.family, s.canonical_family()] {
                for lam in sweep_points(fam.arity()) {
                    if family_avoided(fam, &lam).unwrap() {
                        continue;
                    }
                    let p = instantiate_family(fam, d, &lam).unwrap();
                    assert_eq!(classify(reg, &p).unwrap().id, s.id, "dim {d} at {p}");
                }
            }
        }
    }
}

/// At an avoided value the family leaves the stratum or its invariants break down,
/// so the avoid lists are not padded.
#[test]
fn avoided_values_leave_the_stratum() {
    let reg = Registry::bundled();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    for d in reg.dims() {
        for s in reg.strata(d).unwrap() {
            let fam = &s.family;
            if fam.arity() == 0 {
                continue;
            }
            for (e, avoid) in fam.avoid.iter().enumerate() {
                // avoid expressions are affine in the last λ they use
                let k = avoid
                    .symbols()
                    .into_iter()
                    .filter_map(|sym| match sym {
                        expr::Sym::Lambda(k) => Some(k),
                        _ => None,
                    })
                    .max()
                    .unwrap();
                let mut lam: Vec<Scalar> = (0..fam.arity()).map(|_| Scalar::from_int(rng.gen_range(-5..=5))).collect();
                let at = |lam: &[Scalar]| {
                    let env: BTreeMap<usize, Scalar> = lam.iter().cloned().enumerate().map(|(i, v)| (i + 1, v)).collect();
                    filiform::tables::eval_in_lambdas(avoid, &env).unwrap()
                };
                let f0 = at(&lam);
                lam[k - 1] = &lam[k - 1] + &Scalar::one();
                let f1 = at(&lam);
                let slope = &f1 - &f0;
                if slope.is_zero() {
                    continue;
                }
                lam[k - 1] = &lam[k - 1] - &f1.checked_div(&slope).unwrap();
                if !at(&lam).is_zero() {
                    continue;
                }
                let p = instantiate_family(fam, d, &lam).unwrap();
                let c = classify(reg, &p).map(|t| t.id.clone()).unwrap_or_default();
                let undefined = matches!(stratum_invariants(s, &p), Err(Error::DenominatorZero { .. }));
                assert!(c != s.id || undefined, "dim {d} {} avoid #{e} at {p}", s.id);
                checked += 1;
            }
        }
    }
    assert!(checked > 10);
}

#[test]
fn solver_recovers_family_parameters() {
    let reg = Registry::bundled();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for d in reg.dims() {
        for s in reg.strata(d).unwrap() {
            let fam = s.canonical_family();
            for _ in 0..10 {
                let lam: Vec<Scalar> =
                    (0..fam.arity()).map(|_| Scalar::from_ratio(rng.gen_range(-20..=20), rng.gen_range(1..=3)).unwrap()).collect();
                if family_avoided(fam, &lam).unwrap() {
                    continue;
                }
                let p = instantiate_family(fam, d, &lam).unwrap();
                let inv = stratum_invariants(s, &p).unwrap();
                assert_eq!(solve_family(s, fam, &inv).unwrap(), lam, "dim {d} {}", s.id);
            }
        }
    }
}

#[test]
fn u1_normal_form_matches_signature() {
    let reg = Registry::bundled();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for d in reg.dims() {
        let u1 = reg.stratum(d, "U_1").unwrap();
        for _ in 0..30 {
            let p = sample_in_stratum(&mut rng, reg, u1, 100, 0.2).unwrap();
            let c = canonical_representative(reg, &p).unwrap();
            let slots = c.slots();
            assert_eq!(slots[0], Scalar::one());
            assert!(slots[1].is_zero());
            assert_eq!(slots[2..].to_vec(), u1_signature(&p).unwrap());
            assert_eq!(rho_apply(&u1_normalising_pair(&p).unwrap(), &p), c);
        }
    }
}

#[test]
fn spot_values() {
    let reg = Registry::bundled();
    let pv = |s: &[&str]| ParamVector::from_dim_slots(s.len() + 2, s.iter().map(|x| Scalar::parse(x).unwrap()).collect()).unwrap();
    let inv = |d: usize, id: &str, p: &ParamVector| stratum_invariants(reg.stratum(d, id).unwrap(), p);
    assert_eq!(inv(5, "U_1", &pv(&["1", "0", "3"])).unwrap(), vec![Scalar::from_ratio(3, 4).unwrap()]);
    assert_eq!(inv(6, "U_3", &pv(&["0", "1", "1", "9/2"])).unwrap(), vec![Scalar::from_ratio(7, 2).unwrap()]);
    assert!(matches!(inv(5, "U_1", &pv(&["0", "1", "0"])), Err(Error::DenominatorZero { .. })));
    assert_eq!(classify(reg, &pv(&["0"; 6])).unwrap().id, "U_25");
    assert_eq!(classify(reg, &pv(&["1", "0", "5"])).unwrap().id, "U_1");
    let q = pv(&["1", "-2", "7", "9"]);
    let dt = deltas(&q);
    assert!(dt.delta(4).unwrap().is_zero());
    assert_eq!(dt.delta(5).unwrap(), &Scalar::from_int(2));
    assert_eq!(dt.theta(5).unwrap(), &Scalar::from_int(2));
    assert!(matches!(enumerate_strata(reg, 9), Err(Error::UnsupportedDimension(9))));
}

#[test]
fn dim7_bottom_stratum_canonical() {
    let reg = Registry::bundled();
    let s = reg.stratum(7, "U_17").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let p = sample_in_stratum(&mut rng, reg, s, 100, 0.2).unwrap();
    assert_eq!(canonical_representative(reg, &p).unwrap().slots(), vec![Scalar::zero(); 5]);
}

#[test]
fn classification_entries_are_pairwise_distinct() {
    let reg = Registry::bundled();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for d in reg.dims() {
        let mut pts: Vec<(String, ParamVector)> = Vec::new();
        for (i, s) in reg.strata(d).unwrap().iter().enumerate() {
            for _ in 0..2 {
                loop {
                    let lam: BTreeMap<usize, Scalar> = (1..=s.family.arity())
                        .map(|k| (k, Scalar::from_ratio(rng.gen_range(-30..=30), rng.gen_range(1..=7)).unwrap()))
                        .collect();
                    if let Ok(e) = classification_entry(s, i + 1, &lam) {
                        let p = e.params.unwrap();
                        assert!(build_table_first_class(&p).check_leibniz().is_empty());
                        assert!(build_table_first_class(&p).is_filiform());
                        pts.push((s.id.clone(), p));
                        break;
                    }
                }
            }
        }
        for (i, (sa, a)) in pts.iter().enumerate() {
            for (sb, b) in &pts[i + 1..] {
                let want = sa == sb && stratum_invariants(reg.stratum(d, sa).unwrap(), a).unwrap().is_empty();
                assert_eq!(is_isomorphic(reg, a, b).unwrap(), want, "dim {d}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn unclassifiable_points_exist_outside_dim5() {
    // points that no literal predicate accepts; kept as a regression marker
    let reg = Registry::bundled();
    let pv = |s: &[i64]| ParamVector::from_dim_slots(s.len() + 2, s.iter().map(|&x| Scalar::from_int(x)).collect()).unwrap();
    assert!(classify(reg, &pv(&[1, -2, 5, 5])).is_err());
    assert!(classify(reg, &pv(&[1, -2, 5, -14, 42, 0])).is_err());
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..200 {
        assert!(classify(reg, &random_params(&mut rng, 5, 0.2)).is_ok());
    }
}
