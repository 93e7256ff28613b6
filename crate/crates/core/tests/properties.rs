use filiform::sampling::sample_in_stratum;
use filiform::strata::matching_strata;
use filiform::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=4, prop_oneof![3 => Just(0i64), 1 => -5i64..=5])
        .prop_map(|(n, d, im)| &Scalar::from_ratio(n, d).unwrap() + &(&Scalar::from_int(im) * &Scalar::i()))
}

fn params(dims: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = ParamVector> {
    dims.prop_flat_map(|d| proptest::collection::vec(scalar(), d - 2))
        .prop_map(|slots| ParamVector::from_dim_slots(slots.len() + 2, slots).unwrap())
}

fn pair() -> impl Strategy<Value = AdaptedPair> {
    (scalar(), scalar()).prop_filter_map("A(A+B) = 0", |(a, b)| AdaptedPair::new(a, b).ok())
}

fn vector(d: usize) -> impl Strategy<Value = Vec<Scalar>> {
    proptest::collection::vec(scalar(), d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tables_are_filiform_leibniz(p in params(5..=8)) {
        let t = build_table_first_class(&p);
        prop_assert!(t.check_leibniz().is_empty());
        prop_assert!(t.is_filiform());
    }

    #[test]
    fn product_is_bilinear(p in params(7..=7), x in vector(7), y in vector(7), z in vector(7), a in scalar(), b in scalar()) {
        let t = build_table_first_class(&p);
        let comb: Vec<Scalar> = x.iter().zip(&y).map(|(u, v)| &(&a * u) + &(&b * v)).collect();
        let lhs = t.product(&comb, &z).unwrap();
        let px = t.product(&x, &z).unwrap();
        let py = t.product(&y, &z).unwrap();
        let rhs: Vec<Scalar> = px.iter().zip(&py).map(|(u, v)| &(&a * u) + &(&b * v)).collect();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn identity_law(p in params(5..=8)) {
        prop_assert_eq!(rho_apply(&AdaptedPair::identity(), &p), p);
    }

    #[test]
    fn composition_law(p in params(5..=8), g in pair(), h in pair()) {
        prop_assert_eq!(rho_apply(&h, &rho_apply(&g, &p)), rho_apply(&compose_pairs(&h, &g), &p));
    }

    #[test]
    fn inverse_law(p in params(5..=8), g in pair()) {
        let q = rho_apply(&g, &p);
        // x = A, y = -B/(A+B)
        let back = AdaptedPair::from_xy(g.a(), &(-g.b()).checked_div(&(g.a() + g.b())).unwrap()).unwrap();
        prop_assert_eq!(&back, &g.inverse());
        prop_assert_eq!(rho_apply(&back, &q), p);
    }

    #[test]
    fn composition_stays_valid(g in pair(), h in pair()) {
        let c = compose_pairs(&h, &g);
        prop_assert!(!c.a().is_zero());
        prop_assert!(!(c.a() + c.b()).is_zero());
    }

    #[test]
    fn raw_formula_agrees(p in params(5..=8), g in pair()) {
        let q = rho_apply(&g, &p);
        prop_assert_eq!(q.n(), p.n());
        prop_assert_eq!(rho_apply_raw(&g, &p), q);
    }

    #[test]
    fn found_isomorphisms_verify(p in params(5..=6), g in pair()) {
        let q = rho_apply(&g, &p);
        let f = find_isomorphism(&p, &q, &g).unwrap();
        prop_assert!(is_isomorphism(&build_table_first_class(&q), &build_table_first_class(&p), &f));
    }

    #[test]
    fn classification_is_orbit_stable(p in params(5..=8), g in pair()) {
        let reg = Registry::bundled();
        let q = rho_apply(&g, &p);
        let a = matching_strata(reg, &p).unwrap().iter().map(|s| s.id.clone()).collect::<Vec<_>>();
        let b = matching_strata(reg, &q).unwrap().iter().map(|s| s.id.clone()).collect::<Vec<_>>();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn u1_signature_is_orbit_constant(p in params(5..=8), g in pair()) {
        prop_assume!(!p.alpha(3).is_zero() && !deltas(&p).delta(4).unwrap().is_zero());
        let q = rho_apply(&g, &p);
        prop_assert_eq!(u1_signature(&p).unwrap(), u1_signature(&q).unwrap());
    }

    #[test]
    fn canonical_form_is_stable(p in params(5..=8)) {
        let reg = Registry::bundled();
        prop_assume!(classify(reg, &p).is_ok());
        let c = canonical_representative(reg, &p).unwrap();
        prop_assert_eq!(classify(reg, &c).unwrap().id.clone(), classify(reg, &p).unwrap().id.clone());
        prop_assert_eq!(canonical_representative(reg, &c).unwrap(), c.clone());
        prop_assert!(is_isomorphic(reg, &p, &c).unwrap());
    }
}

fn stratum_samples(seed: u64, per: usize) -> Vec<(String, usize, Vec<ParamVector>)> {
    let reg = Registry::bundled();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for d in reg.dims() {
        for s in reg.strata(d).unwrap() {
            let ps = (0..per).map(|_| sample_in_stratum(&mut rng, reg, s, 500, 0.2).unwrap()).collect();
            out.push((s.id.clone(), d, ps));
        }
    }
    out
}

#[test]
fn invariants_survive_orbit_moves() {
    let reg = Registry::bundled();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for (id, d, ps) in stratum_samples(20, 10) {
        let s = reg.stratum(d, &id).unwrap();
        for p in ps {
            for _ in 0..3 {
                let g = filiform::sampling::random_pair(&mut rng, 0.2);
                if matches!(stratum_invariants(s, &p), Err(Error::DenominatorZero { .. })) {
                    continue;
                }
                assert!(is_invariant_under_action(reg, s, &p, &g).unwrap(), "dim {d} {id} at {p}");
            }
        }
    }
}

#[test]
fn isomorphism_is_an_equivalence() {
    let reg = Registry::bundled();
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for (_, d, ps) in stratum_samples(23, 3) {
        let mut pts = ps.clone();
        pts.push(rho_apply(&filiform::sampling::random_pair(&mut rng, 0.2), &ps[0]));
        let iso = |a: &ParamVector, b: &ParamVector| is_isomorphic(reg, a, b).unwrap();
        for a in &pts {
            assert!(iso(a, a), "dim {d}");
            for b in &pts {
                assert_eq!(iso(a, b), iso(b, a));
                for c in &pts {
                    if iso(a, b) && iso(b, c) {
                        assert!(iso(a, c));
                    }
                }
            }
        }
        assert!(iso(&ps[0], pts.last().unwrap()));
    }
}
