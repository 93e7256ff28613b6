//! Independent oracles for the action formulas.

use filiform::action::{generated_map, identity_map, nested_sum};
use filiform::sampling::{random_pair, random_params};
use filiform::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// [x^deg] Z(x)^m with Z(x) = Σ_j z_{3+j} x^j, by plain truncated products.
fn series_coefficient(z: &[Scalar], m: usize, deg: usize) -> Scalar {
    let mut acc = vec![Scalar::zero(); deg + 1];
    acc[0] = Scalar::one();
    for _ in 0..m {
        let mut next = vec![Scalar::zero(); deg + 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in z.iter().enumerate() {
                if i + j <= deg {
                    next[i + j] += &(a * b);
                }
            }
        }
        acc = next;
    }
    acc.swap_remove(deg)
}

#[test]
fn nested_sum_is_a_power_series_coefficient() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let n = 9;
        let z: Vec<Scalar> = random_params(&mut rng, n + 1, 0.3).alphas().to_vec();
        for t in 4..=n {
            for k in 3..t {
                for m in 1..k {
                    let want = if t >= k + m { series_coefficient(&z, m, t - k - m) } else { Scalar::zero() };
                    assert_eq!(nested_sum(&z, t, k, m), want, "t={t} k={k} m={m}");
                }
            }
        }
    }
}

#[test]
fn three_routes_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for dim in 5..=9 {
        for _ in 0..25 {
            let p = random_params(&mut rng, dim, 0.3);
            let g = random_pair(&mut rng, 0.3);
            let r = rho_apply(&g, &p);
            assert_eq!(r, rho_apply_raw(&g, &p), "raw, dim {dim}");
            assert_eq!(r, rho_apply_transport(&g, &p).unwrap(), "transport, dim {dim}");
        }
    }
}

/// The map generated by f(e0) = Ae0 + Be1 and f(e1) = (A+B)e1 + B(θ-α_n)e_{n-1}
/// is an isomorphism L(ρ(p)) → L(p).
#[test]
fn adapted_basis_is_an_isomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for dim in 5..=8 {
        for _ in 0..15 {
            let p = random_params(&mut rng, dim, 0.3);
            let g = random_pair(&mut rng, 0.3);
            let n = p.n();
            let src = build_table_first_class(&rho_apply(&g, &p));
            let tgt = build_table_first_class(&p);
            let mut f0 = vec![Scalar::zero(); dim];
            f0[0] = g.a().clone();
            f0[1] = g.b().clone();
            let mut f1 = vec![Scalar::zero(); dim];
            f1[1] = g.a() + g.b();
            f1[n - 1] = g.b() * &(p.theta() - p.alpha(n));
            let f = generated_map(&tgt, &f0, &f1).unwrap();
            assert!(is_isomorphism(&src, &tgt, &f), "dim {dim}");
        }
    }
}

#[test]
fn found_isomorphisms_verify() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for dim in 5..=7 {
        for _ in 0..10 {
            let p = random_params(&mut rng, dim, 0.3);
            let g = random_pair(&mut rng, 0.3);
            let q = rho_apply(&g, &p);
            let f = find_isomorphism(&p, &q, &g).unwrap();
            assert!(is_isomorphism(&build_table_first_class(&q), &build_table_first_class(&p), &f));
        }
    }
}

#[test]
fn identity_pair_gives_identity_map() {
    let p = ParamVector::from_dim_slots(5, vec![Scalar::one(), Scalar::zero(), Scalar::one()]).unwrap();
    let f = find_isomorphism(&p, &p, &AdaptedPair::identity()).unwrap();
    assert_eq!(f, identity_map(5));
}
