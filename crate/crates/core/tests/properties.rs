use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zonalval::bodies::RevolutionBody;
use zonalval::integral_geometry::{agr_constant, kinematic_cone_pair, kubota_check, sample_flat, KinematicKernel};
use zonalval::kernel::ZonalKernel;
use zonalval::transforms::{t_alpha, t_alpha_inv};
use zonalval::valuations::{eval, eval_cone_ball, eval_cone_disk, ValuationSpec};

fn cone_param() -> impl Strategy<Value = f64> {
    (0.05f64..=1.0, any::<bool>()).prop_map(|(s, neg)| if neg { -s } else { s })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn t_alpha_is_linear(c0 in -2.0f64..2.0, c1 in -2.0f64..2.0, c2 in -2.0f64..2.0, alpha in 0.25f64..3.0, s in -1.0f64..=1.0) {
        let p = t_alpha(&ZonalKernel::poly(vec![c0, c1, c2]), alpha).unwrap();
        let basis: Vec<_> = [vec![1.0], vec![0.0, 1.0], vec![0.0, 0.0, 1.0]]
            .into_iter()
            .map(|c| t_alpha(&ZonalKernel::poly(c), alpha).unwrap())
            .collect();
        let combo = c0 * basis[0].eval(s) + c1 * basis[1].eval(s) + c2 * basis[2].eval(s);
        prop_assert!((p.eval(s) - combo).abs() < 1e-11 * (1.0 + combo.abs()));
    }

    #[test]
    fn t_alpha_inverse_undoes_t(c0 in -2.0f64..2.0, c2 in -2.0f64..2.0, alpha in prop::sample::select(vec![0.5, 1.0, 2.0, 3.0]), s in -0.99f64..0.99) {
        let f = ZonalKernel::poly(vec![c0, 0.0, c2]);
        let back = t_alpha_inv(&t_alpha(&f, alpha).unwrap(), alpha).unwrap();
        prop_assert!((back.eval(s) - f.eval(s)).abs() < 1e-8 * (1.0 + f.eval(s).abs()));
    }

    #[test]
    fn kinematic_kernel_is_symmetric(s in -1.0f64..=1.0, t in -1.0f64..=1.0, c in -3.0f64..3.0) {
        let q = KinematicKernel::new(ZonalKernel::cos()).unwrap().with_gauge(c);
        prop_assert_eq!(q.eval(s, t), q.eval(t, s));
    }

    #[test]
    fn cone_pairs_satisfy_kinematic_formula(
        n in 3u32..=6,
        jf in 0.0f64..1.0,
        s in cone_param(),
        t in cone_param(),
        lambda in 0.2f64..3.0,
        mu in 0.2f64..3.0,
    ) {
        let j = 1 + ((n - 1) as f64 * jf) as u32 % (n - 1);
        let c = kinematic_cone_pair(n, j, &ZonalKernel::exp(), (lambda, s), (mu, t)).unwrap();
        prop_assert!(c.abs_err() < 1e-9 * (1.0 + c.lhs.abs()), "{:?}", c);
    }

    #[test]
    fn kubota_holds_on_cones(n in 3u32..=6, i in 1u32..6, s in cone_param()) {
        prop_assume!(i < n && s.abs() < 1.0);
        let c = kubota_check(n, i, &RevolutionBody::cone(n, s).unwrap()).unwrap();
        prop_assert!(c.abs_err() < 1e-12 * (1.0 + c.lhs.abs()), "{:?}", c);
    }

    #[test]
    fn cone_ball_and_disk_agree(n in 3u32..=6, i in 1u32..5, c1 in -1.0f64..1.0, c2 in -1.0f64..1.0, s in cone_param()) {
        prop_assume!(i + 1 < n);
        let f = ZonalKernel::poly(vec![1.0, c1, c2]);
        let g = t_alpha(&f, f64::from(n - i - 1)).unwrap();
        let a = eval_cone_ball(n, i, &f, s).unwrap();
        let b = eval_cone_disk(n, i, &g, s).unwrap();
        prop_assert!((a - b).abs() < 1e-9 * (1.0 + a.abs()));
    }

    #[test]
    fn valuations_are_homogeneous(n in 3u32..=5, i in 1u32..4, r in 0.2f64..3.0) {
        prop_assume!(i < n);
        let spec = ValuationSpec::disk(n, i, ZonalKernel::cos()).unwrap();
        let unit = eval(&spec, &RevolutionBody::ball(n, 1.0).unwrap()).unwrap();
        let scaled = eval(&spec, &RevolutionBody::ball(n, r).unwrap()).unwrap();
        let expect = r.powi(i as i32) * unit;
        prop_assert!((scaled - expect).abs() < 1e-9 * (1.0 + expect.abs()));
    }

    #[test]
    fn sampled_flats_are_orthonormal(seed in any::<u64>(), n in 2usize..=6, jf in 0.0f64..1.0, radius in 0.1f64..4.0) {
        let j = 1 + ((n - 1) as f64 * jf) as usize % (n - 1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let flat = sample_flat(&mut rng, n, j, radius);
        let u = &flat.direction_basis;
        let gram = u.transpose() * u;
        for a in 0..j {
            for b in 0..j {
                let want = if a == b { 1.0 } else { 0.0 };
                prop_assert!((gram[(a, b)] - want).abs() < 1e-12);
            }
        }
        prop_assert!((u.transpose() * &flat.offset).norm() < 1e-12 * (1.0 + flat.offset.norm()));
        prop_assert!(flat.offset.norm() <= radius * (1.0 + 1e-12));
    }

    #[test]
    fn agr_constant_symmetric(n in 2u32..=8, j in 0u32..=8, k in 0u32..=8) {
        prop_assume!(j <= n && k <= n && j + k >= n);
        let a = agr_constant(n, j, k).unwrap();
        let b = agr_constant(n, k, j).unwrap();
        prop_assert!((a - b).abs() < 1e-14 * a.abs());
    }
}
