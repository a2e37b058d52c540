//! Invariants over randomly generated inputs.

use num_complex::Complex;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ym2d::cm::{admissible_sectors, r_matrix_residuals, SpinChainConfig};
use ym2d::graph::{cylinder_surface, disc_surface, evaluate_partition, BoundaryData, OpenGraphSurface};
use ym2d::linalg::CMatrix;
use ym2d::report::VerificationRecord;
use ym2d::surface::{disc_kernel, glue, insert_observable, PointObservable};
use ym2d::tensor::{su2, tensor_decompose};
use ym2d::{CartanPoint, HighestWeight, Rational, RootSystem};

fn su3_weight() -> impl Strategy<Value = HighestWeight> {
    (0i64..4, 0i64..4).prop_map(|(a, b)| HighestWeight::new(vec![a, b]).unwrap())
}

fn element(seed: u64) -> CMatrix<f64> {
    su2::random(&mut ChaCha8Rng::seed_from_u64(seed))
}

fn rational() -> impl Strategy<Value = Rational> {
    (1i64..20, 1i64..20).prop_map(|(n, d)| Rational::new(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn weyl_dimension_counts_weights(l in su3_weight()) {
        let rs = RootSystem::su(3).unwrap();
        prop_assert_eq!(rs.weyl_dim(&l), rs.weights(&l).total());
        // (a+1)(b+1)(a+b+2)/2
        let (a, b) = (l.coords()[0] as u64, l.coords()[1] as u64);
        prop_assert_eq!(rs.weyl_dim(&l), (a + 1) * (b + 1) * (a + b + 2) / 2);
    }

    #[test]
    fn casimir_is_dual_invariant(l in su3_weight()) {
        let rs = RootSystem::su(3).unwrap();
        prop_assert_eq!(rs.casimir2_exact(&l), rs.casimir2_exact(&rs.dual(&l)));
        let (a, b) = (l.coords()[0], l.coords()[1]);
        // 2(a² + ab + b² + 3a + 3b)/3
        prop_assert_eq!(rs.casimir2_exact(&l), Rational::new(2 * (a * a + a * b + b * b + 3 * a + 3 * b), 3));
    }

    #[test]
    fn decomposition_preserves_dimension_and_commutes(l in su3_weight(), m in su3_weight()) {
        let rs = RootSystem::su(3).unwrap();
        let t = tensor_decompose(&rs, &l, &m);
        prop_assert_eq!(t.total_dim(&rs), rs.weyl_dim(&l) * rs.weyl_dim(&m));
        prop_assert_eq!(t, tensor_decompose(&rs, &m, &l));
    }

    #[test]
    fn su2_rep_is_a_homomorphism(m in 0usize..5, s1 in any::<u64>(), s2 in any::<u64>()) {
        let (g, h) = (element(s1), element(s2));
        let lhs = su2::rep(m, &(&g * &h));
        let rhs = &su2::rep(m, &g) * &su2::rep(m, &h);
        prop_assert!(lhs.dist(&rhs) < 1e-12);
        prop_assert!((su2::rep(m, &g).trace().re - su2::character_of_trace(m, g.trace().re)).abs() < 1e-10);
    }

    #[test]
    fn gluing_is_commutative_and_additive(a in rational(), b in rational()) {
        let rs = RootSystem::su2();
        let (ka, kb) = (disc_kernel(&rs, a, 20.0).unwrap(), disc_kernel(&rs, b, 20.0).unwrap());
        let ab = glue(&ka, &kb).unwrap();
        prop_assert_eq!(&ab, &glue(&kb, &ka).unwrap());
        prop_assert_eq!(ab, disc_kernel(&rs, a + b, 20.0).unwrap());
    }

    #[test]
    fn observables_form_a_commutative_algebra(fs in proptest::collection::vec(-5i64..6, 6), gs in proptest::collection::vec(-5i64..6, 6)) {
        let rs = RootSystem::su2();
        let to_obs = |xs: &[i64]| PointObservable::new(xs.iter().enumerate().map(|(m, &x)| (HighestWeight::su2(m as u32), Rational::from_integer(x))).collect());
        let (f, g) = (to_obs(&fs), to_obs(&gs));
        prop_assert_eq!(f.product(&g), g.product(&f));
        let k = disc_kernel(&rs, Rational::new(1, 2), 20.0).unwrap();
        prop_assert_eq!(insert_observable(&insert_observable(&k, &f), &g), insert_observable(&k, &f.product(&g)));
    }

    #[test]
    fn r_matrix_identities_at_random_points(theta in 0.1f64..3.0, a in 0usize..3, b in 0usize..3, c in 0usize..3) {
        let r = r_matrix_residuals(&CartanPoint::su2(theta), [a, b, c], 0.77).unwrap();
        prop_assert!(r.max() < 1e-10, "{:?}", r);
    }

    #[test]
    fn trace_functions_are_weight_zero(theta in 0.2f64..2.9, a in 1u32..3, b in 1u32..3) {
        let spins = vec![HighestWeight::su2(a), HighestWeight::su2(b)];
        for sectors in admissible_sectors(&spins, 10.0).unwrap() {
            let cfg = SpinChainConfig::<f64>::new(spins.clone(), sectors).unwrap();
            let f = cfg.trace_function(&CartanPoint::su2(theta)).unwrap();
            prop_assert!(ym2d::cm::zero_weight_leakage(&cfg.spin_labels(), &f) < 1e-12);
        }
    }

    #[test]
    fn disc_partition_function_is_a_class_function(s1 in any::<u64>(), s2 in any::<u64>(), area in 0.2f64..2.0) {
        let rs = RootSystem::su2();
        let (g, h) = (element(s1), element(s2));
        let z = |x: &CMatrix<f64>| {
            evaluate_partition(&disc_surface(area, 0), &rs, &BoundaryData::new().with("b", x.clone()), None, 40.0)
                .unwrap()
                .scalar()
                .unwrap()
        };
        let conj = &(&h * &g) * &h.adjoint();
        prop_assert!((z(&g) - z(&conj)).norm() < 1e-10);
        let series = disc_kernel(&rs, area, 40.0).unwrap();
        prop_assert!((z(&g) - Complex::new(series.evaluate_su2_trace(g.trace().re), 0.0)).norm() < 1e-10);
    }

    #[test]
    fn surfaces_round_trip_through_json(spins in proptest::collection::vec(0u32..3, 1..4), area in 0.1f64..2.0) {
        let ws: Vec<HighestWeight> = spins.iter().map(|&m| HighestWeight::su2(m)).collect();
        let s = cylinder_surface(&ws, &vec![area; ws.len()]).unwrap();
        prop_assert_eq!(OpenGraphSurface::from_json(&s.to_json()).unwrap(), s);
    }

    #[test]
    fn record_pass_flag(residual in 0.0f64..1.0, tolerance in 0.0f64..1.0) {
        let r = VerificationRecord::new("s", "c", "x", None, residual, tolerance);
        prop_assert_eq!(r.pass, residual <= tolerance);
    }
}
