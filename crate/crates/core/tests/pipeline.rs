use gf_angular::frobenius::{bocher_residual, frobenius_coeffs, solution_pair, wronskian};
use gf_angular::special::{quantization_a, HypergeometricSolution, QuantizedSolution};
use gf_angular::symbolic::symbolic_coefficients;
use gf_angular::{
    compute_a0, compute_q, gf_to_general, ExactParams, IndicialRoot, Params, PhysicalParams, Problem, Rational, Solution,
};
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

#[test]
fn alpha_zero_spectrum_matches_quantization() {
    for &(m, n) in &[(0i64, 0i64), (1, 0), (1, 1), (2, 2), (2, 1), (-3, 1)] {
        let p = Params::new(0.0, 0.0, 0.0, m, n, 0.0);
        let scan = Problem::new(&p).unwrap().scan_eigenvalues(-45.0, 0.5, Some(4)).unwrap();
        let g = gf_to_general(&p).unwrap();
        // bounded at both ends: lowest degree is max(|m|, |n|)
        let l = m.abs().max(n.abs()) as f64;
        for (i, e) in scan.eigenpairs.iter().enumerate() {
            let want = quantization_a(l, i);
            assert!((e.lambda - want).abs() < 1e-7, "m={m} n={n} i={i}: {} vs {want}", e.lambda);
            assert_eq!(e.node_count, i);
        }
        assert_eq!(scan.eigenpairs.len(), 4);
        // on the m = ±n and n = 0 lines the a0 root is that same degree
        if m.abs() == n.abs() || n == 0 {
            assert!((compute_a0(g.b, g.c).unwrap() - l).abs() < 1e-12);
        }
    }
}

#[test]
fn closed_form_is_combination_of_series_pair() {
    // α = 0, λ off the spectrum: u = u(0) S2 + u'(0) S1
    let p = Params::new(0.0, 0.0, 0.0, 2, 1, -3.7);
    let g = gf_to_general(&p).unwrap();
    let u = HypergeometricSolution::new(&g).unwrap();
    let (s1, s2) = solution_pair(&compute_q(&p));
    let u0 = u.jet(0.0).unwrap();
    for &z in &[-0.85, -0.4, 0.1, 0.6, 0.85] {
        let want = u.value(z).unwrap();
        let got = u0.value * s2.jet(z).unwrap().value + u0.d1 * s1.jet(z).unwrap().value;
        assert!((got - want).abs() < 1e-10 * want.abs().max(1.0), "z={z}: {got} vs {want}");
    }
}

#[test]
fn quantized_solution_solves_the_physical_equation() {
    let p = Params::new(0.0, 0.0, 0.0, 1, 1, quantization_a(1.0, 2));
    let g = gf_to_general(&p).unwrap();
    let u = QuantizedSolution::new(2, &g).unwrap();
    let q = compute_q(&p);
    for &z in &[-0.9, -0.2, 0.5, 0.9] {
        assert!(bocher_residual(&q, &u, z).unwrap().abs() < 1e-10);
    }
}

#[test]
fn f32_path_tracks_f64() {
    let p64 = Params::new(0.5, 1.0, 0.3, 1, 0, -2.0);
    let p32 = PhysicalParams::new(0.5f32, 1.0, 0.3, 1, 0, -2.0);
    let (q64, q32) = (compute_q(&p64), compute_q(&p32));
    let (a, b) = (solution_pair(&q64), solution_pair(&q32));
    for &z in &[-0.7f32, 0.0, 0.4, 0.8] {
        let v64 = a.0.jet(z as f64).unwrap().value;
        let v32 = b.0.jet(z).unwrap().value;
        assert!((v32 as f64 - v64).abs() < 1e-5 * v64.abs().max(1.0));
        assert!(bocher_residual(&q32, &b.1, z).unwrap().abs() < 1e-3);
    }
    let e = Problem::new(&p64).unwrap().scan_eigenvalues(-10.0, 0.5, Some(1)).unwrap();
    let s32 = gf_angular::SLProblem::new(&p32).unwrap().scan_eigenvalues(-10.0, 0.5, Some(1)).unwrap();
    assert!((s32.eigenpairs[0].lambda as f64 - e.eigenpairs[0].lambda).abs() < 1e-3);
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| r(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exact_recurrence_equals_symbolic_coefficients(
        alpha in small_rational(), k in small_rational(), mu in small_rational(),
        m in -3i64..=3, n in -3i64..=3, lambda in small_rational(), one in any::<bool>(),
    ) {
        let beta = if one { IndicialRoot::One } else { IndicialRoot::Zero };
        let q = compute_q(&ExactParams::new(alpha, k, mu, m, n, lambda));
        let numeric = frobenius_coeffs(&q, beta, 10);
        for (j, c) in symbolic_coefficients(beta, 10).iter().enumerate() {
            prop_assert_eq!(&c.eval(&q), &numeric.coeffs[j]);
        }
    }

    #[test]
    fn abel_identity_for_series_pair(
        alpha in 0.0..1.5f64, k in -1.0..1.0f64, mu in 0.0..1.0f64,
        m in -2i64..=2, n in -2i64..=2, lambda in -15.0..0.0f64,
    ) {
        let q = compute_q(&Params::new(alpha, k, mu, m, n, lambda));
        let (s1, s2) = solution_pair(&q);
        // W(0) = -1 and (1 - z²) W is constant
        for z in [-0.8, -0.3, 0.25, 0.7] {
            let w = wronskian(&s1, &s2, z).unwrap() * (1.0 - z * z);
            prop_assert!((w + 1.0).abs() < 1e-9, "z={} w={}", z, w);
        }
    }

    #[test]
    fn exact_q_boundary_values(m in -5i64..=5, n in -5i64..=5, alpha in small_rational(), lambda in small_rational()) {
        let q = compute_q(&ExactParams::new(alpha, r(1, 2), r(1, 3), m, n, lambda));
        let at = |z: i64| q.poly(&r(z, 1));
        prop_assert_eq!(at(1), r(-4 * (m - n) * (m - n), 1));
        prop_assert_eq!(at(-1), r(-4 * (m + n) * (m + n), 1));
        let f = compute_q(&Params::new(0.0, 0.5, 0.0, m, n, 0.0));
        prop_assert!((f.poly(&1.0) - at(1).to_f64().unwrap()).abs() < 1e-12);
    }
}
