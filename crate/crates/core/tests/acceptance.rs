//! Acceptance criteria 1–11. Prints one line per criterion.
//!
//! Criteria recorded as known-red in the project notes print FAIL but do
//! not fail the run unless `GF_ACCEPTANCE_STRICT=1` is set.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use gf_angular::frobenius::{bocher_residual, frobenius_coeffs, Jet, Solution};
use gf_angular::harmonics::{eigen_convergence, operator_identity_study, Harmonic, REFINEMENT_LEVELS};
use gf_angular::special::{general_residual, HypergeometricSolution, QuantizedSolution};
use gf_angular::sturm::{orthogonality_matrix, sl_form_check, SLProblem};
use gf_angular::symbolic::{log_coefficient_d0, rat, symbolic_ab, verify_tables, QPolynomial};
use gf_angular::{compute_q, GeneralParams, IndicialRoot, PhysicalParams, QVector, SeriesSolution};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed_2024;
const KNOWN_RED: &[u32] = &[10];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn timed(f: impl FnOnce() -> Outcome) -> (Outcome, Duration) {
    let t = Instant::now();
    let o = f();
    (o, t.elapsed())
}

fn c1_tables() -> Outcome {
    let (report, dt) = timed(|| {
        let r = verify_tables();
        outcome(r.all_pass(), format!("{}/{} rows", r.passed, r.total))
    });
    outcome(report.pass && dt < Duration::from_secs(1), format!("{} in {:.3} s", report.detail, dt.as_secs_f64()))
}

/// Truncated power-series product.
fn convolve(a: &[QPolynomial], b: &[QPolynomial], len: usize) -> Vec<QPolynomial> {
    (0..len)
        .map(|n| {
            (0..=n).fold(QPolynomial::zero(), |acc, k| match (a.get(k), b.get(n - k)) {
                (Some(x), Some(y)) => acc + x * y,
                _ => acc,
            })
        })
        .collect()
}

fn c2_ab_oracle() -> Outcome {
    const J: usize = 30;
    let len = J + 1;
    let constant = |n: i64| QPolynomial::constant(rat(n, 1));
    // 1/(1-z²)
    let geom: Vec<QPolynomial> = (0..len).map(|n| constant(if n % 2 == 0 { 1 } else { 0 })).collect();
    // zP(z) = -2z² · 1/(1-z²)
    let zp = convolve(&[constant(0), constant(0), constant(-2)], &geom, len);
    // z²Q(z) = z² (Q0 + ... + Q4 z⁴) / 4 · 1/(1-z²)²
    let mut numer = vec![constant(0), constant(0)];
    numer.extend((0..5).map(|i| QPolynomial::var(i).scale(&rat(1, 4))));
    let z2q = convolve(&numer, &convolve(&geom, &geom, len), len);
    let mut bad = Vec::new();
    for j in 0..=J {
        let (a, b) = symbolic_ab(j);
        if zp[j].as_constant() != Some(a) || z2q[j] != b {
            bad.push(j);
        }
    }
    // closed forms for j >= 6
    let q = |i: usize, num: i64| QPolynomial::var(i).scale(&rat(num, 8));
    for j in 6..=10usize {
        let ji = j as i64;
        let expected = if j % 2 == 0 { q(0, ji) + q(2, ji - 2) + q(4, ji - 4) } else { q(1, ji - 1) + q(3, ji - 3) };
        if symbolic_ab(j).1 != expected {
            bad.push(100 + j);
        }
    }
    outcome(bad.is_empty(), format!("j = 0..={J} exact, closed forms j = 6..=10; mismatches {bad:?}"))
}

fn c3_d0() -> Outcome {
    match log_coefficient_d0() {
        Ok(d) => outcome(d.is_zero(), format!("d0 = {d}")),
        Err(e) => outcome(false, e.to_string()),
    }
}

fn c4_closed_form_limit() -> Outcome {
    let q = QVector::<f64>::zero();
    let s1 = frobenius_coeffs(&q, IndicialRoot::One, 60);
    let s2 = frobenius_coeffs(&q, IndicialRoot::Zero, 60);
    let mut worst = 0.0f64;
    for i in 0..=100 {
        let z = -0.5 + i as f64 * 0.01;
        let v1 = s1.eval(z).unwrap().value;
        let v2 = s2.eval(z).unwrap().value;
        worst = worst.max((v1 - z.atanh()).abs()).max((v2 - 1.0).abs());
    }
    outcome(worst < 1e-12, format!("max error {worst:.2e} on 101 points, N = 60"))
}

fn draw_params(rng: &mut ChaCha8Rng, bound: f64) -> PhysicalParams<f64> {
    PhysicalParams::new(
        rng.gen_range(-bound..=bound),
        rng.gen_range(-bound..=bound),
        rng.gen_range(-bound..=bound),
        rng.gen_range(-3..=3),
        rng.gen_range(-3..=3),
        rng.gen_range(-5.0..=5.0),
    )
}

fn c5_ode_residuals() -> Outcome {
    let (o, dt) = timed(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let mut worst = 0.0f64;
        let mut max_terms = 0;
        for _ in 0..100 {
            let p = draw_params(&mut rng, 5.0);
            let q = compute_q(&p);
            for beta in [IndicialRoot::One, IndicialRoot::Zero] {
                let s = SeriesSolution::adaptive(&q, beta);
                max_terms = max_terms.max(s.truncation());
                for i in 0..=20 {
                    let z = -0.5 + 0.05 * i as f64;
                    worst = worst.max(bocher_residual(&q, &s, z).unwrap().abs());
                }
            }
        }
        outcome(worst < 1e-8, format!("max |residual| {worst:.2e} over 100 draws x 2 roots x 21 points, N <= {max_terms}"))
    });
    outcome(o.pass && dt < Duration::from_secs(10), format!("{} in {:.2} s", o.detail, dt.as_secs_f64()))
}

fn draw_general(rng: &mut ChaCha8Rng) -> GeneralParams<f64> {
    let b = rng.gen_range(0.0..6.0);
    let c = rng.gen_range(-0.95..0.95) * b / 2.0;
    GeneralParams::reduced(rng.gen_range(-12.0..0.25), b, c)
}

fn c6_hypergeometric() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let g = draw_general(&mut rng);
        let s = HypergeometricSolution::new(&g).unwrap();
        for i in 0..=36 {
            let z = -0.9 + 0.05 * i as f64;
            worst = worst.max(general_residual(&g, &s, z).unwrap().abs());
        }
    }
    // terminating cases: a on the quantization ladder for drawn (B, C)
    let mut worst_var = 0.0f64;
    for _ in 0..20 {
        let g = draw_general(&mut rng);
        for n in 0..4 {
            let u = QuantizedSolution::from_bc(n, g.b, g.c).unwrap();
            let h = HypergeometricSolution::new(&u.params).unwrap();
            let ratios: Vec<f64> =
                (0..10).map(|i| -0.85 + 0.19 * i as f64).map(|z| h.value(z).unwrap() / u.value(z).unwrap()).collect();
            let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
            let var = ratios.iter().map(|r| (r / mean - 1.0).powi(2)).sum::<f64>() / ratios.len() as f64;
            worst_var = worst_var.max(var);
        }
    }
    outcome(
        worst < 1e-8 && worst_var < 1e-10,
        format!("max residual {worst:.2e} (20 draws, 37 points); max normalized ratio variance {worst_var:.2e} (80 terminating cases)"),
    )
}

fn spectrum_check(m: i64, n: i64, lo: f64, hi: f64, expected: &[f64]) -> (bool, String) {
    let prob = SLProblem::new(&PhysicalParams::new(0.0, 0.0, 0.0, m, n, 0.0)).unwrap();
    let got: Vec<f64> = prob.scan_eigenvalues(lo, hi, None).unwrap().eigenpairs.iter().map(|r| r.lambda).collect();
    let err = if got.len() == expected.len() {
        got.iter().zip(expected).map(|(g, e)| (g - e).abs()).fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    (err < 1e-6, format!("(m,n)=({m},{n}) {} eigenvalues, max error {err:.1e}", got.len()))
}

fn c7_spectrum() -> Outcome {
    let (o, dt) = timed(|| {
        let a = spectrum_check(0, 0, -35.0, 1.0, &[0.0, -2.0, -6.0, -12.0, -20.0, -30.0]);
        let b = spectrum_check(1, 1, -35.0, -1.0, &[-2.0, -6.0, -12.0, -20.0, -30.0]);
        outcome(a.0 && b.0, format!("{}; {}", a.1, b.1))
    });
    outcome(o.pass && dt < Duration::from_secs(30), format!("{} in {:.2} s", o.detail, dt.as_secs_f64()))
}

fn c8_orthogonality() -> Outcome {
    let prob = SLProblem::new(&PhysicalParams::new(0.5, 0.3, 0.1, 1, 1, 0.0)).unwrap();
    let scan = prob.scan_eigenvalues(-40.0, 20.0, Some(3)).unwrap();
    let lambdas: Vec<f64> = scan.eigenpairs.iter().map(|r| r.lambda).collect();
    let m = orthogonality_matrix(&prob, &lambdas).unwrap();
    let mut worst = 0.0f64;
    for i in 0..m.len() {
        for j in 0..i {
            worst = worst.max(m[i][j].abs());
        }
    }
    outcome(
        lambdas.len() == 3 && worst < 1e-6,
        format!("λ = {lambdas:.6?}, max |∫ S_i S_j| = {worst:.2e}"),
    )
}

fn c9_operator_identity() -> Outcome {
    let study = operator_identity_study::<f64>(&[0.0, 0.5, 1.0], 5, SEED, &REFINEMENT_LEVELS).unwrap();
    let orders: Vec<f64> = study.iter().flat_map(|s| s.orders.clone()).collect();
    let lo = orders.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = orders.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let shrinking = study.iter().all(|s| s.differences.windows(2).all(|w| w[1] < w[0]));
    outcome(
        shrinking && lo >= 1.8 && hi <= 2.2,
        format!("{} studies, observed orders in [{lo:.4}, {hi:.4}]", study.len()),
    )
}

fn c10_eigen_relations() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for n in 0..3 {
        let h = Harmonic::quantized(2.0, 1.0, n).unwrap();
        let s = eigen_convergence(&h, &REFINEMENT_LEVELS).unwrap();
        let lz = s.reports.iter().map(|r| r.lz_residual).fold(0.0, f64::max);
        let fine = s.reports.last().unwrap().l2_residual;
        let orders_ok = s.l2_orders.iter().all(|o| (1.8..=2.2).contains(o));
        let ok = lz < 1e-12 && fine < 1e-3 && orders_ok;
        pass &= ok;
        parts.push(format!(
            "N={n}: L_z {lz:.0e}, L² {fine:.2e} at h=π/256, orders {:.3?}{}",
            s.l2_orders,
            if ok { "" } else { " (over bound)" }
        ));
    }
    outcome(pass, parts.join("; "))
}

fn c11_formulation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 11);
    let mut worst = 0.0f64;
    let mut count = 0;
    for _ in 0..50 {
        let p = draw_params(&mut rng, 2.0);
        let q = compute_q(&p);
        let s1 = SeriesSolution::adaptive(&q, IndicialRoot::One);
        let s2 = SeriesSolution::adaptive(&q, IndicialRoot::Zero);
        let (c1, c2) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let combo = |z: f64| -> gf_angular::Result<Jet<f64>> {
            let (a, b) = (s1.jet(z)?, s2.jet(z)?);
            Ok(Jet::new(c1 * a.value + c2 * b.value, c1 * a.d1 + c2 * b.d1, c1 * a.d2 + c2 * b.d2))
        };
        for _ in 0..4 {
            let x: f64 = rng.gen_range(-0.85..0.85);
            let sl = sl_form_check(&p, &combo, x).unwrap();
            let b = bocher_residual(&q, &combo, x).unwrap();
            worst = worst.max((sl - (x * x - 1.0) * b).abs());
            count += 1;
        }
    }
    // closed-form solutions at α = 0 as well
    for n in 0..4 {
        let u = QuantizedSolution::from_bc(n, 2.0, 1.0).unwrap();
        let p = PhysicalParams::new(0.0, 0.0, 0.0, 1, 1, u.params.a);
        for &x in &[-0.7f64, -0.2, 0.4, 0.8] {
            let sl = sl_form_check(&p, &u, x).unwrap();
            let b = bocher_residual(&compute_q(&p), &u, x).unwrap();
            worst = worst.max((sl - (x * x - 1.0) * b).abs());
            count += 1;
        }
    }
    outcome(worst < 1e-10, format!("max |SL - U·Bôcher| {worst:.2e} over {count} points"))
}

fn main() -> ExitCode {
    // libtest passes flags such as --nocapture or a filter; none apply here
    let strict = std::env::var("GF_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    let criteria: [(u32, &str, fn() -> Outcome); 11] = [
        (1, "table reproduction", c1_tables),
        (2, "A_j/B_j oracle", c2_ab_oracle),
        (3, "d0 = 0", c3_d0),
        (4, "closed-form limit", c4_closed_form_limit),
        (5, "ODE residuals", c5_ode_residuals),
        (6, "hypergeometric solution", c6_hypergeometric),
        (7, "spectrum oracle", c7_spectrum),
        (8, "orthogonality", c8_orthogonality),
        (9, "Wu-Yang operator identity", c9_operator_identity),
        (10, "eigen-relations", c10_eigen_relations),
        (11, "formulation equivalence", c11_formulation),
    ];
    let mut failed = 0;
    for (id, name, run) in criteria {
        let o = run();
        let known = KNOWN_RED.contains(&id);
        let tag = match (o.pass, known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        println!("criterion {id:>2} {tag}: {name}: {}", o.detail);
        if !o.pass && (!known || strict) {
            failed += 1;
        }
    }
    println!("acceptance: {failed} unexpected failure(s)");
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
