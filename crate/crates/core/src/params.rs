//! Physical and equation-level parameters, and the algebraic maps between
//! the angular equation, the general spherical equation and the Bôcher
//! coefficients `Q0..Q4`.


use serde::Serialize;

use crate::error::{domain, Result};
use crate::scalar::{int, lit, Real, Scalar};

/// Dimensionless parameters of the angular equation.
///
/// `alpha = a/M`, `k = ωM`, `mu_tilde = μM`; `m` is the azimuthal number,
/// `n` the Chern number and `lambda` the separation constant.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhysicalParams<T> {
    pub alpha: T,
    pub k: T,
    pub mu_tilde: T,
    pub m: i64,
    pub n: i64,
    pub lambda: T,
}

impl<T: Scalar> PhysicalParams<T> {
    pub fn new(alpha: T, k: T, mu_tilde: T, m: i64, n: i64, lambda: T) -> Self {
        Self { alpha, k, mu_tilde, m, n, lambda }
    }

    /// Same configuration with a different separation constant.
    pub fn with_lambda(&self, lambda: T) -> Self {
        Self { lambda, ..self.clone() }
    }
}

impl<T: Real> PhysicalParams<T> {
    pub fn is_finite(&self) -> bool {
        self.alpha.is_finite() && self.k.is_finite() && self.mu_tilde.is_finite() && self.lambda.is_finite()
    }
}

/// Parameters `(a, A, B, C)` of
/// `(1-z²)u'' - 2zu' + [-a + (-Az² + 2Cz - B)/(1-z²)]u = 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneralParams<T> {
    pub a: T,
    #[serde(rename = "A")]
    pub big_a: T,
    #[serde(rename = "B")]
    pub b: T,
    #[serde(rename = "C")]
    pub c: T,
}

impl<T: Scalar> GeneralParams<T> {
    pub fn new(a: T, big_a: T, b: T, c: T) -> Self {
        Self { a, big_a, b, c }
    }

    /// The reduced form with `A = 0`.
    pub fn reduced(a: T, b: T, c: T) -> Self {
        Self { a, big_a: T::zero(), b, c }
    }
}

/// The five Bôcher coefficients.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QVector<T>(pub [T; 5]);

impl<T: Scalar> QVector<T> {
    pub fn zero() -> Self {
        Self(std::array::from_fn(|_| T::zero()))
    }

    pub fn get(&self, j: usize) -> &T {
        &self.0[j]
    }

    /// `Q0 + Q1 z + ... + Q4 z⁴`.
    pub fn poly(&self, z: &T) -> T {
        self.0.iter().rev().fold(T::zero(), |acc, q| acc * z.clone() + q.clone())
    }

    /// Derivative of [`QVector::poly`].
    pub fn poly_d1(&self, z: &T) -> T {
        (1..5).rev().fold(T::zero(), |acc, j| acc * z.clone() + self.0[j].clone() * int::<T>(j as i64))
    }
}

/// Maps physical parameters onto the Bôcher coefficients.
pub fn compute_q<T: Scalar>(p: &PhysicalParams<T>) -> QVector<T> {
    let four: T = int(4);
    let eight: T = int(8);
    let m: T = int(p.m);
    let n: T = int(p.n);
    let a2 = p.alpha.clone() * p.alpha.clone();
    let k2 = p.k.clone() * p.k.clone();
    let mu2 = p.mu_tilde.clone() * p.mu_tilde.clone();
    let ak = p.alpha.clone() * p.k.clone();

    let q0 = -(four.clone() * (a2.clone() * k2.clone() + p.lambda.clone() + m.clone() * m.clone() + n.clone() * n.clone()));
    let q1 = eight.clone() * n.clone() * (m - ak.clone());
    let q2 = four.clone() * (int::<T>(2) * a2.clone() * k2.clone() - a2.clone() * mu2.clone() + p.lambda.clone());
    let q3 = eight * n * ak;
    let q4 = -(four * a2 * (k2 - mu2));
    QVector([q0, q1, q2, q3, q4])
}

/// Bôcher coefficients of the general equation with `A = 0`.
///
/// Multiplying the general equation by `(1-z²)` gives the numerator
/// `-a(1-z²) + 2Cz - B`, hence `Q = 4·(-a-B, 2C, a, 0, 0)`.
pub fn general_q<T: Scalar>(g: &GeneralParams<T>) -> Result<QVector<T>> {
    if !g.big_a.is_zero() {
        return domain("general_q expects the reduced form A = 0");
    }
    let four: T = int(4);
    Ok(QVector([
        four.clone() * (-g.a.clone() - g.b.clone()),
        four.clone() * int::<T>(2) * g.c.clone(),
        four * g.a.clone(),
        T::zero(),
        T::zero(),
    ]))
}

/// At `alpha = 0` the angular equation is the general spherical equation
/// with `a = λ`, `A = 0`, `B = m² + n²`, `C = mn`.
pub fn gf_to_general<T: Scalar>(p: &PhysicalParams<T>) -> Result<GeneralParams<T>> {
    if !p.alpha.is_zero() {
        return domain("gf_to_general requires alpha = 0");
    }
    Ok(GeneralParams::reduced(p.lambda.clone(), int(p.m * p.m + p.n * p.n), int(p.m * p.n)))
}

/// Absorbs `A` into `a` and `B`: `(a, A, B, C) -> (a - A, 0, B + A, C)`.
pub fn reduce_general<T: Scalar>(g: &GeneralParams<T>) -> GeneralParams<T> {
    GeneralParams::reduced(g.a.clone() - g.big_a.clone(), g.b.clone() + g.big_a.clone(), g.c.clone())
}

/// Nonnegative root of `a0⁴ - B a0² + C² = 0`.
///
/// For `C != 0` this is the minus branch `a0² = (B - sqrt(B² - 4C²))/2`.
/// At `C = 0` the minus branch degenerates to zero and `C/a0` is undefined,
/// so the plus branch `a0² = B` is used.
pub fn compute_a0<T: Real>(b: T, c: T) -> Result<T> {
    let disc = b * b - lit::<T>(4.0) * c * c;
    // Tolerate rounding in B² - 4C² for exactly degenerate inputs like B = 2|C|.
    let slack = lit::<T>(64.0) * T::epsilon() * (b * b).max(T::one());
    if disc < -slack {
        return domain(format!("a0 requires B² >= 4C² (B = {b}, C = {c})"));
    }
    let disc = disc.max(T::zero());
    if c.is_zero() {
        if b < T::zero() {
            return domain(format!("a0 requires B >= 0 when C = 0 (B = {b})"));
        }
        return Ok(b.sqrt());
    }
    // (B - sqrt(D))/2 = 2C²/(B + sqrt(D)) avoids cancellation when C is small.
    let denom = b + disc.sqrt();
    if denom <= T::zero() {
        return domain(format!("a0 requires B > 0 when C != 0 (B = {b}, C = {c})"));
    }
    Ok((lit::<T>(2.0) * c * c / denom).sqrt())
}

/// Exponent pair `(a0 - C/a0, a0 + C/a0)`; both zero when `a0 = C = 0`.
pub fn exponents<T: Real>(a0: T, c: T) -> Result<(T, T)> {
    if a0.is_zero() {
        if c.is_zero() {
            return Ok((T::zero(), T::zero()));
        }
        return domain(format!("exponents: C/a0 undefined for a0 = 0, C = {c}"));
    }
    let ratio = c / a0;
    Ok((a0 - ratio, a0 + ratio))
}

/// `C/a0` with the `a0 = C = 0` convention.
pub(crate) fn c_over_a0<T: Real>(a0: T, c: T) -> Result<T> {
    let (alpha, beta) = exponents(a0, c)?;
    Ok((beta - alpha) / lit(2.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn pp(alpha: f64, k: f64, mu: f64, m: i64, n: i64, lambda: f64) -> PhysicalParams<f64> {
        PhysicalParams::new(alpha, k, mu, m, n, lambda)
    }

    #[test]
    fn q_examples() {
        assert_eq!(compute_q(&pp(0., 0., 0., 0, 0, 0.)).0, [0.0; 5]);
        assert_eq!(compute_q(&pp(1., 1., 0., 1, 1, 2.)).0, [-20., 0., 16., 8., -4.]);
        assert_eq!(compute_q(&pp(0., 0., 0., 2, 1, -6.)).0, [4., 16., -24., 0., 0.]);
    }

    #[test]
    fn q_exact_rational() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let p = PhysicalParams::new(r(1, 2), r(3, 10), r(1, 10), 1, 1, r(-6, 1));
        let q = compute_q(&p);
        // q1 + q3 = 8nm holds exactly
        assert_eq!(q.0[1].clone() + q.0[3].clone(), r(8, 1));
        // Q4 = -4 α² (k² - μ²) = -4/4 (9/100 - 1/100) = -2/25
        assert_eq!(q.0[4], r(-2, 25));
    }

    #[test]
    fn gf_to_general_examples() {
        assert_eq!(gf_to_general(&pp(0., 0., 0., 0, 0, -2.)).unwrap(), GeneralParams::new(-2., 0., 0., 0.));
        assert_eq!(gf_to_general(&pp(0., 0., 0., 1, 1, -6.)).unwrap(), GeneralParams::new(-6., 0., 2., 1.));
        assert_eq!(gf_to_general(&pp(0., 0., 0., 2, 1, 0.)).unwrap(), GeneralParams::new(0., 0., 5., 2.));
        assert!(matches!(gf_to_general(&pp(0.1, 0., 0., 0, 0, 0.)), Err(crate::Error::Domain(_))));
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce_general(&GeneralParams::new(1., 0., 2., 1.)), GeneralParams::new(1., 0., 2., 1.));
        assert_eq!(reduce_general(&GeneralParams::new(3., 2., 1., 0.)), GeneralParams::new(1., 0., 3., 0.));
        assert_eq!(reduce_general(&GeneralParams::new(0., -1., 0., 5.)), GeneralParams::new(1., 0., -1., 5.));
    }

    #[test]
    fn a0_examples() {
        assert!((compute_a0(2.0f64, 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((compute_a0(5.0f64, 2.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((compute_a0(4.0f64, 0.0).unwrap() - 2.0).abs() < 1e-15);
        assert!(matches!(compute_a0(1.0, 1.0), Err(crate::Error::Domain(_))));
        assert!(matches!(compute_a0(-1.0, 0.0), Err(crate::Error::Domain(_))));
    }

    #[test]
    fn a0_identity_for_c_nonzero() {
        for &(b, c) in &[(2.0, 1.0), (5.0, 2.0), (3.0, -0.7), (10.0, 0.01)] {
            let a0: f64 = compute_a0(b, c).unwrap();
            assert!((b - a0 * a0 - c * c / (a0 * a0)).abs() < 1e-12);
        }
    }

    #[test]
    fn exponent_examples() {
        assert_eq!(exponents(1.0, 1.0).unwrap(), (0.0, 2.0));
        assert_eq!(exponents(0.0, 0.0).unwrap(), (0.0, 0.0));
        assert_eq!(exponents(1.0, 2.0).unwrap(), (-1.0, 3.0));
        assert!(matches!(exponents(0.0, 1.0), Err(crate::Error::Domain(_))));
    }

    #[test]
    fn a0_is_min_abs_m_n() {
        for m in -5i64..=5 {
            for n in -5i64..=5 {
                if m == 0 || n == 0 {
                    continue;
                }
                let a0 = compute_a0((m * m + n * n) as f64, (m * n) as f64).unwrap();
                assert!((a0 - m.abs().min(n.abs()) as f64).abs() < 1e-12, "m={m} n={n} a0={a0}");
            }
        }
    }

    #[test]
    fn alpha_zero_q_matches_general_route() {
        for m in -3..=3 {
            for n in -3..=3 {
                let p = pp(0., 0.7, 0.2, m, n, -1.3);
                let g = gf_to_general(&p).unwrap();
                assert_eq!(compute_q(&p), general_q(&g).unwrap());
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn q1_plus_q3_is_8nm(alpha in -5.0..5.0f64, k in -5.0..5.0f64, mu in 0.0..5.0f64,
                             m in -4i64..=4, n in -4i64..=4, lambda in -10.0..10.0f64) {
            let q = compute_q(&pp(alpha, k, mu, m, n, lambda));
            proptest::prop_assert!((q.0[1] + q.0[3] - 8.0 * (n * m) as f64).abs() < 1e-10);
        }

        #[test]
        fn a0_solves_quartic(b in 0.0..20.0f64, t in -1.0..1.0f64) {
            let c = t * b / 2.0;
            let a0: f64 = compute_a0(b, c).unwrap();
            let a2 = a0 * a0;
            proptest::prop_assert!((a2 * a2 - b * a2 + c * c).abs() < 1e-12 * (1.0 + b * b));
            proptest::prop_assert!(a0 >= 0.0);
        }
    }
}
