//! Exact Frobenius data at `z = 0`: the expansion coefficients of `zP(z)`
//! and `z²Q(z)`, the coefficients `C_j(β)` and the logarithmic
//! coefficient `d0`.

use num_rational::BigRational;
use num_traits::Zero;

use super::poly::{rat, QPolynomial};
use crate::error::{Error, Result};
use crate::frobenius::IndicialRoot;

/// `A_j`: coefficient of `z^j` in `zP(z) = -2z²/(1-z²)`.
pub fn symbolic_a(j: usize) -> BigRational {
    if j >= 2 && j % 2 == 0 {
        rat(-2, 1)
    } else {
        BigRational::zero()
    }
}

/// `B_j`: coefficient of `z^j` in `z²Q(z)`.
///
/// From `1/(1-z²)² = Σ (t+1) z^{2t}`, the symbol `Q_i` reaches `z^j` with
/// weight `(j - i)/2` when `j - i` is even and positive.
pub fn symbolic_b(j: usize) -> QPolynomial {
    let mut out = QPolynomial::zero();
    for i in 0..5 {
        if j < i + 2 || (j - i) % 2 != 0 {
            continue;
        }
        let weight = ((j - i) / 2) as i64;
        out = out + QPolynomial::var(i).scale(&rat(weight, 4));
    }
    out
}

/// `(A_j, B_j)`.
pub fn symbolic_ab(j: usize) -> (BigRational, QPolynomial) {
    (symbolic_a(j), symbolic_b(j))
}

/// `C_0(β) .. C_n(β)` as exact polynomials in the symbols, with `C_0 = 1`.
///
/// For `β = 0` the `n = 1` step has a vanishing denominator `(β+1)β`; its
/// numerator `A_1 β + B_1` vanishes identically as well, so `C_1(0) = 0`.
pub fn symbolic_coefficients(beta: IndicialRoot, n: usize) -> Vec<QPolynomial> {
    let b = beta.value() as i64;
    let mut c = Vec::with_capacity(n + 1);
    c.push(QPolynomial::one());
    for j in 1..=n {
        let mut sum = QPolynomial::zero();
        for (k, ck) in c.iter().enumerate() {
            let factor = QPolynomial::constant(symbolic_a(j - k) * rat(b + k as i64, 1)) + symbolic_b(j - k);
            sum = sum + &factor * ck;
        }
        let denom = (b + j as i64) * (b + j as i64 - 1);
        if denom == 0 {
            debug_assert!(sum.is_zero(), "numerator of the resonant step must vanish");
            c.push(QPolynomial::zero());
        } else {
            c.push(sum.scale(&rat(-1, denom)));
        }
    }
    c
}

/// `C_j(β)`.
pub fn symbolic_c(j: usize, beta: IndicialRoot) -> QPolynomial {
    symbolic_coefficients(beta, j).pop().expect("non-empty")
}

/// `d0 = lim_{β→0} β·C_1(β)`, the coefficient of `S_1(z) log z` in the
/// second solution. The roots `1` and `0` differ by one, so only `C_1` is
/// involved:
/// `(β+1)β·C_1(β) = -(βA_1 + B_1)`, i.e. `β·C_1(β) = N(β)/(β+1)` with the
/// numerator `N` kept as a polynomial in `β` over the symbols.
pub fn log_coefficient_d0() -> Result<BigRational> {
    // Numerator of (β+1)β·C_1(β) as n[0] + n[1]·β, built from the k = 0 term
    // of the recurrence with C_0 = 1: -[(β + 0)A_1 + B_1].
    let numerator = [-symbolic_b(1), -QPolynomial::constant(symbolic_a(1))];
    // β·C_1(β) = N(β)/(β + 1); at β = 0 the remaining factor is 1.
    let limit = &numerator[0] + &numerator[1].scale(&BigRational::zero());
    limit
        .as_constant()
        .ok_or_else(|| Error::Consistency(format!("d0 depends on the parameters: {limit}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::QVector;
    use IndicialRoot::{One, Zero as Z};

    fn q(i: usize) -> QPolynomial {
        QPolynomial::var(i)
    }

    fn c(n: i64, d: i64) -> QPolynomial {
        QPolynomial::constant(rat(n, d))
    }

    #[test]
    fn ab_examples() {
        assert_eq!(symbolic_ab(2), (rat(-2, 1), q(0).scale(&rat(1, 4))));
        let b6 = (q(0).scale(&rat(3, 1)) + q(2).scale(&rat(2, 1)) + q(4)).scale(&rat(1, 4));
        assert_eq!(symbolic_ab(6), (rat(-2, 1), b6));
        let b7 = (q(1).scale(&rat(3, 1)) + q(3).scale(&rat(2, 1))).scale(&rat(1, 4));
        assert_eq!(symbolic_ab(7), (rat(0, 1), b7));
        assert!(symbolic_b(0).is_zero() && symbolic_b(1).is_zero());
        assert_eq!(symbolic_b(4), (q(0).scale(&rat(2, 1)) + q(2)).scale(&rat(1, 4)));
        assert_eq!(symbolic_b(5), (q(1).scale(&rat(2, 1)) + q(3)).scale(&rat(1, 4)));
    }

    #[test]
    fn c_examples() {
        assert_eq!(symbolic_c(2, One), c(1, 3) - q(0).scale(&rat(1, 24)));
        assert_eq!(symbolic_c(2, Z), -q(0).scale(&rat(1, 8)));
        let c5 = -q(1).scale(&rat(1, 40)) + (q(0) * q(1)).scale(&rat(1, 1920)) - q(3).scale(&rat(1, 120));
        assert_eq!(symbolic_c(5, One), c5);
        assert!(symbolic_c(1, Z).is_zero());
        assert!(symbolic_c(1, One).is_zero());
    }

    #[test]
    fn d0_vanishes() {
        assert!(log_coefficient_d0().unwrap().is_zero());
    }

    #[test]
    fn d0_numeric_limit() {
        // β·C_1(β) = -(βA_1 + B_1)/(β+1) evaluated near β = 0 at generic Q.
        let beta = 1e-6_f64;
        let qv = QVector([3.7, -1.2, 0.4, 2.5, -0.9]);
        let a1 = 0.0;
        let b1 = symbolic_b(1).eval(&qv);
        let val: f64 = -(beta * a1 + b1) / (beta + 1.0);
        assert!(val.abs() < 1e-12);
    }

    #[test]
    fn zero_q_gives_atanh_coefficients() {
        let zero = QVector::<BigRational>::zero();
        for (j, cj) in symbolic_coefficients(One, 20).iter().enumerate() {
            let expect = if j % 2 == 0 { rat(1, j as i64 + 1) } else { rat(0, 1) };
            assert_eq!(cj.eval(&zero), expect, "j={j}");
        }
    }

    #[test]
    fn odd_rows_are_odd_in_q1_q3() {
        // Every monomial of an odd-index coefficient has odd total degree in (Q1, Q3).
        for beta in [Z, One] {
            for (j, cj) in symbolic_coefficients(beta, 10).iter().enumerate() {
                for (m, _) in cj.terms() {
                    assert_eq!(((m.0[1] + m.0[3]) as usize) % 2, j % 2, "j={j} m={m}");
                }
            }
        }
    }
}
