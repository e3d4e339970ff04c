//! Gauss hypergeometric series `2F1(a, b; c; z)`.

use crate::error::{domain, Result};
use crate::frobenius::Jet;
use crate::scalar::{lit, usz, Real};

/// Policy bound on `|z|` for non-terminating series.
pub const Z_MAX: f64 = 0.95;
pub const MAX_TERMS: usize = 100_000;

fn is_nonpositive_integer<T: Real>(x: T) -> bool {
    x <= T::zero() && x == x.round()
}

/// True when `(a)_k (b)_k` vanishes for some `k`, i.e. the series is a polynomial.
pub fn terminates<T: Real>(a: T, b: T) -> bool {
    is_nonpositive_integer(a) || is_nonpositive_integer(b)
}

/// `Σ_k (a)_k (b)_k / ((c)_k k!) z^k`.
///
/// Terminating series are summed exactly and accepted at any `z`;
/// otherwise `|z| <= 0.95` is required and summation stops once a term
/// drops below half an ulp of the partial sum while the term ratio is
/// below one.
pub fn gauss_2f1<T: Real>(a: T, b: T, c: T, z: T) -> Result<T> {
    if !z.is_finite() {
        return domain(format!("2F1 argument must be finite, got {z}"));
    }
    let polynomial = terminates(a, b);
    if !polynomial && z.abs() > lit(Z_MAX) {
        return domain(format!("2F1 series needs |z| <= {Z_MAX}, got {z}"));
    }
    let tol = T::epsilon() * lit(0.5);
    let mut term = T::one();
    let mut sum = T::one();
    for k in 0..MAX_TERMS {
        let kk: T = usz(k);
        let num = (a + kk) * (b + kk);
        if num.is_zero() {
            return Ok(sum);
        }
        if (c + kk).is_zero() {
            return domain(format!("2F1 undefined: c = {c} is a non-positive integer"));
        }
        term = term * num / ((c + kk) * (kk + T::one())) * z;
        sum = sum + term;
        if !polynomial && term.abs() <= tol * sum.abs() {
            let k1 = kk + T::one();
            let ratio = ((a + k1) * (b + k1) / ((c + k1) * (k1 + T::one())) * z).abs();
            if ratio < T::one() {
                return Ok(sum);
            }
        }
    }
    domain(format!("2F1({a}, {b}; {c}; {z}) did not converge in {MAX_TERMS} terms"))
}

/// `F`, `F'`, `F''` via `d/dz F(a,b;c;z) = (ab/c) F(a+1,b+1;c+1;z)`.
pub fn gauss_2f1_jet<T: Real>(a: T, b: T, c: T, z: T) -> Result<Jet<T>> {
    let f = gauss_2f1(a, b, c, z)?;
    let ab = a * b;
    if ab.is_zero() {
        return Ok(Jet::new(f, T::zero(), T::zero()));
    }
    let one = T::one();
    let d1 = ab / c * gauss_2f1(a + one, b + one, c + one, z)?;
    let ab1 = (a + one) * (b + one);
    let d2 = if ab1.is_zero() {
        T::zero()
    } else {
        let two = one + one;
        ab * ab1 / (c * (c + one)) * gauss_2f1(a + two, b + two, c + two, z)?
    };
    Ok(Jet::new(f, d1, d2))
}
