//! Jacobi polynomials `P_N^{(α,β)}`.

use crate::frobenius::Jet;
use crate::scalar::{lit, usz, Real};

/// Three-term recurrence, falling back to the explicit binomial sum when a
/// recurrence coefficient vanishes (e.g. `α + β` a negative integer).
pub fn jacobi_poly<T: Real>(n: usize, alpha: T, beta: T, z: T) -> T {
    let one = T::one();
    let two: T = lit(2.0);
    if n == 0 {
        return one;
    }
    let ab = alpha + beta;
    let mut prev = one;
    let mut cur = (alpha + one) + (ab + two) * (z - one) / two;
    for k in 2..=n {
        let k: T = usz(k);
        let s = two * k + ab;
        let lead = two * k * (k + ab) * (s - two);
        if lead.is_zero() {
            return jacobi_explicit(n, alpha, beta, z);
        }
        let next = ((s - one) * (s * (s - two) * z + alpha * alpha - beta * beta) * cur
            - two * (k + alpha - one) * (k + beta - one) * s * prev)
            / lead;
        prev = cur;
        cur = next;
    }
    cur
}

/// Generalised binomial `x (x-1) ⋯ (x-k+1) / k!`.
fn binom<T: Real>(x: T, k: usize) -> T {
    (0..k).fold(T::one(), |acc, i| acc * (x - usz(i)) / usz(i + 1))
}

/// `Σ_s C(N+α, N-s) C(N+β, s) ((z-1)/2)^s ((z+1)/2)^{N-s}`.
pub fn jacobi_explicit<T: Real>(n: usize, alpha: T, beta: T, z: T) -> T {
    let two: T = lit(2.0);
    let nn: T = usz(n);
    let lo = (z - T::one()) / two;
    let hi = (z + T::one()) / two;
    (0..=n)
        .map(|s| binom(nn + alpha, n - s) * binom(nn + beta, s) * lo.powi(s as i32) * hi.powi((n - s) as i32))
        .fold(T::zero(), |a, b| a + b)
}

/// Value and derivatives via `d/dz P_N^{(α,β)} = (N+α+β+1)/2 · P_{N-1}^{(α+1,β+1)}`.
pub fn jacobi_jet<T: Real>(n: usize, alpha: T, beta: T, z: T) -> Jet<T> {
    let one = T::one();
    let two: T = lit(2.0);
    let value = jacobi_poly(n, alpha, beta, z);
    if n == 0 {
        return Jet::new(value, T::zero(), T::zero());
    }
    let nn: T = usz(n);
    let c1 = (nn + alpha + beta + one) / two;
    let d1 = c1 * jacobi_poly(n - 1, alpha + one, beta + one, z);
    let d2 = if n == 1 {
        T::zero()
    } else {
        let c2 = (nn + alpha + beta + two) / two;
        c1 * c2 * jacobi_poly(n - 2, alpha + two, beta + two, z)
    };
    Jet::new(value, d1, d2)
}
