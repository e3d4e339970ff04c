//! Reduction of the general spherical equation (with `A = 0`) to an
//! equation of hypergeometric type and then to Gauss' equation.
//!
//! With `σ = 1 - z²`, `τ̃ = -2z` and `σ̃ = -(-2Cz + B + a(1 - z²))`, the
//! polynomial `f_κ = (τ̃ - σ')²/4 + κσ - σ̃` is a perfect square
//! `p(z)² = (a0 z - C/a0)²` for `κ = -a - a0²`. Then
//! `π0 = (σ' - τ̃)/2 - p`, `τ = τ̃ + 2π0`, `λ = κ + π0'` and
//! `u = Φ y` with `Φ'/Φ = π0/σ` turns the equation into
//! `σ y'' + τ y' + λ y = 0`.

use serde::Serialize;

use crate::error::{domain, Result};
use crate::params::{c_over_a0, compute_a0, exponents, GeneralParams};
use crate::scalar::{lit, usz, Real};

/// `c0 + c1 z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinearPoly<T> {
    pub c0: T,
    pub c1: T,
}

impl<T: Real> LinearPoly<T> {
    pub fn new(c0: T, c1: T) -> Self {
        Self { c0, c1 }
    }

    pub fn eval(&self, z: T) -> T {
        self.c0 + self.c1 * z
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NuReduction<T> {
    pub a0: T,
    /// `p(z) = a0 z - C/a0`.
    pub p_root: LinearPoly<T>,
    /// `π0 = -p` here, since `σ' = τ̃`.
    pub pi0: LinearPoly<T>,
    pub tau: LinearPoly<T>,
    pub kappa: T,
    pub lambda_canon: T,
    /// `(α/2, β/2)` of `Φ(z) = (1-z)^{α/2} (1+z)^{β/2}`.
    pub phi_exponents: (T, T),
}

/// Parameters of `z(1-z)v'' + [c - (a+b+1)z]v' - ab v = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HypergeoParams<T> {
    pub a_bar: T,
    pub b_bar: T,
    pub c_bar: T,
}

pub fn nu_reduce<T: Real>(g: &GeneralParams<T>) -> Result<(NuReduction<T>, HypergeoParams<T>)> {
    if !g.big_a.is_zero() {
        return domain("nu_reduce expects A = 0; apply reduce_general first");
    }
    let a0 = compute_a0(g.b, g.c)?;
    let (alpha_exp, beta_exp) = exponents(a0, g.c)?;
    let disc = T::one() - lit::<T>(4.0) * g.a;
    if disc < T::zero() {
        return domain(format!("1 - 4a < 0 (a = {}): complex Gauss parameters", g.a));
    }
    let ratio = c_over_a0(a0, g.c)?;
    let two: T = lit(2.0);

    let p_root = LinearPoly::new(-ratio, a0);
    // (σ' - τ̃)/2 = (-2z + 2z)/2 = 0
    let pi0 = LinearPoly::new(-p_root.c0, -p_root.c1);
    let tau = LinearPoly::new(two * pi0.c0, -two + two * pi0.c1);
    let kappa = -g.a - a0 * a0;
    let lambda_canon = kappa + pi0.c1;

    let root = disc.sqrt();
    let hyp = HypergeoParams {
        a_bar: (T::one() + two * a0 + root) / two,
        b_bar: (T::one() + two * a0 - root) / two,
        c_bar: T::one() + a0 + ratio,
    };
    let nu = NuReduction {
        a0,
        p_root,
        pi0,
        tau,
        kappa,
        lambda_canon,
        phi_exponents: (alpha_exp / two, beta_exp / two),
    };
    Ok((nu, hyp))
}

impl<T: Real> NuReduction<T> {
    /// `f_κ(z) = (τ̃ - σ')²/4 + κσ - σ̃` for this equation.
    pub fn f_kappa(&self, g: &GeneralParams<T>, z: T) -> T {
        let sigma = T::one() - z * z;
        let sigma_tilde = -(-lit::<T>(2.0) * g.c * z + g.b + g.a * sigma);
        self.kappa * sigma - sigma_tilde
    }

    /// `Φ'/Φ` from the exponents: `-α/(2(1-z)) + β/(2(1+z))`.
    pub fn phi_log_derivative(&self, z: T) -> T {
        let (ha, hb) = self.phi_exponents;
        -ha / (T::one() - z) + hb / (T::one() + z)
    }
}

/// `a = -(a0 + N)(a0 + N + 1)`: the value for which the canonical equation
/// has a polynomial solution of degree `N`.
pub fn quantization_a<T: Real>(a0: T, n: usize) -> T {
    let nn: T = usz(n);
    -(a0 + nn) * (a0 + nn + T::one())
}

/// Generic integrality condition `λ_N = -N τ' - N(N-1) σ''/2` of
/// `σ y'' + τ y' + λ y = 0`.
pub fn nu_quantized_lambda<T: Real>(tau_slope: T, sigma_second: T, n: usize) -> T {
    let nn: T = usz(n);
    -nn * tau_slope - nn * (nn - T::one()) * sigma_second / lit(2.0)
}
