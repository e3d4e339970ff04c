//! Closed-form solutions `u = Φ y` of the general spherical equation
//! `(1-z²)u'' - 2zu' + [-a + (2Cz - B)/(1-z²)]u = 0`.

use serde::Serialize;

use super::hypergeometric::{gauss_2f1_jet, terminates, Z_MAX};
use super::jacobi::jacobi_jet;
use super::nu::{nu_reduce, quantization_a, HypergeoParams, NuReduction};
use crate::error::{domain, Error, Result};
use crate::frobenius::{Jet, Solution};
use crate::params::GeneralParams;
use crate::scalar::{lit, Real};

/// `Φ(z) = (1-z)^{ea} (1+z)^{eb}` with derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhiFactor<T> {
    pub ea: T,
    pub eb: T,
}

impl<T: Real> PhiFactor<T> {
    pub fn jet(&self, z: T) -> Result<Jet<T>> {
        if !(z.abs() < T::one()) {
            return domain(format!("prefactor needs |z| < 1, got {z}"));
        }
        let one = T::one();
        let (l, r) = (one - z, one + z);
        let value = l.powf(self.ea) * r.powf(self.eb);
        let g = -self.ea / l + self.eb / r;
        let dg = -self.ea / (l * l) - self.eb / (r * r);
        Ok(Jet::new(value, value * g, value * (g * g + dg)))
    }
}

fn product<T: Real>(phi: Jet<T>, y: Jet<T>) -> Jet<T> {
    let two: T = lit(2.0);
    Jet::new(
        phi.value * y.value,
        phi.d1 * y.value + phi.value * y.d1,
        phi.d2 * y.value + two * phi.d1 * y.d1 + phi.value * y.d2,
    )
}

/// `u(z) = (1-z)^{α/2} (1+z)^{β/2} F(ā, b̄; c̄; (z+1)/2)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HypergeometricSolution<T> {
    pub params: GeneralParams<T>,
    pub reduction: NuReduction<T>,
    pub gauss: HypergeoParams<T>,
}

impl<T: Real> HypergeometricSolution<T> {
    pub fn new(g: &GeneralParams<T>) -> Result<Self> {
        let (reduction, gauss) = nu_reduce(g)?;
        Ok(Self { params: g.clone(), reduction, gauss })
    }

    pub fn phi(&self) -> PhiFactor<T> {
        let (ea, eb) = self.reduction.phi_exponents;
        PhiFactor { ea, eb }
    }

    /// `y(z) = F(ā, b̄; c̄; (z+1)/2)`, the canonical-equation solution.
    pub fn canonical_jet(&self, z: T) -> Result<Jet<T>> {
        let two: T = lit(2.0);
        let t = (z + T::one()) / two;
        let HypergeoParams { a_bar, b_bar, c_bar } = self.gauss;
        if !terminates(a_bar, b_bar) && t > lit(Z_MAX) {
            return domain(format!("hypergeometric solution needs z <= {}, got {z}", 2.0 * Z_MAX - 1.0));
        }
        let f = gauss_2f1_jet(a_bar, b_bar, c_bar, t)?;
        Ok(Jet::new(f.value, f.d1 / two, f.d2 / (two * two)))
    }

    /// Residual of `σ y'' + τ y' + λ y` for the canonical factor.
    pub fn canonical_residual(&self, z: T) -> Result<T> {
        let y = self.canonical_jet(z)?;
        let r = &self.reduction;
        Ok((T::one() - z * z) * y.d2 + r.tau.eval(z) * y.d1 + r.lambda_canon * y.value)
    }

    pub fn value(&self, z: T) -> Result<T> {
        Ok(self.jet(z)?.value)
    }
}

impl<T: Real> Solution<T> for HypergeometricSolution<T> {
    fn jet(&self, z: T) -> Result<Jet<T>> {
        let phi = self.phi().jet(z)?;
        Ok(product(phi, self.canonical_jet(z)?))
    }
}

/// `u(z)` from the hypergeometric construction; `g` must have `A = 0`.
pub fn solve_a0<T: Real>(g: &GeneralParams<T>, z: T) -> Result<T> {
    HypergeometricSolution::new(g)?.value(z)
}

/// `u_N(z) = (1-z)^{α/2} (1+z)^{β/2} P_N^{(α,β)}(z)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuantizedSolution<T> {
    pub params: GeneralParams<T>,
    pub a0: T,
    pub alpha_exp: T,
    pub beta_exp: T,
    pub degree: usize,
}

/// Tolerance on `a` against `-(a0+N)(a0+N+1)`.
pub const QUANTIZATION_TOL: f64 = 1e-10;

impl<T: Real> QuantizedSolution<T> {
    pub fn new(degree: usize, g: &GeneralParams<T>) -> Result<Self> {
        let (nu, _) = nu_reduce(g)?;
        let expected = quantization_a(nu.a0, degree);
        let scale = T::one().max(expected.abs());
        if (g.a - expected).abs() > lit::<T>(QUANTIZATION_TOL) * scale {
            return Err(Error::Consistency(format!(
                "a = {} does not satisfy the quantization condition a = {expected} for N = {degree}",
                g.a
            )));
        }
        let two: T = lit(2.0);
        Ok(Self {
            params: g.clone(),
            a0: nu.a0,
            alpha_exp: two * nu.phi_exponents.0,
            beta_exp: two * nu.phi_exponents.1,
            degree,
        })
    }

    /// Builds the quantized solution for `(B, C)`, choosing `a` from the condition.
    pub fn from_bc(degree: usize, b: T, c: T) -> Result<Self> {
        let a0 = crate::params::compute_a0(b, c)?;
        Self::new(degree, &GeneralParams::reduced(quantization_a(a0, degree), b, c))
    }

    pub fn phi(&self) -> PhiFactor<T> {
        let two: T = lit(2.0);
        PhiFactor { ea: self.alpha_exp / two, eb: self.beta_exp / two }
    }

    pub fn value(&self, z: T) -> Result<T> {
        Ok(self.jet(z)?.value)
    }
}

impl<T: Real> Solution<T> for QuantizedSolution<T> {
    fn jet(&self, z: T) -> Result<Jet<T>> {
        let phi = self.phi().jet(z)?;
        Ok(product(phi, jacobi_jet(self.degree, self.alpha_exp, self.beta_exp, z)))
    }
}

pub fn quantized_solution<T: Real>(n: usize, g: &GeneralParams<T>, z: T) -> Result<T> {
    QuantizedSolution::new(n, g)?.value(z)
}

/// Residual of the general equation (A = 0) in its original form.
pub fn general_residual<T: Real>(g: &GeneralParams<T>, f: &impl Solution<T>, z: T) -> Result<T> {
    if !(z.abs() < T::one()) {
        return domain(format!("residual needs |z| < 1, got {z}"));
    }
    let j = f.jet(z)?;
    let s = T::one() - z * z;
    let two: T = lit(2.0);
    let pot = -g.a + (-g.big_a * z * z + two * g.c * z - g.b) / s;
    Ok(s * j.d2 - two * z * j.d1 + pot * j.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobenius::bocher_residual;
    use crate::params::general_q;

    fn g(a: f64, b: f64, c: f64) -> GeneralParams<f64> {
        GeneralParams::reduced(a, b, c)
    }

    #[test]
    fn legendre_p1_from_terminating_series() {
        for &z in &[-0.8, -0.1, 0.0, 0.6, 0.95] {
            assert!((solve_a0(&g(-2.0, 0.0, 0.0), z).unwrap() + z).abs() < 1e-14);
        }
    }

    #[test]
    fn monopole_residuals() {
        let gg = g(-6.0, 2.0, 1.0);
        let s = HypergeometricSolution::new(&gg).unwrap();
        let q = general_q(&gg).unwrap();
        for &z in &[-0.5, 0.0, 0.5] {
            assert!(bocher_residual(&q, &s, z).unwrap().abs() < 1e-8);
            assert!(general_residual(&gg, &s, z).unwrap().abs() < 1e-8);
        }
    }

    #[test]
    fn generic_solution_residual_and_factorisation() {
        let gg = g(-1.37, 3.0, 1.1);
        let s = HypergeometricSolution::new(&gg).unwrap();
        for &z in &[-0.9, -0.4, 0.2, 0.9] {
            assert!(general_residual(&gg, &s, z).unwrap().abs() < 1e-8, "z={z}");
            assert!(s.canonical_residual(z).unwrap().abs() < 1e-9, "z={z}");
        }
        assert!(matches!(s.value(0.95), Err(crate::Error::Domain(_))));
    }

    #[test]
    fn boundary_decay_with_positive_beta_exponent() {
        let gg = g(-1.0, 2.0, 1.0);
        let s = HypergeometricSolution::new(&gg).unwrap();
        assert!(s.reduction.phi_exponents.1 > 0.0);
        // Φ(-0.999) = 0.001 and y stays bounded near z = -1
        assert!(s.value(-0.999).unwrap().abs() < 2e-3);
    }

    #[test]
    fn quantized_examples() {
        let u = QuantizedSolution::new(1, &g(-2.0, 0.0, 0.0)).unwrap();
        assert!((u.value(0.37).unwrap() - 0.37).abs() < 1e-15);
        let u0 = QuantizedSolution::new(0, &g(-2.0, 2.0, 1.0)).unwrap();
        assert!((u0.value(0.25).unwrap() - 1.25).abs() < 1e-14);
        let u1 = QuantizedSolution::new(1, &g(-6.0, 2.0, 1.0)).unwrap();
        let q = general_q(&u1.params).unwrap();
        assert!(bocher_residual(&q, &u1, 0.3).unwrap().abs() < 1e-10);
        assert!(matches!(QuantizedSolution::new(1, &g(-5.0, 2.0, 1.0)), Err(crate::Error::Consistency(_))));
    }

    #[test]
    fn quantized_and_hypergeometric_are_proportional() {
        for &(b, c) in &[(0.0, 0.0), (2.0, 1.0), (5.0, 2.0), (3.0, 0.5)] {
            for n in 0..4 {
                let u = QuantizedSolution::from_bc(n, b, c).unwrap();
                let h = HypergeometricSolution::new(&u.params).unwrap();
                let ratios: Vec<f64> = [-0.7, -0.3, 0.1, 0.55, 0.8]
                    .iter()
                    .map(|&z| h.value(z).unwrap() / u.value(z).unwrap())
                    .collect();
                for r in &ratios {
                    assert!((r - ratios[0]).abs() < 1e-10 * ratios[0].abs(), "b={b} c={c} n={n}: {ratios:?}");
                }
            }
        }
    }

    #[test]
    fn swapping_root_branch_swaps_a_b_only() {
        let s = HypergeometricSolution::new(&g(-3.2, 4.0, 1.5)).unwrap();
        let hp = s.gauss;
        let t = 0.6;
        let x = super::super::hypergeometric::gauss_2f1(hp.a_bar, hp.b_bar, hp.c_bar, t).unwrap();
        let y = super::super::hypergeometric::gauss_2f1(hp.b_bar, hp.a_bar, hp.c_bar, t).unwrap();
        assert!((x - y).abs() < 1e-13 * x.abs().max(1.0));
    }
}
