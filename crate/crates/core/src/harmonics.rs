//! Monopole harmonics `Z(φ, θ) = e^{i α φ} u(cos θ)` and the Wu–Yang angular
//! momentum operators
//!
//! ```text
//! L_x = i sinφ ∂θ + i cosφ cotθ ∂φ - a0 sinθ cosφ/(1+cosθ)
//! L_y = -i cosφ ∂θ + i sinφ cotθ ∂φ - a0 sinθ sinφ/(1+cosθ)
//! L_z = -i ∂φ - a0
//! ```
//!
//! with `L² = L_x² + L_y² + L_z²` in closed form
//! `-∂θ² - cotθ ∂θ - ∂φ²/sin²θ + (2i a0/(1+cosθ)) ∂φ + 2a0²/(1+cosθ)`.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::frobenius::Solution;
use crate::params::{c_over_a0, GeneralParams};
use crate::scalar::{int, lit, usz, Real};
use crate::special::{HypergeometricSolution, QuantizedSolution};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Radial<T> {
    Hypergeometric(HypergeometricSolution<T>),
    Jacobi(QuantizedSolution<T>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Harmonic<T> {
    pub a0: T,
    pub c: T,
    pub alpha_exp: T,
    pub beta_exp: T,
    pub a: T,
    pub radial: Radial<T>,
}

impl<T: Real> Harmonic<T> {
    /// Quantized harmonic of degree `n` for `(B, C)`, `a = -(a0+n)(a0+n+1)`.
    pub fn quantized(b: T, c: T, n: usize) -> Result<Self> {
        let q = QuantizedSolution::from_bc(n, b, c)?;
        Ok(Self { a0: q.a0, c, alpha_exp: q.alpha_exp, beta_exp: q.beta_exp, a: q.params.a, radial: Radial::Jacobi(q) })
    }

    /// Harmonic from the hypergeometric solution for `g` (`A = 0`).
    pub fn generic(g: &GeneralParams<T>) -> Result<Self> {
        let h = HypergeometricSolution::new(g)?;
        let two: T = lit(2.0);
        let (ea, eb) = h.reduction.phi_exponents;
        Ok(Self { a0: h.reduction.a0, c: g.c, alpha_exp: two * ea, beta_exp: two * eb, a: g.a, radial: Radial::Hypergeometric(h) })
    }

    /// `C/a0`, so that `L_z Z = -(C/a0) Z`.
    pub fn charge_ratio(&self) -> T {
        c_over_a0(self.a0, self.c).unwrap_or_else(|_| T::zero())
    }

    pub fn u(&self, z: T) -> Result<T> {
        match &self.radial {
            Radial::Hypergeometric(h) => Ok(h.jet(z)?.value),
            Radial::Jacobi(q) => Ok(q.jet(z)?.value),
        }
    }

    pub fn eval_z(&self, phi: T, theta: T) -> Result<Complex<T>> {
        if !(theta > T::zero() && theta < T::PI()) {
            return domain(format!("Z needs 0 < θ < π, got {theta}"));
        }
        let u = self.u(theta.cos())?;
        Ok(Complex::from_polar(T::one(), self.alpha_exp * phi) * u)
    }

    /// `L_z Z` from the exact φ-derivative: `(α_exp - a0) Z`.
    pub fn apply_lz(&self, phi: T, theta: T) -> Result<Complex<T>> {
        Ok(self.eval_z(phi, theta)? * (self.alpha_exp - self.a0))
    }

    /// Whether the phase `e^{iα_exp φ}` is `2π`-periodic.
    pub fn is_periodic(&self) -> bool {
        (self.alpha_exp - self.alpha_exp.round()).abs() <= lit::<T>(1e-12) * self.alpha_exp.abs().max(T::one())
    }
}

/// Uniform samples on `θ_j = θ_min + j h_θ` (`j < n_theta`, ending at
/// `π - θ_min`) and `φ_k = 2πk / n_phi`, stored row-major in `θ`.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularGrid<T> {
    pub theta_min: T,
    pub n_theta: usize,
    pub n_phi: usize,
    pub values: Vec<Complex<T>>,
}

/// First θ row of the comparison grids. With `n_theta = 62·2^i + 1` rows
/// the spacing is exactly `π/(64·2^i)` and the grids are nested.
pub const THETA_MIN: f64 = std::f64::consts::PI / 64.0;
/// Comparison band `θ ∈ [BAND, π - BAND]`.
pub const BAND: f64 = 0.1;

impl<T: Real> AngularGrid<T> {
    pub fn from_fn(theta_min: T, n_theta: usize, n_phi: usize, mut f: impl FnMut(T, T) -> Complex<T>) -> Result<Self> {
        if !(theta_min > T::zero()) || n_theta < 5 || n_phi < 4 || theta_min * lit(2.0) >= T::PI() {
            return domain("grid needs θ_min in (0, π/2), n_theta >= 5 and n_phi >= 4");
        }
        let mut g = Self { theta_min, n_theta, n_phi, values: Vec::with_capacity(n_theta * n_phi) };
        for j in 0..n_theta {
            for k in 0..n_phi {
                let v = f(g.phi(k), g.theta(j));
                g.values.push(v);
            }
        }
        Ok(g)
    }

    /// Samples `h` on the grid; the phase must be periodic.
    pub fn sample(h: &Harmonic<T>, theta_min: T, n_theta: usize, n_phi: usize) -> Result<Self> {
        if !h.is_periodic() {
            return domain(format!("α_exp = {} is not an integer; periodic φ stencils do not apply", h.alpha_exp));
        }
        let mut err = None;
        let g = Self::from_fn(theta_min, n_theta, n_phi, |phi, theta| {
            h.eval_z(phi, theta).unwrap_or_else(|e| {
                err.get_or_insert(e);
                Complex::new(T::zero(), T::zero())
            })
        })?;
        match err {
            Some(e) => Err(e),
            None => Ok(g),
        }
    }

    pub fn h_theta(&self) -> T {
        (T::PI() - lit::<T>(2.0) * self.theta_min) / usz(self.n_theta - 1)
    }

    pub fn h_phi(&self) -> T {
        T::TAU() / usz(self.n_phi)
    }

    pub fn theta(&self, j: usize) -> T {
        self.theta_min + self.h_theta() * usz(j)
    }

    pub fn phi(&self, k: usize) -> T {
        self.h_phi() * usz(k)
    }

    pub fn get(&self, j: usize, k: usize) -> Complex<T> {
        self.values[j * self.n_phi + k]
    }

    fn map(&self, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut values = Vec::with_capacity(self.values.len());
        for j in 0..self.n_theta {
            for k in 0..self.n_phi {
                values.push(f(j, k));
            }
        }
        Self { values, ..self.clone() }
    }

    fn d_phi(&self, j: usize, k: usize) -> Complex<T> {
        let n = self.n_phi;
        (self.get(j, (k + 1) % n) - self.get(j, (k + n - 1) % n)) / (lit::<T>(2.0) * self.h_phi())
    }

    fn d2_phi(&self, j: usize, k: usize) -> Complex<T> {
        let n = self.n_phi;
        let h = self.h_phi();
        (self.get(j, (k + 1) % n) - self.get(j, k) * lit::<T>(2.0) + self.get(j, (k + n - 1) % n)) / (h * h)
    }

    /// Centered in the interior, second-order one-sided on the first and last rows.
    fn d_theta(&self, j: usize, k: usize) -> Complex<T> {
        let h = self.h_theta();
        let two: T = lit(2.0);
        let three: T = lit(3.0);
        let four: T = lit(4.0);
        let last = self.n_theta - 1;
        if j == 0 {
            (self.get(0, k) * -three + self.get(1, k) * four - self.get(2, k)) / (two * h)
        } else if j == last {
            (self.get(last, k) * three - self.get(last - 1, k) * four + self.get(last - 2, k)) / (two * h)
        } else {
            (self.get(j + 1, k) - self.get(j - 1, k)) / (two * h)
        }
    }

    fn d2_theta(&self, j: usize, k: usize) -> Complex<T> {
        let h = self.h_theta();
        let jj = j.clamp(1, self.n_theta - 2);
        (self.get(jj + 1, k) - self.get(jj, k) * lit::<T>(2.0) + self.get(jj - 1, k)) / (h * h)
    }

    /// Rows `j` with `θ_j ∈ [BAND, π - BAND]` and at least two rows from either edge.
    pub fn comparison_rows(&self) -> impl Iterator<Item = usize> + '_ {
        let band: T = lit(BAND);
        (2..self.n_theta.saturating_sub(2))
            .filter(move |&j| self.theta(j) >= band - T::epsilon() && self.theta(j) <= T::PI() - band + T::epsilon())
    }

    /// Max-norm over the comparison band.
    pub fn band_norm(&self) -> T {
        self.band_norm_strided(1)
    }

    /// Max-norm over the band points of the grid coarser by `stride` in both
    /// directions, i.e. over nodes shared by a nested refinement sequence.
    pub fn band_norm_strided(&self, stride: usize) -> T {
        let coarse_rows = (self.n_theta - 1) / stride;
        self.comparison_rows()
            .filter(|&j| j % stride == 0 && j / stride >= 2 && j / stride + 2 <= coarse_rows)
            .flat_map(|j| (0..self.n_phi).step_by(stride).map(move |k| (j, k)))
            .fold(T::zero(), |m, (j, k)| m.max(self.get(j, k).norm()))
    }

    /// `self - other` (same shape).
    pub fn sub(&self, other: &Self) -> Self {
        self.map(|j, k| self.get(j, k) - other.get(j, k))
    }

    pub fn add_scaled(&self, other: &Self, s: Complex<T>) -> Self {
        self.map(|j, k| self.get(j, k) + other.get(j, k) * s)
    }
}

fn i_unit<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::one())
}

/// `L_z f = -i ∂φ f - a0 f` by periodic centered differences.
pub fn apply_lz_grid<T: Real>(f: &AngularGrid<T>, a0: T) -> AngularGrid<T> {
    f.map(|j, k| -i_unit::<T>() * f.d_phi(j, k) - f.get(j, k) * a0)
}

pub fn apply_lx_grid<T: Real>(f: &AngularGrid<T>, a0: T) -> AngularGrid<T> {
    let i = i_unit::<T>();
    f.map(|j, k| {
        let (th, ph) = (f.theta(j), f.phi(k));
        let cot = th.cos() / th.sin();
        i * f.d_theta(j, k) * ph.sin() + i * f.d_phi(j, k) * (ph.cos() * cot)
            - f.get(j, k) * (a0 * th.sin() * ph.cos() / (T::one() + th.cos()))
    })
}

pub fn apply_ly_grid<T: Real>(f: &AngularGrid<T>, a0: T) -> AngularGrid<T> {
    let i = i_unit::<T>();
    f.map(|j, k| {
        let (th, ph) = (f.theta(j), f.phi(k));
        let cot = th.cos() / th.sin();
        -i * f.d_theta(j, k) * ph.cos() + i * f.d_phi(j, k) * (ph.sin() * cot)
            - f.get(j, k) * (a0 * th.sin() * ph.sin() / (T::one() + th.cos()))
    })
}

/// Closed-form `L²` with three-point stencils.
pub fn apply_l2_closed<T: Real>(f: &AngularGrid<T>, a0: T) -> AngularGrid<T> {
    let i = i_unit::<T>();
    let two: T = lit(2.0);
    f.map(|j, k| {
        let th = f.theta(j);
        let (s, c) = th.sin_cos();
        -f.d2_theta(j, k) - f.d_theta(j, k) * (c / s) - f.d2_phi(j, k) / (s * s)
            + i * f.d_phi(j, k) * (two * a0 / (T::one() + c))
            + f.get(j, k) * (two * a0 * a0 / (T::one() + c))
    })
}

/// `L_x² + L_y² + L_z²`, each component applied twice by first differences.
pub fn apply_l2_composed<T: Real>(f: &AngularGrid<T>, a0: T) -> AngularGrid<T> {
    let xx = apply_lx_grid(&apply_lx_grid(f, a0), a0);
    let yy = apply_ly_grid(&apply_ly_grid(f, a0), a0);
    let zz = apply_lz_grid(&apply_lz_grid(f, a0), a0);
    let one = Complex::new(T::one(), T::zero());
    xx.add_scaled(&yy, one).add_scaled(&zz, one)
}

#[derive(Debug, Clone, Serialize)]
pub struct EigenReport<T> {
    pub n_theta: usize,
    pub n_phi: usize,
    pub h_theta: T,
    /// `max|L_z Z + (C/a0) Z| / max|Z|` with the analytic `L_z`.
    pub lz_residual: T,
    /// `max|L² Z + a Z| / max|Z|` with the closed-form stencil.
    pub l2_residual: T,
}

/// Residuals of `L² Z = -a Z` and `L_z Z = -(C/a0) Z` on the comparison band.
pub fn check_eigen_relations<T: Real>(h: &Harmonic<T>, n_theta: usize, n_phi: usize) -> Result<EigenReport<T>> {
    let grid = AngularGrid::sample(h, lit(THETA_MIN), n_theta, n_phi)?;
    let norm = grid.band_norm();
    let l2 = apply_l2_closed(&grid, h.a0);
    let l2_res = l2.add_scaled(&grid, Complex::new(h.a, T::zero())).band_norm() / norm;
    let ratio = h.charge_ratio();
    let mut lz_res = T::zero();
    for j in grid.comparison_rows() {
        for k in 0..n_phi {
            let (phi, theta) = (grid.phi(k), grid.theta(j));
            let z = grid.get(j, k);
            lz_res = lz_res.max((h.apply_lz(phi, theta)? + z * ratio).norm());
        }
    }
    Ok(EigenReport { n_theta, n_phi, h_theta: grid.h_theta(), lz_residual: lz_res / norm, l2_residual: l2_res })
}

/// Grid sizes `(n_theta, n_phi)` for the refinement studies: `h = π/64, π/128, π/256`
/// in both directions.
pub const REFINEMENT_LEVELS: [(usize, usize); 3] = [(63, 128), (125, 256), (249, 512)];

/// Refinement factors of `levels` relative to the first one; levels must be nested.
fn strides(levels: &[(usize, usize)]) -> Result<Vec<usize>> {
    let Some(&(t0, p0)) = levels.first() else {
        return Ok(Vec::new());
    };
    levels
        .iter()
        .map(|&(nt, np)| {
            let s = (nt - 1) / (t0 - 1);
            if (nt - 1) % (t0 - 1) != 0 || np % p0 != 0 || np / p0 != s {
                return domain(format!("grid ({nt}, {np}) is not a refinement of ({t0}, {p0})"));
            }
            Ok(s)
        })
        .collect()
}

/// `log2(e_i / e_{i+1})` for successive errors.
pub fn observed_orders<T: Real>(errors: &[T]) -> Vec<T> {
    errors.windows(2).map(|w| (w[0] / w[1]).log2()).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct EigenStudy<T> {
    pub reports: Vec<EigenReport<T>>,
    pub l2_orders: Vec<T>,
}

pub fn eigen_convergence<T: Real>(h: &Harmonic<T>, levels: &[(usize, usize)]) -> Result<EigenStudy<T>> {
    let reports = levels.iter().map(|&(nt, np)| check_eigen_relations(h, nt, np)).collect::<Result<Vec<_>>>()?;
    let l2_orders = observed_orders(&reports.iter().map(|r| r.l2_residual).collect::<Vec<_>>());
    Ok(EigenStudy { reports, l2_orders })
}

/// Smooth, `2π`-periodic test function
/// `Σ c_j e^{i p_j φ} cos(q_j θ + s_j)` with random coefficients.
#[derive(Debug, Clone, Serialize)]
pub struct SmoothFunction<T> {
    pub modes: Vec<(Complex<T>, i32, i32, T)>,
}

impl<T: Real> SmoothFunction<T> {
    pub fn random(rng: &mut impl Rng) -> Self {
        let modes = (0..4)
            .map(|_| {
                let c = Complex::new(lit::<T>(rng.gen_range(-1.0..1.0)), lit::<T>(rng.gen_range(-1.0..1.0)));
                (c, rng.gen_range(-2..=2), rng.gen_range(0..=3), lit::<T>(rng.gen_range(0.0..std::f64::consts::TAU)))
            })
            .collect();
        Self { modes }
    }

    pub fn eval(&self, phi: T, theta: T) -> Complex<T> {
        self.modes.iter().fold(Complex::new(T::zero(), T::zero()), |acc, &(c, p, q, s)| {
            acc + c * Complex::from_polar(T::one(), int::<T>(p as i64) * phi)
                * (usz::<T>(q as usize) * theta + s).cos()
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityStudy<T> {
    pub a0: T,
    pub function: usize,
    /// `max|composed - closed|` on the band at each refinement level.
    pub differences: Vec<T>,
    pub orders: Vec<T>,
}

/// Compares [`apply_l2_composed`] with [`apply_l2_closed`] on `count` random
/// functions per `a0` under refinement, measured on the nodes of the
/// coarsest grid.
pub fn operator_identity_study<T: Real>(
    a0_values: &[T],
    count: usize,
    seed: u64,
    levels: &[(usize, usize)],
) -> Result<Vec<IdentityStudy<T>>> {
    let strides = strides(levels)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let funcs: Vec<SmoothFunction<T>> = (0..count).map(|_| SmoothFunction::random(&mut rng)).collect();
    let mut out = Vec::new();
    for &a0 in a0_values {
        for (i, f) in funcs.iter().enumerate() {
            let mut differences = Vec::with_capacity(levels.len());
            for (&(nt, np), &stride) in levels.iter().zip(&strides) {
                let g = AngularGrid::from_fn(lit(THETA_MIN), nt, np, |p, t| f.eval(p, t))?;
                differences.push(apply_l2_composed(&g, a0).sub(&apply_l2_closed(&g, a0)).band_norm_strided(stride));
            }
            let orders = observed_orders(&differences);
            out.push(IdentityStudy { a0, function: i, differences, orders });
        }
    }
    Ok(out)
}
