//! Frobenius series at the regular singular point `z = 0` of the Bôcher
//! form `S'' + P S' + Q S = 0`, with
//! `P(z) = -2z/(1-z²)` and `Q(z) = (Q0 + Q1 z + ... + Q4 z⁴) / (4(1-z²)²)`.
//!
//! The indicial roots are `0` and `1`. The logarithmic coefficient of the
//! second solution vanishes (see [`crate::symbolic::log_coefficient_d0`]),
//! so both solutions are plain power series with radius of convergence 1.

use serde::Serialize;

use crate::error::{domain, Result};
use crate::params::{compute_q, PhysicalParams, QVector};
use crate::scalar::{int, lit, usz, Real, Scalar};

/// Root of the indicial equation `β² - β = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum IndicialRoot {
    Zero,
    One,
}

impl IndicialRoot {
    pub fn value(self) -> u32 {
        match self {
            IndicialRoot::Zero => 0,
            IndicialRoot::One => 1,
        }
    }

    pub fn from_value(b: u32) -> Option<Self> {
        match b {
            0 => Some(IndicialRoot::Zero),
            1 => Some(IndicialRoot::One),
            _ => None,
        }
    }

    pub fn other(self) -> Self {
        match self {
            IndicialRoot::Zero => IndicialRoot::One,
            IndicialRoot::One => IndicialRoot::Zero,
        }
    }
}

/// Value and first two derivatives of a function at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet<T> {
    pub value: T,
    pub d1: T,
    pub d2: T,
}

impl<T> Jet<T> {
    pub fn new(value: T, d1: T, d2: T) -> Self {
        Self { value, d1, d2 }
    }
}

/// Anything that can be differentiated twice at a point.
pub trait Solution<T> {
    fn jet(&self, z: T) -> Result<Jet<T>>;
}

impl<T, F> Solution<T> for F
where
    F: Fn(T) -> Result<Jet<T>>,
{
    fn jet(&self, z: T) -> Result<Jet<T>> {
        self(z)
    }
}

/// `(A_j, B_j)` of `zP(z) = Σ A_j z^j` and `z²Q(z) = Σ B_j z^j`.
pub fn numeric_ab<T: Scalar>(q: &QVector<T>, j: usize) -> (T, T) {
    let a = if j >= 2 && j % 2 == 0 { int(-2) } else { T::zero() };
    let mut b = T::zero();
    for i in 0..5 {
        if j >= i + 2 && (j - i) % 2 == 0 {
            b = b + q.0[i].clone() * usz::<T>((j - i) / 2);
        }
    }
    (a, b / int(4))
}

/// A truncated Frobenius solution `z^β Σ_{n≤N} C_n z^n` with `C_0 = 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesSolution<T> {
    pub beta: IndicialRoot,
    pub coeffs: Vec<T>,
    pub qvec: QVector<T>,
}

/// Evaluation bound inside the unit disk.
pub const R_MAX: f64 = 0.9;
/// Target for `|C_N| R_MAX^N` in adaptive truncation.
pub const TAIL_TOL: f64 = 1e-14;
pub const MAX_TERMS: usize = 400;

/// Runs the recurrence
/// `C_n = -1/((β+n)(β+n-1)) Σ_{k<n} [(β+k)A_{n-k} + B_{n-k}] C_k`
/// up to `C_n` inclusive.
pub fn frobenius_coeffs<T: Scalar>(q: &QVector<T>, beta: IndicialRoot, n: usize) -> SeriesSolution<T> {
    let mut s = SeriesSolution { beta, coeffs: vec![T::one()], qvec: q.clone() };
    let ab: Vec<(T, T)> = (0..=n).map(|j| numeric_ab(q, j)).collect();
    for _ in 1..=n {
        s.push_next(&ab);
    }
    s
}

impl<T: Scalar> SeriesSolution<T> {
    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn push_next(&mut self, ab: &[(T, T)]) {
        let j = self.coeffs.len();
        let b = self.beta.value() as i64;
        let mut sum = T::zero();
        for (k, ck) in self.coeffs.iter().enumerate() {
            let (a, bb) = &ab[j - k];
            sum = sum + (int::<T>(b + k as i64) * a.clone() + bb.clone()) * ck.clone();
        }
        let denom = (b + j as i64) * (b + j as i64 - 1);
        // Resonant step of the β = 0 series: the numerator is A_1 = B_1 = 0.
        let next = if denom == 0 { T::zero() } else { -sum / int(denom) };
        self.coeffs.push(next);
    }
}

impl<T: Real> SeriesSolution<T> {
    /// Truncates once two consecutive `|C_N| R_MAX^N` fall below
    /// [`TAIL_TOL`], or at [`MAX_TERMS`].
    pub fn adaptive(q: &QVector<T>, beta: IndicialRoot) -> Self {
        let r: T = lit(R_MAX);
        let tol = lit::<T>(TAIL_TOL).max(T::epsilon() * lit(0.01));
        let ab: Vec<(T, T)> = (0..=MAX_TERMS).map(|j| numeric_ab(q, j)).collect();
        let mut s = SeriesSolution { beta, coeffs: vec![T::one()], qvec: q.clone() };
        let mut rn = T::one();
        let mut below = 0;
        while s.truncation() < MAX_TERMS {
            s.push_next(&ab);
            rn = rn * r;
            let last = *s.coeffs.last().expect("non-empty");
            if last.abs() * rn < tol {
                below += 1;
                if below >= 2 && s.truncation() >= 8 {
                    break;
                }
            } else {
                below = 0;
            }
        }
        s
    }

    pub fn for_params(p: &PhysicalParams<T>, beta: IndicialRoot) -> Self {
        Self::adaptive(&compute_q(p), beta)
    }

    fn check_domain(z: T) -> Result<()> {
        if !(z.abs() <= lit(R_MAX)) {
            return domain(format!("series evaluation needs |z| <= {R_MAX}, got {z}"));
        }
        Ok(())
    }

    /// `z^β Σ C_n z^n` and the tail estimate `|C_N z^N| / (1 - |z|)`.
    pub fn eval(&self, z: T) -> Result<SeriesValue<T>> {
        Self::check_domain(z)?;
        let jet = self.jet_unchecked(z);
        let n = self.truncation();
        let last = *self.coeffs.last().expect("non-empty");
        let tail = (last * z.powi(n as i32)).abs() / (T::one() - z.abs());
        Ok(SeriesValue { value: jet.value, tail })
    }

    fn jet_unchecked(&self, z: T) -> Jet<T> {
        // Horner for the polynomial part and its two derivatives.
        let (mut p, mut dp, mut ddp) = (T::zero(), T::zero(), T::zero());
        for &c in self.coeffs.iter().rev() {
            ddp = ddp * z + lit::<T>(2.0) * dp;
            dp = dp * z + p;
            p = p * z + c;
        }
        match self.beta {
            IndicialRoot::Zero => Jet::new(p, dp, ddp),
            // (z p)' = p + z p', (z p)'' = 2p' + z p''
            IndicialRoot::One => Jet::new(z * p, p + z * dp, lit::<T>(2.0) * dp + z * ddp),
        }
    }
}

impl<T: Real> Solution<T> for SeriesSolution<T> {
    fn jet(&self, z: T) -> Result<Jet<T>> {
        Self::check_domain(z)?;
        Ok(self.jet_unchecked(z))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesValue<T> {
    pub value: T,
    pub tail: T,
}

/// `P(z) = -2z/(1-z²)`.
pub fn bocher_p<T: Real>(z: T) -> T {
    -lit::<T>(2.0) * z / (T::one() - z * z)
}

/// `Q(z) = (Q0 + ... + Q4 z⁴) / (4(1-z²)²)`.
pub fn bocher_q<T: Real>(q: &QVector<T>, z: T) -> T {
    let s = T::one() - z * z;
    q.poly(&z) / (lit::<T>(4.0) * s * s)
}

/// `S'' + P S' + Q S` for Bôcher coefficients `q`.
pub fn bocher_residual<T: Real>(q: &QVector<T>, f: &impl Solution<T>, z: T) -> Result<T> {
    if !(z.abs() < T::one()) {
        return domain(format!("residual needs |z| < 1, got {z}"));
    }
    let j = f.jet(z)?;
    Ok(j.d2 + bocher_p(z) * j.d1 + bocher_q(q, z) * j.value)
}

/// Bôcher residual of `f` for the angular equation with parameters `p`.
pub fn ode_residual<T: Real>(p: &PhysicalParams<T>, f: &impl Solution<T>, z: T) -> Result<T> {
    bocher_residual(&compute_q(p), f, z)
}

/// `s1 s2' - s1' s2`. By Abel's identity `(1-z²) W(z)` is constant.
pub fn wronskian<T: Real>(s1: &SeriesSolution<T>, s2: &SeriesSolution<T>, z: T) -> Result<T> {
    let a = s1.jet(z)?;
    let b = s2.jet(z)?;
    Ok(a.value * b.d1 - a.d1 * b.value)
}

/// Both independent solutions `(S_{l,1}, S_{l,2})` for one parameter set.
pub fn solution_pair<T: Real>(q: &QVector<T>) -> (SeriesSolution<T>, SeriesSolution<T>) {
    (SeriesSolution::adaptive(q, IndicialRoot::One), SeriesSolution::adaptive(q, IndicialRoot::Zero))
}
