//! Sturm–Liouville form `(U S')' + (V + λ + μ̃²α²) S = 0`, `U = x² - 1`, of the
//! angular equation, and a two-sided shooting solver for `λ`.
//!
//! Each side is integrated in its own local variable `s = 1 + x` (left) or
//! `s = 1 - x` (right), so `1 - x² = s(2 - s)` stays accurate at the ends.
//! The regular endpoint behaviour is `S ~ s^ρ` with `ρ₊ = |m-n|/2` at
//! `x = 1` and `ρ₋ = |m+n|/2` at `x = -1`.

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::frobenius::Solution;
use crate::ode::{integrate, OdeOptions, State};
use crate::params::{compute_q, PhysicalParams, QVector};
use crate::quadrature::graded_rule;
use crate::scalar::{int, lit, usz, Real};

/// `V(x) = α²(k²-μ̃²)(1-x²) + 2nαk x + (m²+n²-2mnx)/(1-x²)`.
///
/// The last term is evaluated as `(m-n)²/(2(1-x)) + (m+n)²/(2(1+x))`, which
/// is finite at an endpoint whose coefficient vanishes.
pub fn sl_v<T: Real>(p: &PhysicalParams<T>, x: T) -> Result<T> {
    let one = T::one();
    if !(x.abs() <= one) {
        return domain(format!("V needs |x| <= 1, got {x}"));
    }
    let (dm, dp) = ((p.m - p.n) * (p.m - p.n), (p.m + p.n) * (p.m + p.n));
    if (x == one && dm != 0) || (x == -one && dp != 0) {
        return domain(format!("V has a pole at x = {x} for m = {}, n = {}", p.m, p.n));
    }
    Ok(potential(p, one - x, one + x, x))
}

/// `V` from `1 - x`, `1 + x` and `x` supplied separately.
fn potential<T: Real>(p: &PhysicalParams<T>, one_minus: T, one_plus: T, x: T) -> T {
    let two: T = lit(2.0);
    let a2 = p.alpha * p.alpha;
    let (dm, dp) = ((p.m - p.n) * (p.m - p.n), (p.m + p.n) * (p.m + p.n));
    let mut v = a2 * (p.k * p.k - p.mu_tilde * p.mu_tilde) * one_minus * one_plus + two * int::<T>(p.n) * p.alpha * p.k * x;
    if dm != 0 {
        v = v + int::<T>(dm) / (two * one_minus);
    }
    if dp != 0 {
        v = v + int::<T>(dp) / (two * one_plus);
    }
    v
}

/// `d/dx[U f'] + (V + λ + μ̃²α²) f` with `λ = p.lambda`.
pub fn sl_form_check<T: Real>(p: &PhysicalParams<T>, f: &impl Solution<T>, x: T) -> Result<T> {
    if !(x.abs() < T::one()) {
        return domain(format!("SL residual needs |x| < 1, got {x}"));
    }
    let j = f.jet(x)?;
    let u = x * x - T::one();
    let w = sl_v(p, x)? + p.lambda + p.mu_tilde * p.mu_tilde * p.alpha * p.alpha;
    Ok(u * j.d2 + lit::<T>(2.0) * x * j.d1 + w * j.value)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum End {
    /// `x = -1`, `s = 1 + x`.
    Left,
    /// `x = +1`, `s = 1 - x`.
    Right,
}

impl End {
    fn x0<T: Real>(self) -> T {
        match self {
            End::Left => -T::one(),
            End::Right => T::one(),
        }
    }

    /// `dx/ds`.
    fn sigma<T: Real>(self) -> T {
        -self.x0::<T>()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ShootingOptions<T> {
    /// Offset of the first integration point from each endpoint.
    pub eps: T,
    /// Number of terms of the local endpoint series.
    pub series_terms: usize,
    /// Target `|M(λ)|` for the normalized matching function.
    pub tol: T,
    /// `λ` spacing of the sign scan.
    pub scan_step: T,
    pub ode: OdeOptions<T>,
}

impl<T: Real> Default for ShootingOptions<T> {
    fn default() -> Self {
        let tol = lit::<T>(1e-10).max(T::epsilon() * lit(1000.0));
        Self { eps: lit(1e-6), series_terms: 4, tol, scan_step: lit(0.1), ode: OdeOptions::default() }
    }
}

/// The eigenvalue problem for fixed `(α, k, μ̃, m, n)`; `params.lambda` is ignored.
#[derive(Debug, Clone)]
pub struct SLProblem<T> {
    pub params: PhysicalParams<T>,
    /// `ρ₋ = |m+n|/2` at `x = -1`.
    pub rho_minus: T,
    /// `ρ₊ = |m-n|/2` at `x = +1`.
    pub rho_plus: T,
    pub options: ShootingOptions<T>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenResult<T> {
    pub l_index: usize,
    pub lambda: T,
    pub node_count: usize,
    pub residual: T,
    pub bracket: (T, T),
}

/// Both branches at one `λ`, on their accepted meshes.
struct Shot<T> {
    left: Vec<(T, State<T>)>,
    right: Vec<(T, State<T>)>,
}

impl<T: Real> SLProblem<T> {
    pub fn new(params: &PhysicalParams<T>) -> Result<Self> {
        if !params.is_finite() {
            return domain("SL problem needs finite parameters");
        }
        let half: T = lit(0.5);
        Ok(Self {
            params: params.clone(),
            rho_minus: int::<T>((params.m + params.n).abs()) * half,
            rho_plus: int::<T>((params.m - params.n).abs()) * half,
            options: ShootingOptions::default(),
        })
    }

    pub fn with_options(mut self, options: ShootingOptions<T>) -> Self {
        self.options = options;
        self
    }

    pub fn rho(&self, end: End) -> T {
        match end {
            End::Left => self.rho_minus,
            End::Right => self.rho_plus,
        }
    }

    /// `V + λ + μ̃²α²` at local coordinate `s` from `end`.
    fn w_local(&self, end: End, s: T, lambda: T) -> T {
        let p = &self.params;
        let x = end.x0::<T>() + end.sigma::<T>() * s;
        let two: T = lit(2.0);
        let (one_minus, one_plus) = match end {
            End::Left => (two - s, s),
            End::Right => (s, two - s),
        };
        potential(p, one_minus, one_plus, x) + lambda + p.mu_tilde * p.mu_tilde * p.alpha * p.alpha
    }

    /// `d/ds (S, S_s)` on one branch: `S_ss = (2xσ S_s + W S)/(s(2-s))`.
    fn rhs(&self, end: End, lambda: T, s: T, y: &State<T>) -> State<T> {
        let x = end.x0::<T>() + end.sigma::<T>() * s;
        let two: T = lit(2.0);
        let d2 = (two * x * end.sigma::<T>() * y[1] + self.w_local(end, s, lambda) * y[0]) / (s * (two - s));
        [y[1], d2]
    }

    /// Coefficients `d_0 = 1, d_1, ...` of the regular local series
    /// `S = s^ρ Σ d_j s^j` at `end`.
    pub fn endpoint_series(&self, end: End, lambda: T) -> Vec<T> {
        let q = compute_q(&self.params.with_lambda(lambda));
        let c = local_q(&q, end);
        let rho = self.rho(end);
        let a = [lit::<T>(4.0), lit(-4.0), T::one()];
        let b = [lit::<T>(4.0), lit(-6.0), lit(2.0)];
        let four: T = lit(4.0);
        let mut d = vec![T::one()];
        for n in 1..self.options.series_terms {
            let mut sum = T::zero();
            for i in 1..=n.min(4) {
                let r = usz::<T>(n - i) + rho;
                let ai = a.get(i).copied().unwrap_or_else(T::zero);
                let bi = b.get(i).copied().unwrap_or_else(T::zero);
                sum = sum + d[n - i] * (r * (r - T::one()) * ai + r * bi + c[i] / four);
            }
            let nn: T = usz(n);
            d.push(-sum / (four * nn * (nn + lit::<T>(2.0) * rho)));
        }
        d
    }

    /// `(S, dS/ds)` of the local series at `s`.
    fn series_state(&self, end: End, d: &[T], s: T) -> State<T> {
        let rho = self.rho(end);
        let (mut v, mut dv) = (T::zero(), T::zero());
        for (j, &dj) in d.iter().enumerate() {
            let e = usz::<T>(j) + rho;
            v = v + dj * s.powf(e);
            if e != T::zero() {
                dv = dv + dj * e * s.powf(e - T::one());
            }
        }
        [v, dv]
    }

    /// Integrates one branch from `s = eps` through the ascending `targets`
    /// (each in `[eps, 1]`) to `s = 1`.
    fn branch(&self, end: End, lambda: T, targets: &[T]) -> Result<(Vec<(T, State<T>)>, Vec<State<T>>)> {
        let eps = self.options.eps;
        let d = self.endpoint_series(end, lambda);
        let y0 = self.series_state(end, &d, eps);
        let mut stops: Vec<T> = targets.to_vec();
        stops.push(T::one());
        let mut opts = self.options.ode;
        opts.initial_fraction = eps * lit(0.1);
        let traj = integrate(|s, y: &State<T>| self.rhs(end, lambda, s, y), eps, y0, &stops, &opts)?;
        let mesh = traj.xs.into_iter().zip(traj.ys).collect();
        let mut at = traj.at_targets;
        at.pop();
        Ok((mesh, at))
    }

    fn shoot(&self, lambda: T) -> Result<Shot<T>> {
        let (left, _) = self.branch(End::Left, lambda, &[])?;
        let (right, _) = self.branch(End::Right, lambda, &[])?;
        Ok(Shot { left, right })
    }

    /// Normalized matching function
    /// `M(λ) = (S_L' S_R - S_L S_R') / (|(S_L, S_L')| |(S_R, S_R')|)` at `x = 0`.
    pub fn matching(&self, lambda: T) -> Result<T> {
        let shot = self.shoot(lambda)?;
        Ok(match_at_origin(&shot).0)
    }

    /// Refines a sign change of [`SLProblem::matching`] inside `bracket`.
    pub fn shoot_eigenvalue(&self, bracket: (T, T)) -> Result<EigenResult<T>> {
        let (mut lo, mut hi) = if bracket.0 <= bracket.1 { bracket } else { (bracket.1, bracket.0) };
        let mut f_lo = self.matching(lo)?;
        let mut f_hi = self.matching(hi)?;
        let tol = self.options.tol;
        let lambda = if f_lo.abs() < tol {
            lo
        } else if f_hi.abs() < tol {
            hi
        } else {
            if f_lo.signum() == f_hi.signum() {
                return Err(Error::Bracket { lo: to_f64(lo), hi: to_f64(hi) });
            }
            // bisection down to a short bracket, then Illinois-modified secant
            let mut side = 0i8;
            let mut found = None;
            for it in 0..300 {
                let width = hi - lo;
                let mid = if it < 12 || width > lit(1e-2) {
                    (lo + hi) / lit(2.0)
                } else {
                    (lo * f_hi - hi * f_lo) / (f_hi - f_lo)
                };
                let f_mid = self.matching(mid)?;
                if f_mid.abs() < tol || width <= T::epsilon() * lit::<T>(8.0) * mid.abs().max(T::one()) {
                    found = Some(mid);
                    break;
                }
                if f_mid.signum() == f_lo.signum() {
                    lo = mid;
                    f_lo = f_mid;
                    if side == -1 {
                        f_hi = f_hi / lit(2.0);
                    }
                    side = -1;
                } else {
                    hi = mid;
                    f_hi = f_mid;
                    if side == 1 {
                        f_lo = f_lo / lit(2.0);
                    }
                    side = 1;
                }
            }
            found.ok_or_else(|| Error::Integration("eigenvalue refinement did not converge".into()))?
        };
        let ef = Eigenfunction::new(self, lambda)?;
        let node_count = ef.node_count;
        Ok(EigenResult {
            l_index: node_count + self.params.m.unsigned_abs().max(self.params.n.unsigned_abs()) as usize,
            lambda,
            node_count,
            residual: ef.residual()?,
            bracket,
        })
    }

    /// Eigenvalues in `[lambda_min, lambda_max]`, scanning downward from
    /// `lambda_max` and stopping after `count` (if given) have been found.
    pub fn scan_eigenvalues(&self, lambda_min: T, lambda_max: T, count: Option<usize>) -> Result<Scan<T>> {
        if !(lambda_min < lambda_max) {
            return domain(format!("scan needs lambda_min < lambda_max, got {lambda_min} >= {lambda_max}"));
        }
        let steps = ((lambda_max - lambda_min) / self.options.scan_step).ceil().to_usize().unwrap_or(1).max(1);
        let h = (lambda_max - lambda_min) / usz(steps);
        let mut scan = Scan { eigenpairs: Vec::new(), warnings: Vec::new() };
        let mut upper = lambda_max;
        let mut f_upper = self.matching(upper)?;
        for i in (0..steps).rev() {
            if count.is_some_and(|c| scan.eigenpairs.len() >= c) {
                break;
            }
            let lower = if i == 0 { lambda_min } else { lambda_min + h * usz(i) };
            let f_lower = self.matching(lower)?;
            // a root exactly on a grid point belongs to the cell below it
            if f_upper != T::zero() && (f_lower == T::zero() || f_lower.signum() != f_upper.signum()) {
                let r = self.shoot_eigenvalue((lower, upper))?;
                if r.residual > lit(1e-6) {
                    scan.warnings.push(format!(
                        "candidate λ = {} in ({lower}, {upper}) has residual {:e}",
                        r.lambda, to_f64(r.residual)
                    ));
                }
                scan.eigenpairs.push(r);
            }
            upper = lower;
            f_upper = f_lower;
        }
        scan.eigenpairs.sort_by(|a, b| b.lambda.partial_cmp(&a.lambda).expect("finite eigenvalues"));
        Ok(scan)
    }
}

/// Result of [`SLProblem::scan_eigenvalues`], ordered by decreasing `λ`.
#[derive(Debug, Clone, Serialize)]
pub struct Scan<T> {
    pub eigenpairs: Vec<EigenResult<T>>,
    pub warnings: Vec<String>,
}

/// `Q(x0 + σ s)` as a polynomial in `s`.
fn local_q<T: Real>(q: &QVector<T>, end: End) -> [T; 5] {
    let x0: T = end.x0();
    let sigma: T = end.sigma();
    let mut c = [T::zero(); 5];
    for (j, qj) in q.0.iter().enumerate() {
        // (x0 + σ s)^j = Σ_i binom(j, i) x0^{j-i} σ^i s^i
        let mut binom = T::one();
        for (i, ci) in c.iter_mut().enumerate().take(j + 1) {
            *ci = *ci + *qj * binom * x0.powi((j - i) as i32) * sigma.powi(i as i32);
            binom = binom * usz::<T>(j - i) / usz::<T>(i + 1);
        }
    }
    c
}

fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// `(M, κ)` at `x = 0`, with `κ` the least-squares factor mapping the right
/// state onto the left one.
fn match_at_origin<T: Real>(shot: &Shot<T>) -> (T, T) {
    let l = shot.left.last().expect("non-empty").1;
    let r = shot.right.last().expect("non-empty").1;
    // d/dx = +d/ds on the left, -d/ds on the right
    let (sl, dl) = (l[0], l[1]);
    let (sr, dr) = (r[0], -r[1]);
    let nl = (sl * sl + dl * dl).sqrt();
    let nr = (sr * sr + dr * dr).sqrt();
    let m = (dl * sr - sl * dr) / (nl * nr);
    let kappa = (sl * sr + dl * dr) / (nr * nr);
    (m, kappa)
}

/// An eigenfunction assembled from both branches at a converged `λ`,
/// scaled so the branches agree at `x = 0` and `S(-1 + s) ~ s^ρ₋`.
pub struct Eigenfunction<'a, T> {
    pub problem: &'a SLProblem<T>,
    pub lambda: T,
    /// Factor applied to the right branch.
    pub kappa: T,
    pub node_count: usize,
}

impl<'a, T: Real> Eigenfunction<'a, T> {
    pub fn new(problem: &'a SLProblem<T>, lambda: T) -> Result<Self> {
        let shot = problem.shoot(lambda)?;
        let (_, kappa) = match_at_origin(&shot);
        let mut samples: Vec<T> = shot.left.iter().map(|(_, y)| y[0]).collect();
        samples.extend(shot.right.iter().rev().skip(1).map(|(_, y)| kappa * y[0]));
        Ok(Self { problem, lambda, kappa, node_count: count_sign_changes(&samples) })
    }

    /// `(S(x), S'(x))` for arbitrary points in `(-1, 1)`, in input order.
    pub fn states(&self, xs: &[T]) -> Result<Vec<State<T>>> {
        let eps = self.problem.options.eps;
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (i, &x) in xs.iter().enumerate() {
            if !(x.abs() < T::one()) {
                return domain(format!("eigenfunction needs |x| < 1, got {x}"));
            }
            if x <= T::zero() {
                left.push((T::one() + x, i));
            } else {
                right.push((T::one() - x, i));
            }
        }
        let mut out = vec![[T::zero(); 2]; xs.len()];
        for (end, pts, scale) in [(End::Left, &mut left, T::one()), (End::Right, &mut right, self.kappa)] {
            pts.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite points"));
            let (near, far): (Vec<_>, Vec<_>) = pts.iter().partition(|(s, _)| *s < eps);
            let d = self.problem.endpoint_series(end, self.lambda);
            for &(s, i) in &near {
                let st = self.problem.series_state(end, &d, s);
                out[i] = [scale * st[0], scale * end.sigma::<T>() * st[1]];
            }
            let targets: Vec<T> = far.iter().map(|p| p.0).collect();
            let (_, at) = self.problem.branch(end, self.lambda, &targets)?;
            for (&(_, i), st) in far.iter().zip(at) {
                out[i] = [scale * st[0], scale * end.sigma::<T>() * st[1]];
            }
        }
        Ok(out)
    }

    pub fn values(&self, xs: &[T]) -> Result<Vec<T>> {
        Ok(self.states(xs)?.into_iter().map(|s| s[0]).collect())
    }

    /// Max of `|(U S')' + W S|` over ten interior points, with the flux
    /// derivative taken by a five-point difference, relative to `max |S|`.
    pub fn residual(&self) -> Result<T> {
        let h: T = lit(1e-3);
        let offsets = [-2.0, -1.0, 0.0, 1.0, 2.0];
        let centres: Vec<T> = (0..10).map(|i| lit::<T>(-0.9) + lit::<T>(0.2) * usz::<T>(i)).collect();
        let xs: Vec<T> = centres.iter().flat_map(|&c| offsets.iter().map(move |&o| c + h * lit::<T>(o))).collect();
        let st = self.states(&xs)?;
        let scale = st.iter().fold(T::zero(), |m, s| m.max(s[0].abs())).max(T::min_positive_value());
        let p = &self.problem.params;
        let mut worst = T::zero();
        for (ci, &c) in centres.iter().enumerate() {
            let flux = |k: usize| {
                let x = xs[5 * ci + k];
                (x * x - T::one()) * st[5 * ci + k][1]
            };
            let dflux = (flux(0) - lit::<T>(8.0) * flux(1) + lit::<T>(8.0) * flux(3) - flux(4)) / (lit::<T>(12.0) * h);
            let w = sl_v(p, c)? + self.lambda + p.mu_tilde * p.mu_tilde * p.alpha * p.alpha;
            worst = worst.max((dflux + w * st[5 * ci + 2][0]).abs() / scale);
        }
        Ok(worst)
    }
}

fn count_sign_changes<T: Real>(samples: &[T]) -> usize {
    let max = samples.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    let floor = max * lit(1e-8);
    let mut prev: Option<bool> = None;
    let mut count = 0;
    for &v in samples {
        if v.abs() <= floor {
            continue;
        }
        let pos = v > T::zero();
        if prev.is_some_and(|p| p != pos) {
            count += 1;
        }
        prev = Some(pos);
    }
    count
}

/// `∫ S_1 S_2 dx / sqrt(∫ S_1² ∫ S_2²)` over `[-1, 1]`.
pub fn orthogonality_integral<T: Real>(e1: &Eigenfunction<'_, T>, e2: &Eigenfunction<'_, T>) -> Result<T> {
    let rule = graded_rule::<T>(ORTHO_POINTS, ORTHO_LEVELS);
    let xs: Vec<T> = rule.iter().map(|r| r.0).collect();
    let a = e1.values(&xs)?;
    let b = e2.values(&xs)?;
    let (mut ab, mut aa, mut bb) = (T::zero(), T::zero(), T::zero());
    for ((&(_, w), &u), &v) in rule.iter().zip(&a).zip(&b) {
        ab = ab + w * u * v;
        aa = aa + w * u * u;
        bb = bb + w * v * v;
    }
    Ok(ab / (aa * bb).sqrt())
}

const ORTHO_POINTS: usize = 16;
const ORTHO_LEVELS: usize = 8;

/// Pairwise normalized integrals of the eigenfunctions at `lambdas`.
pub fn orthogonality_matrix<T: Real>(problem: &SLProblem<T>, lambdas: &[T]) -> Result<Vec<Vec<T>>> {
    let fns = lambdas.iter().map(|&l| Eigenfunction::new(problem, l)).collect::<Result<Vec<_>>>()?;
    fns.iter().map(|f| fns.iter().map(|g| orthogonality_integral(f, g)).collect()).collect()
}
