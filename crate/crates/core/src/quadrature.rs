//! Gauss–Legendre rules and composite integration with geometric grading
//! toward the endpoints of `[-1, 1]`.

use crate::scalar::{lit, usz, Real};

#[derive(Debug, Clone)]
pub struct GaussLegendre<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

impl<T: Real> GaussLegendre<T> {
    /// `n`-point rule on `[-1, 1]`; nodes by Newton iteration on `P_n`.
    pub fn new(n: usize) -> Self {
        assert!(n > 0, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![T::zero(); n];
        let mut weights = vec![T::zero(); n];
        let nn: T = usz(n);
        for i in 0..(n + 1) / 2 {
            let guess = T::PI() * (usz::<T>(i) + lit(0.75)) / (nn + lit(0.5));
            let mut x = guess.cos();
            let mut dp = T::one();
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x = x - dx;
                if dx.abs() <= T::epsilon() * lit(4.0) {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            dp = if d.is_finite() { d } else { dp };
            let w = lit::<T>(2.0) / ((T::one() - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    /// `∫_lo^hi f`.
    pub fn integrate(&self, lo: T, hi: T, mut f: impl FnMut(T) -> T) -> T {
        let half = (hi - lo) / lit(2.0);
        let mid = (hi + lo) / lit(2.0);
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(T::zero(), |acc, (&x, &w)| acc + w * f(mid + half * x))
            * half
    }

    /// Nodes and weights mapped to `[lo, hi]`.
    pub fn mapped(&self, lo: T, hi: T) -> impl Iterator<Item = (T, T)> + '_ {
        let half = (hi - lo) / lit(2.0);
        let mid = (hi + lo) / lit(2.0);
        self.nodes.iter().zip(&self.weights).map(move |(&x, &w)| (mid + half * x, w * half))
    }
}

/// `(P_n(x), P_n'(x))`.
fn legendre_with_derivative<T: Real>(n: usize, x: T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = x;
    for k in 2..=n {
        let k: T = usz(k);
        let p2 = ((lit::<T>(2.0) * k - T::one()) * x * p1 - (k - T::one()) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (T::one(), T::zero());
    }
    let nn: T = usz(n);
    (p1, nn * (x * p1 - p0) / (x * x - T::one()))
}

/// Panels of `[-1, 1]`: `[-1, -1 + 2^-levels], ..., [-1/2, 0], [0, 1/2], ...,
/// [1 - 2^-levels, 1]`, refined geometrically toward both endpoints.
pub fn graded_panels<T: Real>(levels: usize) -> Vec<(T, T)> {
    let half: T = lit(0.5);
    let mut left = Vec::with_capacity(levels + 1);
    let mut width = T::one();
    // [-1 + w/2, -1 + w] for w = 1, 1/2, ...
    for _ in 0..levels {
        let lo = -T::one() + width * half;
        left.push((lo, -T::one() + width));
        width = width * half;
    }
    left.push((-T::one(), -T::one() + width));
    left.reverse();
    let right: Vec<(T, T)> = left.iter().rev().map(|&(a, b)| (-b, -a)).collect();
    left.into_iter().chain(right).collect()
}

/// Composite rule over [`graded_panels`]: all `(x, w)` pairs in increasing `x`.
pub fn graded_rule<T: Real>(points: usize, levels: usize) -> Vec<(T, T)> {
    let gl = GaussLegendre::new(points);
    graded_panels(levels)
        .into_iter()
        .flat_map(|(a, b)| gl.mapped(a, b).collect::<Vec<_>>())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_for_polynomials() {
        let gl = GaussLegendre::<f64>::new(5);
        // degree 9 is integrated exactly by 5 points
        let v = gl.integrate(-1.0, 1.0, |x| x.powi(8) + x.powi(9));
        assert!((v - 2.0 / 9.0).abs() < 1e-15);
        let w: f64 = gl.weights.iter().sum();
        assert!((w - 2.0).abs() < 1e-14);
    }

    #[test]
    fn graded_rule_handles_endpoint_powers() {
        let rule = graded_rule::<f64>(20, 30);
        let v: f64 = rule.iter().map(|&(x, w)| w * (1.0 - x).sqrt()).sum();
        assert!((v - 4.0 * 2f64.sqrt() / 3.0).abs() < 1e-12);
        assert!(rule.windows(2).all(|p| p[0].0 < p[1].0));
    }

    #[test]
    fn panels_cover_interval() {
        let p = graded_panels::<f64>(4);
        assert_eq!(p.first().unwrap().0, -1.0);
        assert_eq!(p.last().unwrap().1, 1.0);
        for w in p.windows(2) {
            assert_eq!(w[0].1, w[1].0);
        }
    }
}
