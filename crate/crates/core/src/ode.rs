//! Adaptive Dormand–Prince 5(4) integration of two-component first-order
//! systems, stopping exactly at requested abscissae.

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

pub type State<T> = [T; 2];

#[derive(Debug, Clone, Copy)]
pub struct OdeOptions<T> {
    pub rtol: T,
    pub atol: T,
    /// First trial step as a fraction of the total span.
    pub initial_fraction: T,
    pub max_steps: usize,
}

impl<T: Real> Default for OdeOptions<T> {
    fn default() -> Self {
        let eps = T::epsilon();
        Self {
            rtol: lit::<T>(1e-11).max(eps * lit(100.0)),
            atol: lit::<T>(1e-14).max(eps),
            initial_fraction: lit(1e-3),
            max_steps: 200_000,
        }
    }
}

/// Accepted mesh of one integration run.
#[derive(Debug, Clone)]
pub struct Trajectory<T> {
    pub xs: Vec<T>,
    pub ys: Vec<State<T>>,
    /// States at the requested targets, in the order given.
    pub at_targets: Vec<State<T>>,
}

impl<T: Real> Trajectory<T> {
    pub fn last(&self) -> State<T> {
        *self.ys.last().expect("trajectory holds the initial point")
    }
}

// Butcher tableau
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// fifth- minus fourth-order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

fn axpy<T: Real>(y: &State<T>, h: T, terms: &[(f64, &State<T>)]) -> State<T> {
    let mut out = *y;
    for (c, k) in terms {
        let c: T = lit(*c);
        out[0] = out[0] + h * c * k[0];
        out[1] = out[1] + h * c * k[1];
    }
    out
}

/// Integrates `y' = f(x, y)` from `(x0, y0)` through the monotone `targets`
/// (all on the same side of `x0`), ending at the last one.
pub fn integrate<T: Real, F>(f: F, x0: T, y0: State<T>, targets: &[T], opts: &OdeOptions<T>) -> Result<Trajectory<T>>
where
    F: Fn(T, &State<T>) -> State<T>,
{
    let mut traj = Trajectory { xs: vec![x0], ys: vec![y0], at_targets: Vec::with_capacity(targets.len()) };
    let Some(&x_end) = targets.last() else {
        return Ok(traj);
    };
    let dir = if x_end >= x0 { T::one() } else { -T::one() };
    if targets.iter().try_fold(x0, |prev, &t| if (t - prev) * dir >= T::zero() { Some(t) } else { None }).is_none() {
        return Err(Error::Integration("targets must be monotone in the direction of integration".into()));
    }

    let span = (x_end - x0).abs();
    let mut x = x0;
    let mut y = y0;
    let mut k1 = f(x, &y);
    let mut h = (span * opts.initial_fraction).max(T::min_positive_value());
    let h_floor = lit::<T>(64.0) * T::epsilon();
    let mut steps = 0usize;

    for &target in targets {
        while (target - x) * dir > T::zero() {
            steps += 1;
            if steps > opts.max_steps {
                return Err(Error::Integration(format!("step limit {} reached at x = {x}", opts.max_steps)));
            }
            let remaining = (target - x).abs();
            let last = h >= remaining;
            let hs = dir * if last { remaining } else { h };

            let k2 = f(x + hs * lit(C2), &axpy(&y, hs, &[(A21, &k1)]));
            let k3 = f(x + hs * lit(C3), &axpy(&y, hs, &[(A31, &k1), (A32, &k2)]));
            let k4 = f(x + hs * lit(C4), &axpy(&y, hs, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
            let k5 = f(x + hs * lit(C5), &axpy(&y, hs, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]));
            let k6 = f(x + hs, &axpy(&y, hs, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]));
            let y_new = axpy(&y, hs, &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)]);
            let k7 = f(x + hs, &y_new);
            let err = axpy(&[T::zero(); 2], hs, &[(E1, &k1), (E3, &k3), (E4, &k4), (E5, &k5), (E6, &k6), (E7, &k7)]);

            let mut norm = T::zero();
            for i in 0..2 {
                let sc = opts.atol + opts.rtol * y[i].abs().max(y_new[i].abs());
                norm = norm.max((err[i] / sc).abs());
            }
            if !norm.is_finite() || !y_new[0].is_finite() || !y_new[1].is_finite() {
                h = h / lit(10.0);
                if h < h_floor * (x.abs() + span * T::epsilon()) {
                    return Err(Error::Integration(format!("non-finite state near x = {x}")));
                }
                continue;
            }
            if norm <= T::one() {
                x = if last { target } else { x + hs };
                y = y_new;
                k1 = k7;
                traj.xs.push(x);
                traj.ys.push(y);
            }
            let factor = if norm == T::zero() {
                lit(5.0)
            } else {
                (lit::<T>(0.9) * norm.powf(lit(-0.2))).max(lit(0.2)).min(lit(5.0))
            };
            if norm <= T::one() && last {
                // a step shortened to hit the target says nothing about the controller
                h = h.max(hs.abs() * factor);
            } else {
                h = hs.abs() * factor;
            }
            if h < h_floor * (x.abs() + span * T::epsilon()) {
                return Err(Error::Integration(format!("step size underflow at x = {x}")));
            }
        }
        traj.at_targets.push(y);
    }
    Ok(traj)
}
