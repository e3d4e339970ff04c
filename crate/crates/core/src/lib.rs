//! Angular equation of a charged massive scalar field on a Kerr background:
//! parameter maps, exact Frobenius coefficients, closed-form solutions at
//! `α = 0`, monopole harmonics and a Sturm–Liouville eigenvalue solver.
//!
//! ```
//! use gf_angular::{compute_q, Params};
//! let q = compute_q(&Params::new(1.0, 1.0, 0.0, 1, 1, 2.0));
//! assert_eq!(q.0, [-20.0, 0.0, 16.0, 8.0, -4.0]);
//! ```
//!
//! Numerical code is generic over [`Real`] (`f32`, `f64`); the coefficient
//! maps also accept exact [`Rational`]s.

pub mod error;
pub mod frobenius;
pub mod harmonics;
pub mod ode;
pub mod params;
pub mod quadrature;
pub mod scalar;
pub mod special;
pub mod sturm;
pub mod symbolic;

pub use error::{Error, Result};
pub use frobenius::{IndicialRoot, Jet, SeriesSolution, Solution};
pub use harmonics::{AngularGrid, Harmonic};
pub use params::{compute_a0, compute_q, exponents, gf_to_general, reduce_general, GeneralParams, PhysicalParams, QVector};
pub use scalar::{Real, Scalar};
pub use sturm::{EigenResult, SLProblem};

pub type Rational = num_rational::BigRational;

pub type Params = PhysicalParams<f64>;
pub type ExactParams = PhysicalParams<Rational>;
pub type General = GeneralParams<f64>;
pub type Q = QVector<f64>;
pub type ExactQ = QVector<Rational>;
pub type Series = SeriesSolution<f64>;
pub type Grid = AngularGrid<f64>;
pub type Problem = SLProblem<f64>;
