//! Closed-form solution pipeline for the equation with `α = 0`.

pub mod hypergeometric;
pub mod jacobi;
pub mod nu;
pub mod solution;

pub use hypergeometric::{gauss_2f1, gauss_2f1_jet};
pub use jacobi::{jacobi_jet, jacobi_poly};
pub use nu::{nu_quantized_lambda, nu_reduce, quantization_a, HypergeoParams, LinearPoly, NuReduction};
pub use solution::{
    general_residual, quantized_solution, solve_a0, HypergeometricSolution, PhiFactor, QuantizedSolution,
};
