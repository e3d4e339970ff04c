//! Exact rational arithmetic for the Frobenius coefficients at `z = 0`.

pub mod coeffs;
pub mod poly;
pub mod tables;

pub use coeffs::{log_coefficient_d0, symbolic_a, symbolic_ab, symbolic_b, symbolic_c, symbolic_coefficients};
pub use poly::{rat, Monomial, QPolynomial};
pub use tables::{table_entry, verify_tables, RowReport, TablesReport};
