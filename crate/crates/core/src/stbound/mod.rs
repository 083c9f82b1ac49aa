//! Explicit constants of the generalized Schinzel–Tijdeman theorem and the
//! exponent bound `m ≤ 2C log C`, evaluated in log-space with
//! arbitrary-precision reals.

mod bound;
mod real;

pub use bound::{
    compute_constants, compute_constants_with, exponent_bound, lemma27_rhs, BoundInputs, BoundReport,
    ExponentBound, DEFAULT_PRECISION, REPORT_DIGITS,
};
