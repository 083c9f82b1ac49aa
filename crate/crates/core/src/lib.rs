//! Exact arithmetic for multiplicative dependence of rational values modulo
//! finitely generated groups, their division groups, and the approximate
//! division groups obtained by allowing a factor of small Weil height.
//!
//! Everything is specialised to the rationals. The modules build on each
//! other bottom-up:
//!
//! * [`exactnum`]: factored rationals, places, S-norms, heights and
//!   bounded-height enumeration.
//! * [`polyrat`]: univariate polynomials over the rationals.
//! * [`mulrel`]: integer lattices and the dependence/membership tests.
//! * [`stbound`]: the explicit Schinzel–Tijdeman exponent bound in log-space.
//! * [`expsearch`]: place-set constructions, the hyper-elliptic searcher and
//!   the finiteness scanners.

pub mod error;
pub mod exactnum;
pub mod expsearch;
pub mod mulrel;
pub mod polyrat;
pub mod stbound;

pub use error::{Error, Result};

/// Library version, stamped into every serialized report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
struct ReadmeDoctests;
