//! Place-set constructions, the hyper-elliptic equation searcher with bound
//! validation, and scanners for dependence of polynomial values and
//! iterates.

mod dioph;
mod hyper;
mod instance;
mod periodic;
mod scan;
mod sets;

pub use dioph::{diophantine_exponent_basis, ExponentBasis};
pub use hyper::{
    hyperelliptic_search, hyperelliptic_search_with_cap, s_integers_up_to, validate_bound, HyperReport,
    HyperSolution, ValidationReport,
};
pub use instance::{check_theorem12_hypotheses, check_theorem15_hypotheses, HypothesisCheck, InstanceSpec};
pub use periodic::{check_zero_periodicity, Periodicity, PeriodicityReport};
pub use scan::{
    reduce_by_gcd, scan_corollary13, scan_theorem12, scan_theorem15, ScanHit, ScanOptions, ScanReport, Shell,
    SkippedCandidate, Stabilization, SHELL_WIDTH,
};
pub use sets::{s_f_gamma_eps, s_f_gamma_eps_with_cap, s_gamma, PairResultant, PlaceBreakdown};
