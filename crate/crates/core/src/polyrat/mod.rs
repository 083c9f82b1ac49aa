//! Univariate polynomials over the rationals: arithmetic, gcd, squarefree
//! decomposition, resultants, discriminants, heights, reduction data, coprime
//! bases and iteration.

mod basis;
mod iterate;
mod poly;
mod reduction;
mod resultant;
mod squarefree;

pub use basis::{coprime_basis, CoprimeBasis};
pub use iterate::{evaluate_and_iterate, DEFAULT_ITERATE_HEIGHT_CAP};
pub use poly::Poly;
pub use reduction::{bad_reduction_primes, poly_heights, PolyHeights};
pub use resultant::{discriminant, resultant};
pub use squarefree::{squarefree_decompose, SquarefreeDecomposition};
