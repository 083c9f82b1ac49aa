//! Exact rational arithmetic with prime factorization, valuations, places of
//! the rationals, S-norms, Weil heights and bounded-height enumeration.

mod enumerate;
mod factored;
mod height;
mod places;
mod rational;

pub use enumerate::{
    count_bounded_height, enumerate_bounded_height, enumerate_bounded_height_with_cap,
    DEFAULT_ENUMERATION_CAP,
};
pub use factored::{factor, factor_natural, FactoredRational};
pub use height::{height, log_star, HeightBound, HeightValue};
pub use places::{p_s_q_s, s_norm, PlaceSet};
pub use rational::{
    canonical_cmp, format_rational, ln_biguint, parse_rational, rat, serde_q, Rational,
};

pub(crate) use enumerate::checked_limit;
pub(crate) use rational::{abs_biguint, height_integer, lcm_denominators};
