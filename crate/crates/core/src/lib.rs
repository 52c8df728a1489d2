//! Exact computations on multiplicative dependence of polynomial orbit
//! values: dependence certificates and ranks, LeVeque classification,
//! semiconjugacies, standard pairs and divisibility sequences.

pub mod dynamics;
pub mod error;
pub mod exactmath;
pub mod multdep;
pub mod poly;
pub mod structure;

pub use error::{Error, Result};

/// The guide's chapters, compiled as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/exact-arithmetic.md")]
    mod exact_arithmetic {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/dependence.md")]
    mod dependence {}
    #[doc = include_str!("../../../book/src/structure.md")]
    mod structure {}
    #[doc = include_str!("../../../book/src/orbits.md")]
    mod orbits {}
    #[doc = include_str!("../../../book/src/counting.md")]
    mod counting {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/acceptance.md")]
    mod acceptance {}
}
