//! Exact arithmetic: rationals, Gaussian rationals, coprime bases, integer
//! lattices and bounded factorization.
//!
//! Nothing in this module touches floating point. Orbit values grow doubly
//! exponentially, so the dependence machinery works with gcds (coprime bases)
//! and only falls back to factorization where a prime-by-prime answer is
//! genuinely required.

mod basis;
mod factor;
mod gaussian;
mod lattice;
pub mod modular;
pub(crate) mod rational;

pub use basis::{factor_refine, CoprimeBasis};
pub use factor::{factor_bounded, is_probable_prime, FactorEffort, Factored, Factorization};
pub use gaussian::GaussianRational;
pub use lattice::{hermite_form, left_kernel, IntegerMatrix};
pub use rational::{int_nth_root, parse_rational, rational_nth_root, Rational};
pub use rational::is_unit;
