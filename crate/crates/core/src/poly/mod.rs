//! Dense univariate polynomials over Q and Q(i).

mod decompose;
mod parse;
mod polynomial;
mod scalar;
mod special;
mod sqfree;

pub use decompose::{decompose_functional, linearly_equivalent, DEFAULT_DECOMPOSE_MAX_DEGREE};
pub use parse::{parse_polynomial, parse_scalar, MAX_PARSE_EXPONENT};
pub use polynomial::{Polynomial, QPoly, QiPoly};
pub use scalar::{Domain, Scalar};
pub use special::{dickson, twist};
pub use sqfree::{abc_check, radical, squarefree_decompose, AbcReport, SquarefreeDecomposition};
