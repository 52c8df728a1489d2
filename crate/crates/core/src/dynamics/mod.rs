//! Orbits, rigid divisibility sequences, primitive divisors and counts of
//! dependent orbit tuples.

mod count;
mod orbit;
mod rds;

pub use count::{count_multdep, CountConfig, CountReport, CountSummary};
pub use orbit::{largest_squarefree_factor, OrbitTable, SquarefreeFactor, DEFAULT_MAX_BITS};
pub use rds::{
    check_divisibility_sequence, check_orbit_divisibility, check_orbit_rigid, check_rigid, DivisibilityCheck,
    RigidCheck, RigidViolation,
};
