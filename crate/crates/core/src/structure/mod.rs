//! Polynomial shape: LeVeque profiles, exceptional forms, semiconjugacies
//! and standard pairs.

mod leveque;
mod pairs;
mod semiconj;

pub use leveque::{
    classify_leveque_case, exceptional_exponents, exceptional_form, exceptional_pairs, exceptional_pairs_from_sets,
    leveque_profile, satisfies_leveque, ExceptionalForm, LeVequeCase, LeVequeProfile, MAX_LEVEQUE_ITERATE,
};
pub use pairs::{
    make_standard_pair, scan_separated_solutions, verify_bt_shape, BtShape, PairKind, PairParams, StandardPair,
};
pub use semiconj::{
    build_hat, common_iterate_search, dependent_family, verify_semiconjugacy, FamilyData, FamilyMember,
    DEFAULT_COMMON_ITERATE_MAXDEG, EXACT_COMPARE_DEGREE,
};
