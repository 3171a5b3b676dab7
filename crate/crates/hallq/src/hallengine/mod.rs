//! Derived Hall numbers by exact counting, the identity-check catalogue that
//! exercises them, and the tube embedding that serves cyclic quivers.

mod checks;
mod engine;
mod suites;

pub use checks::{
    check_associativity, check_cyclic_shift, check_reduction, check_rotation, check_selfext,
    check_split, support_condition_holds, support_set, CheckReport, InstanceReport, Outcome,
};
pub use engine::{cyclic_embed, Engine, HallError, HallResult, RouteData, DEFAULT_MORPHISM_BUDGET};
pub use suites::{
    associativity_suite, oracle_suite, oracle_suite_capped, random_object, reduction_suite,
    rotation_suite, run_suite, selfext_suite, shift_suite, split_suite, support_suite,
    SUITE_NAMES,
};
