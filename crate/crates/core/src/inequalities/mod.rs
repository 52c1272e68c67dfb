//! Numerical verification of the monotonicity and log-convexity claims
//! for the modified k-Bessel function.

mod checks;
mod grid;
mod report;
mod suite;

pub use checks::{
    check_coefficient_logconvexity, check_confluent_sequence, check_logconvex_in_order,
    check_midpoint_direction, check_ratio_monotone_in_k, check_ratio_monotone_in_order,
    check_ratio_with_confluent, check_sequence_ratio_direction, check_sequence_ratio_monotone,
    CheckOptions, ConfluentVariant, DEFAULT_N_MAX, DEFAULT_RATIO_TOL, DEFAULT_TURAN_TOL, SEQUENCE_TOL,
};
pub use grid::{GridSpec, Spacing, DEFAULT_COUNT, MIN_ARGUMENT};
pub use report::{Direction, Domain, InequalityReport, Violation, ViolationKind};
pub use suite::{sample_cases, turan_grid, Case, Claim, COEFFICIENT_N_MAX, TURAN_DELTAS, TURAN_GRID_COUNT};
