//! Floor identities between sums of k-th roots and a single scaled root.
//!
//! [`root_pair`] covers `floor(n^(1/k) + (n+1)^(1/k))` against
//! `floor(2 (n + 1/2)^(1/k))`, including the square-root case, the
//! sandwich inequalities behind it, and the only places it can fail.
//! [`root_sum`] covers sums of `l` shifted k-th roots under a prime witness.

pub mod root_pair;
pub mod root_sum;

pub use root_pair::{
    candidate_margin, check_midpoint_floor_stable, check_ramanujan_sqrt_pair, check_root_pair,
    check_root_pair_sandwich, ramanujan_sqrt_pair_sides, root_pair_candidate, scan_root_pairs,
    CandidateMargin, RootPairResult, RootPairSandwich, RootPairScan,
};
pub use root_sum::{
    check_root_sum, consecutive_power_gap, root_sum_steps, root_sum_witness, RootSumCheck,
    RootSumInstance, RootSumSteps,
};
