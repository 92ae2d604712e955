//! Hermite-type floor identities, nested floor series, and the
//! monotone-inverse framework with its residue-avoidance instances.

mod hermite;
mod instances;
mod monotone;
mod series;

pub use hermite::{
    check_hermite, check_hermite_scaled, hermite_sides, check_ramanujan_sixths, hermite_scaled_sides,
    ramanujan_sixths_sides, Sides,
};
pub use instances::{
    check_cbrt_chain, check_log_chain, check_ramanujan_shifted_sqrt, check_sqrt_chain,
    ramanujan_shifted_sqrt_sides, FloorChain,
};
pub use monotone::{
    check_inverse_chain, floor_inverse, residue_scan, ChainCheck, Direction, FnKind,
    MonotoneFnSpec, ResidueProfile,
};
pub use series::{halving_series, nested_floor_series, nested_floor_series_levels};
