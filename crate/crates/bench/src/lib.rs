//! Shared fixtures for the benchmarks.

use hypflex_core::{
    flexible_params, velocity_from_u, FlexBranch, FlexVelocities, SuspensionParams,
};

/// A flexible minus-branch instance with `n` petals, `p` at half its
/// admissible range.
pub fn instance(n: usize) -> (SuspensionParams, FlexVelocities) {
    let alpha = std::f64::consts::PI / n as f64;
    let p = 0.5 * ((1.0 - alpha.sin()) / alpha.cos()).atanh();
    let params = flexible_params(n, 0.6, p, FlexBranch::Minus).expect("flexible instance");
    let vel = velocity_from_u(&params, 0.5);
    (params, vel)
}
