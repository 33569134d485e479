//! Default tolerances.

/// Algebraic identities evaluated in `f64` (sin² + cos² = 1, roundtrips).
pub const ALGEBRAIC: f64 = 1e-12;

/// Agreement between two independent geometric routes (closed forms vs
/// explicit hyperboloid coordinates).
pub const CROSS_ORACLE: f64 = 1e-10;

/// Dual-number derivatives against Richardson-extrapolated differences.
pub const DUAL_VS_FD: f64 = 1e-8;

/// Default threshold on the flexibility residual.
pub const FLEX_RESIDUAL: f64 = 1e-10;

/// Edge-length rates below this count as stationary.
pub const STATIONARY: f64 = 1e-12;

/// Sines of dihedral angles below this make `d∠/dt` ill-conditioned.
pub const MIN_DIHEDRAL_SINE: f64 = 1e-8;

/// Slack allowed on law-of-cosines values that leave [-1, 1] by roundoff.
pub const COSINE_SLACK: f64 = 1e-12;

/// Euclidean predicate tolerance in the Klein ball.
pub const INTERSECTION: f64 = 1e-12;

/// Intersection points closer than this to a shared vertex or edge belong
/// to the shared simplex.
pub const ADJACENCY: f64 = 1e-9;
