//! Infinitesimal flex of a suspension polyhedron in hyperbolic 3-space.
//!
//! The polyhedron is the suspension over a regular concave star with `n`
//! petals: two pyramids with apexes `N`, `S` glued along the star. By
//! symmetry every metric quantity is carried by one tetrahedral brick
//! `NABC`, where `C` is the star's centre, `A` a concave vertex at distance
//! `p`, `B` a tip at distance `q`, `|CN| = h` and `∠ACB = α = π/n`.
//!
//! - [`kernel`]: hyperbolic/spherical trigonometry over a generic
//!   [`Real`] scalar, and the Lobachevsky function.
//! - [`tetra`]: edge lengths, plane angles and dihedral angles of the brick
//!   along the linear deformation `h + tu`, `p + tv`, `q + tw`.
//! - [`flex`]: edge-stationary velocities, the flexibility relation and
//!   Ceva point tracking.
//! - [`suspension`]: hyperboloid coordinates, embedding check and export.
//! - [`variation`]: dihedral rates, Schläfli volume variation, mean
//!   curvature variation and an independent orthoscheme volume oracle.

pub mod error;
pub mod flex;
pub mod kernel;
pub mod scalar;
pub mod suspension;
pub mod tetra;
pub mod tol;
pub mod variation;

pub use error::{Error, MovingLength, Result};
pub use flex::{
    ceva_track_point, edge_rates, flex_residual, flexible_params, is_flexible, ns_distance_rate,
    solve_q_for_flex, stationarity_report, velocity_from_u, CevaConfig, CevaTarget, EdgeRates,
    FlexBranch, FlexResidual,
};
pub use kernel::{lobachevsky_lambda, SinCos};
pub use scalar::{Dual, Real};
pub use suspension::minkowski::MinkowskiPoint;
pub use suspension::{
    build_mesh, check_embedding, export_mesh, import_mesh_json, EdgeClass, EdgeRecord,
    EmbeddingReport, MeshFormat, SuspensionMesh,
};
pub use tetra::{
    DihedralAngles, EdgeLengths, FlexVelocities, PlaneAngles, SuspensionParams, TetraMetrics,
};
pub use variation::{
    dihedral_rates, fd_derivative, mean_curvature_rate, schlafli_rate, volume_oracle,
    DihedralRates, FdEstimate, FootCase, Method, VariationReport, VolumeEstimate,
};
