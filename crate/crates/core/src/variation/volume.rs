//! Absolute volume of the suspension through orthoscheme decomposition.
//!
//! The brick `NABC` is cut by the foot `F` of the perpendicular from `C`
//! to the geodesic `AB`. Each of `NCFA`, `NCFB` is an orthoscheme: the
//! chain `NC ⊥ CF ⊥ FA` consists of mutually orthogonal edges. When `F`
//! falls outside the segment `AB` the brick is the difference of the two.
//!
//! For an orthoscheme `P₀P₁P₂P₃` with essential dihedral angles `α₁` (at
//! `P₂P₃`), `α₂` (at `P₀P₃`) and `α₃` (at `P₀P₁`), Lobachevsky's formula
//! gives
//!
//! ```text
//! V = ¼ [ Λ(α₁+δ) − Λ(α₁−δ) + Λ(α₃+δ) − Λ(α₃−δ)
//!         − Λ(π/2−α₂+δ) + Λ(π/2−α₂−δ) + 2Λ(π/2−δ) ]
//! tan δ = √(cos²α₂ − sin²α₁ sin²α₃) / (cos α₁ cos α₃),  0 < δ < π/2
//! ```
//!
//! (Kellerhals, "On the volume of hyperbolic polyhedra", Math. Ann. 285,
//! 1989; Vinberg (ed.), *Geometry II*, ch. 7.)

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::lobachevsky_lambda as lambda;
use crate::suspension::minkowski::{face_angle, perpendicular_foot, MinkowskiPoint};
use crate::tetra::{radial_lengths, FlexVelocities, SuspensionParams};

/// Volume of a compact orthoscheme from its essential angles.
pub fn orthoscheme_volume(alpha1: f64, alpha2: f64, alpha3: f64) -> Result<f64> {
    let disc = alpha2.cos().powi(2) - (alpha1.sin() * alpha3.sin()).powi(2);
    let denom = alpha1.cos() * alpha3.cos();
    if !(disc > 0.0 && denom > 0.0) {
        return Err(Error::NonCompactOrthoscheme(alpha1, alpha2, alpha3));
    }
    let delta = disc.sqrt().atan2(denom);
    Ok(0.25
        * (lambda(alpha1 + delta) - lambda(alpha1 - delta) + lambda(alpha3 + delta)
            - lambda(alpha3 - delta)
            - lambda(FRAC_PI_2 - alpha2 + delta)
            + lambda(FRAC_PI_2 - alpha2 - delta)
            + 2.0 * lambda(FRAC_PI_2 - delta)))
}

/// Volume of the orthoscheme `p0 p1 p2 p3` (edges `p0p1 ⊥ p1p2 ⊥ p2p3`).
pub fn orthoscheme_volume_of(p: [&MinkowskiPoint; 4]) -> Result<f64> {
    let [p0, p1, p2, p3] = p;
    let alpha1 = face_angle(p2, p3, p0, p1)?;
    let alpha2 = face_angle(p0, p3, p1, p2)?;
    let alpha3 = face_angle(p0, p1, p2, p3)?;
    orthoscheme_volume(alpha1, alpha2, alpha3)
}

/// Position of the perpendicular foot from `C` relative to `AB`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FootCase {
    Inside,
    /// Beyond `A`: the brick is `NCFB − NCFA`.
    BeyondA,
    /// Beyond `B`: the brick is `NCFA − NCFB`.
    BeyondB,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VolumeEstimate {
    /// Volume of the whole suspension, `4n` bricks.
    pub volume: f64,
    pub brick: f64,
    /// The two orthoscheme volumes `(NCFA, NCFB)`.
    pub orthoschemes: [f64; 2],
    pub case: FootCase,
}

/// The brick's vertices `(N, A, B, C)` at parameter `t`.
pub fn brick_vertices(
    params: &SuspensionParams,
    vel: &FlexVelocities,
    t: f64,
) -> Result<[MinkowskiPoint; 4]> {
    let [h, p, q] = radial_lengths(params, vel, t)?;
    let az = params.alpha;
    Ok([
        MinkowskiPoint::from_polar(h, [0.0, 0.0, 1.0]),
        MinkowskiPoint::from_polar(p, [1.0, 0.0, 0.0]),
        MinkowskiPoint::from_polar(q, [az.cos(), az.sin(), 0.0]),
        MinkowskiPoint::BASE,
    ])
}

/// Coefficients closer to zero than this put the foot on a vertex, where
/// one orthoscheme degenerates to zero volume.
const FOOT_ON_VERTEX: f64 = 1e-14;

pub fn volume_oracle(
    params: &SuspensionParams,
    vel: &FlexVelocities,
    t: f64,
) -> Result<VolumeEstimate> {
    let [n, a, b, c] = brick_vertices(params, vel, t)?;
    let (f, x, y) = perpendicular_foot(&c, &a, &b)?;
    let part = |coef: f64, end: &MinkowskiPoint| -> Result<f64> {
        if coef.abs() < FOOT_ON_VERTEX {
            Ok(0.0)
        } else {
            orthoscheme_volume_of([&n, &c, &f, end])
        }
    };
    let va = part(y, &a)?;
    let vb = part(x, &b)?;
    let (brick, case) = if x >= 0.0 && y >= 0.0 {
        (va + vb, FootCase::Inside)
    } else if x < 0.0 {
        (va - vb, FootCase::BeyondB)
    } else {
        (vb - va, FootCase::BeyondA)
    };
    Ok(VolumeEstimate {
        volume: 4.0 * params.n as f64 * brick,
        brick,
        orthoschemes: [va, vb],
        case,
    })
}
