//! Metric elements of the tetrahedral brick `NABC` of the suspension.
//!
//! The brick has a right angle at `C` between `CN` and the base plane, with
//! `|CN| = h`, `|CA| = p`, `|CB| = q` and `∠ACB = α = π/n`. Under the
//! deformation the three lengths move linearly in `t` while `α` stays fixed.
//! Everything else (edges `a = |AB|`, `b = |NA|`, `c = |NB|`, nine plane
//! angles, three dihedral angles) follows from hyperbolic and spherical
//! trigonometry and is evaluated here for any [`Real`] `t`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, MovingLength, Result};
use crate::kernel::{checked_cosine, sph_angle_from_sides, SinCos};
use crate::scalar::{Dual, Real};

/// Shape of the suspension: petal count and the three radial lengths.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuspensionParams {
    pub n: usize,
    /// `|CN|`, the height of each pole above the base plane.
    pub h: f64,
    /// `|CA|`, distance from the star center to the `A_i`.
    pub p: f64,
    /// `|CB|`, distance from the star center to the `B_i`.
    pub q: f64,
    /// `π/n`, stored alongside `n`.
    pub alpha: f64,
}

impl SuspensionParams {
    pub fn new(n: usize, h: f64, p: f64, q: f64) -> Result<Self> {
        if p == q {
            return Err(Error::InvalidParams(format!(
                "p = q = {p} gives a degenerate star"
            )));
        }
        Self::new_brick(n, h, p, q)
    }

    /// Like [`new`](Self::new) but admits `p = q`, where the star degenerates
    /// to a regular `2n`-gon while the brick stays a valid tetrahedron.
    pub fn new_brick(n: usize, h: f64, p: f64, q: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParams(format!(
                "petal count n = {n} must be at least 3"
            )));
        }
        for (name, v) in [("h", h), ("p", p), ("q", q)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParams(format!(
                    "{name} = {v} must be finite and positive"
                )));
            }
        }
        Ok(SuspensionParams {
            n,
            h,
            p,
            q,
            alpha: PI / n as f64,
        })
    }

    /// `n = 6`, `h = p = artanh ½`, `q = artanh(√3/2)`.
    pub fn reference() -> Self {
        SuspensionParams::new(
            6,
            0.5f64.atanh(),
            0.5f64.atanh(),
            (3f64.sqrt() / 2.0).atanh(),
        )
        .expect("reference instance is valid")
    }

    /// Mirror-symmetric variant with `p = q`. Not a star, but the brick is
    /// still a valid tetrahedron, which makes it useful for symmetry checks.
    pub fn symmetric(n: usize, h: f64, p: f64) -> Self {
        SuspensionParams {
            n,
            h,
            p,
            q: p,
            alpha: PI / n as f64,
        }
    }

    /// The same shape with `q` replaced.
    pub fn with_q(self, q: f64) -> Result<Self> {
        SuspensionParams::new(self.n, self.h, self.p, q)
    }
}

/// Rates of the three radial lengths: `h(t) = h + tu`, `p(t) = p + tv`,
/// `q(t) = q + tw`.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct FlexVelocities {
    pub u: f64,
    pub v: f64,
    pub w: f64,
}

impl FlexVelocities {
    pub const ZERO: FlexVelocities = FlexVelocities {
        u: 0.0,
        v: 0.0,
        w: 0.0,
    };

    pub fn new(u: f64, v: f64, w: f64) -> Self {
        FlexVelocities { u, v, w }
    }

    /// `u = √3/4`, `v = −√3/4`, `w = −1/4`.
    pub fn reference() -> Self {
        let r3 = 3f64.sqrt();
        FlexVelocities::new(r3 / 4.0, -r3 / 4.0, -0.25)
    }

    pub fn scaled(self, k: f64) -> Self {
        FlexVelocities::new(self.u * k, self.v * k, self.w * k)
    }
}

/// The three moving lengths `(h(t), p(t), q(t))`, validated positive.
pub fn radial_lengths<T: Real>(
    params: &SuspensionParams,
    vel: &FlexVelocities,
    t: T,
) -> Result<[T; 3]> {
    let lens = [
        (MovingLength::H, t * vel.u + params.h),
        (MovingLength::P, t * vel.v + params.p),
        (MovingLength::Q, t * vel.w + params.q),
    ];
    for (length, x) in lens {
        if !(x.value() > 0.0) {
            return Err(Error::DeformationRange {
                length,
                value: x.value(),
            });
        }
    }
    Ok([lens[0].1, lens[1].1, lens[2].1])
}

/// An edge length together with its hyperbolic cosine and sine.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeLength<T> {
    pub len: T,
    pub cosh: T,
    pub sinh: T,
}

impl<T: Real> EdgeLength<T> {
    fn from_cosh(cosh: T) -> Self {
        EdgeLength {
            len: cosh.acosh(),
            cosh,
            sinh: (cosh * cosh - 1.0).sqrt(),
        }
    }
}

/// Edges `a = |AB|`, `b = |NA|`, `c = |NB|`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeLengths<T> {
    pub a: EdgeLength<T>,
    pub b: EdgeLength<T>,
    pub c: EdgeLength<T>,
}

pub fn edge_lengths<T: Real>(
    params: &SuspensionParams,
    vel: &FlexVelocities,
    t: T,
) -> Result<EdgeLengths<T>> {
    let [h, p, q] = radial_lengths(params, vel, t)?;
    let cosh_b = h.cosh() * p.cosh();
    let cosh_c = h.cosh() * q.cosh();
    let cosh_a = p.cosh() * q.cosh() - p.sinh() * q.sinh() * params.alpha.cos();
    Ok(EdgeLengths {
        a: EdgeLength::from_cosh(cosh_a),
        b: EdgeLength::from_cosh(cosh_b),
        c: EdgeLength::from_cosh(cosh_c),
    })
}

/// The nine plane angles of the brick other than `α` and the right angles
/// at `C`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlaneAngles<T> {
    /// ∠CAN
    pub beta: SinCos<T>,
    /// ∠BAN
    pub gamma: SinCos<T>,
    /// ∠CAB
    pub delta: SinCos<T>,
    /// ∠CBN
    pub phi: SinCos<T>,
    /// ∠CBA
    pub psi: SinCos<T>,
    /// ∠ABN
    pub theta: SinCos<T>,
    /// ∠ANB
    pub lambda: SinCos<T>,
    /// ∠CNA
    pub mu: SinCos<T>,
    /// ∠CNB
    pub nu: SinCos<T>,
}

impl<T: Real> PlaneAngles<T> {
    pub fn iter(&self) -> impl Iterator<Item = (&'static str, SinCos<T>)> {
        [
            ("beta", self.beta),
            ("gamma", self.gamma),
            ("delta", self.delta),
            ("phi", self.phi),
            ("psi", self.psi),
            ("theta", self.theta),
            ("lambda", self.lambda),
            ("mu", self.mu),
            ("nu", self.nu),
        ]
        .into_iter()
    }
}

fn cosine_in_range<T: Real>(cos: T) -> Result<T> {
    checked_cosine(cos, false)
}

fn plane_angles_from<T: Real>(
    params: &SuspensionParams,
    [h, p, q]: [T; 3],
    e: &EdgeLengths<T>,
) -> Result<PlaneAngles<T>> {
    let (ch, sh) = (h.cosh(), h.sinh());
    let (cp, sp) = (p.cosh(), p.sinh());
    let (cq, sq) = (q.cosh(), q.sinh());
    let (a, b, c) = (e.a, e.b, e.c);

    // Right triangles CAN and CBN.
    let beta = SinCos::new(sh / b.sinh, sp * ch / b.sinh);
    let mu = SinCos::new(sp / b.sinh, sh * cp / b.sinh);
    let phi = SinCos::new(sh / c.sinh, sq * ch / c.sinh);
    let nu = SinCos::new(sq / c.sinh, sh * cq / c.sinh);

    // Base triangle ACB with angle α at C.
    let sin_alpha = params.alpha.sin();
    let delta = SinCos::new(
        sq * sin_alpha / a.sinh,
        cosine_in_range((cp * a.cosh - cq) / (sp * a.sinh))?,
    );
    let psi = SinCos::new(
        sp * sin_alpha / a.sinh,
        cosine_in_range((cq * a.cosh - cp) / (sq * a.sinh))?,
    );

    // Lateral face ANB; sines are the nonnegative roots.
    let theta = SinCos::from_cos(cosine_in_range(
        (a.cosh * c.cosh - b.cosh) / (a.sinh * c.sinh),
    )?);
    let gamma = SinCos::from_cos(cosine_in_range(
        (a.cosh * b.cosh - c.cosh) / (a.sinh * b.sinh),
    )?);
    let lambda = SinCos::from_cos(cosine_in_range(
        (b.cosh * c.cosh - a.cosh) / (b.sinh * c.sinh),
    )?);

    Ok(PlaneAngles {
        beta,
        gamma,
        delta,
        phi,
        psi,
        theta,
        lambda,
        mu,
        nu,
    })
}

pub fn plane_angles<T: Real>(
    params: &SuspensionParams,
    vel: &FlexVelocities,
    t: T,
) -> Result<PlaneAngles<T>> {
    let radial = radial_lengths(params, vel, t)?;
    let e = edge_lengths(params, vel, t)?;
    plane_angles_from(params, radial, &e)
}

/// Dihedral angles of the brick at `AB`, `NA` and `NB`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DihedralAngles<T> {
    pub ab: SinCos<T>,
    pub na: SinCos<T>,
    pub nb: SinCos<T>,
}

/// Cosines from the link triangles at `A` (sides β, γ, δ; right angle at the
/// trace of `C`) and at `B` (sides φ, θ, ψ); sines from the spherical law of
/// sines in the links at `A` and `N`.
fn dihedrals_from<T: Real>(
    params: &SuspensionParams,
    pa: &PlaneAngles<T>,
) -> Result<DihedralAngles<T>> {
    let cos_ab = sph_angle_from_sides(pa.gamma, pa.delta, pa.beta)?.cos;
    let cos_na = sph_angle_from_sides(pa.gamma, pa.beta, pa.delta)?.cos;
    let cos_nb = sph_angle_from_sides(pa.phi, pa.theta, pa.psi)?.cos;
    Ok(DihedralAngles {
        ab: SinCos::new(pa.beta.sin / pa.gamma.sin, cos_ab),
        na: SinCos::new(pa.delta.sin / pa.gamma.sin, cos_na),
        nb: SinCos::new(pa.mu.sin * params.alpha.sin() / pa.lambda.sin, cos_nb),
    })
}

pub fn dihedral_angles<T: Real>(
    params: &SuspensionParams,
    vel: &FlexVelocities,
    t: T,
) -> Result<DihedralAngles<T>> {
    let pa = plane_angles(params, vel, t)?;
    dihedrals_from(params, &pa)
}

/// Snapshot of every metric element of the brick at one parameter value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TetraMetrics<T> {
    pub t: T,
    pub edges: EdgeLengths<T>,
    pub angles: PlaneAngles<T>,
    pub dihedrals: DihedralAngles<T>,
}

impl<T: Real> TetraMetrics<T> {
    pub fn evaluate(params: &SuspensionParams, vel: &FlexVelocities, t: T) -> Result<Self> {
        let radial = radial_lengths(params, vel, t)?;
        let edges = edge_lengths(params, vel, t)?;
        let angles = plane_angles_from(params, radial, &edges)?;
        let dihedrals = dihedrals_from(params, &angles)?;
        Ok(TetraMetrics {
            t,
            edges,
            angles,
            dihedrals,
        })
    }
}

impl TetraMetrics<f64> {
    pub fn at(params: &SuspensionParams, vel: &FlexVelocities, t: f64) -> Result<Self> {
        Self::evaluate(params, vel, t)
    }
}

impl TetraMetrics<Dual> {
    /// Values and exact `d/dt` at `t`.
    pub fn with_rates(params: &SuspensionParams, vel: &FlexVelocities, t: f64) -> Result<Self> {
        Self::evaluate(params, vel, Dual::variable(t))
    }
}
