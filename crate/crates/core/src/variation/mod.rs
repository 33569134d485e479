//! First-order variation of volume and integral mean curvature along a
//! deformation of the suspension.
//!
//! Every edge class has `2n` members and carries twice the brick's dihedral
//! angle, so Schläfli's `dV = −½ Σ l_e dθ_e` collapses to
//! `dV/dt = −2n (a θ̇_AB + b θ̇_NA + c θ̇_NB)` with `θ` the brick angles.

pub mod fd;
pub mod volume;

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::SinCos;
use crate::scalar::Dual;
use crate::tetra::{dihedral_angles, FlexVelocities, SuspensionParams, TetraMetrics};
use crate::tol;

pub use fd::{fd_derivative, FdEstimate};
pub use volume::{orthoscheme_volume, volume_oracle, FootCase, VolumeEstimate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Dual,
    FiniteDifference,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Dual => "dual",
            Method::FiniteDifference => "finite-difference",
        })
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "dual" => Ok(Method::Dual),
            "fd" | "finite-difference" => Ok(Method::FiniteDifference),
            other => Err(format!(
                "unknown method `{other}` (expected `dual` or `fd`)"
            )),
        }
    }
}

/// `d∠/dt` at `t = 0` for the brick's dihedral angles.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DihedralRates {
    pub ab: f64,
    pub na: f64,
    pub nb: f64,
}

impl DihedralRates {
    pub fn as_array(&self) -> [f64; 3] {
        [self.ab, self.na, self.nb]
    }
}

/// `d∠/dt = −(d cos∠/dt) / sin∠`.
fn rate_from_cosine(angle: SinCos<Dual>, what: &'static str) -> Result<f64> {
    let sin = angle.sin.re;
    if sin.abs() < tol::MIN_DIHEDRAL_SINE {
        return Err(Error::Conditioning {
            what,
            sin,
            threshold: tol::MIN_DIHEDRAL_SINE,
        });
    }
    Ok(-angle.cos.eps / sin)
}

pub fn dihedral_rates(
    params: &SuspensionParams,
    vel: &FlexVelocities,
    method: Method,
) -> Result<DihedralRates> {
    match method {
        Method::Dual => {
            let d = dihedral_angles(params, vel, Dual::variable(0.0))?;
            Ok(DihedralRates {
                ab: rate_from_cosine(d.ab, "dihedral AB")?,
                na: rate_from_cosine(d.na, "dihedral NA")?,
                nb: rate_from_cosine(d.nb, "dihedral NB")?,
            })
        }
        Method::FiniteDifference => {
            let d0 = dihedral_angles(params, vel, 0.0)?;
            for (what, sc) in [
                ("dihedral AB", d0.ab),
                ("dihedral NA", d0.na),
                ("dihedral NB", d0.nb),
            ] {
                if sc.sin.abs() < tol::MIN_DIHEDRAL_SINE {
                    return Err(Error::Conditioning {
                        what,
                        sin: sc.sin,
                        threshold: tol::MIN_DIHEDRAL_SINE,
                    });
                }
            }
            let step = fd_step(params, vel);
            let rate = |pick: fn(&crate::tetra::DihedralAngles<f64>) -> SinCos<f64>| {
                fd_derivative(
                    |t| Ok(pick(&dihedral_angles(params, vel, t)?).angle()),
                    0.0,
                    step,
                )
                .map(|e| e.value)
            };
            Ok(DihedralRates {
                ab: rate(|d| d.ab)?,
                na: rate(|d| d.na)?,
                nb: rate(|d| d.nb)?,
            })
        }
    }
}

/// Base step small enough that no moving length collapses within `4·step`.
fn fd_step(params: &SuspensionParams, vel: &FlexVelocities) -> f64 {
    let speed = vel.u.abs().max(vel.v.abs()).max(vel.w.abs());
    let shortest = params.h.min(params.p).min(params.q);
    if speed == 0.0 {
        fd::DEFAULT_STEP
    } else {
        fd::DEFAULT_STEP.min(0.1 * shortest / speed)
    }
}

pub fn schlafli_rate(params: &SuspensionParams, vel: &FlexVelocities) -> Result<f64> {
    let rates = dihedral_rates(params, vel, Method::Dual)?;
    schlafli_from(params, vel, &rates)
}

fn schlafli_from(
    params: &SuspensionParams,
    vel: &FlexVelocities,
    r: &DihedralRates,
) -> Result<f64> {
    let e = TetraMetrics::at(params, vel, 0.0)?.edges;
    Ok(-2.0 * params.n as f64 * (e.a.len * r.ab + e.b.len * r.na + e.c.len * r.nb))
}

/// `dM/dt = ½ Σ_e [l_e′(π − θ_e) − l_e θ_e′]` over all `6n` edges, where
/// each suspension dihedral `θ_e` is twice the brick's.
pub fn mean_curvature_rate(params: &SuspensionParams, vel: &FlexVelocities) -> Result<f64> {
    let m = TetraMetrics::with_rates(params, vel, 0.0)?;
    let r = dihedral_rates(params, vel, Method::Dual)?;
    let d = m.dihedrals;
    let e = m.edges;
    let class = |len: Dual, brick: SinCos<Dual>, rate: f64| {
        let angle = brick.map(|x| x.re).angle();
        len.eps * (PI - 2.0 * angle) - 2.0 * len.re * rate
    };
    Ok(params.n as f64
        * (class(e.a.len, d.ab, r.ab) + class(e.b.len, d.na, r.na) + class(e.c.len, d.nb, r.nb)))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VariationReport {
    pub params: SuspensionParams,
    pub velocities: FlexVelocities,
    #[serde(rename = "rate_AB")]
    pub rate_ab: f64,
    #[serde(rename = "rate_NA")]
    pub rate_na: f64,
    #[serde(rename = "rate_NB")]
    pub rate_nb: f64,
    #[serde(rename = "dV_dt")]
    pub dv_dt: f64,
    #[serde(rename = "dM_dt")]
    pub dm_dt: f64,
    pub method: Method,
    #[serde(rename = "oracle_dV_dt")]
    pub oracle_dv_dt: Option<f64>,
}

impl VariationReport {
    pub fn compute(
        params: &SuspensionParams,
        vel: &FlexVelocities,
        method: Method,
    ) -> Result<Self> {
        let rates = dihedral_rates(params, vel, method)?;
        Ok(VariationReport {
            params: *params,
            velocities: *vel,
            rate_ab: rates.ab,
            rate_na: rates.na,
            rate_nb: rates.nb,
            dv_dt: schlafli_from(params, vel, &rates)?,
            dm_dt: mean_curvature_rate(params, vel)?,
            method,
            oracle_dv_dt: None,
        })
    }

    /// Adds the finite-difference derivative of the orthoscheme volume.
    pub fn with_oracle(mut self) -> Result<Self> {
        self.oracle_dv_dt = Some(oracle_volume_rate(&self.params, &self.velocities)?.value);
        Ok(self)
    }

    pub fn rates(&self) -> DihedralRates {
        DihedralRates {
            ab: self.rate_ab,
            na: self.rate_na,
            nb: self.rate_nb,
        }
    }
}

/// `dV/dt` at `t = 0` from differences of the absolute volume.
pub fn oracle_volume_rate(params: &SuspensionParams, vel: &FlexVelocities) -> Result<FdEstimate> {
    fd_derivative(
        |t| Ok(volume_oracle(params, vel, t)?.volume),
        0.0,
        fd_step(params, vel),
    )
}
