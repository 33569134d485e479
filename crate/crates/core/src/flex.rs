//! The radial deformation of the suspension and the conditions under which
//! it is an infinitesimal flex.
//!
//! Poles move along the axis at rate `u`, inner star vertices at rate `v`,
//! outer ones at rate `w`. The lateral edges `NA`, `NB` stay stationary iff
//! `v = −(tanh h / tanh p)·u` and `w = −(tanh h / tanh q)·u`; the equator
//! edge then stays stationary iff `tanh p / tanh q = (1 ± sin α) / cos α`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Dual;
use crate::suspension::minkowski::{distance_to_geodesic, sinh_ratio_point, MinkowskiPoint};
use crate::tetra::{edge_lengths, FlexVelocities, SuspensionParams};
use crate::tol;

/// Sign choice in `tanh p / tanh q = (1 ± sin α) / cos α`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FlexBranch {
    Minus,
    Plus,
}

impl FlexBranch {
    pub const BOTH: [FlexBranch; 2] = [FlexBranch::Minus, FlexBranch::Plus];

    fn sign(self) -> f64 {
        match self {
            FlexBranch::Minus => -1.0,
            FlexBranch::Plus => 1.0,
        }
    }

    /// `(1 ± sin α) / cos α`.
    pub fn ratio(self, alpha: f64) -> f64 {
        (1.0 + self.sign() * alpha.sin()) / alpha.cos()
    }
}

impl fmt::Display for FlexBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FlexBranch::Minus => "minus",
            FlexBranch::Plus => "plus",
        })
    }
}

impl FromStr for FlexBranch {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "minus" | "-" => Ok(FlexBranch::Minus),
            "plus" | "+" => Ok(FlexBranch::Plus),
            other => Err(format!(
                "unknown branch `{other}` (expected `minus` or `plus`)"
            )),
        }
    }
}

/// Velocities that keep the lateral edges stationary for a given pole rate.
pub fn velocity_from_u(params: &SuspensionParams, u: f64) -> FlexVelocities {
    let th = params.h.tanh();
    FlexVelocities {
        u,
        v: -(th / params.p.tanh()) * u,
        w: -(th / params.q.tanh()) * u,
    }
}

/// Residuals of the flexibility relation on both branches.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlexResidual {
    pub minus: f64,
    pub plus: f64,
}

impl FlexResidual {
    pub fn get(&self, branch: FlexBranch) -> f64 {
        match branch {
            FlexBranch::Minus => self.minus,
            FlexBranch::Plus => self.plus,
        }
    }

    /// The branch with the smaller residual, if within `tol`.
    pub fn flexible_branch(&self, tol: f64) -> Option<FlexBranch> {
        let best = if self.minus.abs() <= self.plus.abs() {
            FlexBranch::Minus
        } else {
            FlexBranch::Plus
        };
        (self.get(best).abs() <= tol).then_some(best)
    }
}

pub fn flex_residual(params: &SuspensionParams) -> FlexResidual {
    let lhs = params.p.tanh() / params.q.tanh();
    FlexResidual {
        minus: lhs - FlexBranch::Minus.ratio(params.alpha),
        plus: lhs - FlexBranch::Plus.ratio(params.alpha),
    }
}

pub fn is_flexible(params: &SuspensionParams, tol: f64) -> bool {
    flex_residual(params).flexible_branch(tol).is_some()
}

/// Outer radius `q` that makes `(p, q, α)` flexible on `branch`.
///
/// On the minus branch `tanh q = tanh p · cos α / (1 − sin α) > tanh p`, so a
/// solution exists iff `tanh p < (1 − sin α) / cos α`. On the plus branch
/// `tanh q < tanh p` and a solution always exists for `α ∈ (0, π/2)`.
pub fn solve_q_for_flex(p: f64, alpha: f64, branch: FlexBranch) -> Result<f64> {
    let argument = p.tanh() / branch.ratio(alpha);
    if !(argument > 0.0 && argument < 1.0) {
        return Err(Error::NoFlexSolution { branch, argument });
    }
    Ok(argument.atanh())
}

/// Flexible parameters with `q` solved on `branch`.
pub fn flexible_params(n: usize, h: f64, p: f64, branch: FlexBranch) -> Result<SuspensionParams> {
    let alpha = std::f64::consts::PI / n as f64;
    let q = solve_q_for_flex(p, alpha, branch)?;
    SuspensionParams::new(n, h, p, q)
}

/// Per-edge length rates at `t = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeRates {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl EdgeRates {
    pub fn max_abs(&self) -> f64 {
        self.a.abs().max(self.b.abs()).max(self.c.abs())
    }
}

pub fn edge_rates(params: &SuspensionParams, vel: &FlexVelocities) -> Result<EdgeRates> {
    let e = edge_lengths(params, vel, Dual::variable(0.0))?;
    Ok(EdgeRates {
        a: e.a.len.eps,
        b: e.b.len.eps,
        c: e.c.len.eps,
    })
}

/// `max |d(edge)/dt|` over the edge classes at `t = 0`.
pub fn stationarity_report(params: &SuspensionParams, vel: &FlexVelocities) -> Result<f64> {
    Ok(edge_rates(params, vel)?.max_abs())
}

/// Rate of the pole-to-pole distance `2(h + tu)`; nonzero means the flex is
/// nontrivial.
pub fn ns_distance_rate(vel: &FlexVelocities) -> f64 {
    2.0 * vel.u
}

/// Where the tracked point sits relative to the triangle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum CevaTarget {
    /// Point on the edge `vertices[from] → vertices[to]` with
    /// `sinh|from·P| / sinh|P·to| = ratio`.
    Edge { from: usize, to: usize, ratio: f64 },
    /// Interior point given by its three cevian feet. With vertices
    /// `(A, B, C)`, `ratios = [sinh BÃ/sinh ÃC, sinh CB̃/sinh B̃A, sinh AC̃/sinh C̃B]`
    /// for feet `Ã ∈ BC`, `B̃ ∈ CA`, `C̃ ∈ AB`. Concurrency requires the
    /// product to be 1.
    Interior { ratios: [f64; 3] },
}

/// A triangle at times `0` and `t` together with the point to follow.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CevaConfig {
    pub initial: [MinkowskiPoint; 3],
    pub moved: [MinkowskiPoint; 3],
    pub target: CevaTarget,
}

impl CevaConfig {
    fn validate(&self) -> Result<()> {
        match self.target {
            CevaTarget::Edge { from, to, ratio } => {
                if from > 2 || to > 2 || from == to {
                    return Err(Error::InvalidCeva(format!(
                        "edge ({from}, {to}) is not a triangle edge"
                    )));
                }
                if !(ratio >= 0.0 && ratio.is_finite()) {
                    return Err(Error::InvalidCeva(format!(
                        "edge ratio {ratio} must be nonnegative"
                    )));
                }
            }
            CevaTarget::Interior { ratios } => {
                if ratios.iter().any(|r| !(*r > 0.0 && r.is_finite())) {
                    return Err(Error::InvalidCeva(format!(
                        "cevian ratios {ratios:?} must be positive"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Cevian feet of an interior target on the given triangle.
pub fn cevian_feet(tri: &[MinkowskiPoint; 3], ratios: [f64; 3]) -> Result<[MinkowskiPoint; 3]> {
    let [a, b, c] = tri;
    Ok([
        sinh_ratio_point(b, c, ratios[0])?,
        sinh_ratio_point(c, a, ratios[1])?,
        sinh_ratio_point(a, b, ratios[2])?,
    ])
}

fn cross3(x: [f64; 3], y: [f64; 3]) -> [f64; 3] {
    [
        x[1] * y[2] - x[2] * y[1],
        x[2] * y[0] - x[0] * y[2],
        x[0] * y[1] - x[1] * y[0],
    ]
}

/// Position at time `t` of the point described by `config.target`.
///
/// Edge points keep their sinh-ratio. Interior points are the meet of the
/// cevians from the first two vertices, computed in the coordinates of the
/// 3-space spanned by the moved triangle (where a geodesic through two
/// points is a 2-plane); the third cevian must pass through the result.
pub fn ceva_track_point(config: &CevaConfig) -> Result<MinkowskiPoint> {
    config.validate()?;
    let tri = &config.moved;
    match config.target {
        CevaTarget::Edge { from, to, ratio } => sinh_ratio_point(&tri[from], &tri[to], ratio),
        CevaTarget::Interior { ratios } => {
            // In the basis (A, B, C) the feet are (0, 1, r₀), (r₁, 0, 1), (1, r₂, 0).
            let feet = [
                [0.0, 1.0, ratios[0]],
                [ratios[1], 0.0, 1.0],
                [1.0, ratios[2], 0.0],
            ];
            let vertex = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
            let line_a = cross3(vertex[0], feet[0]);
            let line_b = cross3(vertex[1], feet[1]);
            let mut x = cross3(line_a, line_b);
            if x.iter().sum::<f64>() < 0.0 {
                x = x.map(|v| -v);
            }
            let v = std::array::from_fn(|i| {
                x[0] * tri[0].0[i] + x[1] * tri[1].0[i] + x[2] * tri[2].0[i]
            });
            let point = MinkowskiPoint::normalize(v)?;
            let third_foot = sinh_ratio_point(&tri[0], &tri[1], ratios[2])?;
            let residual = distance_to_geodesic(&point, &tri[2], &third_foot)?;
            if residual > tol::CROSS_ORACLE {
                return Err(Error::CevaInconsistent { residual });
            }
            Ok(point)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn reference_velocities() {
        let s = SuspensionParams::reference();
        let r3 = 3f64.sqrt();
        let v = velocity_from_u(&s, r3 / 4.0);
        assert_relative_eq!(v.v, -r3 / 4.0, epsilon = 1e-15);
        assert_relative_eq!(v.w, -0.25, epsilon = 1e-15);
        assert_eq!(
            velocity_from_u(&s, 0.0),
            FlexVelocities::new(0.0, -0.0, -0.0)
        );
    }

    #[test]
    fn equal_h_and_p_gives_opposite_rate() {
        let s = SuspensionParams::new(7, 0.8, 0.8, 0.3).unwrap();
        assert_eq!(velocity_from_u(&s, 1.7).v, -1.7);
    }

    #[test]
    fn reference_is_on_minus_branch() {
        let r = flex_residual(&SuspensionParams::reference());
        assert!(r.minus.abs() <= 1e-15, "{}", r.minus);
        assert!(r.plus.abs() > 0.1);
        assert_eq!(r.flexible_branch(1e-10), Some(FlexBranch::Minus));
    }

    #[test]
    fn equal_radii_are_never_flexible() {
        let s = SuspensionParams::symmetric(6, 0.5, 0.9);
        let r = flex_residual(&s);
        let alpha = PI / 6.0;
        assert_relative_eq!(
            r.minus,
            1.0 - (1.0 - alpha.sin()) / alpha.cos(),
            max_relative = 1e-15
        );
        assert!(!is_flexible(&s, 1e-10));
    }

    #[test]
    fn solver_roundtrips() {
        let p = 0.5f64.atanh();
        let q = solve_q_for_flex(p, PI / 6.0, FlexBranch::Minus).unwrap();
        assert_relative_eq!(q, (3f64.sqrt() / 2.0).atanh(), max_relative = 1e-14);
        let q_plus = solve_q_for_flex(p, PI / 6.0, FlexBranch::Plus).unwrap();
        assert_relative_eq!(q_plus, (3f64.sqrt() / 6.0).atanh(), max_relative = 1e-14);
        let s = SuspensionParams::new(6, 0.3, p, q_plus).unwrap();
        assert!(flex_residual(&s).plus.abs() <= 1e-14);
        for branch in FlexBranch::BOTH {
            assert_relative_eq!(
                solve_q_for_flex(0.7, 1e-12, branch).unwrap(),
                0.7,
                max_relative = 1e-11
            );
        }
    }

    #[test]
    fn solver_reports_missing_solution() {
        // n = 3: needs tanh p < (1 − sin 60°)/cos 60° ≈ 0.268.
        match solve_q_for_flex(1.0, PI / 3.0, FlexBranch::Minus) {
            Err(Error::NoFlexSolution { branch, argument }) => {
                assert_eq!(branch, FlexBranch::Minus);
                assert!(argument > 1.0);
            }
            other => panic!("expected no-solution error, got {other:?}"),
        }
    }

    #[test]
    fn reference_flex_is_stationary_and_nontrivial() {
        let s = SuspensionParams::reference();
        let v = FlexVelocities::reference();
        assert!(stationarity_report(&s, &v).unwrap() <= 1e-12);
        assert_eq!(stationarity_report(&s, &FlexVelocities::ZERO).unwrap(), 0.0);
        assert_eq!(ns_distance_rate(&v), 3f64.sqrt() / 2.0);
        assert_eq!(ns_distance_rate(&v.scaled(-1.0)), -3f64.sqrt() / 2.0);
    }

    #[test]
    fn perturbed_q_breaks_stationarity_of_equator() {
        let s = SuspensionParams::reference();
        let s = s.with_q(s.q + 0.01).unwrap();
        let rates = edge_rates(&s, &velocity_from_u(&s, 3f64.sqrt() / 4.0)).unwrap();
        assert!(rates.b.abs() < 1e-15 && rates.c.abs() < 1e-15);
        // Recorded magnitude: |da/dt| ≈ 1.37e-3 for this perturbation.
        assert!(rates.a.abs() > 1e-3, "{}", rates.a);
    }

    fn reference_triangle(t: f64) -> [MinkowskiPoint; 3] {
        let s = SuspensionParams::reference();
        let v = FlexVelocities::reference();
        let h = s.h + t * v.u;
        let p = s.p + t * v.v;
        let q = s.q + t * v.w;
        let az = s.alpha;
        [
            MinkowskiPoint::from_polar(h, [0.0, 0.0, 1.0]),
            MinkowskiPoint::from_polar(p, [1.0, 0.0, 0.0]),
            MinkowskiPoint::from_polar(q, [az.cos(), az.sin(), 0.0]),
        ]
    }

    #[test]
    fn edge_point_identity_and_vertex_limit() {
        let tri = reference_triangle(0.0);
        let cfg = CevaConfig {
            initial: tri,
            moved: tri,
            target: CevaTarget::Edge {
                from: 1,
                to: 2,
                ratio: 1.0,
            },
        };
        let mid = ceva_track_point(&cfg).unwrap();
        assert_relative_eq!(
            mid.distance(&tri[1]),
            mid.distance(&tri[2]),
            max_relative = 1e-12
        );

        let moved = reference_triangle(0.2);
        let cfg = CevaConfig {
            initial: tri,
            moved,
            target: CevaTarget::Edge {
                from: 1,
                to: 2,
                ratio: 0.0,
            },
        };
        assert!(ceva_track_point(&cfg).unwrap().distance(&moved[1]) < 1e-7);
    }

    #[test]
    fn interior_point_third_cevian_concurrent() {
        let initial = reference_triangle(0.0);
        let moved = reference_triangle(0.01);
        let cfg = CevaConfig {
            initial,
            moved,
            target: CevaTarget::Interior {
                ratios: [1.0, 1.0, 1.0],
            },
        };
        let q = ceva_track_point(&cfg).unwrap();
        // Independent check: the third cevian through the hyperboloid model.
        let feet = cevian_feet(&moved, [1.0, 1.0, 1.0]).unwrap();
        for (vertex, foot) in moved.iter().zip(&feet) {
            assert!(distance_to_geodesic(&q, vertex, foot).unwrap() < 1e-10);
        }
    }

    #[test]
    fn inconsistent_ratios_are_rejected() {
        let tri = reference_triangle(0.0);
        let cfg = CevaConfig {
            initial: tri,
            moved: tri,
            target: CevaTarget::Interior {
                ratios: [1.0, 2.0, 1.0],
            },
        };
        assert!(matches!(
            ceva_track_point(&cfg),
            Err(Error::CevaInconsistent { .. })
        ));
        let bad = CevaConfig {
            target: CevaTarget::Interior {
                ratios: [1.0, -1.0, -1.0],
            },
            ..cfg
        };
        assert!(matches!(ceva_track_point(&bad), Err(Error::InvalidCeva(_))));
    }

    #[test]
    fn ceva_sinh_relation_persists_along_the_flex() {
        let ratios = [0.6, 2.5, 1.0 / (0.6 * 2.5)];
        for t in [-0.2, 0.0, 0.05, 0.3] {
            let tri = reference_triangle(t);
            let [a, b, c] = tri;
            let [fa, fb, fc] = cevian_feet(&tri, ratios).unwrap();
            let prod = (b.distance(&fa).sinh() / fa.distance(&c).sinh())
                * (c.distance(&fb).sinh() / fb.distance(&a).sinh())
                * (a.distance(&fc).sinh() / fc.distance(&b).sinh());
            assert!((prod - 1.0).abs() < 1e-10, "t = {t}: {prod}");
            let cfg = CevaConfig {
                initial: reference_triangle(0.0),
                moved: tri,
                target: CevaTarget::Interior { ratios },
            };
            ceva_track_point(&cfg).unwrap();
        }
    }
}
