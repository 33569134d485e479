//! Hyperbolic and spherical trigonometry in curvature ±1, plus the
//! Lobachevsky function.
//!
//! Every law is generic over [`Real`], so evaluating with
//! [`Dual`](crate::scalar::Dual) inputs yields exact first derivatives.

use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tol;

/// An angle carried as its sine/cosine pair.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SinCos<T> {
    pub sin: T,
    pub cos: T,
}

impl<T: Real> SinCos<T> {
    pub fn new(sin: T, cos: T) -> Self {
        SinCos { sin, cos }
    }

    pub fn from_angle(angle: T) -> Self {
        SinCos {
            sin: angle.sin(),
            cos: angle.cos(),
        }
    }

    /// Pair for an angle in `[0, π]` known only by its cosine.
    pub fn from_cos(cos: T) -> Self {
        SinCos {
            sin: (T::cst(1.0) - cos * cos).sqrt(),
            cos,
        }
    }

    /// Principal angle via the two-argument arctangent.
    pub fn angle(self) -> T {
        self.sin.atan2(self.cos)
    }

    /// `sin² + cos² − 1`, evaluated on the real parts.
    pub fn pythagorean_defect(&self) -> f64 {
        let (s, c) = (self.sin.value(), self.cos.value());
        s * s + c * c - 1.0
    }

    pub fn map<U>(self, f: impl Fn(T) -> U) -> SinCos<U> {
        SinCos {
            sin: f(self.sin),
            cos: f(self.cos),
        }
    }
}

pub(crate) fn checked_cosine<T: Real>(cos: T, spherical: bool) -> Result<T> {
    let c = cos.value();
    if !c.is_finite() || c.abs() > 1.0 + tol::COSINE_SLACK {
        return Err(if spherical {
            Error::SphericalDomain { cosine: c }
        } else {
            Error::HyperbolicDomain { cosine: c }
        });
    }
    if c.abs() > 1.0 {
        Ok(T::cst(c.signum()))
    } else {
        Ok(cos)
    }
}

/// Hypotenuse of a right hyperbolic triangle: `cosh c = cosh l₁ · cosh l₂`.
pub fn hyp_pythagoras<T: Real>(leg1: T, leg2: T) -> T {
    (leg1.cosh() * leg2.cosh()).acosh()
}

/// Side opposite the angle `angle` enclosed by sides `b` and `c`.
pub fn hyp_side_from_angle<T: Real>(b: T, c: T, angle: T) -> T {
    (b.cosh() * c.cosh() - b.sinh() * c.sinh() * angle.cos()).acosh()
}

/// Angle opposite `a` in the hyperbolic triangle with sides `a`, `b`, `c`.
pub fn hyp_angle_from_sides<T: Real>(a: T, b: T, c: T) -> Result<SinCos<T>> {
    let cos = (b.cosh() * c.cosh() - a.cosh()) / (b.sinh() * c.sinh());
    checked_cosine(cos, false).map(SinCos::from_cos)
}

/// Angle opposite side `c` of a spherical triangle with sides `a`, `b`, `c`
/// (sides given as sine/cosine pairs).
pub fn sph_angle_from_sides<T: Real>(
    a: SinCos<T>,
    b: SinCos<T>,
    c: SinCos<T>,
) -> Result<SinCos<T>> {
    let cos = (c.cos - a.cos * b.cos) / (a.sin * b.sin);
    checked_cosine(cos, true).map(SinCos::from_cos)
}

/// `sin(opposite_angle) / sin(side)`, the common ratio of the spherical
/// law of sines.
pub fn sph_sine_ratio<T: Real>(side: SinCos<T>, opposite_angle: SinCos<T>) -> T {
    opposite_angle.sin / side.sin
}

/// Number of Clausen-series terms; with `|x| ≤ π` the terms decay at least
/// like `4^{-k}`, so 30 terms put the truncation error below 1e−18.
const CLAUSEN_TERMS: usize = 30;

/// `ζ(2k)` for `k = 1..=5` in closed form.
const ZETA_EVEN: [f64; 5] = [
    1.644_934_066_848_226_4,
    1.082_323_233_711_138_2,
    1.017_343_061_984_449,
    1.004_077_356_197_944_3,
    1.000_994_575_127_818_1,
];

/// `ζ(2k)/(k(2k+1))` for `k = 1..=CLAUSEN_TERMS`. Beyond the closed forms
/// the zeta values are direct sums; 40 terms are exact to f64 for `k ≥ 6`.
fn clausen_coefficients() -> &'static [f64; CLAUSEN_TERMS] {
    static TABLE: OnceLock<[f64; CLAUSEN_TERMS]> = OnceLock::new();
    TABLE.get_or_init(|| {
        std::array::from_fn(|i| {
            let k = i + 1;
            let zeta = match ZETA_EVEN.get(i) {
                Some(&z) => z,
                None => (1..=40).rev().map(|n| (n as f64).powi(-2 * k as i32)).sum(),
            };
            zeta / (k as f64 * (2.0 * k as f64 + 1.0))
        })
    })
}

/// The Lobachevsky function `Λ(θ) = −∫₀^θ ln|2 sin t| dt`.
///
/// Reduced to `(−π/2, π/2]` by π-periodicity and oddness, then summed from
/// the Clausen expansion
/// `Λ(θ) = ½·[x − x ln|x| + Σ_k ζ(2k)/(k(2k+1)) · x (x/2π)^{2k}]`, `x = 2θ`.
pub fn lobachevsky_lambda(theta: f64) -> f64 {
    let mut r = theta.rem_euclid(PI);
    if r > FRAC_PI_2 {
        r -= PI;
    }
    if r == 0.0 {
        return 0.0;
    }
    let x = 2.0 * r;
    let ratio = (x / (2.0 * PI)).powi(2);
    let mut pow = 1.0;
    let mut tail = 0.0;
    for c in clausen_coefficients() {
        pow *= ratio;
        tail += c * pow;
    }
    0.5 * x * (1.0 - x.abs().ln() + tail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Dual;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn pythagoras_reference_values() {
        let half = 0.5f64.atanh();
        assert_relative_eq!(
            hyp_pythagoras(half, half).cosh(),
            4.0 / 3.0,
            max_relative = 1e-15
        );
        assert!((hyp_pythagoras(0.8, 0.0) - 0.8).abs() < 1e-15);
    }

    #[test]
    fn pythagoras_matches_hyperboloid_distance() {
        // Legs along orthogonal axes from the basepoint (1, 0, 0, 0).
        let x = [1f64.cosh(), 1f64.sinh(), 0.0];
        let y = [1f64.cosh(), 0.0, 1f64.sinh()];
        let inner = -x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
        assert_relative_eq!(
            hyp_pythagoras(1.0, 1.0),
            (-inner).acosh(),
            max_relative = 1e-14
        );
        assert_relative_eq!(
            hyp_pythagoras(1.0, 1.0),
            (1f64.cosh().powi(2)).acosh(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn cosine_law_reference() {
        let b = 0.5f64.atanh();
        let c = (3f64.sqrt() / 2.0).atanh();
        let a = hyp_side_from_angle(b, c, PI / 6.0);
        assert_relative_eq!(a.cosh(), 5.0 / (2.0 * 3f64.sqrt()), max_relative = 1e-14);
        let back = hyp_angle_from_sides(a, b, c).unwrap();
        assert_relative_eq!(back.angle(), PI / 6.0, max_relative = 1e-12);
    }

    #[test]
    fn cosine_law_degenerations() {
        let (b, c) = (0.7, 1.2);
        assert_relative_eq!(
            hyp_side_from_angle(b, c, PI / 2.0),
            hyp_pythagoras(b, c),
            max_relative = 1e-14
        );
        assert_relative_eq!(hyp_side_from_angle(b, c, 1e-9), 0.5, epsilon = 1e-8);
    }

    #[test]
    fn equilateral_euclidean_limit() {
        let a = 1e-4;
        let ang = hyp_angle_from_sides(a, a, a).unwrap().angle();
        assert_relative_eq!(ang, PI / 3.0, epsilon = 1e-6);
    }

    #[test]
    fn non_realizable_triangle_reports_cosine() {
        match hyp_angle_from_sides(5.0, 1.0, 1.0) {
            Err(Error::HyperbolicDomain { cosine }) => assert!(cosine < -1.0),
            other => panic!("expected domain error, got {other:?}"),
        }
        let s = |x: f64| SinCos::from_angle(x);
        assert!(matches!(
            sph_angle_from_sides(s(0.2), s(0.3), s(1.5)),
            Err(Error::SphericalDomain { .. })
        ));
    }

    #[test]
    fn birectangular_spherical_triangle() {
        let s = |x: f64| SinCos::from_angle(x);
        let c = sph_angle_from_sides(s(PI / 2.0), s(PI / 2.0), s(0.9)).unwrap();
        assert_relative_eq!(c.angle(), 0.9, max_relative = 1e-14);
    }

    #[test]
    fn equilateral_spherical_sine_ratios() {
        let side = SinCos::from_angle(1.1);
        let ang = sph_angle_from_sides(side, side, side).unwrap();
        // cos A = cos a / (1 + cos a) for an equilateral spherical triangle.
        assert_relative_eq!(
            ang.cos,
            1.1f64.cos() / (1.0 + 1.1f64.cos()),
            max_relative = 1e-14
        );
        let ratios = [sph_sine_ratio(side, ang); 3];
        assert!(ratios.iter().all(|&r| r == ratios[0]));
        assert!(ang.angle() > PI / 3.0);
    }

    #[test]
    fn lambda_special_values() {
        assert_eq!(lobachevsky_lambda(0.0), 0.0);
        assert!(lobachevsky_lambda(PI / 2.0).abs() < 1e-15);
        // Reference values: 40-digit evaluation of ½·Cl₂(2θ).
        assert_relative_eq!(
            lobachevsky_lambda(PI / 6.0),
            0.507_470_803_204_826_8,
            epsilon = 1e-15
        );
        assert_relative_eq!(
            lobachevsky_lambda(PI / 3.0),
            0.338_313_868_803_217_9,
            epsilon = 1e-15
        );
        // Regular ideal tetrahedron: 3Λ(π/3) = 2Λ(π/6).
        assert_relative_eq!(
            3.0 * lobachevsky_lambda(PI / 3.0),
            2.0 * lobachevsky_lambda(PI / 6.0),
            epsilon = 1e-14
        );
    }

    /// `−∫₀^θ ln(2 sin t) dt` on `(0, π/2]`, split as the exact integral of
    /// `−ln(2t)` plus Gauss–Legendre quadrature of the smooth remainder.
    fn lambda_by_quadrature(theta: f64) -> f64 {
        // 20-point Gauss–Legendre nodes/weights on [-1, 1], generated by
        // Newton iteration on the Legendre recurrence.
        let n = 20;
        let mut acc = 0.0;
        for i in 0..n {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            let t = 0.5 * theta * (x + 1.0);
            acc += w * (-(t.sin() / t).ln());
        }
        theta - theta * (2.0 * theta).ln() + 0.5 * theta * acc
    }

    #[test]
    fn lambda_matches_integral_definition() {
        for k in 1..=30 {
            let theta = k as f64 * (PI / 2.0) / 30.0;
            assert_relative_eq!(
                lobachevsky_lambda(theta),
                lambda_by_quadrature(theta),
                epsilon = 1e-13
            );
        }
    }

    #[test]
    fn lambda_maximum_at_pi_over_six() {
        let peak = lobachevsky_lambda(PI / 6.0);
        for k in 0..=1000 {
            let theta = k as f64 * (PI / 2.0) / 1000.0;
            assert!(lobachevsky_lambda(theta) <= peak + 1e-15);
        }
    }

    #[test]
    fn kernel_derivatives_match_richardson_differences() {
        fn rich(f: impl Fn(f64) -> f64, x: f64) -> f64 {
            let d = |h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
            let h = 1e-3;
            let (d1, d2, d3) = (d(h), d(h / 2.0), d(h / 4.0));
            let r1 = (4.0 * d2 - d1) / 3.0;
            let r2 = (4.0 * d3 - d2) / 3.0;
            (16.0 * r2 - r1) / 15.0
        }
        let x0 = 0.6;
        let pyth = |x: Dual| hyp_pythagoras(x, x * 0.5 + 0.3);
        let side = |x: Dual| hyp_side_from_angle(x, Dual::constant(1.1), x * 0.7);
        let ang = |x: Dual| {
            hyp_angle_from_sides(x + 0.5, Dual::constant(0.9), Dual::constant(1.0))
                .unwrap()
                .angle()
        };
        let sph = |x: Dual| {
            sph_angle_from_sides(
                SinCos::from_angle(x + 0.4),
                SinCos::from_angle(Dual::constant(0.9)),
                SinCos::from_angle(Dual::constant(1.0)),
            )
            .unwrap()
            .angle()
        };
        for f in [&pyth as &dyn Fn(Dual) -> Dual, &side, &ang, &sph] {
            let exact = f(Dual::variable(x0)).eps;
            let fd = rich(|x| f(Dual::constant(x)).re, x0);
            assert_relative_eq!(exact, fd, max_relative = 1e-8);
        }
    }

    /// A random hyperbolic triangle from two sides and their enclosed angle.
    fn triangle() -> impl Strategy<Value = (f64, f64, f64)> {
        (0.05f64..3.0, 0.05f64..3.0, 0.05f64..(PI - 0.05))
            .prop_map(|(b, c, ang)| (hyp_side_from_angle(b, c, ang), b, c))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn cosine_law_roundtrip(b in 0.05f64..3.0, c in 0.05f64..3.0, ang in 0.05f64..(PI - 0.05)) {
            let a = hyp_side_from_angle(b, c, ang);
            let back = hyp_angle_from_sides(a, b, c).unwrap();
            prop_assert!(back.pythagorean_defect().abs() < 1e-12);
            prop_assert!((hyp_side_from_angle(b, c, back.angle()) - a).abs() < 1e-12 * a.max(1.0));
        }

        #[test]
        fn hyperbolic_angle_sum_below_pi((a, b, c) in triangle()) {
            let sum = hyp_angle_from_sides(a, b, c).unwrap().angle()
                + hyp_angle_from_sides(b, c, a).unwrap().angle()
                + hyp_angle_from_sides(c, a, b).unwrap().angle();
            prop_assert!(sum < PI);
        }

        #[test]
        fn spherical_sine_law_and_excess(a in 0.1f64..1.5, b in 0.1f64..1.5, gamma in 0.1f64..(PI - 0.1)) {
            // Third side from the spherical law of cosines.
            let c = (a.cos() * b.cos() + a.sin() * b.sin() * gamma.cos()).acos();
            let (sa, sb, sc) = (SinCos::from_angle(a), SinCos::from_angle(b), SinCos::from_angle(c));
            let ang_c = sph_angle_from_sides(sa, sb, sc).unwrap();
            let ang_a = sph_angle_from_sides(sb, sc, sa).unwrap();
            let ang_b = sph_angle_from_sides(sc, sa, sb).unwrap();
            prop_assert!((ang_c.angle() - gamma).abs() < 1e-9);
            let r = sph_sine_ratio(sc, ang_c);
            prop_assert!((sph_sine_ratio(sa, ang_a) - r).abs() < 1e-12 * r.max(1.0));
            prop_assert!((sph_sine_ratio(sb, ang_b) - r).abs() < 1e-12 * r.max(1.0));
            prop_assert!(ang_a.angle() + ang_b.angle() + ang_c.angle() > PI);
        }

        #[test]
        fn lambda_odd_and_periodic(theta in -4.0f64..4.0) {
            let l = lobachevsky_lambda(theta);
            prop_assert!((lobachevsky_lambda(-theta) + l).abs() < 1e-14);
            prop_assert!((lobachevsky_lambda(theta + PI) - l).abs() < 1e-13);
        }
    }
}
