//! End-to-end check of the reference instance: `n = 6`,
//! `h = p = atanh(1/2)`, `q = atanh(√3/2)`, `u = √3/4`.

use std::f64::consts::FRAC_PI_2;
use std::fmt::Write as _;

use hypflex_core::flex::{
    edge_rates, flex_residual, ns_distance_rate, solve_q_for_flex, velocity_from_u,
};
use hypflex_core::variation::oracle_volume_rate;
use hypflex_core::{
    build_mesh, check_embedding, dihedral_rates, mean_curvature_rate, schlafli_rate, FlexBranch,
    Method, SuspensionParams, TetraMetrics,
};

/// `dV/dt` of the reference flex, evaluated independently at 40 digits.
#[allow(clippy::excessive_precision)]
pub const VOLUME_RATE: f64 = -0.151_655_834_081_909_404_819_110_390_076_628;

/// Twist of the tips that folds the reference mesh onto itself.
pub const FOLD_TWIST: f64 = FRAC_PI_2;

pub struct Check {
    pub label: String,
    pub value: f64,
    /// `None` for pass/fail predicates.
    pub reference: Option<f64>,
    pub tol: f64,
    pub pass: bool,
}

impl Check {
    fn close(label: impl Into<String>, value: f64, reference: f64, tol: f64) -> Self {
        Check {
            label: label.into(),
            value,
            reference: Some(reference),
            tol,
            pass: (value - reference).abs() <= tol,
        }
    }

    fn holds(label: impl Into<String>, value: f64, pass: bool) -> Self {
        Check {
            label: label.into(),
            value,
            reference: None,
            tol: 0.0,
            pass,
        }
    }
}

pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<34} {:>24} {:>24} {:>9} {:>7}  status",
            "quantity", "value", "reference", "|diff|", "tol"
        );
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            match c.reference {
                Some(r) => {
                    let _ = writeln!(
                        out,
                        "{:<34} {:>24.16e} {:>24.16e} {:>9.1e} {:>7.0e}  {status}",
                        c.label,
                        c.value,
                        r,
                        (c.value - r).abs(),
                        c.tol
                    );
                }
                None => {
                    let _ = writeln!(
                        out,
                        "{:<34} {:>24.16e} {:>24} {:>9} {:>7}  {status}",
                        c.label, c.value, "", "", ""
                    );
                }
            }
        }
        let _ = writeln!(out);
        for c in self.checks.iter().filter(|c| c.reference.is_none()) {
            let _ = writeln!(out, "{}: {}", c.label, if c.pass { "PASS" } else { "FAIL" });
        }
        out
    }
}

fn volume_rate_closed_form() -> f64 {
    let (s7, s13) = (7f64.sqrt(), 13f64.sqrt());
    -3.0 * (s7 * ((4.0 + s7) / 3.0).ln() + s13 * ((7.0 - s13) / 6.0).ln())
}

pub fn run() -> hypflex_core::Result<Report> {
    let r3 = 3f64.sqrt();
    let params = SuspensionParams::reference();
    let vel = velocity_from_u(&params, r3 / 4.0);
    let mut checks = Vec::new();

    checks.push(Check::close(
        "flex residual (minus)",
        flex_residual(&params).minus,
        0.0,
        1e-14,
    ));
    let q = solve_q_for_flex(params.p, params.alpha, FlexBranch::Minus)?;
    checks.push(Check::close(
        "solved q = atanh(√3/2)",
        q,
        (r3 / 2.0).atanh(),
        1e-14,
    ));
    checks.push(Check::close("v = −√3/4", vel.v, -r3 / 4.0, 1e-14));
    checks.push(Check::close("w = −1/4", vel.w, -0.25, 1e-14));

    let e = TetraMetrics::at(&params, &vel, 0.0)?.edges;
    checks.push(Check::close(
        "cosh a(0) = 5/(2√3)",
        e.a.cosh,
        5.0 / (2.0 * r3),
        1e-14,
    ));
    checks.push(Check::close("cosh b(0) = 4/3", e.b.cosh, 4.0 / 3.0, 1e-14));
    checks.push(Check::close("cosh c(0) = 4/√3", e.c.cosh, 4.0 / r3, 1e-14));

    let dual = dihedral_rates(&params, &vel, Method::Dual)?;
    let fd = dihedral_rates(&params, &vel, Method::FiniteDifference)?;
    let (s7, s13) = (7f64.sqrt() / 4.0, 13f64.sqrt() / 4.0);
    checks.push(Check::close("d∠AB/dt = √13/4", dual.ab, s13, 1e-9));
    checks.push(Check::close("d∠NA/dt = √7/4", dual.na, s7, 1e-9));
    checks.push(Check::close("d∠NB/dt = −√13/4", dual.nb, -s13, 1e-9));
    checks.push(Check::close(
        "d∠AB/dt (finite differences)",
        fd.ab,
        dual.ab,
        1e-8,
    ));
    checks.push(Check::close(
        "d∠NA/dt (finite differences)",
        fd.na,
        dual.na,
        1e-8,
    ));
    checks.push(Check::close(
        "d∠NB/dt (finite differences)",
        fd.nb,
        dual.nb,
        1e-8,
    ));

    let dv = schlafli_rate(&params, &vel)?;
    let dm = mean_curvature_rate(&params, &vel)?;
    checks.push(Check::close(
        "dV/dt (closed form)",
        dv,
        volume_rate_closed_form(),
        1e-12,
    ));
    checks.push(Check::close(
        "dV/dt (40-digit value)",
        dv,
        VOLUME_RATE,
        1e-12,
    ));
    checks.push(Check::close("dM/dt = dV/dt", dm, dv, 1e-12));

    let rates = edge_rates(&params, &vel)?;
    checks.push(Check::close(
        "max |d(edge)/dt|",
        rates.max_abs(),
        0.0,
        1e-12,
    ));
    checks.push(Check::close(
        "d dist(N,S)/dt = √3/2",
        ns_distance_rate(&vel),
        r3 / 2.0,
        0.0,
    ));

    let oracle = oracle_volume_rate(&params, &vel)?;
    checks.push(Check::close(
        "dV/dt (orthoscheme oracle)",
        oracle.value,
        dv,
        1e-5,
    ));

    checks.push(Check::holds("dV/dt < 0", dv, dv < 0.0));
    for t in [-0.05, 0.0, 0.05] {
        let mesh = build_mesh(&params, &vel, t)?;
        let embedded = check_embedding(&mesh).embedded;
        checks.push(Check::holds(
            format!("embedded at t = {t:+.2}"),
            t,
            embedded,
        ));
    }
    let folded = build_mesh(&params, &vel, 0.0)?.with_twisted_tips(FOLD_TWIST)?;
    checks.push(Check::holds(
        "folded mesh detected",
        FOLD_TWIST,
        !check_embedding(&folded).embedded,
    ));

    Ok(Report { checks })
}
