//! Grid sweep over the flexible family.

use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;

use hypflex_core::flex::{flexible_params, velocity_from_u};
use hypflex_core::{build_mesh, check_embedding, mean_curvature_rate, schlafli_rate, FlexBranch};

/// Inclusive integer range `lo..hi` or a single value.
#[derive(Clone, Debug, PartialEq)]
pub struct IntRange(pub Vec<usize>);

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("`{x}`: {e}"));
        match s.split_once("..") {
            Some((lo, hi)) => {
                let (lo, hi) = (parse(lo)?, parse(hi.trim_start_matches('='))?);
                if lo > hi {
                    return Err(format!("empty range `{s}`"));
                }
                Ok(IntRange((lo..=hi).collect()))
            }
            None => Ok(IntRange(vec![parse(s)?])),
        }
    }
}

/// `start:stop:count` with endpoints included, or a single expression.
#[derive(Clone, Debug, PartialEq)]
pub struct Linspace(pub Vec<f64>);

impl FromStr for Linspace {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let eval = |x: &str| crate::expr::eval(x).map_err(|e| format!("`{x}` {e}"));
        let parts: Vec<&str> = s.split(':').collect();
        match parts[..] {
            [x] => Ok(Linspace(vec![eval(x)?])),
            [a, b, k] => {
                let (a, b) = (eval(a)?, eval(b)?);
                let k: usize = k.trim().parse().map_err(|e| format!("count `{k}`: {e}"))?;
                match k {
                    0 => Err("count must be positive".into()),
                    1 => Ok(Linspace(vec![a])),
                    _ => Ok(Linspace(
                        (0..k)
                            .map(|i| a + (b - a) * i as f64 / (k - 1) as f64)
                            .collect(),
                    )),
                }
            }
            _ => Err(format!("expected `start:stop:count`, got `{s}`")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BranchSel {
    One(FlexBranch),
    Both,
}

impl BranchSel {
    fn branches(self) -> Vec<FlexBranch> {
        match self {
            BranchSel::One(b) => vec![b],
            BranchSel::Both => FlexBranch::BOTH.to_vec(),
        }
    }
}

impl FromStr for BranchSel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "both" {
            Ok(BranchSel::Both)
        } else {
            s.parse()
                .map(BranchSel::One)
                .map_err(|_| format!("unknown branch `{s}`"))
        }
    }
}

pub struct Grid {
    pub n: IntRange,
    pub p: Linspace,
    pub h: Linspace,
    pub u: f64,
    pub branch: BranchSel,
}

struct Point {
    n: usize,
    p: f64,
    h: f64,
    branch: FlexBranch,
}

#[derive(Default)]
struct Outcome {
    q: Option<f64>,
    dv: Option<f64>,
    dm: Option<f64>,
    embedded: Option<bool>,
    error: Option<String>,
}

fn evaluate(pt: &Point, u: f64) -> Outcome {
    let mut out = Outcome::default();
    let run = |out: &mut Outcome| -> hypflex_core::Result<()> {
        let params = flexible_params(pt.n, pt.h, pt.p, pt.branch)?;
        out.q = Some(params.q);
        let vel = velocity_from_u(&params, u);
        out.dv = Some(schlafli_rate(&params, &vel)?);
        out.dm = Some(mean_curvature_rate(&params, &vel)?);
        out.embedded = Some(check_embedding(&build_mesh(&params, &vel, 0.0)?).embedded);
        Ok(())
    };
    if let Err(e) = run(&mut out) {
        out.error = Some(e.to_string());
    }
    out
}

fn num(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.16e}")).unwrap_or_default()
}

/// Writes one CSV row per grid point in `n, p, h, branch` order. Rows are
/// computed in parallel; failures land in the `error` column.
pub fn run(grid: &Grid, out: impl Write) -> csv::Result<usize> {
    let mut points = Vec::new();
    for &n in &grid.n.0 {
        for &p in &grid.p.0 {
            for &h in &grid.h.0 {
                for branch in grid.branch.branches() {
                    points.push(Point { n, p, h, branch });
                }
            }
        }
    }
    let outcomes: Vec<Outcome> = points.par_iter().map(|pt| evaluate(pt, grid.u)).collect();

    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "n", "p", "h", "branch", "u", "q", "dV_dt", "dM_dt", "embedded", "error",
    ])?;
    for (pt, o) in points.iter().zip(&outcomes) {
        w.write_record([
            pt.n.to_string(),
            format!("{:.16e}", pt.p),
            format!("{:.16e}", pt.h),
            pt.branch.to_string(),
            format!("{:.16e}", grid.u),
            num(o.q),
            num(o.dv),
            num(o.dm),
            o.embedded.map(|b| b.to_string()).unwrap_or_default(),
            o.error.clone().unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(points.len())
}
