mod expr;
mod reproduce;
mod sweep;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hypflex_core::flex::{
    flex_residual, ns_distance_rate, solve_q_for_flex, stationarity_report, velocity_from_u,
};
use hypflex_core::suspension::{dihedral_from_normals, export_mesh};
use hypflex_core::{build_mesh, FlexBranch, MeshFormat, Method, SuspensionParams, VariationReport};

/// Default tolerance on the flexibility residual.
const FLEX_TOL: f64 = 1e-10;

#[derive(Parser)]
#[command(
    name = "hypflex",
    version,
    about = "Infinitesimal flex of a hyperbolic suspension polyhedron"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Recompute the reference instance and check every quantity.
    Reproduce {
        /// Also write the variation report as JSON.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Flexibility residuals, solved q and stationarity for one shape.
    FlexCheck(FlexCheckArgs),
    /// CSV sweep over the flexible family.
    Sweep(SweepArgs),
    /// Export the suspension mesh at parameter t.
    Mesh(MeshArgs),
}

fn expr(s: &str) -> Result<f64, expr::ParseError> {
    expr::eval(s)
}

#[derive(Args)]
struct ShapeArgs {
    #[arg(long, default_value_t = 6)]
    n: usize,
    #[arg(long, allow_hyphen_values = true, value_parser = expr, default_value = "atanh(1/2)")]
    h: f64,
    #[arg(long, allow_hyphen_values = true, value_parser = expr, default_value = "atanh(1/2)")]
    p: f64,
    #[arg(long, allow_hyphen_values = true, value_parser = expr, default_value = "atanh(sqrt(3)/2)")]
    q: f64,
    /// Pole velocity; v and w follow from edge stationarity.
    #[arg(long, allow_hyphen_values = true, value_parser = expr, default_value = "sqrt(3)/4")]
    u: f64,
}

#[derive(Args)]
struct FlexCheckArgs {
    #[command(flatten)]
    shape: ShapeArgs,
    /// Replace q by the flexible solution on `--branch`.
    #[arg(long)]
    solve_q: bool,
    #[arg(long, default_value = "minus")]
    branch: FlexBranch,
}

#[derive(Args)]
struct SweepArgs {
    /// Inclusive, e.g. `3..8`.
    #[arg(long, default_value = "3..8")]
    n_range: sweep::IntRange,
    /// `start:stop:count`, endpoints included.
    #[arg(long, default_value = "0.2:1.0:5")]
    p_range: sweep::Linspace,
    #[arg(long, default_value = "0.2:1.0:5")]
    h_range: sweep::Linspace,
    #[arg(long, allow_hyphen_values = true, value_parser = expr, default_value = "1")]
    u: f64,
    /// `minus`, `plus` or `both`.
    #[arg(long, default_value = "both")]
    branch: sweep::BranchSel,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MeshArgs {
    #[command(flatten)]
    shape: ShapeArgs,
    #[arg(long, allow_hyphen_values = true, value_parser = expr, default_value = "0")]
    t: f64,
    #[arg(long, default_value = "json")]
    format: MeshFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn output(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// `HYPFLEX_TOL`, if set, replaces the flexibility tolerance.
fn flex_tolerance() -> Result<f64, String> {
    match std::env::var("HYPFLEX_TOL") {
        Ok(s) => match expr::eval(&s) {
            Ok(v) if v >= 0.0 => Ok(v),
            Ok(v) => Err(format!("HYPFLEX_TOL must be nonnegative, got {v}")),
            Err(e) => Err(format!("HYPFLEX_TOL {e}")),
        },
        Err(_) => Ok(FLEX_TOL),
    }
}

fn flex_check(args: &FlexCheckArgs) -> Result<(), Box<dyn std::error::Error>> {
    let tol = flex_tolerance()?;
    let s = &args.shape;
    let mut params = SuspensionParams::new_brick(s.n, s.h, s.p, s.q)?;
    let mut out = io::stdout().lock();
    writeln!(out, "n = {}  alpha = pi/{}", s.n, s.n)?;
    for branch in FlexBranch::BOTH {
        match solve_q_for_flex(s.p, params.alpha, branch) {
            Ok(q) => writeln!(out, "solved q ({branch}) = {q:.16e}")?,
            Err(e) => writeln!(out, "solved q ({branch}): {e}")?,
        }
    }
    if args.solve_q {
        params = params.with_q(solve_q_for_flex(s.p, params.alpha, args.branch)?)?;
    }
    writeln!(out, "q = {:.16e}", params.q)?;
    let r = flex_residual(&params);
    for branch in FlexBranch::BOTH {
        writeln!(out, "{branch}-branch residual {:.16e}", r.get(branch))?;
    }
    match r.flexible_branch(tol) {
        Some(b) => writeln!(out, "flexible: yes ({b} branch, tol {tol:e})")?,
        None => writeln!(out, "flexible: no (tol {tol:e})")?,
    }
    let vel = velocity_from_u(&params, s.u);
    writeln!(
        out,
        "(u, v, w) = ({:.16e}, {:.16e}, {:.16e})",
        vel.u, vel.v, vel.w
    )?;
    writeln!(
        out,
        "max |d(edge)/dt| = {:.16e}",
        stationarity_report(&params, &vel)?
    )?;
    writeln!(out, "d dist(N,S)/dt = {:.16e}", ns_distance_rate(&vel))?;
    Ok(())
}

fn mesh(args: &MeshArgs) -> Result<(), Box<dyn std::error::Error>> {
    let s = &args.shape;
    let params = SuspensionParams::new(s.n, s.h, s.p, s.q)?;
    let vel = velocity_from_u(&params, s.u);
    let mesh = build_mesh(&params, &vel, args.t)?;

    // Re-measure the census against the closed forms before writing.
    let mut worst = 0f64;
    for e in &mesh.edges {
        worst = worst.max((mesh.edge_length(e) - e.length).abs());
        worst = worst.max((dihedral_from_normals(&mesh, e)? - e.dihedral).abs());
    }
    let mut out = output(&args.out)?;
    export_mesh(&mesh, args.format, &mut out)?;
    out.flush()?;
    eprintln!(
        "{} vertices, {} faces, {} edges; census deviation {worst:.1e}",
        mesh.vertices.len(),
        mesh.faces.len(),
        mesh.edges.len()
    );
    if worst > 1e-10 {
        return Err(format!("edge census deviates from closed forms by {worst:e}").into());
    }
    Ok(())
}

fn reproduce_cmd(report_path: &Option<PathBuf>) -> Result<(), Box<dyn std::error::Error>> {
    let report = reproduce::run()?;
    print!("{}", report.render());
    if let Some(path) = report_path {
        let params = SuspensionParams::reference();
        let vel = velocity_from_u(&params, 3f64.sqrt() / 4.0);
        let json = VariationReport::compute(&params, &vel, Method::Dual)?.with_oracle()?;
        let mut out = output(&Some(path.clone()))?;
        serde_json::to_writer_pretty(&mut out, &json)?;
        writeln!(out)?;
        out.flush()?;
    }
    match report.first_failure() {
        None => Ok(()),
        Some(c) => Err(format!("check failed: {}", c.label).into()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result: Result<(), Box<dyn std::error::Error>> = match &cli.command {
        Command::Reproduce { report } => reproduce_cmd(report),
        Command::FlexCheck(args) => flex_check(args),
        Command::Sweep(args) => {
            let grid = sweep::Grid {
                n: args.n_range.clone(),
                p: args.p_range.clone(),
                h: args.h_range.clone(),
                u: args.u,
                branch: args.branch,
            };
            output(&args.out)
                .map_err(Into::into)
                .and_then(|w| sweep::run(&grid, w).map(|_| ()).map_err(Into::into))
        }
        Command::Mesh(args) => mesh(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
