//! `noneuclid`: volumes, principal parameters and edge lengths of Lambert
//! cubes and spherical orthoschemes, parameter sweeps and the self-check
//! suite.
//!
//! Exit status: 0 on success, 1 when a self-check fails, 2 on usage or
//! domain errors.

mod angle;
mod output;

use std::io::{self, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use noneuclid::lambert::{
    classify, edge_lengths_spherical, principal, volume_hyperbolic, volume_spherical_estimate,
    volume_spherical_integral_with, CubeAngles, Geometry, IntegralRoute, PrincipalData,
};
use noneuclid::orthoscheme::{
    classify_orthoscheme, orthoscheme_edges, volume_orthoscheme_integral_estimate,
    volume_orthoscheme_schlaefli, volume_via_delta_estimate, Curvature, OrthoschemeAngles,
};
use noneuclid::specfun::{
    delta_cap_tol, delta_s_extended_tol, delta_s_reduced_tol, delta_s_tol, lobachevsky_tol, DEFAULT_TOL,
};
use noneuclid::verify::{Check, CheckReport, DEFAULT_SEED};

use angle::{Angle, AngleRange};
use output::{write_record, Format, Record, Table};

#[derive(Parser)]
#[command(name = "noneuclid", version, about = "Volumes of Lambert cubes and spherical orthoschemes")]
struct Cli {
    #[command(flatten)]
    opts: Opts,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Opts {
    /// Output format [default: plain, csv for sweep]
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Read plain decimal angles as degrees (multiples of pi stay radians)
    #[arg(long, global = true)]
    degrees: bool,

    /// Report angles and lengths in degrees
    #[arg(long, global = true)]
    degrees_out: bool,

    /// Omit the wall_time_s field
    #[arg(long, global = true)]
    no_timing: bool,

    /// Absolute quadrature tolerance [default: 1e-12]
    #[arg(long, global = true, env = "NONEUCLID_TOL", value_parser = parse_tol)]
    tol: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Volume of a Lambert cube
    Volume {
        #[command(flatten)]
        cube: CubeArgs,
        /// Volume route for spherical cubes
        #[arg(long, value_enum, default_value_t = CubeMethod::Delta)]
        method: CubeMethod,
    },
    /// Edge lengths of a spherical Lambert cube
    Edges {
        #[command(flatten)]
        cube: CubeArgs,
    },
    /// Principal parameter T = tan(theta) and the derived quantities
    Principal {
        #[command(flatten)]
        cube: CubeArgs,
    },
    /// Classification, edge lengths and volume of an orthoscheme T(alpha, beta, gamma)
    Orthoscheme {
        #[arg(long, allow_hyphen_values = true)]
        alpha: Angle,
        #[arg(long, allow_hyphen_values = true)]
        beta: Angle,
        #[arg(long, allow_hyphen_values = true)]
        gamma: Angle,
        #[arg(long, value_enum, default_value_t = OrthoMethod::Schlaefli)]
        method: OrthoMethod,
    },
    /// The function delta(alpha, theta), or the hyperbolic Delta with --kind cap
    Delta {
        #[arg(long, allow_hyphen_values = true)]
        alpha: Angle,
        #[arg(long, allow_hyphen_values = true)]
        theta: Angle,
        #[arg(long, value_enum, default_value_t = DeltaKind::Direct)]
        kind: DeltaKind,
    },
    /// The Lobachevsky function
    Lobachevsky {
        #[arg(long, allow_hyphen_values = true)]
        x: Angle,
    },
    /// Cube volumes over a grid; each angle is a:b:n (inclusive) or a fixed value
    Sweep {
        #[arg(long, allow_hyphen_values = true)]
        alpha: AngleRange,
        #[arg(long, allow_hyphen_values = true)]
        beta: AngleRange,
        #[arg(long, allow_hyphen_values = true)]
        gamma: AngleRange,
        #[arg(long, value_enum, default_value_t = CubeMethod::Delta)]
        method: CubeMethod,
    },
    /// Run the identity suite; exits 1 if any check fails
    Selfcheck {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Args)]
struct CubeArgs {
    #[arg(long, allow_hyphen_values = true)]
    alpha: Angle,
    #[arg(long, allow_hyphen_values = true)]
    beta: Angle,
    #[arg(long, allow_hyphen_values = true)]
    gamma: Angle,
    /// Fail unless the angles describe a cube of this geometry
    #[arg(long, value_enum)]
    geometry: Option<GeometryArg>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GeometryArg {
    Spherical,
    Hyperbolic,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CubeMethod {
    /// Weighted sum of five delta values
    Delta,
    /// Improper integral after t = tan(tau)
    Integral,
    /// Improper integral over the half-line, compactified
    Ray,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrthoMethod {
    Schlaefli,
    Delta,
    Integral,
}

#[derive(Clone, Copy, ValueEnum)]
enum DeltaKind {
    /// The defining integral over [theta, pi/2]
    Direct,
    /// Any real arguments, via symmetry and periodicity
    Extended,
    /// delta(alpha, theta) + (2 theta/pi - 1) delta(alpha, 0)
    Reduced,
    /// Lambda(alpha + theta) - Lambda(alpha - theta)
    Cap,
}

fn parse_tol(s: &str) -> Result<f64, String> {
    let t: f64 = s.trim().parse().map_err(|_| format!("'{s}' is not a number"))?;
    if t > 0.0 && t.is_finite() {
        Ok(t)
    } else {
        Err(format!("tolerance must be positive and finite, got {s}"))
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Compute(noneuclid::Error),
    Io(io::Error),
}

impl From<noneuclid::Error> for Failure {
    fn from(e: noneuclid::Error) -> Self {
        Failure::Compute(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

struct Ctx {
    format: Format,
    degrees: bool,
    degrees_out: bool,
    timing: bool,
    tol: f64,
    tol_given: bool,
}

impl Ctx {
    /// Angles and lengths on their way out.
    fn ang(&self, x: f64) -> f64 {
        if self.degrees_out {
            x.to_degrees()
        } else {
            x
        }
    }

    fn emit(&self, mut rec: Record, start: Instant) -> Result<ExitCode, Failure> {
        if self.timing {
            rec.push("wall_time_s", start.elapsed().as_secs_f64());
        }
        let mut out = io::stdout().lock();
        write_record(&mut out, self.format, &rec)?;
        out.flush()?;
        Ok(ExitCode::SUCCESS)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx {
        format: cli.opts.format.unwrap_or(match cli.command {
            Command::Sweep { .. } => Format::Csv,
            _ => Format::Plain,
        }),
        degrees: cli.opts.degrees,
        degrees_out: cli.opts.degrees_out,
        timing: !cli.opts.no_timing,
        tol: cli.opts.tol.unwrap_or(DEFAULT_TOL),
        tol_given: cli.opts.tol.is_some(),
    };
    match run(&ctx, cli.command) {
        Ok(code) => code,
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            let msg = match e {
                Failure::Usage(m) => m,
                Failure::Compute(e) => e.to_string(),
                Failure::Io(e) => format!("i/o error: {e}"),
            };
            eprintln!("noneuclid: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(ctx: &Ctx, command: Command) -> Result<ExitCode, Failure> {
    let start = Instant::now();
    match command {
        Command::Volume { cube, method } => {
            let q = cube_angles(ctx, &cube)?;
            let v = cube_volume(&q, method, ctx.tol)?;
            ctx.emit(volume_record(ctx, &q, Some(&v)), start)
        }
        Command::Edges { cube } => {
            let q = cube_angles(ctx, &cube)?;
            let pd = principal(&q)?;
            let e = edge_lengths_spherical(&pd)?;
            let (a, b, c) = pd.abc.expect("spherical");
            let mut rec = cube_header(ctx, &q);
            rec.push("T", pd.t)
                .push("A", a)
                .push("B", b)
                .push("C", c)
                .push("l_alpha", ctx.ang(e.l_alpha))
                .push("l_beta", ctx.ang(e.l_beta))
                .push("l_gamma", ctx.ang(e.l_gamma));
            ctx.emit(rec, start)
        }
        Command::Principal { cube } => {
            let q = cube_angles(ctx, &cube)?;
            let pd = principal(&q)?;
            let abc = pd.abc;
            let mut rec = cube_header(ctx, &q);
            rec.push("L", pd.l)
                .push("M", pd.m)
                .push("N", pd.n)
                .push("P", pd.p)
                .push("T", pd.t)
                .push("theta", ctx.ang(pd.theta))
                .push("A", abc.map(|x| x.0))
                .push("B", abc.map(|x| x.1))
                .push("C", abc.map(|x| x.2))
                .push("quartic_residual", pd.quartic_residual());
            ctx.emit(rec, start)
        }
        Command::Orthoscheme {
            alpha,
            beta,
            gamma,
            method,
        } => {
            let (a, b, g) = (
                alpha.radians(ctx.degrees),
                beta.radians(ctx.degrees),
                gamma.radians(ctx.degrees),
            );
            let q = OrthoschemeAngles::new(a, b, g)?;
            let data = classify_orthoscheme(&q);
            let (volume, err) = match (method, data.curvature) {
                (_, Curvature::Euclidean) => (volume_orthoscheme_schlaefli(&q, ctx.tol)?, None),
                (OrthoMethod::Schlaefli, _) => (volume_orthoscheme_schlaefli(&q, ctx.tol)?, Some(ctx.tol)),
                (OrthoMethod::Delta, _) => {
                    let r = volume_via_delta_estimate(&q, ctx.tol)?;
                    (r.value, Some(r.err_estimate))
                }
                (OrthoMethod::Integral, _) => {
                    let r = volume_orthoscheme_integral_estimate(&q, ctx.tol)?;
                    (r.value, Some(r.err_estimate))
                }
            };
            let edges = orthoscheme_edges(&data, &q).ok();
            let mut rec = Record::new();
            rec.push("curvature", data.curvature.as_str())
                .push("alpha", ctx.ang(a))
                .push("beta", ctx.ang(b))
                .push("gamma", ctx.ang(g))
                .push("D", data.d)
                .push("X", data.x)
                .push("T", data.t)
                .push("theta", data.theta.map(|x| ctx.ang(x)))
                .push("a", edges.map(|e| ctx.ang(e.a)))
                .push("b", edges.map(|e| ctx.ang(e.b)))
                .push("c", edges.map(|e| ctx.ang(e.c)))
                .push("volume", volume)
                .push("err_estimate", err);
            ctx.emit(rec, start)
        }
        Command::Delta { alpha, theta, kind } => {
            let (a, t) = (alpha.radians(ctx.degrees), theta.radians(ctx.degrees));
            let (value, err) = match kind {
                DeltaKind::Direct => split(delta_s_tol(a, t, ctx.tol)?),
                DeltaKind::Extended => split(delta_s_extended_tol(a, t, ctx.tol)?),
                DeltaKind::Reduced => split(delta_s_reduced_tol(a, t, ctx.tol)?),
                DeltaKind::Cap => {
                    if !a.is_finite() || !t.is_finite() {
                        return Err(Failure::Usage("Delta needs finite arguments".into()));
                    }
                    (delta_cap_tol(a, t, ctx.tol.min(1e-15)), None)
                }
            };
            let mut rec = Record::new();
            rec.push("alpha", ctx.ang(a))
                .push("theta", ctx.ang(t))
                .push("kind", kind_name(kind))
                .push("delta", value)
                .push("err_estimate", err);
            ctx.emit(rec, start)
        }
        Command::Lobachevsky { x } => {
            let x = x.radians(ctx.degrees);
            let mut rec = Record::new();
            rec.push("x", ctx.ang(x)).push("lambda", lobachevsky_tol(x, ctx.tol.min(1e-18)));
            ctx.emit(rec, start)
        }
        Command::Sweep {
            alpha,
            beta,
            gamma,
            method,
        } => sweep(ctx, [alpha, beta, gamma], method),
        Command::Selfcheck { seed } => selfcheck(ctx, seed),
    }
}

fn split(r: noneuclid::QuadResult) -> (f64, Option<f64>) {
    (r.value, Some(r.err_estimate))
}

fn kind_name(k: DeltaKind) -> &'static str {
    match k {
        DeltaKind::Direct => "direct",
        DeltaKind::Extended => "extended",
        DeltaKind::Reduced => "reduced",
        DeltaKind::Cap => "cap",
    }
}

fn cube_angles(ctx: &Ctx, cube: &CubeArgs) -> Result<CubeAngles, Failure> {
    let q = classify(
        cube.alpha.radians(ctx.degrees),
        cube.beta.radians(ctx.degrees),
        cube.gamma.radians(ctx.degrees),
    )?;
    let wanted = cube.geometry.map(|g| match g {
        GeometryArg::Spherical => Geometry::Spherical,
        GeometryArg::Hyperbolic => Geometry::Hyperbolic,
    });
    match wanted {
        Some(g) if g != q.geometry() => Err(Failure::Usage(format!(
            "angles ({}, {}, {}) describe a {} cube, not a {g} one",
            q.alpha(),
            q.beta(),
            q.gamma(),
            q.geometry()
        ))),
        _ => Ok(q),
    }
}

fn cube_header(ctx: &Ctx, q: &CubeAngles) -> Record {
    let mut rec = Record::new();
    rec.push("geometry", q.geometry().as_str())
        .push("alpha", ctx.ang(q.alpha()))
        .push("beta", ctx.ang(q.beta()))
        .push("gamma", ctx.ang(q.gamma()));
    rec
}

struct CubeVolume {
    pd: PrincipalData,
    volume: f64,
    err: f64,
}

fn cube_volume(q: &CubeAngles, method: CubeMethod, tol: f64) -> Result<CubeVolume, Failure> {
    let pd = principal(q)?;
    let (volume, err) = match (q.geometry(), method) {
        (Geometry::Spherical, CubeMethod::Delta) => split(volume_spherical_estimate(q, tol)?),
        (Geometry::Spherical, CubeMethod::Integral) => {
            split(volume_spherical_integral_with(q, tol, IntegralRoute::Substituted)?)
        }
        (Geometry::Spherical, CubeMethod::Ray) => split(volume_spherical_integral_with(q, tol, IntegralRoute::Ray)?),
        // truncation bound of the Λ expansions: ¼·6·(tol/6)
        (Geometry::Hyperbolic, CubeMethod::Delta) => (volume_hyperbolic(q, tol)?, Some(0.25 * tol.min(1e-12))),
        (Geometry::Hyperbolic, _) => {
            return Err(Failure::Usage(
                "hyperbolic cubes only support --method delta".into(),
            ))
        }
    };
    Ok(CubeVolume {
        pd,
        volume,
        err: err.expect("every route reports an estimate"),
    })
}

fn volume_record(ctx: &Ctx, q: &CubeAngles, v: Option<&CubeVolume>) -> Record {
    let mut rec = cube_header(ctx, q);
    rec.push("theta", v.map(|v| ctx.ang(v.pd.theta)))
        .push("T", v.map(|v| v.pd.t))
        .push("volume", v.map(|v| v.volume))
        .push("err_estimate", v.map(|v| v.err));
    rec
}

const SWEEP_CHUNK: usize = 512;
const SWEEP_MAX_POINTS: usize = 50_000_000;

/// Rows come out in grid order (alpha slowest, gamma fastest); points with
/// no cube or no volume keep their angles and leave the rest empty.
fn sweep(ctx: &Ctx, axes: [AngleRange; 3], method: CubeMethod) -> Result<ExitCode, Failure> {
    let [xs, ys, zs] = axes.map(|r| r.values(ctx.degrees));
    let total = xs.len().saturating_mul(ys.len()).saturating_mul(zs.len());
    if total > SWEEP_MAX_POINTS {
        return Err(Failure::Usage(format!(
            "sweep has {total} points; the limit is {SWEEP_MAX_POINTS}"
        )));
    }
    let point = |i: usize| {
        let (a, rest) = (i / (ys.len() * zs.len()), i % (ys.len() * zs.len()));
        (xs[a], ys[rest / zs.len()], zs[rest % zs.len()])
    };
    let mut table = Table::new(io::stdout().lock(), ctx.format);
    let mut skipped = 0usize;
    for lo in (0..total).step_by(SWEEP_CHUNK) {
        let hi = (lo + SWEEP_CHUNK).min(total);
        // collect() on an indexed parallel iterator keeps grid order
        let rows: Vec<(bool, Record)> = (lo..hi)
            .into_par_iter()
            .map(|i| {
                let (a, b, g) = point(i);
                let v = classify(a, b, g)
                    .ok()
                    .and_then(|q| cube_volume(&q, method, ctx.tol).ok());
                (v.is_none(), sweep_row(ctx, [a, b, g], v.as_ref()))
            })
            .collect();
        for (missing, r) in &rows {
            skipped += *missing as usize;
            table.row(r)?;
        }
    }
    table.flush()?;
    if skipped > 0 {
        eprintln!("noneuclid: {skipped} of {total} grid points have no volume; their fields are empty");
    }
    Ok(ExitCode::SUCCESS)
}

fn sweep_row(ctx: &Ctx, angles: [f64; 3], v: Option<&CubeVolume>) -> Record {
    let mut rec = Record::new();
    rec.push("alpha", ctx.ang(angles[0]))
        .push("beta", ctx.ang(angles[1]))
        .push("gamma", ctx.ang(angles[2]))
        .push("theta", v.map(|v| ctx.ang(v.pd.theta)))
        .push("T", v.map(|v| v.pd.t))
        .push("volume", v.map(|v| v.volume))
        .push("err_estimate", v.map(|v| v.err));
    rec
}

fn selfcheck(ctx: &Ctx, seed: u64) -> Result<ExitCode, Failure> {
    let tol = ctx.tol_given.then_some(ctx.tol);
    let results: Vec<(Check, noneuclid::Result<CheckReport>, f64)> = Check::ALL
        .par_iter()
        .map(|&c| {
            let start = Instant::now();
            let r = c.run(seed, tol);
            (c, r, start.elapsed().as_secs_f64())
        })
        .collect();
    let mut table = Table::aligned(io::stdout().lock(), ctx.format);
    let mut failed = 0;
    for (check, result, secs) in &results {
        let mut rec = Record::new();
        match result {
            Ok(r) => {
                rec.push("check", r.name.as_str())
                    .push("passed", r.passed)
                    .push("max_residual", r.max_residual)
                    .push("tolerance", r.tolerance)
                    .push("samples", r.sample_count as u64)
                    .push("failures", r.details.len() as u64);
                failed += !r.passed as usize;
            }
            Err(e) => {
                eprintln!("noneuclid: check {check:?} could not run: {e}");
                rec.push("check", format!("{check:?}").as_str())
                    .push("passed", false)
                    .push("max_residual", None)
                    .push("tolerance", None)
                    .push("samples", 0u64)
                    .push("failures", 0u64);
                failed += 1;
            }
        }
        if ctx.timing {
            rec.push("wall_time_s", *secs);
        }
        table.row(&rec)?;
    }
    table.flush()?;
    eprintln!("noneuclid: {} of {} checks passed", results.len() - failed, results.len());
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
