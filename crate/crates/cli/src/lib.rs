//! Command-line front end. Single-value queries print JSON to standard output;
//! tables go to CSV files (`--out`) or to standard output.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use su2frames::axisforms::ellipse_params;
use su2frames::dist::{axis_sweep, most_inconsistent_pair, random_study, spearman, Axis};
use su2frames::forms::{octa_forms, surface_residual};
use su2frames::groups::elements;
use su2frames::quat::{from_su2, to_su2_frame};
use su2frames::recover::{recover_groupset_with, RecoverOptions};
use su2frames::{Complex64, GroupKind, Quaternion, SU2Coord, SurfacePoint};
use su2frames_mesh::fem::{
    edge_r4_smoothness, normal_aligned_boundary, normal_aligned_forms, solve_collocation, solve_linear, solve_metric,
    FrameField, SolveOptions,
};
use su2frames_mesh::topo::{boundary_euler_relation, CellComplexCounts};
use su2frames_mesh::{load_mesh, TetMesh};

/// Exit status of a successful run.
pub const EXIT_OK: i32 = 0;
/// Exit status for malformed command lines.
pub const EXIT_USAGE: i32 = 1;
/// Exit status when the computation itself fails.
pub const EXIT_DOMAIN: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "su2frames",
    version,
    about = "Octahedral frames in SU(2) coordinates: invariant forms, recovery, distances, topology and frame-field solvers",
    after_help = "Complex numbers are flat re,im pairs. Single-value queries print JSON on standard output; \
                  tables are CSV written to --out (or standard output), or JSON arrays with --format json."
)]
pub struct Cli {
    /// Tolerance override (recovery filter, Newton gradient).
    #[arg(long, global = true, value_parser = parse_positive)]
    pub tol: Option<f64>,
    /// Seed for every random experiment.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Output format; tables default to CSV, single values to JSON.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

impl Cli {
    fn table_format(&self) -> Format {
        self.format.unwrap_or(Format::Csv)
    }

    fn value_format(&self) -> Format {
        self.format.unwrap_or(Format::Json)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Elements of a binary polyhedral group, one quaternion per row.
    Groups {
        #[arg(long, value_parser = parse_kind)]
        kind: GroupKind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Octahedral forms (h0, h1, h2) of a quaternion or an SU(2) pair.
    Forms(FormsArgs),
    /// Every (u, v) sharing the frame coordinate (h0, h1, h2).
    Recover {
        /// h0re,h0im,h1re,h1im,h2re,h2im
        #[arg(long, value_parser = parse_tuple::<6>, allow_hyphen_values = true)]
        h: [f64; 6],
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Distance experiments.
    #[command(subcommand)]
    Distance(DistanceCommand),
    /// Frames rotated about a fixed axis.
    #[command(subcommand)]
    Axis(AxisCommand),
    /// Euler characteristics of a tetrahedral mesh.
    Topo {
        #[arg(long)]
        mesh: PathBuf,
    },
    /// Frame field on a tetrahedral mesh with normal-aligned boundary frames.
    Solve(SolveArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct FormsArgs {
    /// q0,q1,q2,q3
    #[arg(long, value_parser = parse_tuple::<4>, allow_hyphen_values = true)]
    pub q: Option<[f64; 4]>,
    /// reU,imU,reV,imV
    #[arg(long, value_parser = parse_tuple::<4>, allow_hyphen_values = true)]
    pub uv: Option<[f64; 4]>,
}

#[derive(Debug, Subcommand)]
pub enum DistanceCommand {
    /// Rotations about one axis, alpha uniform on [0, pi/2]: columns alpha,d_c3,d_r4.
    Sweep {
        #[arg(long, value_parser = parse_axis)]
        axis: Axis,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(2..=10_000_000))]
        samples: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random frames against the identity: columns index,d_c3,d_r4,d_poly.
    Random {
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..=10_000_000))]
        n: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum AxisCommand {
    /// Loci of H0 and H1: columns alpha,h0re,h0im,h1re,h1im.
    Ellipse {
        #[arg(long, value_parser = parse_tuple::<3>, allow_hyphen_values = true)]
        n: [f64; 3],
        #[arg(long, default_value_t = 500, value_parser = clap::value_parser!(u64).range(1..=10_000_000))]
        samples: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scheme {
    Linear,
    Collocation,
    Metric,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub mesh: PathBuf,
    #[arg(long, value_enum, default_value_t = Scheme::Collocation)]
    pub scheme: Scheme,
    /// Per-vertex CSV.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Convergence trace CSV: iter,energy,grad_norm.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    #[arg(long, default_value_t = 200)]
    pub max_iter: usize,
    /// Outer metric updates of the metric scheme.
    #[arg(long, default_value_t = 20)]
    pub max_outer: usize,
    /// Replace the metric by the identity.
    #[arg(long)]
    pub identity_metric: bool,
}

/// Parses `N` comma-separated finite reals.
pub fn parse_tuple<const N: usize>(s: &str) -> Result<[f64; N], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != N {
        return Err(format!("expected {N} comma-separated numbers, got {}", parts.len()));
    }
    let mut out = [0.0; N];
    for (o, p) in out.iter_mut().zip(parts) {
        let v: f64 = p.parse().map_err(|_| format!("not a number: {p:?}"))?;
        if !v.is_finite() {
            return Err(format!("not finite: {p:?}"));
        }
        *o = v;
    }
    Ok(out)
}

pub fn parse_kind(s: &str) -> Result<GroupKind, String> {
    match s.to_ascii_lowercase().as_str() {
        "v" | "vierer" => Ok(GroupKind::Vierer),
        "t" | "tetrahedral" => Ok(GroupKind::BinaryTetrahedral),
        "o" | "octahedral" => Ok(GroupKind::BinaryOctahedral),
        _ => Err(format!("unknown group {s:?}, expected v, t or o")),
    }
}

pub fn parse_axis(s: &str) -> Result<Axis, String> {
    s.parse().map_err(|_| format!("unknown axis {s:?}, expected i, j or k"))
}

fn parse_positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("expected a positive number, got {s:?}")),
    }
}

/// Runs one command line (including the program name). Returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_DOMAIN
        }
    }
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn emit_json(out: &mut dyn Write, v: &Value) -> Result<()> {
    serde_json::to_writer(&mut *out, v)?;
    writeln!(out)?;
    Ok(())
}

/// Writes `rows` as CSV or a JSON array to `path`, or to `out` without one.
fn emit_table<R: Serialize>(format: Format, path: Option<&Path>, out: &mut dyn Write, rows: &[R]) -> Result<()> {
    let mut sink: Box<dyn Write + '_> = match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(&mut *out),
    };
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut sink);
            for r in rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        Format::Json => {
            serde_json::to_writer(&mut sink, rows)?;
            writeln!(sink)?;
        }
    }
    sink.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct QuatRow {
    q0: f64,
    q1: f64,
    q2: f64,
    q3: f64,
}

#[derive(Serialize)]
struct CandidateRow {
    ure: f64,
    uim: f64,
    vre: f64,
    vim: f64,
    q0: f64,
    q1: f64,
    q2: f64,
    q3: f64,
}

#[derive(Serialize)]
struct SweepRow {
    alpha: f64,
    d_c3: f64,
    d_r4: f64,
}

#[derive(Serialize)]
struct RandomRow {
    index: usize,
    d_c3: f64,
    d_r4: f64,
    d_poly: Option<f64>,
}

#[derive(Serialize)]
struct EllipseRow {
    alpha: f64,
    h0re: f64,
    h0im: f64,
    h1re: f64,
    h1im: f64,
}

#[derive(Serialize)]
struct VertexRow {
    id: usize,
    x: f64,
    y: f64,
    z: f64,
    alpha: Option<f64>,
    beta: Option<f64>,
    gamma: Option<f64>,
    q0: Option<f64>,
    q1: Option<f64>,
    q2: Option<f64>,
    q3: Option<f64>,
    h0re: f64,
    h0im: f64,
    h1re: f64,
    h1im: f64,
    h2re: f64,
    h2im: f64,
    residual: f64,
}

#[derive(Serialize)]
struct TraceCsvRow {
    iter: usize,
    energy: f64,
    grad_norm: f64,
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Groups { kind, out: path } => {
            let rows: Vec<_> = elements(*kind)
                .iter()
                .map(|q| QuatRow { q0: q.q0, q1: q.q1, q2: q.q2, q3: q.q3 })
                .collect();
            emit_table(cli.table_format(), path.as_deref(), out, &rows)
        }
        Command::Forms(args) => {
            let c = match (args.q, args.uv) {
                (Some(q), _) => to_su2_frame(Quaternion::from_array(q)),
                (_, Some(uv)) => SU2Coord::from_parts(uv[0], uv[1], uv[2], uv[3]),
                _ => bail!("one of --q or --uv is required"),
            };
            let p = octa_forms(c);
            let residual = surface_residual(&p);
            match cli.value_format() {
                Format::Json => emit_json(
                    out,
                    &json!({ "h0": pair(p.h0), "h1": pair(p.h1), "h2": pair(p.h2), "residual": residual }),
                ),
                Format::Csv => {
                    #[derive(Serialize)]
                    struct Row {
                        h0re: f64,
                        h0im: f64,
                        h1re: f64,
                        h1im: f64,
                        h2re: f64,
                        h2im: f64,
                        residual: f64,
                    }
                    let row = Row { h0re: p.h0.re, h0im: p.h0.im, h1re: p.h1.re, h1im: p.h1.im, h2re: p.h2.re, h2im: p.h2.im, residual };
                    emit_table(Format::Csv, None, out, &[row])
                }
            }
        }
        Command::Recover { h, out: path } => {
            let p = SurfacePoint::octa(Complex64::new(h[0], h[1]), Complex64::new(h[2], h[3]), Complex64::new(h[4], h[5]));
            let mut opts = RecoverOptions::default();
            if let Some(t) = cli.tol {
                opts.surface_tol = t;
                opts.filter_tol = t;
            }
            let set = recover_groupset_with(&p, &opts)?;
            let rows: Vec<_> = set
                .candidates
                .iter()
                .map(|c| {
                    let q = from_su2(*c);
                    CandidateRow { ure: c.u.re, uim: c.u.im, vre: c.v.re, vim: c.v.im, q0: q.q0, q1: q.q1, q2: q.q2, q3: q.q3 }
                })
                .collect();
            emit_table(cli.table_format(), path.as_deref(), out, &rows)?;
            if path.is_some() {
                emit_json(out, &json!({ "candidates": set.len(), "degenerate": set.degenerate, "raw": set.raw_count }))?;
            }
            Ok(())
        }
        Command::Distance(DistanceCommand::Sweep { axis, samples, out: path }) => {
            let records = axis_sweep(*axis, *samples as usize)?;
            let rows: Vec<_> = records
                .iter()
                .map(|r| SweepRow { alpha: r.alpha.unwrap_or(f64::NAN), d_c3: r.d_c3, d_r4: r.d_r4 })
                .collect();
            emit_table(cli.table_format(), path.as_deref(), out, &rows)
        }
        Command::Distance(DistanceCommand::Random { n, out: path }) => {
            let records = random_study(*n as usize, cli.seed)?;
            let rows: Vec<_> = records
                .iter()
                .map(|r| RandomRow { index: r.index, d_c3: r.d_c3, d_r4: r.d_r4, d_poly: r.d_poly })
                .collect();
            emit_table(cli.table_format(), path.as_deref(), out, &rows)?;
            if path.is_some() {
                let c3: Vec<f64> = records.iter().map(|r| r.d_c3).collect();
                let r4: Vec<f64> = records.iter().map(|r| r.d_r4).collect();
                let worst = most_inconsistent_pair(&records, 1e-3).map(|p| {
                    json!({ "first": p.first, "second": p.second, "ratio": p.ratio, "d_r4_gap": p.d_r4_gap })
                });
                emit_json(out, &json!({ "samples": records.len(), "seed": cli.seed, "spearman": spearman(&c3, &r4), "inconsistent_pair": worst }))?;
            }
            Ok(())
        }
        Command::Axis(AxisCommand::Ellipse { n, samples, out: path }) => {
            let e = ellipse_params(*n)?;
            let rows: Vec<_> = e
                .sample(*samples as usize)
                .into_iter()
                .map(|(alpha, h0, h1)| EllipseRow { alpha, h0re: h0.re, h0im: h0.im, h1re: h1.re, h1im: h1.im })
                .collect();
            emit_table(cli.table_format(), path.as_deref(), out, &rows)?;
            if path.is_some() {
                let (major, minor) = e.semi_axes();
                emit_json(
                    out,
                    &json!({ "p": e.p, "theta": e.theta, "center0": pair(e.center0), "center1": pair(e.center1), "semi_axes": [major, minor] }),
                )?;
            }
            Ok(())
        }
        Command::Topo { mesh } => {
            let m = load_mesh(mesh)?;
            let c = CellComplexCounts::from_tets(&m);
            let r = boundary_euler_relation(&m)?;
            emit_json(
                out,
                &json!({
                    "chi_volume": r.chi_volume,
                    "chi_boundary": r.chi_boundary,
                    "consistent": r.consistent,
                    "vertices": c.vertices,
                    "edges": c.edges,
                    "faces": c.faces,
                    "cells": c.cells,
                }),
            )
        }
        Command::Solve(args) => solve(cli, args, out),
    }
}

fn solve(cli: &Cli, args: &SolveArgs, out: &mut dyn Write) -> Result<()> {
    let mesh = load_mesh(&args.mesh)?;
    let mut opts = SolveOptions { max_outer: args.max_outer, identity_metric: args.identity_metric, ..Default::default() };
    opts.newton.max_iter = args.max_iter;
    if let Some(t) = cli.tol {
        opts.newton.grad_tol = t;
    }
    let field = match args.scheme {
        Scheme::Linear => solve_linear(&mesh, &normal_aligned_forms(&mesh))?,
        Scheme::Collocation => solve_collocation(&mesh, &normal_aligned_boundary(&mesh), &opts)?,
        Scheme::Metric => solve_metric(&mesh, &normal_aligned_boundary(&mesh), &opts)?.0,
    };
    if let Some(path) = &args.out {
        emit_table(cli.table_format(), Some(path), out, &vertex_rows(&mesh, &field))?;
    }
    if let Some(path) = &args.trace {
        let rows: Vec<_> = field
            .report
            .iter()
            .flat_map(|r| r.trace.iter())
            .map(|t| TraceCsvRow { iter: t.iter, energy: t.energy, grad_norm: t.grad_norm })
            .collect();
        if rows.is_empty() && cli.table_format() == Format::Csv {
            std::fs::write(path, "iter,energy,grad_norm\n").with_context(|| format!("writing {}", path.display()))?;
        } else {
            emit_table(cli.table_format(), Some(path), out, &rows)?;
        }
    }
    let max_residual = field.residuals.iter().copied().fold(0.0, f64::max);
    emit_json(
        out,
        &json!({
            "scheme": format!("{:?}", args.scheme).to_lowercase(),
            "vertices": mesh.vertices.len(),
            "dirichlet_energy": field.dirichlet_energy,
            "objective": field.objective,
            "max_residual": max_residual,
            "converged": field.report.as_ref().map(|r| r.converged),
            "iterations": field.report.as_ref().map(|r| r.iterations),
            "edge_r4_smoothness": edge_r4_smoothness(&mesh, &field),
        }),
    )
}

fn vertex_rows(mesh: &TetMesh, field: &FrameField) -> Vec<VertexRow> {
    let quats = field.quaternions();
    (0..mesh.vertices.len())
        .map(|j| {
            let [x, y, z] = mesh.vertices[j];
            let e = field.angles.as_ref().map(|a| a[j]);
            let q = quats.as_ref().map(|q| q[j]);
            let p = field.forms[j];
            VertexRow {
                id: j + 1,
                x,
                y,
                z,
                alpha: e.map(|e| e.alpha),
                beta: e.map(|e| e.beta),
                gamma: e.map(|e| e.gamma),
                q0: q.map(|q| q.q0),
                q1: q.map(|q| q.q1),
                q2: q.map(|q| q.q2),
                q3: q.map(|q| q.q3),
                h0re: p.h0.re,
                h0im: p.h0.im,
                h1re: p.h1.re,
                h1im: p.h1.im,
                h2re: p.h2.re,
                h2im: p.h2.im,
                residual: field.residuals[j],
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuples() {
        assert_eq!(parse_tuple::<3>("1, -2,3.5"), Ok([1.0, -2.0, 3.5]));
        assert!(parse_tuple::<3>("1,2").is_err());
        assert!(parse_tuple::<2>("1,nan").is_err());
        assert!(parse_tuple::<2>("1,x").is_err());
        assert!(parse_tuple::<1>("").is_err());
    }

    #[test]
    fn kinds_and_axes() {
        assert_eq!(parse_kind("O"), Ok(GroupKind::BinaryOctahedral));
        assert!(parse_kind("x").is_err());
        assert_eq!(parse_axis("k"), Ok(Axis::K));
        assert!(parse_axis("w").is_err());
    }
}
