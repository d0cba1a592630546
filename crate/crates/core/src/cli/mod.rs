//! Command-line front end. Exit codes: 0 success, 1 failed verification, 2 any
//! other error.

pub mod input;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::closedform::{
    cauchy_shadow, cube_hyperplane_shadow, cube_planar_shadow, facet_data, simplex_hyperplane_shadow, simplex_width,
    BodyTag,
};
use crate::error::{Error, Result};
use crate::report::VerificationReport;
use crate::extremal::{
    fp_extrema_sphere, numeric_search, planar_cube_bounds, simplex_extremal_volumes, simplex_extremal_widths,
    Argument, Constraint, ExtremalResult, Extremum, Objective,
};
use crate::linalg::{normalize, project_zero_sum, sample_direction, Direction, Seed, UNIT_TOL};
use crate::lpbodies::{
    lp_cross_support_p, lp_cube_support_p, lp_simplex_support_p, rademacher_moment, support_from_power, LpOrder,
    MomentMode,
};
use crate::oracle::{hyperplane_shadow_basis, shadow_area_2d, shadow_volume, VPolytope};
use crate::sections::{cross_section_polygon, mahler_product, nazarov_bound};
use crate::verify::{run_suite, Suite, VerifyConfig};
use input::{parse_direction, parse_pair, parse_range, DirectionSpec};

pub const SEED_ENV: &str = "POLYSHADOW_SEED";

#[derive(Debug, Parser)]
#[command(name = "polyshadow", version, about = "Shadow volumes of the simplex, cube and cross-polytope")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write output here instead of stdout; for `verify`, the JSON report.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, env = SEED_ENV, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Shadow volume of a body on a hyperplane or a plane.
    Volume(VolumeArgs),
    /// Closed-form extrema, optionally rediscovered numerically.
    Extremal(ExtremalArgs),
    /// Support function of an L_p projection body, as its p-th power.
    Lp(LpArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Planar section of the cross-polytope.
    Section(SectionArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Body {
    Simplex,
    Cube,
    Cross,
}

#[derive(Debug, Args)]
pub struct VolumeArgs {
    pub body: Body,
    #[arg(long)]
    pub n: usize,
    /// Project onto a plane given by --pair instead of a hyperplane.
    #[arg(long)]
    pub planar: bool,
    #[arg(long, allow_hyphen_values = true)]
    pub direction: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub pair: Option<String>,
    /// Also compute the brute-force oracle value.
    #[arg(long)]
    pub oracle: bool,
    /// Mean-subtract a simplex direction that is not zero-sum.
    #[arg(long)]
    pub project_zero_sum: bool,
    /// Monte-Carlo samples for oracles of dimension three and up.
    #[arg(long, default_value_t = 200_000)]
    pub samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Problem {
    SimplexProj,
    SimplexWidth,
    CubePlanar,
    Fp,
}

#[derive(Debug, Args)]
pub struct ExtremalArgs {
    pub problem: Problem,
    /// Dimension (`n` of the simplex or cube; the sphere dimension for fp).
    #[arg(long, alias = "m", short = 'm')]
    pub n: usize,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub numeric: bool,
    #[arg(long, default_value_t = 200)]
    pub restarts: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Mc,
}

#[derive(Debug, Args)]
pub struct LpArgs {
    pub body: Body,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub p: f64,
    #[arg(long, allow_hyphen_values = true, default_value = "random")]
    pub direction: String,
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    pub mode: Mode,
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    #[arg(long)]
    pub project_zero_sum: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// simplex-hyperplane, cube-hyperplane, cube-planar, duality, mahler, nazarov,
    /// lp-reduction, width, extremal, fp or all.
    pub suite: Suite,
    /// Dimensions, `a..b` or a single value.
    #[arg(long, value_parser = |s: &str| parse_range(s).map_err(|e| e.to_string()))]
    pub n: Option<(usize, usize)>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub restarts: Option<usize>,
    /// Record the wall time in the report (which then differs between runs).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct SectionArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub pair: String,
    /// Write the section polygon as CSV (`s,t`, counterclockwise).
    #[arg(long)]
    pub emit: Option<PathBuf>,
}

/// Ordered key/value output of a command.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Output {
    pub rows: Vec<(String, Value)>,
}

impl Output {
    fn push(&mut self, key: &str, value: impl Into<Value>) {
        self.rows.push((key.to_string(), value.into()));
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.rows.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => {
                let width = self.rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                let mut s = String::new();
                for (k, v) in &self.rows {
                    let _ = writeln!(s, "{k:<width$}  {}", table_value(v));
                }
                s
            }
            Format::Json => {
                let map: serde_json::Map<String, Value> = self.rows.iter().cloned().collect();
                let mut s = serde_json::to_string_pretty(&Value::Object(map)).expect("finite values");
                s.push('\n');
                s
            }
            Format::Csv => {
                let header: Vec<String> = self.rows.iter().map(|(k, _)| csv_field(k)).collect();
                let values: Vec<String> = self.rows.iter().map(|(_, v)| csv_field(&csv_value(v))).collect();
                format!("{}\n{}\n", header.join(","), values.join(","))
            }
        }
    }
}

fn table_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => a.iter().map(table_value).collect::<Vec<_>>().join(", "),
        Value::Number(n) => match n.as_f64() {
            Some(f) if n.is_f64() => table_number(f),
            _ => n.to_string(),
        },
        other => other.to_string(),
    }
}

/// Shortest round-trip form, in scientific notation when far from unity.
fn table_number(x: f64) -> String {
    let a = x.abs();
    if a != 0.0 && !(1e-4..1e15).contains(&a) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

/// Floats with 17 significant digits.
pub fn csv_number(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => a.iter().map(csv_value).collect::<Vec<_>>().join(";"),
        Value::Number(n) if n.is_f64() => csv_number(n.as_f64().expect("f64")),
        other => other.to_string(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// A command's result: rendered output plus whether it counts as a verification failure.
struct Outcome {
    output: Output,
    failed: bool,
}

impl Outcome {
    fn code(&self) -> i32 {
        if self.failed {
            1
        } else {
            0
        }
    }
}

impl From<Output> for Outcome {
    fn from(output: Output) -> Outcome {
        Outcome { output, failed: false }
    }
}

/// Parses `args` (including the program name) and runs the command, returning the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok(o) => {
            let text = o.output.render(cli.format);
            let written = match (&cli.out, &cli.command) {
                (Some(path), c) if !matches!(c, Command::Verify(_)) => write_file(path, &text),
                _ => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return 2;
            }
            o.code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::File::create(path)
        .and_then(|mut f| f.write_all(text.as_bytes()))
        .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let seed = Seed(cli.seed);
    match &cli.command {
        Command::Volume(a) => cmd_volume(a, seed).map(Outcome::from),
        Command::Extremal(a) => cmd_extremal(a, seed).map(Outcome::from),
        Command::Lp(a) => cmd_lp(a, seed).map(Outcome::from),
        Command::Verify(a) => cmd_verify(a, seed, cli.out.as_deref()),
        Command::Section(a) => cmd_section(a, seed).map(Outcome::from),
    }
}

/// Resolves a direction literal, normalizing with a notice on stderr.
fn resolve_direction(spec: &str, m: usize, zero_sum: bool, project: bool, seed: Seed) -> Result<Direction> {
    let x = match parse_direction(spec, m)? {
        DirectionSpec::Random => return sample_direction(m, zero_sum, seed),
        DirectionSpec::Coords(x) => x,
    };
    let d = normalize(&x)?;
    if (crate::linalg::norm2(&x) - 1.0).abs() > UNIT_TOL {
        eprintln!("note: direction normalized to unit length");
    }
    if zero_sum && !d.is_zero_sum() {
        if !project {
            return Err(Error::NotZeroSum);
        }
        eprintln!("note: direction projected onto the zero-sum hyperplane");
        return project_zero_sum(&x);
    }
    Ok(d)
}

fn body_polytope(body: Body, n: usize) -> Result<VPolytope> {
    match body {
        Body::Simplex => VPolytope::simplex(n),
        Body::Cube => VPolytope::cube(n),
        Body::Cross => VPolytope::cross(n),
    }
}

fn body_name(body: Body) -> &'static str {
    match body {
        Body::Simplex => "simplex",
        Body::Cube => "cube",
        Body::Cross => "cross",
    }
}

fn cmd_volume(a: &VolumeArgs, seed: Seed) -> Result<Output> {
    crate::closedform::check_min("dimension", 2, a.n)?;
    let mut out = Output::default();
    out.push("body", body_name(a.body));
    out.push("n", a.n);
    out.push("seed", seed.0);
    // the simplex lives in R^{n+1}
    let ambient = if a.body == Body::Simplex { a.n + 1 } else { a.n };
    if a.planar {
        let spec = a.pair.as_deref().ok_or_else(|| Error::InvalidArgument("--planar needs --pair".into()))?;
        let pair = parse_pair(spec, ambient, seed)?;
        out.push("kind", "planar");
        out.push("u", pair.u().to_vec());
        out.push("v", pair.v().to_vec());
        let body = body_polytope(a.body, a.n)?;
        if a.body == Body::Cube {
            let formula = cube_planar_shadow(&pair);
            out.push("volume", formula);
            if a.oracle {
                let oracle = shadow_area_2d(&body, &pair)?;
                out.push("oracle", oracle);
                out.push("difference", formula - oracle);
            }
        } else {
            // no closed form for planar shadows of the simplex or cross-polytope
            out.push("oracle", shadow_area_2d(&body, &pair)?);
        }
        return Ok(out);
    }
    let spec = a
        .direction
        .as_deref()
        .ok_or_else(|| Error::InvalidArgument("hyperplane volume needs --direction".into()))?;
    let zero_sum = a.body == Body::Simplex;
    let dir = resolve_direction(spec, ambient, zero_sum, a.project_zero_sum, seed)?;
    let formula = match a.body {
        Body::Simplex => simplex_hyperplane_shadow(&dir)?,
        Body::Cube => cube_hyperplane_shadow(&dir),
        Body::Cross => cauchy_shadow(&facet_data(BodyTag::Cross, a.n)?, &dir)?,
    };
    out.push("kind", "hyperplane");
    out.push("direction", dir.coords().to_vec());
    out.push("volume", formula);
    if a.oracle {
        let body = body_polytope(a.body, a.n)?;
        let basis = hyperplane_shadow_basis(dir.coords(), zero_sum)?;
        let oracle = shadow_volume(&body, &basis, a.samples, seed)?;
        out.push("oracle", oracle.value);
        out.push("difference", formula - oracle.value);
        if !oracle.exact {
            out.push("oracle_stderr", oracle.stderr);
            out.push("samples", a.samples);
        }
    }
    Ok(out)
}

fn push_result(out: &mut Output, prefix: &str, r: &ExtremalResult) {
    out.push(prefix, r.value);
    match &r.argument {
        Argument::Direction(d) => out.push(&format!("{prefix}_argument"), d.coords().to_vec()),
        Argument::Pair(p) => {
            out.push(&format!("{prefix}_u"), p.u().to_vec());
            out.push(&format!("{prefix}_v"), p.v().to_vec());
        }
    }
    if let Some(note) = &r.note {
        if r.certified {
            out.push(&format!("{prefix}_note"), note.as_str());
        }
    }
}

fn cmd_extremal(a: &ExtremalArgs, seed: Seed) -> Result<Output> {
    let n = a.n;
    let mut out = Output::default();
    let name = match a.problem {
        Problem::SimplexProj => "simplex-proj",
        Problem::SimplexWidth => "simplex-width",
        Problem::CubePlanar => "cube-planar",
        Problem::Fp => "fp",
    };
    out.push("problem", name);
    out.push(if a.problem == Problem::Fp { "m" } else { "n" }, n);
    out.push("seed", seed.0);
    let (lo, hi) = match a.problem {
        Problem::SimplexProj => simplex_extremal_volumes(n)?,
        Problem::SimplexWidth => simplex_extremal_widths(n)?,
        Problem::CubePlanar => planar_cube_bounds(n)?,
        Problem::Fp => {
            let p = LpOrder::new(a.p.ok_or_else(|| Error::InvalidArgument("fp needs --p".into()))?)?;
            out.push("p", p.get());
            fp_extrema_sphere(n, p)?
        }
    };
    push_result(&mut out, "min", &lo);
    push_result(&mut out, "max", &hi);
    if !a.numeric {
        return Ok(out);
    }
    out.push("restarts", a.restarts);
    let search = |objective, m, constraint, kind, s: u64| numeric_search(objective, m, constraint, kind, a.restarts, seed.derive(s));
    let (nlo, nhi) = match a.problem {
        Problem::SimplexProj => (
            search(Objective::SimplexShadow, n + 1, Constraint::ZeroSumUnitSphere, Extremum::Min, 0)?,
            search(Objective::SimplexShadow, n + 1, Constraint::ZeroSumUnitSphere, Extremum::Max, 1)?,
        ),
        Problem::SimplexWidth => {
            // the width extremizers are the ℓ1 extremizers with roles swapped
            let mut wlo = search(Objective::L1Norm, n + 1, Constraint::ZeroSumUnitSphere, Extremum::Max, 1)?;
            let mut whi = search(Objective::L1Norm, n + 1, Constraint::ZeroSumUnitSphere, Extremum::Min, 0)?;
            for (r, kind) in [(&mut wlo, Extremum::Min), (&mut whi, Extremum::Max)] {
                r.value = simplex_width(r.argument.direction().expect("direction"))?;
                r.kind = kind;
            }
            (wlo, whi)
        }
        Problem::CubePlanar => (
            search(Objective::PlanarMinorSum, n, Constraint::OrthonormalPair, Extremum::Min, 0)?,
            search(Objective::PlanarMinorSum, n, Constraint::OrthonormalPair, Extremum::Max, 1)?,
        ),
        Problem::Fp => {
            let p = a.p.expect("checked above");
            (
                search(Objective::PowerSum(p), n, Constraint::UnitSphere, Extremum::Min, 0)?,
                search(Objective::PowerSum(p), n, Constraint::UnitSphere, Extremum::Max, 1)?,
            )
        }
    };
    push_result(&mut out, "numeric_min", &nlo);
    push_result(&mut out, "numeric_max", &nhi);
    out.push("gap_min", nlo.value - lo.value);
    out.push("gap_max", hi.value - nhi.value);
    Ok(out)
}

fn cmd_lp(a: &LpArgs, seed: Seed) -> Result<Output> {
    crate::closedform::check_min("dimension", 2, a.n)?;
    let p = LpOrder::new(a.p)?;
    let ambient = if a.body == Body::Simplex { a.n + 1 } else { a.n };
    let dir = resolve_direction(&a.direction, ambient, a.body == Body::Simplex, a.project_zero_sum, seed)?;
    let mode = match a.mode {
        Mode::Exact => MomentMode::Exact,
        Mode::Mc => MomentMode::MonteCarlo {
            samples: a.samples,
            seed,
        },
    };
    let mut out = Output::default();
    out.push("body", body_name(a.body));
    out.push("n", a.n);
    out.push("p", p.get());
    out.push("seed", seed.0);
    out.push("direction", dir.coords().to_vec());
    let hp = match a.body {
        Body::Cube => lp_cube_support_p(&dir, p),
        Body::Simplex => lp_simplex_support_p(&dir, p)?,
        Body::Cross => {
            let avg = rademacher_moment(&dir, p, mode)?;
            out.push("method", if avg.samples == 0 { "exact" } else { "mc" });
            if avg.samples > 0 {
                out.push("samples", avg.samples);
                out.push("moment_stderr", avg.stderr);
            }
            out.push("moment", avg.value);
            lp_cross_support_p(&dir, p, mode)?
        }
    };
    out.push("h_p", hp);
    out.push("h", support_from_power(hp, p));
    Ok(out)
}

fn cmd_verify(a: &VerifyArgs, seed: Seed, out_path: Option<&Path>) -> Result<Outcome> {
    let cfg = VerifyConfig {
        n: a.n,
        trials: a.trials,
        samples: a.samples,
        restarts: a.restarts,
        seed,
    };
    let start = Instant::now();
    let mut report = run_suite(a.suite, &cfg)?;
    if a.timing {
        report.wall_time_s = start.elapsed().as_secs_f64();
    }
    if let Some(path) = out_path {
        write_file(path, &format!("{}\n", report.to_json()))?;
    }
    Ok(verify_outcome(&report, a.timing))
}

fn verify_outcome(report: &VerificationReport, timing: bool) -> Outcome {
    let mut out = Output::default();
    out.push("suite", report.suite.as_str());
    out.push("seed", report.seed.0);
    for s in &report.summary {
        let mut line = format!("{}/{} {}", s.passed, s.cases, if s.pass { "pass" } else { "FAIL" });
        if s.stat_cases > 0 {
            let _ = write!(line, " ({}/{} statistical)", s.stat_passed, s.stat_cases);
        }
        out.push(&s.suite, line);
    }
    out.push("result", if report.passed { "pass" } else { "FAIL" });
    if timing {
        out.push("wall_time_s", report.wall_time_s);
    }
    Outcome {
        output: out,
        failed: !report.passed,
    }
}

fn cmd_section(a: &SectionArgs, seed: Seed) -> Result<Output> {
    let pair = parse_pair(&a.pair, a.n, seed)?;
    let section = cross_section_polygon(&pair)?;
    let mut out = Output::default();
    out.push("n", a.n);
    out.push("seed", seed.0);
    out.push("u", pair.u().to_vec());
    out.push("v", pair.v().to_vec());
    out.push("area", section.area());
    out.push("vertices", section.vertex_count());
    out.push("mahler", mahler_product(&section.polygon)?);
    if a.n >= 3 {
        let bound = nazarov_bound(a.n)?;
        out.push("nazarov_bound", bound);
        out.push("nazarov_margin", section.area() - bound);
    }
    if let Some(path) = &a.emit {
        let mut csv = String::from("s,t\n");
        for v in &section.polygon.vertices {
            let _ = writeln!(csv, "{},{}", csv_number(v[0]), csv_number(v[1]));
        }
        write_file(path, &csv)?;
    }
    Ok(out)
}
