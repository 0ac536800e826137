//! Command-line front end. The binary is a thin wrapper around [`run`].

pub mod demo;
pub mod problem;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::crange::support::{GAP_TOL, UNIT_TOL};
use crate::crange::boundary::HULL_TOL;
use crate::crange::{boundary2d, range_scale, sample_directions, support_sweep, SupportProbe, WeightSpec};
use crate::decide::{
    decide_commuting, decide_polyhedral, decide_via_conical, AnalysisReport, CommuteMode,
    DecideOptions, SCOPE_NOTE,
};
use crate::error::Error;
use crate::linalg::ComplexMatrix;
use crate::structure::pinch::{PAIRING_TOL, PROJECTION_TOL, SNAP_TOL};
use crate::structure::{pinch_decompose, CONE_THRESHOLD};

pub use demo::{demo, DEMO_NAMES};
pub use problem::{NamedMatrix, Problem, ProblemFile};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("unknown demo '{name}'; valid names: {valid}")]
    UnknownDemo { name: String, valid: String },
    #[error("matrix '{name}' is not Hermitian (relative skew residual {residual:.3e})")]
    NotHermitian { name: String, residual: f64 },
    #[error("i/o error: {0}")]
    Io(String),
    #[error("{0}")]
    Compute(#[from] Error),
}

#[derive(Debug, Parser)]
#[command(
    name = "jointrange",
    version,
    about = "Joint C-numerical ranges: support functions, boundaries and structural decisions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// Problem file (JSON).
    #[arg(required_unless_present = "demo", conflicts_with = "demo")]
    file: Option<PathBuf>,
    /// Use a built-in demo problem instead of a file.
    #[arg(long)]
    demo: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Polyhedral,
    Commute,
    Conical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RouteArg {
    Algebraic,
    Geometric,
    Both,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Support values and maximizers over sampled directions.
    Support {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 720, value_parser = clap::value_parser!(u64).range(1..))]
        dirs: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Planar boundary samples and hull vertices (two real coordinates).
    Boundary {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 720, value_parser = clap::value_parser!(u64).range(1..))]
        dirs: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Polyhedrality, commutativity or conical-point decision.
    Decide {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long, default_value_t = 720, value_parser = clap::value_parser!(u64).range(1..))]
        dirs: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Relative tolerance.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Polyhedral mode: use the k-range weight. Commute mode: k of the
        /// geometric route (default n/2 rounded down).
        #[arg(long)]
        k: Option<usize>,
        /// Commute mode: which route(s) to run.
        #[arg(long, value_enum, default_value_t = RouteArg::Both)]
        route: RouteArg,
        /// Conical mode: acceptance threshold on the normalized smallest
        /// singular value of the supporting directions.
        #[arg(long, default_value_t = CONE_THRESHOLD)]
        conical_threshold: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a built-in problem file.
    Demo {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convex decomposition of a pinched projection.
    Pinch {
        #[command(flatten)]
        input: Input,
        /// Block sizes, comma separated; defaults to the file's "blocks".
        #[arg(long, value_delimiter = ',')]
        blocks: Option<Vec<usize>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    /// 0 definitive result, 1 error, 2 inconclusive.
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the command line `args` (program name first).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(cli.command) {
        Ok((code, text, out)) => match out {
            Some(path) => match write_atomic(&path, &text) {
                Ok(()) => Outcome {
                    code,
                    stdout: String::new(),
                    stderr: String::new(),
                },
                Err(e) => failure(e),
            },
            None => Outcome {
                code,
                stdout: text,
                stderr: String::new(),
            },
        },
        Err(e) => failure(e),
    }
}

fn failure(e: CliError) -> Outcome {
    Outcome {
        code: 1,
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    }
}

/// Writes through a sibling temporary file and a rename.
fn write_atomic(path: &Path, text: &str) -> Result<(), CliError> {
    let name = path
        .file_name()
        .ok_or_else(|| CliError::Usage(format!("--out {} is not a file path", path.display())))?;
    let mut tmp_name = OsString::from(".");
    tmp_name.push(name);
    tmp_name.push(format!(".tmp{}", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    std::fs::write(&tmp, text).map_err(|e| CliError::Io(format!("{}: {e}", tmp.display())))?;
    std::fs::rename(&tmp, path).map_err(|e| {
        let _ = std::fs::remove_file(&tmp);
        CliError::Io(format!("{}: {e}", path.display()))
    })
}

fn load(input: &Input) -> Result<Problem, CliError> {
    let file = match (&input.demo, &input.file) {
        (Some(name), _) => demo(name)?,
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            ProblemFile::parse(&text)?
        }
        (None, None) => return Err(CliError::Usage("no problem file given".into())),
    };
    file.validate()
}

type Executed = (i32, String, Option<PathBuf>);

fn execute(command: Command) -> Result<Executed, CliError> {
    match command {
        Command::Support {
            input,
            dirs,
            seed,
            format,
            out,
        } => Ok((0, cmd_support(&load(&input)?, dirs as usize, seed, format)?, out)),
        Command::Boundary {
            input,
            dirs,
            format,
            out,
        } => Ok((0, cmd_boundary(&load(&input)?, dirs as usize, format)?, out)),
        Command::Decide {
            input,
            mode,
            dirs,
            seed,
            tol,
            k,
            route,
            conical_threshold,
            out,
        } => {
            if !(tol > 0.0 && tol.is_finite()) {
                return Err(CliError::Usage("--tol must be positive".into()));
            }
            let opts = DecideOptions {
                n_dirs: dirs as usize,
                seed,
                tol,
                k,
                cone_threshold: conical_threshold,
            };
            let (code, text) = cmd_decide(&load(&input)?, mode, route, &opts)?;
            Ok((code, text, out))
        }
        Command::Demo { name, out } => Ok((0, demo(&name)?.to_json(), out)),
        Command::Pinch { input, blocks, out } => Ok((0, cmd_pinch(&load(&input)?, blocks)?, out)),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct Tolerances {
    unit_direction: f64,
    breakpoint_gap: f64,
}

#[derive(Serialize)]
struct SupportReport<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    seed: u64,
    n_dirs: usize,
    dimension: usize,
    coordinates: &'a [String],
    weight: &'a [f64],
    gamma: usize,
    scale: f64,
    tolerances: Tolerances,
    note: &'static str,
    probes: Vec<SupportProbe>,
}

fn cmd_support(p: &Problem, dirs: usize, seed: u64, format: Format) -> Result<String, CliError> {
    let weight = p.require_weight()?;
    let directions = sample_directions(p.view.len(), dirs, seed);
    let probes = support_sweep(&p.view, weight, &directions)?;
    let scale = range_scale(&p.view, weight);
    match format {
        Format::Json => Ok(to_json(&SupportReport {
            tool: "jointrange",
            version: VERSION,
            command: "support",
            seed,
            n_dirs: dirs,
            dimension: p.view.dim(),
            coordinates: &p.coordinates,
            weight: weight.values(),
            gamma: weight.gamma(),
            scale,
            tolerances: Tolerances {
                unit_direction: UNIT_TOL,
                breakpoint_gap: GAP_TOL,
            },
            note: SCOPE_NOTE,
            probes,
        })),
        Format::Csv => {
            let m = p.view.len();
            let mut s = String::new();
            let v: Vec<String> = (1..=m).map(|i| format!("v{i}")).collect();
            let pt: Vec<String> = (1..=m).map(|i| format!("p{i}")).collect();
            let _ = writeln!(s, "{},h,{},unique,min_gap", v.join(","), pt.join(","));
            for probe in &probes {
                let min_gap = probe
                    .gaps
                    .iter()
                    .map(|g| g.gap)
                    .fold(f64::INFINITY, f64::min);
                let _ = writeln!(
                    s,
                    "{},{:?},{},{},{:?}",
                    join(&probe.direction),
                    probe.value,
                    join(&probe.point),
                    probe.unique,
                    min_gap
                );
            }
            let _ = writeln!(
                s,
                "# jointrange {VERSION} support seed={seed} dirs={dirs} scale={scale} gap_tol={GAP_TOL:e} coordinates={}",
                p.coordinates.join(";")
            );
            Ok(s)
        }
    }
}

fn join(xs: &[f64]) -> String {
    xs.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(",")
}

#[derive(Serialize)]
struct BoundaryReport<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    n_dirs: usize,
    coordinates: &'a [String],
    weight: &'a [f64],
    scale: f64,
    hull_tol: f64,
    note: &'static str,
    thetas: Vec<f64>,
    probes: Vec<SupportProbe>,
    hull: Vec<[f64; 2]>,
}

fn planar_pair(p: &Problem) -> Result<(ComplexMatrix, ComplexMatrix, Vec<String>), CliError> {
    let mats = p.view.matrices();
    match mats.len() {
        1 => {
            let mut names = p.coordinates.clone();
            names.push("0".into());
            Ok((mats[0].clone(), ComplexMatrix::zeros(p.view.dim(), p.view.dim()), names))
        }
        2 => Ok((mats[0].clone(), mats[1].clone(), p.coordinates.clone())),
        found => Err(Error::WrongArity { expected: 2, found }.into()),
    }
}

fn cmd_boundary(p: &Problem, dirs: usize, format: Format) -> Result<String, CliError> {
    let weight: &WeightSpec = p.require_weight()?;
    let (x, y, names) = planar_pair(p)?;
    let b = boundary2d(&x, &y, weight, dirs)?;
    let hull = b.hull();
    match format {
        Format::Json => Ok(to_json(&BoundaryReport {
            tool: "jointrange",
            version: VERSION,
            command: "boundary",
            n_dirs: dirs,
            coordinates: &names,
            weight: weight.values(),
            scale: b.scale,
            hull_tol: HULL_TOL,
            note: SCOPE_NOTE,
            thetas: b.thetas.clone(),
            probes: b.probes.clone(),
            hull,
        })),
        Format::Csv => {
            let mut s = String::from("theta,vx,vy,h,px,py\n");
            for (t, probe) in b.thetas.iter().zip(&b.probes) {
                let _ = writeln!(
                    s,
                    "{t:?},{:?},{:?},{:?},{:?},{:?}",
                    probe.direction[0], probe.direction[1], probe.value, probe.point[0], probe.point[1]
                );
            }
            s.push_str("# hull vertices\nx,y\n");
            for v in &hull {
                let _ = writeln!(s, "{:?},{:?}", v[0], v[1]);
            }
            let _ = writeln!(
                s,
                "# jointrange {VERSION} boundary dirs={dirs} scale={} hull_tol={HULL_TOL:e} coordinates={}",
                b.scale,
                names.join(";")
            );
            Ok(s)
        }
    }
}

#[derive(Serialize)]
struct DecideReport<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    mode: &'static str,
    coordinates: &'a [String],
    report: AnalysisReport,
}

fn cmd_decide(
    p: &Problem,
    mode: Mode,
    route: RouteArg,
    opts: &DecideOptions,
) -> Result<(i32, String), CliError> {
    let (name, report) = match mode {
        Mode::Polyhedral => {
            let weight = match opts.k {
                Some(k) => WeightSpec::k_range(k, p.tuple.dim())?,
                None => p.require_weight()?.clone(),
            };
            ("polyhedral", decide_polyhedral(&p.tuple, &weight, opts)?)
        }
        Mode::Commute => {
            let mode = match route {
                RouteArg::Algebraic => CommuteMode::Algebraic,
                RouteArg::Geometric => CommuteMode::Geometric,
                RouteArg::Both => CommuteMode::Both,
            };
            ("commute", decide_commuting(p.tuple.matrices(), mode, opts)?)
        }
        Mode::Conical => {
            let weight = p.require_weight()?;
            ("conical", decide_via_conical(&p.tuple, weight, opts)?)
        }
    };
    let code = if report.verdict.is_definitive() { 0 } else { 2 };
    let text = to_json(&DecideReport {
        tool: "jointrange",
        version: VERSION,
        command: "decide",
        mode: name,
        coordinates: &p.coordinates,
        report,
    });
    Ok((code, text))
}

#[derive(Serialize)]
struct PinchTolerances {
    projection: f64,
    snap: f64,
    pairing: f64,
}

#[derive(Serialize)]
struct PinchReport {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    rank: usize,
    block_sizes: Vec<usize>,
    tolerances: PinchTolerances,
    weights: Vec<f64>,
    weight_sum: f64,
    reconstruction_residual: f64,
    projection_residual: f64,
    projections: Vec<ComplexMatrix>,
}

fn cmd_pinch(p: &Problem, blocks: Option<Vec<usize>>) -> Result<String, CliError> {
    if p.tuple.len() != 1 {
        return Err(CliError::Usage(format!(
            "pinch takes exactly one matrix, the file has {}",
            p.tuple.len()
        )));
    }
    let sizes = blocks
        .or_else(|| p.blocks.clone())
        .ok_or_else(|| CliError::Usage("block sizes needed (--blocks or \"blocks\")".into()))?;
    let dec = pinch_decompose(p.tuple.get(0), &sizes)?;
    Ok(to_json(&PinchReport {
        tool: "jointrange",
        version: VERSION,
        command: "pinch",
        rank: dec.rank,
        tolerances: PinchTolerances {
            projection: PROJECTION_TOL,
            snap: SNAP_TOL,
            pairing: PAIRING_TOL,
        },
        weight_sum: dec.weights.iter().sum(),
        reconstruction_residual: dec.reconstruction_residual(),
        projection_residual: dec.projection_residual(),
        block_sizes: dec.block_sizes,
        weights: dec.weights,
        projections: dec.projections,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("jointrange").chain(args.iter().copied()))
    }

    #[test]
    fn support_axis_directions_on_square() {
        let out = run_args(&["support", "--demo", "ex3.2", "--dirs", "4"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        let probes = v["probes"].as_array().unwrap();
        assert_eq!(probes.len(), 4);
        for p in probes {
            assert!((p["value"].as_f64().unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_dirs_is_a_usage_error() {
        let out = run_args(&["support", "--demo", "ex3.2", "--dirs", "0"]);
        assert_eq!(out.code, 1);
        assert!(out.stderr.contains("--dirs"));
    }

    #[test]
    fn boundary_of_triple_is_wrong_arity() {
        let out = run_args(&["boundary", "--demo", "ex5.2"]);
        assert_eq!(out.code, 1);
        assert!(out.stderr.contains("expected 2 real coordinates, found 3"), "{}", out.stderr);
    }

    #[test]
    fn help_exits_zero() {
        let out = run_args(&["--help"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("support"));
    }

    #[test]
    fn unknown_demo() {
        let out = run_args(&["demo", "nope"]);
        assert_eq!(out.code, 1);
        assert!(out.stderr.contains("valid names: ex3.1, ex3.2, ex5.2"));
    }
}
