use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use trilinea::io::{read_trace_csv, trace_residuals, write_trace_csv};
use trilinea::mechanism::{circumcircle_check, feasibility_with_tolerance, trace_extents, DEFAULT_TOLERANCE};
use trilinea::oracle::{oracle_sweep, MIN_SAMPLES};
use trilinea::rolling::{rolling_equivalence, RollingCircleModel};
use trilinea::solver::BEZOUT_BOUND;
use trilinea::{
    parse_scene, render_svg, solve_configurations, ConfigurationSet, Error, FormatError, Mechanism, MotionState, Scene,
    SceneClass, Side, SolveOptions, SvgOptions, TriangleSpec,
};

#[derive(Parser)]
#[command(name = "trilinea", version, about = "Rigid triangles sliding on three lines")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the triangle can move on the lines.
    Feasibility(Common),
    /// Sample the motion and write a trace (CSV) or drawing (SVG).
    Simulate {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Also draw the fixed and rolling circles (SVG only).
        #[arg(long)]
        rolling: bool,
    },
    /// Enumerate the static placements.
    Solve {
        #[command(flatten)]
        common: Common,
        /// Cross-check against a brute-force sweep.
        #[arg(long)]
        oracle: bool,
    },
    /// Draw the motion as SVG.
    Render {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        rolling: bool,
    },
    /// Check a sampled motion: residuals, ranges, concyclicity and the rolling-circle model.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Re-validate an existing trace file instead of sampling.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Common {
    /// Scene file (JSON).
    scene: PathBuf,
    /// Overrides `options.samples`.
    #[arg(long)]
    samples: Option<usize>,
    /// Triangle orientation, +1 or -1; overrides `options.side`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_side)]
    side: Option<Side>,
    /// Write the artifact here (atomically); the summary then goes to stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Relative tolerance for the feasibility and degeneracy decisions
    #[arg(long, env = "TRILINEA_TOLERANCE", default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,
    /// Accept a collinear triangle (placements only).
    #[arg(long)]
    allow_degenerate: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Svg,
}

fn parse_side(s: &str) -> Result<Side, String> {
    match s {
        "+1" | "1" | "+" => Ok(Side::Positive),
        "-1" | "-" => Ok(Side::Negative),
        _ => Err(format!("expected +1 or -1, got {s:?}")),
    }
}

/// Exit status; `printed` is set once a summary reached stdout.
struct Failure {
    code: u8,
    status: &'static str,
    message: String,
    printed: bool,
}

impl Failure {
    fn new(code: u8, status: &'static str, message: impl Into<String>) -> Self {
        Failure { code, status, message: message.into(), printed: false }
    }
    fn infeasible(message: impl Into<String>) -> Self {
        Self::new(1, "infeasible", message)
    }
    fn invalid(message: impl Into<String>) -> Self {
        Self::new(2, "invalid_input", message)
    }
    fn inconsistent(message: impl Into<String>) -> Self {
        Self::new(3, "internal_inconsistency", message)
    }
    fn after_summary(mut self) -> Self {
        self.printed = true;
        self
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InternalInconsistency(_) => Failure::inconsistent(e.to_string()),
            Error::NotFeasible(_) | Error::NoThirdVertex(_) | Error::EdgeTooShort { .. } => {
                Failure::infeasible(e.to_string())
            }
            _ => Failure::invalid(e.to_string()),
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::invalid(e.to_string())
    }
}

struct Loaded {
    scene: Scene,
    tri: TriangleSpec,
    samples: usize,
    side: Option<Side>,
}

fn load(c: &Common) -> Result<Loaded, Failure> {
    if !(c.tolerance.is_finite() && c.tolerance > 0.0) {
        return Err(Failure::invalid(format!("tolerance must be positive, got {}", c.tolerance)));
    }
    let file = parse_scene(&c.scene)?;
    let tri = file.triangle(c.allow_degenerate)?;
    if tri.is_degenerate() {
        eprintln!("warning: degenerate triangle accepted; only placements are meaningful");
    }
    let samples = c.samples.unwrap_or(file.options.samples);
    if samples < 2 {
        return Err(Failure::invalid(format!("samples: at least 2 required, got {samples}")));
    }
    let side = c.side.or(file.options.side);
    Ok(Loaded { scene: file.scene(), tri, samples, side })
}

/// Prints a line on stdout; a closed pipe is not an error worth a panic.
fn say(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn write_out(path: &Path, contents: &str) -> Result<(), Failure> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let io = |e: std::io::Error| Failure::invalid(format!("{}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

/// Artifact to `--out`, or to stdout when no path is given (the summary then
/// goes to stderr).
fn emit(out: &Option<PathBuf>, artifact: &str, summary: Value) -> Result<(), Failure> {
    match out {
        Some(p) => {
            write_out(p, artifact)?;
            say(&serde_json::to_string_pretty(&summary).expect("json"));
        }
        None => {
            let _ = std::io::stdout().lock().write_all(artifact.as_bytes());
            eprintln!("{}", serde_json::to_string_pretty(&summary).expect("json"));
        }
    }
    Ok(())
}

fn mechanism(l: &Loaded, tol: f64) -> Result<Mechanism, Failure> {
    Ok(Mechanism::with_tolerance(&l.scene, &l.tri, l.side, tol)?)
}

fn residual_maxima(l: &Loaded, states: &[MotionState]) -> (f64, f64) {
    states.iter().fold((0.0f64, 0.0f64), |(e, d), s| {
        let (edges, lines) = trace_residuals(&l.scene, &l.tri, &s.points);
        (e.max(edges.into_iter().fold(0.0, f64::max)), d.max(lines.into_iter().fold(0.0, f64::max)))
    })
}

fn cmd_feasibility(c: &Common) -> Result<(), Failure> {
    let l = load(c)?;
    let report = feasibility_with_tolerance(&l.scene, &l.tri, c.tolerance)?;
    let feasible = report.is_feasible();
    say(&serde_json::to_string_pretty(&json!({
        "command": "feasibility",
        "status": if feasible { "feasible" } else { "infeasible" },
        "report": report,
    }))
    .expect("json"));
    if feasible {
        Ok(())
    } else {
        Err(Failure::infeasible(report.reason.unwrap_or_default()).after_summary())
    }
}

fn cmd_simulate(c: &Common, format: Format, rolling: bool, command: &str) -> Result<(), Failure> {
    let l = load(c)?;
    if matches!(format, Format::Svg) && trilinea::classify_scene(&l.scene)?.class == SceneClass::Generic {
        return Err(Error::NotPlanarizable.into());
    }
    let mech = mechanism(&l, c.tolerance)?;
    let states = mech.trace(l.samples)?;
    let (edge, line) = residual_maxima(&l, &states);
    let artifact = match format {
        Format::Csv => write_trace_csv(&l.scene, &l.tri, &states),
        Format::Svg => render_svg(&mech, &states, SvgOptions { rolling, ..Default::default() })?,
    };
    let summary = json!({
        "command": command,
        "status": "ok",
        "verdict": mech.report().verdict,
        "samples": l.samples,
        "format": match format { Format::Csv => "csv", Format::Svg => "svg" },
        "side": mech.side(),
        "outer_radius": mech.outer_radius(),
        "max_edge_residual": edge,
        "max_line_residual": line,
        "out": c.out,
    });
    emit(&c.out, &artifact, summary)
}

fn cmd_solve(c: &Common, with_oracle: bool) -> Result<(), Failure> {
    let l = load(c)?;
    let opts = SolveOptions { tolerance: c.tolerance, ..Default::default() };
    let set = solve_configurations(&l.scene, &l.tri, &opts);
    // No placement at all is an answer, not an input error.
    let set = match set {
        Err(Error::EdgeTooShort { .. }) => ConfigurationSet::Finite(Vec::new()),
        other => other?,
    };
    let configs = match &set {
        ConfigurationSet::Continuum(mech) => {
            say(&format!("count=continuum (bound {BEZOUT_BOUND})"));
            let witness: Vec<_> = mech.trace(8)?.into_iter().map(|s| s.points).collect();
            let summary = json!({
                "command": "solve",
                "status": "continuum",
                "verdict": mech.report().verdict,
                "witness_states": witness,
            });
            say(&serde_json::to_string_pretty(&summary).expect("json"));
            if let Some(p) = &c.out {
                write_out(p, &serde_json::to_string_pretty(&summary).expect("json"))?;
            }
            return Ok(());
        }
        ConfigurationSet::Finite(v) => v,
    };
    let k = configs.len();
    say(&format!("count={k} (bound {BEZOUT_BOUND})"));
    let generic = !matches!(trilinea::classify_scene(&l.scene)?.class, SceneClass::AllParallel);
    if generic && k > BEZOUT_BOUND {
        return Err(Failure::inconsistent(format!("{k} placements exceed the bound {BEZOUT_BOUND}")));
    }
    let mut summary = json!({
        "command": "solve",
        "status": if k == 0 { "no_solution" } else { "ok" },
        "count": k,
        "bound": BEZOUT_BOUND,
        "within_bound": k <= BEZOUT_BOUND,
        "configurations": configs,
    });
    if with_oracle {
        let oracle = oracle_sweep(&l.scene, &l.tri, MIN_SAMPLES.max(l.samples))?;
        let scale = l.scene.scale().max(l.tri.scale());
        let matched = oracle.configs.len() == k
            && oracle
                .configs
                .iter()
                .all(|o| configs.iter().any(|s| (0..3).all(|i| s.points[i].distance(&o.points[i]) <= 1e-6 * scale)));
        summary["oracle"] = json!({ "count": oracle.configs.len(), "matches": matched });
        if !matched {
            say(&serde_json::to_string_pretty(&summary).expect("json"));
            return Err(Failure::inconsistent(format!(
                "solver found {k} placements, oracle found {}",
                oracle.configs.len()
            ))
            .after_summary());
        }
    }
    let text = serde_json::to_string_pretty(&summary).expect("json");
    say(&text);
    if let Some(p) = &c.out {
        write_out(p, &format!("{text}\n"))?;
    }
    if k == 0 {
        return Err(Failure::new(1, "no_solution", "no placement exists").after_summary());
    }
    Ok(())
}

fn check(name: &str, value: f64, limit: f64) -> Value {
    json!({ "name": name, "value": value, "limit": limit, "pass": value <= limit })
}

fn cmd_verify(c: &Common, trace: &Option<PathBuf>) -> Result<(), Failure> {
    let l = load(c)?;
    let mech = mechanism(&l, c.tolerance)?;
    let states = match trace {
        Some(path) => {
            let text =
                std::fs::read_to_string(path).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?;
            let rows = read_trace_csv(&text, &l.scene, &l.tri)?;
            rows.iter().map(|r| mech.state(r.theta)).collect::<Result<Vec<_>, _>>()?
        }
        None => mech.trace(l.samples)?,
    };
    let (edge, line) = residual_maxima(&l, &states);
    let scale = l.scene.scale().max(l.tri.scale());
    let mut checks =
        vec![check("edge_residual", edge, 1e-9 * l.tri.scale()), check("line_residual", line, 1e-10 * scale)];
    if let Some(r) = mech.outer_radius() {
        let ext = trace_extents(&mech, &states)?;
        let ranges = mech.ranges();
        let range_err = (0..3)
            .map(|i| {
                let (lo, hi) = ranges[i].bounds();
                (ext[i].0 - lo).abs().max((ext[i].1 - hi).abs())
            })
            .fold(0.0, f64::max);
        checks.push(check("range_endpoints", range_err, 1e-8 * r.max(1.0)));
        let circle = circumcircle_check(&l.scene, &states)?;
        checks.push(check("circumcircle", circle.max_dev, 1e-8 * circle.radius));
        let model = RollingCircleModel::for_mechanism(&mech)?;
        checks.push(check("rolling_equivalence", rolling_equivalence(&mech, &model)?, 1e-8 * r));
    }
    let pass = checks.iter().all(|c| c["pass"] == json!(true));
    let summary = json!({
        "command": "verify",
        "status": if pass { "ok" } else { "failed" },
        "verdict": mech.report().verdict,
        "samples": states.len(),
        "checks": checks,
    });
    say(&serde_json::to_string_pretty(&summary).expect("json"));
    if pass {
        Ok(())
    } else {
        Err(Failure::inconsistent("verification failed").after_summary())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Feasibility(c) => cmd_feasibility(c),
        Command::Simulate { common, format, rolling } => cmd_simulate(common, *format, *rolling, "simulate"),
        Command::Solve { common, oracle } => cmd_solve(common, *oracle),
        Command::Render { common, rolling } => cmd_simulate(common, Format::Svg, *rolling, "render"),
        Command::Verify { common, trace } => cmd_verify(common, trace),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.printed {
                let summary = json!({ "status": f.status, "message": f.message });
                say(&serde_json::to_string_pretty(&summary).expect("json"));
            }
            eprintln!("{}: {}", f.status, f.message);
            ExitCode::from(f.code)
        }
    }
}
