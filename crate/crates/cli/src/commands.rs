use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use optrig::granular::{self, StressTensor2};
use optrig::pythagorean::{self, PythTriple, TripleParams};
use optrig::sharpe::{self, InputFormat, SigmaConvention};
use optrig::trig::{trig_report, TrigOptions, TrigReport, VariationalOptions};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::json::{to_json_string, ReportEnvelope};
use crate::matrix_file::parse_matrix_file;
use crate::{svg, CliError};

#[derive(Debug, Parser)]
#[command(name = "optrig", version, about = "Operator trigonometry of SPD matrices and its applications")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Antieigenvalue report for a matrix file.
    Trig(TrigArgs),
    /// Angle of repose of a 2x2 stress tensor.
    #[command(allow_negative_numbers = true)]
    Granular { sxx: f64, sxz: f64, szz: f64 },
    /// Linear-in-depth slope stress field and its equilibrium residual.
    GranularField(FieldArgs),
    /// Sharpe ratios and GM/AM ratios of a return series.
    Finance(FinanceArgs),
    /// One triple from Euclid parameters, or all primitive triples up to `--max-c`.
    #[command(allow_negative_numbers = true)]
    Triples(TriplesArgs),
    /// SVG of the primitive triples' points on the unit circle.
    PlotCircle {
        #[arg(long)]
        max_c: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// SVG of the turning angle of diag(1, k) against k.
    PlotAngle {
        #[arg(long)]
        lmin: f64,
        #[arg(long)]
        lmax: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
struct TrigArgs {
    #[arg(required_unless_present = "batch", conflicts_with = "batch")]
    file: Option<PathBuf>,
    /// File listing one matrix file per line.
    #[arg(long)]
    batch: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 8)]
    restarts: usize,
}

#[derive(Debug, Args)]
struct FieldArgs {
    /// Slope angle in degrees.
    #[arg(long, allow_negative_numbers = true)]
    theta: f64,
    #[arg(long)]
    rho: f64,
    #[arg(long)]
    g: f64,
    /// Lateral stress ratio.
    #[arg(long = "K")]
    k: f64,
    #[arg(long)]
    depth: f64,
    #[arg(long)]
    nx: usize,
    #[arg(long)]
    nz: usize,
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Sigma {
    Sample,
    Population,
}

impl From<Sigma> for SigmaConvention {
    fn from(s: Sigma) -> Self {
        match s {
            Sigma::Sample => SigmaConvention::Sample,
            Sigma::Population => SigmaConvention::Population,
        }
    }
}

#[derive(Debug, Args)]
struct FinanceArgs {
    file: PathBuf,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    rf: f64,
    #[arg(long, value_enum, default_value_t = Sigma::Population)]
    sigma: Sigma,
}

#[derive(Debug, Args)]
struct TriplesArgs {
    #[arg(requires = "n", required_unless_present = "max_c")]
    m: Option<i64>,
    n: Option<i64>,
    #[arg(long, conflicts_with_all = ["m", "n"])]
    max_c: Option<u64>,
    #[arg(long, requires = "max_c")]
    csv: Option<PathBuf>,
}

/// Outcome of one subcommand: the JSON text and the exit code.
struct Outcome {
    json: String,
    code: i32,
}

/// Parses `args` (including the program name) and runs one subcommand.
///
/// The JSON report goes to `stdout`, diagnostics to `stderr`. Returns the
/// process exit code: 0 on success, 2 for input errors, 3 for numerical
/// failures.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                crate::error::EXIT_INPUT
            } else {
                let _ = write!(stdout, "{text}");
                0
            };
        }
    };
    match dispatch(cli.command, stderr) {
        Ok(out) => {
            let _ = write!(stdout, "{}", out.json);
            out.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "{e}");
            e.exit_code()
        }
    }
}

fn emit<T: Serialize>(env: &ReportEnvelope<T>, stderr: &mut dyn Write) -> Result<Outcome, CliError> {
    for w in &env.warnings {
        let _ = writeln!(stderr, "warning: {w}");
    }
    let json = to_json_string(env).map_err(|e| CliError::Numerical(format!("serializing report: {e}")))?;
    Ok(Outcome { json, code: 0 })
}

fn dispatch(cmd: Command, stderr: &mut dyn Write) -> Result<Outcome, CliError> {
    match cmd {
        Command::Trig(args) => match args.batch {
            Some(list) => trig_batch(&list, args.seed, args.restarts, stderr),
            None => {
                let path = args.file.expect("clap requires a file without --batch");
                trig_single(&path, args.seed, args.restarts, stderr)
            }
        },
        Command::Granular { sxx, sxz, szz } => granular_cmd(sxx, sxz, szz, stderr),
        Command::GranularField(args) => granular_field(&args, stderr),
        Command::Finance(args) => finance(&args, stderr),
        Command::Triples(args) => match (args.max_c, args.m, args.n) {
            (Some(c), _, _) => triples_list(c, args.csv.as_deref(), stderr),
            (None, Some(m), Some(n)) => triples_one(m, n, stderr),
            _ => Err(CliError::input("give <m> <n> or --max-c")),
        },
        Command::PlotCircle { max_c, out } => plot_circle(max_c, &out, stderr),
        Command::PlotAngle { lmin, lmax, steps, out } => plot_angle(lmin, lmax, steps, &out, stderr),
    }
}

fn trig_options(seed: u64, restarts: usize) -> Result<TrigOptions, CliError> {
    if restarts == 0 {
        return Err(CliError::input("--restarts must be at least 1"));
    }
    Ok(TrigOptions {
        variational: VariationalOptions {
            seed,
            restarts,
            ..VariationalOptions::default()
        },
        ..TrigOptions::default()
    })
}

fn trig_one(path: &Path, opts: &TrigOptions) -> Result<(serde_json::Value, TrigReport), CliError> {
    let a = parse_matrix_file(path)?;
    let report = trig_report(&a, opts)?;
    Ok((json!({ "path": path.display().to_string(), "matrix": a.rows() }), report))
}

fn trig_single(path: &Path, seed: u64, restarts: usize, stderr: &mut dyn Write) -> Result<Outcome, CliError> {
    let opts = trig_options(seed, restarts)?;
    let (mut inputs, report) = trig_one(path, &opts)?;
    inputs["seed"] = json!(seed);
    inputs["restarts"] = json!(restarts);
    let mut env = ReportEnvelope::new("trig", inputs, &report);
    if !report.consistent {
        env.warnings.push("closed-form, variational and convex results disagree beyond tolerance".into());
    }
    emit(&env, stderr)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchEntry {
    pub path: String,
    pub report: Option<TrigReport>,
    pub error: Option<String>,
}

fn trig_batch(list: &Path, seed: u64, restarts: usize, stderr: &mut dyn Write) -> Result<Outcome, CliError> {
    let opts = trig_options(seed, restarts)?;
    let text = std::fs::read_to_string(list).map_err(|e| CliError::input(format!("{}: {e}", list.display())))?;
    let base = list.parent().unwrap_or(Path::new(""));
    let paths: Vec<PathBuf> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| base.join(l))
        .collect();
    if paths.is_empty() {
        return Err(CliError::input(format!("{}: no matrix files listed", list.display())));
    }
    let results = optrig::par::map(&paths, |p| trig_one(p, &opts));

    let mut code = 0;
    let mut warnings = Vec::new();
    let entries: Vec<BatchEntry> = paths
        .iter()
        .zip(results)
        .map(|(p, r)| {
            let path = p.display().to_string();
            match r {
                Ok((_, report)) => {
                    if !report.consistent {
                        warnings.push(format!("{path}: cross-checks disagree beyond tolerance"));
                    }
                    BatchEntry { path, report: Some(report), error: None }
                }
                Err(e) => {
                    code = code.max(e.exit_code());
                    let _ = writeln!(stderr, "{path}: {e}");
                    BatchEntry { path, report: None, error: Some(e.to_string()) }
                }
            }
        })
        .collect();
    let inputs = json!({ "batch": list.display().to_string(), "seed": seed, "restarts": restarts });
    let mut env = ReportEnvelope::new("trig", inputs, entries);
    env.warnings = warnings;
    let mut out = emit(&env, stderr)?;
    out.code = code;
    Ok(out)
}

fn granular_cmd(sxx: f64, sxz: f64, szz: f64, stderr: &mut dyn Write) -> Result<Outcome, CliError> {
    let s = StressTensor2::new(sxx, sxz, szz);
    let report = granular::repose_report(&s)?;
    let inputs = json!({ "sigma_xx": sxx, "sigma_xz": sxz, "sigma_zz": szz });
    emit(&ReportEnvelope::new("granular", inputs, report), stderr)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldSummary {
    pub nodes: usize,
    pub interior_nodes: usize,
    pub dx: f64,
    pub dz: f64,
    pub max_residual: f64,
    pub rms_residual: f64,
    /// Largest residual relative to ρg.
    pub relative_residual: f64,
    /// Repose analysis at the deepest node of the middle column.
    pub bottom_repose: granular::ReposeReport,
    pub csv: Option<String>,
}

fn granular_field(args: &FieldArgs, stderr: &mut dyn Write) -> Result<Outcome, CliError> {
    let params = granular::FieldParams {
        theta_slope: args.theta.to_radians(),
        rho: args.rho,
        g: args.g,
        k: args.k,
        depth: args.depth,
        nx: args.nx,
        nz: args.nz,
    };
    let f = granular::linear_depth_field(&params)?;
    let res = granular::equilibrium_residual(&f)?;
    let bottom = granular::repose_report(f.at(f.nx / 2, f.nz - 1))?;

    if let Some(path) = &args.csv {
        let mut csv = String::from("i,j,x,z,sigma_xx,sigma_xz,sigma_zz,r1,r2\n");
        for j in 0..f.nz {
            for i in 0..f.nx {
                let t = f.at(i, j);
                let (r1, r2) = match res.at(i, j) {
                    Some([r1, r2]) => (format!("{r1:e}"), format!("{r2:e}")),
                    None => (String::new(), String::new()),
                };
                let _ = writeln!(
                    csv,
                    "{i},{j},{:e},{:e},{:e},{:e},{:e},{r1},{r2}",
                    f.x(i),
                    f.z(j),
                    t.sigma_xx,
                    t.sigma_xz,
                    t.sigma_zz
                );
            }
        }
        svg::write_file(path, &csv)?;
    }

    let interior = res.residuals.iter().filter(|r| r.is_some()).count();
    let summary = FieldSummary {
        nodes: f.nx * f.nz,
        interior_nodes: interior,
        dx: f.dx,
        dz: f.dz,
        max_residual: res.max_norm,
        rms_residual: res.rms,
        relative_residual: res.max_norm / (args.rho * args.g),
        bottom_repose: bottom,
        csv: args.csv.as_ref().map(|p| p.display().to_string()),
    };
    let inputs = json!({
        "theta_degrees": args.theta,
        "rho": args.rho,
        "g": args.g,
        "K": args.k,
        "depth": args.depth,
        "nx": args.nx,
        "nz": args.nz,
    });
    let mut env = ReportEnvelope::new("granular-field", inputs, summary);
    if interior == 0 {
        env.warnings.push("grid has no interior nodes; residual not evaluated".into());
    }
    emit(&env, stderr)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FinanceReport {
    pub periods: usize,
    pub labels: Vec<String>,
    pub returns: Vec<f64>,
    pub sharpe: f64,
    /// Two-period analysis of the last two returns.
    pub last_two: Option<sharpe::SharpeReport>,
    pub rolling: Vec<sharpe::RollingEntry>,
}

fn finance(args: &FinanceArgs, stderr: &mut dyn Write) -> Result<Outcome, CliError> {
    let file = std::fs::File::open(&args.file)
        .map_err(|e| CliError::input(format!("{}: {e}", args.file.display())))?;
    let series = sharpe::ingest_returns(file, InputFormat::Auto)?;
    let convention = SigmaConvention::from(args.sigma);
    let s = sharpe::sharpe(&series, args.rf, convention)?;
    let rolling = sharpe::rolling_gm_am(&series, args.rf)?;
    let n = series.len();

    let mut warnings = Vec::new();
    let last_two = match sharpe::two_period_report(series.returns[n - 2], series.returns[n - 1], args.rf, convention) {
        Ok(r) => Some(r),
        Err(e) => {
            warnings.push(format!("two-period report for the last two returns: {e}"));
            None
        }
    };
    let skipped = rolling.iter().filter(|r| r.skipped).count();
    if skipped > 0 {
        warnings.push(format!("{skipped} rolling pair(s) skipped: non-positive net return"));
    }
    let sigma = match args.sigma {
        Sigma::Sample => "sample",
        Sigma::Population => "population",
    };
    let inputs = json!({ "path": args.file.display().to_string(), "rf": args.rf, "sigma": sigma });
    let report = FinanceReport {
        periods: n,
        labels: series.labels,
        returns: series.returns,
        sharpe: s,
        last_two,
        rolling,
    };
    let mut env = ReportEnvelope::new("finance", inputs, report);
    env.warnings = warnings;
    emit(&env, stderr)
}

fn triples_one(m: i64, n: i64, stderr: &mut dyn Write) -> Result<Outcome, CliError> {
    let p = pythagorean::validate_params(m, n)?;
    let report = pythagorean::pyth_report(&p)?;
    emit(&ReportEnvelope::new("triples", json!({ "m": m, "n": n }), report), stderr)
}

/// One row of a triple listing; `a/c` and `b/c` are already in lowest terms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TripleRow {
    pub m: u64,
    pub n: u64,
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub cos_num: u64,
    pub cos_den: u64,
    pub sin_num: u64,
    pub sin_den: u64,
    pub phi_degrees: f64,
}

impl TripleRow {
    fn new(p: &TripleParams, t: &PythTriple) -> Self {
        TripleRow {
            m: p.m(),
            n: p.n(),
            a: t.a,
            b: t.b,
            c: t.c,
            cos_num: t.a,
            cos_den: t.c,
            sin_num: t.b,
            sin_den: t.c,
            phi_degrees: (t.b as f64).atan2(t.a as f64).to_degrees(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TripleList {
    pub count: usize,
    pub triples: Vec<TripleRow>,
    pub csv: Option<String>,
}

fn triples_list(max_c: u64, csv: Option<&Path>, stderr: &mut dyn Write) -> Result<Outcome, CliError> {
    let rows: Vec<TripleRow> = pythagorean::enumerate_primitive_triples(max_c)
        .iter()
        .map(|(p, t)| TripleRow::new(p, t))
        .collect();
    if let Some(path) = csv {
        let mut text = String::from("m,n,a,b,c,cos_num,cos_den,sin_num,sin_den\n");
        for r in &rows {
            let _ = writeln!(
                text,
                "{},{},{},{},{},{},{},{},{}",
                r.m, r.n, r.a, r.b, r.c, r.cos_num, r.cos_den, r.sin_num, r.sin_den
            );
        }
        svg::write_file(path, &text)?;
    }
    let mut env = ReportEnvelope::new(
        "triples",
        json!({ "max_c": max_c }),
        TripleList {
            count: rows.len(),
            triples: rows,
            csv: csv.map(|p| p.display().to_string()),
        },
    );
    if env.result.count == 0 {
        env.warnings.push(format!("no primitive triples with c <= {max_c}"));
    }
    emit(&env, stderr)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotReport {
    pub out: String,
    pub points: usize,
    pub bytes: usize,
}

fn plot_circle(max_c: u64, out: &Path, stderr: &mut dyn Write) -> Result<Outcome, CliError> {
    let triples: Vec<PythTriple> = pythagorean::enumerate_primitive_triples(max_c)
        .into_iter()
        .map(|(_, t)| t)
        .collect();
    let svg_text = svg::render_circle(&triples)?;
    svg::write_file(out, &svg_text)?;
    let report = PlotReport {
        out: out.display().to_string(),
        points: triples.len(),
        bytes: svg_text.len(),
    };
    let inputs = json!({ "max_c": max_c, "out": report.out });
    emit(&ReportEnvelope::new("plot-circle", inputs, report), stderr)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnglePoint {
    pub kappa: f64,
    pub phi_degrees: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnglePlotReport {
    pub out: String,
    pub bytes: usize,
    pub curve: Vec<AnglePoint>,
}

fn plot_angle(lmin: f64, lmax: f64, steps: usize, out: &Path, stderr: &mut dyn Write) -> Result<Outcome, CliError> {
    let curve = svg::angle_curve(lmin, lmax, steps)?;
    let svg_text = svg::render_angle(&curve);
    svg::write_file(out, &svg_text)?;
    let report = AnglePlotReport {
        out: out.display().to_string(),
        bytes: svg_text.len(),
        curve: curve
            .into_iter()
            .map(|(kappa, phi_degrees)| AnglePoint { kappa, phi_degrees })
            .collect(),
    };
    let inputs = json!({ "lmin": lmin, "lmax": lmax, "steps": steps, "out": report.out });
    emit(&ReportEnvelope::new("plot-angle", inputs, report), stderr)
}
