use std::path::Path;
use std::process::{Command, Output};

use optrig::granular::ReposeReport;
use optrig::pythagorean::PythReport;
use optrig::trig::{TrigError, TrigReport};
use optrig_cli::error::{EXIT_INPUT, EXIT_NUMERICAL};
use optrig_cli::json::{to_json_string, ReportEnvelope};
use optrig_cli::{AnglePlotReport, BatchEntry, CliError, FieldSummary, FinanceReport, TripleList};
use serde::de::DeserializeOwned;
use serde::Serialize;

fn optrig(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_optrig"))
        .current_dir(dir)
        .args(args)
        .output()
        .unwrap()
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = optrig(dir, args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(dir: &Path, args: &[&str]) -> i32 {
    optrig(dir, args).status.code().unwrap()
}

/// Parses into the typed envelope and checks re-serialization is byte-identical.
fn round_trip<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(text: &str) -> ReportEnvelope<T> {
    let env: ReportEnvelope<T> = serde_json::from_str(text).unwrap();
    assert_eq!(to_json_string(&env).unwrap(), text);
    let again: ReportEnvelope<T> = serde_json::from_str(&to_json_string(&env).unwrap()).unwrap();
    assert_eq!(again, env);
    env
}

fn workdir() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("diag.txt"), "2\n1 0\n0 4\n").unwrap();
    std::fs::write(dir.path().join("eye.txt"), "# identity\n3\n1 0 0\n0 1 0\n0 0 1\n").unwrap();
    std::fs::write(dir.path().join("short.txt"), "2\n1 0\n").unwrap();
    std::fs::write(dir.path().join("indef.txt"), "2\n1 2\n2 1\n").unwrap();
    std::fs::write(dir.path().join("returns.csv"), "# year,return\n2023,0.18\n2024,0.02\n2025,0.08\n").unwrap();
    std::fs::write(dir.path().join("flat.txt"), "0.1\n0.1\n0.1\n").unwrap();
    dir
}

#[test]
fn trig_example() {
    let dir = workdir();
    let text = ok(dir.path(), &["trig", "diag.txt"]);
    let env: ReportEnvelope<TrigReport> = round_trip(&text);
    assert_eq!(env.subcommand, "trig");
    assert_eq!(env.tool_version, env!("CARGO_PKG_VERSION"));
    assert!((env.result.mu1 - 0.8).abs() < 1e-15);
    assert!((env.result.nu1 - 0.6).abs() < 1e-15);
    assert!((env.result.phi.degrees - 0.8f64.acos().to_degrees()).abs() < 1e-12);
    assert!(env.result.consistent);
    assert!(env.warnings.is_empty());
    assert!(text.contains("\"mu1\": 8.0000000000000004e-1"));
}

#[test]
fn trig_degenerate_and_seeded() {
    let dir = workdir();
    let env: ReportEnvelope<TrigReport> = round_trip(&ok(dir.path(), &["trig", "eye.txt"]));
    assert!(env.result.is_degenerate());
    assert_eq!((env.result.mu1, env.result.nu1), (1.0, 0.0));

    let a = ok(dir.path(), &["trig", "diag.txt", "--seed", "7", "--restarts", "3"]);
    assert_eq!(a, ok(dir.path(), &["trig", "diag.txt", "--seed", "7", "--restarts", "3"]));
    assert!(a.contains("\"seed\": 7"));
}

#[test]
fn trig_batch_reports_each_file() {
    let dir = workdir();
    std::fs::write(dir.path().join("list"), "diag.txt\n# skipped\neye.txt\n").unwrap();
    let env: ReportEnvelope<Vec<BatchEntry>> = round_trip(&ok(dir.path(), &["trig", "--batch", "list"]));
    assert_eq!(env.result.len(), 2);
    assert!((env.result[0].report.as_ref().unwrap().mu1 - 0.8).abs() < 1e-15);
    assert!(env.result[1].report.as_ref().unwrap().is_degenerate());

    std::fs::write(dir.path().join("mixed"), "diag.txt\nindef.txt\n").unwrap();
    let out = optrig(dir.path(), &["trig", "--batch", "mixed"]);
    assert_eq!(out.status.code(), Some(EXIT_INPUT));
    let env: ReportEnvelope<Vec<BatchEntry>> = serde_json::from_slice(&out.stdout).unwrap();
    assert!(env.result[0].report.is_some());
    assert!(env.result[1].error.as_ref().unwrap().contains("positive definite"));
}

#[test]
fn triples_example() {
    let dir = workdir();
    let env: ReportEnvelope<PythReport> = round_trip(&ok(dir.path(), &["triples", "2", "1"]));
    let r = env.result;
    assert_eq!((r.triple.a, r.triple.b, r.triple.c), (4, 3, 5));
    assert_eq!((r.cos_phi.num, r.cos_phi.den), (4, 5));
    assert_eq!((r.sin_phi.num, r.sin_phi.den), (3, 5));
    assert_eq!((r.stereo_point[0].num, r.stereo_point[1].num), (4, 3));
}

#[test]
fn triples_listing_and_csv() {
    let dir = workdir();
    let env: ReportEnvelope<TripleList> =
        round_trip(&ok(dir.path(), &["triples", "--max-c", "100", "--csv", "t.csv"]));
    assert_eq!(env.result.count, 16);
    let csv = std::fs::read_to_string(dir.path().join("t.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("m,n,a,b,c,cos_num,cos_den,sin_num,sin_den"));
    assert_eq!(lines.next(), Some("2,1,4,3,5,4,5,3,5"));
    assert_eq!(lines.count(), 15);

    let empty: ReportEnvelope<TripleList> = round_trip(&ok(dir.path(), &["triples", "--max-c", "4"]));
    assert_eq!(empty.result.count, 0);
    assert_eq!(empty.warnings.len(), 1);
}

#[test]
fn granular_example() {
    let dir = workdir();
    let env: ReportEnvelope<ReposeReport> = round_trip(&ok(dir.path(), &["granular", "2", "1", "2"]));
    let r = env.result;
    assert_eq!((r.principal.sigma1, r.principal.sigma2), (3.0, 1.0));
    assert!((r.theta.degrees - 30.0).abs() < 1e-12);
    assert!((r.phi.degrees - 30.0).abs() < 1e-12);
    assert!((r.delta.degrees - 30.0).abs() < 1e-12);

    let neg: ReportEnvelope<ReposeReport> = round_trip(&ok(dir.path(), &["granular", "2", "-1", "2"]));
    assert!((neg.result.theta.degrees - 30.0).abs() < 1e-12);
}

#[test]
fn granular_field_csv() {
    let dir = workdir();
    let args = [
        "granular-field", "--theta", "20", "--rho", "1.5", "--g", "9.81", "--K", "1", "--depth", "2",
        "--nx", "4", "--nz", "5", "--csv", "field.csv",
    ];
    let env: ReportEnvelope<FieldSummary> = round_trip(&ok(dir.path(), &args));
    assert_eq!(env.result.nodes, 20);
    assert_eq!(env.result.interior_nodes, 6);
    assert_eq!(env.result.dz, 0.5);
    assert!(env.result.relative_residual <= 1e-10);
    assert!((env.result.bottom_repose.theta.degrees - env.result.bottom_repose.phi.degrees).abs() < 1e-9);

    let csv = std::fs::read_to_string(dir.path().join("field.csv")).unwrap();
    let rows: Vec<Vec<&str>> = csv.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(csv.lines().next(), Some("i,j,x,z,sigma_xx,sigma_xz,sigma_zz,r1,r2"));
    assert_eq!(rows.len(), 20);
    for row in &rows {
        let (i, j): (usize, usize) = (row[0].parse().unwrap(), row[1].parse().unwrap());
        let interior = (1..3).contains(&i) && (1..4).contains(&j);
        assert_eq!(row[7].is_empty(), !interior, "{row:?}");
        if interior {
            assert!(row[7].parse::<f64>().unwrap().abs() <= 1e-10);
        }
    }

    let steep = [
        "granular-field", "--theta", "50", "--rho", "1", "--g", "1", "--K", "1", "--depth", "1", "--nx",
        "3", "--nz", "3",
    ];
    assert_eq!(code(dir.path(), &steep), EXIT_INPUT);
}

#[test]
fn finance_report() {
    let dir = workdir();
    let env: ReportEnvelope<FinanceReport> = round_trip(&ok(dir.path(), &["finance", "returns.csv"]));
    let r = &env.result;
    assert_eq!(r.labels, ["2023", "2024", "2025"]);
    let g: Vec<f64> = r.rolling.iter().map(|e| e.g.unwrap()).collect();
    assert!((g[0] - 0.6).abs() < 1e-15 && (g[1] - 0.8).abs() < 1e-15);
    let last = r.last_two.as_ref().unwrap();
    assert!((last.g_ratio - 0.8).abs() < 1e-15);

    let sample: ReportEnvelope<FinanceReport> =
        round_trip(&ok(dir.path(), &["finance", "returns.csv", "--sigma", "sample"]));
    let s = sample.result.last_two.unwrap();
    assert!((s.g_ratio - last.g_ratio).abs() <= 1e-14);
    assert!((s.sigma / last.sigma - 2f64.sqrt()).abs() < 1e-12);

    let skipped: ReportEnvelope<FinanceReport> =
        round_trip(&ok(dir.path(), &["finance", "returns.csv", "--rf", "0.05"]));
    assert!(skipped.result.rolling.iter().all(|e| e.skipped));
    assert!(skipped.result.last_two.is_none());
    assert_eq!(skipped.warnings.len(), 2);

    assert_eq!(code(dir.path(), &["finance", "flat.txt"]), EXIT_INPUT);
}

#[test]
fn plots_are_deterministic() {
    let dir = workdir();
    ok(dir.path(), &["plot-circle", "--max-c", "65", "--out", "a.svg"]);
    ok(dir.path(), &["plot-circle", "--max-c", "65", "--out", "b.svg"]);
    let a = std::fs::read(dir.path().join("a.svg")).unwrap();
    assert_eq!(a, std::fs::read(dir.path().join("b.svg")).unwrap());
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("<?xml") && text.contains("version=\"1.1\"") && text.contains("(4, 3, 5)"));

    assert_eq!(code(dir.path(), &["plot-circle", "--max-c", "4", "--out", "none.svg"]), EXIT_INPUT);
    assert!(!dir.path().join("none.svg").exists());

    let args = ["plot-angle", "--lmin", "1", "--lmax", "1e6", "--steps", "200", "--out", "angle.svg"];
    let first = ok(dir.path(), &args);
    let svg = std::fs::read(dir.path().join("angle.svg")).unwrap();
    assert_eq!(first, ok(dir.path(), &args));
    assert_eq!(svg, std::fs::read(dir.path().join("angle.svg")).unwrap());
    let env: ReportEnvelope<AnglePlotReport> = round_trip(&first);
    let curve = &env.result.curve;
    assert_eq!(curve.len(), 200);
    assert_eq!(curve[0].phi_degrees, 0.0);
    assert!(curve.windows(2).all(|w| w[1].phi_degrees > w[0].phi_degrees));
    assert!(curve.last().unwrap().phi_degrees > 89.0);
}

#[test]
fn exit_code_contract() {
    let dir = workdir();
    let input_errors: [&[&str]; 12] = [
        &["trig", "missing.txt"],
        &["trig", "short.txt"],
        &["trig", "indef.txt"],
        &["trig", "diag.txt", "--restarts", "0"],
        &["triples", "2", "2"],
        &["triples", "3", "1"],
        &["triples", "-2", "1"],
        &["granular", "1", "2", "1"],
        &["plot-angle", "--lmin", "0.5", "--lmax", "2", "--steps", "5", "--out", "x.svg"],
        &["plot-angle", "--lmin", "1", "--lmax", "2", "--steps", "1", "--out", "x.svg"],
        &["frobnicate"],
        &["triples", "2", "1", "--max-c", "10"],
    ];
    for args in input_errors {
        let out = optrig(dir.path(), args);
        assert_eq!(out.status.code(), Some(EXIT_INPUT), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
    let short = optrig(dir.path(), &["trig", "short.txt"]);
    assert!(String::from_utf8_lossy(&short.stderr).contains("missing row"));

    assert_eq!(code(dir.path(), &["--help"]), 0);
    assert_eq!(code(dir.path(), &["--version"]), 0);

    let failure = CliError::from(TrigError::ConvergenceFailure {
        routine: "jacobi",
        iterations: 100,
    });
    assert_eq!(failure.exit_code(), EXIT_NUMERICAL);
    assert_eq!(CliError::from(TrigError::Empty).exit_code(), EXIT_INPUT);
}

#[test]
fn in_process_run_matches_binary() {
    let dir = workdir();
    let path = dir.path().join("diag.txt");
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let status = optrig_cli::run(["optrig", "trig", path.to_str().unwrap()], &mut out, &mut err);
    assert_eq!(status, 0);
    assert!(err.is_empty());
    let bin = ok(dir.path(), &["trig", path.to_str().unwrap()]);
    assert_eq!(String::from_utf8(out).unwrap(), bin);
}
