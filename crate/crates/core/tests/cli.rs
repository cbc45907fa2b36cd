use std::fs;
use std::process::Command;

use flowdex::cli::{self, load_certificate, EXIT_BUDGET, EXIT_FAILED, EXIT_OK, EXIT_USAGE};
use flowdex::vector::verify_certificate;
use tempfile::TempDir;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("flowdex").chain(args.iter().copied());
    let code = cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

const PETERSEN: &str = "\
# outer cycle, spokes, inner pentagram
10 15
0 1
1 2
2 3
3 4
4 0
0 5
1 6
2 7
3 8
4 9
5 7
7 9
9 6
6 8
8 5
";

fn petersen_file(dir: &TempDir) -> String {
    let path = dir.path().join("petersen.txt");
    fs::write(&path, PETERSEN).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn find_nzf_exit_codes() {
    let dir = TempDir::new().unwrap();
    let g = petersen_file(&dir);
    let (code, out, _) = run(&["find-nzf", "--k", "4", &g]);
    assert_eq!(code, EXIT_FAILED);
    assert_eq!(out.trim(), "none");
    let (code, out, _) = run(&["find-nzf", "--k", "5", &g]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("found nowhere-zero 5-flow"));
    assert_eq!(out.lines().count(), 16);
    let (code, _, err) = run(&["--budget", "3", "find-nzf", "--k", "3", &g]);
    assert_eq!(code, EXIT_BUDGET, "{err}");
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(run(&["find-nzf", "--k", "4"]).0, EXIT_USAGE);
    assert_eq!(run(&["find-nzf", "--k", "4", "/no/such/file"]).0, EXIT_USAGE);
    assert_eq!(
        run(&["build-flow", "--construction", "bogus", "named:k4"]).0,
        EXIT_USAGE
    );
    assert_eq!(
        run(&["transfer", "--d", "2", "--p1", "3", "--p2", "2", "--phi", "3"]).0,
        EXIT_USAGE
    );

    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "3 2\n0 1\n").unwrap();
    let (code, _, err) = run(&["find-nzf", "--k", "3", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("line"), "{err}");
}

#[test]
fn six_flow_certificate_written_and_verified() {
    let dir = TempDir::new().unwrap();
    let g = petersen_file(&dir);
    let cert = dir.path().join("p.cert");
    let (code, out, err) = run(&[
        "build-flow",
        "--construction",
        "six-flow",
        "--table1",
        "d3-one",
        "--out",
        cert.to_str().unwrap(),
        &g,
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(out.starts_with("r=2.250000"), "{out}");
    let c = load_certificate(&cert).unwrap();
    assert!((c.claimed_r - 2.25).abs() < 1e-9);
    assert!(verify_certificate(&c, 1e-9).is_ok());

    let (code, out, _) = run(&["verify", cert.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("verified r=2.25"), "{out}");
}

#[test]
fn tampered_certificate_is_rejected() {
    let dir = TempDir::new().unwrap();
    let cert = dir.path().join("k4.cert");
    let (code, _, err) = run(&[
        "build-flow",
        "--construction",
        "occ-simplex",
        "--k",
        "4",
        "--p",
        "inf",
        "--out",
        cert.to_str().unwrap(),
        "named:k4",
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    let text = fs::read_to_string(&cert).unwrap();
    let r_line = text.lines().find(|l| l.starts_with("r: ")).unwrap();
    fs::write(&cert, text.replace(r_line, "r: 1.5")).unwrap();
    let (code, out, _) = run(&["verify", cert.to_str().unwrap()]);
    assert_eq!(code, EXIT_FAILED);
    assert!(out.starts_with("FAILED"));
}

#[test]
fn every_construction_builds() {
    let cases: &[&[&str]] = &[
        &["--construction", "from-3nzf", "named:k33"],
        &["--construction", "from-4nzf", "named:k4"],
        &["--construction", "six-flow", "named:petersen"],
        &["--construction", "occ-simplex", "--k", "4", "named:k4"],
        &["--construction", "occ-halfunit", "--k", "3", "named:k33"],
        &["--construction", "table1", "--table1", "d3-inf", "named:petersen"],
        &["--construction", "thm31", "--p", "1.5", "named:petersen"],
        &["--construction", "thm15", "--p", "1", "named:k4"],
    ];
    for case in cases {
        let mut args = vec!["build-flow"];
        args.extend_from_slice(case);
        let (code, out, err) = run(&args);
        assert_eq!(code, EXIT_OK, "{case:?}: {err}");
        assert!(out.starts_with("flowdex-cert v1"), "{case:?}");
    }
}

#[test]
fn transform_then_verify() {
    let dir = TempDir::new().unwrap();
    let one = dir.path().join("one.cert");
    let inf = dir.path().join("inf.cert");
    let (code, _, err) = run(&[
        "build-flow",
        "--construction",
        "thm15",
        "--p",
        "1",
        "--out",
        one.to_str().unwrap(),
        "named:k4",
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    let (code, _, err) = run(&[
        "transform2d",
        "--direction",
        "one-to-inf",
        "--out",
        inf.to_str().unwrap(),
        one.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    let c = load_certificate(&inf).unwrap();
    assert_eq!(c.p.to_string(), "inf");
    assert!((c.claimed_r - 2.0).abs() < 1e-12);
    assert_eq!(run(&["verify", inf.to_str().unwrap()]).0, EXIT_OK);
}

#[test]
fn optimize_is_reproducible() {
    let args = [
        "optimize",
        "--d",
        "2",
        "--p",
        "2",
        "--restarts",
        "4",
        "--seed",
        "7",
        "named:k4",
    ];
    let (code, a, err) = run(&args);
    assert_eq!(code, EXIT_OK, "{err}");
    let (_, b, _) = run(&args);
    assert_eq!(a, b);
    assert!(a.starts_with("seed=7\n"));
    let r: f64 = a
        .lines()
        .find_map(|l| l.strip_prefix("best_r="))
        .unwrap()
        .parse()
        .unwrap();
    assert!((r - (1.0 + 2f64.sqrt())).abs() < 1e-3);
}

#[test]
fn analysis_commands() {
    let (code, out, _) = run(&["transfer", "--d", "2", "--p1", "1", "--p2", "2", "--phi", "3"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("lower=2.4142135623730"), "{out}");
    let (code, out, _) = run(&["gfuncs", "--p", "2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("g2=1.4142135623730"), "{out}");
    let (code, out, _) = run(&["verify-thm32"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("all checks passed"));
    let (code, out, _) = run(&["tables", "--p", "2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("column d3-one"));

    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("g.csv");
    let (code, _, err) = run(&[
        "gfuncs",
        "--emit-csv",
        "--range",
        "1:4",
        "--steps",
        "30",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().next(), Some("p,g1,g2,g3,min_g,bound"));
    assert_eq!(text.lines().count(), 32);
}

#[test]
fn occ_and_decompose_print_structures() {
    let (code, out, err) = run(&["occ", "--k", "3", "--l", "1", "named:k33"]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(!out.is_empty());
    let (code, out, err) = run(&["decompose6", "named:petersen"]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(out.contains("g1: ") && out.contains("g2: "));
    let (code, out, _) = run(&["occ", "--k", "3", "--l", "1", "named:petersen"]);
    assert_eq!(code, EXIT_FAILED);
    assert_eq!(out.trim(), "none");
}

#[test]
fn binary_reports_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_flowdex");
    let status = Command::new(bin)
        .args(["find-nzf", "--k", "4", "named:petersen"])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(EXIT_FAILED));
    let status = Command::new(bin).arg("--help").output().unwrap();
    assert!(status.status.success());
    assert!(String::from_utf8_lossy(&status.stdout).contains("build-flow"));
}
