use std::process::{Command, Output};

fn freeness(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_freeness"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn analyze_reports_free_triangle() {
    let o = freeness(&["analyze", "x*y*z"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("Free(1,1)"), "{s}");
    assert!(s.contains("tau         3"), "{s}");
}

#[test]
fn input_errors_exit_with_two() {
    let o = freeness(&["analyze", "x^2*y"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not reduced"));
    assert_eq!(freeness(&["analyze", "x^2 + y"]).status.code(), Some(2));
    assert_eq!(freeness(&["analyze", "x*(y"]).status.code(), Some(2));
    assert_eq!(freeness(&["catalog", "show", "persson"]).status.code(), Some(2));
}

#[test]
fn json_round_trips() {
    let o = freeness(&["--json", "analyze", "x^2*y^2 + z^4"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let v: serde_json::Value = serde_json::from_str(&s).unwrap();
    assert_eq!(v["schema"], "freeness-report/1");
    assert_eq!(v["jacobian"]["tau"], 6);
    assert_eq!(v["syzygy"]["profile"]["mdr"], 1);
    let report: freeness::report::CurveReport = serde_json::from_str(&s).unwrap();
    assert_eq!(freeness::report::to_json(&report), s);
    let again = stdout(&freeness(&["--json", "analyze", "x^2*y^2 + z^4"]));
    assert_eq!(again, s);
}

#[test]
fn json_error_report() {
    let o = freeness(&["--json", "analyze", "x^2*y"]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["kind"], "not_reduced");
    assert_eq!(v["exit_code"], 2);
}

#[test]
fn every_subcommand_runs() {
    let cases: &[&[&str]] = &[
        &["classify", "x^3 - y^2*z"],
        &["resolution", "x^3 + y^3 + z^3"],
        &["defects", "x*y*z*(x+y+z)"],
        &["arrangement", "x; y; z; x+y+z", "--analyze"],
        &["modular", "x*y*(x-y)*z", "--candidates", "(0:0:1);(1:0:0)"],
        &["supersolvable", "x*(x+z)*(x^2+x*z+y^2)"],
        &["catalog", "list"],
        &["catalog", "show", "persson", "2"],
        &["catalog", "verify", "--max-degree", "5"],
        &["terao", "x;y;z;x+y+z", "x;y;z;x+2*y+3*z"],
        &["cuspidal-guarantee", "35", "16"],
        &["--timing", "analyze", "x*y*(x+y)", "--kmax", "6"],
    ];
    for args in cases {
        let o = freeness(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        let j: Vec<&str> = std::iter::once("--json").chain(args.iter().copied()).collect();
        let o = freeness(&j);
        assert_eq!(o.status.code(), Some(0), "{j:?}");
        serde_json::from_slice::<serde_json::Value>(&o.stdout).unwrap();
    }
}

#[test]
fn terao_rejects_different_lattices() {
    let o = freeness(&["terao", "x;y;z", "x;y;x+y"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn arrangement_from_file() {
    let o = freeness(&["arrangement", "@data/ziegler_a.txt"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("t2=18 t3=6"));
}
