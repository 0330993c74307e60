//! Golden reports. Set UPDATE_GOLDEN=1 to rewrite the files.

use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::Command;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_morsecube"))
        .args(args)
        .current_dir(root())
        .output()
        .expect("binary runs");
    (out.status.code().expect("exit code"), String::from_utf8(out.stdout).expect("utf-8"))
}

fn without_timing(text: &str) -> Value {
    let mut v: Value = serde_json::from_str(text).expect("report is JSON");
    v.as_object_mut().expect("object").remove("timing_ms");
    v
}

fn check(name: &str, args: &[&str], code: i32) -> Value {
    let mut argv = vec!["--json"];
    argv.extend_from_slice(args);
    let (got_code, first) = run(&argv);
    assert_eq!(got_code, code, "{name}: exit code");
    let (_, second) = run(&argv);
    let report = without_timing(&first);
    assert_eq!(report, without_timing(&second), "{name}: not deterministic");
    let file = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"));
    let rendered = serde_json::to_string_pretty(&report).unwrap() + "\n";
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&file, &rendered).unwrap();
    }
    let expected = std::fs::read_to_string(&file).unwrap_or_else(|_| panic!("missing golden {}", file.display()));
    assert_eq!(rendered, expected, "{name}: report differs from golden file");
    report
}

fn output<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["outputs"]
        .as_array()
        .unwrap()
        .iter()
        .find(|o| o["name"] == name)
        .unwrap_or_else(|| panic!("no output {name}"))
}

#[test]
fn normal_form() {
    let r = check("nf", &["--graph", "data/z3z.json", "nf", "c b a"], 0);
    assert_eq!(output(&r, "normal_form")["value"], "a b c");
}

#[test]
fn cross_ratio_at_shifted_base() {
    let r = check(
        "crossratio",
        &[
            "--graph",
            "data/z3z.json",
            "crossratio",
            "--base",
            "c^-2",
            "--depth",
            "40",
            "w:a^4|d",
            "x:a^4 b|d",
            "y:a^-1 b^-1|d",
            "z:a^-1 b^-1 c|d",
        ],
        0,
    );
    assert_eq!(output(&r, "cross_ratio")["value"], 2);
    assert_eq!(r["certified"], true);
}

#[test]
fn beta_certified() {
    let r = check("beta", &["beta", "--delta", "4", "--flats", "12", "--certify"], 0);
    assert_eq!(output(&r, "quasi_geodesic")["value"]["pass"], true);
}

#[test]
fn kappa_and_small_cancellation() {
    let r = check("kappa", &["kappa", "--k", "2", "--c", "1"], 0);
    assert_eq!(output(&r, "kappa")["value"], "12");
    let r = check("smallcancel", &["smallcancel"], 0);
    assert_eq!(output(&r, "below_sixth")["value"], true);
}

#[test]
fn uncertified_exit_code() {
    let r = check("product", &["product", "|a d", "|a b"], 2);
    assert_eq!(output(&r, "gromov_product")["certified"], false);
}

#[test]
fn input_errors_exit_one() {
    assert_eq!(run(&["bogus"]).0, 1);
    assert_eq!(run(&["--graph", "data/missing.json", "nf", "a"]).0, 1);
    assert_eq!(run(&["nf", "e^0"]).0, 1);
}
