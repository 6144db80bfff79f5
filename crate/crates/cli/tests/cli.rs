use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_groupinv"))
        .args(args)
        .env_remove("GROUPINV_BRUTE_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

fn path(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

#[test]
fn ginv_all_methods_agree_on_ten_vertex() {
    let out = run(&["ginv", "--method", "all", "--format", "json", &path("ten_vertex.txt")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["agree"], true);
    assert_eq!(v["delta"], "-96");
    assert_eq!(v["methods_run"].as_array().unwrap().len(), 3);
    assert_eq!(v["group_inverse"][4][6], "1");
}

#[test]
fn ginv_text_output_reparses_as_matrix() {
    let out = run(&["ginv", "--method", "graph", &path("class_d_five.txt")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let expected = std::fs::read_to_string(data("class_d_five_inverse.txt")).unwrap();
    let parsed = groupinv_core::RMatrix::parse(&text).unwrap();
    assert_eq!(parsed, groupinv_core::RMatrix::parse(&expected).unwrap());
}

#[test]
fn show_mu_reports_chain_for_pair_five_seven() {
    let out = run(&["ginv", "--show-mu", "--method", "graph", &path("ten_vertex.txt")]);
    let text = stdout(&out);
    let line = text.lines().find(|l| l.starts_with("# mu(5,7)=")).expect("mu line");
    assert!(line.contains("mu(5,7)=-96"), "{line}");
    assert!(line.contains("beta=-6"), "{line}");
}

#[test]
fn analyze_reports_outside_class_without_failing() {
    let out = run(&["analyze", &path("outside_class_five.txt")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["in_class_d"], false);
    assert_eq!(v["simple_symmetric"], true);
}

#[test]
fn formula_route_refuses_outside_class_with_reason() {
    let out = run(&["ginv", "--method", "graph", &path("outside_class_five.txt")]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["error"], "class_violation");
    assert_eq!(v["reason"], "not_in_class_d");
}

#[test]
fn all_methods_fall_back_to_oracle_outside_class() {
    let out = run(&["ginv", "--format", "json", &path("outside_class_five.txt")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["methods_run"], serde_json::json!(["oracle"]));
    assert_eq!(v["formula_skipped"], "not_in_class_d");
    assert_eq!(v["group_inverse"][3][3], "8/25");
}

#[test]
fn verify_accepts_known_inverse_and_rejects_other() {
    let good = run(&["verify", &path("class_d_five.txt"), &path("class_d_five_inverse.txt")]);
    assert_eq!(good.status.code(), Some(0));
    assert!(stdout(&good).contains("all_hold: true"));
    let bad = run(&["verify", "--format", "json", &path("class_d_five.txt"), &path("class_d_five.txt")]);
    assert_eq!(bad.status.code(), Some(3));
    assert_eq!(json(&bad)["all_hold"], false);
}

#[test]
fn matchings_text_lists_products_and_delta() {
    let out = run(&["matchings", &path("ten_vertex.txt")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(*lines.last().unwrap(), "Delta=-96");
    for p in ["product=288", "product=-96", "product=-432", "product=144"] {
        assert!(text.contains(p), "missing {p}");
    }
}

#[test]
fn brute_force_engines_agree_and_cap_is_enforced() {
    let fast = run(&["matchings", "--engine", "structural", &path("ten_vertex.txt")]);
    let brute = run(&["matchings", "--engine", "brute", &path("ten_vertex.txt")]);
    assert_eq!(stdout(&fast), stdout(&brute));
    let capped = Command::new(env!("CARGO_BIN_EXE_groupinv"))
        .args(["matchings", "--engine", "brute", &path("ten_vertex.txt")])
        .env("GROUPINV_BRUTE_CAP", "4")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(1));
}

#[test]
fn matchings_outside_class_uses_brute_force() {
    let out = run(&["matchings", &path("outside_class_five.txt")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("Delta=20\n"));
}

#[test]
fn classify_star_stays_star() {
    let out = run(&["classify", &path("star_five.txt")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["input_class"], "star");
    assert_eq!(v["actual_output_class"], "star");
}

#[test]
fn gen_is_deterministic_and_round_trips() {
    let args = ["gen", "--family", "corona", "--seed", "7", "--index", "3"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with("# gen family=corona seed=7 index=3"));

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("inst.txt");
    let written = run(&["gen", "--family", "corona", "--seed", "7", "--index", "3", "-o", file.to_str().unwrap()]);
    assert_eq!(written.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&file).unwrap(), text);
    let analyzed = run(&["analyze", file.to_str().unwrap()]);
    assert_eq!(json(&analyzed)["is_corona"], true);
}

#[test]
fn sweep_reports_no_failures_and_is_reproducible() {
    for family in ["corona", "classd", "star"] {
        let args = ["sweep", "--family", family, "--count", "15", "--seed", "11", "--max-n", "10"];
        let out = run(&args);
        assert_eq!(out.status.code(), Some(0), "{family}");
        let v = json(&out);
        assert_eq!(v["instances"], 15);
        assert_eq!(v["failures"].as_array().unwrap().len(), 0);
        if family == "star" {
            assert_eq!(v["output_classes"]["star"], 15);
        }
        assert_eq!(run(&args).stdout, out.stdout, "{family}");
    }
}

#[test]
fn sweep_zero_delta_family_is_refused_everywhere() {
    let out = run(&["sweep", "--family", "zero-delta", "--count", "10", "--seed", "2", "--max-n", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["checks"]["oracle_refuses"]["passed"], 10);
}

#[test]
fn malformed_input_exits_with_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.txt");
    std::fs::write(&file, "3\n1 2\n").unwrap();
    let out = run(&["analyze", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let missing = run(&["analyze", "/nonexistent/matrix.txt"]);
    assert_eq!(missing.status.code(), Some(1));
}
