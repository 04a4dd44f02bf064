//! End-to-end tests of the `plumbsw` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use plumbsw::plumbing::PlumbingGraph;
use plumbsw::report::{analyze, AnalysisOptions, InvariantReport};
use plumbsw::seifert::lens_chain;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plumbsw"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn row<'a>(text: &'a str, label: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(label).filter(|rest| rest.starts_with(' ')))
        .map(str::trim)
        .unwrap_or_else(|| panic!("no row {label:?} in\n{text}"))
}

fn write_graph(name: &str, text: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn assert_all_match(text: &str) {
    assert!(!text.contains("MISMATCH"), "{text}");
    assert!(text.contains("MATCH"), "{text}");
}

#[test]
fn lens_three_two() {
    let o = run(&["lens", "3", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let t = stdout(&o);
    assert_eq!(row(&t, "sw0(sigma_can)"), "1/4");
    assert_eq!(row(&t, "conjecture gap"), "0");
    assert_all_match(&t);
}

#[test]
fn seifert_e7_reports_ks_seven() {
    let o = run(&["seifert", "--b", "-2", "--arm", "2/1", "--arm", "3/2", "--arm", "4/3"]);
    assert_eq!(o.status.code(), Some(0));
    let t = stdout(&o);
    assert_eq!(row(&t, "KS"), "7");
    assert_eq!(row(&t, "sw0(sigma_can)"), "7/8");
    assert!(t.lines().any(|l| l.starts_with("MATCH") && l.contains("KS route sw0")), "{t}");
    assert_all_match(&t);
}

#[test]
fn brieskorn_e8() {
    let o = run(&["brieskorn", "2", "3", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let t = stdout(&o);
    assert_eq!(row(&t, "sw0(sigma_can)"), "1");
    assert_eq!(row(&t, "sigma(F)"), "-8");
    assert!(t.lines().any(|l| l.starts_with("MATCH") && l.contains("gorenstein_check")), "{t}");
    assert_all_match(&t);
}

#[test]
fn graph_a1() {
    let path = write_graph("a1.json", r#"{"vertices":[{"id":"v0","euler":-2}],"edges":[]}"#);
    let o = run(&["graph", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let t = stdout(&o);
    assert_eq!(row(&t, "sw0(sigma_can)"), "1/8");
    assert_eq!(row(&t, "conjecture gap"), "0");
}

#[test]
fn graph_rational_family_m2() {
    let path = write_graph(
        "m2.json",
        r#"{"vertices":[{"id":"c","euler":-3},{"id":"a","euler":-2},{"id":"b","euler":-2},{"id":"d","euler":-2}],
            "edges":[["c","a"],["c","b"],["c","d"]]}"#,
    );
    let o = run(&["graph", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let t = stdout(&o);
    assert_eq!(row(&t, "K^2+#V"), "10/3");
    assert_eq!(row(&t, "conjecture gap"), "0");
}

#[test]
fn cyclic_graph_is_an_input_error() {
    let path = write_graph(
        "cycle.json",
        r#"{"vertices":[{"id":"a","euler":-3},{"id":"b","euler":-3},{"id":"c","euler":-3}],
            "edges":[["a","b"],["b","c"],["c","a"]]}"#,
    );
    let o = run(&["graph", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("NotATree"));
}

#[test]
fn malformed_graph_reports_location() {
    let path = write_graph("bad.json", "{\"vertices\":[],\n \"edges\":[[\"a\" \"b\"]]}");
    let o = run(&["graph", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn invalid_arguments_exit_one() {
    for args in [&["lens", "4", "2"][..], &["brieskorn", "2", "3", "6"], &["lens", "x", "1"], &["frobnicate"]] {
        assert_eq!(run(args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn order_cap_exits_two() {
    let o = run(&["lens", "7", "3", "--max-order", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("OrderCapExceeded"));
}

#[test]
fn json_report_round_trips() {
    let o = run(&["lens", "12", "5", "--all-spinc", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let parsed: InvariantReport = serde_json::from_value(doc["report"].clone()).unwrap();
    let opts = AnalysisOptions { all_spinc: true, ..Default::default() };
    assert_eq!(parsed, analyze(&lens_chain(12, 5).unwrap(), &opts).unwrap());
    assert_eq!(serde_json::to_value(&parsed).unwrap(), doc["report"]);
    assert!(!doc["report"].to_string().contains('.'), "rationals must never be rendered as floats");
}

#[test]
fn output_is_deterministic() {
    for format in ["table", "json"] {
        let args = ["seifert", "--b", "-3", "--arm", "3/2", "--arm", "3/2", "--arm", "3/2", "--all-spinc", "--format", format];
        assert_eq!(run(&args).stdout, run(&args).stdout);
    }
}

#[test]
fn graph_file_matches_library() {
    let g = PlumbingGraph::chain(&[-2, -3, -4]);
    let path = write_graph("chain.json", &g.to_json());
    let o = run(&["graph", path.to_str().unwrap(), "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let parsed: InvariantReport = serde_json::from_value(doc["report"].clone()).unwrap();
    assert_eq!(parsed, analyze(&g, &AnalysisOptions::default()).unwrap());
}

#[test]
fn dedekind_value() {
    let o = run(&["dedekind", "1", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("s(1, 3; 0, 0) = 1/18"), "{}", stdout(&o));
    let o = run(&["dedekind", "-2", "7", "--x", "1/2", "--y", "-1/3", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["checks"][0]["status"], "MATCH");
}

#[test]
fn verify_list_does_not_run() {
    let o = run(&["verify", "--list"]);
    assert_eq!(o.status.code(), Some(0));
    let t = stdout(&o);
    assert!(t.lines().count() >= 12);
    assert!(!t.contains("PASS"));
}

#[test]
fn verify_passes_and_catches_a_corrupted_dedekind_sum() {
    let o = run(&["verify"]);
    let t = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{t}");
    assert!(t.lines().filter(|l| l.starts_with("PASS")).count() >= 12);
    let bad = run(&["verify", "--corrupt-dedekind"]);
    assert_ne!(bad.status.code(), Some(0));
    assert!(stdout(&bad).contains("FAIL"));
}
