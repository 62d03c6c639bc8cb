use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn fixture(name: &str) -> PathBuf {
    corpus().join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gmpath"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn structured(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "structured"]);
    let out = run(&all);
    let json = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout));
    });
    (out.status.code().expect("exit code"), json)
}

fn results(report: &Value, k: usize) -> &Value {
    &report["inputs"][k]["results"]
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn one_arrow_has_two_strong_classes_and_one_regular_pair() {
    let f = fixture("onearrow.quiver");
    let (code, r) = structured(&["connectivity", path_str(&f)]);
    assert_eq!(code, 0);
    let res = results(&r, 0);
    assert_eq!(res["strong_components"], serde_json::json!([["1"], ["2"]]));
    assert_eq!(res["regular_pairs"], serde_json::json!([["1", "2"]]));
    assert_eq!(r["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
    assert_eq!(r["seed"], 0);
}

#[test]
fn two_cycle_is_one_class_everywhere() {
    let f = fixture("twocycle.quiver");
    let (code, r) = structured(&["connectivity", path_str(&f)]);
    assert_eq!(code, 0);
    let res = results(&r, 0);
    let one = serde_json::json!([["1", "2"]]);
    assert_eq!(res["strong_components"], one);
    assert_eq!(res["weak_components"], one);
    assert_eq!(res["unilateral_components"], one);
    assert_eq!(res["regular_pair_count"], 0);
}

#[test]
fn thousand_edge_file_completes_consistently() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut text = String::from("vertex v0\n");
    for v in 1..400 {
        writeln!(text, "vertex v{v}").unwrap();
    }
    for k in 0..1000 {
        let (s, t) = (rng.gen_range(0..400), rng.gen_range(0..400));
        writeln!(text, "arrow a{k} v{s} v{t}").unwrap();
    }
    let path = dir.path().join("big.quiver");
    std::fs::write(&path, text).unwrap();
    let (code, r) = structured(&["connectivity", path_str(&path)]);
    assert_eq!(code, 0, "{r}");
    let res = results(&r, 0);
    assert_eq!(res["arrows"], 1000);
    for check in ["partitions", "refinement", "regular_pairs"] {
        assert_eq!(res["checks"][check], true, "{check}");
    }
    // 400 singleton-heavy classes exceed the listing threshold
    assert_eq!(res["regular_pairs"]["summarized"], true);
}

#[test]
fn chain_radical_matches_the_oracle() {
    let f = fixture("chain.quiver");
    let (code, r) = structured(&["radical", path_str(&f), "jacobson", "--oracle"]);
    assert_eq!(code, 0);
    let res = results(&r, 0);
    assert_eq!(res["closed_form"]["dim"], "3");
    assert_eq!(
        res["closed_form"]["basis"],
        serde_json::json!(["a", "b", "a.b"])
    );
    assert_eq!(res["oracle"]["dim"], 3);
    assert_eq!(res["oracle"]["equal"], true);
}

#[test]
fn taft_radical_matches_the_oracle() {
    let f = fixture("taft4.hopf");
    let (code, r) = structured(&["radical", path_str(&f), "jacobson", "--oracle"]);
    assert_eq!(code, 0);
    let res = results(&r, 0);
    assert_eq!(res["closed_form"]["dim"], 2);
    assert_eq!(res["closed_form"]["algebra_dim"], 4);
    assert_eq!(res["oracle"]["equal"], true);
}

#[test]
fn one_arrow_regular_radical_is_zero_with_a_reason() {
    let f = fixture("onearrow.quiver");
    let (code, r) = structured(&["radical", path_str(&f), "vn"]);
    assert_eq!(code, 0);
    let res = results(&r, 0);
    assert_eq!(res["closed_form"]["dim"], 0);
    assert!(res["closed_form"]["reason"]
        .as_str()
        .unwrap()
        .contains("isolated vertices"));
    let iso = fixture("isolated.quiver");
    let (code, r) = structured(&["radical", path_str(&iso), "vn", "--oracle"]);
    assert_eq!(code, 0);
    assert_eq!(
        results(&r, 0)["closed_form"]["basis"],
        serde_json::json!(["e(3)"])
    );
    assert_eq!(results(&r, 0)["oracle"]["equal"], true);
}

#[test]
fn system_radicals() {
    let f = fixture("upper2.gmring");
    let (code, r) = structured(&["radical", path_str(&f), "jacobson", "--oracle"]);
    assert_eq!(code, 0);
    let res = results(&r, 0);
    assert_eq!(res["closed_form"]["basis"], serde_json::json!(["x"]));
    assert_eq!(res["closed_form"]["blocks"]["1,2"], 1);
    assert_eq!(res["oracle"]["equal"], true);
    // no gm non-zero divisors in the 1 → 2 system: explanatory refusal
    let (code, r) = structured(&["radical", path_str(&f), "vn"]);
    assert_eq!(code, 2);
    assert!(results(&r, 0)["refused"]
        .as_str()
        .unwrap()
        .contains("non-zero divisors"));
    let m2 = fixture("m2.gmring");
    let (code, r) = structured(&["radical", path_str(&m2), "vn", "--oracle"]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(results(&r, 0)["closed_form"]["dim"], 4);
}

#[test]
fn net_ingest_examples() {
    let mutual = fixture("mutual3.edges");
    let star = fixture("star.edges");
    let (code, r) = structured(&["net-ingest", path_str(&mutual), path_str(&star)]);
    assert_eq!(code, 0);
    assert_eq!(results(&r, 0)["semiprime"], true);
    let s = results(&r, 1);
    let pairs: Vec<(String, String)> = serde_json::from_value(s["regular_pairs"].clone()).unwrap();
    let expected: Vec<(String, String)> = (1..=4)
        .map(|k| ("hub".to_string(), format!("l{k}")))
        .collect();
    assert_eq!(pairs, expected);
    assert_eq!(s["radical"]["dim"], s["arrows"].to_string());
    assert_eq!(s["semiprime"], false);

    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.edges");
    std::fs::write(&empty, "").unwrap();
    let (code, r) = structured(&["net-ingest", path_str(&empty)]);
    assert_eq!(code, 0);
    let e = &results(&r, 0)["equivalence"];
    assert_eq!(e["value"], true);
    assert!(e["verdicts"]
        .as_object()
        .unwrap()
        .values()
        .all(|v| v == true));
}

#[test]
fn malformed_edge_lines_are_reported_and_skipped() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.edges");
    std::fs::write(&f, "a b\nlonely\nb c\n").unwrap();
    let (code, r) = structured(&["net-ingest", path_str(&f)]);
    assert_eq!(code, 2);
    let res = results(&r, 0);
    assert_eq!(res["arrows"], 2);
    assert_eq!(
        res["malformed_lines"],
        serde_json::json!(["line 2: expected `src dst [label]`, found 1 fields"])
    );
    assert_eq!(r["warnings"].as_array().unwrap().len(), 1);
}

#[test]
fn shipped_corpus_passes() {
    let (code, r) = structured(&["verify-suite", path_str(&corpus())]);
    assert_eq!(code, 0, "{r}");
    let summary = r["summary"].as_object().unwrap();
    assert!(summary.values().all(|s| s["fail"] == 0));
    for suite in [
        "hopf-axioms",
        "path-radical",
        "gm-radical",
        "negative-controls",
    ] {
        assert!(summary[suite]["pass"].as_u64().unwrap() > 0, "{suite}");
    }
}

#[test]
fn corrupted_hopf_parameters_fail_the_suite() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(fixture("taft4.hopf"), dir.path().join("taft4.hopf")).unwrap();
    // c_1^{n_1} = 1 no longer matches n_1 = 3
    std::fs::write(
        dir.path().join("bad.hopf"),
        "hopf bad\ngroup Z2\nt 1\nn 3\nc 1\ncstar 1\n",
    )
    .unwrap();
    let (code, r) = structured(&["verify-suite", path_str(dir.path())]);
    assert_eq!(code, 1);
    let bad = results(&r, 0);
    assert_eq!(bad["suites"]["hopf-validate"]["status"], "fail");
    assert!(!bad["suites"]["hopf-validate"]["detail"]
        .as_str()
        .unwrap()
        .is_empty());
    assert_eq!(r["inputs"][1]["status"], "pass");
}

#[test]
fn empty_corpus_is_a_vacuous_pass() {
    let dir = tempfile::tempdir().unwrap();
    let (code, r) = structured(&["verify-suite", path_str(dir.path())]);
    assert_eq!(code, 0);
    assert!(r["warnings"][0].as_str().unwrap().contains("vacuous"));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.quiver");
    std::fs::write(&bad, "vertex 1\narrow a 1 9\n").unwrap();
    let (code, r) = structured(&["connectivity", path_str(&bad)]);
    assert_eq!(code, 2);
    assert!(results(&r, 0)["error"]
        .as_str()
        .unwrap()
        .starts_with("line 2:"));
    let missing = dir.path().join("missing.quiver");
    assert_eq!(structured(&["connectivity", path_str(&missing)]).0, 2);
    let cyc = fixture("twocycle.quiver");
    let (code, r) = structured(&["radical", path_str(&cyc), "jacobson", "--oracle"]);
    assert_eq!(code, 2);
    assert_eq!(results(&r, 0)["closed_form"]["dim"], "0");
    assert!(results(&r, 0)["error"]
        .as_str()
        .unwrap()
        .contains("oriented cycle"));
    let looped = dir.path().join("looped.quiver");
    std::fs::write(&looped, "vertex 1\nvertex 2\narrow l 1 1\narrow a 1 2\n").unwrap();
    let (_, r) = structured(&["radical", path_str(&looped), "jacobson"]);
    assert_eq!(results(&r, 0)["closed_form"]["dim"], "infinite");
    let d4 = fixture("d4z2.hopf");
    let (code, _) = structured(&[
        "radical",
        path_str(&d4),
        "jacobson",
        "--oracle",
        "--max-oracle-dim",
        "16",
    ]);
    assert_eq!(code, 2);
    assert_eq!(
        run(&["radical", path_str(&cyc), "bogus"]).status.code(),
        Some(2)
    );
}

#[test]
fn reports_are_deterministic() {
    let c = corpus();
    for format in ["text", "structured"] {
        let args = [
            "verify-suite",
            path_str(&c),
            "--format",
            format,
            "--seed",
            "7",
        ];
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout, "{format}");
        assert!(!a.stdout.is_empty());
    }
    let dir = tempfile::tempdir().unwrap();
    let f = fixture("star.edges");
    let out = run(&[
        "net-ingest",
        path_str(&f),
        "--format",
        "structured",
        "--out-dir",
        path_str(dir.path()),
    ]);
    assert_eq!(
        std::fs::read(dir.path().join("report.json")).unwrap(),
        out.stdout
    );
    let text = std::fs::read_to_string(dir.path().join("report.txt")).unwrap();
    assert!(text.starts_with("command: gmpath net-ingest"));
    assert!(text.contains("seed: 0"));
}
