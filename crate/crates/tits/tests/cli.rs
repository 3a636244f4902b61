use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn tits(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tits"))
        .args(args)
        .env_remove("TITS_RULES")
        .output()
        .unwrap()
}

fn tits_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tits"))
        .args(args)
        .env_remove("TITS_RULES")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn enumerate_json(args: &[&str]) -> Vec<Value> {
    let mut full = vec!["enumerate"];
    full.extend_from_slice(args);
    let o = tits(&full);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    serde_json::from_str::<Vec<Value>>(&stdout(&o)).unwrap()
}

#[test]
fn enumerate_counts() {
    assert_eq!(enumerate_json(&["--type", "E8", "--prime", "5"]).len(), 2);
    assert_eq!(enumerate_json(&["--type", "B", "--rank", "4", "--prime", "2"]).len(), 5);
    let a5 = enumerate_json(&["--type", "A", "--rank", "5", "--prime", "3"]);
    let dist: Vec<&Value> = a5.iter().map(|v| &v["distinguished"]).collect();
    assert_eq!(a5.len(), 2);
    assert_eq!(dist[0], &serde_json::json!([[1], [2], [3], [4], [5]]));
    assert_eq!(dist[1], &serde_json::json!([[3]]));
}

#[test]
fn enumerate_text_lists_pictures() {
    let o = tits(&["enumerate", "--type", "G2", "--prime", "2", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("(o)≡(o)"), "{text}");
    assert!(text.contains("o≡o"), "{text}");
}

#[test]
fn exit_codes() {
    assert_eq!(tits(&["enumerate", "--type", "E8"]).status.code(), Some(2));
    assert_eq!(tits(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(tits(&["--help"]).status.code(), Some(0));
    let bad = tits(&["enumerate", "--type", "E8", "--prime", "4"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stderr(&bad).starts_with("error:"));
    let outer = tits(&["enumerate", "--type", "2E6", "--prime", "3"]);
    assert_eq!(outer.status.code(), Some(1));
}

#[test]
fn enumerate_output_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for (ty, rank, p) in [("E7", "7", "2"), ("2D", "6", "2"), ("2A", "7", "2"), ("1E6", "6", "3"), ("3D4", "4", "3")] {
        for (i, doc) in enumerate_json(&["--type", ty, "--rank", rank, "--prime", p]).iter().enumerate() {
            let text = serde_json::to_string(doc).unwrap();
            let file = write(dir.path(), &format!("{ty}-{i}.json"), &text);
            let v = tits(&["validate", &file, "--prime", p]);
            assert_eq!(v.status.code(), Some(0), "{}", stderr(&v));
            let once = stdout(&tits(&["render", &file]));
            let again = stdout(&tits_stdin(&["render", "-"], &text));
            assert_eq!(once, again);
            let index = tits::json::parse_indexes(&text).unwrap();
            assert_eq!(serde_json::to_value(tits::json::index_json(&index[0])).unwrap(), *doc);
        }
    }
}

#[test]
fn validate_reports_orbit_violations() {
    let doc = r#"{"schema":"tits-index/1","diagram":{"type":"E","rank":6},"t":2,
        "orbits":[[1,5],[2,4],[3],[6]],"distinguished":[[1]]}"#;
    let o = tits_stdin(&["validate", "-"], doc);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not an orbit"), "{}", stderr(&o));
}

#[test]
fn validate_rejects_inadmissible_index() {
    let doc = r#"{"schema":"tits-index/1","diagram":{"type":"E","rank":6},"t":1,
        "orbits":[[1],[2],[3],[4],[5],[6]],"distinguished":[[3],[6]]}"#;
    assert_eq!(tits_stdin(&["validate", "-"], doc).status.code(), Some(0));
    assert_eq!(tits_stdin(&["validate", "-", "--prime", "3"], doc).status.code(), Some(0));
    assert_eq!(tits_stdin(&["validate", "-", "--prime", "2"], doc).status.code(), Some(1));
}

#[test]
fn schema_errors_name_the_field() {
    let o = tits_stdin(&["validate", "-"], r#"{"schema":"tits-index/1","diagram":{"type":"E","rank":6}}"#);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("`t`"), "{}", stderr(&o));
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"family":"F4","g4":{"group":[3],"coords":[1]}}"#);
    let o = tits(&["profile", &bad, "--prime", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("g4"), "{}", stderr(&o));
}

#[test]
fn render_formats() {
    let doc = r#"{"schema":"tits-index/1","diagram":{"type":"G","rank":2},"t":1,
        "orbits":[[1],[2]],"distinguished":[]}"#;
    assert_eq!(stdout(&tits_stdin(&["render", "-"], doc)), "o≡o\n");
    assert_eq!(stdout(&tits_stdin(&["render", "-", "--ascii-only"], doc)), "o###o\n");
    let svg = stdout(&tits_stdin(&["render", "-", "--format", "svg"], doc));
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"), "{svg}");
    let tikz = stdout(&tits_stdin(&["render", "-", "--format", "tikz"], doc));
    assert!(tikz.contains("\\begin{scope}"));
}

const F4_G: &str = r#"{"family":"F4","f3":{"group":[2],"coords":[1],"is_symbol":true},
    "f5":{"group":[2],"coords":[1],"is_symbol":true},"g3":{"group":[3],"coords":[1],"is_symbol":true}}"#;
const F4_H: &str = r#"{"family":"F4","f3":{"group":[2],"coords":[1],"is_symbol":true},
    "f5":{"group":[2],"coords":[1],"is_symbol":true},"g3":{"group":[3],"coords":[-1],"is_symbol":true}}"#;

#[test]
fn equiv_f4_worked_example() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.json", F4_G);
    let h = write(dir.path(), "h.json", F4_H);
    let o = tits(&["equiv", &g, &h, "--all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "equivalent");
    let o = tits(&["equiv", &g, &h, "--prime", "3"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["prime"], 3);
    assert_eq!(v["citations"], serde_json::json!(["Prop. ht1", "Cor. ht1.me"]));
}

#[test]
fn equiv_e7_mod3_verdict_shape() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", r#"{"family":"E7","b":{"group":[3],"coords":[1]}}"#);
    let b = write(dir.path(), "b.json", r#"{"family":"E7","b":{"group":[3],"coords":[2]}}"#);
    let o = tits(&["equiv", &a, &b, "--prime", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        v,
        serde_json::json!({"prime":3,"verdict":"equivalent","criterion":"E7_mod3_pm_b","citations":["Table E7.3"]})
    );
    let o = tits(&["equiv", &a, &b, "--prime", "2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("criterion_unavailable"));
    assert!(stderr(&o).contains("criterion_unavailable"));
    assert_eq!(tits(&["equiv", &a, &b]).status.code(), Some(2));
    assert_eq!(tits(&["equiv", &a, &b, "--all", "--prime", "3"]).status.code(), Some(2));
}

#[test]
fn profile_and_constraints_commands() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.json", r#"{"family":"E7","b":{"group":[3],"coords":[1]}}"#);
    let o = tits(&["profile", &f, "--prime", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("\"determined\""), "{}", stdout(&o));
    let idx = write(
        dir.path(),
        "i.json",
        r#"{"schema":"tits-index/1","diagram":{"type":"E","rank":7},"t":1,
            "orbits":[[1],[2],[3],[4],[5],[6],[7]],"distinguished":[[6]]}"#,
    );
    let o = tits(&["constraints", &idx, "--prime", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("b != 0"), "{}", stdout(&o));
}

#[test]
fn tables_are_byte_stable_and_include_table_1() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for d in [&a, &b] {
        assert_eq!(tits(&["tables", "--out", d.path().to_str().unwrap()]).status.code(), Some(0));
    }
    let mut names: Vec<_> = std::fs::read_dir(a.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names.len(), 10);
    for name in &names {
        assert_eq!(std::fs::read(a.path().join(name)).unwrap(), std::fs::read(b.path().join(name)).unwrap());
    }
    let t1: Value = serde_json::from_str(&std::fs::read_to_string(a.path().join("table_1.json")).unwrap()).unwrap();
    let e8 = t1["rows"].as_array().unwrap().iter().find(|r| r["type"] == "E_8").unwrap();
    assert_eq!(e8["primes"], serde_json::json!([2, 3, 5]));
}

#[test]
fn rules_override_via_env_and_flag() {
    let dir = tempfile::tempdir().unwrap();
    let mut rj = tits::rules::to_json(&tits_core::RuleSet::builtin());
    rj.classical.inner_d_full_rank = "both_forks".into();
    let path = write(dir.path(), "rules.json", &tits::json::pretty(&rj));
    let count = |o: Output| serde_json::from_str::<Vec<Value>>(&stdout(&o)).unwrap().len();
    let args = ["enumerate", "--type", "1D", "--rank", "4", "--prime", "2"];
    let base = count(tits(&args));
    let mut with_flag = vec!["--rules", path.as_str()];
    with_flag.extend_from_slice(&args);
    let flagged = tits(&with_flag);
    assert_eq!(flagged.status.code(), Some(0), "{}", stderr(&flagged));
    let env = Command::new(env!("CARGO_BIN_EXE_tits")).args(args).env("TITS_RULES", &path).output().unwrap();
    assert_eq!(count(flagged), count(env));
    assert!(base > 0);

    let broken = write(dir.path(), "broken.json", r#"{"schema":"tits-rules/1"}"#);
    let o = tits(&["--rules", &broken, "enumerate", "--type", "E8", "--prime", "5"]);
    assert_eq!(o.status.code(), Some(1));
}
