use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qreuse::verify::compiled_distance;
use qreuse::{Circuit, CompilationResult};
use tempfile::TempDir;

fn qreuse(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qreuse")).args(args).env_remove("QREUSE_SEED").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn generate(dir: &TempDir, family: &str, args: &[&str]) -> PathBuf {
    let path = dir.path().join(format!("{family}.json"));
    let mut all = vec!["generate", family];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--out", path.to_str().unwrap()]);
    let o = qreuse(&all);
    assert!(o.status.success(), "{}", stderr(&o));
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_exit_codes() {
    let dir = TempDir::new().unwrap();
    let qft = generate(&dir, "qft", &["--n", "4"]);
    let bv = generate(&dir, "bv", &["--n", "4"]);

    let o = qreuse(&["check", s(&qft)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("IRREDUCIBLE"));

    let o = qreuse(&["check", s(&bv), "--method", "dfs"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("REDUCIBLE (method dfs"));

    let o = qreuse(&["check", s(&dir.path().join("missing.json"))]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error:"));
}

#[test]
fn compile_summaries() {
    let dir = TempDir::new().unwrap();
    let simon = generate(&dir, "simon", &["--n", "2"]);
    let out = dir.path().join("out.json");
    let o = qreuse(&["compile", s(&simon), "--algo", "exact", "--out", s(&out)]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "width 4 → 3 (r=0.2500), optimal=true");

    let linear = generate(&dir, "linear", &["--n", "6", "--l", "2"]);
    let o = qreuse(&["compile", s(&linear), "--runs", "10", "--seed", "1", "--out", s(&out)]);
    assert!(stdout(&o).starts_with("width 6 → 3"), "{}", stdout(&o));

    let qft = generate(&dir, "qft", &["--n", "4"]);
    let o = qreuse(&["compile", s(&qft), "--algo", "mrv"]);
    assert!(o.status.success());
    assert!(stderr(&o).contains("no candidate edges"));
    Circuit::parse(&stdout(&o)).unwrap();
}

#[test]
fn compiled_output_reparses_and_verifies() {
    let dir = TempDir::new().unwrap();
    let bv = generate(&dir, "bv", &["--n", "4"]);
    let out = dir.path().join("dynamic.json");
    let o = qreuse(&["compile", s(&bv), "--algo", "exact", "--verify", "--out", s(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("verified"));

    let input = Circuit::from_file(&bv).unwrap();
    let dynamic = Circuit::from_file(&out).unwrap();
    assert_eq!(dynamic.width(), 2);
    let direct = qreuse::optimal_compile(&input, None).unwrap();
    assert_eq!(direct.dynamic_circuit, dynamic);
    let result = CompilationResult { dynamic_circuit: dynamic, ..direct };
    assert!(compiled_distance(&input, &result).unwrap() < 1e-9);
}

#[test]
fn seed_comes_from_the_environment() {
    let dir = TempDir::new().unwrap();
    let c = generate(&dir, "random", &["--n", "8", "--m", "14", "--seed", "5"]);
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_qreuse"));
        cmd.args(["compile", s(&c), "--runs", "1"]).env_remove("QREUSE_SEED");
        if let Some(v) = env {
            cmd.env("QREUSE_SEED", v);
        }
        if let Some(v) = flag {
            cmd.args(["--seed", v]);
        }
        cmd.output().unwrap().stdout
    };
    assert_eq!(run(Some("3"), None), run(None, Some("3")));
}

#[test]
fn generated_widths() {
    let dir = TempDir::new().unwrap();
    for (family, args, width) in [
        ("bv", vec!["--n", "4"], 5),
        ("cluster", vec!["--w", "2", "--d", "3"], 6),
        ("adder", vec!["--k", "2"], 7),
        ("linear", vec!["--n", "5", "--l", "2"], 5),
    ] {
        let path = generate(&dir, family, &args);
        assert_eq!(Circuit::from_file(&path).unwrap().width(), width, "{family}");
    }
    let o = qreuse(&["generate", "cluster", "--w", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn strip_drops_single_qubit_gates() {
    let o = qreuse(&["generate", "bv", "--n", "3", "--strip"]);
    let c = Circuit::parse(&stdout(&o)).unwrap();
    assert!(c.gates().all(|g| g.qubits.len() > 1));
}

#[test]
fn bench_is_deterministic_without_timing() {
    let dir = TempDir::new().unwrap();
    let suite = dir.path().join("suite.json");
    std::fs::write(
        &suite,
        r#"{"entries": [
            {"family": "random", "n_range": [6, 9], "ratio": 1.5, "instances": 3,
             "params": {"seed": 11}, "algos": ["greedy", "dckf", "exact"], "seeds": [0, 1]},
            {"family": "bv", "params": {"n": 4}, "algos": ["mrv"]}
        ]}"#,
    )
    .unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for out in [&a, &b] {
        let o = qreuse(&["bench", s(&suite), "--no-timing", "--out", s(out)]);
        assert!(o.status.success(), "{}", stderr(&o));
        assert!(stderr(&o).contains("greedy vs dckf"));
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    assert_eq!(text.lines().next(), Some(qreuse::bench::FORMAT_LINE));
    // header plus 3 instances x 3 algorithms x 2 seeds plus one mrv row
    assert_eq!(text.lines().count(), 2 + 18 + 1);
}

#[test]
fn empty_suite_writes_only_the_header() {
    let dir = TempDir::new().unwrap();
    let suite = dir.path().join("empty.json");
    std::fs::write(&suite, r#"{"entries": []}"#).unwrap();
    let o = qreuse(&["bench", s(&suite), "--no-timing"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn unknown_suite_fields_are_errors() {
    let dir = TempDir::new().unwrap();
    let suite = dir.path().join("bad.json");
    std::fs::write(&suite, r#"{"entries": [{"family": "bv", "algos": ["mrv"], "colour": 1}]}"#).unwrap();
    assert_eq!(qreuse(&["bench", s(&suite)]).status.code(), Some(2));
}
