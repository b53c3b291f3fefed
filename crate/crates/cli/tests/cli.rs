use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn leibniz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leibniz")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn info_reports_perfectness() {
    let o = leibniz(&["info", path(&data("ex51ii.alg"))]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("perfect: true, dim [L^2] = 5\n"));
}

#[test]
fn validate_exit_codes() {
    assert_eq!(leibniz(&["validate", path(&data("ab33.alg"))]).status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.alg");
    std::fs::write(&bad, "field Q\narity 2\ndim 2\n[e1,e2] = e1\n[e2,e1] = e2\n").unwrap();
    let o = leibniz(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("fundamental_identity: fails"));
}

#[test]
fn parse_and_budget_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("field Q\narity 2\ndim 2\n[e1,e3] = e1\n", "line 4"),
        ("field Q\narity 2\ndim 2\n[e1,e2] = e1\n[e1,e2] = e2\n", "line 5"),
        ("field GF 4\narity 2\ndim 1\n", "line 1"),
        ("field Q\narity 2\ndim 2\n[e1,e2] = 2*e1 +\n", "line 4"),
    ];
    for (k, (text, line)) in cases.iter().enumerate() {
        let f = dir.path().join(format!("{k}.alg"));
        std::fs::write(&f, text).unwrap();
        let o = leibniz(&["validate", f.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(3), "{text}");
        assert!(String::from_utf8_lossy(&o.stderr).contains(line), "{text}");
    }
    let o = leibniz(&["--budget", "10", "uf", path(&data("ex51i.alg")), "--p", "5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_mirrors_text() {
    let commands: [Vec<&str>; 5] = [
        vec!["info", "ex51iii.alg"],
        vec!["uce", "sl2k2.alg"],
        vec!["phi", "ex51iii.alg", "--p", "5"],
        vec!["diagrams", "ex22v.alg", "--p", "5", "--q", "9"],
        vec!["xmod-check", "ex22v_e1.xmod"],
    ];
    for cmd in commands {
        let file = data(cmd[1]);
        let mut args = vec![cmd[0], path(&file)];
        args.extend(&cmd[2..]);
        let text = stdout(&leibniz(&args));
        let mut jargs = vec!["--json"];
        jargs.extend(&args);
        let json: Value = serde_json::from_str(&stdout(&leibniz(&jargs))).unwrap();
        for line in text.lines().filter(|l| !l.contains(", ")) {
            let (key, value) = line.split_once(": ").unwrap();
            let j = &json[key];
            let rendered = j.as_str().map_or_else(|| j.to_string(), str::to_string);
            assert_eq!(rendered, value, "{cmd:?} {key}");
        }
        assert_eq!(json["passed"], Value::Bool(true), "{cmd:?}");
    }
}

#[test]
fn output_is_deterministic() {
    for args in [vec!["corpus"], vec!["--json", "corpus", "--seed", "5"], vec!["df", "ex51iii.alg", "--p", "2"]] {
        let file = data("ex51iii.alg");
        let args: Vec<&str> = args.iter().map(|a| if a.ends_with(".alg") { path(&file) } else { a }).collect();
        assert_eq!(leibniz(&args).stdout, leibniz(&args).stdout, "{args:?}");
    }
    let a = stdout(&leibniz(&["corpus", "--seed", "1"]));
    let b = stdout(&leibniz(&["corpus", "--seed", "2"]));
    assert!(a.contains("(seed 1)") && b.contains("(seed 2)"));
}

#[test]
fn transforms_write_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("u.alg");
    let o = leibniz(&["uf", path(&data("ex51ii.alg")), "--p", "3", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let written = std::fs::read_to_string(&out).unwrap();
    assert_eq!(written.lines().filter(|l| l.starts_with('[')).count(), 20);
    let v = leibniz(&["validate", out.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0));
    let lie = stdout(&leibniz(&["liezation", path(&data("ex51ii.alg"))]));
    assert!(lie.contains("dim 3\n"));
}

#[test]
fn non_perfect_uce_fails() {
    let o = leibniz(&["uce", path(&data("ex22v.alg"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not perfect"));
}
