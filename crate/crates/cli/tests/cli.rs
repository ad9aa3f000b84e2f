use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use starpcg::format::to_graph6;
use starpcg::json::witness_from_annotated;
use starpcg::{verify, Graph};
use starpcg_cli::{run_cli, EXIT_INVALID, EXIT_OK, EXIT_USAGE};
use tempfile::TempDir;

const P4_WITNESS: &str = r#"{"n":4,"edges":[[0,1],[1,2],[2,3]],"weights":{"0":"2","1":"4","2":"1","3":"10"},"intervals":[["5","11"]]}"#;

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> (i32, String) {
    run_cli(args.iter().copied())
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_path_reports_gamma_and_witness() {
    let dir = TempDir::new().unwrap();
    let g6 = to_graph6(&Graph::path(4).unwrap()).unwrap();
    let f = write(&dir, "path4.g6", &g6);
    let (code, out) = run(&["solve", "--graph", s(&f)]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("gamma: 1"));
    assert!(out.contains("threshold number upper bound: 2"));
    let w = witness_from_annotated(&out).unwrap();
    assert_eq!(w.graph(), &Graph::path(4).unwrap());
    assert!(verify(&w).valid);
}

#[test]
fn solve_at_fixed_k_and_mode() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "p4.el", "n 4\n0 1\n1 2\n2 3\n");
    let (code, out) = run(&["solve", "--graph", s(&f), "--k", "1", "--mode", "left-free"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("infeasible"));
    assert!(out.contains("\"nodes_explored\""));

    let f = write(&dir, "c5.el", "n 5\n0 1\n1 2\n2 3\n3 4\n4 0\n");
    let (code, out) = run(&["solve", "--graph", s(&f), "--threads", "2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("gamma: 2"));
    assert!(out.contains("threshold number upper bound: 4"));
}

#[test]
fn solve_edgeless_notes_convention() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "e.el", "n 3\n");
    let (code, out) = run(&["solve", "--graph", s(&f)]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("gamma: 1"));
    assert!(out.contains("0 intervals"));
}

#[test]
fn format_flag_overrides_extension() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "graph.data", "n 2\n0 1\n");
    let (code, _) = run(&["solve", "--graph", s(&f), "--format", "edge-list"]);
    assert_eq!(code, EXIT_OK);
    let (code, out) = run(&["solve", "--graph", s(&f), "--format", "graph6"]);
    assert_eq!(code, EXIT_USAGE, "{out}");
}

#[test]
fn verify_known_witness_and_a_broken_one() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "w.json", P4_WITNESS);
    let (code, out) = run(&["verify", "--witness", s(&f)]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "valid");

    let broken = P4_WITNESS.replace(r#"["5","11"]"#, r#"["5","10"]"#);
    let f = write(&dir, "bad.json", &broken);
    let (code, out) = run(&["verify", "--witness", s(&f)]);
    assert_eq!(code, EXIT_INVALID);
    assert!(out.starts_with("invalid"));
}

#[test]
fn complement_of_p4_uses_two_intervals() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "w.json", P4_WITNESS);
    let (code, out) = run(&["op", "complement", "--witness", s(&f)]);
    assert_eq!(code, EXIT_OK, "{out}");
    let w = witness_from_annotated(&out).unwrap();
    assert_eq!(w.graph(), &Graph::path(4).unwrap().complement());
    assert_eq!(w.k(), 2);
    assert!(out.contains("verification: valid"));
}

#[test]
fn every_operation_emits_a_valid_witness() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "w.json", P4_WITNESS);
    let cases: [&[&str]; 6] = [
        &["op", "isolated"],
        &["op", "universal"],
        &["op", "pendant", "--anchors", "0,3"],
        &["op", "false-twin", "--vertex", "1", "--count", "2"],
        &["op", "true-twin", "--vertex", "2"],
        &["op", "complement"],
    ];
    for args in cases {
        let mut argv = args.to_vec();
        argv.extend(["--witness", s(&f)]);
        let (code, out) = run(&argv);
        assert_eq!(code, EXIT_OK, "{args:?}: {out}");
        assert!(out.contains("case: "), "{args:?}");
        assert!(verify(&witness_from_annotated(&out).unwrap()).valid);
    }
    let (code, _) = run(&["op", "true-twin", "--witness", s(&f)]);
    assert_eq!(code, EXIT_USAGE);
    let (code, _) = run(&["op", "pendant", "--witness", s(&f), "--anchors", "9"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn construct_output_verifies() {
    let dir = TempDir::new().unwrap();
    let spider = write(&dir, "spider.el", "n 7\n0 1\n1 2\n0 3\n3 4\n0 5\n5 6\n");
    let runs: Vec<Vec<String>> = vec![
        vec!["construct".into(), "path".into(), "--n".into(), "9".into()],
        vec![
            "construct".into(),
            "caterpillar".into(),
            "--n".into(),
            "5".into(),
        ],
        vec![
            "construct".into(),
            "lobster".into(),
            "--graph".into(),
            s(&spider).into(),
        ],
        vec![
            "construct".into(),
            "forest".into(),
            "--graph".into(),
            s(&spider).into(),
        ],
    ];
    for (i, mut argv) in runs.into_iter().enumerate() {
        let out_file = dir.path().join(format!("out{i}.json"));
        argv.extend([
            "--output".into(),
            s(&out_file).into(),
            "--integerize".into(),
        ]);
        let (code, out) = run_cli(argv.clone());
        assert_eq!(code, EXIT_OK, "{argv:?}: {out}");
        let (code, text) = run(&["verify", "--witness", s(&out_file)]);
        assert_eq!(code, EXIT_OK, "{argv:?}: {text}");
        let w = witness_from_annotated(&fs::read_to_string(&out_file).unwrap()).unwrap();
        assert!(w.weights().iter().all(|x| x.is_integer()));
    }
    let (code, _) = run(&["construct", "caterpillar", "--graph", s(&spider)]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn transforms_and_classification() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "w.json", P4_WITNESS);
    let (code, out) = run(&["classify", "--witness", s(&f)]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("free_class: not_free"));
    assert!(out.contains("normal_form: yes"));

    for sub in ["mirror", "normalize", "canonicalize"] {
        let (code, out) = run(&[sub, "--witness", s(&f)]);
        assert_eq!(code, EXIT_OK, "{sub}: {out}");
        assert_eq!(witness_from_annotated(&out).unwrap().k(), 1);
    }
    let (code, _) = run(&["mirror", "--witness", s(&f), "--center", "3"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn census_of_four_vertices() {
    let (code, out) = run(&["census", "--n", "4"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("graphs: 64"));
    assert!(out.contains("complement pairs checked: 32"));
    assert!(out.contains("all bounds hold"));
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(
        run(&["verify", "--witness", "x.json", "--bogus"]).0,
        EXIT_USAGE
    );
    assert_eq!(
        run(&["solve", "--graph", "/nonexistent/g.g6"]).0,
        EXIT_USAGE
    );
    assert_eq!(
        run(&["solve", "--graph", "g.g6", "--mode", "middle"]).0,
        EXIT_USAGE
    );
    assert_eq!(run(&["--help"]).0, EXIT_OK);

    let dir = TempDir::new().unwrap();
    let f = write(&dir, "junk.json", "{\"n\": 2}");
    assert_eq!(run(&["verify", "--witness", s(&f)]).0, EXIT_USAGE);
}

#[test]
fn binary_exit_codes() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "c5.el", "n 5\n0 1\n1 2\n2 3\n3 4\n4 0\n");
    let bin = env!("CARGO_BIN_EXE_starpcg");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();

    let out = status(&["solve", "--graph", s(&f)]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&out.stdout).contains("gamma: 2"));

    let out = status(&["solve", "--graph", s(&f), "--budget", "2"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("resource"));

    let out = Command::new(bin)
        .args(["solve", "--graph", s(&f)])
        .env("STARPCG_BUDGET", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));

    let out = status(&["nope"]);
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
}
