//! CLI acceptance: criterion 8 (reports are byte-identical across thread
//! counts, timing excluded) plus cache correctness and exit-code contracts.

use std::fs;
use std::path::Path;
use std::process::Command;

const Z2: &str = r#"{"order": 2, "identity": 0, "table": [[0, 1], [1, 0]], "generators": {"g": 1}}"#;
const U1: &str = r#"{"order": 2, "identity": 0, "table": [[0, 1], [1, 1]], "generators": {"x": 1}}"#;
const Z3: &str =
    r#"{"order": 3, "identity": 0, "table": [[0, 1, 2], [1, 2, 0], [2, 0, 1]], "generators": {"g": 1}}"#;
const LZ1: &str =
    r#"{"order": 3, "identity": 0, "table": [[0, 1, 2], [1, 1, 1], [2, 2, 2]], "generators": {"a": 1, "b": 2}}"#;
const GRAPH01: &str = r#"{"vertices": ["v0"], "edges": [], "labels": {"v0": [0, 1]}}"#;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_monoidkit"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("stdout is UTF-8"),
        String::from_utf8(out.stderr).expect("stderr is UTF-8"),
    )
}

/// Drop the one timing field; everything else must be byte-identical.
fn strip_wall(report: &str) -> String {
    report
        .lines()
        .filter(|line| !line.contains("\"wall_ms\""))
        .collect::<Vec<_>>()
        .join("\n")
}

fn write_fixtures(dir: &Path) {
    for (name, text) in [
        ("z2.json", Z2),
        ("u1.json", U1),
        ("z3.json", Z3),
        ("lz1.json", LZ1),
        ("graph01.json", GRAPH01),
        ("Y.json", "[1]"),
        ("N.json", "[0, 1]"),
        ("A.json", "[0]"),
        ("B.json", "[0]"),
        ("C.json", "[1]"),
    ] {
        fs::write(dir.join(name), text).expect("fixture writes");
    }
}

#[test]
fn criterion_8_reports_are_byte_identical_across_thread_counts() {
    let tmp = tempfile::tempdir().expect("tempdir");
    write_fixtures(tmp.path());
    let p = |name: &str| tmp.path().join(name).display().to_string();
    let dot = p("z2.dot");
    let lib = p("lib");

    let surface: Vec<Vec<String>> = vec![
        vec!["analyze".into(), "--monoid".into(), p("z2.json")],
        vec!["analyze".into(), "--monoid".into(), p("u1.json"), "--dot".into(), dot.clone()],
        vec!["expand".into(), "--monoid".into(), p("z2.json")],
        vec!["expand".into(), "--monoid".into(), p("u1.json"), "--iterate".into(), "2".into()],
        vec![
            "pointlikes".into(), "--monoid".into(), p("z3.json"),
            "--maximal".into(), "--idempotent".into(),
        ],
        vec![
            "stable-pairs".into(), "--monoid".into(), p("z2.json"), "--variety".into(), "A".into(),
            "--decide".into(), r#"{"Y": [1], "N": [0, 1]}"#.into(),
        ],
        vec![
            "stable-pairs".into(), "--monoid".into(), p("z2.json"), "--variety".into(), "M".into(),
            "--decide".into(), p("Y.json"), p("N.json"),
        ],
        vec![
            "stable-pairs".into(), "--monoid".into(), p("lz1.json"), "--variety".into(), "A".into(),
            "--maximal".into(),
        ],
        vec![
            "stable-pairs".into(), "--monoid".into(), p("z2.json"), "--variety".into(), "M".into(),
            "--maximal".into(),
        ],
        vec![
            "triples".into(), "--monoid".into(), p("u1.json"),
            "--decide".into(), r#"{"A": [0], "B": [0], "C": [1]}"#.into(),
        ],
        vec![
            "triples".into(), "--monoid".into(), p("u1.json"),
            "--decide".into(), p("A.json"), p("B.json"), p("C.json"),
        ],
        vec!["triples".into(), "--monoid".into(), p("lz1.json"), "--maximal".into()],
        vec![
            "inevitable".into(), "--monoid".into(), p("z2.json"),
            "--graph".into(), p("graph01.json"), "--sweep".into(),
        ],
        vec![
            "inevitable".into(), "--monoid".into(), p("z2.json"),
            "--graph".into(), p("graph01.json"), "--sweep".into(),
            "--variety".into(), "M".into(),
        ],
        vec!["gen-library".into(), "--max-order".into(), "3".into(), "--out".into(), lib.clone()],
    ];

    for args in &surface {
        let mut one: Vec<&str> = args.iter().map(|s| s.as_str()).collect();
        one.extend(["--threads", "1"]);
        let (code1, out1, err1) = run(&one);
        let dot1 = fs::read_to_string(&dot).ok();
        let index1 = fs::read_to_string(Path::new(&lib).join("index.json")).ok();

        let mut four: Vec<&str> = args.iter().map(|s| s.as_str()).collect();
        four.extend(["--threads", "4"]);
        let (code4, out4, _) = run(&four);
        let dot4 = fs::read_to_string(&dot).ok();
        let index4 = fs::read_to_string(Path::new(&lib).join("index.json")).ok();

        assert_eq!(code1, 0, "`{}` failed: {err1}", args.join(" "));
        assert_eq!(code4, 0, "`{}` failed with 4 threads", args.join(" "));
        assert_eq!(
            strip_wall(&out1),
            strip_wall(&out4),
            "`{}` reports differ across thread counts",
            args.join(" ")
        );
        assert_eq!(dot1, dot4, "dot export differs across thread counts");
        assert_eq!(index1, index4, "library index differs across thread counts");
    }
    println!("criterion 8: PASS ({} invocations byte-identical)", surface.len());
}

#[test]
fn cached_closures_equal_recomputed_ones() {
    let tmp = tempfile::tempdir().expect("tempdir");
    write_fixtures(tmp.path());
    let monoid = tmp.path().join("z3.json").display().to_string();
    let cache = tmp.path().join("cache").display().to_string();

    let plain = ["pointlikes", "--monoid", &monoid, "--maximal", "--idempotent"];
    let cached = [
        "pointlikes", "--monoid", &monoid, "--maximal", "--idempotent", "--cache", &cache,
    ];
    let (c0, out0, _) = run(&plain);
    let (c1, out1, _) = run(&cached);
    let (c2, out2, err2) = run(&cached);
    assert_eq!((c0, c1, c2), (0, 0, 0));
    assert_eq!(strip_wall(&out0), strip_wall(&out1), "cold cache changed the report");
    assert_eq!(strip_wall(&out1), strip_wall(&out2), "cache hit changed the report");
    assert!(err2.contains("reusing stored closure"), "second run should hit the cache");

    // a corrupt entry is a miss, not an error
    let entry = fs::read_dir(&cache)
        .expect("cache dir exists")
        .next()
        .expect("cache has an entry")
        .expect("entry reads")
        .path();
    fs::write(&entry, "not json").expect("corruption writes");
    let (c3, out3, _) = run(&cached);
    assert_eq!(c3, 0);
    assert_eq!(strip_wall(&out1), strip_wall(&out3), "recovery changed the report");

    // the directory can also come from the environment
    let out_env = Command::new(env!("CARGO_BIN_EXE_monoidkit"))
        .args(plain)
        .env("MONOIDKIT_CACHE", &cache)
        .output()
        .expect("binary runs");
    assert!(out_env.status.success());
    let stderr = String::from_utf8(out_env.stderr).expect("stderr is UTF-8");
    assert!(stderr.contains("reusing stored closure"), "env-configured cache should hit");
}

#[test]
fn exit_codes_separate_input_errors_from_resource_caps() {
    let tmp = tempfile::tempdir().expect("tempdir");
    write_fixtures(tmp.path());
    let z2 = tmp.path().join("z2.json").display().to_string();

    let (code, out, err) = run(&["pointlikes", "--monoid", "no_such_file.json"]);
    assert_eq!(code, 1);
    assert!(out.is_empty(), "failed runs must not print a report");
    assert!(err.contains("monoid:"), "diagnostic should name the field: {err}");

    let (code, out, err) = run(&["expand", "--monoid", &z2, "--cap", "2"]);
    assert_eq!(code, 2, "a tripped cap is a resource exit");
    assert!(out.is_empty());
    assert!(err.contains("cap"), "diagnostic should mention the cap: {err}");

    let (code, _, err) = run(&[
        "triples", "--monoid", &z2, "--decide", r#"{"A": [9], "B": [0], "C": [0]}"#,
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("A:"), "diagnostic should name the component: {err}");

    let (code, _, err) = run(&[
        "stable-pairs", "--monoid", &z2, "--variety", "M",
        "--decide", r#"{"Y": [0, 1], "N": [0]}"#,
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("Y:"), "diagnostic should name the component: {err}");

    // verdict false is still a computed result
    let (code, out, _) = run(&[
        "stable-pairs", "--monoid", &z2, "--variety", "M",
        "--decide", r#"{"Y": [1], "N": [0, 1]}"#,
    ]);
    assert_eq!(code, 0, "a false verdict is not an error");
    assert!(out.contains("\"verdict\": false"));
}
