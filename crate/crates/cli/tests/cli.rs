//! End-to-end behaviour of the `moonlab` binary.

#[path = "../../core/tests/support/naive.rs"]
mod naive;

use std::io::Write;
use std::process::{Command, Output, Stdio};

use moonlab_core::trn::parse_trnset;
use moonlab_core::{build_extremal, parse_trn, to_trn};

fn moonlab(args: &[&str], stdin: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_moonlab"));
    cmd.args(args)
        .env_remove("MOONLAB_CACHE_DIR")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    let mut child = cmd.spawn().expect("binary runs");
    let mut input = child.stdin.take().unwrap();
    input.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(input);
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn build_then_count_matches_dfs() {
    let built = moonlab(&["build", "--family", "extremal", "--d", "6", "--n", "9"], None);
    assert_eq!(code(&built), 0);
    let text = stdout(&built);
    assert_eq!(text, to_trn(&build_extremal(6, 9).unwrap()));

    let counted = moonlab(&["count", "-"], Some(&text));
    assert_eq!(code(&counted), 0);
    let c = naive::cycle_counts(&parse_trn(&text).unwrap());
    let map: Vec<String> = (3..=9).map(|l| format!("\"{l}\":{}", c[l])).collect();
    let want = format!(
        "{{\"command\":\"count\",\"result\":{{\"c\":{{{}}},\"n\":9}},\"schema\":\"moonlab/v1\"}}\n",
        map.join(",")
    );
    assert_eq!(stdout(&counted), want);
    assert!(want.contains("\"6\":6,\"7\":6,\"8\":4,\"9\":1"));
}

#[test]
fn trn_round_trip_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for seed in 0..20 {
        let t = naive::random(3 + seed as usize % 6, seed);
        let text = to_trn(&t);
        let path = dir.path().join(format!("t{seed}.trn"));
        std::fs::write(&path, &text).unwrap();
        let out = moonlab(&["count", path.to_str().unwrap(), "--through", "0", "--strong-subs", "--ham-paths"], None);
        assert_eq!(code(&out), 0);
        let json = stdout(&out);
        assert!(json.contains(&format!("\"hamiltonian_paths\":{}", naive::hamiltonian_paths(&t))));
        assert_eq!(to_trn(&parse_trn(&text).unwrap()), text);
    }
}

#[test]
fn csv_census() {
    let tt = moonlab(&["build", "--family", "path", "--n", "6"], None);
    let out = moonlab(&["count", "-", "--format", "csv"], Some(&stdout(&tt)));
    assert_eq!(stdout(&out), "length,c,s\n3,4,4\n4,3,3\n5,2,2\n6,1,1\n");
}

#[test]
fn enumerate_emits_a_parseable_trnset() {
    let out = moonlab(&["enumerate", "--n", "6"], None);
    assert_eq!(code(&out), 0);
    let (n, filter, ts) = parse_trnset(&stdout(&out)).unwrap();
    assert_eq!((n, filter.as_str(), ts.len()), (6, "all", 56));
    let out = moonlab(&["enumerate", "--n", "6", "--diam-eq", "5"], None);
    let (_, filter, ts) = parse_trnset(&stdout(&out)).unwrap();
    assert_eq!((filter.as_str(), ts.len()), ("diam-eq:5", 1));
    let out = moonlab(&["enumerate", "--n", "4", "--strong", "--format", "json"], None);
    assert_eq!(
        stdout(&out),
        "{\"command\":\"enumerate\",\"result\":{\"count\":1,\"filter\":\"strong\",\"n\":4,\"tournaments\":[\"001000\"]},\"schema\":\"moonlab/v1\"}\n"
    );
}

#[test]
fn enumeration_cache_is_reused_and_validated() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let first = moonlab(&["enumerate", "--n", "7", "--strong", "--cache", "--cache-dir", d], None);
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 1);
    let second = moonlab(&["enumerate", "--n", "7", "--strong", "--cache", "--cache-dir", d], None);
    assert_eq!(stdout(&first), stdout(&second));

    // A corrupted cache file is regenerated rather than trusted.
    std::fs::write(&files[0], "TRNSET v1 n=7 filter=all\n").unwrap();
    let third = moonlab(&["enumerate", "--n", "7", "--strong", "--cache", "--cache-dir", d], None);
    assert_eq!(stdout(&third), stdout(&first));
    assert_eq!(std::fs::read_to_string(&files[0]).unwrap(), stdout(&first));

    // The environment variable supplies the default directory.
    let env_dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_moonlab"))
        .args(["enumerate", "--n", "5", "--cache"])
        .env("MOONLAB_CACHE_DIR", env_dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_dir(env_dir.path()).unwrap().count(), 1);
}

#[test]
fn formula_output() {
    let run = |args: &[&str]| stdout(&moonlab(args, None));
    assert_eq!(run(&["formula", "--d", "6", "--n", "9", "--ell", "6"]), "6\n");
    assert_eq!(run(&["formula", "--d", "6", "--n", "9", "--ell", "7"]), "6\n");
    assert_eq!(run(&["formula", "--d", "4", "--n", "9", "--ell", "3"]), "not-covered\n");
    assert_eq!(run(&["formula", "--d", "3", "--n", "8", "--through"]), "4\n");
    assert_eq!(
        run(&["formula", "--d", "6", "--n", "9", "--ell", "9", "--format", "json"]),
        "{\"command\":\"formula\",\"result\":{\"d\":6,\"ell\":9,\"n\":9,\"value\":1},\"schema\":\"moonlab/v1\"}\n"
    );
}

#[test]
fn verify_reports_and_exit_codes() {
    let ok = moonlab(&["verify", "--check", "thm2", "--n", "8"], None);
    assert_eq!(code(&ok), 0);
    assert!(stdout(&ok).contains("\"outcome\":\"verified\""));
    let vac = moonlab(&["verify", "--check", "lem3", "--n", "8"], None);
    assert_eq!(code(&vac), 0);
    assert!(stdout(&vac).contains("\"outcome\":\"verified-vacuous\""));
    let all = moonlab(&["verify", "--all", "--n-max", "5"], None);
    assert_eq!(code(&all), 0);
    assert_eq!(stdout(&all).lines().count(), moonlab_core::verify::REGISTRY.len() * 5);
}

#[test]
fn replay_reports_the_violated_clause() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cex.trn");
    std::fs::write(&path, "9\n000000010000000000000000010010001011\n").unwrap();
    let p = path.to_str().unwrap();
    let out = moonlab(&["verify", "--check", "conj1", "--n", "9", "--d", "5", "--ell", "4", "--replay", p], None);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("\"violated_clause\":\""));
    let out = moonlab(&["verify", "--check", "thmI", "--n", "9", "--replay", p], None);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("\"violated_clause\":null"));
}

#[test]
fn error_exit_codes() {
    let cases: &[(&[&str], Option<&str>, i32)] = &[
        (&["frobnicate"], None, 2),
        (&["build", "--family", "extremal", "--n", "9"], None, 2),
        (&["build", "--family", "douglas", "--d", "6", "--n", "9", "--h", "3,3,1,1"], None, 2),
        (&["verify", "--check", "nope", "--n", "5"], None, 2),
        (&["analyze", "--format", "csv", "-"], Some("3\n111\n"), 2),
        (&["count", "-"], Some("3\n1x1\n"), 3),
        (&["count", "-"], Some("3\n111"), 3),
        (&["count", "/definitely/missing.trn"], None, 3),
        (&["build", "--family", "tt", "--n", "63"], None, 4),
        (&["enumerate", "--n", "11"], None, 4),
        (&["verify", "--check", "thmI", "--n", "11"], None, 4),
        (&["--jobs", "0", "formula", "--d", "6", "--n", "9", "--ell", "6"], None, 2),
    ];
    for (args, stdin, want) in cases {
        let out = moonlab(args, *stdin);
        assert_eq!(code(&out), *want, "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let bad = moonlab(&["count", "-"], Some("3\n1x1\n"));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("line 2, column 2"));
}

#[test]
fn output_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.trn");
    let out = moonlab(&["build", "--family", "hatted", "--kind", "both", "--n", "9", "-o", path.to_str().unwrap()], None);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let t = parse_trn(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(moonlab_core::are_isomorphic(&t, &build_extremal(6, 9).unwrap()).unwrap());
}

#[test]
fn analyze_reports_structure() {
    let built = stdout(&moonlab(&["build", "--family", "path", "--n", "5"], None));
    let out = stdout(&moonlab(&["analyze", "-"], Some(&built)));
    assert!(out.contains("\"diameter\":4"), "{out}");
    assert!(out.contains("\"non_critical\":[0,4]"));
    assert!(out.contains("\"strong\":true"));
    let tt = stdout(&moonlab(&["build", "--family", "tt", "--n", "3"], None));
    let out = stdout(&moonlab(&["analyze", "-"], Some(&tt)));
    assert!(out.contains("\"diameter\":null") && out.contains("\"strong\":false"), "{out}");
}
