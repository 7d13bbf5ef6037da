use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_vvhecke");
const CAPS: [&str; 6] = ["--seed", "7", "--samples", "60", "--max-ydeg", "1"];

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn config(name: &str) -> String {
    root().join("configs").join(format!("{name}.json")).display().to_string()
}

fn vvhecke(args: &[&str], workers: &str) -> Output {
    Command::new(BIN).args(args).env("VVHECKE_WORKERS", workers).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

/// Every suite that applies to a shipped configuration.
const GOLDEN: &[(&str, &[&str])] = &[
    ("coherence_f5", &["validate", "relations", "pbw", "decompose", "orbits"]),
    ("free_zero", &["validate", "relations", "pbw", "typed"]),
    ("mixed_gamma", &["validate", "relations", "pbw"]),
    ("pair_zero", &["validate", "relations", "pbw", "typed", "cyclo"]),
    ("pair_zero_n3", &["validate", "relations", "pbw", "typed"]),
    ("pair_zero_n4", &["validate", "pbw"]),
    ("path_a", &["validate", "relations", "pbw"]),
    ("split_a", &["validate", "relations", "pbw", "decompose", "cyclo", "orbits"]),
    ("split_b", &["validate", "relations", "pbw", "decompose", "orbits"]),
    ("split_zero", &["validate", "relations", "pbw", "decompose", "typed", "cyclo", "orbits"]),
];

const GOLDEN_ARGS: &[(&str, &[&str])] = &[
    ("coxeter.max_rank_4", &["coxeter", "--max-rank", "4"]),
    ("classify.f17_b", &["classify", "--char", "17", "--q", "2", "--p", "3", "--x", "3"]),
    ("classify.f13_d_sweep", &["classify", "--char", "13", "--mode", "d", "--sweep"]),
];

/// Compares `got` with `tests/golden/{name}`, or rewrites the file when `UPDATE_GOLDEN=1`.
fn golden(name: &str, got: &str, mismatches: &mut Vec<String>) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var("UPDATE_GOLDEN").as_deref() == Ok("1") {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, got).unwrap();
        return;
    }
    match std::fs::read_to_string(&path) {
        Ok(want) if want == got => {}
        Ok(_) => mismatches.push(format!("{name}: output differs")),
        Err(e) => mismatches.push(format!("{name}: {e}")),
    }
}

#[test]
fn reports_match_golden_files() {
    let mut mismatches = Vec::new();
    for (cfg, suites) in GOLDEN {
        let path = config(cfg);
        for suite in *suites {
            let mut args = CAPS.to_vec();
            args.extend([*suite, path.as_str()]);
            let out = vvhecke(&args, "2");
            assert_eq!(out.status.code(), Some(0), "{cfg} {suite}: {}", stderr(&out));
            golden(&format!("{cfg}.{suite}.json"), &stdout(&out), &mut mismatches);
        }
    }
    for (name, extra) in GOLDEN_ARGS {
        let mut args = CAPS.to_vec();
        args.extend(extra.iter());
        let out = vvhecke(&args, "2");
        assert_eq!(out.status.code(), Some(0), "{name}: {}", stderr(&out));
        golden(&format!("{name}.json"), &stdout(&out), &mut mismatches);
    }
    let out = vvhecke(&[&CAPS[..], &["--format", "text", "relations", &config("pair_zero")]].concat(), "2");
    golden("pair_zero.relations.txt", &stdout(&out), &mut mismatches);
    assert!(mismatches.is_empty(), "{mismatches:#?}");
}

#[test]
fn worker_count_does_not_change_bytes() {
    let path = config("split_zero");
    for suite in ["pbw", "decompose", "typed"] {
        let args = [&CAPS[..], &[suite, path.as_str()]].concat();
        let one = vvhecke(&args, "1");
        let four = vvhecke(&args, "4");
        assert_eq!(one.status.code(), Some(0));
        assert_eq!(stdout(&one), stdout(&four), "{suite}");
    }
}

#[test]
fn relations_on_the_pair_quiver_pass() {
    let out = vvhecke(&["--format", "text", "relations", &config("pair_zero")], "2");
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("PASS  beta(i,k)/psi0square"), "{text}");
    assert!(text.trim_end().ends_with("failed, 0 skipped => PASS"), "{text}");
}

#[test]
fn classify_mod_17_is_case_c() {
    let out = vvhecke(&["--format", "text", "classify", "--char", "17", "--q", "2", "--p", "3", "--x", "3", "--mode", "B"], "1");
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("PASS  case  (c)"));
}

#[test]
fn timing_only_when_requested() {
    let path = config("path_a");
    let plain = stdout(&vvhecke(&["validate", &path], "1"));
    let timed = stdout(&vvhecke(&["--timing", "validate", &path], "1"));
    assert!(!plain.contains("timing_ms"));
    assert!(timed.contains("\"timing_ms\""));
}

#[test]
fn configuration_errors_exit_with_two() {
    let dir = std::env::temp_dir().join(format!("vvhecke-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let broken = dir.join("broken.json");
    std::fs::write(&broken, "{\n  \"name\": \"broken\",\n  \"orbits\": [[\"i\"]\n").unwrap();
    let unknown = dir.join("unknown.json");
    std::fs::write(
        &unknown,
        r#"{"name": "u", "quiver": {"vertices": ["a"]}, "orbits": [["b"]]}"#,
    )
    .unwrap();
    let cases = [
        (broken.display().to_string(), "broken.json:4:0: "),
        (unknown.display().to_string(), "unknown.json:orbits[0][0]: "),
        (config("does_not_exist"), "does_not_exist.json:-: "),
    ];
    for (path, needle) in &cases {
        let out = vvhecke(&["relations", path], "1");
        assert_eq!(out.status.code(), Some(2), "{path}");
        assert!(stderr(&out).contains(needle), "{}", stderr(&out));
        assert!(out.stdout.is_empty());
    }
    let wrong_suite = vvhecke(&["decompose", &config("pair_zero")], "1");
    assert_eq!(wrong_suite.status.code(), Some(2));
    assert!(stderr(&wrong_suite).contains("pair_zero.json:partition: this suite needs a partition"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn argument_errors_exit_with_two() {
    for args in [
        &["coxeter", "--max-rank", "9"][..],
        &["classify", "--char", "15", "--q", "2", "--x", "1", "--p", "3"],
        &["classify", "--char", "17", "--x", "1"],
        &["--format", "yaml", "coxeter"],
        &["frobnicate"],
    ] {
        let out = vvhecke(args, "1");
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
    }
}
