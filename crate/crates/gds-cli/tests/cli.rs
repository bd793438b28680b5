//! End-to-end tests of the `gds` binary: the documented invocations, JSON
//! canonicalization, exit codes and the fusion cache.

use std::process::Command;

fn gds(args: &[&str]) -> (String, String, Option<i32>) {
    let out = Command::new(env!("CARGO_BIN_EXE_gds"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
        out.status.code(),
    )
}

#[test]
fn decompose_doty_henke_json() {
    let (stdout, _, code) = gds(&[
        "decompose", "--type", "A1", "--ell", "5", "--case", "modular", "--simple", "7",
        "--simple", "8", "--json",
    ]);
    assert_eq!(code, Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["type"], "A1");
    assert_eq!(v["complete"], true);
    let summands = v["summands"].as_array().unwrap();
    assert_eq!(summands.len(), 4);
    // the generic summand J((1,2)) prints first (largest gfd)
    assert_eq!(summands[0]["gfd"], 2);
    assert_eq!(summands[0]["label"]["kind"], "jmod");
}

#[test]
fn fusion_text_output() {
    let (stdout, _, code) = gds(&["fusion", "--type", "A1", "--ell", "5", "--lhs", "2", "--rhs", "2"]);
    assert_eq!(code, Some(0));
    assert_eq!(stdout.trim(), "0:1 2:1");
}

#[test]
fn alcove_length_of_dominant_translation() {
    let (stdout, _, code) =
        gds(&["alcove", "--type", "A2", "--ell", "5", "--length", "t:(1,1)"]);
    assert_eq!(code, Some(0));
    assert_eq!(stdout.trim(), "4");
}

#[test]
fn json_round_trips_byte_identically() {
    let (stdout, _, _) = gds(&[
        "regular-part", "--type", "A2", "--ell", "5", "--case", "quantum", "--x", "u", "--y",
        "u", "--json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    for s in v["summands"].as_array().unwrap() {
        let label = &s["label"];
        let parsed = gds::ModuleLabel::from_json(label).unwrap();
        assert_eq!(parsed.to_json().to_string(), label.to_string());
    }
}

#[test]
fn engine_errors_exit_one_with_structured_name() {
    // non-dominant element: t_(-1) ∙ 0 is not dominant
    let (_, stderr, code) = gds(&[
        "generic-summand", "--type", "A1", "--ell", "5", "--x", "t:(-1)", "--y", "t:(1)",
    ]);
    assert_eq!(code, Some(1));
    assert!(stderr.contains("dominance-error"), "stderr: {stderr}");
    // ell below the Coxeter number
    let (_, stderr, code) = gds(&["fusion", "--type", "A2", "--ell", "2", "--lhs", "(0,0)", "--rhs", "(0,0)"]);
    assert_eq!(code, Some(1));
    assert!(stderr.contains("unsupported-ell"), "stderr: {stderr}");
}

#[test]
fn usage_errors_exit_two() {
    let (_, _, code) = gds(&["decompose", "--type", "A1"]);
    assert_eq!(code, Some(2));
    let (_, _, code) = gds(&["no-such-command"]);
    assert_eq!(code, Some(2));
}

#[test]
fn quantum_even_ell_warns_but_runs() {
    let (stdout, stderr, code) =
        gds(&["fusion", "--type", "A1", "--ell", "4", "--case", "quantum", "--lhs", "1", "--rhs", "1"]);
    assert_eq!(code, Some(0));
    assert!(stderr.contains("warning"));
    assert_eq!(stdout.trim(), "0:1 2:1");
}

#[test]
fn fusion_cache_is_transparent() {
    let dir = std::env::temp_dir().join(format!("gds-cache-test-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_gds"))
            .args(["fusion", "--type", "A2", "--ell", "5", "--lhs", "(1,0)", "--rhs", "(0,1)"])
            .env("GDS_CACHE_DIR", &dir)
            .output()
            .unwrap();
        String::from_utf8_lossy(&out.stdout).into_owned()
    };
    let first = run();
    // a cache file now exists; a second run must produce identical output
    let entries: Vec<_> = std::fs::read_dir(&dir).unwrap().collect();
    assert!(!entries.is_empty());
    let second = run();
    assert_eq!(first, second);
    // and the no-cache output is the same as well
    let (bare, _, _) =
        gds(&["fusion", "--type", "A2", "--ell", "5", "--lhs", "(1,0)", "--rhs", "(0,1)"]);
    assert_eq!(first, bare);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn selftest_subset_smoke() {
    // run the cheap structural criterion through the CLI harness indirectly:
    // `selftest --jobs 4` is exercised in full by the acceptance suite; here
    // we only check the flag parses and the output format is stable.
    let (stdout, _, _) = gds(&["selftest", "--help"]);
    assert!(stdout.contains("--jobs"));
}

#[test]
fn character_of_simple_module() {
    let (stdout, _, code) =
        gds(&["character", "--type", "A1", "--ell", "5", "--simple", "13"]);
    assert_eq!(code, Some(0));
    assert!(stdout.starts_with("dimension 12"));
    // weight multiplicities are printed sorted
    let lines: Vec<&str> = stdout.lines().skip(1).collect();
    assert_eq!(lines.first(), Some(&"-13: 1"));
    assert_eq!(lines.last(), Some(&"13: 1"));
}
