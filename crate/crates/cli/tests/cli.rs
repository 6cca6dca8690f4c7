//! End-to-end runs of the binary: output shapes, exit codes, and
//! round-trips between commands.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_unitri"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

#[test]
fn bracket_prints_the_bracket() {
    let out = run(&["bracket", "d1", "x1 d2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_of(&out).trim(), "d2");
}

#[test]
fn bracket_output_reparses_through_other_commands() {
    let out = run(&["bracket", "x1 d2 + d1", "x1^2 d2"]);
    assert_eq!(code(&out), 0);
    let bracket = stdout_of(&out);
    let idx = run(&["ideal-index", bracket.trim(), "--n", "2"]);
    assert_eq!(code(&idx), 0);
    assert_eq!(stdout_of(&idx).trim(), "2");
}

#[test]
fn apply_differentiates() {
    let out = run(&["apply", "x1 d2", "x2^2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_of(&out).trim(), "2 x1 x2");
}

#[test]
fn exp_ad_matches_the_series() {
    let out = run(&["exp-ad", "x1 d2", "d1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_of(&out).trim(), "d1 - d2");
}

#[test]
fn dim_n_prints_the_dimension() {
    let out = run(&["dim-n", "3", "4"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_of(&out).trim(), "31");
}

#[test]
fn basis_lists_every_index_once() {
    let out = run(&["basis", "2", "1"]);
    assert_eq!(code(&out), 0);
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().map(str::trim).collect();
    assert_eq!(lines, ["1:", "2:0", "2:1"]);
}

#[test]
fn act_and_inverse_act_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let sigma = dir.path().join("s.sigma");
    std::fs::write(&sigma, "x2 -> 3 x2 + x1^2\n").unwrap();
    let s = sigma.to_str().unwrap();
    let fwd = run(&["act", "--sigma", s, "d1 + x1 d2"]);
    assert_eq!(code(&fwd), 0);
    let moved = stdout_of(&fwd);
    let back = run(&["act", "--sigma", s, moved.trim(), "--inverse"]);
    assert_eq!(code(&back), 0);
    assert_eq!(stdout_of(&back).trim(), "d1 + x1 d2");
}

#[test]
fn derived_length_of_a_spanned_ideal() {
    let dir = tempfile::tempdir().unwrap();
    let spanners = dir.path().join("sp.txt");
    std::fs::write(&spanners, "d1\nd2\nx1 d2\n").unwrap();
    let out = run(&[
        "derived-length",
        "--spanners",
        spanners.to_str().unwrap(),
        "--budget",
        "1",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_of(&out).trim(), "2");
}

#[test]
fn make_endo_then_verify_certifies() {
    let dir = tempfile::tempdir().unwrap();
    let sigma = dir.path().join("s.sigma");
    let endo = dir.path().join("s.endo");
    std::fs::write(&sigma, "x2 -> x2 + x1^2\nx3 -> 2 x3 + x1 x2\n").unwrap();
    let mk = run(&[
        "make-endo",
        "--sigma",
        sigma.to_str().unwrap(),
        "--level",
        "2",
        "--out",
        endo.to_str().unwrap(),
    ]);
    assert_eq!(code(&mk), 0, "stderr: {}", stderr_of(&mk));
    let check = run(&["check-endo", "--endo", endo.to_str().unwrap()]);
    assert_eq!(code(&check), 0);
    assert!(stdout_of(&check).contains("homomorphism: ok"));
    let verify = run(&["verify", "--endo", endo.to_str().unwrap()]);
    assert_eq!(code(&verify), 0);
    let text = stdout_of(&verify);
    assert!(text.contains("certified automorphism at level 2"));
    assert!(text.contains("x3 -> x1 x2 + 2 x3"));
}

#[test]
fn verify_json_carries_the_same_data() {
    let dir = tempfile::tempdir().unwrap();
    let sigma = dir.path().join("s.sigma");
    let endo = dir.path().join("s.endo");
    std::fs::write(&sigma, "x2 -> x2 + x1^2\n").unwrap();
    let mk = run(&[
        "make-endo",
        "--sigma",
        sigma.to_str().unwrap(),
        "--level",
        "2",
        "--out",
        endo.to_str().unwrap(),
    ]);
    assert_eq!(code(&mk), 0);
    let human = run(&["verify", "--endo", endo.to_str().unwrap()]);
    let json = run(&["verify", "--endo", endo.to_str().unwrap(), "--json"]);
    assert_eq!(code(&json), 0);
    let v: serde_json::Value = serde_json::from_str(stdout_of(&json).trim()).unwrap();
    assert_eq!(v["verdict"]["status"], "certified");
    assert_eq!(v["verdict"]["level"], 2);
    assert_eq!(v["verdict"]["budget"], 1);
    assert_eq!(v["lambdas"], serde_json::json!(["1", "1"]));
    let human_text = stdout_of(&human);
    for line in v["sigma"].as_array().unwrap() {
        assert!(human_text.contains(line.as_str().unwrap()));
    }
    assert_eq!(v["level_ranks"].as_array().unwrap().len(), 2);
}

#[test]
fn make_endo_exp_ad_source() {
    let dir = tempfile::tempdir().unwrap();
    let endo = dir.path().join("g.endo");
    let mk = run(&[
        "make-endo",
        "--exp-ad",
        "x1 x2 d3",
        "--level",
        "2",
        "--out",
        endo.to_str().unwrap(),
    ]);
    assert_eq!(code(&mk), 0, "stderr: {}", stderr_of(&mk));
    let verify = run(&["verify", "--endo", endo.to_str().unwrap()]);
    assert_eq!(code(&verify), 0);
    assert!(stdout_of(&verify).contains("x3 -> x1 x2 + x3"));
}

#[test]
fn make_endo_random_sigma_is_seed_deterministic() {
    let a = run(&["make-endo", "--random-sigma", "--n", "3", "--level", "2", "--seed", "11"]);
    let b = run(&["make-endo", "--random-sigma", "--n", "3", "--level", "2", "--seed", "11"]);
    let c = run(&["make-endo", "--random-sigma", "--n", "3", "--level", "2", "--seed", "12"]);
    assert_eq!(code(&a), 0);
    assert_eq!(stdout_of(&a), stdout_of(&b));
    assert_ne!(stdout_of(&a), stdout_of(&c));
}

#[test]
fn normalize_recovers_the_source_automorphism() {
    let dir = tempfile::tempdir().unwrap();
    let sigma = dir.path().join("s.sigma");
    let endo = dir.path().join("s.endo");
    let sigma_back = dir.path().join("back.sigma");
    let psi = dir.path().join("psi.endo");
    let mk = run(&[
        "make-endo",
        "--random-sigma",
        "--n",
        "3",
        "--level",
        "2",
        "--seed",
        "5",
        "--out",
        endo.to_str().unwrap(),
        "--sigma-out",
        sigma.to_str().unwrap(),
    ]);
    assert_eq!(code(&mk), 0, "stderr: {}", stderr_of(&mk));
    let norm = run(&[
        "normalize",
        "--endo",
        endo.to_str().unwrap(),
        "--sigma-out",
        sigma_back.to_str().unwrap(),
        "--psi-out",
        psi.to_str().unwrap(),
    ]);
    assert_eq!(code(&norm), 0, "stdout: {}", stdout_of(&norm));
    let source = std::fs::read_to_string(&sigma).unwrap();
    let recovered = std::fs::read_to_string(&sigma_back).unwrap();
    let n = 3;
    let parsed_source = unitri_core::parse_automorphism(&source, n).unwrap();
    let parsed_back = unitri_core::parse_automorphism(&recovered, n).unwrap();
    assert_eq!(parsed_source, parsed_back);
    // the normalized map fixes every axis
    let psi_map = unitri_core::parse_endomorphism(&std::fs::read_to_string(&psi).unwrap()).unwrap();
    for i in 1..=n {
        assert_eq!(
            psi_map.image_of_partial(i).unwrap(),
            &unitri_core::UniDerivation::partial(n, i).unwrap()
        );
    }
}

#[test]
fn verify_fixture_exit_codes() {
    let id = run(&["verify", "--endo", fixture("id.endo").to_str().unwrap()]);
    assert_eq!(code(&id), 0);
    assert!(stdout_of(&id).contains("certified"));

    let zero = run(&["verify", "--endo", fixture("zero.endo").to_str().unwrap()]);
    assert_eq!(code(&zero), 1);
    assert!(stdout_of(&zero).contains("not a monomorphism"));

    let nonhom = run(&["verify", "--endo", fixture("nonhom.endo").to_str().unwrap()]);
    assert_eq!(code(&nonhom), 1);
    let nonhom_text = stdout_of(&nonhom);
    assert!(nonhom_text.contains("not a homomorphism"));
    assert!(nonhom_text.contains("witness"));

    let zl = run(&["verify", "--endo", fixture("zerolambda.endo").to_str().unwrap()]);
    assert_eq!(code(&zl), 1);
    let zl_text = stdout_of(&zl);
    assert!(zl_text.contains("zero leading scalar at index 2"));
    assert!(zl_text.contains("derived length 2"));
    assert!(zl_text.contains("derived length 1"));
}

#[test]
fn check_endo_flags_failures() {
    let zero = run(&["check-endo", "--endo", fixture("zero.endo").to_str().unwrap()]);
    assert_eq!(code(&zero), 1);
    assert!(stdout_of(&zero).contains("injectivity at level 1: FAILED (rank 0, dim 3)"));

    let nonhom = run(&["check-endo", "--endo", fixture("nonhom.endo").to_str().unwrap()]);
    assert_eq!(code(&nonhom), 1);
    assert!(stdout_of(&nonhom).contains("homomorphism: violated"));
}

#[test]
fn normalize_rejects_unrealizable_maps() {
    let out = run(&["normalize", "--endo", fixture("zerolambda.endo").to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout_of(&out).contains("rejected:"));
}

#[test]
fn malformed_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let junk = dir.path().join("junk.endo");
    std::fs::write(&junk, "this is not an endomorphism file\n").unwrap();
    let out = run(&["verify", "--endo", junk.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr_of(&out).contains("error:"));

    let missing = run(&["verify", "--endo", "/does/not/exist.endo"]);
    assert_eq!(code(&missing), 2);

    let bad_expr = run(&["bracket", "d1 +", "d2"]);
    assert_eq!(code(&bad_expr), 2);
    assert!(stderr_of(&bad_expr).contains("parse error"));

    let usage = run(&["no-such-command"]);
    assert_eq!(code(&usage), 2);
}

#[test]
fn ambient_count_cross_checks() {
    let too_small = run(&["bracket", "d1", "x1 d2", "--n", "1"]);
    assert_eq!(code(&too_small), 2);
    assert!(stderr_of(&too_small).contains("smaller than the largest variable index"));

    let widened = run(&["bracket", "d1", "x1 d2", "--n", "4"]);
    assert_eq!(code(&widened), 0);
    assert_eq!(stdout_of(&widened).trim(), "d2");

    let no_info = run(&["derived-length", "--spanners", "/dev/null", "--budget", "0"]);
    assert_eq!(code(&no_info), 2);
    assert!(stderr_of(&no_info).contains("cannot infer"));
}
