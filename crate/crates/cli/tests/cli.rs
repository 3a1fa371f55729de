use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arrowcat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_on(file: &str, cmd: &str, rest: &[&str]) -> Output {
    let path = fixture(file);
    let mut args = vec![cmd, path.to_str().unwrap()];
    args.extend_from_slice(rest);
    run(&args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    let text = stdout(o);
    assert_eq!(text.lines().count(), 1, "one record per invocation: {text}");
    serde_json::from_str(&text).unwrap()
}

/// Writes command output to a temp file and runs `check` on it.
fn recheck(text: &str) -> Output {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.cat");
    std::fs::write(&path, text).unwrap();
    run(&["check", path.to_str().unwrap()])
}

#[test]
fn check_twochain_holds() {
    let o = run_on("twochain.cat", "check", &[]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn walking_iso_is_equivalent_to_one_with_checkable_witness() {
    let o = run_on("walking_iso_and_one.cat", "equiv", &["--left", "WalkingIso", "--right", "One"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("functor forward: WalkingIso -> One"));
    assert!(text.contains("nat source_iso: id(WalkingIso) => backward . forward"));
    assert_eq!(recheck(&text).status.code(), Some(0));

    let brute = run_on("walking_iso_and_one.cat", "equiv", &["--left", "WalkingIso", "--right", "One", "--brute-force"]);
    assert_eq!(brute.status.code(), Some(0));
}

#[test]
fn walking_iso_is_not_isomorphic_to_one() {
    let o = run_on("walking_iso_and_one.cat", "iso", &["--left", "WalkingIso", "--right", "One"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run_on("walking_iso_and_one.cat", "iso", &["--left", "One", "--right", "One"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn skeleton_of_finsetdup() {
    let o = run_on("finsetdup.cat", "skeleton", &["--cat", "FinSetDup", "--seed", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["status"], "holds");
    assert_eq!(r["identities"], 3);
    assert_eq!(r["morphisms"], 11);
    assert_eq!(r["input_skeletal"], false);
    assert_eq!(recheck(r["catspec"].as_str().unwrap()).status.code(), Some(0));
}

#[test]
fn adjunction_verdicts() {
    let names = ["--left", "f", "--right", "g", "--unit", "unit", "--counit", "counit"];
    assert_eq!(run_on("galois.cat", "adjoint-check", &names).status.code(), Some(0));
    let o = run_on("galois_perturbed.cat", "adjoint-check", &names);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("x=p1, y=q1"));

    let mut literal = names.to_vec();
    literal.extend(["--mode", "paper-literal", "--format", "json"]);
    let r = json(&run_on("galois.cat", "adjoint-check", &literal));
    assert_eq!(r["status"], "holds");
    assert_eq!(r["report"]["mode"], "paper-literal");

    assert_eq!(run_on("galois.cat", "admissible", &names).status.code(), Some(0));
}

#[test]
fn limits_of_a_category_and_of_functors() {
    let o = run_on("twochain.cat", "limits", &["--cat", "TwoChain", "--scope", "terminal"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "terminal: {i1}");
    assert_eq!(run_on("twochain.cat", "limits", &["--functor", "Name"]).status.code(), Some(0));
    // conflicting selectors are a usage error
    let o = run_on("twochain.cat", "limits", &["--cat", "TwoChain", "--functor", "Name"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn functor_and_nat_checks() {
    assert_eq!(run_on("twochain.cat", "functor-check", &["--functor", "Name"]).status.code(), Some(0));
    assert_eq!(run_on("twochain.cat", "nat-check", &["--nat", "toTop"]).status.code(), Some(0));
    assert_eq!(run_on("galois_perturbed.cat", "nat-check", &["--nat", "counit"]).status.code(), Some(1));
    assert_eq!(run_on("galois_perturbed.cat", "check", &[]).status.code(), Some(1));
}

#[test]
fn homs_and_identities() {
    let o = run_on("twochain.cat", "homs", &["--cat", "TwoChain", "--from", "i0", "--to", "i1"]);
    assert_eq!(stdout(&o).trim(), "hom(i0, i1) = {a}");
    let r = json(&run_on("finset2.cat", "identities", &["--cat", "FinSet2", "--format", "json"]));
    assert_eq!(r["identities"].as_array().unwrap().len(), 3);
    assert_eq!(r["arrows"].as_array().unwrap().len(), 11);
}

#[test]
fn convert_both_ways_round_trips() {
    let std = run_on("twochain.cat", "convert", &["--to", "standard"]);
    assert_eq!(std.status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("std.cat");
    std::fs::write(&path, stdout(&std)).unwrap();
    let back = run(&["convert", path.to_str().unwrap(), "--to", "objectless"]);
    assert_eq!(back.status.code(), Some(0));
    assert_eq!(recheck(&stdout(&back)).status.code(), Some(0));
    assert!(stdout(&back).contains("objless TwoChain"));
}

#[test]
fn generate_finset_matches_fixture() {
    let o = run(&["generate", "finset", "--max-size", "2", "--dup", "1", "--name", "FinSetDup"]);
    assert_eq!(o.status.code(), Some(0));
    let on_disk = std::fs::read_to_string(fixture("finsetdup.cat")).unwrap();
    assert_eq!(stdout(&o), on_disk);
    for what in [&["chain", "--n", "3"][..], &["cyclic", "--n", "4"], &["random", "--seed", "9"], &["discrete", "--n", "2"]] {
        let mut args = vec!["generate"];
        args.extend_from_slice(what);
        let o = run(&args);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(recheck(&stdout(&o)).status.code(), Some(0));
    }
}

#[test]
fn errors_exit_two_with_location() {
    let bad = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/data/malformed/unknown_arrow.cat");
    let o = run(&["check", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("unknown_arrow.cat:4:20: unknown-name"), "{err}");

    let o = run_on("twochain.cat", "identities", &["--cat", "Missing", "--format", "json"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["status"], "error");

    assert_eq!(run(&["check", "/nonexistent.cat"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn capacity_is_an_error() {
    let o = run(&["generate", "finset", "--max-size", "3"]);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("big.cat");
    std::fs::write(&path, stdout(&o)).unwrap();
    let p = path.to_str().unwrap();
    // 60 arrows, well past the brute-force limit
    let o = run(&["equiv", p, "--left", "FinSet", "--right", "FinSet", "--brute-force"]);
    assert_eq!(o.status.code(), Some(2));
}
