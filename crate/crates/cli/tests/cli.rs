use std::io::Write;
use std::process::Command;

use omegacat_cli::run;
use serde_json::Value;

fn fixture(name: &str) -> String {
    format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn cli(args: &[&str]) -> (i32, String) {
    run(std::iter::once("omegacat").chain(args.iter().copied()))
}

#[test]
fn homology_of_bubble() {
    assert_eq!(cli(&["homology-pol", "zoo:b2n"]), (0, "H_0 = Z\nH_1 = 0\nH_2 = Z".into()));
    let (code, out) = cli(&["homology-pol", "zoo:b2n", "--max-degree", "4"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("H_3 = 0\nH_4 = 0"), "{out}");
}

#[test]
fn unit_absorption_is_one_move() {
    let p = fixture("P.poly");
    assert_eq!(cli(&["word", "eq", &p, "(c_a)", "((c_a) *1 (i_(c_f)))"]), (0, "PROVED (1 move)".into()));
    let (code, out) = cli(&["word", "eq", &p, "(c_a)", "(i_(c_f))"]);
    assert_eq!(code, 1);
    assert!(out.starts_with("REFUTED"), "{out}");
}

#[test]
fn move_traces_in_json() {
    let p = fixture("P.poly");
    let (_, out) = cli(&["--json", "word", "eq", &p, "(c_a)", "((c_a) *1 (i_(c_f)))"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], "PROVED");
    let moves = v["moves"].as_array().unwrap();
    assert_eq!(moves.len(), 1);
    assert_eq!(moves[0]["kind"], "UNIT_R");
    assert_eq!(moves[0]["path"], "root");
}

#[test]
fn bubble_verdicts() {
    assert_eq!(cli(&["bubble-free", "zoo:s2"]), (0, "PROVED".into()));
    let (code, out) = cli(&["bubble-free", "zoo:kz2_loop"]);
    assert_eq!(code, 1);
    assert_eq!(out, "REFUTED\nbubble ((c_alpha) *1 (c_beta))");
    assert_eq!(cli(&["bubble-free", &fixture("zoo/b2n.poly")]).0, 1);
}

#[test]
fn conduche_witness() {
    let (code, out) = cli(&["check-conduche", &fixture("collapse.fun")]);
    assert_eq!(code, 1);
    assert!(out.contains("lifts 2 times"), "{out}");
    assert_eq!(cli(&["check-conduche", "fin:collapse"]).0, 1);
    let (code, out) = cli(&["slice", &fixture("delta2.cat"), "2"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("# projection Conduché: PROVED"), "{out}");
}

#[test]
fn singular_homology() {
    assert_eq!(cli(&["homology-sing", &fixture("b2z2.2cat")]), (0, "H_0 = Z\nH_1 = 0\nH_2 = Z/2".into()));
    assert_eq!(cli(&["homology-sing", "fin:b2z2"]).1, "H_0 = Z\nH_1 = 0\nH_2 = Z/2");
    let (_, out) = cli(&["homology-sing", &fixture("z2.cat"), "--max-degree", "3"]);
    assert_eq!(out, "H_0 = Z\nH_1 = Z/2\nH_2 = 0\nH_3 = Z/2");
    assert_eq!(cli(&["homology-sing", &fixture("circle.poly"), "--max-degree", "1"]).1, "H_0 = Z\nH_1 = Z");
}

#[test]
fn bases() {
    let d2 = fixture("delta2.cat");
    assert_eq!(cli(&["check-basis", &d2, "--sigma", "01,12"]).0, 0);
    assert_eq!(cli(&["check-basis", &d2, "--sigma", "01"]).0, 1);
    assert_eq!(cli(&["check-basis", &d2, "--sigma", "01,12,02"]).0, 1);
    assert_eq!(cli(&["check-basis", &d2, "--sigma", "nope"]).0, 2);
}

#[test]
fn functors_and_complexes() {
    assert_eq!(cli(&["validate", &fixture("wrap.fun")]).0, 0);
    let (code, out) = cli(&["validate", &fixture("bad_wrap.fun")]);
    assert_eq!(code, 2, "{out}");
    assert_eq!(cli(&["homology-pol", &fixture("circle.chain")]).1, "H_0 = Z\nH_1 = Z");
    let (_, out) = cli(&["abelianize", &fixture("circle.poly")]);
    assert_eq!(out, "deg 0 rank 2\ndeg 1 rank 2\n-1 -1\n1 1");
}

#[test]
fn binerve_levels_agree() {
    let (code, out) = cli(&["binerve", &fixture("parallel.2cat"), "1", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out, "level (1,1): 5 cells via S_1, 5 via V_1");
}

#[test]
fn zoo_listing_and_fixtures() {
    let (code, out) = cli(&["zoo", "list"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 10);
    for line in out.lines() {
        let name = line.split_whitespace().next().unwrap();
        let (_, built) = cli(&["zoo", "build", name]);
        let shipped = std::fs::read_to_string(fixture(&format!("zoo/{name}.poly"))).unwrap();
        assert_eq!(built, shipped.trim_end(), "{name}");
    }
    assert_eq!(cli(&["zoo", "build", "nope"]).0, 2);
}

#[test]
fn malformed_inputs_report_positions() {
    let (code, out) = cli(&["validate", &fixture("bad_word.poly")]);
    assert_eq!(code, 2);
    assert!(out.contains("bad_word.poly:3:"), "{out}");
    let (code, out) = cli(&["validate", &fixture("bad.cat")]);
    assert_eq!(code, 2);
    assert!(out.contains("declared with two different values"), "{out}");
    let mut f = tempfile::Builder::new().suffix(".poly").tempfile().unwrap();
    writeln!(f, "gen 0 A\nfrobnicate\n").unwrap();
    let (code, out) = cli(&["validate", f.path().to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.contains(":2:1: unknown declaration"), "{out}");
    assert_eq!(cli(&["frobnicate"]).0, 2);
    assert_eq!(cli(&["word", "parse", "zoo:b2n", "(c_alpha"]).0, 2);
}

#[test]
fn output_is_deterministic() {
    let args = ["--json", "word", "moves", "zoo:torus", "((c_alpha) *0 (i_(c_f)))"];
    assert_eq!(cli(&args), cli(&args));
    let v: Value = serde_json::from_str(&cli(&args).1).unwrap();
    assert!(!v["moves"].as_array().unwrap().is_empty());
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_omegacat");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let out = status(&["homology-pol", "zoo:b2n"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "H_0 = Z\nH_1 = 0\nH_2 = Z\n");
    assert_eq!(status(&["bubble-free", "zoo:kz2_loop"]).status.code(), Some(1));
    assert_eq!(status(&["validate", "missing.poly"]).status.code(), Some(2));
}
