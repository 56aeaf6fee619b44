use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use subset_search::format::{parse_document, parse_instance, Document};
use subset_search::{Payload, ProblemKind};

fn fixture(name: &str) -> String {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    root.join(name).to_string_lossy().into_owned()
}

fn ssp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ssp")).args(args).output().expect("ssp runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn field<'a>(report: &'a str, key: &str) -> &'a str {
    let prefix = format!("{key}: ");
    report
        .lines()
        .find_map(|l| l.strip_prefix(prefix.as_str()))
        .unwrap_or_else(|| panic!("no `{key}` in\n{report}"))
}

struct Scratch(tempfile::TempDir);

impl Scratch {
    fn new() -> Scratch {
        Scratch(tempfile::tempdir().unwrap())
    }

    fn path(&self, name: &str) -> String {
        let p: PathBuf = self.0.path().join(name);
        p.to_string_lossy().into_owned()
    }
}

#[test]
fn reduce_figure_formula_to_vertex_cover() {
    let dir = Scratch::new();
    let (out, emb) = (dir.path("vc.ssp"), dir.path("vc.emb"));
    let run = ssp(&["reduce", "--from", "3sat", "--to", "vertex_cover", "--in", &fixture("figure.ssp"), "--out", &out, "--emit-embedding", &emb]);
    assert_eq!(code(&run), 0, "{}", stdout(&run));
    let target = parse_instance(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let Payload::VertexCover(g) = target.payload() else { panic!() };
    assert_eq!((g.graph.n, g.k), (9, 5));
    assert_eq!(std::fs::read_to_string(&emb).unwrap().lines().count(), 6);
}

#[test]
fn reduce_along_an_explicit_chain() {
    let dir = Scratch::new();
    let out = dir.path("ds.ssp");
    let via = "sat_to_3sat,3sat_to_vertex_cover,vertex_cover_to_dominating_set";
    let run = ssp(&["reduce", "--via", via, "--in", &fixture("sat_small.ssp"), "--out", &out]);
    assert_eq!(code(&run), 0, "{}", stdout(&run));
    let target = parse_instance(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(target.kind(), ProblemKind::DominatingSet);
}

/// One fixture per documented exit code.
#[test]
fn every_exit_code_is_reachable() {
    let dir = Scratch::new();
    let out = dir.path("x.ssp");
    let figure = fixture("figure.ssp");
    let cases: [(i32, Vec<String>); 8] = [
        (0, vec!["verify".into(), "--reduction".into(), "3sat_to_vertex_cover".into(), "--in".into(), figure.clone()]),
        (1, vec!["verify".into(), "--reduction".into(), "3sat_to_vertex_cover_k_minus_1".into(), "--in".into(), figure.clone()]),
        (2, vec!["verify".into(), "--reduction".into(), "3sat_to_vertex_cover".into(), "--in".into(), fixture("malformed_header.ssp")]),
        (2, vec!["reduce".into(), "--from".into(), "3sat".into(), "--to".into(), "vertex_cover".into(), "--in".into(), fixture("missing.ssp"), "--out".into(), out.clone()]),
        (3, vec!["reduce".into(), "--via".into(), "vertex_cover_to_dominating_set".into(), "--in".into(), figure.clone(), "--out".into(), out.clone()]),
        (4, vec!["reduce".into(), "--from".into(), "3sat".into(), "--to".into(), "subset_sum".into(), "--in".into(), fixture("digit_overflow.ssp"), "--out".into(), out.clone()]),
        (5, vec!["verify".into(), "--reduction".into(), "3sat_to_vertex_cover".into(), "--in".into(), figure, "--budget".into(), "1".into()]),
        (6, vec!["solve".into(), "--game".into(), "regret".into(), "--in".into(), fixture("unsat_regret.ssp")]),
    ];
    for (expected, args) in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let run = ssp(&args);
        assert_eq!(code(&run), expected, "{args:?}\n{}", stdout(&run));
        assert_eq!(field(&stdout(&run), "exit"), expected.to_string());
    }
}

#[test]
fn mismatch_report_names_a_witness() {
    let run = ssp(&["verify", "--reduction", "3sat_to_vertex_cover_k_minus_1", "--in", &fixture("figure.ssp")]);
    let report = stdout(&run);
    assert_eq!(field(&report, "verdict"), "mismatch");
    assert!(field(&report, "witness").ends_with("image-only"));
}

#[test]
fn tiny_budget_is_reported_as_budget_exceeded() {
    let run = ssp(&["verify", "--reduction", "3sat_to_vertex_cover", "--in", &fixture("figure.ssp"), "--budget", "1"]);
    assert_eq!(field(&stdout(&run), "status"), "budget-exceeded");
}

#[test]
fn degenerate_intervals_have_zero_regret() {
    let run = ssp(&["solve", "--game", "regret", "--in", &fixture("path_regret_degenerate.ssp")]);
    assert_eq!(code(&run), 0);
    assert_eq!(field(&stdout(&run), "value"), "0");
}

#[test]
fn wrong_game_for_the_variant_is_a_kind_mismatch() {
    let run = ssp(&["solve", "--game", "two-stage", "--in", &fixture("figure_interdiction.ssp")]);
    assert_eq!(code(&run), 3);
}

#[test]
fn clamped_gamma_is_noted() {
    let run = ssp(&["solve", "--game", "two-stage", "--in", &fixture("triangle_two_stage_clamped.ssp")]);
    assert_eq!(code(&run), 0);
    assert!(field(&stdout(&run), "note").contains("clamped"));
}

#[test]
fn gadget_then_solve_matches_the_formula() {
    let dir = Scratch::new();
    for (formula, expected) in [("exists_forall_true.qdimacs", "yes"), ("exists_forall_false.qdimacs", "no")] {
        for (family, game) in [("interdiction", "interdiction"), ("regret", "regret")] {
            let out = dir.path(&format!("{family}-{formula}.ssp"));
            let run = ssp(&["gadget", "--family", family, "--in", &fixture(formula), "--out", &out]);
            assert_eq!(code(&run), 0, "{}", stdout(&run));
            let solved = ssp(&["solve", "--game", game, "--in", &out]);
            assert_eq!(field(&stdout(&solved), "decision"), expected, "{family} on {formula}");
        }
    }
    let out = dir.path("two-stage.ssp");
    assert_eq!(code(&ssp(&["gadget", "--family", "two-stage", "--in", &fixture("exists_forall_exists.qdimacs"), "--out", &out])), 0);
    assert_eq!(field(&stdout(&ssp(&["solve", "--game", "two-stage", "--in", &out])), "decision"), "yes");
}

#[test]
fn gadget_rejects_the_wrong_prefix() {
    let dir = Scratch::new();
    let run = ssp(&["gadget", "--family", "two-stage", "--in", &fixture("exists_forall_true.qdimacs"), "--out", &dir.path("g.ssp")]);
    assert_eq!(code(&run), 3);
}

#[test]
fn lifted_regret_keeps_its_value_and_verifies() {
    let dir = Scratch::new();
    let out = dir.path("lifted.ssp");
    let source = fixture("figure_regret.ssp");
    let run = ssp(&["lift", "--reduction", "3sat_to_vertex_cover", "--family", "regret", "--in", &source, "--out", &out]);
    assert_eq!(code(&run), 0, "{}", stdout(&run));
    let Document::Variant(v) = parse_document(&std::fs::read_to_string(&out).unwrap()).unwrap() else { panic!() };
    assert_eq!(v.base().kind(), ProblemKind::VertexCover);
    let a = stdout(&ssp(&["solve", "--game", "regret", "--in", &source]));
    let b = stdout(&ssp(&["solve", "--game", "regret", "--in", &out]));
    assert_eq!(field(&a, "value"), field(&b, "value"));
    for (family, file) in [("interdiction", "figure_interdiction.ssp"), ("restricted-regret", "figure_regret.ssp"), ("two-stage", "figure_two_stage.ssp")] {
        let id = format!("3sat_to_vertex_cover@{family}");
        let run = ssp(&["verify", "--reduction", &id, "--in", &fixture(file)]);
        assert_eq!(code(&run), 0, "{}", stdout(&run));
    }
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = Scratch::new();
    let mut seen = Vec::new();
    for i in 0..2 {
        let out = dir.path(&format!("g{i}.ssp"));
        let run = ssp(&["gadget", "--family", "regret", "--in", &fixture("exists_forall_true.qdimacs"), "--out", &out, "--json"]);
        let report = stdout(&run).replace(&out, "OUT");
        seen.push((report, std::fs::read(&out).unwrap()));
    }
    assert_eq!(seen[0], seen[1]);
    let solve = || ssp(&["solve", "--game", "two-stage", "--in", &fixture("triangle_two_stage_clamped.ssp")]).stdout;
    assert_eq!(solve(), solve());
}

#[test]
fn json_report_follows_the_schema() {
    let run = ssp(&["verify", "--reduction", "3sat_to_vertex_cover", "--in", &fixture("figure.ssp"), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&run.stdout).unwrap();
    assert_eq!(v["schema"], "report-v1");
    assert_eq!(v["status"], "ok");
    assert_eq!(v["result"]["verdict"], "pass");
    assert_eq!(v["files"][0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn selftest_subset_passes_and_unknown_criteria_are_usage_errors() {
    let run = ssp(&["selftest", "--only", "3,8"]);
    assert_eq!(code(&run), 0, "{}", stdout(&run));
    assert!(field(&stdout(&run), "criterion-8").starts_with("pass"));
    assert_eq!(code(&ssp(&["selftest", "--only", "9"])), 2);
}

/// Runs every criterion with the default seed.
#[test]
fn full_selftest_exits_zero_within_twenty_minutes() {
    let started = Instant::now();
    let run = ssp(&["selftest"]);
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(20 * 60), "took {elapsed:?}");
    assert_eq!(code(&run), 0, "{}", stdout(&run));
}
