//! Behavior of the installed binary: output contracts, exit codes, and
//! byte-level determinism.

use immersed_morse::catalog::{structure_canonical, validate_structure};
use immersed_morse_cli::doc::{structure_from_doc, CatalogDoc};
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_immersed-morse"))
        .args(args)
        .env_remove("IMMERSED_MORSE_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

#[test]
fn classify_text_reports_the_totals() {
    let one = run(&["classify", "--double-curves", "1"]);
    assert!(one.status.success());
    let text = stdout(&one);
    assert_eq!(text.lines().last(), Some("total: 13"));
    assert!(text.contains("single-curve/pair-03-meridian"));
    assert!(text.contains("verified: yes"));

    let two = run(&["classify", "--double-curves", "2"]);
    assert!(two.status.success());
    let text = stdout(&two);
    assert_eq!(text.lines().last(), Some("total: 11"));
    assert!(text.contains("two-curve/chain/nested"));
}

#[test]
fn rejected_usage_exits_with_2() {
    for args in [
        &["classify", "--double-curves", "3"][..],
        &["classify", "--double-curves", "1", "--budget", "7"],
        &["classify", "--double-curves", "1", "--budget", "1"],
        &["render", "--target", "everything", "--id", "T1"],
        &["frobnicate"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
    }
}

#[test]
fn classify_json_round_trips_with_keys_intact() {
    let out = run(&["classify", "--double-curves", "1", "--format", "json"]);
    assert!(out.status.success());
    let doc: CatalogDoc = serde_json::from_str(&stdout(&out)).expect("well-formed document");
    assert_eq!(doc.version, "1.0");
    assert_eq!(doc.budget, 4);
    assert!(doc.verified);
    assert_eq!(doc.entries.len(), 13);
    assert_eq!(doc.stratifications.len(), 1);
    assert!(doc.stratifications[0].feasible);
    assert_eq!(doc.stratifications[0].min_critical_points, 4);
    for e in &doc.entries {
        let s = structure_from_doc(&e.structure).expect("reconstructible");
        assert!(validate_structure(&s).is_empty(), "{}", e.case_label);
        assert_eq!(structure_canonical(&s), e.key, "{}", e.case_label);
    }
}

#[test]
fn documents_with_unknown_fields_are_rejected() {
    let out = run(&["classify", "--double-curves", "2", "--format", "json"]);
    let mut value: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    value
        .as_object_mut()
        .expect("object")
        .insert("comment".into(), serde_json::Value::String("tampered".into()));
    let tampered = serde_json::to_string(&value).expect("serializes");
    assert!(serde_json::from_str::<CatalogDoc>(&tampered).is_err());
}

#[test]
fn exploratory_budgets_are_flagged_unverified() {
    let out = run(&["classify", "--double-curves", "1", "--budget", "5", "--format", "json"]);
    assert!(out.status.success());
    let doc: CatalogDoc = serde_json::from_str(&stdout(&out)).expect("json");
    assert!(!doc.verified);
    assert!(!doc.entries.is_empty());
    for e in &doc.entries {
        assert!(e.case_label.starts_with("search/"));
        let s = structure_from_doc(&e.structure).expect("reconstructible");
        assert!(validate_structure(&s).is_empty());
    }
}

#[test]
fn render_torus_levels() {
    let out = run(&["render", "--target", "reeb", "--id", "torus"]);
    assert!(out.status.success());
    let dot = stdout(&out);
    assert!(dot.contains("rankdir=BT"));
    assert_eq!(dot.matches("[label=").count(), 4, "one labelled node per rank");
    assert_eq!(dot.matches(" -> ").count(), 4);
    assert_eq!(dot.matches("v1 -> v2;").count(), 2, "doubled middle edge");
}

#[test]
fn render_star_tree() {
    let out = run(&["render", "--target", "tree", "--id", "T1"]);
    assert!(out.status.success());
    let dot = stdout(&out);
    assert_eq!(dot.matches(" -- ").count(), 4);
    assert_eq!(dot.matches("v0 -- ").count(), 4, "all edges share the hub");
}

#[test]
fn render_colored_trees_and_structures() {
    for id in ["single-curve", "T2-A", "T2-B", "T3-A", "T3-B", "T3-C"] {
        let out = run(&["render", "--target", "tree", "--id", id]);
        assert!(out.status.success(), "{id}");
        assert!(stdout(&out).contains("label=\"c0\""), "{id}");
    }
    let out = run(&["render", "--target", "structure", "--id", "two-curve/spider/pair-03-meridian-covered"]);
    assert!(out.status.success());
    let dot = stdout(&out);
    assert!(dot.contains("subgraph cluster_p0"));
    assert!(dot.contains("rankdir=BT"));
}

#[test]
fn unknown_render_ids_exit_with_1() {
    for target in ["tree", "reeb", "structure"] {
        let out = run(&["render", "--target", target, "--id", "no-such-thing"]);
        assert_eq!(out.status.code(), Some(1), "{target}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("unknown id"));
    }
}

#[test]
fn render_out_honors_the_output_directory_variable() {
    let dir = std::env::temp_dir().join(format!("imorse-{}", std::process::id()));
    let out = Command::new(env!("CARGO_BIN_EXE_immersed-morse"))
        .args(["render", "--target", "reeb", "--id", "sphere", "--out", "sub/sphere.dot"])
        .env("IMMERSED_MORSE_OUT_DIR", &dir)
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    let written = std::fs::read_to_string(dir.join("sub/sphere.dot")).expect("file lands in the dir");
    assert!(written.starts_with("digraph levels {"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn check_passes_and_is_byte_deterministic() {
    let a = run(&["check"]);
    assert!(a.status.success());
    let text = stdout(&a);
    assert!(text.contains("13/13"));
    assert!(text.contains("11/11"));
    assert!(text.contains("note: "));
    assert!(text.trim_end().ends_with("all checks passed"));
    let b = run(&["check"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn classify_is_byte_deterministic() {
    for args in [
        &["classify", "--double-curves", "1"][..],
        &["classify", "--double-curves", "2", "--format", "json"],
        &["classify", "--double-curves", "2", "--budget", "5"],
    ] {
        let a = run(args);
        let b = run(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "args {args:?}");
    }
}
