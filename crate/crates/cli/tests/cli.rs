//! End-to-end tests of the `fillcurve` binary: every subcommand, the JSON
//! contracts, exit codes and output stability.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::seq::SliceRandom;
use rand::SeedableRng;

use fillcurve::{Dessin, Permutation};
use fillcurve_cli::{load_dessin, save_dessin};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fillcurve"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn fixture_arg(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary spawns")
}

fn run_ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("stdout is UTF-8")
}

fn json_ok(args: &[&str]) -> serde_json::Value {
    serde_json::from_str(&run_ok(args)).expect("stdout is JSON")
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("fillcurve_cli_test_{name}"))
}

/// A degree-8 uniform dessin of type (4,4,4): the bipartite formula branch.
const BIPARTITE_DEMO: &str =
    r#"{"degree":8,"sigma0":[[1,2,3,4],[5,6,7,8]],"sigma1":[[1,5,2,6],[3,7,4,8]]}"#;

#[test]
fn analyze_reports_passport_and_classification() {
    let value = json_ok(&["analyze", &fixture_arg("clean_2_4_8_16edges.json")]);
    assert_eq!(value["classification"]["genus"], 2);
    assert_eq!(value["classification"]["is_clean"], true);
    assert_eq!(value["classification"]["monodromy_order"], 43008);
    assert_eq!(value["passport"]["type_triple"], serde_json::json!([2, 4, 8]));
    assert_eq!(value["passport"]["face_degrees"], serde_json::json!([8, 8]));
}

#[test]
fn components_counts_the_multicurve() {
    let value = json_ok(&["components", &fixture_arg("regular_2_6_6_12edges.json")]);
    assert_eq!(value["r"], 3);
    assert_eq!(value["m"], 3);
    assert_eq!(value["l"], 1);
    assert_eq!(value["components"].as_array().unwrap().len(), 3);
}

#[test]
fn minlength_auto_detects_clean_and_bipartite() {
    let clean = json_ok(&["minlength", &fixture_arg("clean_2_4_8_16edges.json")]);
    assert_eq!(clean["formula_used"], "clean");
    assert_eq!(clean["m"], 2);
    assert_eq!(clean["k"], 8);
    assert_eq!(clean["d"], 8);
    let total = clean["total"].as_f64().unwrap();
    assert!((total - 12.228567355847987).abs() < 1e-12);

    let path = temp_path("bipartite.json");
    std::fs::write(&path, BIPARTITE_DEMO).unwrap();
    let star = json_ok(&["minlength", path.to_str().unwrap()]);
    assert_eq!(star["formula_used"], "bipartite");
    assert_eq!(star["l"], 2);
    assert_eq!(star["m"], 2);
    assert_eq!(star["j"], 4);
    assert_eq!(star["d"], 8);
    // (4,4,4) with d=8 arcs realizes the same minimum as (2,4,8) with d=8.
    let star_total = star["total"].as_f64().unwrap();
    assert!((star_total - total).abs() < 1e-12);
}

#[test]
fn dual_emits_the_printed_rotation() {
    let value = json_ok(&["dual", &fixture_arg("clean_2_6_6_dual_demo.json")]);
    assert_eq!(
        value["sigma1"],
        serde_json::json!([[1, 5, 9, 7, 2, 3], [4, 8, 12, 10, 11, 6]])
    );
}

#[test]
fn medial_output_chains_into_analyze() {
    let source = temp_path("medial_source.json");
    std::fs::write(&source, BIPARTITE_DEMO).unwrap();
    let target = temp_path("medial_target.json");
    run_ok(&[
        "medial",
        source.to_str().unwrap(),
        "-o",
        target.to_str().unwrap(),
    ]);
    let value = json_ok(&["analyze", target.to_str().unwrap()]);
    assert_eq!(value["passport"]["degree"], 16);
    assert_eq!(value["passport"]["type_triple"], serde_json::json!([2, 4, 8]));
    assert_eq!(value["classification"]["is_clean"], true);
}

#[test]
fn surgery_reports_the_frozen_case() {
    let value = json_ok(&[
        "surgery",
        &fixture_arg("clean_2_4_8_16edges.json"),
        "--a",
        "4",
        "--b",
        "13",
    ]);
    assert_eq!(value["case"], "same_face");
    assert_eq!(value["face_degree_delta"], serde_json::json!([[8, 16]]));
    assert_eq!(value["result"]["degree"], 24);
}

#[test]
fn seed_matches_its_fixture() {
    let printed = run_ok(&["seed", "--genus", "2", "--faces", "1"]);
    let seed: Dessin = serde_json::from_str(&printed).unwrap();
    let expected = load_dessin(&fixture("seed_genus2_faces1.json")).unwrap();
    assert_eq!(seed, expected);
}

#[test]
fn grow_reaches_a_small_target() {
    let value = run_ok(&[
        "grow",
        &fixture_arg("seed_genus2_faces1.json"),
        "--target-genus",
        "3",
        "--faces",
        "1",
    ]);
    let grown: Dessin = serde_json::from_str(&value).unwrap();
    assert_eq!(grown.genus(), 3);
    assert_eq!(grown.degree(), 20);
    assert_eq!(grown.uniform_type().unwrap(), (2, 4, 20));
}

#[test]
fn enumerate_is_deterministic_across_worker_counts() {
    let serial = run_ok(&["enumerate", "--type", "2,4,12", "--genus", "2"]);
    let value: serde_json::Value = serde_json::from_str(&serial).unwrap();
    assert_eq!(value["classes"].as_array().unwrap().len(), 6);
    assert_eq!(value["filling_count"], 1);

    let parallel = run_ok(&[
        "enumerate", "--type", "2,4,12", "--genus", "2", "--jobs", "3",
    ]);
    assert_eq!(serial, parallel, "worker count changed the output bytes");

    let summary = json_ok(&[
        "enumerate", "--type", "2,4,12", "--genus", "2", "--summary",
    ]);
    let rows = summary["classes"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|row| row["min_length_total"].is_number()));

    let progress = run(&[
        "enumerate", "--type", "2,4,12", "--genus", "2", "--progress",
    ]);
    assert!(progress.status.success());
    let stderr = String::from_utf8_lossy(&progress.stderr);
    assert!(
        stderr.contains("progress:"),
        "expected progress lines on stderr, got: {stderr}"
    );
}

#[test]
fn word_reports_membership_and_matrix() {
    let hit = json_ok(&[
        "word",
        "z3xz",
        &fixture_arg("clean_2_4_8_16edges.json"),
        "--type",
        "2,4,8",
    ]);
    assert_eq!(hit["in_stabilizer"], true);
    assert_eq!(hit["isometry"]["kind"], "hyperbolic");
    assert!(hit["trace"].as_f64().unwrap().abs() > 2.0);
    assert!(hit["translation_length"].as_f64().unwrap() > 0.0);

    let miss = json_ok(&["word", "x", &fixture_arg("clean_2_4_8_16edges.json")]);
    assert_eq!(miss["in_stabilizer"], false);
    assert_eq!(miss["permutation"][0], serde_json::json!([1, 16]));
    assert!(miss.get("isometry").is_none(), "no matrix without --type");

    let mismatch = run(&[
        "word",
        "x",
        &fixture_arg("clean_2_4_8_16edges.json"),
        "--type",
        "2,6,6",
    ]);
    assert_eq!(mismatch.status.code(), Some(1));
    let err: serde_json::Value =
        serde_json::from_slice(&mismatch.stderr).expect("structured stderr");
    assert_eq!(err["error"], "triangle_type_mismatch");
}

#[test]
fn pairings_emit_2e_plus_1_generators() {
    let value = json_ok(&["pairings", &fixture_arg("clean_2_4_8_16edges.json")]);
    let list = value.as_array().unwrap();
    assert_eq!(list.len(), 33);
    for pairing in list {
        let kind = pairing["matrix"]["kind"].as_str().unwrap();
        assert!(
            kind == "hyperbolic" || kind == "identity",
            "unexpected kind {kind}"
        );
        assert!(pairing["word_text"].is_string());
    }
}

#[test]
fn render_writes_svg() {
    let out = temp_path("render.svg");
    run_ok(&[
        "render",
        &fixture_arg("clean_2_4_8_16edges.json"),
        "-o",
        out.to_str().unwrap(),
    ]);
    let file = std::fs::read_to_string(&out).unwrap();
    assert!(file.starts_with("<svg"));
    assert_eq!(file.split("<g id=\"quads\"").nth(1).unwrap()
        .split("</g>").next().unwrap().matches("<path").count(), 16);

    let stdout = run_ok(&["render", &fixture_arg("clean_2_4_8_16edges.json")]);
    assert_eq!(stdout, file, "file and stdout renderings agree");
}

#[test]
fn verify_passes_on_the_bundled_example() {
    let value = json_ok(&["verify", &fixture_arg("clean_2_4_8_16edges.json")]);
    assert_eq!(value["ok"], true);
    let checks = value["checks"].as_array().unwrap();
    let suite = checks
        .iter()
        .find(|check| check["name"] == "stabilizer_word_suite")
        .expect("word suite present");
    assert_eq!(suite["status"], "pass");
    assert!(checks.iter().all(|check| check["status"] != "fail"));
}

#[test]
fn degree_mismatch_file_is_a_domain_error() {
    let path = temp_path("mismatch.json");
    std::fs::write(
        &path,
        r#"{"degree":16,"sigma0":[[1,2],[3,4],[5,6],[7,8],[9,10],[11,12],[13,14],[15,16]],"sigma1":[[1,3,5],[2,4,6],[7,9,11],[8,10,12]]}"#,
    )
    .unwrap();
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(err["error"].is_string());
    assert!(err["message"].is_string());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "--type", "nonsense", "--genus", "2"])
        .status
        .code(), Some(2));
    assert_eq!(run(&[]).status.code(), Some(2));
}

#[test]
fn outputs_are_stable_across_runs() {
    for (sub, file) in [
        ("analyze", "clean_2_4_8_16edges.json"),
        ("pairings", "clean_2_4_8_16edges.json"),
        ("minlength", "regular_2_6_6_12edges.json"),
    ] {
        let args = [sub, &fixture_arg(file)];
        assert_eq!(
            run_ok(&args),
            run_ok(&args),
            "unstable output for {sub} {file}"
        );
    }
}

#[test]
fn save_and_load_round_trip_100_random_dessins() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(0xd035);
    let path = temp_path("roundtrip.json");
    for trial in 0..100 {
        let degree = 1 + trial % 12;
        let mut images: Vec<usize> = (1..=degree).collect();
        images.shuffle(&mut rng);
        let sigma0 = Permutation::from_one_line(images).unwrap();
        // A full cycle keeps the pair transitive for any sigma0.
        let mut rotated: Vec<usize> = (1..=degree).collect();
        rotated.rotate_left(1);
        let sigma1 = Permutation::from_one_line(rotated).unwrap();
        let dessin = Dessin::new(sigma0, sigma1).unwrap();
        save_dessin(&dessin, &path).unwrap();
        assert_eq!(load_dessin(&path).unwrap(), dessin, "trial {trial}");
    }
}
