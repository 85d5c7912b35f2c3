//! End-to-end tests of the binary: every check goes through argv, files and
//! exit codes exactly as a user would drive it.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_strongprod"))
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin()
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_ok(dir: &Path, args: &[&str]) -> String {
    let out = run(dir, args);
    assert!(
        out.status.success(),
        "expected success for {:?}\nstdout: {}\nstderr: {}",
        args,
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8 output")
}

fn json_of(text: &str) -> Value {
    serde_json::from_str(text).expect("valid JSON output")
}

#[test]
fn gen_product_oracle_round_trip_reproduces_the_c5_constants() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    run_ok(dir, &["gen", "cycle", "--n", "5", "--out", "c5.json"]);
    run_ok(
        dir,
        &["product", "--op", "strong", "c5.json", "c5.json", "--out", "sq.json"],
    );
    let chi = json_of(&run_ok(dir, &["oracle", "chromatic", "--graph", "sq.json"]));
    assert_eq!(chi["chromatic_number"], 5);
    let alpha = json_of(&run_ok(dir, &["oracle", "alpha", "--graph", "sq.json"]));
    assert_eq!(alpha["independence_number"], 5);
    let shannon = json_of(&run_ok(
        dir,
        &["oracle", "shannon", "--graph", "c5.json", "--power", "2"],
    ));
    let bound = shannon["lower_bound"].as_f64().unwrap();
    assert!((bound - 5f64.sqrt()).abs() < 1e-12, "got {bound}");
}

#[test]
fn colored_path_passes_verification_through_files() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    run_ok(
        dir,
        &[
            "color", "path", "--n", "40", "--k", "3", "--out", "col.json", "--graph-out",
            "g.json",
        ],
    );
    let text = run_ok(
        dir,
        &[
            "verify",
            "--graph",
            "g.json",
            "--coloring",
            "col.json",
            "--max-clustering",
            "3",
            "--require-consistent",
        ],
    );
    let v = json_of(&text);
    assert_eq!(v["ok"], true);
    assert_eq!(v["report"]["consistent"], true);
    assert!(v["report"]["clustering"].as_u64().unwrap() <= 3);
}

#[test]
fn corrupted_coloring_fails_verification_with_a_witness() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    run_ok(
        dir,
        &[
            "color", "path", "--n", "13", "--k", "3", "--out", "col.json", "--graph-out",
            "g.json",
        ],
    );
    // Copy vertex 3's tuple onto its neighbour 4: same colours across the
    // edge at different positions, so consistency must fail with that edge.
    let mut doc: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("col.json")).unwrap()).unwrap();
    doc["order"][4] = doc["order"][3].clone();
    let mut sorted: Vec<u64> = doc["order"][4]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect();
    sorted.sort_unstable();
    doc["assign"][4] = Value::from(sorted);
    std::fs::write(dir.join("col.json"), serde_json::to_string(&doc).unwrap()).unwrap();

    let out = run(
        dir,
        &[
            "verify",
            "--graph",
            "g.json",
            "--coloring",
            "col.json",
            "--require-consistent",
        ],
    );
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(v["ok"], false);
    assert_eq!(v["report"]["consistent"], false);
    let violation = v["violations"][0].as_str().unwrap();
    assert!(violation.contains("(4, 5)") || violation.contains("(3, 4)"), "{violation}");
}

#[test]
fn unreadable_inputs_and_bad_configs_exit_with_two() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    let missing = run(dir, &["oracle", "chromatic", "--graph", "nope.json"]);
    assert_eq!(missing.status.code(), Some(2));

    std::fs::write(dir.join("bad.json"), "{\"pipeline\":\"mystery\"}").unwrap();
    let unknown = run(dir, &["run", "--config", "bad.json"]);
    assert_eq!(unknown.status.code(), Some(2));
    let stderr = String::from_utf8(unknown.stderr).unwrap();
    assert!(stderr.contains("unknown variant"), "{stderr}");

    std::fs::write(
        dir.join("extra.json"),
        "{\"pipeline\":\"path\",\"n\":10,\"k\":2,\"typo\":1}",
    )
    .unwrap();
    let extra = run(dir, &["run", "--config", "extra.json"]);
    assert_eq!(extra.status.code(), Some(2));

    let too_small = run(dir, &["gen", "cycle", "--n", "2"]);
    assert_eq!(too_small.status.code(), Some(2));
}

#[test]
fn hexgrid_pipeline_meets_its_clustering_bound() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    std::fs::write(dir.join("p.json"), "{\"pipeline\":\"hexgrid\",\"n\":6,\"d\":3}").unwrap();
    let v = json_of(&run_ok(dir, &["run", "--config", "p.json"]));
    assert_eq!(v["ok"], true);
    assert_eq!(v["colors"], 4);
    assert!(v["clustering"].as_u64().unwrap() <= 6);
}

#[test]
fn hexlemma_pipeline_confirms_the_crossing_property() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    std::fs::write(dir.join("p.json"), "{\"pipeline\":\"hexlemma\",\"n\":4}").unwrap();
    let v = json_of(&run_ok(dir, &["run", "--config", "p.json"]));
    assert_eq!(v["holds"], true);
}

#[test]
fn pipeline_output_is_byte_identical_across_runs_and_thread_counts() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    std::fs::write(
        dir.join("p.json"),
        "{\"pipeline\":\"percolation\",\"grid_n\":12,\"grid_d\":2,\
         \"densities\":[0.3,0.8],\"trials\":50,\"seed\":9,\"threshold\":20,\
         \"csv\":\"trials.csv\"}",
    )
    .unwrap();
    let mut first = None;
    for threads in ["1", "4"] {
        let out = bin()
            .current_dir(dir)
            .env("STRONGPROD_THREADS", threads)
            .args(["run", "--config", "p.json", "--out", "out.json"])
            .output()
            .expect("binary runs");
        assert!(out.status.success());
        let json = std::fs::read(dir.join("out.json")).unwrap();
        let csv = std::fs::read(dir.join("trials.csv")).unwrap();
        match &first {
            None => first = Some((json, csv)),
            Some((j, c)) => {
                assert_eq!(j, &json, "JSON differs across thread counts");
                assert_eq!(c, &csv, "CSV differs across thread counts");
            }
        }
    }
    let csv = std::fs::read_to_string(dir.join("trials.csv")).unwrap();
    assert_eq!(csv.lines().next(), Some("density,trial,max_cluster"));
    assert_eq!(csv.lines().count(), 1 + 2 * 50);
}

#[test]
fn percolate_writes_summary_and_per_trial_csv() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    run_ok(dir, &["gen", "grid", "--n", "8", "--dim", "2", "--out", "g.json"]);
    let text = run_ok(
        dir,
        &[
            "percolate",
            "--graph",
            "g.json",
            "--densities",
            "0.2,1.0",
            "--trials",
            "30",
            "--seed",
            "3",
            "--threshold",
            "70",
            "--csv-out",
            "t.csv",
        ],
    );
    let v = json_of(&text);
    assert_eq!(v["trials"], 30);
    let rows = v["densities"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    // Full density occupies the whole 64-vertex grid in every trial.
    assert_eq!(rows[1]["max_observed"], 64);
    assert_eq!(v["estimate"]["density"], 1.0);
    let csv = std::fs::read_to_string(dir.join("t.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 2 * 30);
    assert!(csv.lines().skip(1).all(|l| l.starts_with("0.2,") || l.starts_with("1,")));
}

#[test]
fn export_renders_every_vertex_and_edge() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    run_ok(dir, &["gen", "star", "--leaves", "4", "--out", "s.json"]);
    let dot = run_ok(dir, &["export", "--graph", "s.json"]);
    assert!(dot.starts_with("graph {"));
    assert_eq!(dot.matches(" -- ").count(), 4);
    assert_eq!(dot.matches("label=").count(), 5);
}

#[test]
fn star_feasibility_splits_at_one_extra_colour() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    run_ok(dir, &["gen", "star", "--leaves", "6", "--out", "s.json"]);
    let one = json_of(&run_ok(
        dir,
        &["oracle", "feasibility", "--graph", "s.json", "--colors", "1", "--max-clustering", "6"],
    ));
    assert_eq!(one["feasible"], false);
    let whole = json_of(&run_ok(
        dir,
        &["oracle", "feasibility", "--graph", "s.json", "--colors", "1", "--max-clustering", "7"],
    ));
    assert_eq!(whole["feasible"], true);
    let two = json_of(&run_ok(
        dir,
        &["oracle", "feasibility", "--graph", "s.json", "--colors", "2", "--max-clustering", "1"],
    ));
    assert_eq!(two["feasible"], true);
    assert_eq!(two["witness"]["q"], 1);
}

#[test]
fn treeproduct_pipeline_reports_its_bound_and_holds() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    std::fs::write(
        dir.join("p.json"),
        "{\"pipeline\":\"treeproduct\",\"sizes\":[6,5,4],\"max_degree\":3,\"seed\":11}",
    )
    .unwrap();
    let v = json_of(&run_ok(dir, &["run", "--config", "p.json"]));
    assert_eq!(v["ok"], true);
    assert_eq!(v["colors"], 4);
    assert_eq!(v["bound"], 27);
    assert!(v["clustering"].as_u64().unwrap() <= 27);
}

#[test]
fn verify_pipeline_mirrors_the_verify_subcommand() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    run_ok(
        dir,
        &[
            "color", "cycle", "--n", "26", "--k", "2", "--out", "col.json", "--graph-out",
            "g.json",
        ],
    );
    std::fs::write(
        dir.join("p.json"),
        "{\"pipeline\":\"verify\",\"graph\":\"g.json\",\"coloring\":\"col.json\",\
         \"max_clustering\":9,\"require_consistent\":true}",
    )
    .unwrap();
    let v = json_of(&run_ok(dir, &["run", "--config", "p.json"]));
    assert_eq!(v["ok"], true);
    assert_eq!(v["report"]["consistent"], true);
}
