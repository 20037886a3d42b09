use std::process::{Command, Output};

fn rescurv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rescurv")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn path_curvature_json() {
    let o = rescurv(&["curvature", "P4", "--backend", "exact", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), r#"{"0":"1/2","1":"0","2":"0","3":"1/2"}"#);
}

#[test]
fn grid_verify_three_by_four() {
    let o = rescurv(&["grid-verify", "3", "4", "--backend", "exact"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["boundary_min"], "17/4830");
    assert_eq!(v["holds"], true);
}

#[test]
fn grid_verify_rejects_float() {
    let o = rescurv(&["grid-verify", "3", "4", "--backend", "float"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn cube_of_paths_has_negative_curvature() {
    let o = rescurv(&["product", "P3^3", "--report", "signs"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["negative"].as_u64().unwrap() >= 2);
    assert!(v["negative_boundary"].as_u64().unwrap() >= 1);
}

#[test]
fn output_is_deterministic() {
    let a = rescurv(&["product", "P3xC4", "--report", "values"]);
    let b = rescurv(&["product", "P3xC4", "--report", "values"]);
    assert_eq!(a.stdout, b.stdout);
    let a = rescurv(&["mc-check", "C5", "0", "2", "--walks", "20000", "--seed", "7"]);
    let b = rescurv(&["mc-check", "C5", "0", "2", "--walks", "20000", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exact_size_cap() {
    let o = rescurv(&["curvature", "P300"]);
    assert_eq!(o.status.code(), Some(1));
    let o = rescurv(&["curvature", "P20", "--max-exact-n", "10"]);
    assert_eq!(o.status.code(), Some(1));
    let o = rescurv(&["curvature", "P20", "--max-exact-n", "20", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let o = rescurv(&["curvature", "P300", "--backend", "float", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("vertex,curvature\n"));
}

#[test]
fn bad_input_exits_one() {
    assert_eq!(rescurv(&["curvature", "Z9"]).status.code(), Some(1));
    assert_eq!(rescurv(&["resistance", "P3", "--pair", "0", "9"]).status.code(), Some(1));
    assert_eq!(rescurv(&["no-such-command"]).status.code(), Some(1));
}

#[test]
fn graph_file_input_and_out_flag() {
    let dir = std::env::temp_dir().join(format!("rescurv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("tri.csv");
    std::fs::write(&csv, "# triangle with one heavy edge\n0,1\n1,2,2\n0,2\n").unwrap();
    let out = dir.join("r.json");
    let o = rescurv(&["resistance", csv.to_str().unwrap(), "--pair", "0", "1", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["resistance"], "3/4");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn ladder_matches_spectral() {
    let o = rescurv(&["ladder", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["matches_spectral"], true);
    assert_eq!(v["curvatures"]["0"], "209/780");
}

#[test]
fn bounds_check_passes_and_sweeps_render() {
    assert_eq!(rescurv(&["bounds-check", "--g1", "C5", "--g2", "P3", "--format", "csv"]).status.code(), Some(0));
    let o = rescurv(&["sweep", "alpha", "--max", "3", "--format", "csv"]);
    assert_eq!(stdout(&o), "n,alpha,alpha_float,above_limit\n1,1,1,true\n2,3/4,0.75,true\n3,11/15,0.7333333333333333,true\n");
    let o = rescurv(&["sweep", "grid-min", "--max", "4", "--format", "csv"]);
    assert!(stdout(&o).contains("3,4,17/4830,true"));
}
