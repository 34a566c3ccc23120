//! End-to-end tests of the command-line surface: exit codes, JSON schema,
//! and witness round-trips.

use std::io::Write;
use std::process::{Command, Output, Stdio};

const TREFOIL: &str = "[[1,4,2,5],[3,6,4,1],[5,2,6,3]]";

fn regionum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_regionum"))
        .args(args)
        .output()
        .expect("spawn regionum")
}

fn regionum_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_regionum"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn regionum");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn mri_json_matches_paper_trefoil() {
    let out = regionum(&["mri", "--pd", TREFOIL, "--json"]);
    let v = stdout_json(&out);
    assert_eq!(v["schema"], "regionum/1");
    assert_eq!(v["mri"], 2);
    assert_eq!(v["reg"], 2);
}

#[test]
fn gen_torus_pipes_into_mri() {
    let gen = regionum(&["gen", "torus", "--k", "2"]);
    assert!(gen.status.success());
    let pd = String::from_utf8(gen.stdout).unwrap();
    let out = regionum_stdin(&["mri", "--json"], &pd);
    let v = stdout_json(&out);
    assert_eq!(v["mri"], 2);
}

#[test]
fn snf_known_diagonal() {
    let out = regionum(&["snf", "--matrix", "[[2,-1],[-1,2]]", "--json"]);
    let v = stdout_json(&out);
    let diag: Vec<String> = v["diagonal"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().to_string())
        .collect();
    assert_eq!(diag, vec!["1", "3"]);
}

#[test]
fn usage_error_exits_2() {
    let out = regionum(&["mri", "--bogus-flag"]);
    assert_eq!(out.status.code(), Some(2));
    let out = regionum(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn computation_error_exits_1_with_diagnostic() {
    let out = regionum(&["mri", "--pd", "[[1,2,3,4]]"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("error"), "stderr was: {err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn rcc_witness_round_trip() {
    // The reported witness feeds back through rcc to reproduce a certified
    // unknot diagram.
    let out = regionum(&["mri", "--pd", TREFOIL, "--json"]);
    let v = stdout_json(&out);
    let witness: Vec<String> = v["mri_witness"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.to_string())
        .collect();
    assert!(!witness.is_empty());
    let rcc = regionum(&["rcc", "--pd", TREFOIL, "--regions", &witness.join(",")]);
    assert!(rcc.status.success());
    let changed_pd = String::from_utf8(rcc.stdout).unwrap();
    let unknot = regionum_stdin(&["unknot", "--json"], &changed_pd);
    let v = stdout_json(&unknot);
    assert_eq!(v["verdict"], "unknot");
}

#[test]
fn det_and_jones() {
    let out = regionum(&["det", "--pd", TREFOIL]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "3");
    let out = regionum(&["jones", "--pd", TREFOIL, "--json"]);
    let v = stdout_json(&out);
    assert_eq!(v["is_one"], false);
    let out = regionum(&["jones", "--pd", "[]", "--json"]);
    let v = stdout_json(&out);
    assert_eq!(v["is_one"], true);
}

#[test]
fn shade_and_regions() {
    let out = regionum(&["regions", "--pd", TREFOIL, "--json"]);
    let v = stdout_json(&out);
    assert_eq!(v["regions"].as_array().unwrap().len(), 5);
    let out = regionum(&["shade", "--pd", TREFOIL, "--json"]);
    let v = stdout_json(&out);
    let black = v["black"].as_array().unwrap().len();
    let white = v["white"].as_array().unwrap().len();
    assert_eq!(black + white, 5);
}

#[test]
fn no_prune_agrees() {
    for pd in [TREFOIL, "[[1,6,2,7],[3,8,4,9],[5,10,6,1],[7,2,8,3],[9,4,10,5]]"] {
        let a = stdout_json(&regionum(&["mri", "--pd", pd, "--json"]));
        let b = stdout_json(&regionum(&["mri", "--pd", pd, "--json", "--no-prune"]));
        assert_eq!(a["mri"], b["mri"]);
        assert_eq!(a["mri_witness"], b["mri_witness"]);
        assert_eq!(a["reg"], b["reg"]);
    }
}

#[test]
fn threads_agree() {
    let a = stdout_json(&regionum(&["mri", "--pd", TREFOIL, "--json"]));
    let b = stdout_json(&regionum(&["mri", "--pd", TREFOIL, "--json", "--threads", "4"]));
    assert_eq!(a["mri"], b["mri"]);
    assert_eq!(a["mri_witness"], b["mri_witness"]);
}

#[test]
fn cache_file_round_trip() {
    let dir = std::env::temp_dir().join(format!("regionum-cli-cache-{}", std::process::id()));
    let path = dir.to_str().unwrap();
    let _ = std::fs::remove_file(&dir);
    let a = stdout_json(&regionum(&["mri", "--pd", TREFOIL, "--json", "--cache", path]));
    assert!(dir.exists());
    let lines = std::fs::read_to_string(&dir).unwrap();
    assert!(lines.lines().count() > 0);
    for line in lines.lines() {
        let v: serde_json::Value = serde_json::from_str(line).expect("cache line is JSON");
        assert!(v.get("key").is_some());
    }
    let b = stdout_json(&regionum(&["mri", "--pd", TREFOIL, "--json", "--cache", path]));
    assert_eq!(a["mri"], b["mri"]);
    std::fs::remove_file(&dir).ok();
}

#[test]
fn csv_ingestion_behaviour() {
    let dir = std::env::temp_dir().join(format!("regionum-cli-csv-{}", std::process::id()));
    // One good row, one link row (skipped with warning), one det mismatch.
    let csv = "name,pd,unknotting_number,signature,conway_a2,determinant\n\
               3_1,\"[[1,4,2,5],[3,6,4,1],[5,2,6,3]]\",1,-2,1,3\n\
               hopf,\"[[2,4,1,3],[4,2,3,1]]\",,,,\n\
               bad_det,\"[[1,4,2,5],[3,6,4,1],[5,2,6,3]]\",,,,5\n";
    std::fs::write(&dir, csv).unwrap();
    let out = regionum(&["verify", "--csv", dir.to_str().unwrap(), "--json"]);
    let v = stdout_json(&out);
    assert_eq!(v["aggregate"]["count"], 1);
    assert_eq!(v["aggregate"]["violations"], 0);
    let knots = v["knots"].as_array().unwrap();
    assert_eq!(knots.len(), 1);
    assert_eq!(knots[0]["name"], "3_1");
    assert_eq!(knots[0]["mri"], 2);
    assert_eq!(knots[0]["checks"]["thm1"], true);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("skipped"), "stderr: {err}");
    std::fs::remove_file(&dir).ok();
}

#[test]
fn bounds_reports_provenance() {
    let dir = std::env::temp_dir().join(format!("regionum-cli-bounds-{}", std::process::id()));
    let csv = "name,pd,unknotting_number,signature,conway_a2,determinant\n\
               5_1,\"[[1,6,2,7],[3,8,4,9],[5,10,6,1],[7,2,8,3],[9,4,10,5]]\",2,-4,3,5\n";
    std::fs::write(&dir, csv).unwrap();
    let out = regionum(&["bounds", "--csv", dir.to_str().unwrap(), "--json"]);
    let v = stdout_json(&out);
    let knot = &v.as_array().unwrap()[0];
    assert_eq!(knot["lower"]["value"], 2);
    assert_eq!(knot["upper"]["value"], 2);
    assert_eq!(knot["tight"], true);
    let prov: Vec<&str> = knot["upper"]["provenance"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p.as_str().unwrap())
        .collect();
    assert!(prov.contains(&"diagram_search"));
    std::fs::remove_file(&dir).ok();
}

#[test]
fn outer_region_override() {
    let out = regionum(&["shade", "--pd", TREFOIL, "--json", "--outer-region", "3"]);
    let v = stdout_json(&out);
    assert_eq!(v["outer"], 3);
}
