use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moduli-tiler")).args(args).env_remove("MODULI_TILER_CATALOG_DIR").output().unwrap()
}

fn lines(out: &Output) -> Vec<Value> {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn surface_info() {
    let r = lines(&run(&["--surface", "s2_0", "surface"]));
    assert_eq!(r[0]["complexity"], 3);
    let r = lines(&run(&["--surface", "s1_1", "surface"]));
    assert_eq!(r[0]["catalog"]["maximal"], 1);
}

#[test]
fn missing_file_is_an_io_error() {
    let out = run(&["--surface", "no/such/surface.json", "surface"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "io");
    let out = run(&["--surface", "s1_1", "--catalog", "no/such/catalog.json", "surface"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn domain_errors_exit_one() {
    let out = run(&["--surface", "s1_1", "--epsilon", "0.5", "classify", "--point", "1.0/0"]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "epsilon_out_of_range");
    assert_eq!(run(&["--surface", "s1_1", "probe-flat"]).status.code(), Some(1));
    assert_eq!(run(&["--surface", "s1_2", "distortion"]).status.code(), Some(1));
}

#[test]
fn classify_records() {
    let r = lines(&run(&["--surface", "s1_1", "classify", "--point", "2.0/0.3", "--point", "0.01/0.002"]));
    assert_eq!(r[0], serde_json::json!({"kind": "thick"}));
    assert_eq!(r[1]["kind"], "thin");
    assert_eq!(r[1]["sigma"], serde_json::json!(["a"]));
    let u = r[1]["cone_coords"][0].as_f64().unwrap();
    assert!((u - 0.5 * (0.1f64 / 0.01).ln()).abs() < 1e-15);
}

#[test]
fn point_files() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("points.json");
    std::fs::write(
        &p,
        r#"[{"coordinates": {"c1": {"length": 0.02, "twist": 0.0}, "c2": {"length": 1.0, "twist": 0.1}}},
            {"coordinates": {"c1": {"length": 1.0, "twist": 0.0}, "c2": {"length": 1.0, "twist": 0.0}}}]"#,
    )
    .unwrap();
    let r = lines(&run(&["--surface", "s0_5", "classify", "--point", p.to_str().unwrap()]));
    assert_eq!(r.len(), 2);
    assert_eq!(r[0]["sigma"], serde_json::json!(["c1"]));
    assert_eq!(r[1]["kind"], "thick");
    std::fs::write(&p, "{ not json").unwrap();
    assert_eq!(run(&["--surface", "s0_5", "classify", "--point", p.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn short_curves_report() {
    let r = lines(&run(&["--surface", "s1_1", "short-curves", "--point", "0.01/0.002"]));
    assert_eq!(r[0]["complete"], true);
    assert_eq!(r[0]["curves"][0]["pants_curve"], "a");
}

#[test]
fn dist_on_identical_points_is_zero() {
    for mode in ["thin", "wp", "mcm"] {
        let r = lines(&run(&["--surface", "s1_2", "dist", "--x", "0.01,0.5/0,0.1", "--y", "0.01,0.5/0,0.1", "--mode", mode]));
        assert_eq!(r[0]["distance"].as_f64(), Some(0.0));
        assert_eq!(r[0]["mode"], mode);
    }
    let r = lines(&run(&["--surface", "s2_0", "dist", "--x", "0.001,0.001,0.001", "--y", "0.001,0.001,0.001", "--y-surface", "s2_0_theta"]));
    assert!(r[0]["distance"].as_f64().unwrap() > 0.0);
}

#[test]
fn cone_commands() {
    let r = lines(&run(&["--surface", "s0_5", "cone", "dist", "--u", "3@v0", "--v", "4@v0"]));
    assert_eq!(r[0]["distance"].as_f64(), Some(1.0));
    let r = lines(&run(&["--surface", "s0_5", "cone", "dist", "--u", "2.5@e0:1,2", "--v", "O"]));
    assert_eq!(r[0]["distance"].as_f64(), Some(2.5));
    let r = lines(&run(&["--surface", "s2_0", "--seed", "3", "--samples", "100", "cone", "check-cat0"]));
    assert_eq!(r[0]["cat0"], true);
    assert_eq!(run(&["--surface", "s0_5", "cone", "dist", "--u", "1@e0:1", "--v", "O"]).status.code(), Some(1));
}

#[test]
fn net_lists_one_base_point_per_chamber() {
    let r = lines(&run(&["--surface", "s1_2", "net"]));
    assert_eq!(r.len(), 2);
    assert!(r.iter().all(|c| c["lengths"].as_array().unwrap().iter().all(|l| l.as_f64() == Some(0.1))));
}

#[test]
fn distortion_scales_by_n() {
    let args = ["--surface", "s1_2", "--seed", "42", "--samples", "200", "distortion", "--n", "1,2", "--radius", "10"];
    let out = run(&args);
    let r = lines(&out);
    assert_eq!(r.len(), 2);
    let (a, b) = (r[0]["sup_defect"].as_f64().unwrap(), r[1]["sup_defect"].as_f64().unwrap());
    assert!(a > 0.0);
    assert_eq!(a, 2.0 * b);
    // byte-identical on a rerun
    assert_eq!(run(&args).stdout, out.stdout);
}

#[test]
fn probe_and_csv() {
    let out = run(&["--surface", "s0_5", "--format", "csv", "probe-flat", "--radius", "10,20"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rows = text.lines();
    assert_eq!(rows.next().unwrap(), "bound,cone,deviation,diagonals,radius,ratio,sides,within_bound");
    assert_eq!(rows.count(), 2);
}

#[test]
fn export_matches_shipped_catalogs() {
    let dir = tempfile::tempdir().unwrap();
    for (g, p) in [(1, 1), (0, 4), (1, 2), (0, 5), (2, 0)] {
        let file = dir.path().join(format!("s{g}_{p}.json"));
        let out = run(&["export-catalog", "--genus", &g.to_string(), "--punctures", &p.to_string(), "--out", file.to_str().unwrap()]);
        assert!(out.status.success());
        let shipped = std::fs::read_to_string(format!("{}/../core/assets/catalogs/s{g}_{p}.json", env!("CARGO_MANIFEST_DIR"))).unwrap();
        assert_eq!(std::fs::read_to_string(&file).unwrap(), shipped);
    }
}

#[test]
fn catalog_dir_discovery() {
    let dir = tempfile::tempdir().unwrap();
    // a single-vertex stand-in for the S1,2 catalog is picked up through the environment
    std::fs::write(
        dir.path().join("s1_2.json"),
        r#"{"surface": {"genus": 1, "punctures": 2}, "simplices": [{"id": "v0", "dim": 0, "type_label": "x", "faces": []}]}"#,
    )
    .unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_moduli-tiler"))
        .args(["--surface", "s1_2", "surface"])
        .env("MODULI_TILER_CATALOG_DIR", dir.path())
        .output()
        .unwrap();
    let r = lines(&out);
    assert_eq!(r[0]["catalog"]["simplices"], 1);
}
