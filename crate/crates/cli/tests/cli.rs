use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn example(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("examples")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zonetile"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn surface_of_genus_three() {
    let out = run(&["surface", &example("genus3.ccs")]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["genus"], serde_json::json!([3]));
    assert_eq!(v["faces"], 1);
    assert_eq!(v["face_loops"][0].as_array().unwrap().len(), 20);
}

#[test]
fn canonical_six_parallelograms() {
    let out = run(&["canonical", &example("proof1.ccs")]);
    assert!(out.status.success());
    let v = json_of(&out);
    let lambda = v["lambda"].as_f64().unwrap();
    assert!((lambda - 2.0 * 2f64.sqrt()).abs() < 1e-9);
    // e0 is proportional to (-1-2√2 i, 1-√2 i, 1-√2 i, 3)
    let e: Vec<(f64, f64)> = v["e0"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| (p[0].as_f64().unwrap(), p[1].as_f64().unwrap()))
        .collect();
    let r2 = 2f64.sqrt();
    let want = [(-1.0, -2.0 * r2), (1.0, -r2), (1.0, -r2), (3.0, 0.0)];
    // ratio e_k / want_k is the same complex number for every k
    let ratio = |(a, b): (f64, f64), (c, d): (f64, f64)| {
        let n = c * c + d * d;
        ((a * c + b * d) / n, (b * c - a * d) / n)
    };
    let r0 = ratio(e[0], want[0]);
    for k in 1..4 {
        let rk = ratio(e[k], want[k]);
        assert!((rk.0 - r0.0).abs() < 1e-9 && (rk.1 - r0.1).abs() < 1e-9);
    }
}

#[test]
fn square_tile_svg() {
    let out = run(&[
        "tile",
        &example("trivial.ccs"),
        "--canonical",
        "--copies",
        "1x1",
        "--svg",
    ]);
    assert!(out.status.success());
    let svg = String::from_utf8(out.stdout).unwrap();
    assert_eq!(svg.matches("<polygon").count(), 1);
}

#[test]
fn tile_from_edge_file_with_overlay() {
    let dir = tempfile::tempdir().unwrap();
    let edges = dir.path().join("e.json");
    let edges = edges.to_str().unwrap();
    let out = run(&["canonical", &example("proof1.ccs"), "--edges-out", edges]);
    assert!(out.status.success());
    let out = run(&[
        "tile",
        &example("proof1.ccs"),
        "--edges",
        edges,
        "--copies",
        "2x2",
        "--svg",
        "--overlay",
    ]);
    let svg = String::from_utf8(out.stdout).unwrap();
    assert_eq!(svg.matches("<polygon").count(), 24);
    assert_eq!(svg.matches("<polyline").count(), 16);

    let out = run(&[
        "tile",
        &example("proof1.ccs"),
        "--edges",
        edges,
        "--copies",
        "3x3",
        "--json",
    ]);
    assert_eq!(json_of(&out)["cells"].as_array().unwrap().len(), 54);

    let adm = run(&["admissible", &example("proof1.ccs"), "--edges", edges]);
    assert!(adm.status.success());
    assert_eq!(json_of(&adm)["admissible"], true);

    let path = run(&[
        "deform",
        &example("proof1.ccs"),
        "--from",
        edges,
        "--to",
        edges,
        "--steps",
        "4",
    ]);
    assert!(path.status.success());
    assert_eq!(json_of(&path)["samples"].as_array().unwrap().len(), 5);

    let bd = run(&["boundary", &example("proof1.ccs"), "--edges", edges]);
    assert_eq!(json_of(&bd)["hits"], serde_json::json!([]));
}

#[test]
fn output_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("m.json");
    let out = run(&[
        "matrix",
        &example("proof1.ccs"),
        "-o",
        target.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(target).unwrap()).unwrap();
    assert_eq!(v["rank"], 2);
}

#[test]
fn gen_is_deterministic_and_parseable() {
    let args = [
        "gen",
        "--curves",
        "4",
        "--labels",
        "10",
        "--essential",
        "--seed",
        "17",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g.ccs");
    std::fs::write(&file, &a.stdout).unwrap();
    let ess = run(&["essential", file.to_str().unwrap()]);
    assert!(ess.status.success());
    assert_eq!(json_of(&ess)["essential"], true);

    let other = run(&[
        "gen",
        "--curves",
        "4",
        "--labels",
        "10",
        "--essential",
        "--seed",
        "18",
    ]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn gen_failure_is_reported() {
    let out = run(&[
        "gen",
        "--curves",
        "5",
        "--labels",
        "5",
        "--essential",
        "--attempts",
        "50",
        "--json-errors",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "Generation");
}

#[test]
fn exit_codes() {
    assert_eq!(
        run(&["essential", &example("genus3.ccs")]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["essential", &example("torus.ccs")]).status.code(),
        Some(0)
    );
    assert_eq!(
        run(&["canonical", &example("genus3.ccs")]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        run(&["tile", &example("trivial.ccs"), "--copies", "1x1", "--svg"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["rototiler", &example("torus.ccs")]).status.code(),
        Some(2)
    );
}

#[test]
fn syntax_errors_are_json_when_requested() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.ccs");
    std::fs::write(&file, "1 x\n-1\n").unwrap();
    let out = run(&["validate", file.to_str().unwrap(), "--json-errors"]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "Syntax");
}

#[test]
fn rototiler_round_trip() {
    let list = json_of(&run(&["rototiler", &example("torus.ccs"), "--list"]));
    let moves = list["moves"].as_array().unwrap();
    assert_eq!(moves.len(), 2);
    let face = moves[0]["face"].as_u64().unwrap().to_string();
    let out = run(&["rototiler", &example("torus.ccs"), "--apply", &face]);
    assert!(out.status.success());
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("flipped.ccs");
    std::fs::write(&file, &out.stdout).unwrap();
    let before = json_of(&run(&["matrix", &example("torus.ccs")]));
    let after = json_of(&run(&["matrix", file.to_str().unwrap()]));
    assert_eq!(before, after);
    let surface = json_of(&run(&["surface", file.to_str().unwrap()]));
    assert_eq!(surface["faces"], 5);
    assert_eq!(surface["genus"], serde_json::json!([1]));

    let bad = run(&["rototiler", &example("torus.ccs"), "--apply", "0"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "tile",
        &example("torus.ccs"),
        "--canonical",
        "--copies",
        "2x3",
        "--json",
    ];
    let (a, b) = (run(&args), run(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}
