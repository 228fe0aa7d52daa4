use std::io::Write;
use std::process::{Command, Output};

use river_banks::golden;
use river_banks::tables::normalize_ascii;

const HM_JSON: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/golden/hm.table.json");

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_river-banks"))
        .args(args)
        .env_remove("RIVER_BANKS_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn temp_file(suffix: &str, contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(suffix).tempfile().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn table_reproduces_reference_block() {
    let o = run(&["table", "push(4,1,-1) on P3", "--window", "-4:3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(normalize_ascii(&stdout(&o)), normalize_ascii(golden::EXAMPLE_F));
    let o = run(&["table", "push(4,1,-1) on P3", "--window=-4:3", "--format", "json"]);
    assert_eq!(json(&o)["rows"][0], serde_json::json!([70, 24, 0, 0, 0, 0, 0, 0]));
}

#[test]
fn indices_of_json_file() {
    let o = run(&["indices", HM_JSON]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["reg"][1]["value"], 1);
    assert_eq!(v["coreg"][0]["value"], -5);
    assert_eq!(v["coreg"][0]["window_limited"], false);
}

#[test]
fn indices_of_ascii_file_and_flags() {
    let f = temp_file(".txt", "1: . . .\n0: 1 2 3\n   0 1 2\n");
    let o = run(&["indices", f.path().to_str().unwrap()]);
    // reg^0 is found at the left edge of the window
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(json(&o)["reg"][0]["window_limited"], true);
}

#[test]
fn tensor_and_bounds() {
    let o = run(&["tensor", "S[1,0]", "S[1,0]", "--window", "-3:2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["n"], 2);
    let o = run(&["tensor", "push(1,0)", "S[1,0]"]);
    assert_eq!(o.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let mut paths = Vec::new();
    for (name, text) in [("f.txt", golden::EXAMPLE_F), ("g.txt", golden::EXAMPLE_G), ("fg.txt", golden::EXAMPLE_FG)] {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        paths.push(p.to_str().unwrap().to_string());
    }
    let o = run(&["check-bounds", &paths[0], &paths[1], &paths[2]]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!(v["reg"]["entries"].as_array().unwrap().iter().all(|e| e["equality"] == true));
    assert_eq!(v["coreg"]["entries"][0]["actual"], -4);

    // O ⊗ O(1) is O(1), not O(5): a certified violation
    let o = run(&["check-bounds", "O(0) on P2", "O(1) on P2", "O(5) on P2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn sharpness_command() {
    let o = run(&["check-sharpness", "1,0", "1,0", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["equal"], true);
    let o = run(&["check-sharpness", "2,-1", "0,-3", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(run(&["check-sharpness", "1,0", "1,0,0", "--n", "2"]).status.code(), Some(2));
}

#[test]
fn decompose_command() {
    let o = run(&["decompose", "O(0) (+) S[1,0] on P2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["terms"], serde_json::json!([{"coeff": "1", "lambda": "0,0"}, {"coeff": "1", "lambda": "1,0"}]));
    assert_eq!(v["residual_zero"], true);
    assert_eq!(run(&["decompose", "O(-1) on P2"]).status.code(), Some(2));
}

#[test]
fn unobstructed_command() {
    let o = run(&["unobstructed", HM_JSON]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["holds"], false);
    assert_eq!(v["margins"], serde_json::json!([6, 6]));
    let f = temp_file(".txt", golden::GAMMA);
    let v = json(&run(&["unobstructed", f.path().to_str().unwrap()]));
    assert_eq!(v["holds"], true);
    assert_eq!(v["margins"][1], 3);
}

#[test]
fn wedge_command_and_seed() {
    let o = run(&["wedge-kernel", "--eta1", "e12", "--eta2", "e12"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["min_kernel_dim"], 7);

    let a = json(&run(&["wedge-kernel", "--trials", "5", "--seed", "9"]));
    let b = Command::new(env!("CARGO_BIN_EXE_river-banks"))
        .args(["wedge-kernel", "--trials", "5"])
        .env("RIVER_BANKS_SEED", "9")
        .output()
        .unwrap();
    assert_eq!(a, json(&b));
    assert_eq!(a["seed"], 9);
    let d = json(&run(&["wedge-kernel", "--trials", "3"]));
    assert_eq!(d["seed"], river_banks::exterior::DEFAULT_SEED);
    assert!(d["min_kernel_dim"].as_u64().unwrap() >= 1);
    let bad = Command::new(env!("CARGO_BIN_EXE_river-banks"))
        .args(["wedge-kernel", "--trials", "1"])
        .env("RIVER_BANKS_SEED", "abc")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn golden_verify_passes_deterministically() {
    let a = run(&["golden", "verify"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(json(&a)["passed"], true);
    assert_eq!(stdout(&a), stdout(&run(&["golden", "verify"])));
}

#[test]
fn errors_go_to_stderr_with_usage_code() {
    let o = run(&["table", "S[1,0] (+) Q(2) on P2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 1, column 12"), "{err}");
    assert_eq!(run(&["table", "S[1,0]", "--window", "3:1"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
}

#[test]
fn literal_window_exceeded_is_undecidable() {
    let o = run(&["table", HM_JSON, "--window", "-6:0"]);
    assert_eq!(o.status.code(), Some(3));
}
