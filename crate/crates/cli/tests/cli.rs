use std::process::{Command, Output};

fn chordiag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chordiag")).args(args).env_remove("CHORDIAG_OUT_DIR").output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn evolve_point_table_has_planar_octagon_rows() {
    let out = chordiag(&["evolve", "--model", "point", "--orientable", "--max-k", "4", "--one-backbone", "8", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# {\"artifact\""));
    let rows: Vec<&str> = text.lines().filter(|l| l.starts_with("Orientable,Point,0,2,4,e8,")).collect();
    let total: u32 = rows.iter().map(|r| r.rsplit(',').next().unwrap().parse::<u32>().unwrap()).sum();
    assert_eq!(total, 28 + 84 + 28);
}

#[test]
fn evolve_non_orientable_length_and_initial_tables() {
    let out = chordiag(&["evolve", "--model", "length", "--non-orientable", "--max-k", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["config"]["variant"], "non-orientable");
    assert!(v["rows"].as_array().unwrap().iter().any(|r| r["k"] == 3));

    let out = chordiag(&["evolve", "--max-k", "0", "--one-backbone", "3"]);
    let v = json(&out);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r["k"] == 0 && r["count"] == "1"));
}

#[test]
fn configuration_errors_exit_with_two() {
    let out = chordiag(&["evolve", "--model", "vertex", "--non-orientable", "--max-k", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(chordiag(&["check", "nonsense"]).status.code(), Some(2));
    assert_eq!(chordiag(&["evolve"]).status.code(), Some(2));
    assert_eq!(chordiag(&["oracle", "dump", "--sizes", "2", "--k", "3"]).status.code(), Some(2));
}

#[test]
fn passing_and_failing_suites() {
    let golden = chordiag(&["check", "golden"]);
    assert_eq!(golden.status.code(), Some(0));
    let v = json(&golden);
    assert!(v["outcomes"].as_array().unwrap().iter().all(|o| o["passed"] == true));

    let oracle = chordiag(&["check", "oracle", "--max-vertices", "8"]);
    assert_eq!(oracle.status.code(), Some(0));

    let shapes = chordiag(&["check", "shapes"]);
    assert_eq!(shapes.status.code(), Some(1));
    assert!(String::from_utf8(shapes.stderr).unwrap().contains("FAIL"));
}

#[test]
fn kp_suite_prints_a_matrix() {
    let out = chordiag(&["check", "kp"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["kp_matrix"].as_array().unwrap().len(), 40);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("eq4  + + + + +"));
}

#[test]
fn matrix_suite_small_sample() {
    let out = chordiag(&["check", "matrix", "--samples", "20000", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn same_seed_same_bytes() {
    let args = ["matrix", "sample", "--ensemble", "real-symmetric", "--n", "3", "--p", "1", "--s", "1", "--samples", "3000"];
    let a = chordiag(&args);
    let b = chordiag(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let mut other = args.to_vec();
    other.extend(["--seed", "8"]);
    assert_ne!(chordiag(&other).stdout, a.stdout);
}

#[test]
fn output_directory_from_environment() {
    let dir = std::env::temp_dir().join(format!("chordiag-cli-test-{}", std::process::id()));
    let out = Command::new(env!("CARGO_BIN_EXE_chordiag"))
        .args(["transforms", "--measure", "semicircle", "--order", "6"])
        .env("CHORDIAG_OUT_DIR", &dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written: serde_json::Value = serde_json::from_slice(&std::fs::read(dir.join("transforms.json")).unwrap()).unwrap();
    assert_eq!(written["result"]["r_transform"], serde_json::json!(["0", "1", "0", "0", "0"]));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn oracle_dump_of_a_square() {
    let out = chordiag(&["oracle", "dump", "--sizes", "4", "--k", "2", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let counts: u32 = text.lines().skip(2).map(|l| l.rsplit(',').next().unwrap().parse::<u32>().unwrap()).sum();
    assert_eq!(counts, 3);
}
