use std::path::Path;
use std::process::{Command, Output};

fn leibrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leibrep"))
        .args(args)
        .env_remove("LEIBREP_MAX_DIM")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn construct(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name).to_string_lossy().into_owned();
    let mut full = vec!["construct"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", &path]);
    let out = leibrep(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn construct_sym_zero() {
    let out = leibrep(&["construct", "--family", "sym", "--n", "0"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["dim"], 1);
    for g in ["e", "f", "h"] {
        assert_eq!(v["lambda"][g], serde_json::json!([["0"]]));
        assert_eq!(v["rho"][g], serde_json::json!([["0"]]));
    }
}

#[test]
fn enumerate_finds_two() {
    let out = leibrep(&["enumerate", "--n", "4", "--k", "2"]);
    assert!(out.status.success());
    let v = json(&out);
    let found = v["indecomposable"].as_array().unwrap();
    assert_eq!(found.len(), 2);
    let families: Vec<&str> = found.iter().map(|s| s["family"].as_str().unwrap()).collect();
    assert_eq!(families, ["case1", "case2"]);
}

#[test]
fn verify_and_tamper() {
    let dir = tempfile::tempdir().unwrap();
    let path = construct(dir.path(), "c1.json", &["--family", "case1", "--n", "6", "--k", "3"]);
    let out = leibrep(&["verify", &path]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["pass"], true);

    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    v["lambda"]["f"][2][0] = serde_json::json!("5");
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, v.to_string()).unwrap();
    let out = leibrep(&["verify", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["pass"], false);
    assert!(out.stderr.is_empty());
}

#[test]
fn round_trip_matches_in_memory() {
    let dir = tempfile::tempdir().unwrap();
    let path = construct(dir.path(), "c2.json", &["--family", "case2", "--n", "5", "--k", "2"]);
    let b: leibrep::bimodule::Bimodule =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let direct = leibrep::classify::make_case2(5, 2).unwrap();
    assert_eq!(b, direct);
    assert_eq!(b.verify_axioms(), direct.verify_axioms());
}

#[test]
fn analysis_commands() {
    let dir = tempfile::tempdir().unwrap();
    let path = construct(dir.path(), "c1.json", &["--family", "case1", "--n", "4", "--k", "2"]);
    let out = leibrep(&["decompose", &path]);
    assert!(out.status.success());
    assert_eq!(json(&out)["weights"], serde_json::json!([4, 2]));

    let out = leibrep(&["indecomposable", &path]);
    assert!(out.status.success());
    assert_eq!(json(&out)["verdict"], "indecomposable");

    let out = leibrep(&["subbimodules", &path]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["extension"]["antisymmetric_weights"], serde_json::json!([4]));

    let out = leibrep(&["solve-left", "--shape", "4,2"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["solution"]["parameters"].as_array().unwrap().len(), 4);
    assert!(!v["quadratic_system"]["equations"].as_array().unwrap().is_empty());
}

#[test]
fn output_is_deterministic() {
    let a = leibrep(&["solve-left", "--shape", "3,1"]);
    let b = leibrep(&["solve-left", "--shape", "3,1"]);
    assert_eq!(a.stdout, b.stdout);
    let a = leibrep(&["construct", "--family", "case2", "--n", "4", "--k", "3"]);
    let b = leibrep(&["construct", "--family", "case2", "--n", "4", "--k", "3"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["construct", "--family", "nope", "--n", "2"][..],
        &["construct", "--family", "case1", "--n", "2"],
        &["construct", "--family", "case1", "--n", "4", "--k", "4"],
        &["solve-left", "--shape", "2,4"],
        &["enumerate", "--n", "x", "--k", "2"],
        &["verify", "/nonexistent/file.json"],
        &[],
    ] {
        let out = leibrep(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn max_dim_is_enforced() {
    let out = Command::new(env!("CARGO_BIN_EXE_leibrep"))
        .args(["construct", "--family", "sym", "--n", "10"])
        .env("LEIBREP_MAX_DIM", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("LEIBREP_MAX_DIM"));
}

#[test]
fn unshaped_input_is_canonicalized() {
    // antisym V(2) written in a permuted basis, no shape recorded
    let b = leibrep::bimodule::Bimodule::make_right_irreducible(2);
    let r = |v: [i64; 3]| v.map(leibrep::rational::int).to_vec();
    let p = leibrep::MatrixQ::from_rows(vec![r([0, 0, 1]), r([1, 0, 0]), r([0, 1, 0])]).unwrap();
    let moved = b.change_of_basis(&p).unwrap();
    assert!(moved.shape().is_none());
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    std::fs::write(&path, serde_json::to_string(&moved).unwrap()).unwrap();
    let out = leibrep(&["indecomposable", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["verdict"], "indecomposable");
}
