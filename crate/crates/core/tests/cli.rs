use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wheel-green")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

const K4: [&str; 8] = ["--m", "3", "--d", "1", "--a", "1", "--c", "1"];
const W22: [&str; 8] = ["--m", "2", "--d", "2", "--a", "1", "--c", "1"];

fn with<'a>(cmd: &'a str, net: &[&'a str], rest: &[&'a str]) -> Vec<&'a str> {
    let mut v = vec![cmd];
    v.extend_from_slice(net);
    v.extend_from_slice(rest);
    v
}

#[test]
fn k4_csv_matrix() {
    let text = stdout(&with("ginv", &K4, &["--method", "pipeline", "--format", "csv"]));
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0], "0.1875,-0.0625,-0.0625,-0.0625");
    assert_eq!(rows[3], "-0.0625,-0.0625,-0.0625,0.1875");
    let with_header = stdout(&with("ginv", &K4, &["--format", "csv", "--header"]));
    assert!(with_header.starts_with("v1,v2,v3,v4\n"));
}

#[test]
fn oracle_json_envelope() {
    let v = json(&with("ginv", &W22, &["--method", "oracle"]));
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["method"], "oracle");
    assert_eq!(v["params"]["n"], 4);
    assert_eq!(v["payload"][4][4].as_f64(), Some(0.36));
}

#[test]
fn theorem_and_pipeline_agree_to_printed_digits() {
    let a = json(&with("ginv", &["--m", "4", "--d", "3", "--a", "2", "--c", "0.5"], &["--method", "theorem"]));
    let b = json(&with("ginv", &["--m", "4", "--d", "3", "--a", "2", "--c", "0.5"], &[]));
    assert_eq!(a["payload"], b["payload"]);
}

#[test]
fn resistance_examples() {
    assert_eq!(stdout(&with("resistance", &K4, &["--i", "1", "--j", "4", "--format", "csv"])), "0.5\n");
    assert_eq!(stdout(&with("resistance", &W22, &["--i", "1", "--j", "3", "--format", "csv"])), "0.6666666667\n");
    assert_eq!(stdout(&with("resistance", &W22, &["--i", "2", "--j", "2", "--format", "csv"])), "0\n");
    let closed = stdout(&with("resistance", &W22, &["--i", "1", "--j", "5", "--method", "closed", "--format", "csv"]));
    let pipe = stdout(&with("resistance", &W22, &["--i", "1", "--j", "5", "--format", "csv"]));
    assert_eq!(closed, pipe);
}

#[test]
fn resistance_table_is_symmetric_with_zero_diagonal() {
    let v = json(&with("resistance", &W22, &["--all"]));
    let t = v["payload"].as_array().unwrap();
    assert_eq!(t.len(), 5);
    for i in 0..5 {
        assert_eq!(t[i][i].as_f64(), Some(0.0));
        for j in 0..5 {
            assert_eq!(t[i][j], t[j][i]);
        }
    }
}

#[test]
fn kirchhoff_examples() {
    assert_eq!(stdout(&with("kirchhoff", &K4, &["--format", "csv"])), "3\n");
    assert_eq!(stdout(&with("kirchhoff", &K4, &["--method", "closed", "--format", "csv"])), "3\n");
    let v = json(&with("kirchhoff", &W22, &[]));
    assert!((v["payload"].as_f64().unwrap() - 23.0 / 3.0).abs() < 1e-9);
    let net = ["--m", "4", "--d", "3", "--a", "2", "--c", "0.5"];
    let closed = json(&with("kirchhoff", &net, &["--method", "closed"]))["payload"].as_f64().unwrap();
    let pipe = json(&with("kirchhoff", &net, &["--method", "pipeline"]))["payload"].as_f64().unwrap();
    assert!((closed - pipe).abs() <= 1e-9);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("wheel-green-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("k.csv");
    let out = run(&with("kirchhoff", &K4, &["--format", "csv", "--header", "--out", path.to_str().unwrap()]));
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "kirchhoff\n3\n");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_0_and_ledger_on_default_validate() {
    let out = run(&["validate"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["params"].is_null());
    let ledger = v["errata"].as_array().unwrap();
    let find = |id: &str| ledger.iter().find(|r| r["formula_id"] == id).unwrap().clone();
    assert_eq!(find("thm21_corner")["status"], "verified-as-printed");
    let k = find("prop31_kirchhoff");
    assert_eq!(k["status"], "reconstructed");
    assert!(k["reconstruction"].as_str().unwrap().contains("(d²-1)"));
}

#[test]
fn exit_1_on_overflow_and_unattainable_tolerance() {
    let out = run(&["ginv", "--m", "60", "--d", "1", "--a", "1000", "--c", "0.001"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("1e300"));
    let out = run(&["validate", "--sweep", "m=3,d=1", "--tol", "1e-20"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("floating-point"));
}

#[test]
fn exit_2_on_usage_errors() {
    let out = run(&with("ginv", &["--m", "1", "--d", "4", "--a", "1", "--c", "1"], &[]));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("m > 1"));
    for args in [
        with("resistance", &W22, &["--i", "6", "--j", "1"]),
        with("resistance", &W22, &["--i", "0", "--j", "1"]),
        with("resistance", &W22, &["--i", "1"]),
        with("ginv", &W22, &["--method", "closed"]),
        with("ginv", &["--m", "3", "--d", "1", "--a", "-1", "--c", "1"], &[]),
        vec!["ginv", "--m", "3"],
        vec!["validate", "--sweep", "m=1..3"],
        vec!["validate", "--tol", "0"],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn exit_3_when_a_formula_has_no_sweep_points() {
    let out = run(&["validate", "--sweep", "m=2..4,d=2..3"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cor32_kirchhoff"));
}

#[test]
fn byte_deterministic() {
    for args in [
        with("ginv", &["--m", "5", "--d", "4", "--a", "0.3", "--c", "1.7"], &["--method", "theorem"]),
        with("resistance", &W22, &["--all", "--format", "csv"]),
        vec!["validate", "--sweep", "m=2..3,d=1..3", "--format", "csv", "--header"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.status.code(), b.status.code());
        assert!(!a.stdout.contains(&b'\r'));
    }
}

#[test]
fn unwritable_out_path_is_a_runtime_fault() {
    let out = run(&["kirchhoff", "--m", "3", "--d", "1", "--a", "1", "--c", "1", "--out", "/nonexistent-dir/k.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot write output"));
}
