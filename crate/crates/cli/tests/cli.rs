use std::process::{Command, Output};

use serde_json::Value;

fn obtsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_obtsim"))
        .args(args)
        .env_remove("OBTSIM_SEED")
        .output()
        .expect("failed to run obtsim")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = obtsim(args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn verify_passes_and_lists_reference_values() {
    let o = obtsim(&["verify"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("PASS ot_from_nlbox exhaustive (16/16)"));
    assert!(text.contains("chsh classical optimum"));
    assert!(text.contains("0.75"));
    assert!(text.contains("0.8535533906"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(
        obtsim(&["estimate", "no-such-experiment"]).status.code(),
        Some(2)
    );
    assert_eq!(
        obtsim(&["estimate", "chsh-nlbox", "--trials", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(obtsim(&["sweep", "--points", "1"]).status.code(), Some(2));
    assert_eq!(
        obtsim(&["estimate", "ot-quantum", "--format", "xml"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(obtsim(&[]).status.code(), Some(2));
}

#[test]
fn estimate_nlbox_chsh_is_perfect() {
    let v = json(&[
        "estimate",
        "chsh-nlbox",
        "--trials",
        "1000",
        "--format",
        "json",
    ]);
    assert_eq!(v["command"], "estimate");
    assert_eq!(v["results"][0]["value"].as_f64(), Some(1.0));
    assert_eq!(v["transcript"]["nlbox_uses"], 1);
    assert_eq!(v["params"]["seed"], 42);
}

#[test]
fn estimate_aligned_teleport_is_perfect() {
    let v = json(&[
        "estimate",
        "teleport-ot",
        "--trials",
        "100000",
        "--seed",
        "1",
        "--format",
        "json",
    ]);
    assert_eq!(v["results"][0]["value"].as_f64(), Some(1.0));
    assert_eq!(v["transcript"]["ot_uses"], 1);
    assert_eq!(v["transcript"]["classical_bits"], 0);
}

#[test]
fn seed_from_environment_unless_flag_given() {
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_obtsim"));
        cmd.args([
            "estimate",
            "ot-quantum",
            "--trials",
            "100",
            "--format",
            "json",
        ]);
        cmd.env_remove("OBTSIM_SEED");
        if let Some(e) = env {
            cmd.env("OBTSIM_SEED", e);
        }
        if let Some(f) = flag {
            cmd.args(["--seed", f]);
        }
        let v: Value = serde_json::from_slice(&cmd.output().unwrap().stdout).unwrap();
        v["params"]["seed"].as_u64().unwrap()
    };
    assert_eq!(run(None, None), 42);
    assert_eq!(run(Some("9"), None), 9);
    assert_eq!(run(Some("9"), Some("3")), 3);
}

/// Every number in the document has at most 10 significant digits, so the
/// parsed value re-prints to the same text.
fn assert_numbers_round_trip(v: &Value) {
    match v {
        Value::Number(n) => {
            let x = n.as_f64().unwrap();
            let reprinted: f64 = format!("{x:.9e}").parse().unwrap();
            assert_eq!(x, reprinted, "{n}");
            assert_eq!(
                serde_json::to_string(&x).unwrap().parse::<f64>().unwrap(),
                x
            );
        }
        Value::Array(a) => a.iter().for_each(assert_numbers_round_trip),
        Value::Object(o) => o.values().for_each(assert_numbers_round_trip),
        _ => {}
    }
}

#[test]
fn json_schema_and_number_formatting() {
    let v = json(&[
        "sweep", "--points", "5", "--trials", "2000", "--format", "json",
    ]);
    for key in ["command", "params", "results", "transcript", "references"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_numbers_round_trip(&v);

    let rows = v["results"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    let refs: Vec<f64> = rows
        .iter()
        .map(|r| r["reference"].as_f64().unwrap())
        .collect();
    assert_eq!(refs, [1.0, 0.8535533906, 0.5, 0.1464466094, 0.0]);
    for r in rows {
        assert!(r.get("ci95").is_some() || r["exact"] == true);
    }
    assert_eq!(rows[0]["value"].as_f64(), Some(1.0));
    assert_eq!(rows[4]["value"].as_f64(), Some(0.0));

    let raw = stdout(&obtsim(&["verify", "--format", "json"]));
    let v: Value = serde_json::from_str(&raw).unwrap();
    assert_numbers_round_trip(&v);
    assert!(v["results"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["exact"] == true));
}

#[test]
fn csv_has_header_and_one_row_per_point() {
    let o = obtsim(&[
        "sweep",
        "--protocol",
        "teleport-nlbox",
        "--points",
        "7",
        "--trials",
        "500",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "label,theta,value,exact,ci95_low,ci95_high,reference"
    );
    assert_eq!(lines.len(), 8);
    assert!(lines[1..].iter().all(|l| l.split(',').count() == 7));
}
