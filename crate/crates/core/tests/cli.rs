use std::process::{Command, Output};

use qtoda::scalars::{rat, Rational};

fn qtoda(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtoda"))
        .args(args)
        .env_remove("QTODA_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn fb_rank_one_closed_form() {
    let out = qtoda(&["fb", "--n", "1", "--order", "1", "--q", "3/7", "--s", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let (q, s) = (rat(3, 7), rat(2, 1));
    let expected: Rational = &q * &s * &s / ((&q - rat(1, 1)) * (&q - &s * &s));
    assert_eq!(expected, rat(21, 25));
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    assert_eq!(terms[0]["exponent"], serde_json::json!([-1]));
    assert_eq!(terms[0]["coefficient"], "21/25");
    assert_eq!(terms[1]["exponent"], serde_json::json!([0]));
    assert_eq!(terms[1]["coefficient"], "1");
}

#[test]
fn fa_rank_one_is_constant() {
    let out = qtoda(&["fa", "--n", "1", "--order", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["terms"], serde_json::json!([{"exponent": [0], "coefficient": "1"}]));
}

#[test]
fn verify_passes_and_is_deterministic() {
    let args = ["verify", "--n", "2", "--order", "4", "--points", "3", "--seed", "42"];
    let first = qtoda(&args);
    assert_eq!(first.status.code(), Some(0));
    let reports = json(&first);
    let reports = reports.as_array().unwrap();
    assert_eq!(reports.len(), 27);
    assert!(reports.iter().all(|r| r["pass"] == true && r["firstFailure"].is_null()));
    assert_eq!(reports[0]["seed"], 42);
    assert_eq!(first.stdout, qtoda(&args).stdout);
}

#[test]
fn verify_subset_and_explicit_point() {
    let out = qtoda(&[
        "verify",
        "--n",
        "3",
        "--order",
        "3",
        "--q",
        "3/7",
        "--s",
        "2,5,11",
        "--checks",
        "branching,symmetry",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let checks: Vec<_> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["check"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(checks, ["branching", "symmetry"]);
}

#[test]
fn csv_and_json_carry_the_same_terms() {
    let base = ["fa", "--n", "3", "--order", "3", "--seed", "9"];
    let j = json(&qtoda(&base));
    let mut from_json: Vec<(String, String)> = j["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| {
            let e: Vec<String> = t["exponent"]
                .as_array()
                .unwrap()
                .iter()
                .map(|x| x.to_string())
                .collect();
            (e.join(" "), t["coefficient"].as_str().unwrap().to_string())
        })
        .collect();
    let csv_out = qtoda(&[&base[..], &["--format", "csv"]].concat());
    let mut reader = csv::Reader::from_reader(csv_out.stdout.as_slice());
    let mut from_csv: Vec<(String, String)> = reader
        .records()
        .map(|r| {
            let r = r.unwrap();
            (r[0].to_string(), r[1].to_string())
        })
        .collect();
    from_json.sort();
    from_csv.sort();
    assert!(!from_json.is_empty());
    assert_eq!(from_json, from_csv);
}

#[test]
fn branch_coeffs_rows() {
    let out = qtoda(&["branch-coeffs", "--n", "2", "--order", "2", "--q", "3/7", "--s", "2,5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let thetas: Vec<_> = v.as_array().unwrap().iter().map(|r| r["theta"].clone()).collect();
    // weights 2 and 1
    assert_eq!(thetas.len(), 4);
    assert!(thetas.contains(&serde_json::json!([1, 0])));
    assert!(thetas.contains(&serde_json::json!([0, 2])));
    let zero = v
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["theta"] == serde_json::json!([0, 0]))
        .unwrap();
    assert_eq!(zero["coefficient"], "1");
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("qtoda-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fa.json");
    let out = qtoda(&[
        "fa",
        "--n",
        "2",
        "--order",
        "2",
        "--seed",
        "3",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(
        written,
        stdout(&qtoda(&["fa", "--n", "2", "--order", "2", "--seed", "3"]))
    );
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(
        qtoda(&["fa", "--n", "2", "--q", "1", "--s", "2,3"]).status.code(),
        Some(2)
    );
    assert_eq!(
        qtoda(&["fa", "--n", "2", "--q", "3/7", "--s", "3,7"]).status.code(),
        Some(2)
    );
    assert_eq!(qtoda(&["fa", "--n", "0"]).status.code(), Some(3));
    assert_eq!(qtoda(&["fa", "--q", "x"]).status.code(), Some(3));
    assert_eq!(qtoda(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(qtoda(&[]).status.code(), Some(3));
    assert_eq!(qtoda(&["--help"]).status.code(), Some(0));
}

#[test]
fn seed_from_environment() {
    let with_env = Command::new(env!("CARGO_BIN_EXE_qtoda"))
        .args(["fa", "--n", "2", "--order", "2"])
        .env("QTODA_SEED", "17")
        .output()
        .unwrap();
    assert_eq!(
        with_env.stdout,
        qtoda(&["fa", "--n", "2", "--order", "2", "--seed", "17"]).stdout
    );
}
