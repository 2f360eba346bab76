use std::process::{Command, Output};

use serde_json::Value;

fn flagdl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flagdl"))
        .args(args)
        .env_remove("FLAGDL_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

const GL222: [&str; 8] = ["--family", "GL", "--n", "2", "--q", "2", "--r", "2"];

fn with_spec<'a>(head: &[&'a str]) -> Vec<&'a str> {
    [head, &GL222[..]].concat()
}

#[test]
fn flags_report() {
    let out = flagdl(&with_spec(&["flags"]));
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["schema_version"], 1);
    let reports = v["result"]["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 3);
    assert!(reports.iter().all(|r| r["admissible"] == true && r["stabilizer_matches"] == true));
    assert_eq!(v["result"]["not_applicable"][0], "case1");
}

#[test]
fn chartab_with_cache_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = with_spec(&["chartab", "--cache-dir", d]);
    let cold = flagdl(&args);
    assert_eq!(cold.status.code(), Some(0));
    let v = json(&cold);
    assert_eq!(v["result"]["sum_of_squares"], "96");
    let file = dir.path().join(v["result"]["cache_file"].as_str().unwrap());
    assert!(file.exists());
    let warm = flagdl(&args);
    assert_eq!(cold.stdout, warm.stdout);
    let leftovers = std::fs::read_dir(dir.path())
        .unwrap()
        .filter(|e| e.as_ref().unwrap().file_name().to_string_lossy().ends_with(".tmp"));
    assert_eq!(leftovers.count(), 0);
}

#[test]
fn cache_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_flagdl"))
        .args(with_spec(&["nilpotent"]))
        .env("FLAGDL_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn corrupt_cache_entry_is_rebuilt() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = with_spec(&["chartab", "--cache-dir", d]);
    let first = flagdl(&args);
    let name = json(&first)["result"]["cache_file"].as_str().unwrap().to_string();
    std::fs::write(dir.path().join(name), "{not json").unwrap();
    let again = flagdl(&args);
    assert_eq!(again.status.code(), Some(0));
    assert_eq!(first.stdout, again.stdout);
}

#[test]
fn reports_are_deterministic() {
    let args = with_spec(&["lefschetz", "--seed", "3"]);
    let a = flagdl(&args);
    let b = flagdl(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["seed"], 3);
}

#[test]
fn exit_codes() {
    // orbit shift needs p ∤ n
    let out = flagdl(&with_spec(&["orbit-shift"]));
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["status"], "precondition");
    let out = flagdl(&with_spec(&["nilpotent", "--budget", "10"]));
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["status"], "budget");
    let out = flagdl(&["orbits", "--family", "XL"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn csv_tables() {
    let out = flagdl(&with_spec(&["orbits", "--format", "csv"]));
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "index,rep_code,size,centralizer_order,nilpotent,semisimple,regular");
    let sizes: usize = lines.map(|l| l.split(',').nth(2).unwrap().parse::<usize>().unwrap()).sum();
    assert_eq!(sizes, 16);
    let table = String::from_utf8(flagdl(&with_spec(&["chartab", "--format", "csv"])).stdout).unwrap();
    let count = json(&flagdl(&with_spec(&["chartab"])))["result"]["irreducibles"].as_u64().unwrap();
    assert_eq!(table.lines().count() as u64, 1 + count);
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = flagdl(&with_spec(&["invariant", "-o", path.to_str().unwrap()]));
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["command"], "invariant");
}

#[test]
fn full_suite_sl2_q3() {
    let out = flagdl(&["all", "--family", "SL", "--n", "2", "--q", "3", "--r", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["lefschetz"]["status"], "pass");
    assert_eq!(v["result"]["ggmod"]["status"], "skipped");
}
