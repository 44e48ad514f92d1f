use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const V_EX: [u8; 20] = [1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0];

fn xlmhg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xlmhg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn plain_list(dir: &Path) -> String {
    let text: String = V_EX.iter().map(|v| format!("{v}\n")).collect();
    write(dir, "vex.txt", &text)
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn worked_example_report() {
    let dir = TempDir::new().unwrap();
    let input = plain_list(dir.path());
    let r = json(&xlmhg(&["test", "--input", &input]));
    assert_eq!((r["N"].as_u64(), r["K"].as_u64()), (Some(20), Some(5)));
    assert_eq!((r["X"].as_u64(), r["L"].as_u64()), (Some(0), Some(20)));
    assert_eq!((r["cutoff"].as_u64(), r["k_at_cutoff"].as_u64()), (Some(6), Some(4)));
    assert!((r["statistic"].as_f64().unwrap() - 0.014).abs() < 5e-4);
    assert!((r["pvalue"].as_f64().unwrap() - 0.024).abs() < 5e-4);
    assert!((r["lipson_bound"].as_f64().unwrap() - 0.07).abs() < 5e-3);
    assert_eq!(r["psi"].as_f64(), Some(0.05));
    assert_eq!(r["escore"].as_f64(), Some(3.0));
}

#[test]
fn bound_only_invert_and_percentages() {
    let dir = TempDir::new().unwrap();
    let input = plain_list(dir.path());
    let r = json(&xlmhg(&["test", "--input", &input, "--bound-only"]));
    assert!(r["pvalue"].is_null());
    assert!(r["lipson_bound"].as_f64().unwrap() > 0.0);

    let r = json(&xlmhg(&["test", "--input", &input, "--invert"]));
    assert!(r["pvalue"].as_f64().unwrap() > 0.5);

    let r = json(&xlmhg(&["test", "--input", &input, "--x", "50%", "--l", "25%"]));
    assert_eq!((r["X"].as_u64(), r["L"].as_u64(), r["cutoff"].as_u64()), (Some(3), Some(5), Some(4)));

    let r = json(&xlmhg(&["test", "--input", &input, "--psi", "0.001"]));
    assert!(r["escore"].is_null() && r["escore_cutoff"].is_null());
}

#[test]
fn csv_outputs() {
    let dir = TempDir::new().unwrap();
    let input = plain_list(dir.path());
    let table = dir.path().join("cutoffs.csv");
    let out = xlmhg(&[
        "test",
        "--input",
        &input,
        "--format",
        "csv",
        "--per-cutoff",
        table.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("N,K,X,L,statistic,cutoff,k_at_cutoff,pvalue,lipson_bound,escore,escore_cutoff,psi\n"));
    assert_eq!(text.lines().count(), 2);
    let cutoffs = fs::read_to_string(table).unwrap();
    let lines: Vec<_> = cutoffs.lines().collect();
    assert_eq!(lines[0], "n,k_n,hg_pvalue,fold_enrichment");
    assert_eq!(lines.len(), 21);
    assert_eq!(lines[1], "1,1,0.25,4.0");
}

#[test]
fn plain_and_labeled_inputs_agree() {
    let dir = TempDir::new().unwrap();
    let plain = plain_list(dir.path());
    let mut scores = String::from("item_id\tscore\n");
    let mut members = String::new();
    // written bottom-up so the descending sort has work to do
    for (i, v) in V_EX.iter().enumerate().rev() {
        scores.push_str(&format!("g{i}\t{}\n", 100 - i));
        if *v == 1 {
            members.push_str(&format!("g{i}\n"));
        }
    }
    members.push_str("not_scored\n");
    let scores = write(dir.path(), "scores.tsv", &scores);
    let members = write(dir.path(), "members.txt", &members);

    let a = xlmhg(&["test", "--input", &plain]);
    let b = xlmhg(&["test", "--input", &scores, "--membership", &members]);
    assert!(b.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8_lossy(&b.stderr).contains("not_scored"));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let input = plain_list(dir.path());

    let bad = write(dir.path(), "bad.txt", "1\n0\nx\n");
    let out = xlmhg(&["test", "--input", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let dup = write(dir.path(), "dup.tsv", "a\t1\nb\t2\na\t3\n");
    let members = write(dir.path(), "m.txt", "a\n");
    let out = xlmhg(&["test", "--input", &dup, "--membership", &members]);
    assert_eq!(out.status.code(), Some(2));

    let ones = write(dir.path(), "ones.txt", "1\n1\n");
    assert_eq!(xlmhg(&["test", "--input", &ones]).status.code(), Some(2));
    assert_eq!(xlmhg(&["test", "--input", &input, "--x", "many"]).status.code(), Some(2));
    assert_eq!(xlmhg(&["test", "--input", &input, "--bogus"]).status.code(), Some(2));

    assert_eq!(xlmhg(&["test", "--input", &input, "--l", "21"]).status.code(), Some(3));
    assert_eq!(xlmhg(&["test", "--input", &input, "--psi", "0"]).status.code(), Some(3));
    assert_eq!(xlmhg(&["test", "--input", &input, "--x=-2"]).status.code(), Some(3));

    let missing = dir.path().join("missing.txt");
    assert_eq!(xlmhg(&["test", "--input", missing.to_str().unwrap()]).status.code(), Some(1));

    // an insignificant result is still a produced report
    let r = xlmhg(&["test", "--input", &input, "--invert"]);
    assert_eq!(r.status.code(), Some(0));
}

#[test]
fn simulation_csv_is_deterministic() {
    let args = [
        "sim", "--scenario", "scenario2", "--n", "300", "--k", "30", "--outliers", "6", "--replicates", "4",
        "--seed", "1",
    ];
    let a = xlmhg(&args);
    let b = xlmhg(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("replicate,statistic,cutoff,pvalue"));
    assert_eq!(text.lines().count(), 5);

    let one = xlmhg(&["sim", "--scenario", "scenario2", "--outliers", "6", "--replicates", "1", "--seed", "1"]);
    assert_eq!(String::from_utf8(one.stdout).unwrap().lines().count(), 2);
}

#[test]
fn simulation_config_and_summary() {
    let dir = TempDir::new().unwrap();
    let config = write(
        dir.path(),
        "sim.conf",
        "scenario = scenario2\nN = 1000\nK = 100\noutliers = 6\nreplicates = 40\nseed = 1\n",
    );
    let csv = dir.path().join("reps.csv");
    let summary_path = dir.path().join("summary.json");
    let out = xlmhg(&[
        "sim",
        "--config",
        &config,
        "--format",
        "json",
        "--output",
        csv.to_str().unwrap(),
        "--summary",
        summary_path.to_str().unwrap(),
    ]);
    let summary = json(&out);
    assert_eq!(summary["replicates"].as_u64(), Some(40));
    assert!(summary["rng"].as_str().unwrap().contains("ChaCha8"));
    assert!(summary["fraction_significant"].as_f64().unwrap() > 0.3);
    assert!(summary["pvalue_quantiles"]["q50"].is_number());
    assert_eq!(fs::read_to_string(csv).unwrap().lines().count(), 41);
    let saved: Value = serde_json::from_str(&fs::read_to_string(summary_path).unwrap()).unwrap();
    assert_eq!(saved, summary);

    let bad = write(dir.path(), "bad.conf", "scenario = scenario2\noutliers = 30\n");
    assert_eq!(xlmhg(&["sim", "--config", &bad]).status.code(), Some(3));
    let malformed = write(dir.path(), "malformed.conf", "scenario scenario2\n");
    assert_eq!(xlmhg(&["sim", "--config", &malformed]).status.code(), Some(2));
    assert_eq!(xlmhg(&["sim", "--replicates", "2"]).status.code(), Some(3));
}
