use std::path::PathBuf;
use std::process::{Command, Output};

fn config(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("configs")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn goppa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_goppa")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_passes_on_reed_solomon_config() {
    let o = goppa(&["verify", "--config", &config("rational_gf7_m3.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.lines().all(|l| l.starts_with("PASS") || l.starts_with("SKIP")));
    assert!(text.contains("height_exactness"));
}

#[test]
fn strata_summary_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("strata.csv");
    let o = goppa(&[
        "strata",
        "--config",
        &config("rational_gf7_m3.json"),
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let summary: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(summary["total"], 343);
    let mut reader = csv::Reader::from_path(&csv).unwrap();
    assert_eq!(
        reader.headers().unwrap().iter().collect::<Vec<_>>(),
        ["syndrome_index", "h", "s", "stability", "witness_count"]
    );
    assert_eq!(reader.records().count(), 343);
}

#[test]
fn encode_corrupt_decode_round_trip() {
    let cfg = config("hermitian_gf4_m4.json");
    let o = goppa(&["encode", "--config", &cfg, "--message", "1,2,3,0"]);
    assert_eq!(o.status.code(), Some(0));
    let codeword = stdout(&o).trim().to_string();
    assert_eq!(codeword.split(',').count(), 8);

    let o = goppa(&["corrupt", "--config", &cfg, "--word", &codeword, "--weight", "1", "--seed", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let received = stdout(&o).trim().to_string();
    assert_ne!(received, codeword);

    let o = goppa(&["decode", "--config", &cfg, "--word", &received]);
    assert_eq!(o.status.code(), Some(0));
    let line: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(line["status"], "corrected");
    assert_eq!(line["codeword"], codeword.as_str());
    assert_eq!(line["h"], 1);
}

#[test]
fn decode_batch_with_both_decoders() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("words.txt");
    // codeword of the zero message, one error, two errors
    std::fs::write(&input, "# received words\n0,0,0,0,0,0,0\n0,3,0,0,0,0,0\n0,3,0,0,0,1,0\n").unwrap();
    let o = goppa(&[
        "decode",
        "--config",
        &config("rational_gf7_m3.json"),
        "--input",
        input.to_str().unwrap(),
        "--decoder",
        "both",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<serde_json::Value> =
        stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 6);
    for pair in lines.chunks(2) {
        assert_eq!(pair[0]["decoder"], "geometric");
        assert_eq!(pair[1]["decoder"], "toeplitz");
        assert_eq!(pair[0]["status"], pair[1]["status"]);
        assert_eq!(pair[0]["support"], pair[1]["support"]);
    }
    assert_eq!(lines[2]["status"], "corrected");
    assert_eq!(lines[2]["support"], serde_json::json!([1]));
    assert_ne!(lines[4]["status"], "corrected");
}

#[test]
fn code_build_exports_matrices() {
    let o = goppa(&["code", "build", "--config", &config("hermitian_gf4_m4.json")]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["params"]["n"], 8);
    assert_eq!(v["params"]["k"], 4);
    assert_eq!(v["params"]["genus"], 1);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(goppa(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(goppa(&["decode", "--config", "/nonexistent.json", "--word", "0"]).status.code(), Some(1));
    let o = goppa(&["decode", "--config", &config("rational_gf7_m3.json"), "--word", "1,2"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(goppa(&["--help"]).status.code(), Some(0));
}

#[test]
fn budget_refusal_exits_three() {
    let o = goppa(&["strata", "--config", &config("rational_gf7_m3.json"), "--budget", "100"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
    let o = goppa(&["distance", "--config", &config("hermitian_gf9_m10.json"), "--budget", "1000"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn simulate_is_reproducible() {
    let args = [
        "simulate",
        "--config",
        &config("rational_gf11_m6.json"),
        "--weight",
        "1",
        "--weight",
        "2",
        "--trials",
        "50",
        "--seed",
        "9",
    ];
    let a = goppa(&args);
    let b = goppa(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).contains("ChaCha8Rng"));
}
