use std::process::{Command, Output};

fn qviterbi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qviterbi"))
        .args(args)
        .env("QVITERBI_THREADS", "2")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn oracle_reports_metric_and_minimizers() {
    let out = qviterbi(&["oracle", "--code", "lbc_633", "--received", "111011"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["best_metric"], 1);
    assert_eq!(v["best_codewords"], serde_json::json!(["011011"]));

    let out = qviterbi(&["oracle", "--code", "lbc_633", "--received", "101101"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["best_metric"], 0);

    let out = qviterbi(&[
        "oracle",
        "--code",
        "conv_r12_m2",
        "--received",
        "1110001100",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["best_metric"], 1);
    assert_eq!(v["best_codewords"], serde_json::json!(["1110101100"]));
}

#[test]
fn decode_is_byte_identical_across_runs() {
    let args = [
        "decode",
        "--code",
        "lbc_633",
        "--received",
        "111011",
        "--strategy",
        "fpo",
        "--seed",
        "11",
        "--quiet",
    ];
    let a = qviterbi(&args);
    let b = qviterbi(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(a.stderr.is_empty());
}

#[test]
fn decode_report_fields() {
    let out = qviterbi(&[
        "decode",
        "--code",
        "lbc_633",
        "--received",
        "111011",
        "--seed",
        "7",
        "--dump-state",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["oracle_agrees"], true);
    assert_eq!(v["argmax"], serde_json::json!(["011011"]));
    assert_eq!(v["result"]["strategy"], "UPO");
    assert_eq!(v["result"]["p"], 3);
    assert_eq!(v["result"]["q"], 5);
    assert_eq!(v["result"]["shots"], 2000);
    assert_eq!(v["result"]["samples"].as_array().unwrap().len(), 5);
    assert_eq!(v["state"].as_array().unwrap().len(), 64);
    // progress goes to stderr, never stdout
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
}

#[test]
fn sampled_mode_and_full_register_run() {
    for extra in [&["--mode", "sampled"][..], &["--full-register"][..]] {
        let mut args = vec![
            "decode",
            "--code",
            "lbc_321",
            "--received",
            "011",
            "--q",
            "2",
            "--quiet",
        ];
        args.extend_from_slice(extra);
        let out = qviterbi(&args);
        assert!(
            out.status.success(),
            "{extra:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(v["oracle_agrees"], true, "{extra:?}");
    }
}

#[test]
fn bad_inputs_exit_with_status_2() {
    let cases: [&[&str]; 6] = [
        &["decode", "--code", "lbc_633", "--received", "1110"],
        &["decode", "--code", "lbc_633", "--received", "11101x"],
        &[
            "decode",
            "--code",
            "/no/such/code.json",
            "--received",
            "111011",
        ],
        &[
            "decode",
            "--code",
            "lbc_633",
            "--received",
            "111011",
            "--p",
            "0",
        ],
        &[
            "compare",
            "--code",
            "lbc_633",
            "--received",
            "111011",
            "--repetitions",
            "0",
        ],
        &["frobnicate"],
    ];
    for args in cases {
        let out = qviterbi(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn malformed_code_file_exits_with_status_2() {
    let dir = std::env::temp_dir().join(format!("qviterbi-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, r#"{"name": "x", "codewords": ["00", "01", "11"]}"#).unwrap();
    let out = qviterbi(&[
        "oracle",
        "--code",
        path.to_str().unwrap(),
        "--received",
        "01",
    ]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn code_file_round_trip() {
    let dir = std::env::temp_dir().join(format!("qviterbi-code-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("rep3.json");
    std::fs::write(
        &path,
        r#"{"name": "rep3", "n": 3, "k": 1, "generator": [[1, 1, 1]]}"#,
    )
    .unwrap();
    let out = qviterbi(&[
        "oracle",
        "--code",
        path.to_str().unwrap(),
        "--received",
        "110",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["best_codewords"], serde_json::json!(["111"]));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn landscape_csv_shape_and_out_file() {
    let dir = std::env::temp_dir().join(format!("qviterbi-landscape-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("l.csv");
    let out = qviterbi(&[
        "landscape",
        "--code",
        "lbc_321",
        "--received",
        "011",
        "--p",
        "3",
        "--grid",
        "64",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let csv = std::fs::read_to_string(&path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("beta,gamma,expectation"));
    let values: Vec<f64> = lines
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(values.len(), 4096);
    assert!(values.iter().all(|&e| e >= 1.0 - 1e-9));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn landscape_is_not_flat_at_depth_15() {
    let out = qviterbi(&[
        "landscape",
        "--code",
        "lbc_321",
        "--received",
        "011",
        "--p",
        "15",
        "--grid",
        "16",
    ]);
    assert!(out.status.success());
    let values: Vec<f64> = stdout(&out)
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    assert!(hi - lo > 0.1, "{lo} {hi}");
}

#[test]
fn compare_single_repetition() {
    let out = qviterbi(&[
        "compare",
        "--code",
        "lbc_633",
        "--received",
        "111011",
        "--repetitions",
        "1",
        "--quiet",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "repetition,seed,upo_hits,fpo_hits");
    assert_eq!(lines.len(), 2);
    let upo: usize = lines[1].split(',').nth(2).unwrap().parse().unwrap();
    assert!(upo > 1000);
}

#[test]
fn hamiltonian_json() {
    let out = qviterbi(&["hamiltonian", "--code", "lbc_321"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["cost"]["terms"].as_array().unwrap().len(), 4);
    assert_eq!(
        v["mixer"]["terms"],
        serde_json::json!([{"coeff": 1.0, "paulis": [{"q": 1, "axis": "X"}]}])
    );
    assert_eq!(v["g_connected"], false);
}
