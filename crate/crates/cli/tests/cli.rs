use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_simplex-stats")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn json(args: &[&str]) -> serde_json::Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

#[test]
fn analytics_values() {
    assert_eq!(stdout(&["analytics", "restrictiveness", "--order", "hr", "--n", "3"]), "1/4 (0.25)\n");
    assert_eq!(stdout(&["analytics", "restrictiveness", "--order", "lr", "--n", "3"]), "1/6 (0.166666666666667)\n");
    assert_eq!(stdout(&["analytics", "cdf", "--n", "3", "--b", "0.5"]), "0.25\n");
    assert_eq!(stdout(&["analytics", "moment", "--n", "3", "--t", "1"]), "11/18 (0.611111111111111)\n");
    assert_eq!(stdout(&["analytics", "moment", "--n", "2", "--t", "1", "--u", "2"]), "3/2 (1.5)\n");
    assert_eq!(stdout(&["analytics", "variance", "--n", "2"]), "1/48 (0.0208333333333333)\n");
    assert_eq!(stdout(&["analytics", "joint-cdf", "--theta", "0.6,0.7"]), "0.3\n");
    assert_eq!(stdout(&["analytics", "tail", "--theta", "0.2,0.3"]), "0.5\n");
    assert_eq!(stdout(&["analytics", "hr-upper", "--theta", "0.3,0.7"]), "0.3\n");
    assert_eq!(stdout(&["analytics", "f", "--n", "3", "--t", "1"]), "11/6 (1.83333333333333)\n");
    assert_eq!(stdout(&["analytics", "volume", "--n", "1", "--u", "5"]), "1\n");
}

#[test]
fn analytics_json() {
    let v = json(&["analytics", "restrictiveness", "--order", "st", "--n", "4", "--format", "json"]);
    assert_eq!(v["value"], 0.25);
    assert_eq!(v["value_exact"], "1/4");
}

#[test]
fn monte_carlo_reports_target_alongside() {
    let text = stdout(&["mc", "restrictiveness", "--order", "hr", "--n", "3", "--samples", "1000000", "--seed", "7"]);
    for key in ["estimate:", "std_error:", "samples:", "seed:", "generator:", "target:"] {
        assert!(text.contains(key), "{key} missing in\n{text}");
    }
    assert!(text.contains("1/4 (0.25)"));

    let v = json(&["mc", "moment", "--n", "2", "--t", "2", "--samples", "1000000", "--seed", "1", "--format", "json"]);
    let (est, se) = (v["estimate"].as_f64().unwrap(), v["std_error"].as_f64().unwrap());
    assert!((est - 7.0 / 12.0).abs() <= 4.0 * se);
    assert_eq!(v["target_exact"], "7/12");

    let csv = stdout(&["mc", "cdf", "--n", "3", "--b", "0.4,0.5", "--samples", "1000", "--format", "csv"]);
    assert_eq!(csv.lines().count(), 3);
    assert!(csv.starts_with("b,estimate,std_error,target,samples,seed,generator\n"));
}

#[test]
fn monte_carlo_is_deterministic_across_threads() {
    let base = ["mc", "restrictiveness", "--order", "st", "--n", "4", "--samples", "200000", "--seed", "5"];
    let one = stdout(&base);
    let four = stdout(&[&base[..], &["--threads", "4"]].concat());
    assert_eq!(one, four);
}

#[test]
fn order_test_json_round_trips() {
    let args = [
        "test",
        "order",
        "--order",
        "lr",
        "--n",
        "2",
        "--pairs",
        "10000",
        "--generator",
        "ar",
        "--alpha",
        "0.1",
        "--seed",
        "3",
    ];
    let out = stdout(&args);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["p_value"].as_f64().unwrap() < 0.05);
    assert_eq!(v["p0_num"], 1);
    assert_eq!(v["p0_den"], 6);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    let mut expected = vec!["order", "n", "pairs", "successes", "p0_num", "p0_den", "p_value"];
    expected.sort();
    assert_eq!(keys, expected);
    assert_eq!(stdout(&args), out);
}

#[test]
fn generic_json_round_trips() {
    for args in [
        &["analytics", "moment", "--n", "5", "--t", "3", "--format", "json"][..],
        &["mc", "cdf", "--n", "4", "--b", "0.3,0.6", "--samples", "5000", "--format", "json"],
        &["test", "max-mean", "--groups", "1000"],
    ] {
        let out = stdout(args);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(format!("{v}\n"), out);
    }
}

#[test]
fn table1_csv_has_six_rows() {
    let out = stdout(&[
        "test", "table1", "--reps", "3", "--pairs", "1000", "--alpha", "0.1", "--seed", "11", "--format", "csv",
    ]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 7);
    assert_eq!(lines[0], "model,order,mean_p_value,std_p_value,reps,p0_num,p0_den");
}

#[test]
fn file_input() {
    let mut text = tempfile::NamedTempFile::new().unwrap();
    for i in 0..400 {
        writeln!(text, "{}", (i * 37 % 100) as f64 / 100.0).unwrap();
    }
    let path = text.path().to_str().unwrap();
    let v = json(&["test", "order", "--input", path, "--order", "st", "--n", "2", "--pairs", "100"]);
    assert_eq!(v["pairs"], 100);

    let mut bin = tempfile::NamedTempFile::new().unwrap();
    for i in 0..40 {
        bin.write_all(&(i as f64 / 40.0).to_le_bytes()).unwrap();
    }
    let path = bin.path().to_str().unwrap();
    let v = json(&["test", "order", "--input", path, "--binary", "--order", "hr", "--n", "1", "--pairs", "20"]);
    assert_eq!(v["pairs"], 20);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["mc", "moment", "--n", "2", "--t", "2", "--samples", "0"]), 2);
    assert_eq!(code(&["analytics", "cdf", "--n", "3"]), 2);
    assert_eq!(code(&["analytics", "restrictiveness", "--order", "xx", "--n", "3"]), 2);
    assert_eq!(code(&["analytics", "joint-cdf", "--theta", &["0.5"; 26].join(",")]), 2);
    assert_eq!(code(&["analytics", "hr-upper", "--theta", "0.5,0.6"]), 2);
    assert_eq!(code(&["test", "order", "--order", "st", "--generator", "ar"]), 2);
    assert_eq!(code(&["test", "order", "--order", "st", "--generator", "ar", "--alpha", "1.5"]), 2);

    let mut short = tempfile::NamedTempFile::new().unwrap();
    writeln!(short, "0.1\n0.2").unwrap();
    let out = run(&[
        "test",
        "order",
        "--input",
        short.path().to_str().unwrap(),
        "--order",
        "st",
        "--n",
        "2",
        "--pairs",
        "100",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("truncated") && err.lines().count() == 1, "{err}");

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "0.5\n1.5").unwrap();
    let out =
        run(&["test", "order", "--input", bad.path().to_str().unwrap(), "--order", "st", "--n", "1", "--pairs", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 2"));

    assert_eq!(code(&["test", "order", "--order", "st", "--input", "/definitely/not/here"]), 3);
}
