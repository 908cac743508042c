//! The binary end to end: output shapes, exit codes and diagnostics.

use std::process::{Command, Output};

fn ngstates(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ngstates")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn csv_value_at_origin(text: &str) -> f64 {
    text.lines()
        .find(|l| l.starts_with("0.0000000000000000e0,0.0000000000000000e0,"))
        .and_then(|l| l.rsplit(',').next())
        .unwrap()
        .parse()
        .unwrap()
}

#[test]
fn quasiprob_writes_the_full_grid() {
    let o = ngstates(&["quasiprob", "--state", "pats", "--nth", "0.2", "--m", "1", "--kappa", "0", "--grid", "-4:4:81"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# ngstates"));
    assert_eq!(lines.next().unwrap(), "re,im,value");
    assert_eq!(lines.count(), 81 * 81);
    assert!(stderr(&o).contains("status=ok command=quasiprob"));
}

#[test]
fn noise_raises_the_center_value() {
    let base = ["quasiprob", "--state", "pats", "--nth", "0.2", "--m", "1", "--kappa", "0", "--grid", "-4:4:81", "--reproducible"];
    let input = ngstates(&base);
    let mut with_noise = base.to_vec();
    with_noise.extend(["--stage", "output", "--s", "0.3"]);
    let output = ngstates(&with_noise);
    assert!(input.status.success() && output.status.success());
    assert_ne!(stdout(&input), stdout(&output));
    assert!(csv_value_at_origin(&stdout(&output)) > csv_value_at_origin(&stdout(&input)));
}

#[test]
fn singular_p_exits_two_with_reason() {
    let o = ngstates(&["quasiprob", "--state", "pats", "--nth", "0", "--kappa", "1", "--grid", "-1:1:3"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("kind=inadmissible"), "{err}");
    assert!(err.contains("reason=\"singular P"), "{err}");
    assert!(stdout(&o).is_empty());
}

#[test]
fn reproducible_output_is_byte_identical() {
    let args = ["quasiprob", "--state", "pssts", "--nth", "0.1", "--m", "1", "--lambda", "0.2", "--s", "0.4", "--grid", "-2:2:9", "--reproducible"];
    let a = ngstates(&args);
    let b = ngstates(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("re,im,value\n"));
}

#[test]
fn stats_examples() {
    let o = ngstates(&["stats", "--state", "thermal", "--nth", "0.5"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["summary"]["g2"].as_f64().unwrap() - 2.0).abs() < 1e-12);
    assert_eq!(v["classification"]["bunching"], "bunching");

    let o = ngstates(&["stats", "--state", "pats", "--nth", "0", "--m", "1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["summary"]["mandel_q"].as_f64().unwrap() + 1.0).abs() < 1e-12);

    let o = ngstates(&["stats", "--state", "pakfts", "--nth", "0.5", "--m", "1", "--k", "1", "--format", "csv", "--reproducible"]);
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("n,probability"));
    assert_eq!(text.lines().nth(3), Some("2,0.0000000000000000e0"));
}

#[test]
fn stats_of_the_vacuum_is_a_domain_error() {
    let o = ngstates(&["stats", "--state", "thermal", "--nth", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("kind=undefined_statistic"));
}

#[test]
fn threshold_json_and_oracle_check() {
    let o = ngstates(&["threshold", "--state", "pats", "--m", "1", "--nth", "0.1", "--oracle", "spot"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["outcome"], "found");
    assert!(v["s_star"].as_f64().unwrap() > 0.0);
    assert!(stderr(&o).contains("oracle_w0_at_s_star="));

    let o = ngstates(&["threshold", "--state", "thermal", "--nth", "0.1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("kind=not_applicable"));
}

#[test]
fn sweep_has_one_row_per_step() {
    let o = ngstates(&[
        "sweep", "--state", "pats", "--m", "1", "--nth", "0.1", "--axis", "s", "--from", "0", "--to", "1", "--steps", "6",
        "--quantity", "W0", "--reproducible",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("s,W0,error"));
    assert_eq!(text.lines().count(), 7);
}

#[test]
fn config_file_with_flag_override() {
    let dir = std::env::temp_dir().join(format!("ngstates-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.json");
    let out = dir.join("field.csv");
    std::fs::write(
        &cfg,
        r#"{"command":"quasiprob","state":{"variant":"pats","n_th":0.2,"m":1},"kappa":-1,"grid":{"re_min":-1,"re_max":1,"im_min":-1,"im_max":1,"n_re":3,"n_im":3},"reproducible":true}"#,
    )
    .unwrap();
    let o = ngstates(&["quasiprob", "--config", cfg.to_str().unwrap(), "--m", "2", "--output", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let from_file = std::fs::read_to_string(&out).unwrap();
    let direct = ngstates(&["quasiprob", "--state", "pats", "--nth", "0.2", "--m", "2", "--kappa", "-1", "--grid", "-1:1:3", "--reproducible"]);
    assert_eq!(from_file, stdout(&direct));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn io_and_usage_exit_codes() {
    let o = ngstates(&["stats", "--config", "/nonexistent/run.json"]);
    assert_eq!(o.status.code(), Some(1));
    let o = ngstates(&["stats", "--state", "thermal", "--nth", "0.5", "--output", "/nonexistent/dir/out.json"]);
    assert_eq!(o.status.code(), Some(1));
    let o = ngstates(&["stats", "--state", "psts", "--nth", "0", "--m", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("kind=invalid_state"));
}

#[test]
fn validate_spot_passes() {
    let o = ngstates(&["validate", "--level", "spot"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["arbitration"].as_array().unwrap().len(), 5);
    assert!(stderr(&o).lines().filter(|l| l.starts_with("check=")).all(|l| l.ends_with("status=pass")));
}

#[test]
fn stats_oracle_spot_check() {
    let o = ngstates(&["stats", "--state", "pasts", "--nth", "0.2", "--m", "1", "--lambda", "0.3", "--s", "0.5", "--oracle", "spot"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("oracle_check=pnd"));
}
