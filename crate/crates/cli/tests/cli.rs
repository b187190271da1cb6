use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

/// Runs `qpsi` with whitespace-separated arguments.
fn qpsi(args: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qpsi"))
        .args(args.split_whitespace())
        .env_remove("QPSI_DEFAULT_TOL")
        .output()
        .expect("qpsi runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn temp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("qpsi-{}-{name}", std::process::id()))
}

#[test]
fn theta_vanishes_at_one() {
    let o = qpsi("eval theta --q 0.5 --z 1");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn q_beta_at_integer_exponents() {
    let o = qpsi("eval q_beta --q 0.5 --alpha 2 --beta 1");
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("0.666666"), "{text}");
    let v: f64 = text.trim().parse().unwrap();
    assert!((v - 2.0 / 3.0).abs() < 1e-14);
}

#[test]
fn missing_argument_is_a_usage_error() {
    let o = qpsi("eval theta --q 0.5");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--z"));
    assert!(stdout(&o).is_empty());
}

#[test]
fn unknown_target_and_bad_number_are_usage_errors() {
    assert_eq!(qpsi("eval no_such --q 0.5").status.code(), Some(2));
    assert_eq!(qpsi("eval theta --q 0.5 --z abc").status.code(), Some(2));
    assert_eq!(qpsi("eval bc1_J_sum --q 0.5 --a 1 --xi 1").status.code(), Some(2));
}

#[test]
fn evaluation_errors_exit_3() {
    let o = qpsi("eval theta --q 1.5 --z 1");
    assert_eq!(o.status.code(), Some(3));
    // outside the annulus |b/a| < |x| < 1
    let o = qpsi("eval sum_rpsir --q 0.5 --a 0.3 --b 0.7 --x 0.8");
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("annulus"));
}

#[test]
fn series_values_carry_error_and_term_count() {
    let o = qpsi("eval sum_rpsir --q 0.5 --a 2+0.2i --b 0.7 --x 0.8");
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("\nerr_estimate "));
    assert!(text.contains("\nterms "));
    let p = qpsi("eval product_1psi1 --q 0.5 --a 2+0.2i --b 0.7 --x 0.8 --format json");
    let v: Value = serde_json::from_str(&stdout(&p)).unwrap();
    assert_eq!(v["target"], "product_1psi1");
    let (re, im) = (v["value_re"].as_f64().unwrap(), v["value_im"].as_f64().unwrap());
    let s = qpsi("eval sum_rpsir --q 0.5 --a 2+0.2i --b 0.7 --x 0.8 --format json");
    let w: Value = serde_json::from_str(&stdout(&s)).unwrap();
    assert!(w["terms"].as_u64().unwrap() > 0);
    let d = ((w["value_re"].as_f64().unwrap() - re).powi(2) + (w["value_im"].as_f64().unwrap() - im).powi(2)).sqrt();
    assert!(d <= 1e-10 * re.hypot(im));
}

#[test]
fn unknown_suite_exits_2() {
    let o = qpsi("verify --suite no-such");
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).is_empty());
}

#[test]
fn ramanujan_suite_at_seed_42() {
    let o = qpsi("verify --suite ramanujan-1psi1 --seed 42 --trials 100");
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 100);
    assert!(results.iter().all(|r| r["pass"] == true));
    assert!(results.iter().all(|r| r["wall_ms"].is_number()));
    assert_eq!(v["summary"]["passed"], 100);
}

#[test]
fn report_file_follows_the_schema() {
    let path = temp("report.json");
    let o = qpsi(&format!("verify --suite all --seed 42 --report {}", path.display()));
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    let v: Value = serde_json::from_str(&text).unwrap();
    let top = ["suite", "seed", "policy", "results", "summary"];
    assert_eq!(v.as_object().unwrap().len(), top.len());
    let at: Vec<usize> = top.iter().map(|k| text.find(&format!("\"{k}\":")).unwrap()).collect();
    assert!(at.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(v["suite"], "all");
    assert_eq!(v["seed"], 42);
    let keys = [
        "identity", "params", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "rel_err", "abs_err", "terms", "wall_ms", "pass",
    ];
    for r in v["results"].as_array().unwrap() {
        let obj = r.as_object().unwrap();
        assert_eq!(obj.len(), keys.len());
        assert!(keys.iter().all(|k| obj.contains_key(*k)));
        assert!(r["params"].as_object().unwrap().values().all(Value::is_number));
    }
    let s = &v["summary"];
    let n = |k: &str| s[k].as_u64().unwrap();
    assert_eq!(n("total"), n("passed") + n("failed") + n("skipped"));
    assert_eq!(n("failed"), 0);
    // 17 significant digits
    assert!(text.contains("\"rel_tol\": 9.9999999999999998e-13"));
}

#[test]
fn csv_report() {
    let o = qpsi("verify --suite bailey-6psi6 --seed 3 --trials 4 --format csv");
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(
        lines[0],
        "identity,params,lhs_re,lhs_im,rhs_re,rhs_im,rel_err,abs_err,terms,wall_ms,pass"
    );
    assert!(lines[1..]
        .iter()
        .all(|l| l.starts_with("bailey-6psi6,") && l.ends_with(",true")));
}

#[test]
fn single_identity_and_failures() {
    let o = qpsi("verify --suite bc1-shift[i=2] --seed 1 --trials 3 --no-timing");
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["summary"]["total"], 3);
    assert!(v["results"][0]["wall_ms"].is_null());
    // a zero threshold cannot be met
    let o = qpsi("verify --suite bailey-6psi6 --seed 1 --trials 3 --tol 0");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn unwritable_report_exits_4() {
    let path = temp("missing-dir").join("out.json");
    let o = qpsi(&format!(
        "verify --suite classical --trials 1 --report {}",
        path.display()
    ));
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn default_tolerance_from_environment() {
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_qpsi"));
        cmd.args(["verify", "--suite", "j6phi5", "--trials", "1", "--no-timing"])
            .args(extra);
        match env {
            Some(t) => cmd.env("QPSI_DEFAULT_TOL", t),
            None => cmd.env_remove("QPSI_DEFAULT_TOL"),
        };
        let o = cmd.output().unwrap();
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        v["policy"]["rel_tol"].as_f64().unwrap()
    };
    assert_eq!(run(None, &[]), 1e-12);
    assert_eq!(run(Some("1e-10"), &[]), 1e-10);
    assert_eq!(run(Some("1e-10"), &["--rel-tol", "1e-11"]), 1e-11);
    let o = Command::new(env!("CARGO_BIN_EXE_qpsi"))
        .args(["eval", "theta", "--q", "0.5", "--z", "2"])
        .env("QPSI_DEFAULT_TOL", "abc")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn listing_names_every_suite() {
    let o = qpsi("verify --list");
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for s in qpsi_core::verify::SUITES {
        assert!(text.lines().any(|l| l == *s), "{s}");
    }
    assert!(text.contains("region: q in [0.1, 0.8]"));
}

#[test]
fn multidimensional_and_classical_targets() {
    let sum = qpsi("eval atype_sum --q 0.3 --alpha 0.4 --tau 0.37 --a 3 --b 0.5 --xi 0.7 --xi 0.4 --format json");
    let prod = qpsi("eval aomoto_product --q 0.3 --alpha 0.4 --tau 0.37 --a 3 --b 0.5 --xi 0.7 --xi 0.4 --format json");
    let s: Value = serde_json::from_str(&stdout(&sum)).unwrap();
    let p: Value = serde_json::from_str(&stdout(&prod)).unwrap();
    let (a, b) = (s["value_re"].as_f64().unwrap(), p["value_re"].as_f64().unwrap());
    assert!((a - b).abs() <= 1e-9 * b.abs());
    let o = qpsi("eval selberg_product --n 2 --alpha 1 --beta 1 --tau 1");
    let v: f64 = stdout(&o).trim().parse().unwrap();
    assert!((v - 1.0 / 6.0).abs() < 1e-15);
    let o = qpsi("eval beta_integral --alpha 0.5+0.1i --beta 1");
    assert_eq!(o.status.code(), Some(2));
}
