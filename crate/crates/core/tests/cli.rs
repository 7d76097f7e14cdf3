use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_periodlab"));
    c.args(args).env_remove("PERIODLAB_TOL");
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn verify_twisted_passes() {
    let o = run(&["verify", "twisted"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["passed"], true);
    assert!(v["checks"].as_array().unwrap().len() >= 15);
}

#[test]
fn verify_coaction_exact() {
    let o = run(&["verify", "coaction", "--n", "1", "--degree", "4"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["tolerance"].is_null()));
}

#[test]
fn unknown_suite_is_an_error() {
    let o = run(&["verify", "nope"], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["error"]["kind"], "unknown_suite");
}

#[test]
fn tolerance_override_can_fail_a_suite() {
    let o = run(&["verify", "twisted"], &[("PERIODLAB_TOL", "1e-30")]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["passed"], false);
    let t = v["checks"][0]["tolerance"].as_f64().unwrap();
    assert!((t / 1e-30 - 1.0).abs() < 1e-12);
}

#[test]
fn hyp2f1_matrix_is_deterministic() {
    let args = ["hyp2f1", "--a", "0.21", "--b", "0.37", "--c", "0.84", "--y", "0.35", "--matrix", "--sv"];
    let a = run(&args, &[]);
    let b = run(&args, &[]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    let m = &v["results"]["period_matrix"]["entries"];
    assert_eq!(m.as_array().unwrap().len(), 2);
    assert!(m[0][0]["re"].is_f64() && m[0][0]["im"].is_f64());
    assert!(v["checks"].as_array().unwrap().iter().any(|c| c["name"] == "det residual"));
}

#[test]
fn hyp2f1_zero_argument_and_nongeneric() {
    let o = run(&["hyp2f1", "--a", "0.2", "--b", "0.3", "--c", "0.4", "--y", "0"], &[]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["results"]["F"]["re"], 1.0);
    let o = run(&["hyp2f1", "--a", "0.2", "--b", "0.3", "--c", "1", "--y", "0.3"], &[]);
    assert_eq!(o.status.code(), Some(2));
    let v = json(&o);
    assert!(v["error"]["message"].as_str().unwrap().contains("c ∈ ℤ violates genericity"));
}

#[test]
fn lauricella_taylor_from_config_file() {
    let path = tmp("n1.toml");
    std::fs::write(&path, "[points]\nsigma1 = 1.0\n\n[branches]\nsigma1 = 0\n\n[quadrature]\ntol = 1e-13\n").unwrap();
    let out = tmp("n1.json");
    let o = run(
        &["lauricella", "--config", path.to_str().unwrap(), "--taylor", "4", "--json", out.to_str().unwrap()],
        &[],
    );
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let t = &v["results"]["taylor"];
    assert_eq!(t["max_degree"], 4);
    let terms = t["entries"][0]["terms"].as_array().unwrap();
    let s0s1 = terms.iter().find(|x| x["exponents"] == serde_json::json!([1, 1])).unwrap();
    assert!((s0s1["re"].as_f64().unwrap() + std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-12);
}

#[test]
fn lauricella_domain_errors() {
    let o = run(&["lauricella", "--points", "1", "--s", "-1.5,0.3"], &[]);
    assert_eq!(o.status.code(), Some(2));
    let v = json(&o);
    assert_eq!(v["error"]["kind"], "domain");
    assert!(v["error"]["message"].as_str().unwrap().contains("Re s0 > −1"));
    let o = run(&["lauricella", "--points", "1", "--s", "0.3,0.3", "--sv"], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(json(&o)["error"]["message"].as_str().unwrap().contains("< ½"));
}

#[test]
fn lauricella_values_and_table() {
    let o = run(&["lauricella", "--points", "1", "--s", "0.3,0.4", "--table"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("beta closed form") && text.contains("pass"), "{text}");
}
