use std::process::{Command, Output};

fn gtg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gtg"))
        .args(args)
        .output()
        .expect("binary runs")
}

const Q3: &[&str] = &["--p", "3", "--n", "4", "--m", "3", "--k", "1"];

fn with(base: &[&'static str], extra: &[&'static str]) -> Vec<&'static str> {
    base.iter().chain(extra).copied().collect()
}

#[test]
fn construct_writes_basis_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("code.json");
    let path_str = path.to_str().unwrap();
    let mut args = vec!["construct"];
    args.extend_from_slice(Q3);
    args.extend_from_slice(&["--out", path_str]);
    let out = gtg(&args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(json["code"]["basis"].as_array().unwrap().len(), 4);
    assert_eq!(json["code"]["q"], 3);
}

#[test]
fn exit_codes() {
    let norm = gtg(&["construct", "--p", "2", "--n", "4", "--m", "3", "--k", "1", "--eta", "0,1,0,0"]);
    assert_eq!(norm.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&norm.stderr).contains("norm"));
    let k_ge_m = gtg(&["construct", "--p", "3", "--n", "4", "--m", "3", "--k", "3"]);
    assert_eq!(k_ge_m.status.code(), Some(2));
    let guard = gtg(&with(&["construct", "--mrd", "--codeword-limit", "10"], Q3));
    assert_eq!(guard.status.code(), Some(3));
    let raised = gtg(&with(&["construct", "--codeword-limit", "999999999"], Q3));
    assert_eq!(raised.status.code(), Some(2));
    let acknowledged = gtg(&with(&["construct", "--codeword-limit", "999999999", "--unsafe-limits"], Q3));
    assert_eq!(acknowledged.status.code(), Some(0));
}

#[test]
fn nuclei_reports_disagreement_without_failing() {
    let out = gtg(&with(&["nuclei", "--h", "1", "--eta", "nonsquare-min"], Q3));
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["right"]["agree"], false);
    assert_eq!(json["right"]["flags"]["degenerate_twist_right"], true);
    assert!(String::from_utf8_lossy(&out.stderr).contains("DISAGREE"));
}

#[test]
fn open_case_has_no_prediction() {
    let out = gtg(&["nuclei", "--p", "3", "--n", "4", "--m", "4", "--k", "2", "--h", "1", "--eta", "nonsquare-min"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(json["right"].get("predicted_order").is_none());
    assert_eq!(json["right"]["flags"]["open_case"], true);
}

#[test]
fn output_is_deterministic() {
    let args = with(&["aut", "--subspace", "generic:3"], &["--p", "2", "--n", "4", "--m", "3", "--k", "1"]);
    let a = gtg(&args);
    let b = gtg(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn sweep_from_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("grid.json");
    std::fs::write(
        &cfg,
        r#"{"grid":[{"p":3,"n":[4],"m":[3],"k":[1,2],"h":[0,1],"eta":["0","nonsquare-min"]}]}"#,
    )
    .unwrap();
    let out = gtg(&["sweep", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1 + 8);
    assert!(text.starts_with("q,n,m,k,s,h,eta,subspace,"));
}

#[test]
fn selfcheck_passes() {
    let out = gtg(&["selfcheck"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}
