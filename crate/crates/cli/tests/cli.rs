use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn nilgcs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilgcs")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = args.to_vec();
    full.push("--json");
    let out = nilgcs(&full);
    let code = out.status.code().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (v, code)
}

#[test]
fn search_on_the_heisenberg_type_one_structure() {
    let (v, code) = json(&["semi-abelian", "--algebra", "0,0,0,12", "--gcs", &data("heisenberg_type_one.json"), "--search"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "SEMI_ABELIAN");
    assert_eq!(v["ell_decomposition"]["a"], serde_json::json!(["e1 - i*e2", "e4 + i*E3"]));
}

#[test]
fn search_on_the_filiform_structure_is_impossible() {
    let (v, code) = json(&["semi-abelian", "--algebra", "0,0,12,13", "--gcs", &data("filiform_type_one.json"), "--search"]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "IMPOSSIBLE");
    let cert = &v["certificate"];
    assert!(cert["system_rank"].as_u64() < cert["augmented_rank"].as_u64());
}

#[test]
fn stored_pairs() {
    let gcs = data("heisenberg_type_one.json");
    let (v, code) = json(&["semi-abelian", "--gcs", &gcs, "--pair", &data("heisenberg_pair.json")]);
    assert_eq!((v["status"].as_str(), code), (Some("SEMI_ABELIAN"), 0));
    assert_eq!(v["properties"]["holds"], true);
    let (v, code) = json(&["semi-abelian", "--gcs", &gcs, "--pair", &data("wrong_pair.json")]);
    assert_eq!((v["status"].as_str(), code), (Some("NOT_SEMI_ABELIAN"), 1));
}

#[test]
fn pool_files_restrict_the_search() {
    let dir = std::env::temp_dir().join(format!("nilgcs-pool-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let pool = dir.join("pool.txt");
    std::fs::write(&pool, "# nothing useful\ne1\n").unwrap();
    let (v, code) = json(&["semi-abelian", "--gcs", &data("kodaira_complex.json"), "--search", "--pool", pool.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "NOT_FOUND_IN_POOL");
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn algebra_commands() {
    let (v, code) = json(&["parse", "--algebra", "(0,0,0,0,0,12+34)"]);
    assert_eq!(code, 0);
    assert_eq!(v["salamon"], "0,0,0,0,0,12+34");
    assert_eq!(v["step"], 2);
    let (v, code) = json(&["parse", "--algebra", &data("algebras.txt")]);
    assert_eq!((v["salamon"].as_str(), code), (Some("0,0,0,12"), 0));
    let (v, _) = json(&["parse", "--algebra", "iwasawa"]);
    assert_eq!(v["salamon"], "0,0,0,0,13-24,14+23");

    let (v, code) = json(&["check-jacobi", "--algebra", "0,0,0,12,34"]);
    assert_eq!((v["jacobi"].as_bool(), code), (Some(false), 1));
    let (_, code) = json(&["check-jacobi", "--algebra", "0,0,12,13"]);
    assert_eq!(code, 0);

    let (v, _) = json(&["ce-cohomology", "--algebra", "0,0,12,13"]);
    assert_eq!(v["betti"], serde_json::json!([1, 2, 2, 2, 1]));
    let (v, _) = json(&["ce-cohomology", "--algebra", "0,0,0,12", "--degree", "1"]);
    assert_eq!(v["dim"], 3);
}

#[test]
fn gcs_commands() {
    let almost = data("filiform_almost_complex.json");
    assert_eq!(json(&["gcs-validate", "--gcs", &almost]).1, 0);
    let (v, code) = json(&["gcs-integrable", "--gcs", &almost]);
    assert_eq!((v["integrable"].as_bool(), code), (Some(false), 1));
    let (v, code) = json(&["gcs-type", "--gcs", &data("heisenberg_type_one.json")]);
    assert_eq!((v["type"].as_u64(), code), (Some(1), 0));
    let (v, _) = json(&["dga-cohomology", "--gcs", &data("kodaira_complex.json")]);
    assert_eq!(v["betti"][0], 1);
}

#[test]
fn deformation_commands() {
    let kt = data("kodaira_complex.json");
    let (v, code) = json(&["mc-check", "--gcs", &kt, "--gamma", "L1^L2"]);
    assert_eq!(code, 0);
    assert_eq!(v["maurer_cartan"], v["involutive"]);
    let (v, code) = json(&["deform", "--gcs", &data("two_step_poisson.json"), "--gamma", "L1^L2"]);
    assert_eq!((v["squares_to_zero"].as_bool(), code), (Some(false), 1));
    assert_eq!(json(&["mc-check", "--gcs", &kt, "--gamma", "e1^e2"]).1, 2);
}

#[test]
fn symplectic_commands() {
    let (v, code) = json(&["symplectic-semi-abelian", "--gcs", &data("symplectic_six.json")]);
    assert_eq!((v["status"].as_str(), code), (Some("SEMI_ABELIAN"), 0));
    assert_eq!(v["h"], serde_json::json!(["e1", "e5", "e6"]));
    let (v, code) = json(&["symplectic-semi-abelian", "--algebra", "0,0,12,13", "--omega", "E1^E4 + E2^E3"]);
    assert_eq!((v["status"].as_str(), code), (Some("IMPOSSIBLE"), 1));
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(nilgcs(&["parse", "--algebra", "0,0,1x"]).status.code(), Some(2));
    assert_eq!(nilgcs(&["parse", "--algebra", "0,0,0,12,34"]).status.code(), Some(2));
    assert_eq!(nilgcs(&["gcs-type", "--gcs", "/definitely/missing.json"]).status.code(), Some(2));
    assert_eq!(nilgcs(&["semi-abelian", "--gcs", &data("kodaira_complex.json")]).status.code(), Some(2));
    let out = nilgcs(&["gcs-type", "--gcs", &data("algebras.txt")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn json_output_is_stable() {
    let args = ["semi-abelian", "--gcs", &data("kodaira_complex.json"), "--search", "--json"];
    let a = nilgcs(&args).stdout;
    let b = nilgcs(&args).stdout;
    assert_eq!(a, b);
}

#[test]
fn text_output_is_derived_from_json() {
    let out = nilgcs(&["gcs-type", "--gcs", &data("heisenberg_type_one.json")]);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "integrable: true\ntype: 1\n");
}

#[test]
fn verify_paper_passes() {
    let out = nilgcs(&["verify-paper"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.lines().all(|l| l.starts_with("PASS")));
    assert!(text.contains("complement-oracle"));
}
