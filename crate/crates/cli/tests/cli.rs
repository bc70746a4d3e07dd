use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_semidual"))
}

fn ring(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../rings").join(format!("{name}.json"))
}

fn module(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../rings/modules")
        .join(format!("{name}.json"))
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).unwrap()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, serde_json::Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = run(&full);
    let v = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)));
    (o.status.code().unwrap(), v)
}

#[test]
fn ring_info_dual_numbers() {
    let (code, v) = json(&["ring-info", ring("dual_numbers_f2").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["dim"], 2);
    assert_eq!(v["result"]["gorenstein"], true);
    assert_eq!(v["result"]["socle_dim"], 1);
}

#[test]
fn ring_info_field() {
    let (code, v) = json(&["ring-info", ring("field_f2").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["dim"], 1);
    let coeffs: Vec<u64> = serde_json::from_value(v["result"]["bass_series"]["coeffs"].clone()).unwrap();
    assert_eq!(coeffs[0], 1);
    assert!(coeffs[1..].iter().all(|&c| c == 0));
    assert_eq!(coeffs.len(), 21);
}

#[test]
fn ring_info_square_zero() {
    let (_, v) = json(&["ring-info", ring("square_zero_f2").to_str().unwrap()]);
    assert_eq!(v["result"]["dim"], 3);
    assert_eq!(v["result"]["gorenstein"], false);
    assert_eq!(v["result"]["socle_dim"], 2);
}

#[test]
fn ring_info_parse_error_has_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"p\": 2,\n  \"vars\": [\"x\"],\n  \"relations\": [\"x^^2\"], \"nilpotency_bound\": 2}").unwrap();
    let o = run(&["ring-info", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("column 3"), "{err}");

    std::fs::write(&path, "{\"p\": 2,\n  \"vars\" [\"x\"]}").unwrap();
    let o = run(&["ring-info", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn ring_info_rejects_non_local() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("unit.json");
    std::fs::write(&path, r#"{"p": 3, "vars": ["x"], "relations": ["x^2 - 1"], "nilpotency_bound": 2}"#).unwrap();
    assert_eq!(run(&["ring-info", path.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn check_sd_regular_is_certified() {
    for r in ["field_f2", "dual_numbers_f2", "dual_numbers_f3", "square_zero_f2"] {
        let o = run(&["check-sd", ring(r).to_str().unwrap(), "--module", "regular"]);
        assert_eq!(o.status.code(), Some(0), "{r}");
    }
}

#[test]
fn check_sd_omega_file_is_certified() {
    let (code, v) = json(&[
        "check-sd",
        ring("square_zero_f2").to_str().unwrap(),
        "--module",
        module("omega_square_zero").to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["certificate"]["status"]["status"], "certified");
    assert_eq!(v["result"]["dualizing"], true);
    let o = run(&["check-sd", ring("square_zero_f2").to_str().unwrap(), "--module", "omega"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn check_sd_residue_is_refuted_by_ext1() {
    let (code, v) = json(&[
        "check-sd",
        ring("dual_numbers_f2").to_str().unwrap(),
        "--module",
        module("residue_dual_numbers").to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    let reason = &v["result"]["certificate"]["status"]["reason"];
    assert_eq!(reason["kind"], "ext_nonzero");
    assert_eq!(reason["degree"], 1);
}

#[test]
fn check_sd_residue_over_square_zero_is_refuted() {
    // k over the square-zero ring: Ext^1(k,k) is already nonzero
    let o = run(&["check-sd", ring("square_zero_f2").to_str().unwrap(), "--module", "residue"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn enumerate_examples() {
    let (_, v) = json(&["enumerate", ring("dual_numbers_f2").to_str().unwrap()]);
    assert_eq!(v["result"]["count"], 1);
    assert_eq!(v["result"]["power_of_two"], 0);

    let o = run(&["enumerate", ring("square_zero_f2").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("classes: 2"));
    assert!(text.contains("power_of_two: 2^1"));

    let (_, v) = json(&["enumerate", ring("square_zero_f2").to_str().unwrap()]);
    let order = &v["result"]["order"];
    let free = v["result"]["classes"]
        .as_array()
        .unwrap()
        .iter()
        .position(|c| c["free"] == true)
        .unwrap();
    let dual = 1 - free;
    // chain: [ω] ⊴ [R] and not conversely
    assert_eq!(order[dual][free]["verdict"], "yes");
    assert_eq!(order[free][dual]["verdict"], "no");

    let (_, v) = json(&["enumerate", ring("field_f2").to_str().unwrap()]);
    assert_eq!(v["result"]["count"], 1);
}

#[test]
fn lattice_golden_n3() {
    let o = run(&["lattice", "3", "--dot"]);
    assert_eq!(stdout(&o), golden("lattice_n3.dot"));
    let o = run(&["--format", "dot", "lattice", "3"]);
    assert_eq!(stdout(&o), golden("lattice_n3.dot"));
}

#[test]
fn lattice_golden_hasse_with_dagger_labels() {
    for n in 0..=3 {
        let o = run(&["lattice", &n.to_string(), "--dot", "--hasse", "--dagger"]);
        assert_eq!(stdout(&o), golden(&format!("lattice_n{n}_hasse_dagger.dot")), "n = {n}");
    }
}

#[test]
fn lattice_single_node_and_counts() {
    let o = run(&["lattice", "0", "--dot"]);
    assert_eq!(stdout(&o), "digraph reflexivity {\n  node [shape=box];\n  \"B{}\";\n}\n");
    let o = run(&["lattice", "10", "--count-only"]);
    assert_eq!(stdout(&o), "nodes=1024 relations=59049\n");
}

#[test]
fn lattice_output_is_deterministic() {
    let a = stdout(&run(&["--format", "json", "lattice", "4", "--hasse"]));
    let b = stdout(&run(&["--format", "json", "lattice", "4", "--hasse"]));
    assert_eq!(a, b);
}

#[test]
fn lattice_needs_hypotheses() {
    assert_eq!(run(&["lattice", "2", "--no-transitive"]).status.code(), Some(3));
    assert_eq!(run(&["lattice", "2", "--dagger", "--no-c0-trivial"]).status.code(), Some(3));
}

#[test]
fn base_change_doubles() {
    let (code, v) = json(&[
        "--trunc",
        "10",
        "base-change",
        ring("dual_numbers_f2").to_str().unwrap(),
        ring("square_zero_uv_f2").to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let r = &v["result"];
    assert_eq!(r["gorenstein"], false);
    assert_eq!(r["fibre_socle_dim"], 2);
    assert_eq!(r["classes_over_base"], 1);
    assert!(r["classes_over_total"].as_array().unwrap().len() >= 2);
    assert_eq!(r["bass"]["identity_holds"], true);
}

#[test]
fn base_change_along_field_is_gorenstein() {
    let (_, v) = json(&[
        "base-change",
        ring("dual_numbers_f2").to_str().unwrap(),
        ring("field_f2").to_str().unwrap(),
    ]);
    assert_eq!(v["result"]["gorenstein"], true);
    assert_eq!(v["result"]["symbolic_bound"]["bound"], 1);
}

#[test]
fn base_change_dim9() {
    let (_, v) = json(&[
        "base-change",
        ring("square_zero_f2").to_str().unwrap(),
        ring("square_zero_uv_f2").to_str().unwrap(),
    ]);
    assert_eq!(v["result"]["total_dim"], 9);
    assert!(v["result"]["classes_over_total"].as_array().unwrap().len() >= 4);
}

#[test]
fn cross_validate_boolean_square() {
    let o = run(&[
        "cross-validate",
        ring("square_zero_f2").to_str().unwrap(),
        "--fibre",
        ring("square_zero_uv_f2").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("order_checks: 16/16 agree"));
}

#[test]
fn cross_validate_mismatch_exit_code() {
    // R, ω, R is not a strictly descending chain
    let o = run(&[
        "cross-validate",
        ring("square_zero_f2").to_str().unwrap(),
        "--chain",
        "regular,omega,regular",
    ]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
}

#[test]
fn reports_embed_seed_and_version() {
    let (_, v) = json(&["--seed", "42", "ring-info", ring("field_f2").to_str().unwrap()]);
    assert_eq!(v["config"]["seed"], 42);
    assert_eq!(v["engine"]["version"], env!("CARGO_PKG_VERSION"));
    let text = stdout(&run(&["--seed", "42", "ring-info", ring("field_f2").to_str().unwrap()]));
    assert!(text.contains("seed=42"));
}

#[test]
fn usage_errors_exit_3() {
    assert_eq!(run(&["nonsense"]).status.code(), Some(3));
    assert_eq!(run(&["--ext-bound", "0", "lattice", "1"]).status.code(), Some(3));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(
        run(&["--format", "dot", "ring-info", ring("field_f2").to_str().unwrap()]).status.code(),
        Some(3)
    );
}
