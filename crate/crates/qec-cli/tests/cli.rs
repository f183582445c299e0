//! End-to-end tests against the compiled binary: JSON shapes, exit codes,
//! and the verify harness contract.

use serde_json::Value;
use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qec"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_lines(output: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&output.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("valid JSON line"))
        .collect()
}

fn single_json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 1);
    lines.into_iter().next().unwrap()
}

#[test]
fn qec_complete_graph() {
    let v = single_json(&["qec", "K5"]);
    assert_eq!(v["qec"], -1.0);
    assert_eq!(v["method"], "closed_form_complete");
    assert_eq!(v["rational"], "-1");
    assert_eq!(v["qe_class"], true);
    assert_eq!(v["n"], 5);
}

#[test]
fn qec_bipartite_formula_mode() {
    let v = single_json(&["qec", "Kb(3,3)", "--mode", "formula"]);
    assert_eq!(v["qec"], 1.0);
    assert_eq!(v["method"], "closed_form_bipartite");
    assert_eq!(v["qe_class"], false);
}

#[test]
fn qec_cart_bipartite_formula_mode() {
    let v = single_json(&["qec", "cart(Kb(3,2),K2)", "--mode", "formula"]);
    assert_eq!(v["qec"], 0.8);
    assert_eq!(v["rational"], "4/5");
    assert_eq!(v["method"], "cart_bipartite");
}

#[test]
fn auto_mode_agrees_with_oracle_when_formula_applies() {
    for expr in [
        "join(C4,P3)",
        "join(Km(2,2),P4)",
        "cart(K3,Kb(2,3))",
        "Kb(4,2)",
    ] {
        let auto = single_json(&["qec", expr]);
        let oracle = single_json(&["qec", expr, "--mode", "oracle"]);
        let diff = (auto["qec"].as_f64().unwrap() - oracle["qec"].as_f64().unwrap()).abs();
        assert!(diff <= 1e-7, "{expr}: {auto} vs {oracle}");
        assert_ne!(auto["method"], "oracle");
    }
}

#[test]
fn dist_path_3() {
    let v = single_json(&["dist", "P3"]);
    assert_eq!(
        v["dist"],
        serde_json::json!([[0, 1, 2], [1, 0, 1], [2, 1, 0]])
    );
}

#[test]
fn spectrum_triangle_adjacency() {
    let v = single_json(&["spectrum", "K3", "--matrix", "adjacency"]);
    let eigenvalues = v["eigenvalues"].as_array().unwrap();
    assert_eq!(eigenvalues.len(), 2);
    assert_eq!(eigenvalues[0]["value"], -1.0);
    assert_eq!(eigenvalues[0]["multiplicity"], 2);
    assert_eq!(eigenvalues[0]["in_sigma0"], true);
    assert_eq!(eigenvalues[1]["value"], 2.0);
    assert_eq!(eigenvalues[1]["in_sigma0"], false);
}

#[test]
fn embed_triangle() {
    let v = single_json(&["embed", "K3"]);
    assert_eq!(v["n"], 3);
    assert_eq!(v["points"].as_array().unwrap().len(), 3);
    assert!(v["max_error"].as_f64().unwrap() <= 1e-10);
}

#[test]
fn spectrum_distance_matrix_of_octahedron() {
    // D_{K_{2,2,2}} restricted data: adjacency spectrum {4, 0^3, (-2)^2}
    // turns into the distance spectrum {6, 0^2, (-2)^3}.
    let v = single_json(&["spectrum", "Km(2,2,2)", "--matrix", "distance"]);
    let eigenvalues = v["eigenvalues"].as_array().unwrap();
    assert_eq!(eigenvalues.len(), 3);
    assert_eq!(eigenvalues[0]["value"], -2.0);
    assert_eq!(eigenvalues[0]["multiplicity"], 3);
    assert!(eigenvalues[1]["value"].as_f64().unwrap().abs() <= 1e-10);
    assert_eq!(eigenvalues[1]["multiplicity"], 2);
    assert_eq!(eigenvalues[2]["value"], 6.0);
    assert_eq!(eigenvalues[2]["in_sigma0"], false);
}

#[test]
fn pretty_output_is_human_readable() {
    let out = run(&["qec", "K5", "--pretty"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("qec(K5) = -1"), "{text}");
    assert!(text.contains("qe_class = true"), "{text}");
}

#[test]
fn file_atom_reads_edge_lists() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, "# a path\n3 2\n0 1\n1 2\n").unwrap();
    let expr = format!("file:{}", file.path().display());
    let v = single_json(&["qec", &expr]);
    // P3 = K_{1,2}, so its constant is -2/3.
    assert!((v["qec"].as_f64().unwrap() + 2.0 / 3.0).abs() <= 1e-9);
}

#[test]
fn exit_codes_follow_the_contract() {
    // Parse error.
    let out = run(&["qec", "join(Km(2,2),)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("offset"));
    // Domain errors.
    assert_eq!(
        run(&["qec", "E2", "--mode", "oracle"]).status.code(),
        Some(3)
    );
    assert_eq!(run(&["embed", "Kb(3,3)"]).status.code(), Some(3));
    assert_eq!(
        run(&["qec", "join(P4,C3)", "--mode", "formula"])
            .status
            .code(),
        Some(3)
    );
    // Usage error from clap.
    assert_eq!(run(&["qec"]).status.code(), Some(2));
    // Missing file.
    assert_eq!(
        run(&["qec", "file:no-such-file.txt"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_file_catalog_passes_and_perturbation_fails() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, "join(C4,P3)\ncart(K2,Kb(3,3))\nKb(4,2)\n").unwrap();
    let path = file.path().to_str().unwrap().to_string();

    let out = run(&["verify", "--catalog", &path]);
    assert_eq!(out.status.code(), Some(0));
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 4); // three cases plus the summary
    assert_eq!(lines[3]["failures"], 0);
    assert_eq!(lines[3]["cases"], 3);
    for case in &lines[..3] {
        assert_eq!(case["pass"], true);
    }

    let out = run(&["verify", "--catalog", &path, "--perturb", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let lines = json_lines(&out);
    let failing: Vec<_> = lines[..3].iter().filter(|l| l["pass"] == false).collect();
    assert_eq!(failing.len(), 1);
    assert_eq!(failing[0]["index"], 1);
}

#[test]
fn verify_builtin_is_seed_deterministic() {
    let a = run(&["verify", "--seed", "7"]);
    let b = run(&["verify", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["verify", "--seed", "8"]);
    assert_eq!(c.status.code(), Some(0));
    assert_ne!(a.stdout, c.stdout);
}
