use std::process::{Command, Output};

use polyjoin_core::betti::BettiVector;
use polyjoin_core::closed_forms::polyjoin_ln;
use polyjoin_core::complex::{complex_from_json, independence_complex, parse_complex};
use polyjoin_core::decomposability::SheddingCertificate;
use polyjoin_core::graph::{
    cycle_graph, graph_from_json, lexicographic_product, parse_graph, path_graph, star_graph,
};
use polyjoin_core::homotopy::{AtomAssignment, NormalForm};
use serde_json::Value;
use tempfile::TempDir;

fn polyjoin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyjoin"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

#[test]
fn formula_ln_4() {
    let out = stdout(&polyjoin(&["formula", "ln", "4"]));
    let nf = NormalForm::from_json(&json(&out)).unwrap();
    assert_eq!(nf, polyjoin_ln(4).unwrap());
    assert_eq!(nf.to_string(), "⋁_3 X^*2 ∨ ⋁_2 ΣX");
    let text = stdout(&polyjoin(&["formula", "ln", "4", "--format", "text"]));
    assert_eq!(text.trim(), "⋁_3 X^*2 ∨ ⋁_2 ΣX");
}

#[test]
fn formula_cycle_5() {
    let out = stdout(&polyjoin(&["formula", "cycle", "5"]));
    assert_eq!(
        json(&out),
        json(r#"{"spheres":{"1":1},"extra_components":0}"#)
    );
}

#[test]
fn formula_lex_table() {
    let out = stdout(&polyjoin(&["formula", "lex", "3", "2", "1"]));
    assert_eq!(
        json(&out),
        json(r#"{"spheres":{"1":2,"3":4},"extra_components":1}"#)
    );
    assert_eq!(
        polyjoin(&["formula", "lex", "0", "1", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(polyjoin(&["formula", "cycle", "2"]).status.code(), Some(2));
}

#[test]
fn verify_all_trees_6_cycle_3() {
    let out = polyjoin(&["verify", "--all-trees", "6", "--h", "cycle:3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let summary = json(text.lines().last().unwrap());
    assert_eq!(summary["summary"]["instances"], 1 + 1 + 3 + 16 + 125 + 1296);
    assert_eq!(summary["summary"]["agree"], summary["summary"]["instances"]);
    assert_eq!(summary["summary"]["torsion"], 0);
}

#[test]
fn verify_reports_are_deterministic_and_ordered() {
    let args = [
        "verify",
        "--lm-range",
        "1..7",
        "--h",
        "cycle:4",
        "--h",
        "complete:3",
        "--no-timings",
    ];
    let a = stdout(&polyjoin(&[&args[..], &["--jobs", "1"]].concat()));
    let b = stdout(&polyjoin(&[&args[..], &["--jobs", "3"]].concat()));
    let c = stdout(&polyjoin(&[&args[..], &["--no-oracle-cache"]].concat()));
    assert_eq!(a, b);
    assert_eq!(a, c);
    let lines: Vec<Value> = a.lines().map(json).collect();
    assert_eq!(lines.len(), 15);
    for (i, r) in lines[..14].iter().enumerate() {
        assert_eq!(r["index"], i);
        assert_eq!(r["agree"], true);
        assert_eq!(r["ms"], Value::Null);
        // every G here is a path, so the closed form applies
        assert_eq!(r["closed_form"], r["oracle"]);
    }
    assert_eq!(lines[6]["h"], "cycle:4");
    assert_eq!(lines[7]["h"], "complete:3");
    assert_eq!(
        lines[6]["engine"],
        json(r#"{"betti":{"1":5},"torsion":false}"#)
    );
}

#[test]
fn verify_exit_codes() {
    // the oracle refuses I(L_4[C_4]) under a tiny face cap, which counts as disagreement
    let out = polyjoin(&[
        "verify",
        "--lm-range",
        "4..4",
        "--h",
        "cycle:4",
        "--max-faces",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(
        polyjoin(&["verify", "--lm-range", "4..2", "--h", "cycle:4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        polyjoin(&["verify", "--all-trees", "3", "--h", "wheel:4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        polyjoin(&["verify", "--all-trees", "3"]).status.code(),
        Some(2)
    );
}

#[test]
fn generated_graphs_round_trip() {
    let dir = TempDir::new().unwrap();
    let cases = [
        (vec!["path", "5"], path_graph(5).unwrap()),
        (vec!["cycle", "6"], cycle_graph(6).unwrap()),
        (vec!["star", "4"], star_graph(4)),
    ];
    for (spec, want) in cases {
        let args: Vec<&str> = ["gen"].into_iter().chain(spec.iter().copied()).collect();
        let text = stdout(&polyjoin(&args));
        assert_eq!(parse_graph(&text).unwrap(), want);
        let js = stdout(&polyjoin(&[&args[..], &["--format", "json"]].concat()));
        assert_eq!(graph_from_json(&js).unwrap(), want);
    }
    let a = write(&dir, "a.graph", &stdout(&polyjoin(&["gen", "path", "3"])));
    let b = write(
        &dir,
        "b.graph",
        &stdout(&polyjoin(&["gen", "cycle", "3", "--format", "json"])),
    );
    let lex = stdout(&polyjoin(&["gen", "lex", &a, &b]));
    assert_eq!(
        parse_graph(&lex).unwrap(),
        lexicographic_product(&path_graph(3).unwrap(), &cycle_graph(3).unwrap())
    );
}

#[test]
fn random_trees_depend_only_on_the_seed() {
    let a = stdout(&polyjoin(&["gen", "tree", "9", "11"]));
    let b = stdout(&polyjoin(&["--seed", "11", "gen", "tree", "9"]));
    let c = stdout(&polyjoin(&["gen", "tree", "9", "12"]));
    assert_eq!(a, b);
    assert_ne!(a, c);
    let g = parse_graph(&a).unwrap();
    assert!(g.is_forest() && g.is_connected() && g.vertex_count() == 9);
}

#[test]
fn indep_certificate_decompose_pipeline() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "p5.graph", &stdout(&polyjoin(&["gen", "path", "5"])));
    let k_text = stdout(&polyjoin(&["indep", &g]));
    let k = parse_complex(&k_text).unwrap();
    assert_eq!(k, independence_complex(&path_graph(5).unwrap()));
    let k_json = stdout(&polyjoin(&["indep", &g, "--format", "json"]));
    assert_eq!(complex_from_json(&k_json).unwrap(), k);
    let kf = write(&dir, "p5.complex", &k_text);

    let searched = stdout(&polyjoin(&["certificate", &kf]));
    let forest = stdout(&polyjoin(&["certificate", "--forest", &g]));
    SheddingCertificate::from_json(&searched).unwrap();
    SheddingCertificate::from_json(&forest).unwrap();

    let mut forms = Vec::new();
    for (name, cert) in [("s.json", &searched), ("f.json", &forest)] {
        let cf = write(&dir, name, cert);
        let out = stdout(&polyjoin(&["decompose", &kf, &cf, "--atoms", "single"]));
        forms.push(NormalForm::from_json(&json(&out)).unwrap());
        let report = json(&stdout(&polyjoin(&["decompose", &kf, &cf, "--report"])));
        assert!(report["trace"].as_array().unwrap().len() > 1);
    }
    let atoms: AtomAssignment = [("X".to_string(), BettiVector::sphere_wedge(2u32, 1))].into();
    assert_eq!(
        forms[0].betti(&atoms).unwrap(),
        forms[1].betti(&atoms).unwrap()
    );
    assert_eq!(forms[1], polyjoin_ln(5).unwrap());
}

#[test]
fn certificate_exit_codes() {
    let dir = TempDir::new().unwrap();
    let boundary = write(&dir, "bd.complex", "1 2\n2 3\n1 3\n");
    assert_eq!(polyjoin(&["certificate", &boundary]).status.code(), Some(3));
    let cycle = write(&dir, "c4.graph", &stdout(&polyjoin(&["gen", "cycle", "4"])));
    assert_eq!(
        polyjoin(&["certificate", "--forest", &cycle]).status.code(),
        Some(2)
    );
    let point = write(&dir, "pt.complex", "1\n");
    assert_eq!(
        json(&stdout(&polyjoin(&["certificate", &point]))),
        json(r#""SIMPLEX""#)
    );
}

#[test]
fn malformed_inputs_exit_2_with_position() {
    let dir = TempDir::new().unwrap();
    let bad_graph = write(&dir, "bad.graph", "3 1\n1 x\n");
    let out = polyjoin(&["indep", &bad_graph]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("bad.graph:2:3:"), "{err}");

    let bad_json = write(
        &dir,
        "bad.complex",
        "{\"vertices\": 3,\n \"facets\": [[1, 2], [3,]]}",
    );
    let out = polyjoin(&["homology", &bad_json]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("bad.complex:2:"));

    let k = write(&dir, "k.complex", "1 2\n");
    let bad_cert = write(&dir, "c.json", "{\"v\": 1, \"w\": 2, \"del\": \"SIMPLEX\"}");
    assert_eq!(
        polyjoin(&["decompose", &k, &bad_cert]).status.code(),
        Some(2)
    );
    let wrong_cert = write(
        &dir,
        "w.json",
        "{\"v\": 1, \"w\": 2, \"del\": \"SIMPLEX\", \"lk\": \"SIMPLEX\"}",
    );
    assert_eq!(
        polyjoin(&["decompose", &k, &wrong_cert]).status.code(),
        Some(2)
    );
    assert_eq!(
        polyjoin(&["homology", "/nonexistent/file"]).status.code(),
        Some(2)
    );
    assert_eq!(polyjoin(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn homology_text_and_json_agree_and_out_flag_writes() {
    let dir = TempDir::new().unwrap();
    let p4 = write(&dir, "p4.graph", &stdout(&polyjoin(&["gen", "path", "4"])));
    let c4 = write(&dir, "c4.graph", &stdout(&polyjoin(&["gen", "cycle", "4"])));
    let lex = write(
        &dir,
        "lex.graph",
        &stdout(&polyjoin(&["gen", "lex", &p4, &c4])),
    );
    let k = write(&dir, "lex.complex", &stdout(&polyjoin(&["indep", &lex])));
    let js = stdout(&polyjoin(&["homology", &k]));
    assert_eq!(json(&js), json(r#"{"betti":{"1":5},"torsion":false}"#));
    assert_eq!(
        stdout(&polyjoin(&["homology", &k, "--format", "text"])).trim(),
        "b1=5"
    );

    let target = dir.path().join("h.json");
    let out = polyjoin(&["homology", &k, "--out", target.to_str().unwrap()]);
    assert!(stdout(&out).is_empty());
    assert_eq!(std::fs::read_to_string(&target).unwrap(), js);

    let capped = polyjoin(&["homology", &k, "--max-faces", "100"]);
    assert_eq!(capped.status.code(), Some(2));
}

#[test]
fn the_empty_complex_round_trips() {
    let dir = TempDir::new().unwrap();
    let k = write(&dir, "e.complex", "-\n");
    assert_eq!(
        json(&stdout(&polyjoin(&["homology", &k]))),
        json(r#"{"betti":{"-1":1},"torsion":false}"#)
    );
}
