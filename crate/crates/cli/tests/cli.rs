use std::path::PathBuf;

use injlog::cli::run;
use injlog::{parse, parse_proof};
use injlog_core::{check_proof, GraphCat};
use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn injlog(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("injlog").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut with = args.to_vec();
    with.push("--json");
    let (code, out, _) = injlog(&with);
    (code, serde_json::from_str(&out).unwrap())
}

#[test]
fn saturation_without_cancellation_misses_the_goal() {
    let f = fixture("section7.inj");
    let (code, out, _) = injlog(&["saturate", &f, "--cat", "Chain", "--hset", "Far", "--goal", "c01"]);
    assert_eq!(code, 0);
    assert!(out.contains("0 -> 1  (cancel (hyp c02) (mor 0 1) (mor 1 2))"), "{out}");
    let (code, out, _) =
        injlog(&["saturate", &f, "--cat", "Chain", "--hset", "Far", "--goal", "c01", "--disable", "cancellation"]);
    assert_eq!(code, 1);
    assert!(out.contains("is not derived") && !out.contains("0 -> 1 "), "{out}");
    let (code, v) = json(&["saturate", &f, "--cat", "Chain", "--hset", "Far", "--disable", "cancellation"]);
    assert_eq!(code, 0);
    assert_eq!(v["derived"].as_array().unwrap().len(), 5);
    assert_eq!(v["disabled"], serde_json::json!(["cancellation"]));
}

#[test]
fn empty_hypotheses_entail_identities() {
    let (code, out, _) = injlog(&["consequence", &fixture("section7.inj"), "--hset", "NoHyps", "--goal", "c11"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("holds"), "{out}");
}

#[test]
fn graph_verdicts_carry_their_bound() {
    let f = fixture("cliques.inj");
    let (code, out, _) = injlog(&["consequence", &f, "--hset", "Cliques", "--goal", "loop"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("holds-up-to(3)"), "{out}");
    let (code, v) = json(&["consequence", &f, "--hset", "Cliques", "--goal", "loop", "--max-size", "4"]);
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], "counterexample");
    assert_eq!(v["witness"], "C4");
    assert_eq!(v["bound"], 4);
}

#[test]
fn text_and_json_agree() {
    let s7 = fixture("section7.inj");
    let cl = fixture("cliques.inj");
    let cases: Vec<Vec<&str>> = vec![
        vec!["consequence", &s7, "--hset", "Corner", "--goal", "d0b"],
        vec!["consequence", &cl, "--hset", "Triangle", "--goal", "k2"],
        vec!["check-inj", &cl, "--cat", "graphs", "--object", "C3", "--hset", "Cliques"],
        vec!["check-proof", &s7, "--proof", "Cut", "--hset", "Far"],
        vec!["prove", &s7, "--hset", "Corner", "--goal", "db1"],
        vec!["reflect", &s7, "--cat", "Diamond", "--object", "b", "--hset", "Corner"],
    ];
    for args in cases {
        let (code, text, _) = injlog(&args);
        let (jcode, v) = json(&args);
        assert_eq!(code, jcode, "{args:?}");
        assert_eq!(v["exit_code"], code);
        for key in ["witness", "conclusion", "proof", "reflection"] {
            if let Some(Value::String(w)) = v.get(key) {
                assert!(text.contains(w.as_str()), "{args:?}: {key} {w} missing from {text}");
            }
        }
        if let Some(ws) = v["witnesses"].as_array() {
            for w in ws {
                assert!(text.contains(w["witness"].as_str().unwrap()), "{text}");
            }
        }
    }
}

#[test]
fn emitted_proofs_reparse_and_recheck() {
    let f = fixture("cliques.inj");
    let out_path = std::env::temp_dir().join(format!("injlog-proof-{}.sexp", std::process::id()));
    let out = out_path.display().to_string();
    let (code, text, _) = injlog(&["prove", &f, "--hset", "Triangle", "--goal", "k2", "--emit-proof", &out]);
    assert_eq!(code, 0, "{text}");
    let emitted = std::fs::read_to_string(&out_path).unwrap();
    std::fs::remove_file(&out_path).unwrap();
    let syntax = parse_proof(emitted.trim()).unwrap();
    assert_eq!(syntax.to_string(), emitted.trim());
    let ws = parse(&std::fs::read_to_string(&f).unwrap()).unwrap();
    let p = ws.graph_proof(&syntax).unwrap();
    let hs = ws.graph_hset("Triangle").unwrap();
    assert_eq!(check_proof(&GraphCat, &hs, &p), Ok(ws.graph_mor("k2").unwrap()));
}

#[test]
fn search_outcomes_map_to_exit_codes() {
    let (code, out, _) = injlog(&["prove", &fixture("cliques.inj"), "--hset", "Cliques", "--goal", "loop"]);
    assert_eq!(code, 2, "{out}");
    assert!(out.starts_with("inconclusive"), "{out}");
    let (code, out, _) = injlog(&["prove", &fixture("section7.inj"), "--hset", "Corner", "--goal", "d0b"]);
    assert_eq!(code, 1, "{out}");
    assert!(out.starts_with("not derivable"), "{out}");
}

#[test]
fn reflection_trace_is_written() {
    let path = std::env::temp_dir().join(format!("injlog-trace-{}.txt", std::process::id()));
    let p = path.display().to_string();
    let (code, out, _) = injlog(&[
        "reflect", &fixture("cliques.inj"), "--cat", "graphs", "--object", "Zero", "--hset", "Triangle", "--emit-trace", &p,
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("weak reflection verified"), "{out}");
    let trace = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    let lines: Vec<&str> = trace.lines().collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0], "start Zero");
    assert!(lines[1].starts_with("round 1 object C3 "), "{}", lines[1]);
    assert!(lines[2].starts_with("end converged true"), "{}", lines[2]);

    let (code, out, _) =
        injlog(&["reflect", &fixture("cliques.inj"), "--cat", "graphs", "--object", "Point", "--hset", "Out", "--max-rounds", "3"]);
    assert_eq!(code, 2, "{out}");
}

#[test]
fn sentences() {
    let f = fixture("cliques.inj");
    assert_eq!(injlog(&["sentence", &f, "--mor", "out"]).1.trim(), "∀x0 ( true → ∃y0 ( E(x0,y0) ) )");
    assert_eq!(injlog(&["sentence", &f, "--mor", "loop"]).1.trim(), "( true → ∃y0 ( E(y0,y0) ) )");
    assert_eq!(injlog(&["sentence", &fixture("section7.inj"), "--mor", "c01"]).0, 64);
}

#[test]
fn demo_passes() {
    let (code, out, _) = injlog(&["demo", "section7"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 7, "{out}");
    let (_, v) = json(&["demo", "section7"]);
    assert_eq!(v["rows"].as_array().unwrap().len(), 7);
}

#[test]
fn usage_and_parse_errors() {
    let s7 = fixture("section7.inj");
    assert_eq!(injlog(&["frobnicate"]).0, 64);
    assert_eq!(injlog(&["demo", "section9"]).0, 64);
    assert_eq!(injlog(&["consequence", &s7, "--hset", "Nope", "--goal", "c01"]).0, 64);
    assert_eq!(injlog(&["saturate", &s7, "--cat", "Chain", "--hset", "Far", "--disable", "magic"]).0, 64);
    assert_eq!(injlog(&["saturate", &fixture("cliques.inj"), "--cat", "graphs", "--hset", "Cliques"]).0, 64);
    assert_eq!(injlog(&["consequence", &s7, "--hset", "Corner", "--goal", "c01"]).0, 64);
    assert_eq!(injlog(&["consequence", "/no/such/file", "--hset", "H", "--goal", "g"]).0, 64);

    let bad = std::env::temp_dir().join(format!("injlog-bad-{}.inj", std::process::id()));
    std::fs::write(&bad, "graph A { nodes: x; edges: ; }\nmor f : A -> A { }\n").unwrap();
    let (code, _, err) = injlog(&["sentence", &bad.display().to_string(), "--mor", "f"]);
    std::fs::remove_file(&bad).unwrap();
    assert_eq!(code, 65);
    assert!(err.contains(":line 2, column 16: total map required"), "{err}");
    assert!(err.contains("hint: add `x |-> …`"), "{err}");
}

#[test]
fn help_is_not_an_error() {
    let (code, out, _) = injlog(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("saturate"));
}
