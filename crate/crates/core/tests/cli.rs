use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn corpus(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "corpus", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn coverlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coverlab"))
        .args(args)
        .output()
        .unwrap()
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_coverlab"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn lattice_verify_exponent_lattices() {
    let out = coverlab(&["lattice-verify", &corpus("exponent-lattices.json")]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["proper"], Value::Bool(true));
    assert_eq!(r["result"]["witnesses"]["2"], serde_json::json!([1, 1]));
    assert_eq!(r["statement"], "Theorem 4 (lattice cover)");
    assert_eq!(r["result"]["certificate"]["kind"], "finite_index");
}

#[test]
fn lattice_verify_refuted_and_inconclusive() {
    let out = coverlab(&["lattice-verify", &corpus("two-lattices.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(
        report(&out)["result"]["uncovered_witness"],
        serde_json::json!([1, 1])
    );

    let out = coverlab(&["lattice-verify", &corpus("horizontal-strip.json"), "--box", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = coverlab(&["lattice-verify", &corpus("horizontal-strip.json"), "--box", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn theorem1_on_two_copies_of_c2() {
    let out = coverlab(&[
        "descriptor-check",
        "--predicate",
        "theorem1",
        &corpus("klein-squared.json"),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = coverlab(&[
        "--format",
        "text",
        "descriptor-check",
        "--predicate",
        "theorem1",
        &corpus("klein-squared.json"),
    ]);
    let first = String::from_utf8(text.stdout).unwrap();
    let first = first.lines().next().unwrap().to_string();
    assert!(
        first.starts_with("Theorem 1: false [repeated-prime-summand]"),
        "{first}"
    );

    let out = coverlab(&[
        "descriptor-check",
        "--predicate",
        "theorem1",
        &corpus("rationals-plus-c2.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn group_cover_subcommands() {
    assert_eq!(
        coverlab(&["group-cover", "verify", &corpus("klein-lines.json")])
            .status
            .code(),
        Some(0)
    );
    let dup = coverlab(&["group-cover", "verify", &corpus("c6-duplicate.json")]);
    assert_eq!(dup.status.code(), Some(1));
    let w = &report(&dup)["result"]["uncovered_witness"];
    assert!(w == &serde_json::json!([1]) || w == &serde_json::json!([5]));

    let minimal = coverlab(&["group-cover", "minimal", &corpus("c3xc3.json")]);
    assert_eq!(minimal.status.code(), Some(0));
    assert_eq!(report(&minimal)["result"]["size"], 4);
    let semi = coverlab(&[
        "group-cover",
        "minimal",
        "--mode",
        "subsemigroups",
        &corpus("c3xc3.json"),
    ]);
    assert_eq!(report(&semi)["result"]["size"], 4);

    let cyclic = coverlab(&["group-cover", "construct", &corpus("c12.json")]);
    assert_eq!(cyclic.status.code(), Some(1));
    assert_eq!(report(&cyclic)["result"]["witnesses"], serde_json::json!({}));
    assert_eq!(report(&cyclic)["result"]["certificate"]["kind"], "generator");
}

#[test]
fn field_refute_examples() {
    let out = coverlab(&["field-refute", &corpus("refute-additive.json")]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["result"]["verified"], Value::Bool(true));
    assert_eq!(
        r["result"]["certificate"]["element"]["num"],
        serde_json::json!([0, 0, 0, 1])
    );
    let out = coverlab(&["field-refute", &corpus("refute-multiplicative.json")]);
    assert_eq!(
        report(&out)["result"]["certificate"]["element"]["num"],
        serde_json::json!([1, 1])
    );
}

#[test]
fn units_and_zx() {
    let out = coverlab(&["units-classify", "2", "3", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    for (i, m) in ["M1", "M2", "M3"].iter().enumerate() {
        assert_eq!(r["result"]["units"][i]["parts"], serde_json::json!([m]));
    }
    let zx = coverlab(&["zx-verify", "--samples", "200"]);
    assert_eq!(zx.status.code(), Some(0));
    assert_eq!(
        report(&zx)["seed"],
        serde_json::json!(coverlab::cli::DEFAULT_SEED)
    );
}

#[test]
fn error_exit_codes() {
    assert_eq!(coverlab(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(
        coverlab(&["lattice-verify", "/nonexistent.json"]).status.code(),
        Some(3)
    );
    assert_eq!(
        with_stdin(&["lattice-verify", "-"], "{not json").status.code(),
        Some(3)
    );
    assert_eq!(
        with_stdin(&["lattice-verify", "-"], r#"{"ambient": 2, "lattices": []}"#)
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        with_stdin(
            &["group-cover", "minimal", "-"],
            r#"{"invariant_factors": [4, 2]}"#
        )
        .status
        .code(),
        Some(3)
    );
    assert_eq!(
        coverlab(&["--bound", "8", "group-cover", "minimal", &corpus("c3xc3.json")])
            .status
            .code(),
        Some(4)
    );
    assert_eq!(coverlab(&["units-classify", "1/0"]).status.code(), Some(3));
    assert_eq!(coverlab(&["--version"]).status.code(), Some(0));
}

#[test]
fn output_is_byte_identical() {
    for args in [
        vec!["lattice-verify".to_string(), corpus("exponent-lattices.json")],
        vec![
            "zx-verify".into(),
            "--samples".into(),
            "100".into(),
            "--seed".into(),
            "9".into(),
        ],
        vec!["group-cover".into(), "minimal".into(), corpus("c3xc3.json")],
        vec!["field-refute".into(), corpus("refute-additive.json")],
    ] {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let a = coverlab(&args);
        let b = coverlab(&args);
        assert_eq!(a.stdout, b.stdout);
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn json_reports_have_sorted_keys_and_no_floats() {
    let out = coverlab(&["lattice-verify", &corpus("exponent-lattices.json")]);
    let text = String::from_utf8(out.stdout).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    fn check(v: &Value) {
        match v {
            Value::Number(n) => assert!(n.is_i64() || n.is_u64()),
            Value::Array(xs) => xs.iter().for_each(check),
            Value::Object(m) => {
                let keys: Vec<_> = m.keys().collect();
                let mut sorted = keys.clone();
                sorted.sort();
                assert_eq!(keys, sorted);
                m.values().for_each(check);
            }
            _ => {}
        }
    }
    check(&v);
    assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", text);
}
