//! End-to-end tests of the `g2-minaff` binary: snapshots of text output,
//! JSON schema checks, exit codes, and byte-level determinism.

use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_g2-minaff"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

fn json_of(args: &[&str]) -> Value {
    let mut with_json: Vec<&str> = args.to_vec();
    with_json.push("--json");
    serde_json::from_str(&stdout_of(&with_json)).expect("parseable JSON")
}

#[test]
fn decompose_text_snapshots() {
    assert_eq!(
        stdout_of(&["decompose", "1", "0"]),
        "V(ω1) × 1  (dim 14)\nV(0) × 1  (dim 1)\ntotal: 15\n"
    );
    assert_eq!(
        stdout_of(&["decompose", "0", "0"]),
        "V(0) × 1  (dim 1)\ntotal: 1\n"
    );
    let text = stdout_of(&["decompose", "1", "1"]);
    assert!(text.ends_with("total: 71\n"), "{text}");
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn decompose_json_schema() {
    assert_eq!(
        json_of(&["decompose", "1", "0"]),
        json!({
            "summands": [
                { "weight": [1, 0], "mult": 1, "dim": 14 },
                { "weight": [0, 0], "mult": 1, "dim": 1 },
            ],
            "total_dim": 15,
        })
    );
}

#[test]
fn dim_is_a_bare_number_in_text_mode() {
    assert_eq!(stdout_of(&["dim", "1", "1"]), "71\n");
    assert_eq!(
        json_of(&["dim", "1", "1"]),
        json!({ "k": 1, "l": 1, "dim": 71 })
    );
}

#[test]
fn character_text_and_json_agree() {
    let text = stdout_of(&["character", "1", "0"]);
    assert!(text.starts_with("character of L(1, 0): 13 weights\n"));
    assert_eq!(text.lines().count(), 14);
    // --quiet drops only the header.
    let quiet = stdout_of(&["character", "1", "0", "--quiet"]);
    assert_eq!(quiet.lines().count(), 13);

    let parsed = json_of(&["character", "1", "0"]);
    let terms = parsed.as_array().expect("list of terms");
    assert_eq!(terms.len(), 13);
    let total: i64 = terms.iter().map(|t| t["coeff"].as_i64().unwrap()).sum();
    assert_eq!(total, 15);
    assert_eq!(terms[0]["weight"], json!([2, -3]));
}

#[test]
fn monomial_variants() {
    assert_eq!(stdout_of(&["monomial", "1", "1"]), "Y[1,q^0]·Y[2,q^7]\n");
    assert_eq!(
        stdout_of(&["monomial", "1", "1", "--variant", "second"]),
        "Y[2,q^0]·Y[1,q^7]\n"
    );
    assert_eq!(stdout_of(&["monomial", "0", "0"]), "1\n");
    assert_eq!(
        json_of(&["monomial", "1", "1"]),
        json!([{ "node": 1, "qexp": 0 }, { "node": 2, "qexp": 7 }])
    );
}

#[test]
fn relations_list_all_seven() {
    let text = stdout_of(&["relations", "1", "2"]);
    assert_eq!(text.lines().count(), 7);
    assert!(text.contains("f_1^2"));
    assert!(text.contains("f_2^3"));
    let parsed = json_of(&["relations", "1", "2"]);
    let rels = parsed.as_array().expect("list");
    assert_eq!(rels.len(), 7);
    assert_eq!(
        rels.iter().filter(|r| r["kind"] == "current-annihilation").count(),
        3
    );
}

#[test]
fn rho_table_matches_known_values() {
    let text = stdout_of(&["rho-table", "0", "3"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines,
        vec![
            "ρ(-(2α1+3α2) + δ) = 2",
            "ρ(-(α1+3α2) + δ) = 2",
            "ρ(-(α1+2α2) + δ) = 3",
            "ρ(-(2α1+3α2) + 2δ) = 1",
            "ρ(-(α1+3α2) + 2δ) = 1",
        ]
    );
    assert_eq!(
        stdout_of(&["rho-table", "0", "0"]),
        "all ρ values vanish for δ-coefficient ≤ 4\n"
    );
    let parsed = json_of(&["rho-table", "0", "3"]);
    let rows = parsed["rows"].as_array().expect("rows");
    assert_eq!(rows.len(), 54); // 6 + 4 · 12 roots with p ≤ 4
    let nonzero: Vec<&Value> = rows.iter().filter(|r| r["rho"] != 0).collect();
    assert_eq!(nonzero.len(), 5);
    assert_eq!(nonzero[0]["root"], json!([-2, -3, 1]));
    assert_eq!(nonzero[0]["rho"], json!(2));
}

#[test]
fn demazure_sequence_rendering() {
    assert_eq!(
        stdout_of(&["demazure-seq", "1", "4"]),
        "(-ω1, level 1)\n(-3ω2, level 1)\n(-ω2, level 1)\n"
    );
    assert_eq!(stdout_of(&["demazure-seq", "0", "0"]), "(empty sequence)\n");
    assert_eq!(
        json_of(&["demazure-seq", "2", "0"]),
        json!([{ "weight": [-2, 0], "level": 2 }])
    );
}

#[test]
fn kr_closed_forms() {
    assert_eq!(
        stdout_of(&["kr", "2", "1"]),
        "V(ω2) × 1  (dim 7)\ntotal: 7\n"
    );
    let parsed = json_of(&["kr", "1", "2"]);
    assert_eq!(parsed["total_dim"], json!(1 + 14 + 77));
    assert_eq!(parsed["summands"].as_array().unwrap().len(), 3);
}

#[test]
fn limit_check_stabilizes_on_small_box() {
    let text = stdout_of(&["limit-check", "1", "2", "--box", "1"]);
    assert!(text.contains("stabilized at n = 1"), "{text}");
    let parsed = json_of(&["limit-check", "1", "2", "--box", "1"]);
    assert_eq!(parsed["stabilized_at"], json!(1));
    assert_eq!(parsed["nodes"], json!([1, 2]));
    let coeffs = parsed["series"]["coeffs"].as_array().expect("coeffs");
    assert_eq!(coeffs.len(), 4); // full 2×2 box
    let quiet = stdout_of(&["limit-check", "2", "--box", "1", "--quiet"]);
    assert_eq!(quiet.lines().next(), Some("stabilized at n = 1"));
}

#[test]
fn lemma46_rendering() {
    assert_eq!(stdout_of(&["lemma46", "1"]), "det = -1/8, nonzero: true\n");
    let parsed = json_of(&["lemma46", "1"]);
    assert_eq!(parsed, json!({ "r": 1, "det": "-1/8", "nonzero": true }));
    let bigger = json_of(&["lemma46", "5"]);
    assert_eq!(bigger["nonzero"], json!(true));
}

#[test]
fn selftest_passes_and_respects_quiet() {
    let out = run(&["selftest", "--quiet"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1);
    assert!(text.starts_with("selftest: "), "{text}");
    assert!(text.contains("checks passed (scale 1)"));

    let parsed = json_of(&["selftest"]);
    assert_eq!(parsed["passed"], json!(true));
    assert!(parsed["checks"].as_array().unwrap().len() >= 15);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["kr", "3", "1"][..],
        &["decompose", "1"][..],
        &["lemma46", "0"][..],
        &["limit-check"][..],
        &["monomial", "1", "1", "--variant", "third"][..],
        &["no-such-command"][..],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn computation_errors_exit_1() {
    let out = run(&["dim", "4600000", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("overflow"), "{err}");
    assert!(out.stdout.is_empty());
}

#[cfg(unix)]
#[test]
fn closed_pipe_kills_silently() {
    use std::io::Read;
    use std::os::unix::process::ExitStatusExt;
    use std::process::Stdio;

    // ~24k table rows (≫ the kernel pipe buffer), so the writer must block.
    let mut child = Command::new(env!("CARGO_BIN_EXE_g2-minaff"))
        .args(["rho-table", "5", "5", "--p-max", "2000", "--json"])
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    let mut first = [0u8; 16];
    child
        .stdout
        .take()
        .expect("piped stdout")
        .read_exact(&mut first)
        .expect("some output before the pipe closes");
    // Dropping stdout closes our end; the child should die on SIGPIPE
    // without printing a panic message.
    let out = child.wait_with_output().expect("child finishes");
    assert_eq!(out.status.signal(), Some(libc::SIGPIPE));
    assert!(out.stderr.is_empty(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        &["decompose", "3", "2", "--json"][..],
        &["character", "2", "1"][..],
        &["rho-table", "2", "5", "--json"][..],
        &["limit-check", "1", "--box", "2", "--json"][..],
    ] {
        let first = run(args);
        let second = run(args);
        assert!(first.status.success(), "{args:?}");
        assert_eq!(first.stdout, second.stdout, "{args:?}");
    }
}
