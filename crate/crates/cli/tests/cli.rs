use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
}

fn run_with(args: &[&str], envs: &[(&str, &str)]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_atomon"))
        .args(args)
        .env_remove("ATOMON_BUDGET")
        .envs(envs.iter().copied())
        .current_dir(data_dir())
        .output()
        .expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    run_with(args, &[])
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 output")
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?} failed: {}", stderr(&out));
    stdout(&out)
}

fn ok_json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    serde_json::from_str(&ok(&full)).expect("valid JSON")
}

fn fails(args: &[&str], code: i32, needle: &str) {
    let out = run(args);
    assert_eq!(out.status.code(), Some(code), "{args:?}: {}", stderr(&out));
    assert!(stderr(&out).contains(needle), "{args:?}: stderr was {}", stderr(&out));
}

#[test]
fn length_sets_of_the_terminal_monoid() {
    assert_eq!(ok(&["lengthset", "one.json", "1"]), "{0}\n");
    assert_eq!(ok(&["lengthset", "one.json", "a"]), "{1}\n");
    assert_eq!(
        ok(&["lengthset", "one.json", "0", "--bound", "10"]),
        "(2 + {0} mod 1)\noracle up to 10: [2, 3, 4, 5, 6, 7, 8, 9, 10] (agrees)\n"
    );
    let v = ok_json(&["lengthset", "one.json", "0", "--bound", "6"]);
    assert_eq!(v["set"]["threshold"], 2);
    assert_eq!(v["oracle"]["agrees"], true);
}

#[test]
fn unknown_element_is_an_error() {
    fails(&["lengthset", "one.json", "z"], 2, "no element named `z`");
}

#[test]
fn validate_reports_bad_tables() {
    assert_eq!(ok(&["validate", "h2.json"]), "valid monoid with 4 elements (atomic: true)\n");
    assert_eq!(
        ok(&["validate", "sl2.json"]),
        "valid monoid with 2 elements (atomic: false)\n"
    );
    fails(&["validate", "bad_table.json"], 2, "not a valid monoid");
    fails(&["validate", "missing.json"], 2, "cannot read");
}

#[test]
fn analyze_lists_atoms_and_predicates() {
    let v = ok_json(&["analyze", "h2.json"]);
    assert_eq!(v["atoms"], serde_json::json!(["a", "b"]));
    assert_eq!(v["units"], serde_json::json!(["1"]));
    assert_eq!(v["properties"]["atomic"], true);
    assert_eq!(v["properties"]["cancellative"], false);
    assert_eq!(v["elements"][3]["length_set"]["display"], "(2 + {0} mod 1)");
    assert_eq!(
        v["system"]["display"],
        serde_json::json!(["{0}", "{1}", "(2 + {0} mod 1)"])
    );
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["analyze", "m31.json"][..],
        &["--json", "product", "system", "one_one.json"][..],
        &["coproduct", "system", "one_c2_h2.json", "--max-blocks", "2"][..],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}

#[test]
fn unions_of_m31() {
    assert_eq!(
        ok(&["unions", "m31.json", "--max-k", "3"]),
        "U_0 = {0}\nU_1 = {1}\nU_2 = {2}\nU_3 = (3 + {0} mod 1)\n"
    );
}

#[test]
fn coproduct_word_operations() {
    assert_eq!(
        ok(&["coproduct", "reduce", "one_c2_h2.json", "(a@1)*(u@2)*(u@2)*(a@3)"]),
        "(a@1)*(a@3)\n"
    );
    assert_eq!(
        ok(&["coproduct", "mul", "one_c2_h2.json", "(a@1)*(u@2)", "(u@2)*(a@1)"]),
        "(0@1)\n"
    );
    assert_eq!(ok(&["coproduct", "reduce", "one_c2_h2.json", "eps"]), "eps\n");
    assert_eq!(
        ok(&["coproduct", "atom", "one_c2_h2.json", "(u@2)*(a@1)*(u@2)"]),
        "(u@2)*(a@1)*(u@2): atom\n"
    );
    assert_eq!(
        ok(&["coproduct", "atom", "one_c2_h2.json", "(u@2)"]),
        "(u@2): unit\n"
    );
    assert_eq!(
        ok(&["coproduct", "atom", "one_inline_c2.json", "(a@1)*(g@2)*(a@1)"]),
        "(a@1)*(g@2)*(a@1): reducible\n"
    );
    fails(&["coproduct", "reduce", "one_c2_h2.json", "(a@4)"], 2, "out of range");
    fails(&["coproduct", "reduce", "one_c2_h2.json", "a@1"], 2, "cannot parse");
}

#[test]
fn coproduct_lengths_agree_with_search() {
    assert_eq!(
        ok(&["coproduct", "lengthset", "one_c2_h2.json", "(0@1)*(a@3)", "--bound", "8"]),
        "(3 + {0} mod 1)\noracle up to 8: [3, 4, 5, 6, 7, 8] (agrees)\n"
    );
    assert_eq!(ok(&["coproduct", "unionk", "one_one.json", "3"]), "(2 + {0} mod 1)\n");
    let v = ok_json(&["coproduct", "system", "one_one.json", "--max-blocks", "2"]);
    assert_eq!(v["truncated_at"], 2);
}

#[test]
fn budget_comes_from_the_environment() {
    let args = ["coproduct", "lengthset", "one_c2_h2.json", "(0@1)*(a@3)", "--bound", "8"];
    let out = run_with(&args, &[("ATOMON_BUDGET", "5")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("budget of 5"), "{}", stderr(&out));
    let out = run_with(&args, &[("ATOMON_BUDGET", "many")]);
    assert!(stderr(&out).contains("ATOMON_BUDGET must be a number"));
}

#[test]
fn family_members_must_be_atomic() {
    fails(
        &["coproduct", "reduce", "bad_family.json", "eps"],
        2,
        "member 2 of the family is not atomic",
    );
}

#[test]
fn product_queries() {
    assert_eq!(
        ok(&["product", "contains", "one_one.json", "(a,a)"]),
        "(a,a): in product (atom)\n"
    );
    assert_eq!(
        ok(&["product", "contains", "one_one.json", "(a,0)"]),
        "(a,0): not in product\n"
    );
    assert_eq!(
        ok(&["product", "lengthset", "one_one.json", "(0,0)"]),
        "(2 + {0} mod 1)\n"
    );
    fails(&["product", "lengthset", "one_one.json", "(a,1)"], 2, "");
    assert_eq!(ok(&["product", "system", "one_c2_h2.json"]), "{{0}}\n");
    assert_eq!(ok(&["product", "unionk", "one_one.json", "2"]), "(2 + {0} mod 1)\n");
}

#[test]
fn materialized_product_of_two_copies_of_the_terminal_monoid() {
    let v = ok_json(&["product", "materialize", "one_one.json"]);
    let one: Value =
        serde_json::from_str(&std::fs::read_to_string(data_dir().join("one.json")).unwrap()).unwrap();
    assert_eq!(v["monoid"]["table"], one["table"]);
    assert_eq!(v["monoid"]["names"], serde_json::json!(["(1,1)", "(a,a)", "(0,0)"]));
    assert_eq!(v["projections"], serde_json::json!([[0, 1, 2], [0, 1, 2]]));
}

#[test]
fn terminal_and_initial() {
    let terminal = ok(&["limits", "terminal"]);
    let one = std::fs::read_to_string(data_dir().join("one.json")).unwrap();
    assert_eq!(terminal, one);
    assert_eq!(ok(&["limits", "initial"]), "{\"identity\":0,\"names\":[\"1\"],\"table\":[[0]]}\n");
}

#[test]
fn limits_of_small_diagrams() {
    let v = ok_json(&["limits", "equalizer", "h2_id.json", "h2_swap.json"]);
    assert_eq!(v["monoid"]["names"], serde_json::json!(["1"]));
    let v = ok_json(&["limits", "pullback", "one_to_h2_a.json", "one_to_h2_b.json"]);
    assert_eq!(v["monoid"]["names"], serde_json::json!(["(1,1)"]));
    let v = ok_json(&["limits", "coequalizer", "one_to_h2_a.json", "one_to_h2_b.json"]);
    assert_eq!(v["monoid"]["names"], serde_json::json!(["1", "a~b", "0"]));
    assert_eq!(v["projection"], serde_json::json!([0, 1, 1, 2]));
    fails(
        &["limits", "equalizer", "bad_hom.json", "one_to_h2_a.json"],
        2,
        "homomorphism 1 is not atom-preserving",
    );
    fails(&["limits", "equalizer", "one_id.json", "h2_id.json"], 2, "differ");
}

#[test]
fn pushout_of_two_atom_embeddings() {
    let out = ok(&["limits", "pushout-present", "one_to_h2_a.json", "one_to_h2_b.json"]);
    assert!(out.contains("(a@1) = (b@2)\n"), "{out}");
    assert_eq!(
        ok(&["limits", "pushout-eq", "one_id.json", "one_id.json", "(a@1)", "(a@2)"]),
        "equal\n"
    );
    assert_eq!(
        ok(&["limits", "pushout-eq", "one_id.json", "one_id.json", "(a@1)", "(0@2)"]),
        "unknown\n"
    );
}

#[test]
fn verify_runs_named_suites() {
    let out = ok(&["verify", "terminal"]);
    assert!(out.starts_with("terminal: PASS"), "{out}");
    let v = ok_json(&["verify", "epset-arith", "--seed", "3"]);
    assert_eq!(v[0]["mismatches"], serde_json::json!([]));
    assert!(ok(&["verify", "--list"]).lines().any(|l| l == "pushout"));
    fails(&["verify", "nope"], 2, "unknown verification suite `nope`");
    fails(&["verify"], 2, "name a suite");
}

#[test]
fn fixtures_round_trip_through_validate() {
    let out = ok(&["fixture", "m31"]);
    let file: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(file["names"], serde_json::json!(["1", "g", "g2", "g3"]));
    fails(&["fixture", "nope"], 2, "unknown fixture");
}

#[test]
fn analyze_terminal_and_trivial_monoids() {
    let v = ok_json(&["analyze", "one.json"]);
    assert_eq!(v["atoms"], serde_json::json!(["a"]));
    assert_eq!(
        v["system"]["display"],
        serde_json::json!(["{0}", "{1}", "(2 + {0} mod 1)"])
    );
    let v = ok_json(&["analyze", "zero.json"]);
    assert_eq!(v["atoms"], serde_json::json!([]));
    assert_eq!(v["system"]["display"], serde_json::json!(["{0}"]));
}
