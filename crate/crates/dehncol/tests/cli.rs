//! End-to-end tests of the command-line interface: JSON and CSV output,
//! every diagram input form, the results store, and the exit-code contract
//! (0 ok, 1 verification failure, 2 bad input, 3 budget exceeded).

use std::path::Path;
use std::process::{Command, Output};

fn dehncol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dehncol"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "exit {:?}, stderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn colorings_json_for_builtin_knot() {
    let v = stdout_json(&dehncol(&["colorings", "--knot", "trefoil", "--p", "3"]));
    assert_eq!(v["knot"], "trefoil");
    assert_eq!(v["p"], 3);
    assert_eq!(v["regions"], 5);
    assert_eq!(v["rank"], 2);
    assert_eq!(v["dimension"], 3);
    assert_eq!(v["total"], "27");
    assert_eq!(v["trivial"], "9");
    assert_eq!(v["nontrivial"], "18");
}

#[test]
fn colorings_enumerate_and_classes() {
    let v = stdout_json(&dehncol(&[
        "colorings",
        "--knot",
        "trefoil",
        "--p",
        "3",
        "--enumerate",
        "--classes",
    ]));
    assert_eq!(v["colorings"].as_array().unwrap().len(), 27);
    let classes = v["affine_classes"].as_array().unwrap();
    assert_eq!(classes.len(), 3);
    assert_eq!(classes[0]["size"], 6);
    assert_eq!(classes[0]["representative"].as_array().unwrap().len(), 5);
}

#[test]
fn invariant_json_with_bounds() {
    let v = stdout_json(&dehncol(&["invariant", "--knot", "5_2", "--p", "7"]));
    assert_eq!(v["flavor"], "nontrivial");
    assert_eq!(v["phi"]["multiset"], "{3: 98, 5: 98, 6: 98}");
    assert_eq!(v["phi"]["counts"]["3"], "98");
    assert_eq!(v["bounds"]["lower"], 5);
    assert_eq!(v["bounds"]["upper"], 5);
    assert_eq!(v["bounds"]["lower_route"], "plus3-cocycle");
    let witness = v["bounds"]["witness"]["colors"].as_array().unwrap();
    assert_eq!(witness.len(), 7);

    let all = stdout_json(&dehncol(&[
        "invariant",
        "--knot",
        "5_2",
        "--p",
        "7",
        "--flavor",
        "all",
    ]));
    assert_eq!(all["phi"]["multiset"], "{0: 49, 3: 98, 5: 98, 6: 98}");
}

#[test]
fn invariant_csv_is_flat() {
    let out = dehncol(&["invariant", "--knot", "trefoil", "--p", "3", "--csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().collect::<Vec<_>>(), ["value,count", "1,18"]);

    let out = dehncol(&["colorings", "--knot", "trefoil", "--p", "3", "--csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "knot,p,regions,rank,dimension,total,trivial,nontrivial"
    );
    assert_eq!(lines.next().unwrap(), "trefoil,3,5,2,3,27,9,18");
}

#[test]
fn diagram_via_pd_text_gets_a_hash_name() {
    let v = stdout_json(&dehncol(&[
        "colorings",
        "--pd",
        "X(1,4,2,5);X(3,6,4,1);X(5,2,6,3)",
        "--p",
        "3",
    ]));
    let name = v["knot"].as_str().unwrap();
    assert!(name.starts_with("pd-") && name.len() == 11, "{name}");
    assert_eq!(v["total"], "27");
}

#[test]
fn diagram_via_pd_file_and_user_table() {
    let dir = tempfile::tempdir().unwrap();
    let pd_path = dir.path().join("knot.pd");
    std::fs::write(&pd_path, "X(4,2,5,1);X(8,6,1,5);X(6,3,7,4);X(2,7,3,8)\n").unwrap();
    let v = stdout_json(&dehncol(&[
        "colorings",
        "--pd-file",
        pd_path.to_str().unwrap(),
        "--p",
        "5",
    ]));
    assert_eq!(v["nontrivial"], "100");

    let table_path = dir.path().join("table.csv");
    std::fs::write(
        &table_path,
        "name,pd,determinant\nmyknot,\"X(1,4,2,5);X(3,6,4,1);X(5,2,6,3)\",3\n",
    )
    .unwrap();
    let v = stdout_json(&dehncol(&[
        "colorings",
        "--knot",
        "myknot",
        "--table",
        table_path.to_str().unwrap(),
        "--p",
        "3",
    ]));
    assert_eq!(v["knot"], "myknot");
    assert_eq!(v["nontrivial"], "18");
}

#[test]
fn palette_single_set_and_all_candidates() {
    let v = stdout_json(&dehncol(&["palette", "--p", "11", "--set", "0,1,2,3,6"]));
    let analyses = v["analyses"].as_array().unwrap();
    assert_eq!(analyses.len(), 1);
    assert_eq!(analyses[0]["theta_trivial"], true);
    let relations: Vec<&str> = analyses[0]["relations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r.as_str().unwrap())
        .collect();
    assert_eq!(relations, ["t1 = -t2 = t3 = t6", "t4 = t5 = 0"]);

    let v = stdout_json(&dehncol(&["palette", "--p", "17", "--all-candidates"]));
    assert_eq!(v["analyses"].as_array().unwrap().len(), 12);
    assert_eq!(v["all_theta_trivial"], false);
}

#[test]
fn verify_all_suites_for_small_prime() {
    let v = stdout_json(&dehncol(&["verify", "--p", "5", "--knot", "4_1"]));
    let suites = v["suites"].as_array().unwrap();
    assert_eq!(suites.len(), 3);
    assert!(suites.iter().all(|s| s["status"] == "pass"));
}

#[test]
fn store_reruns_are_byte_identical_and_cached() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("results.jsonl");
    let args = ["invariant", "--knot", "5_2", "--p", "7", "--store"];
    let first = dehncol(&[&args[..], &[store.to_str().unwrap()]].concat());
    assert!(first.status.success());
    let second = dehncol(&[&args[..], &[store.to_str().unwrap()]].concat());
    assert!(second.status.success());
    assert_eq!(first.stdout, second.stdout, "reruns must be byte-identical");
    assert!(
        String::from_utf8_lossy(&second.stderr).contains("served from results store"),
        "second run should hit the store"
    );
    assert!(Path::new(&store).exists());
}

#[test]
fn exit_code_contract() {
    // 2: composite modulus
    let out = dehncol(&["palette", "--p", "9", "--all-candidates"]);
    assert_eq!(out.status.code(), Some(2));

    // 2: PD code that is not a single knot component
    let out = dehncol(&["colorings", "--pd", "X(1,2,1,2)", "--p", "3"]);
    assert_eq!(
        out.status.code(),
        Some(2),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    // 2: unknown knot name
    let out = dehncol(&["invariant", "--knot", "nope", "--p", "3"]);
    assert_eq!(out.status.code(), Some(2));

    // 2: clap usage error (missing required diagram)
    let out = dehncol(&["colorings", "--p", "3"]);
    assert_eq!(out.status.code(), Some(2));

    // 3: enumeration budget exceeded
    let out = dehncol(&[
        "colorings",
        "--knot",
        "trefoil",
        "--p",
        "3",
        "--enumerate",
        "--budget",
        "10",
    ]);
    assert_eq!(
        out.status.code(),
        Some(3),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));

    // 0: healthy run
    let out = dehncol(&["verify", "--p", "3", "--suite", "cocycle"]);
    assert_eq!(out.status.code(), Some(0));
}
