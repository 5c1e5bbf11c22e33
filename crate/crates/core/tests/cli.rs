use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bifix-iet")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn measure_prints_canonical_text() {
    let v = json(&["measure", "--iet", &data("golden.json"), "--word", "bab"]);
    assert_eq!(v["result"]["measure"], "7/2-3/2*sqrt(5)");
    assert_eq!(v["command"], "measure");
    assert_eq!(v["parameters"]["word"], "bab");
    assert_eq!(v["input_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn connection_is_a_result_not_an_error() {
    let v = json(&["regular", "--iet", &data("three.json"), "--depth", "1"]);
    assert_eq!(v["result"]["status"], "ConnectionFound");
    assert_eq!(v["result"]["witness"], serde_json::json!({"i": 1, "j": 2, "k": 1}));
    let v = json(&["regular", "--iet", &data("golden.json")]);
    assert_eq!(v["result"]["status"], "RegularUpToDepth");
    assert_eq!(v["parameters"]["depth"], 64);
}

#[test]
fn enumerates_three_degree_two_codes() {
    let out = run(&[
        "--format",
        "text",
        "bifix",
        "enum",
        "--iet",
        &data("golden.json"),
        "--degree",
        "2",
        "--max-word-len",
        "4",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines, ["a baab bab", "aa ab ba", "aa aba b"]);
}

#[test]
fn decode_writes_the_decoded_exchange() {
    let path = scratch("tf.json");
    let v = json(&[
        "decode",
        "--iet",
        &data("golden.json"),
        "--code",
        "aa,ab,ba",
        "--out-len",
        "3",
        "--iet-out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(v["result"]["iet"]["order2"], serde_json::json!(["v", "w", "u"]));
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written, v["result"]["iet"]);
    // the written file is itself a valid input
    let r = json(&["regular", "--iet", path.to_str().unwrap()]);
    assert_eq!(r["result"]["status"], "RegularUpToDepth");
}

#[test]
fn language_round_trips_through_tree() {
    let lang = scratch("fib.lang");
    let out = run(&["lang", "--iet", &data("golden.json"), "--max-len", "8", "--out", lang.to_str().unwrap()]);
    assert!(out.status.success());
    let v = json(&["tree", "--lang", lang.to_str().unwrap(), "--planar", "ba,ab", "--max-len", "6"]);
    assert_eq!(v["result"]["verdict"], "PlanarTreeSet");
    assert_eq!(v["result"]["max_len_checked"], 6);

    let trib = scratch("trib.lang");
    assert!(run(&[
        "lang",
        "--subst",
        "a:ab;b:ac;c:a",
        "--seed",
        "a",
        "--max-len",
        "9",
        "--out",
        trib.to_str().unwrap()
    ])
    .status
    .success());
    let v = json(&["tree", "--lang", trib.to_str().unwrap(), "--max-len", "7"]);
    assert_eq!(v["result"]["verdict"], "TreeSet");
    // a failed planarity check still exits 0
    let v = json(&["tree", "--lang", trib.to_str().unwrap(), "--planar", "abc,abc", "--max-len", "7"]);
    assert_eq!(v["result"]["verdict"], "Fails");
}

#[test]
fn skew_return_words() {
    let v = json(&[
        "skew",
        "--iet",
        &data("golden.json"),
        "--perm",
        "a:(2 3);b:(1 2)",
        "--return-words",
        "--max-word-len",
        "11",
    ]);
    let text = v.to_string();
    for w in ["\"a\"", "\"baab\"", "\"babaabab\"", "\"babaabaabab\""] {
        assert!(text.contains(w), "{w} missing from {text}");
    }
}

#[test]
fn power_and_rauzy_write_files() {
    let p = scratch("r2.json");
    assert!(run(&["power", "--iet", &data("golden.json"), "--n", "2", "--out", p.to_str().unwrap()]).status.success());
    assert!(std::fs::read_to_string(&p).unwrap().contains("\"field_d\": 5"));
    let svg = scratch("r.svg");
    assert!(run(&["rauzy", "--points", "500", "--out", svg.to_str().unwrap()]).status.success());
    let s = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(s.matches("<circle").count(), 500);
}

#[test]
fn output_is_deterministic() {
    let args = ["bifix", "enum", "--iet", &data("golden.json"), "--degree", "3", "--max-word-len", "8"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["measure", "--iet", &data("golden.json")]).status.code(), Some(2));
    assert_eq!(run(&["regular", "--iet", &data("golden.json"), "--depth", "x"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));

    let out = run(&["measure", "--iet", "/definitely/missing.json", "--word", "a"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    assert_eq!(run(&["measure", "--iet", &data("golden.json"), "--word", "abc"]).status.code(), Some(1));
    assert_eq!(run(&["bifix", "analyze", "--iet", &data("golden.json"), "--code", "a,ab"]).status.code(), Some(1));
}
