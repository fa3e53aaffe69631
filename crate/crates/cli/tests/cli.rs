//! Binary-level behavior: exit codes, JSON round-tripping, env overrides.

use std::process::{Command, Output};

use lexspectra::json::DescriptorJson;

fn lexspectra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lexspectra"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn successful_runs_exit_zero() {
    for args in [
        vec!["spectrum", "--h", "petersen", "--k", "2"],
        vec!["laplacian", "--h", "star:4", "--k", "2"],
        vec!["invariants", "--h", "petersen", "--k", "2"],
        vec!["verify", "--h", "cycle:4", "--g", "complete:2", "--k", "2"],
        vec![
            "hjoin",
            "--h",
            "complete:2",
            "--part",
            "complete:1",
            "--part",
            "complete:2",
        ],
    ] {
        let out = lexspectra(&args);
        assert_eq!(exit_code(&out), 0, "{args:?}: {}", stdout(&out));
    }
}

#[test]
fn verify_prints_pass_lines() {
    let out = lexspectra(&["verify", "--h", "cycle:4", "--g", "complete:2", "--k", "2"]);
    let text = stdout(&out);
    assert!(text.contains("adjacency: PASS"), "{text}");
    assert!(text.contains("laplacian: PASS"), "{text}");
    // irregular base: adjacency path is skipped with the hypothesis named
    let out = lexspectra(&["verify", "--h", "star:4", "--k", "2"]);
    let text = stdout(&out);
    assert_eq!(exit_code(&out), 0);
    assert!(text.contains("adjacency: skipped"), "{text}");
    assert!(text.contains("requires H regular"), "{text}");
    assert!(text.contains("laplacian: PASS"), "{text}");
}

#[test]
fn usage_errors_exit_two() {
    // unknown flag (clap)
    let out = lexspectra(&["spectrum", "--nonsense"]);
    assert_eq!(exit_code(&out), 2);
    // malformed graph spec
    let out = lexspectra(&["spectrum", "--h", "blorp:3"]);
    assert_eq!(exit_code(&out), 2);
    // loop in an inline edge list, naming the offending entry
    let out = lexspectra(&["spectrum", "--h", r#"{"order":2,"edges":[[1,1]]}"#]);
    assert_eq!(exit_code(&out), 2);
    assert!(stdout(&out).contains("edge 0"), "{}", stdout(&out));
    // exact registry miss
    let out = lexspectra(&["spectrum", "--h", "cycle:5", "--k", "2", "--exact"]);
    assert_eq!(exit_code(&out), 2);
    // oracle cap exceeded
    let out = lexspectra(&[
        "verify",
        "--h",
        "petersen",
        "--k",
        "2",
        "--oracle-cap",
        "50",
    ]);
    assert_eq!(exit_code(&out), 2);
    assert!(stdout(&out).contains("size error"), "{}", stdout(&out));
    // wrong part count for a join
    let out = lexspectra(&["hjoin", "--h", "complete:3", "--part", "complete:2"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn hypothesis_errors_exit_three() {
    // irregular base graph on the adjacency closed form
    let out = lexspectra(&["spectrum", "--h", "path:3", "--k", "2"]);
    assert_eq!(exit_code(&out), 3);
    assert!(
        stdout(&out).contains("requires H regular"),
        "{}",
        stdout(&out)
    );
    // disconnected base graph
    let out = lexspectra(&[
        "spectrum",
        "--h",
        r#"{"order":4,"edges":[[0,1],[2,3]]}"#,
        "--k",
        "2",
    ]);
    assert_eq!(exit_code(&out), 3);
    assert!(
        stdout(&out).contains("requires H connected"),
        "{}",
        stdout(&out)
    );
    // join with an explicitly requested adjacency kind and irregular part
    let out = lexspectra(&[
        "hjoin",
        "--h",
        "complete:2",
        "--part",
        "path:3",
        "--part",
        "complete:1",
        "--kind",
        "adjacency",
    ]);
    assert_eq!(exit_code(&out), 3);
}

#[test]
fn env_var_overrides_oracle_cap() {
    let out = Command::new(env!("CARGO_BIN_EXE_lexspectra"))
        .args(["verify", "--h", "petersen", "--k", "2"])
        .env("LEXSPECTRA_ORACLE_CAP", "50")
        .output()
        .expect("binary runs");
    assert_eq!(exit_code(&out), 2);
    assert!(stdout(&out).contains("size error"));
    // the explicit flag wins over the environment
    let out = Command::new(env!("CARGO_BIN_EXE_lexspectra"))
        .args([
            "verify",
            "--h",
            "cycle:4",
            "--k",
            "2",
            "--oracle-cap",
            "100",
        ])
        .env("LEXSPECTRA_ORACLE_CAP", "5")
        .output()
        .expect("binary runs");
    assert_eq!(exit_code(&out), 0, "{}", stdout(&out));
}

#[test]
fn json_output_round_trips_byte_identically() {
    for args in [
        vec![
            "spectrum", "--h", "petersen", "--k", "3", "--format", "json",
        ],
        vec![
            "laplacian",
            "--h",
            "star:4",
            "--g",
            "complete:2",
            "--k",
            "2",
            "--format",
            "json",
        ],
        vec![
            "spectrum",
            "--h",
            "cycle:5",
            "--g",
            "complete:2",
            "--k",
            "2",
            "--format",
            "json",
        ],
    ] {
        let out = lexspectra(&args);
        assert_eq!(exit_code(&out), 0);
        let text = stdout(&out);
        let parsed: DescriptorJson = serde_json::from_str(&text).expect("parses");
        let reserialized = serde_json::to_string_pretty(&parsed).unwrap();
        assert_eq!(text.trim_end(), reserialized, "{args:?}");
    }
}

#[test]
fn summarized_layers_are_marked() {
    let out = lexspectra(&[
        "laplacian",
        "--h",
        "star:4",
        "--k",
        "3",
        "--expansion-cap",
        "2",
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("summarized layers"), "{text}");
    // and in JSON form
    let out = lexspectra(&[
        "laplacian",
        "--h",
        "star:4",
        "--k",
        "3",
        "--expansion-cap",
        "2",
        "--format",
        "json",
    ]);
    let text = stdout(&out);
    let parsed: DescriptorJson = serde_json::from_str(&text).unwrap();
    assert!(!parsed.summarized_layers.is_empty());
    // summarized documents round-trip byte-identically too
    assert_eq!(
        text.trim_end(),
        serde_json::to_string_pretty(&parsed).unwrap()
    );
}

#[test]
fn graph_file_input_is_accepted() {
    let dir = std::env::temp_dir();
    let path = dir.join("lexspectra_test_square.json");
    std::fs::write(&path, r#"{"order":4,"edges":[[0,1],[1,2],[2,3],[3,0]]}"#).unwrap();
    let arg = format!("@{}", path.display());
    let out = lexspectra(&["spectrum", "--h", &arg, "--k", "2"]);
    assert_eq!(exit_code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("order: 16"), "{}", stdout(&out));
    let _ = std::fs::remove_file(&path);
}

#[test]
fn help_exits_zero() {
    let out = lexspectra(&["--help"]);
    assert_eq!(exit_code(&out), 0);
}

#[test]
fn spectrum_table_shows_the_power_rows() {
    let out = lexspectra(&["spectrum", "--h", "petersen", "--k", "2"]);
    let text = stdout(&out);
    for needle in ["order: 100", "regularity: 33", "33", "13", "-17", "perron"] {
        assert!(text.contains(needle), "missing {needle:?} in:\n{text}");
    }
    // a small brute-force cap turns NP-hard invariants into size errors
    let out = lexspectra(&[
        "invariants",
        "--h",
        "petersen",
        "--k",
        "2",
        "--oracle-cap",
        "4",
    ]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn verify_handles_zero_power_and_inner_factor() {
    // zeroth power: the product is the inner factor itself
    let out = lexspectra(&["verify", "--h", "petersen", "--g", "cycle:5", "--k", "0"]);
    let text = stdout(&out);
    assert_eq!(exit_code(&out), 0, "{text}");
    assert!(text.contains("adjacency: PASS"), "{text}");
    assert!(text.contains("laplacian: PASS"), "{text}");
    // irregular inner factor: adjacency skipped, laplacian checked
    let out = lexspectra(&["verify", "--h", "cycle:4", "--g", "star:3", "--k", "2"]);
    let text = stdout(&out);
    assert_eq!(exit_code(&out), 0, "{text}");
    assert!(text.contains("adjacency: skipped"), "{text}");
    assert!(text.contains("requires G regular"), "{text}");
    assert!(text.contains("laplacian: PASS"), "{text}");
}

#[test]
fn laplacian_with_inner_factor_reports_both_layers() {
    let out = lexspectra(&[
        "laplacian",
        "--h",
        "star:3",
        "--g",
        "complete:2",
        "--k",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(exit_code(&out), 0);
    let doc: DescriptorJson = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc.kind, "laplacian");
    assert_eq!(doc.order, "18");
    assert!(doc.entries.iter().any(|e| e.layer == "g-shift"));
    assert!(doc.entries.iter().any(|e| e.layer == "h-top"));
    // mass identity over the document
    let total: u64 = doc
        .entries
        .iter()
        .map(|e| e.multiplicity.parse::<u64>().unwrap())
        .sum();
    assert_eq!(total, 18);
}

#[test]
fn invariants_json_parses_back() {
    let out = lexspectra(&[
        "invariants",
        "--h",
        "cycle:4",
        "--k",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(exit_code(&out), 0);
    let doc: lexspectra::json::InvariantsJson = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc.order, "16");
    assert_eq!(doc.min_degree, "10");
    assert_eq!(doc.vertex_connectivity, "8");
    assert_eq!(doc.connectivity_lower_bound.as_deref(), Some("8"));
    assert_eq!(doc.connectivity_upper_bound.as_deref(), Some("10"));
    assert_eq!(doc.hoffman_ceiling.as_deref(), Some("3"));
    assert_eq!(doc.diameter, "2");
}
