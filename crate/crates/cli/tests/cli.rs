use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn maghom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maghom"))
        .args(args)
        .env_remove("MAGHOM_BUDGET")
        .env_remove("MAGHOM_MAX_BASIS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

#[test]
fn magnitude_series_of_g1() {
    let o = maghom(&["magnitude", &path("G1"), "--series", "7"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let line = out.lines().find(|l| l.starts_with("series:")).unwrap();
    assert_eq!(line, "series: 6 -20 60 -182 556 -1702 5214 -15980");
}

#[test]
fn magnitude_json_schema() {
    let o = maghom(&["magnitude", &path("C4"), "--series", "3", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["num"], serde_json::json!(["4"]));
    assert_eq!(v["den"], serde_json::json!(["1", "2", "1"]));
    assert_eq!(v["series"], serde_json::json!(["4", "-8", "12", "-16"]));
}

#[test]
fn g3_table_as_csv() {
    let o = maghom(&["mh-table", &path("G3"), "--lmax", "6", "--csv"]);
    assert!(o.status.success());
    let expected = "\
l\\k,0,1,2,3,4,5,6
0,6,,,,,,
1,,16,,,,,
2,,,30,,,,
3,,,2,50,,,
4,,,,10,82,,
5,,,,,28,138,
6,,,,,2,60,242
";
    assert_eq!(stdout(&o), expected);
}

#[test]
fn g2_has_no_certificate() {
    let o = maghom(&["s-structure", &path("G2"), "--search"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("exhausted: none"));
}

#[test]
fn g1_certificate_verifies_and_drives_morse() {
    let o = maghom(&["s-structure", &path("G1"), "--verify", &path("G1.s")]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.contains("10 triples, 30 quadruples"));
    assert!(out.contains("(3,4,5,1)") && out.contains("(4,3,2,1)"));

    let o = maghom(&[
        "morse",
        &path("G1"),
        "-a",
        "1",
        "-b",
        "1",
        "--ell",
        "4",
        "--s-file",
        &path("G1.s"),
        "--json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["acyclic"], true);
}

#[test]
fn searched_certificate_round_trips_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("g1.s");
    let cert = cert.to_str().unwrap();
    let o = maghom(&["s-structure", &path("G1"), "--search", "--output", cert]);
    assert!(o.status.success());
    let o = maghom(&["s-structure", &path("G1"), "--verify", cert]);
    assert!(o.status.success());
}

#[test]
fn corrupted_certificate_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(fixture("G1.s")).unwrap();
    // drop one quadruple: f2 is then no longer a section
    let mut lines: Vec<&str> = text.lines().collect();
    let q = lines.iter().position(|l| l.starts_with('Q')).unwrap();
    lines.remove(q);
    let bad = dir.path().join("bad.s");
    std::fs::write(&bad, lines.join("\n")).unwrap();
    let o = maghom(&[
        "s-structure",
        &path("G1"),
        "--verify",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn square_has_three_critical_cells() {
    let o = maghom(&[
        "morse",
        &path("C4"),
        "-a",
        "1",
        "-b",
        "1",
        "--ell",
        "4",
        "--json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["acyclic"], true);
    assert_eq!(v["critical"].as_array().map(Vec::len), Some(3));
}

#[test]
fn classify_stream() {
    let o = maghom(&["classify", &path("examples.g6")]);
    assert!(o.status.success());
    let recs: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(recs.len(), 3);
    assert_eq!(recs[0]["pawful"], false);
    assert_eq!(recs[0]["s_structure"], "found");
    assert_eq!(recs[0]["diagonal"], true);
    assert_eq!(recs[1]["s_structure"], "none");
    assert_eq!(recs[1]["diagonal"], true);
    assert_eq!(recs[2]["ahk"], true);
    assert_eq!(recs[2]["diagonal"], false);
}

#[test]
fn output_does_not_depend_on_jobs() {
    let args = |j: &'static str| {
        maghom(&[
            "--jobs",
            j,
            "mh-table",
            &path("G3"),
            "--lmax",
            "5",
            "--json",
        ])
        .stdout
    };
    assert_eq!(args("1"), args("4"));
    let c = |j: &'static str| maghom(&["--jobs", j, "classify", &path("examples.g6")]).stdout;
    assert_eq!(c("1"), c("3"));
}

#[test]
fn exit_codes() {
    // bad input
    assert_eq!(
        maghom(&["magnitude", "/nonexistent/graph"]).status.code(),
        Some(1)
    );
    assert_eq!(
        maghom(&["morse", &path("G1"), "-a", "1", "-b", "9", "--ell", "3"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(maghom(&["morse"]).status.code(), Some(1));
    // G1 is not pawful
    assert_eq!(
        maghom(&["morse", &path("G1"), "-a", "1", "-b", "1", "--ell", "3"])
            .status
            .code(),
        Some(1)
    );
    // budgets
    assert_eq!(
        maghom(&["s-structure", &path("G1"), "--search", "--budget", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        maghom(&["--max-basis", "100", "mh-table", &path("G1"), "--lmax", "6"])
            .status
            .code(),
        Some(2)
    );
    let o = Command::new(env!("CARGO_BIN_EXE_maghom"))
        .args(["s-structure", &path("G1"), "--search"])
        .env("MAGHOM_BUDGET", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn ahk_and_pawful() {
    let o = maghom(&["ahk-check", &path("G3")]);
    assert!(stdout(&o).starts_with("holds"));
    let o = maghom(&["pawful", &path("K4")]);
    assert!(stdout(&o).contains("pawful: yes"));
    let o = maghom(&["pawful", &path("G1")]);
    assert!(stdout(&o).contains("pawful: no"));
}

#[test]
fn ai_complex_matches_homology() {
    let o = maghom(&[
        "ai-complex",
        &path("G1"),
        "-a",
        "1",
        "-b",
        "4",
        "--ell",
        "4",
        "--homology",
        "--json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for row in v["correspondence"].as_array().unwrap() {
        assert_eq!(row["magnitude"], row["complex"], "{row}");
    }
}

#[test]
fn match_lists_pairs() {
    let o = maghom(&[
        "match",
        &path("C4"),
        "-a",
        "1",
        "-b",
        "1",
        "--ell",
        "4",
        "--pawful",
        "--json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(!v["pairs"].as_array().unwrap().is_empty());
}
