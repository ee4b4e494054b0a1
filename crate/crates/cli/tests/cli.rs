use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn wreath(args: &[&str], threads: Option<u32>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_wreath"));
    cmd.args(args).env_remove("WREATH_THREADS");
    if let Some(n) = threads {
        cmd.env("WREATH_THREADS", n.to_string());
    }
    cmd.output().expect("binary runs")
}

fn run(args: &[&str]) -> (i32, String) {
    let out = wreath(args, None);
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, text) = run(args);
    (code, serde_json::from_str(&text).expect("one JSON object"))
}

#[test]
fn check_lemmas_passes_for_builtins() {
    for g in ["G", "H", "I"] {
        let (code, doc) = json(&["check-lemmas", "--group", g]);
        assert_eq!(code, 0, "{g}");
        assert_eq!(doc["passed"], true);
        assert_eq!(doc["config"]["group"], g);
        assert!(doc["version"].as_str().unwrap().starts_with(env!("CARGO_PKG_VERSION")));
    }
    let (_, doc) = json(&["check-lemmas", "--group", "I"]);
    let table = doc["result"]["reports"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["title"].as_str().unwrap().contains("table"))
        .expect("table report");
    assert_eq!(table["checks"].as_array().unwrap().len(), 17);
}

#[test]
fn group_files() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("grig.txt");
    std::fs::File::create(&good)
        .unwrap()
        .write_all("# G again\nσ = (1, 1) swap\na = (σ, b)\nb = (σ, c)\nc = (1, a)\n".as_bytes())
        .unwrap();
    let sel = format!("file:{}", good.display());
    assert_eq!(run(&["check-lemmas", "--group", &sel]).0, 0);
    let (code, csv) = run(&["growth", "--group", &sel, "--max-radius", "3"]);
    assert_eq!(code, 0);
    // Every letter weighs 1 in a file group.
    assert!(csv.lines().nth(2).unwrap().starts_with("1,5,"));

    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "a = (σ, b\n").unwrap();
    let sel = format!("file:{}", bad.display());
    assert_eq!(run(&["check-lemmas", "--group", &sel]).0, 2);
    assert_eq!(run(&["check-lemmas", "--group", "file:/does/not/exist"]).0, 2);
}

#[test]
fn growth_csv() {
    let (code, csv) = run(&["growth", "--group", "G", "--max-radius", "40"]);
    assert_eq!(code, 0);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("r,gamma,rate_estimate"));
    assert_eq!(lines.next(), Some("0,1,1.00000000000"));
    let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    assert_eq!(rows.len(), 40);
    assert_eq!(rows[2][1], "3");
    for row in &rows {
        let digits = row[2].chars().filter(char::is_ascii_digit).count();
        assert_eq!(digits, 12, "{row:?}");
    }

    let (_, csv) = run(&["growth", "--group", "H", "--max-radius", "40", "--step", "5"]);
    let gammas: Vec<u64> = csv.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(gammas.len(), 9);
    assert!(gammas.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn ball_csv() {
    let (code, csv) = run(&["ball", "--group", "G", "--radius", "3"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "portrait-key-hex,min_length,one-geodesic-word");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].ends_with(",0,1"));
    assert!(lines[2].ends_with(",3,σ"));
    assert!(lines[3].ends_with(",3,c"));
    let (code, doc) = json(&["ball", "--group", "G", "--radius", "12", "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["gamma"], 23);
}

#[test]
fn file_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ball.csv");
    let p = path.to_str().unwrap();
    let (code, stdout) = run(&["ball", "--group", "I", "--radius", "20", "--out", p]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("portrait-key-hex,"));
}

#[test]
fn reduction_and_basic_tool() {
    let (code, doc) = json(&["verify", "reduction", "--group", "G", "--radius", "40"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["summary"]["violations"].as_array().unwrap().len(), 0);
    assert_eq!(doc["config"]["eta"], "7/8");

    let args = ["verify", "basictool", "--group", "G", "--depth", "1", "--eta", "7/8", "--p", "1", "--shift", "3", "--radius", "40"];
    let (code, doc) = json(&args);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["validates"], true);

    let (code, doc) = json(&["verify", "basictool", "--group", "I", "--depth", "3", "--radius", "30"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["eta_measured"], true);
    assert!(doc["result"]["proportion_observed"].is_string());

    // A too-small η is a verification failure, not a usage error.
    let (code, _) = json(&["verify", "basictool", "--group", "G", "--depth", "1", "--eta", "1/2", "--p", "1", "--radius", "30"]);
    assert_eq!(code, 1);
    let (code, _) = json(&["verify", "reduction", "--group", "G", "--radius", "30", "--eta", "1/2", "--shift", "0"]);
    assert_eq!(code, 1);
}

#[test]
fn patterns_and_census() {
    let (code, doc) = json(&["patterns", "verify", "--group", "I"]);
    assert_eq!(code, 0);
    let listed = doc["result"]["pair_coverage"]["listed"].as_array().unwrap();
    assert_eq!(listed.len(), 16);
    assert_eq!(listed.iter().filter(|p| p["covered"] == true).count(), 11);
    assert_eq!(run(&["verify", "patterns", "--group", "I"]).0, 0);
    assert_eq!(run(&["verify", "patterns", "--group", "H"]).0, 2);

    let (code, doc) = json(&["badstrings", "--max-k", "40"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["interior_pairs"].as_array().unwrap().len(), 4);
    assert_eq!(doc["result"]["counts"][0], serde_json::json!([1, 16]));
    let (code, _) = json(&["badstrings", "--max-k", "40", "--catalog", "listed"]);
    assert_eq!(code, 1);
}

#[test]
fn bad_counts() {
    let (code, doc) = json(&["badcount", "--group", "H", "--radius", "30", "--epsilon", "1/10"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["count"]["within_bound"], true);
    assert_eq!(doc["config"]["epsilon"], "1/10");
    let (code, doc) = json(&["badcount", "--group", "I", "--radius", "40", "--epsilon", "1/4"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["count"]["stabilizer_level"], 3);
    for eps in ["0", "1", "3/2", "0.1", "1/0"] {
        assert_eq!(run(&["badcount", "--group", "H", "--radius", "10", "--epsilon", eps]).0, 2, "{eps}");
    }
    assert_eq!(run(&["badcount", "--group", "G", "--radius", "10", "--epsilon", "1/2"]).0, 2);
}

#[test]
fn usage_and_budget_exit_codes() {
    assert_eq!(run(&["growth", "--group", "K", "--max-radius", "3"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["ball", "--group", "G"]).0, 2);
    assert_eq!(run(&["ball", "--group", "G", "--radius", "5", "--max-elements", "0"]).0, 2);
    assert_eq!(run(&["ball", "--group", "I", "--radius", "200", "--max-elements", "500"]).0, 3);
    assert_eq!(run(&["--version"]).0, 0);
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let cases: [&[&str]; 4] = [
        &["ball", "--group", "I", "--radius", "44"],
        &["growth", "--group", "H", "--max-radius", "44"],
        &["badcount", "--group", "I", "--radius", "44", "--epsilon", "1/4"],
        &["badstrings", "--max-k", "24"],
    ];
    for args in cases {
        let one = wreath(args, Some(1));
        let many = wreath(args, Some(7));
        assert_eq!(one.status.code(), Some(0));
        assert!(one.stdout == many.stdout, "{args:?}");
    }
}
