use std::path::PathBuf;
use std::process::{Command, Output};

fn z2s(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_z2s"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("z2s-cli-{}-{name}", std::process::id()))
}

#[test]
fn construct_worked_beta_matrix() {
    let out = z2s(&[
        "construct",
        "--family",
        "simplex-beta",
        "--s",
        "2",
        "--k",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "s=2 rows=2 cols=6\n1 1 1 1 0 2\n0 1 2 3 1 1\n"
    );
}

#[test]
fn construct_large_beta_header() {
    let out = z2s(&[
        "construct",
        "--family",
        "simplex-beta",
        "--s",
        "2",
        "--k",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("s=2 rows=3 cols=28\n"));
}

#[test]
fn construct_hadamard_by_type() {
    let out = z2s(&[
        "construct",
        "--family",
        "hadamard",
        "--s",
        "2",
        "--type",
        "3,0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "s=2 rows=3 cols=16");
    assert_eq!(lines[3], "1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1");
}

#[test]
fn beta_macdonald_with_u_one_is_rejected() {
    let out = z2s(&[
        "construct",
        "--family",
        "macdonald-beta",
        "--s",
        "2",
        "--k",
        "3",
        "--u",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("u=1 unsupported for type β"));
}

#[test]
fn gray_listing_format() {
    let out = z2s(&["gray", "--family", "simplex-alpha", "--s", "2", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "len=8 count=4\n00000000\n00011110\n00110011\n00101101\n"
    );
}

#[test]
fn invariants_json_key_order() {
    let out = z2s(&[
        "--json",
        "invariants",
        "--family",
        "simplex-alpha",
        "--s",
        "2",
        "--k",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let keys = [
        "family",
        "s",
        "k",
        "u",
        "n",
        "binary_length",
        "size",
        "type",
        "ker",
        "rank",
        "min_dist",
        "weights",
        "linear",
    ];
    let positions: Vec<usize> = keys
        .iter()
        .map(|k| {
            text.find(&format!("\"{k}\":"))
                .unwrap_or_else(|| panic!("missing key {k}"))
        })
        .collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "{text}");
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["linear"], true);
    assert_eq!(v["ker"], 2);
    assert_eq!(v["type"], "(4;1,0)");
}

#[test]
fn invariants_simplex_values() {
    let get = |args: &[&str]| -> serde_json::Value {
        let mut all = vec!["--json", "invariants"];
        all.extend_from_slice(args);
        let out = z2s(&all);
        assert_eq!(out.status.code(), Some(0));
        serde_json::from_str(&stdout(&out)).unwrap()
    };
    let a = get(&["--family", "simplex-alpha", "--s", "2", "--k", "4"]);
    assert_eq!((a["ker"].as_u64(), a["rank"].as_u64()), (Some(4), Some(14)));
    let b = get(&["--family", "simplex-beta", "--s", "3", "--k", "2"]);
    assert_eq!((b["ker"].as_u64(), b["rank"].as_u64()), (Some(2), Some(11)));
    assert_eq!(b["linear"], false);
}

#[test]
fn budget_exhaustion_exits_three() {
    let out = z2s(&[
        "--budget",
        "10",
        "invariants",
        "--family",
        "simplex-alpha",
        "--s",
        "2",
        "--k",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("budget exceeded"));
}

#[test]
fn invalid_parameters_exit_two() {
    let out = z2s(&[
        "construct",
        "--family",
        "simplex-beta",
        "--s",
        "2",
        "--k",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table_reports_mismatches() {
    let out = z2s(&["table1", "--skip-extended"]);
    assert_eq!(out.status.code(), Some(4));
    let text = stdout(&out);
    assert!(
        text.contains("Z4   S^alpha_k        k=4  published (4,14)    computed (4,14)    MATCH")
    );
    assert!(text.contains("SKIPPED-BY-PAPER"));
    assert!(text.contains("MISMATCH"));
}

#[test]
fn table_json_cells() {
    let out = z2s(&["--json", "table1", "--s", "2", "--k-max", "2"]);
    let cells: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(cells.as_array().unwrap().len(), 6);
}

#[test]
fn gray_suite_passes() {
    let out = z2s(&["verify", "--suite", "gray"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out)
        .lines()
        .all(|l| l.starts_with("PASS") || l.starts_with("summary:")));
    assert!(stdout(&out).contains("0 fail"));
}

#[test]
fn matrix_file_round_trip() {
    let path = temp_path("matrix.txt");
    let p = path.to_str().unwrap();
    let out = z2s(&[
        "--out",
        p,
        "construct",
        "--family",
        "simplex-beta",
        "--s",
        "3",
        "--k",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = z2s(&["--json", "invariants", "--matrix", p]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        (v["ker"].as_u64(), v["rank"].as_u64(), v["n"].as_u64()),
        (Some(2), Some(11), Some(12))
    );
    std::fs::remove_file(&path).ok();
}

#[test]
fn output_independent_of_threads() {
    let args = |t: &'static str| {
        vec![
            "--threads",
            t,
            "gray",
            "--family",
            "simplex-beta",
            "--s",
            "3",
            "--k",
            "2",
        ]
    };
    let one = z2s(&args("1"));
    let four = z2s(&args("4"));
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}
