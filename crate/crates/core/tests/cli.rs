use std::fs;
use std::process::{Command, Output};

fn dimerlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dimerlab"))
        .args(args)
        .env_remove("DIMERLAB_THREADS")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_graph(dir: &tempfile::TempDir, name: &str, json: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, json).unwrap();
    path.to_str().unwrap().to_string()
}

const K4: &str = r#"{"n":4,"edges":[[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]]}"#;

#[test]
fn tutte_json() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write_graph(&dir, "k4.json", K4);
    let o = dimerlab(&["tutte", "--graph", &k4, "--full"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["n"], 4);
    assert_eq!(v["m"], 6);
    assert_eq!(v["t10"], 6);
    assert_eq!(v["psi"], -6);
    assert_eq!(v["polynomial"], "x^3 + 3x^2 + 2x + 4xy + 2y + 3y^2 + y^3");
    assert_eq!(v["coefficients"][1][1], 4);
}

#[test]
fn ursell_backends() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write_graph(&dir, "k4.json", K4);
    for backend in ["bhkk", "brute", "delcon"] {
        let o = dimerlab(&["ursell", "--graph", &k4, "--backend", backend]);
        assert!(o.status.success());
        assert_eq!(stdout(&o).trim(), "-6", "{backend}");
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let split = write_graph(&dir, "split.json", r#"{"n":3,"edges":[[0,1]]}"#);
    let bad = write_graph(&dir, "bad.json", r#"{"n":2,"edges":[[0,7]]}"#);
    let junk = write_graph(&dir, "junk.json", "not json");
    for path in [&split, &bad, &junk] {
        let o = dimerlab(&["ursell", "--graph", path]);
        assert_eq!(o.status.code(), Some(1), "{path}");
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    }
    assert_eq!(dimerlab(&["ursell"]).status.code(), Some(2));
    assert_eq!(dimerlab(&["nonsense"]).status.code(), Some(2));
    assert_eq!(
        dimerlab(&["series", "--d", "2", "--order", "9", "--grid", "0.5"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn cluster_stream() {
    let o = dimerlab(&["clusters", "--k", "2"]);
    assert!(o.status.success());
    let lines: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 6);
    assert!(lines.iter().all(|l| l["psi"] == -1));
    assert_eq!(lines[0]["dimers"][0], serde_json::json!([0, 0, "H"]));
    let count = dimerlab(&["clusters", "--k", "3", "--count-only"]);
    assert_eq!(stdout(&count).trim(), "22");
    let sym = dimerlab(&[
        "--threads",
        "2",
        "clusters",
        "--k",
        "3",
        "--count-only",
        "--symmetric",
    ]);
    assert!(sym.status.success());
    assert!(stdout(&sym).trim().parse::<usize>().unwrap() < 22);
}

#[test]
fn series_csv_file() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    let o = dimerlab(&[
        "series",
        "--d",
        "2",
        "--order",
        "7",
        "--grid",
        "11",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 12);
    let o = dimerlab(&["series", "--d", "2", "--order", "7", "--grid", "0"]);
    assert_eq!(stdout(&o).lines().nth(1), Some("0,0,0,0"));
}

#[test]
fn strip_csv() {
    let o = dimerlab(&["strip", "--p", "0.2,1", "--widths", "4,6"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<Vec<f64>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    assert_eq!(
        text.lines().next(),
        Some("p,estimate,spread,series_value,delta")
    );
    assert_eq!(rows.len(), 2);
    assert!(rows[0][4].abs() < 1e-4);
    assert!(rows[1][4] > 0.01);
    assert_eq!(
        dimerlab(&["strip", "--p", "1", "--widths", "4", "--boundary", "free"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn bench_and_selfcheck() {
    let o = dimerlab(&["bench", "--samples", "2", "--seed", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().nth(1).unwrap().starts_with("K7,7,21,720,720,"));
    assert_eq!(text.lines().count(), 4);
    let o = dimerlab(&["selfcheck", "--samples", "10"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS ")));
}
