use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use quadcut::cli::doc::FigureDocument;
use tempfile::TempDir;

fn quadcut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadcut"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_quad(dir: &Path, name: &str, json: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, json).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn ratio_prints_exact_fractions() {
    let o = quadcut(&["ratio", "--canonical", "1,1", "--k", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1/5\n");
    let o = quadcut(&["ratio", "--canonical", "1,0", "--k", "1"]);
    assert_eq!(stdout(&o), "1/6\n");
    let o = quadcut(&["ratio", "--canonical", "1,1", "--k", "2"]);
    assert_eq!(stdout(&o), "1/13\n");
}

#[test]
fn verify_identities_passes() {
    let o = quadcut(&["verify-identities"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(
        out.lines().filter(|l| l.starts_with("PASS ")).count(),
        4,
        "{out}"
    );
    assert!(!out.contains("FAIL"));
}

#[test]
fn bad_input_exits_2() {
    let dir = TempDir::new().unwrap();
    let crossed = write_quad(
        dir.path(),
        "crossed.json",
        r#"{"vertices": [[0,0],[2,2],[2,0],[0,2]]}"#,
    );
    let garbage = write_quad(dir.path(), "garbage.json", "{\"vertices\": [[0,0]]}");
    for args in [
        vec!["construct", "--input", crossed.as_str(), "--k", "1"],
        vec!["construct", "--input", garbage.as_str(), "--k", "1"],
        vec!["construct", "--input", "/nonexistent/quad.json", "--k", "1"],
        vec!["ratio", "--canonical", "0,1/2", "--k", "1"],
        vec!["ratio", "--canonical", "1,1", "--k", "-3/2"],
        vec!["scan-k", "--ks", "1:2"],
        vec!["verify-bounds"],
    ] {
        let o = quadcut(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn construct_round_trips() {
    let dir = TempDir::new().unwrap();
    let input = write_quad(
        dir.path(),
        "quad.json",
        r#"{"vertices": [[0,0],[0,1],["2",1],[1,"0"]]}"#,
    );
    let figure = dir.path().join("figure.json");
    let o = quadcut(&[
        "construct",
        "--input",
        &input,
        "--k",
        "1",
        "--output",
        figure.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let first: FigureDocument =
        serde_json::from_str(&fs::read_to_string(&figure).unwrap()).unwrap();
    assert_eq!(first.ratio, quadcut::rational::rat(151, 756));

    // the written document is itself a valid input
    let again = quadcut(&["construct", "--input", figure.to_str().unwrap(), "--k", "1"]);
    assert!(again.status.success());
    let second: FigureDocument = serde_json::from_str(&stdout(&again)).unwrap();
    assert_eq!(first, second);
}

#[test]
fn construct_negative_k() {
    let dir = TempDir::new().unwrap();
    let input = write_quad(
        dir.path(),
        "square.json",
        r#"{"vertices": [[0,0],[0,1],[1,1],[1,0]]}"#,
    );
    let o = quadcut(&["construct", "--input", &input, "--k", "-1/2"]);
    assert!(o.status.success());
    let doc: FigureDocument = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc.ratio, quadcut::rational::int(2));
    assert!(doc.bounds.is_none());
}

#[test]
fn svg_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let input = write_quad(
        dir.path(),
        "quad.json",
        r#"{"vertices": [[1,1],[2,5],[6,4],[5,0]]}"#,
    );
    let render = |name: &str| {
        let path = dir.path().join(name);
        let o = quadcut(&[
            "construct",
            "--input",
            &input,
            "--k",
            "3/2",
            "--svg",
            path.to_str().unwrap(),
        ]);
        assert!(o.status.success());
        fs::read_to_string(path).unwrap()
    };
    let a = render("a.svg");
    assert_eq!(a, render("b.svg"));
    assert!(a.starts_with("<svg"));
}

#[test]
fn scan_writes_csv() {
    let dir = TempDir::new().unwrap();
    let csv_path = dir.path().join("scan.csv");
    let o = quadcut(&[
        "scan-k",
        "--ks",
        "-1/2,1,2",
        "--grid-step",
        "1/4",
        "--random",
        "20",
        "--csv",
        csv_path.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(csv_path).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("k,lower,upper,empirical_min,empirical_max,samples,equality_hits")
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 3);
    assert!(rows[0].starts_with("-1/2,,,"));
    assert!(rows[1].starts_with("1/1,1/6,1/5,1/6,1/5,"));
    assert!(rows[2].starts_with("2/1,1/21,1/13,1/21,1/13,"));
}

#[test]
fn verify_bounds_writes_report() {
    let dir = TempDir::new().unwrap();
    let json = dir.path().join("bounds.json");
    let o = quadcut(&[
        "verify-bounds",
        "--k",
        "1/2",
        "--grid-step",
        "1/5",
        "--random",
        "50",
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("PASS\n"));
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(json).unwrap()).unwrap();
    assert_eq!(report["lower"], "8/21");
    assert_eq!(report["upper"], "2/5");
    assert_eq!(report["violations"].as_array().unwrap().len(), 0);
}
