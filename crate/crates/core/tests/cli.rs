use std::path::Path;
use std::process::{Command, Output};

fn jointrange(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jointrange"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn demo_files_reproduce_builtin_reports() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["ex3.1", "ex3.2", "ex5.2"] {
        let file = format!("{name}.json");
        assert!(jointrange(&["demo", name, "--out", &file], dir.path()).status.success());
        for cmd in [
            vec!["support", "--dirs", "90", "--seed", "5"],
            vec!["decide", "--mode", "polyhedral"],
            vec!["decide", "--mode", "commute"],
        ] {
            let mut from_file = cmd.clone();
            from_file.insert(1, &file);
            let mut builtin = cmd.clone();
            builtin.extend(["--demo", name]);
            let a = jointrange(&from_file, dir.path());
            let b = jointrange(&builtin, dir.path());
            assert_eq!(a.status.code(), b.status.code(), "{name} {cmd:?}");
            assert_eq!(a.stdout, b.stdout, "{name} {cmd:?}");
        }
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(jointrange(&["decide", "--demo", "ex3.2", "--mode", "commute", "--k", "3"], d).status.code(), Some(0));
    assert_eq!(jointrange(&["support", "--demo", "ex3.2", "--dirs", "0"], d).status.code(), Some(1));
    assert_eq!(jointrange(&["decide", "--demo", "ex3.1"], d).status.code(), Some(1));
    assert_eq!(jointrange(&["--version"], d).status.code(), Some(0));

    let distinct = r#"{"n": 3, "matrices": [
        {"name": "X", "re": [[1, 1, 0], [1, 0, 0], [0, 0, -1]]},
        {"name": "Y", "re": [[0, 0, 0], [0, 1, 1], [0, 1, 0]]}],
        "weight": {"c": [3, 2, 1]}}"#;
    std::fs::write(d.join("distinct.json"), distinct).unwrap();
    let o = jointrange(&["decide", "distinct.json", "--mode", "conical"], d);
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let verdict = report["report"]["verdict"].as_str().unwrap().to_string();
    let expected = if verdict == "inconclusive" { 2 } else { 0 };
    assert_eq!(o.status.code(), Some(expected), "{verdict}");
    assert_ne!(verdict, "commuting_normal");
}

#[test]
fn support_reports_unit_values_on_the_square() {
    let o = jointrange(&["support", "--demo", "ex3.2", "--dirs", "4"], Path::new("."));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["tool"], "jointrange");
    assert_eq!(v["seed"], 0);
    let probes = v["probes"].as_array().unwrap();
    assert_eq!(probes.len(), 4);
    for p in probes {
        assert!((p["value"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn boundary_csv_layout() {
    let o = jointrange(&["boundary", "--demo", "ex3.1", "--dirs", "360"], Path::new("."));
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "theta,vx,vy,h,px,py");
    let split = lines.iter().position(|l| *l == "# hull vertices").unwrap();
    assert_eq!(split, 361);
    assert_eq!(lines[split + 1], "x,y");
    let hull: Vec<&str> = lines[split + 2..].iter().copied().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(hull.len(), 3);
}

#[test]
fn readable_errors() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(
        d.join("ragged.json"),
        r#"{"n": 2, "matrices": [{"name": "X", "re": [[1, 0], [0]]}], "weight": {"k": 1}}"#,
    )
    .unwrap();
    let o = jointrange(&["support", "ragged.json"], d);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("matrix 'X': re row 2 has 1 entries, expected 2"), "{}", stderr(&o));

    std::fs::write(
        d.join("skew.json"),
        r#"{"n": 2, "hermitian": true, "matrices": [{"name": "N", "re": [[0, 1], [0, 0]]}], "weight": {"k": 1}}"#,
    )
    .unwrap();
    let o = jointrange(&["support", "skew.json"], d);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("matrix 'N' is not Hermitian"), "{}", stderr(&o));

    let o = jointrange(&["boundary", "--demo", "ex5.2"], d);
    assert!(stderr(&o).contains("expected 2 real coordinates, found 3"));
}

#[test]
fn pinch_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    // projection onto span{e1 + e3, e2 + e4}
    let p = r#"{"n": 4, "blocks": [2, 2], "matrices": [{"name": "P", "re": [
        [0.5, 0, 0.5, 0], [0, 0.5, 0, 0.5], [0.5, 0, 0.5, 0], [0, 0.5, 0, 0.5]]}]}"#;
    std::fs::write(d.join("p.json"), p).unwrap();
    let o = jointrange(&["pinch", "p.json"], d);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rank"], 2);
    assert_eq!(v["weight_sum"], 1.0);
    assert!(v["reconstruction_residual"].as_f64().unwrap() < 1e-12);

    let o = jointrange(&["pinch", "p.json", "--blocks", "1,2"], d);
    assert_eq!(o.status.code(), Some(1));
}
