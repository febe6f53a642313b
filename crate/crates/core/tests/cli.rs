use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_solid-torus"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn gen(dir: &Path, i: usize) -> std::path::PathBuf {
    let f = dir.join(format!("t{i}.tri"));
    let o = run(&["gen", "--family", &i.to_string(), "--out", path(&f)]);
    assert_eq!(code(&o), 0);
    f
}

#[test]
fn arithmetic_bound_exits_zero() {
    let o = run(&["verify", "61-2", "--i", "20"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("pass"));
}

#[test]
fn broken_file_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("broken.tri");
    std::fs::write(&f, "tets 1\n0: 0:3012 - -\n").unwrap();
    let o = run(&["validate", "--in", path(&f)]);
    assert_eq!(code(&o), 2);
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn missing_file_and_bad_flags_exit_two() {
    assert_eq!(code(&run(&["validate", "--in", "/nonexistent/x.tri"])), 2);
    assert_eq!(code(&run(&["meridian", "--in"])), 2);
    assert_eq!(code(&run(&["verify", "61-2", "--i", "3", "--window", "-1"])), 2);
}

#[test]
fn small_budget_is_inconclusive() {
    let dir = tempfile::tempdir().unwrap();
    let t3 = gen(dir.path(), 3);
    let o = run(&["meridian", "--in", path(&t3), "--max-pieces", "4"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn generated_file_validates_and_has_meridian_kernel() {
    let dir = tempfile::tempdir().unwrap();
    let t2 = gen(dir.path(), 2);
    assert_eq!(code(&run(&["validate", "--in", path(&t2)])), 0);
    let o = run(&["--json", "homology", "--in", path(&t2)]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["results"][0]["detail"]["boundary_map_kernel_slope"], serde_json::json!([0, 1]));
    assert_eq!(v["results"][0]["detail"]["h1_rank"], 1);
}

#[test]
fn labels_are_comments() {
    let o = run(&["gen", "--family", "1", "--labels"]);
    let text = stdout(&o);
    assert!(text.starts_with("tets 2\n"));
    assert_eq!(text.lines().filter(|l| l.starts_with("# edge")).count(), 3);
}

#[test]
fn deterministic_reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let t1 = gen(dir.path(), 1);
    let args = ["--json", "--deterministic", "meridian", "--in", path(&t1), "--max-pieces", "8"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&b));
    let results = |o: &Output| serde_json::from_slice::<serde_json::Value>(&o.stdout).unwrap()["results"].clone();
    for jobs in ["1", "4"] {
        let c = run(&[&["--jobs", jobs][..], &args[..]].concat());
        assert_eq!(results(&a), results(&c), "--jobs {jobs}");
    }
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(v.get("timing_ms").is_none());
    assert_eq!(v["inputs"].as_object().unwrap().len(), 1);
}

#[test]
fn curve_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let t2 = gen(dir.path(), 2);
    let c = dir.path().join("c.json");
    let d = dir.path().join("d.json");
    let o = run(&["curve", "make-61", "--i", "2", "--out", path(&c), "--disc-out", path(&d)]);
    assert_eq!(code(&o), 0);
    let o = run(&["--json", "curve", "check", "--in", path(&c), "--tri", path(&t2), "--disc", path(&d)]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["results"][0]["detail"]["one_skeleton_hits"], 1);
    assert_eq!(v["inputs"].as_object().unwrap().len(), 3);
}

#[test]
fn bundle_of_minimal_disc_passes() {
    let dir = tempfile::tempdir().unwrap();
    let t1 = gen(dir.path(), 1);
    let d = dir.path().join("d.txt");
    std::fs::write(&d, "tet 0: T 1 0 0 1 | Q 1 0 0\ntet 1: T 2 2 0 0 | Q 0 0 1\n").unwrap();
    let o = run(&["bundle", "--in", path(&t1), "--disc", path(&d)]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn non_minimal_disc_fails() {
    let dir = tempfile::tempdir().unwrap();
    let t0 = gen(dir.path(), 0);
    let d = dir.path().join("d.json");
    std::fs::write(&d, "[[2,0,0,2,2,0,0]]").unwrap();
    let o = run(&["bundle", "--in", path(&t0), "--disc", path(&d)]);
    assert_eq!(code(&o), 1);
}

#[test]
fn piece_bound_names_its_claim() {
    let o = run(&["--json", "--deterministic", "verify", "61-1", "--i", "1"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["results"][0]["claim"].as_str().unwrap().contains("x_{i+2}"));
}
