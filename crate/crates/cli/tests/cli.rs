use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hocoalg"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn golden(n: usize) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("golden").join(format!("diagonal_n{}.txt", n))
}

fn example_text(name: &str) -> String {
    stdout(&run(&["example", name, "--print"]))
}

#[test]
fn validate_builtins() {
    for name in ["example1", "example2"] {
        let o = run(&["validate", name]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        assert!(stdout(&o).contains(name));
    }
}

#[test]
fn printed_example_round_trips_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("e1.json");
    std::fs::write(&p, example_text("example1")).unwrap();
    let o = run(&["validate", p.to_str().unwrap(), "--format", "machine-readable"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["max_arity"], 3);
    assert_eq!(v["generators"], 4);
}

#[test]
fn input_errors_exit_2_with_line() {
    let dir = tempfile::tempdir().unwrap();
    let text = example_text("example1").replace(r#"["x", "y", "z"]"#, r#"["x", "w"]"#);
    let p = dir.path().join("bad.json");
    std::fs::write(&p, text).unwrap();
    let o = run(&["validate", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let e = stderr(&o);
    assert!(e.contains("line 12"), "{}", e);

    // Δ₃(w₅) = x⊗y⊗z with |z| = 1 has degree 5, not 6
    let text = example_text("example1").replace(r#"{"id": "z", "degree": 2}"#, r#"{"id": "z", "degree": 1}"#);
    std::fs::write(&p, text).unwrap();
    let o = run(&["check-ainf", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("degree"), "{}", stderr(&o));

    std::fs::write(&p, "{ \"name\": \"x\", ").unwrap();
    let o = run(&["validate", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line"), "{}", stderr(&o));

    assert_eq!(run(&["validate", "no-such-thing"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn ainf_and_cinf_exit_codes() {
    assert_eq!(run(&["check-ainf", "example1"]).status.code(), Some(0));
    assert_eq!(run(&["check-cinf", "example2"]).status.code(), Some(0));
    let o = run(&["check-cinf", "example1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn diagonal_matches_golden_files() {
    for n in 2..=6 {
        let g = golden(n);
        let o = run(&["diagonal", "--arity", &n.to_string(), "--golden", g.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "n={} {}", n, stderr(&o));
        assert!(stderr(&o).contains("golden match"));
    }
    let header = std::fs::read_to_string(golden(4)).unwrap();
    assert!(header.lines().filter(|l| l.starts_with('#')).count() > 1, "K4 golden file carries its note");
}

#[test]
fn diagonal_golden_mismatch_and_write() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("k4.txt");
    let good = std::fs::read_to_string(golden(4)).unwrap();
    std::fs::write(&p, good.replacen(" -1 (*(**)*)", "  1 (*(**)*)", 1)).unwrap();
    let o = run(&["diagonal", "--arity", "4", "--golden", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));

    let fresh = dir.path().join("fresh.txt");
    let o = run(&["diagonal", "--arity", "5", "--golden", fresh.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&fresh).unwrap(), std::fs::read_to_string(golden(5)).unwrap());
}

#[test]
fn diagonal_of_a_face_and_bad_trees() {
    let o = run(&["diagonal", "--arity", "4", "--cell", "((**)**)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("((**)**)"));
    assert_eq!(run(&["diagonal", "--arity", "4", "--cell", "((**)"]).status.code(), Some(2));
    assert_eq!(run(&["diagonal", "--arity", "5", "--cell", "(***)"]).status.code(), Some(2));
}

#[test]
fn ell3_invariant_and_symmetrize() {
    let o = run(&["invariant", "example1", "--op", "ell3", "--degree", "5", "--format", "machine-readable"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rank"], 1);
    let o = run(&["invariant", "example2", "--degree", "5", "--format", "machine-readable"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rank"], 0);

    let o = run(&["symmetrize", "example1", "--max-degree", "5"]);
    assert_eq!(
        stdout(&o).trim(),
        "ℓ^3(w) = x ⊗ y ⊗ z - x ⊗ z ⊗ y - y ⊗ x ⊗ z + y ⊗ z ⊗ x + z ⊗ x ⊗ y - z ⊗ y ⊗ x"
    );
}

#[test]
fn extend_prints_images() {
    let o = run(&["extend", "example1", "--mode", "rho", "--arity", "3", "--word", "x.w"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "ϱ_3(x.w) = x ⊗ y ⊗ x.z + x ⊗ x.y ⊗ z + x.x ⊗ y ⊗ z");
    let o = run(&["extend", "example1", "--mode", "psi", "--arity", "2", "--word", "x y"]);
    assert!(stdout(&o).contains("1 ⊗ x.y"), "{}", stdout(&o));
    assert_eq!(run(&["extend", "example1", "--arity", "2", "--word", "q"]).status.code(), Some(2));
}

#[test]
fn compare_distinguishes_examples() {
    let o = run(&["compare", "example1", "example2", "--max-degree", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Lie-isomorphic, distinguished by ℓ³"), "{}", stdout(&o));
}

#[test]
fn lie_basis_and_primitives() {
    let o = run(&["lie-basis", "example1", "--max-degree", "6"]);
    assert!(stdout(&o).contains("dimensions 2:3 4:3 5:1 6:8"), "{}", stdout(&o));
    let o = run(&["primitives", "example2", "--max-degree", "6"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn pipelines_report_and_exit() {
    let o = run(&["example", "example2", "--max-degree", "7", "--format", "machine-readable"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["reports"].as_array().unwrap().len(), 9);
    assert!(v["ell3_ranks"].as_object().unwrap().is_empty());

    // example1 is not C∞ and its ϱ-extension is not A∞ within these caps
    let o = run(&["run", "example1", "--max-degree", "10"]);
    assert_eq!(o.status.code(), Some(1));
    let s = stdout(&o);
    assert!(s.contains("check-cinf           FAIL"), "{}", s);
    assert!(s.contains("check-primitive      FAIL"), "{}", s);
    assert!(s.contains("check-linf           pass"), "{}", s);
    assert!(s.contains("rank ℓ³ in degree 5 = 1"), "{}", s);
}

#[test]
fn output_is_deterministic() {
    let args = ["diagonal", "--arity", "5", "--format", "machine-readable"];
    assert_eq!(stdout(&run(&args)), stdout(&run(&args)));
    let args = ["symmetrize", "example1", "--max-degree", "7"];
    assert_eq!(stdout(&run(&args)), stdout(&run(&args)));
}
