use std::fs;
use std::path::Path;
use std::process::{Command, Output};
use std::sync::OnceLock;

use tempfile::TempDir;

fn clifford(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clifford"))
        .arg("--out-dir")
        .arg(dir)
        .args(args)
        .env_remove("CLIFFORD_ATLAS_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// A table directory generated once and shared by read-only tests.
fn tables() -> &'static Path {
    static DIR: OnceLock<TempDir> = OnceLock::new();
    DIR.get_or_init(|| {
        let dir = TempDir::new().unwrap();
        let o = clifford(dir.path(), &["generate"]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        dir
    })
    .path()
}

fn write_matrix(dir: &TempDir, name: &str, rows: &[&str]) -> String {
    let path = dir.path().join(name);
    fs::write(&path, format!("{}\n{}\n", rows.len(), rows.join("\n"))).unwrap();
    path.to_string_lossy().into_owned()
}

const Z: &str = "0,0,0,0/0";
const ONE: &str = "1,0,0,0/0";

fn perm_rows(perm: [usize; 4]) -> Vec<String> {
    (0..4)
        .map(|r| (0..4).map(|c| if perm[c] == r { ONE } else { Z }).collect::<Vec<_>>().join(" "))
        .collect()
}

fn matrix_file(dir: &TempDir, name: &str, rows: Vec<String>) -> String {
    let rows: Vec<&str> = rows.iter().map(String::as_str).collect();
    write_matrix(dir, name, &rows)
}

#[test]
fn generate_is_byte_identical_on_rerun() {
    let dir = TempDir::new().unwrap();
    let o = clifford(dir.path(), &["generate"]);
    assert!(o.status.success());
    let first: Vec<Vec<u8>> = ["c1.tbl", "lc2.tbl", "c2.tbl"].iter().map(|f| fs::read(dir.path().join(f)).unwrap()).collect();
    let o = clifford(dir.path(), &["generate"]);
    assert!(o.status.success());
    for (f, before) in ["c1.tbl", "lc2.tbl", "c2.tbl"].iter().zip(&first) {
        assert_eq!(&fs::read(dir.path().join(f)).unwrap(), before, "{f}");
    }
    let header = |f: &str| fs::read_to_string(dir.path().join(f)).unwrap().lines().next().unwrap().to_string();
    assert_eq!(header("c1.tbl"), "CLIFFORD-TABLE v1 c1 192");
    assert_eq!(header("lc2.tbl"), "CLIFFORD-TABLE v1 lc2 4608");
    assert_eq!(header("c2.tbl"), "CLIFFORD-TABLE v1 c2 92160");
}

#[test]
fn verify_passes() {
    let o = clifford(tables(), &["--no-regen", "verify"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert!(out.contains("CHECK orbit-count expected=20 observed=20 PASS"));
    assert!(out.lines().filter(|l| l.starts_with("CHECK")).all(|l| l.ends_with(" PASS")));
    assert!(out.ends_with("OVERALL PASS\n"));
}

#[test]
fn truncated_table_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    for f in ["c1.tbl", "lc2.tbl", "c2.tbl"] {
        fs::copy(tables().join(f), dir.path().join(f)).unwrap();
    }
    let c2 = fs::read_to_string(dir.path().join("c2.tbl")).unwrap();
    let cut: String = c2.lines().take(1000).map(|l| format!("{l}\n")).collect();
    fs::write(dir.path().join("c2.tbl"), cut).unwrap();
    let o = clifford(dir.path(), &["verify"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("corrupt table"));
}

#[test]
fn missing_tables_without_regeneration() {
    let dir = TempDir::new().unwrap();
    let o = clifford(dir.path(), &["--no-regen", "graph"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(!dir.path().join("c2.tbl").exists());
}

#[test]
fn synth_examples() {
    let dir = TempDir::new().unwrap();
    let id = matrix_file(&dir, "id.txt", perm_rows([0, 1, 2, 3]));
    let o = clifford(tables(), &["synth", &id]);
    assert_eq!(stdout(&o), "CZ-COUNT 0\n");

    let mut cz_rows = perm_rows([0, 1, 2, 3]);
    cz_rows[3] = format!("{Z} {Z} {Z} -1,0,0,0/0");
    let cz = matrix_file(&dir, "cz.txt", cz_rows);
    let o = clifford(tables(), &["synth", "--verify", &cz]);
    assert_eq!(stdout(&o), "CZ-COUNT 1\nCZ\n");

    let swap = matrix_file(&dir, "swap.txt", perm_rows([0, 2, 1, 3]));
    let o = clifford(tables(), &["synth", "--verify", &swap]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("CZ-COUNT 3\n"));
    assert_eq!(text.lines().filter(|l| *l == "CZ").count(), 3);
    let o = clifford(tables(), &["synth", "--time-order", &swap]);
    assert!(stdout(&o).starts_with("CZ-COUNT 3\n"));

    let o = clifford(tables(), &["synth", "--id", "12345", "--verify"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("CZ-COUNT "));
}

#[test]
fn synth_errors_are_distinct() {
    let dir = TempDir::new().unwrap();
    let bad_entry = write_matrix(&dir, "bad.txt", &["1,0,0,0/0 0", "0 1,0,0,0/0"]);
    let o = clifford(tables(), &["synth", &bad_entry]);
    assert_eq!(o.status.code(), Some(3));

    let mut rows = perm_rows([0, 1, 2, 3]);
    rows[3] = format!("{Z} {Z} {Z} 2,0,0,0/0");
    let non_unitary = matrix_file(&dir, "nu.txt", rows);
    let o = clifford(tables(), &["synth", &non_unitary]);
    assert_eq!(o.status.code(), Some(4));
    let unitary_msg = String::from_utf8_lossy(&o.stderr).into_owned();
    assert!(unitary_msg.contains("not unitary"));

    let mut rows = perm_rows([0, 1, 2, 3]);
    rows[3] = format!("{Z} {Z} {Z} 0,1,0,0/0");
    let controlled_t = matrix_file(&dir, "ct.txt", rows);
    let o = clifford(tables(), &["synth", &controlled_t]);
    assert_eq!(o.status.code(), Some(4));
    let clifford_msg = String::from_utf8_lossy(&o.stderr).into_owned();
    assert!(clifford_msg.contains("not an element"));
    assert_ne!(unitary_msg, clifford_msg);

    let o = clifford(tables(), &["synth"]);
    assert_eq!(o.status.code(), Some(2));
    let o = clifford(tables(), &["synth", "--id", "92160"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn lookup_reports_orbit_and_layer() {
    let dir = TempDir::new().unwrap();
    let h = "1,0,0,0/2";
    let m = "-1,0,0,0/2";
    let hh = write_matrix(&dir, "hh.txt", &[&format!("{h} {h} {h} {h}"), &format!("{h} {m} {h} {m}"), &format!("{h} {h} {m} {m}"), &format!("{h} {m} {m} {h}")]);
    let out = stdout(&clifford(tables(), &["lookup", &hh]));
    assert!(out.contains("in-c2 yes\n"));
    assert!(out.contains("orbit O1\n"));
    assert!(out.contains("paper-label O1\n"));
    assert!(out.contains("layer 0\n"));

    let cnot = matrix_file(&dir, "cnot.txt", perm_rows([0, 1, 3, 2]));
    let out = stdout(&clifford(tables(), &["lookup", &cnot]));
    assert!(out.contains("layer 1\n"), "{out}");

    let not_in_ring = write_matrix(&dir, "root.txt", &[
        &format!("{ONE} {Z} {Z} {Z}"),
        &format!("{Z} {ONE} {Z} {Z}"),
        &format!("{Z} {Z} {ONE} {Z}"),
        &format!("{Z} {Z} {Z} i^(1/2)"),
    ]);
    let o = clifford(tables(), &["lookup", &not_in_ring]);
    assert_eq!(o.status.code(), Some(3));

    let mut rows = perm_rows([0, 1, 2, 3]);
    rows[3] = format!("{Z} {Z} {Z} 0,1,0,0/0");
    let controlled_t = matrix_file(&dir, "ct.txt", rows);
    let o = clifford(tables(), &["lookup", &controlled_t]);
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(stdout(&o), "in-c2 no\n");
}

#[test]
fn graph_exports() {
    let dot = stdout(&clifford(tables(), &["graph", "--format", "dot"]));
    assert_eq!(dot.matches(" -- ").count(), 90);
    assert_eq!((1..=20).filter(|n| dot.contains(&format!("O{n};"))).count(), 20);
    let json = stdout(&clifford(tables(), &["graph", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["nodes"].as_array().unwrap().len(), 20);
    assert!(v["edges"].as_array().unwrap().iter().all(|e| e["weight"] == 512));
    assert!(v["nodes"].as_array().unwrap().iter().all(|n| n["paper_label"].is_u64()));
}

#[test]
fn orbit_files() {
    let dir = TempDir::new().unwrap();
    for f in ["c1.tbl", "lc2.tbl", "c2.tbl"] {
        fs::copy(tables().join(f), dir.path().join(f)).unwrap();
    }
    let o = clifford(dir.path(), &["orbits"]);
    assert!(o.status.success());
    let summary = fs::read_to_string(dir.path().join("orbits.txt")).unwrap();
    assert_eq!(stdout(&o), summary);
    assert_eq!(summary.lines().count(), 20);
    let layers: Vec<&str> = summary.lines().map(|l| l.split(' ').nth(1).unwrap()).collect();
    assert_eq!(layers.iter().filter(|&&l| l == "1").count(), 9);
    assert!(summary.lines().all(|l| l.split(' ').nth(2) == Some("4608")));
    let map = fs::read_to_string(dir.path().join("orbits.map")).unwrap();
    assert_eq!(map.lines().count(), 92160);
    assert!(map.starts_with("0 "));
}

#[test]
fn env_var_selects_table_directory() {
    let o = Command::new(env!("CARGO_BIN_EXE_clifford"))
        .args(["--no-regen", "graph", "--format", "json"])
        .env("CLIFFORD_ATLAS_DIR", tables())
        .output()
        .unwrap();
    assert!(o.status.success());
}
