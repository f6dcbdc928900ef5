use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_braidobf"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

#[test]
fn normalize_trivial_b3_word() {
    let dir = TempDir::new().unwrap();
    file(&dir, "w.braid", "braid 3\n# comment\n-1 2 -2 1\n");
    let o = bin(&["normalize", "w.braid"], dir.path());
    assert!(o.status.success());
    assert_eq!(stdout(&o), "nf 3 0 0\n");
}

#[test]
fn compile_reference_toffoli() {
    let dir = TempDir::new().unwrap();
    file(&dir, "c.circ", "circuit 3\ntoffoli 2 3 1\n");
    let o = bin(&["compile", "c.circ"], dir.path());
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("braid 14\n"));
    assert_eq!(text.lines().skip(1).flat_map(str::split_whitespace).count(), 132);
}

#[test]
fn orbit_prints_44() {
    let dir = TempDir::new().unwrap();
    let o = bin(&["orbit", "--group", "a5"], dir.path());
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("orbit_size=44\n"));
    assert!(text.contains("subgroup_size=60\n"));
}

#[test]
fn writers_round_trip_byte_for_byte() {
    let dir = TempDir::new().unwrap();
    file(&dir, "c.circ", "circuit 4\ntoffoli 1 2 3\ntoffoli 3 4 1\n");
    assert!(bin(&["obfuscate", "c.circ", "-o", "a.nf", "--word", "a.rc"], dir.path()).status.success());
    assert!(bin(&["wordof", "a.nf", "--rcirc", "-o", "b.rc"], dir.path()).status.success());
    assert!(bin(&["normalize", "b.rc", "-o", "b.nf"], dir.path()).status.success());
    let read = |n: &str| fs::read(dir.path().join(n)).unwrap();
    assert_eq!(read("a.nf"), read("b.nf"));
    assert_eq!(read("a.rc"), read("b.rc"));
}

#[test]
fn randomized_obfuscation_is_seeded_and_deterministic() {
    let dir = TempDir::new().unwrap();
    file(&dir, "c.circ", "circuit 3\ntoffoli 2 3 1\n");
    let missing = bin(&["obfuscate", "c.circ", "--mode", "randomized"], dir.path());
    assert_eq!(missing.status.code(), Some(2));
    let a = bin(&["obfuscate", "c.circ", "--mode", "randomized", "--seed", "4"], dir.path());
    let b = bin(&["obfuscate", "c.circ", "--mode", "randomized", "--seed", "4"], dir.path());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let salted = bin(&["obfuscate", "c.circ", "--mode", "salted", "--seed", "4"], dir.path());
    assert!(salted.status.success());
    assert!(stdout(&salted).starts_with("nf 16 "));
}

#[test]
fn simulate_braid_and_normal_form_agree() {
    let dir = TempDir::new().unwrap();
    file(&dir, "w.braid", "braid 3\n1 2 -1 2 2\n");
    file(&dir, "s.state", "state 3\n2 3 1 4 5\n1 2 4 5 3\n5 1 2 3 4\n");
    assert!(bin(&["normalize", "w.braid", "-o", "w.nf"], dir.path()).status.success());
    let a = bin(&["simulate", "w.braid", "s.state"], dir.path());
    let b = bin(&["simulate", "w.nf", "s.state"], dir.path());
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("state 3\n"));
}

#[test]
fn peel_recovers_and_dictionary_matches() {
    let dir = TempDir::new().unwrap();
    file(&dir, "c.circ", "circuit 4\ntoffoli 1 2 3\ntoffoli 2 4 1\n");
    assert!(bin(&["obfuscate", "c.circ", "-o", "c.nf"], dir.path()).status.success());
    let o = bin(&["attack-peel", "c.nf", "--wires", "4", "--circuit-out", "r.circ"], dir.path());
    assert!(o.status.success());
    assert!(stdout(&o).contains("recovered=true"));
    assert_eq!(fs::read_to_string(dir.path().join("r.circ")).unwrap(), "circuit 4\ntoffoli 1 2 3\ntoffoli 2 4 1\n");

    fs::create_dir(dir.path().join("cands")).unwrap();
    file(&dir, "cands/a.circ", "circuit 4\ntoffoli 1 2 3\n");
    file(&dir, "cands/b.circ", "circuit 4\ntoffoli 1 2 3\ntoffoli 2 4 1\n");
    let d = bin(&["attack-dict", "c.nf", "cands"], dir.path());
    assert!(d.status.success());
    assert!(stdout(&d).contains("match=b.circ"));
}

#[test]
fn gcd_and_experiments_report_key_values() {
    let dir = TempDir::new().unwrap();
    let o = bin(&["attack-gcd", "--pairs", "3", "--seed", "1"], dir.path());
    assert!(o.status.success());
    assert!(stdout(&o).contains("prefix_divides=3\n"));
    let p = bin(&["attack-peel", "--trials", "4", "--seed", "2", "--wires", "3"], dir.path());
    assert!(p.status.success());
    assert!(stdout(&p).contains("trials=4\n"));
}

#[test]
fn ybe_commands() {
    let dir = TempDir::new().unwrap();
    let o = bin(&["ybe-search", "--dim", "2"], dir.path());
    assert!(stdout(&o).contains("solutions=5\n"));
    file(&dir, "bad.gate", "gate 2\n1 0\n2 3\n");
    let c = bin(&["ybe-check", "bad.gate"], dir.path());
    assert_eq!(c.status.code(), Some(1));
    assert!(stdout(&c).contains("holds=false"));
    assert!(bin(&["ybe-check", "--group", "s5"], dir.path()).status.success());
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    file(&dir, "bad.braid", "braid 3\n1 x\n");
    let o = bin(&["normalize", "bad.braid"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(bin(&["normalize", "missing.braid"], dir.path()).status.code(), Some(2));
    assert_eq!(bin(&["frobnicate"], dir.path()).status.code(), Some(2));
    let unknown = bin(&["orbit", "--group", "q8"], dir.path());
    assert_eq!(unknown.status.code(), Some(1));
}

#[test]
fn selftest_runs_a_single_criterion() {
    let dir = TempDir::new().unwrap();
    let o = bin(&["selftest", "--only", "2"], dir.path());
    assert!(o.status.success());
    assert!(stdout(&o).contains("PASS"));
}
