use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn nctb(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nctb"))
        .current_dir(dir)
        .env_remove("NCTB_SEED")
        .args(args)
        .output()
        .expect("spawn nctb")
}

fn last_line(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout)
        .lines()
        .last()
        .unwrap_or("")
        .to_string()
}

fn field(o: &Output, key: &str) -> Option<String> {
    let line = last_line(o);
    line.split_whitespace()
        .find_map(|kv| kv.strip_prefix(&format!("{key}=")).map(str::to_string))
}

#[test]
fn tree_construct_then_verify() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    assert!(nctb(
        p,
        &["gen", "--family", "tree", "-n", "15", "--seed", "7", "-o", "t.g"]
    )
    .status
    .success());
    let c = nctb(
        p,
        &["construct", "--class", "tree", "-i", "t.g", "-o", "t.tm"],
    );
    assert!(c.status.success(), "{}", String::from_utf8_lossy(&c.stderr));
    assert_eq!(field(&c, "size").as_deref(), Some("2"));
    let v = nctb(p, &["verify", "-i", "t.g", "-m", "t.tm", "--positive"]);
    assert_eq!(v.status.code(), Some(0));
    assert_eq!(field(&v, "ok").as_deref(), Some("true"));
}

#[test]
fn broken_map_fails_verification() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    nctb(p, &["gen", "--family", "path", "-n", "4", "-o", "p.g"]);
    nctb(
        p,
        &["construct", "--class", "tree", "-i", "p.g", "-o", "p.tm"],
    );
    // empty every teaching set
    let text = fs::read_to_string(p.join("p.tm")).unwrap();
    let bad: String = (0..text.lines().count())
        .map(|i| format!("concept {i} pos\n"))
        .collect();
    fs::write(p.join("bad.tm"), bad).unwrap();
    let v = nctb(p, &["verify", "-i", "p.g", "-m", "bad.tm"]);
    assert_eq!(v.status.code(), Some(1));
    assert_eq!(field(&v, "ok").as_deref(), Some("false"));
}

#[test]
fn k2_has_no_size_one_map() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    nctb(p, &["gen", "--family", "path", "-n", "2", "-o", "k2.g"]);
    let o = nctb(
        p,
        &["solve", "-i", "k2.g", "--mode", "nctd+", "--kmax", "1"],
    );
    assert_eq!(o.status.code(), Some(1));
    let line = last_line(&o);
    assert!(line.contains("answer=NO") && line.contains("k=1"), "{line}");
    let o = nctb(p, &["solve", "-i", "k2.g", "--mode", "nctd+"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(field(&o, "k").as_deref(), Some("2"));
}

#[test]
fn budget_exit_code() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    nctb(p, &["gen", "--family", "cycle", "-n", "7", "-o", "c.g"]);
    let o = nctb(p, &["solve", "-i", "c.g", "--budget", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(field(&o, "answer").as_deref(), Some("BUDGET"));
}

#[test]
fn bad_input_is_exit_2() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    fs::write(p.join("bad.g"), "3 1\n0 7\n").unwrap();
    let o = nctb(p, &["balls", "-i", "bad.g"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.g"));
    assert_eq!(nctb(p, &["solve"]).status.code(), Some(2));
}

#[test]
fn split_reduction_and_witness() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    // n=3, m=4, t=2; no element is in m-1 sets
    fs::write(p.join("sc.txt"), "3 4 2\n1 2\n2 3\n1\n3\n").unwrap();
    let r = nctb(
        p,
        &[
            "reduce", "--flavor", "split", "-i", "sc.txt", "-o", "g", "--roles", "roles",
        ],
    );
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    assert_eq!(field(&r, "k").as_deref(), Some("6"));
    assert_eq!(field(&r, "vertices").as_deref(), Some("16"));
    assert_eq!(
        fs::read_to_string(p.join("roles")).unwrap().lines().count(),
        16
    );
    let w = nctb(
        p,
        &[
            "witness", "--flavor", "split", "-i", "sc.txt", "--cover", "1,2", "-o", "tm",
        ],
    );
    assert!(w.status.success(), "{}", String::from_utf8_lossy(&w.stderr));
    let v = nctb(p, &["verify", "-i", "g", "-m", "tm", "--positive"]);
    assert_eq!(v.status.code(), Some(0));
    // not a cover
    let w = nctb(
        p,
        &[
            "witness", "--flavor", "split", "-i", "sc.txt", "--cover", "3,4",
        ],
    );
    assert_eq!(w.status.code(), Some(2));
}

#[test]
fn p3sat_round_trip() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    let inst = "5 6\na:1:+ b:2:- c:3:+\na:2:- b:1:+\na:3:+ c:1:-\nb:4:+ c:5:-\na:5:- b:3:+ c:2:+\na:4:+ c:4:+\n";
    fs::write(p.join("i.txt"), inst).unwrap();
    let r = nctb(
        p,
        &[
            "reduce", "--flavor", "p3sat", "-i", "i.txt", "-o", "g", "--roles", "roles",
        ],
    );
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    assert_eq!(field(&r, "k").as_deref(), Some("33"));
    let pi = "TFTFT,TTFFT,FTTTF";
    let w = nctb(
        p,
        &[
            "witness",
            "--flavor",
            "p3sat",
            "-i",
            "i.txt",
            "--assignment",
            pi,
            "-o",
            "tm",
        ],
    );
    assert!(w.status.success(), "{}", String::from_utf8_lossy(&w.stderr));
    assert_eq!(
        nctb(p, &["verify", "-i", "g", "-m", "tm", "--positive"])
            .status
            .code(),
        Some(0)
    );
    let e = nctb(
        p,
        &[
            "extract",
            "-i",
            "g",
            "--roles",
            "roles",
            "-m",
            "tm",
            "--instance",
            "i.txt",
        ],
    );
    assert_eq!(e.status.code(), Some(0));
    assert_eq!(field(&e, "satisfied").as_deref(), Some("true"));
}

#[test]
fn interval_needs_representation() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    nctb(
        p,
        &[
            "gen",
            "--family",
            "interval",
            "-n",
            "10",
            "--seed",
            "2",
            "-o",
            "g",
            "--intervals-out",
            "rep",
        ],
    );
    assert_eq!(
        nctb(p, &["construct", "--class", "interval", "-i", "g"])
            .status
            .code(),
        Some(2)
    );
    let c = nctb(
        p,
        &[
            "construct",
            "--class",
            "interval",
            "-i",
            "g",
            "--intervals",
            "rep",
            "-o",
            "tm",
        ],
    );
    assert!(c.status.success(), "{}", String::from_utf8_lossy(&c.stderr));
    assert_eq!(
        nctb(p, &["verify", "-i", "g", "-m", "tm", "--positive"])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn output_independent_of_threads() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    nctb(
        p,
        &[
            "gen", "--family", "random", "-n", "9", "--p", "0.35", "--seed", "4", "-o", "g",
        ],
    );
    let run = |t: &str| {
        let o = nctb(p, &["--threads", t, "solve", "-i", "g", "--mode", "nctd"]);
        assert!(o.status.code().is_some());
        o.stdout
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn json_summary() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    nctb(p, &["gen", "--family", "cycle", "-n", "6", "-o", "c6"]);
    let o = nctb(p, &["--json", "hyperbolicity", "-i", "c6"]);
    let v: serde_json::Value = serde_json::from_str(&last_line(&o)).unwrap();
    assert_eq!(v["twice"], 2);
    assert_eq!(v["diameter"], 3);
}

#[test]
fn seed_from_environment() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    let a = Command::new(env!("CARGO_BIN_EXE_nctb"))
        .current_dir(p)
        .env("NCTB_SEED", "11")
        .args(["gen", "--family", "tree", "-n", "20"])
        .output()
        .unwrap();
    let b = nctb(p, &["gen", "--family", "tree", "-n", "20", "--seed", "11"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn kernel_deletes_twins() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    // star with 6 leaves: leaves are pairwise false twins
    nctb(p, &["gen", "--family", "star", "-n", "7", "-o", "s"]);
    let o = nctb(p, &["kernelize", "-i", "s", "--cover", "exact"]);
    assert!(o.status.success());
    let out = String::from_utf8_lossy(&o.stdout);
    assert!(out.lines().any(|l| l.starts_with("# deleted")));
    let kn: usize = field(&o, "kernel_n").unwrap().parse().unwrap();
    assert!(kn < 7);
}

#[test]
fn construct_pipes_into_verify() {
    let d = TempDir::new().unwrap();
    let p = d.path();
    nctb(p, &["gen", "--family", "tree", "-n", "12", "--seed", "5", "-o", "t.g"]);
    let c = nctb(p, &["construct", "--class", "tree", "-i", "t.g"]);
    assert!(last_line(&c).starts_with("# RESULT"));
    let mut v = Command::new(env!("CARGO_BIN_EXE_nctb"))
        .current_dir(p)
        .args(["verify", "-i", "t.g", "--positive"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    v.stdin.take().unwrap().write_all(&c.stdout).unwrap();
    let out = v.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(last_line(&out).starts_with("RESULT ok=true"));
}
