use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_linecover"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn")
}

fn run_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn");
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

const K4: &str = "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";

#[test]
fn gen_stacked_sizes() {
    let o = run(&["gen-stacked", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("7 15\n"));
}

#[test]
fn two_planes_pipe_into_bound_check() {
    let gen = run(&["gen-two-planes", "7"]);
    assert!(gen.status.success());
    let o = run_stdin(&["bound-check", "-"], &gen.stdout);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("pass"));
    assert!(text
        .lines()
        .any(|l| l.starts_with('m') && l.trim_end().ends_with(" 16")));

    let v = run_stdin(&["verify-3d", "-"], &gen.stdout);
    assert_eq!(v.status.code(), Some(0));
}

#[test]
fn bound_check_json_is_stable() {
    let gen = run(&["gen-two-planes", "12"]);
    let a = run_stdin(&["bound-check", "-", "--format", "json"], &gen.stdout);
    let b = run_stdin(&["bound-check", "-", "--format", "json"], &gen.stdout);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["m"], 41);
    assert_eq!(v["passed"], true);
}

#[test]
fn crossing_drawing_fails_with_edge_pair() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("k4.txt");
    let d = dir.path().join("d.txt");
    std::fs::write(&g, K4).unwrap();
    std::fs::write(&d, "0 0 0\n1 2 2\n2 0 2\n3 2 0\n").unwrap();
    let o = run(&["verify-2d", path_str(&g), path_str(&d)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("edges 0-1 and 2-3"));
}

#[test]
fn solve_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("k4.txt");
    let d = dir.path().join("d.txt");
    let l = dir.path().join("l.txt");
    std::fs::write(&g, K4).unwrap();
    let o = run(&[
        "solve-pi12",
        path_str(&g),
        "--k-max",
        "2",
        "--drawing-out",
        path_str(&d),
        "--lines-out",
        path_str(&l),
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("[2, 2]"));
    let v = run(&["verify-2d", path_str(&g), path_str(&d), path_str(&l)]);
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
}

#[test]
fn generators_reverify() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.txt");
    let d = dir.path().join("d.txt");
    let l = dir.path().join("l.txt");
    let o = run(&[
        "stacked-draw",
        "2",
        "--graph-out",
        path_str(&g),
        "--drawing-out",
        path_str(&d),
        "--lines-out",
        path_str(&l),
    ]);
    assert!(o.status.success());
    let v = run(&["verify-2d", path_str(&g), path_str(&d), path_str(&l)]);
    assert_eq!(v.status.code(), Some(0));

    let o = run(&[
        "gen-spiral",
        "3",
        "-o",
        path_str(&g),
        "--drawing",
        path_str(&d),
    ]);
    assert!(o.status.success());
    let v = run(&["verify-2d", path_str(&g), path_str(&d)]);
    assert_eq!(v.status.code(), Some(0));
}

#[test]
fn reduction_roundtrip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let p = |name: &str| dir.path().join(name);
    std::fs::write(p("c4.txt"), "4 4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
    std::fs::write(p("lev.txt"), "1: 0\n2: 1 3\n3: 2\n").unwrap();
    let o = run(&[
        "forward-draw",
        path_str(&p("c4.txt")),
        path_str(&p("lev.txt")),
        "-o",
        path_str(&p("d.txt")),
        "--reduction",
        path_str(&p("red.json")),
        "--graph-out",
        path_str(&p("g2.txt")),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = run(&["verify-2d", path_str(&p("g2.txt")), path_str(&p("d.txt"))]);
    assert_eq!(v.status.code(), Some(0));
    let e = run(&[
        "extract-levels",
        path_str(&p("red.json")),
        path_str(&p("d.txt")),
    ]);
    assert!(e.status.success());
    assert_eq!(stdout(&e).lines().count(), 3);
}

#[test]
fn svg_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.txt");
    let d = dir.path().join("d.txt");
    run(&[
        "gen-spiral",
        "2",
        "-o",
        path_str(&g),
        "--drawing",
        path_str(&d),
    ]);
    let a = run(&["export-svg", path_str(&g), path_str(&d), "--axes"]);
    let b = run(&["export-svg", path_str(&g), path_str(&d), "--axes"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("<svg"));
}

#[test]
fn random_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let r = dir.path().join("report.txt");
    let o = run(&["random-3d", "8", "--seeds", "4", "--report", path_str(&r)]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&r).unwrap();
    assert_eq!(text.lines().count(), 6);
    assert!(text.contains("of bound 21"));
}

#[test]
fn usage_and_capacity_exit_two() {
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["gen-stacked"]).status.code(), Some(2));
    assert_eq!(run(&["gen-stacked", "40"]).status.code(), Some(2));
    assert_eq!(run(&["gen-two-planes", "5"]).status.code(), Some(2));
}
