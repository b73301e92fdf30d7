use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use lattice_sched::format::{parse_schedule, parse_tiling};
use lattice_sched::{build_schedule, Window};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lattice-sched"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_reports_index() {
    let o = run(&["verify", path(&fixture("directional.json"))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "valid, index=8");
}

#[test]
fn verify_rejects_overlapping_tiling() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    let text = std::fs::read_to_string(fixture("ball.json"))
        .unwrap()
        .replace("[[3, 0], [0, 3]]", "[[3, 0], [0, 2]]");
    std::fs::write(&bad, text).unwrap();
    let o = run(&["verify", path(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("invalid, index=6"));
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(
        run(&["verify", "/no/such/file.json"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["exact", "--word", "rrul"]).status.code(), Some(2));
    let o = run(&["check", path(&fixture("plus.json")), "--window", "0,0,1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn schedule_then_check_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("schedule.json");
    let tiling = fixture("respectable.json");
    let o = run(&["schedule", path(&tiling), "--out", path(&out)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "m=9");

    let (t, _) = parse_tiling(&std::fs::read_to_string(&tiling).unwrap()).unwrap();
    let direct = build_schedule(&t).unwrap();
    let reread = parse_schedule(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let window = Window::cube(2, -12, 12).unwrap();
    for p in window.points() {
        assert_eq!(reread.slot_of(&p).unwrap(), direct.slot_of(&p).unwrap());
    }

    let o = run(&[
        "check",
        path(&out),
        "--window",
        "-6,-6,6,6",
        "--optimality-window",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("collision-free, m=9"));
    assert!(text.contains("optimality window: yes"));

    let o = run(&[
        "check",
        path(&out),
        "--window",
        "0,0,3,3",
        "--optimality-window",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("optimality window: no"));
}

#[test]
fn check_finds_collisions_in_a_bad_schedule() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("schedule.json");
    run(&["schedule", path(&fixture("plus.json")), "--out", path(&out)]);
    let text = std::fs::read_to_string(&out).unwrap();
    let flattened = (2..=5).fold(text, |acc, k| {
        acc.replace(&format!("\"slot\": {k}"), "\"slot\": 1")
    });
    std::fs::write(&out, flattened).unwrap();
    let o = run(&["check", path(&out), "--window", "0,0,4,4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("collision(s)"));
}

#[test]
fn exactness_verdicts() {
    let o = run(&["exact", "--word", "ruld"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("exact"));
    assert!(text.contains("X=r Y=u Z=ε"));

    let o = run(&["exact", "--cells", "0,0;1,0;2,0;0,1;2,1"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "not exact");

    let o = run(&["exact", "--cells", "[[0,0],[1,0],[2,0],[1,1]]"]);
    assert_eq!(o.status.code(), Some(0));

    let o = run(&["exact", "--cells", "0,0;1,1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("not a polyomino"));
}

#[test]
fn optimize_two_tetromino_tilings() {
    let o = run(&["optimize", path(&fixture("tetromino-islands.json"))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "6");
    let o = run(&["optimize", path(&fixture("tetromino-strips.json"))]);
    assert_eq!(stdout(&o).lines().next(), Some("4"));
}

#[test]
fn solve_writes_a_valid_tiling() {
    let dir = tempfile::tempdir().unwrap();
    let tiles = dir.path().join("tiles.json");
    std::fs::write(&tiles, "[[[0,0],[1,0],[-1,0],[0,1],[0,-1]]]").unwrap();
    let out = dir.path().join("found.json");
    let o = run(&[
        "solve",
        path(&tiles),
        "--index-bound",
        "5",
        "--limit",
        "2",
        "--out",
        path(&out),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 2);
    assert!(stdout(&o).starts_with("index=5"));
    let o = run(&["verify", path(&out)]);
    assert_eq!(stdout(&o).trim(), "valid, index=5");

    let o = run(&["solve", path(&tiles), "--index-bound", "4"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn simulate_is_deterministic() {
    let plus = fixture("plus.json");
    let args = [
        "simulate",
        path(&plus),
        "--window",
        "-6,-6,6,6",
        "--rounds",
        "300",
        "--seed",
        "9",
        "--mac",
        "random",
        "--slots",
        "5",
        "--arrival",
        "0.4",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with("metric,value\n"));
    assert!(text.contains("collision_free,false"));

    let o = run(&["simulate", path(&plus), "--rounds", "500"]);
    assert!(stdout(&o).contains("collisions,0\n"));
}

#[test]
fn render_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    for out in [&a, &b] {
        let o = run(&[
            "render",
            path(&fixture("directional.json")),
            "--schedule",
            "--window",
            "0,0,9,5",
            "--out",
            path(out),
        ]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o).trim(), path(out));
    }
    let svg = std::fs::read(&a).unwrap();
    assert_eq!(svg, std::fs::read(&b).unwrap());
    let svg = String::from_utf8(svg).unwrap();
    assert!(svg.starts_with("<?xml"));
    assert_eq!(svg.matches("<text").count(), 60);
}
