//! Acceptance suite, CLI half (criteria 1-3; 4-8 live in the core crate's
//! acceptance target). Each criterion prints one pass/fail line and
//! enforces its time limit.

use std::panic::AssertUnwindSafe;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::{Duration, Instant};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_ramsey")
}

fn table_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../ramsey-core/data/known_bounds.txt")
}

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(bin())
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn assert_exit(out: &Output, code: i32, context: &str) {
    assert_eq!(
        out.status.code(),
        Some(code),
        "{context}: expected exit {code}\nstdout: {}\nstderr: {}",
        stdout_of(out),
        String::from_utf8_lossy(&out.stderr)
    );
}

fn criterion(number: u32, name: &str, limit: Duration, body: impl FnOnce()) {
    let start = Instant::now();
    let result = std::panic::catch_unwind(AssertUnwindSafe(body));
    let elapsed = start.elapsed();
    let verdict = match &result {
        Ok(()) if elapsed <= limit => "PASS",
        _ => "FAIL",
    };
    println!("ACCEPTANCE {number} ({name}): {verdict} in {elapsed:.2?} (limit {limit:.0?})");
    if let Err(e) = result {
        std::panic::resume_unwind(e);
    }
    assert!(
        elapsed <= limit,
        "criterion {number} exceeded its {limit:?} limit: {elapsed:?}"
    );
}

#[test]
fn criterion_1_thm1_desk_scale() {
    criterion(
        1,
        "construct thm1 over c5, verify (3,3,3)",
        Duration::from_secs(1),
        || {
            let dir = tempfile::tempdir().unwrap();
            let d = dir.path();

            let out = run(&["catalog", "get", "c5", "-o", "c5.txt"], d);
            assert_exit(&out, 0, "catalog get c5");

            let out = run(
                &["construct", "thm1", "--base", "c5.txt", "--k1", "3", "-o", "t1.txt"],
                d,
            );
            assert_exit(&out, 0, "construct thm1");
            assert!(
                stdout_of(&out).contains("= 10 vertices"),
                "size law line missing: {}",
                stdout_of(&out)
            );

            let out = run(&["verify", "t1.txt", "--bounds", "3,3,3"], d);
            assert_exit(&out, 0, "verify thm1 output");
            assert!(stdout_of(&out).contains("R(3,3,3) >= 11"));
        },
    );
}

#[test]
fn criterion_2_thm2_desk_scale() {
    criterion(
        2,
        "construct thm2 over wagner8 and the degenerate single-edge base",
        Duration::from_secs(5),
        || {
            let dir = tempfile::tempdir().unwrap();
            let d = dir.path();

            // wagner8: stretch the triangle-free color (color 1, bound 3).
            let out = run(&["catalog", "get", "wagner8", "-o", "w8.txt"], d);
            assert_exit(&out, 0, "catalog get wagner8");
            let out = run(
                &[
                    "construct", "thm2", "--base", "w8.txt", "--t", "3",
                    "--stretched", "1", "-o", "t2.txt",
                ],
                d,
            );
            assert_exit(&out, 0, "construct thm2");
            assert!(stdout_of(&out).contains("= 32 vertices"));
            let out = run(&["verify", "t2.txt", "--bounds", "3,4,5"], d);
            assert_exit(&out, 0, "verify thm2 output");
            assert!(stdout_of(&out).contains("R(3,4,5) >= 33"));

            // Degenerate base: one pass-through edge, stretched color absent.
            std::fs::write(
                d.join("k2.txt"),
                "ramsey-coloring 1\nn=2 r=2\nbounds=3,2\nedge 0 1 1\n",
            )
            .unwrap();
            let out = run(
                &[
                    "construct", "thm2", "--base", "k2.txt", "--t", "3",
                    "--stretched", "2", "-o", "t2k.txt",
                ],
                d,
            );
            assert_exit(&out, 0, "construct thm2 degenerate");
            assert!(stdout_of(&out).contains("= 8 vertices"));
            let out = run(&["verify", "t2k.txt", "--bounds", "3,3,4"], d);
            assert_exit(&out, 0, "verify degenerate thm2 output");
            assert!(stdout_of(&out).contains("R(3,3,4) >= 9"));
        },
    );
}

#[test]
fn criterion_3_paper_number_regression() {
    criterion(
        3,
        "bound reproduces the five published example numbers",
        Duration::from_secs(1),
        || {
            let dir = tempfile::tempdir().unwrap();
            let d = dir.path();
            let table = table_path();
            let table = table.to_str().unwrap();
            let cases = [
                ("4,4,4,4,4", "R(4,4,4,4,4) >= 1372"),
                ("5,5,5,5,5", "R(5,5,5,5,5) >= 7329"),
                ("6,6,6,6", "R(6,6,6,6) >= 5346"),
                ("7,7,7,7", "R(7,7,7,7) >= 19261"),
                ("3,3,3,11", "R(3,3,3,11) >= 437"),
            ];
            for (target, expected) in cases {
                let out = run(&["bound", "--target", target, "--table", table], d);
                assert_exit(&out, 0, &format!("bound --target {target}"));
                let stdout = stdout_of(&out);
                assert_eq!(
                    stdout.lines().next(),
                    Some(expected),
                    "target {target} printed {stdout}"
                );
            }
        },
    );
}
