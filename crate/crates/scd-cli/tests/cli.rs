//! End-to-end runs of the binary: exit codes, certificate round-trips,
//! and planted violations.

use std::path::Path;
use std::process::{Command, Output};

fn scd() -> Command {
    Command::new(env!("CARGO_BIN_EXE_scd"))
}

fn run(args: &[&str]) -> Output {
    scd().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn table_prints_the_bound_row() {
    let out = run(&["table", "--max", "11"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("b_n: 1 2 2 3 3 4 4 5 5 6 6"), "{text}");
    assert!(
        text.contains("a_n: 1 2 3 6 10 20 35 70 126 252 462"),
        "{text}"
    );
    assert!(text.contains("c_n: 1 1 1 2 2 4 5 10 14 26 42"), "{text}");
}

#[test]
fn table_prints_profiles() {
    let out = run(&["table", "--max", "7"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("profile n=7: 8x1 6x6 4x14 2x14"));
}

#[test]
fn generate_and_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for n in 2..=11u32 {
        let file = dir.path().join(format!("std{n}.txt"));
        let out = run(&[
            "generate",
            "--construction",
            "standard",
            "-n",
            &n.to_string(),
            "-o",
            path_str(&file),
        ]);
        assert!(out.status.success(), "generate n={n}");
        let out = run(&["verify", "--check", "scd", path_str(&file)]);
        assert!(out.status.success(), "verify n={n}: {}", stdout(&out));
        assert!(stdout(&out).contains("PASS scd[1]"));
    }
}

#[test]
fn generated_necklace_constructions_verify_unimodal() {
    let dir = tempfile::tempdir().unwrap();
    let mut cases: Vec<(&str, u32)> = [2u32, 3, 5, 7, 11].iter().map(|&n| ("gks", n)).collect();
    cases.extend((1..=11u32).map(|n| ("jordan", n)));
    for (construction, n) in cases {
        let file = dir.path().join(format!("{construction}{n}.txt"));
        let out = run(&[
            "generate",
            "--construction",
            construction,
            "-n",
            &n.to_string(),
            "-o",
            path_str(&file),
        ]);
        assert!(out.status.success(), "{construction} n={n}");
        let out = run(&["verify", "--check", "unimodal", path_str(&file)]);
        assert!(out.status.success(), "{construction} n={n}");
        // round-trip: unrolled, it verifies as an SCD of the cube
        let cube = dir.path().join(format!("{construction}{n}_cube.txt"));
        let out = run(&[
            "generate",
            "--construction",
            construction,
            "-n",
            &n.to_string(),
            "--unroll",
            "-o",
            path_str(&cube),
        ]);
        assert!(out.status.success(), "{construction} n={n} unroll");
        let out = run(&["verify", "--check", "scd", path_str(&cube)]);
        assert!(out.status.success(), "{construction} n={n} cube verify");
    }
}

#[test]
fn gks_rejects_composites_with_an_explanation() {
    let out = run(&["generate", "--construction", "gks", "-n", "6"]);
    assert_eq!(out.status.code(), Some(4));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("prime"), "{err}");
}

#[test]
fn unrolled_gks_verifies_as_scd() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("q7.txt");
    let out = run(&[
        "generate",
        "--construction",
        "gks",
        "-n",
        "7",
        "--unroll",
        "-o",
        path_str(&file),
    ]);
    assert!(out.status.success());
    let out = run(&["verify", "--check", "scd", path_str(&file)]);
    assert!(out.status.success());
}

#[test]
fn almost_orthogonal_verification_accepts_one_or_two_files() {
    let dir = tempfile::tempdir().unwrap();
    let both = dir.path().join("std7both.txt");
    let out = run(&[
        "generate",
        "--construction",
        "standard",
        "-n",
        "7",
        "--complement",
        "-o",
        path_str(&both),
    ]);
    assert!(out.status.success());
    let out = run(&["verify", "--check", "almost-orthogonal", path_str(&both)]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("PASS almost-orthogonal[1,2]"));

    // split into two files: chop the certificate at the second header
    let text = std::fs::read_to_string(&both).unwrap();
    let split = text.find("SCD 2").unwrap();
    let head: String = text[..split].to_string();
    let tail = format!("# n=7\n# kind=cube\nSCD 1\n{}", &text[split + 6..]);
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    std::fs::write(&a, head).unwrap();
    std::fs::write(&b, tail).unwrap();
    let out = run(&[
        "verify",
        "--check",
        "almost-orthogonal",
        path_str(&a),
        path_str(&b),
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
}

#[test]
fn planted_violations_never_exit_zero() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("q5.txt");
    let out = run(&[
        "generate",
        "--construction",
        "standard",
        "-n",
        "5",
        "-o",
        path_str(&file),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&file).unwrap();

    // drop one element from the longest chain
    let broken = text.replace("00000 10000 11000", "00000 11000");
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, &broken).unwrap();
    let out = run(&["verify", "--check", "scd", path_str(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL scd[1] witness="));

    // a decomposition is never orthogonal to itself
    let out = run(&[
        "verify",
        "--check",
        "orthogonal",
        path_str(&file),
        path_str(&file),
    ]);
    assert_eq!(out.status.code(), Some(1));

    // duplicated decompositions share every edge
    let out = run(&[
        "verify",
        "--check",
        "edge-disjoint",
        path_str(&file),
        path_str(&file),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn parse_errors_exit_four_with_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "# n=4\n# kind=cube\nSCD 1\n0000 10000\n").unwrap();
    let out = run(&["verify", "--check", "scd", path_str(&bad)]);
    assert_eq!(out.status.code(), Some(4));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("line 4"), "{err}");
}

#[test]
fn dimension_mismatch_across_files_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    run(&[
        "generate",
        "--construction",
        "standard",
        "-n",
        "4",
        "-o",
        path_str(&a),
    ]);
    run(&[
        "generate",
        "--construction",
        "standard",
        "-n",
        "5",
        "-o",
        path_str(&b),
    ]);
    let out = run(&[
        "verify",
        "--check",
        "orthogonal",
        path_str(&a),
        path_str(&b),
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn search_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    // the capacity bound makes four edge-disjoint families of dimension 6
    // unsatisfiable
    let out = run(&["search", "-n", "6", "-s", "4", "--mode", "edge", "--raw"]);
    assert_eq!(out.status.code(), Some(2));

    // two edge-disjoint SCDs of Q_5 exist
    let found = dir.path().join("q5pair.txt");
    let out = run(&[
        "search",
        "-n",
        "5",
        "-s",
        "2",
        "--mode",
        "edge",
        "-o",
        path_str(&found),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["verify", "--check", "edge-disjoint", path_str(&found)]);
    assert!(out.status.success(), "{}", stdout(&out));
}

#[test]
fn search_uses_an_external_solver_when_told() {
    use std::io::Write;
    use std::os::unix::fs::PermissionsExt;
    let dir = tempfile::tempdir().unwrap();
    // a fake solver that always reports unsatisfiable: the search must
    // trust it and exit 2
    let fake = dir.path().join("fake_unsat.sh");
    let mut f = std::fs::File::create(&fake).unwrap();
    f.write_all(b"#!/bin/sh\nexit 20\n").unwrap();
    drop(f);
    let mut perms = std::fs::metadata(&fake).unwrap().permissions();
    perms.set_mode(0o755);
    std::fs::set_permissions(&fake, perms).unwrap();
    let out = run(&[
        "search",
        "-n",
        "5",
        "-s",
        "2",
        "--mode",
        "edge",
        "--solver",
        path_str(&fake),
    ]);
    assert_eq!(out.status.code(), Some(2));

    // a crashing solver surfaces as an error, not as unsatisfiable
    let crash = dir.path().join("crash.sh");
    let mut f = std::fs::File::create(&crash).unwrap();
    f.write_all(b"#!/bin/sh\nexit 1\n").unwrap();
    drop(f);
    let mut perms = std::fs::metadata(&crash).unwrap().permissions();
    perms.set_mode(0o755);
    std::fs::set_permissions(&crash, perms).unwrap();
    let out = run(&[
        "search",
        "-n",
        "5",
        "-s",
        "2",
        "--mode",
        "edge",
        "--solver",
        path_str(&crash),
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn scd_solver_env_var_selects_the_default_backend() {
    use std::io::Write;
    use std::os::unix::fs::PermissionsExt;
    let dir = tempfile::tempdir().unwrap();
    let fake = dir.path().join("fake_unsat.sh");
    let mut f = std::fs::File::create(&fake).unwrap();
    f.write_all(b"#!/bin/sh\nexit 20\n").unwrap();
    drop(f);
    let mut perms = std::fs::metadata(&fake).unwrap().permissions();
    perms.set_mode(0o755);
    std::fs::set_permissions(&fake, perms).unwrap();
    let out = scd()
        .args(["search", "-n", "5", "-s", "2", "--mode", "edge"])
        .env("SCD_SOLVER", path_str(&fake))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn convert_to_orthogonal() {
    let dir = tempfile::tempdir().unwrap();
    let pair = dir.path().join("pair.txt");
    let out = run(&[
        "generate",
        "--construction",
        "standard",
        "-n",
        "6",
        "--complement",
        "-o",
        path_str(&pair),
    ]);
    assert!(out.status.success());
    let ortho = dir.path().join("ortho.txt");
    let out = run(&[
        "convert",
        "--to-orthogonal",
        path_str(&pair),
        "-o",
        path_str(&ortho),
    ]);
    assert!(out.status.success());
    let out = run(&["verify", "--check", "orthogonal", path_str(&ortho)]);
    assert!(out.status.success(), "{}", stdout(&out));
}

#[test]
fn good_check_prints_the_census() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("q7pair.txt");
    let out = run(&[
        "generate",
        "--construction",
        "gks",
        "-n",
        "7",
        "--unroll",
        "--complement",
        "-o",
        path_str(&file),
    ]);
    assert!(out.status.success());
    let out = run(&["verify", "--check", "good", path_str(&file)]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("PASS good"));
    assert!(text.contains("component:"));
}
