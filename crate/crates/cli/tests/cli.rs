use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use bentnorm::BoolFun;

const EXAMPLE_G: &str = "x1*x4 + x2*x4 + x3*x4 + x2*x3*x4 + x2*x5 + x3*x5 + x1*x3*x5";
const SIEVE_F: &str = "x1*x2*x4 + x2*x3*x4 + x2*x3*x5 + x1*x4*x5 + x3*x4*x5 + x2*x3*x4*x5 + x1*x4*x6 + x2*x3*x5*x6 + x3*x4*x5*x6 + x1*x2*x7 + x1*x3*x6*x7 + x4*x5*x6*x7";
const SIEVE_Q: &str = "x2*x3 + x1*x5 + x2*x5 + x3*x5 + x3*x7 + x5*x7 + x6*x7";

fn bentnorm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bentnorm"))
        .args(args)
        .env("BENTNORM_WORKERS", "2")
        .env("RUST_LOG", "warn")
        .output()
        .expect("binary runs")
}

fn stdout_ok(args: &[&str]) -> String {
    let out = bentnorm(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn example_hex() -> String {
    let line = stdout_ok(&["spectrum", "--anf", EXAMPLE_G, "--m", "5"]);
    line.split_whitespace().next().unwrap().to_string()
}

fn write_functions(path: &Path, m: usize, hexes: &[&str]) {
    let mut text = format!("m={m}\n");
    for h in hexes {
        text.push_str(h);
        text.push('\n');
    }
    fs::write(path, text).unwrap();
}

#[test]
fn analyze_and_spectrum() {
    let out = stdout_ok(&["analyze", "--anf", EXAMPLE_G, "--m", "5"]);
    assert!(out.contains("m=5 deg=3"), "{out}");
    assert!(out.contains("spectrum=near-bent zeros=16 normality=normal half_degree=0"), "{out}");
    let out = stdout_ok(&["spectrum", "--anf", EXAMPLE_G, "--m", "5"]);
    assert!(out.trim_end().ends_with("near-bent |W|=0:16,8:16"), "{out}");
}

#[test]
fn abnormal_reports_normal_witness() {
    let out = stdout_ok(&["abnormal", "--anf", EXAMPLE_G, "--m", "5"]);
    let fields: Vec<&str> = out.split_whitespace().collect();
    assert_eq!(fields[1], "normal");
    assert_eq!(fields[2], "0");
}

#[test]
fn rdegree_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.hex");
    write_functions(&path, 5, &[&example_hex()]);
    let out = stdout_ok(&["rdegree", "--in", path.to_str().unwrap(), "--r", "3"]);
    assert!(out.contains(" deg_3=0 witness="), "{out}");
    assert!(!bentnorm(&["rdegree", "--in", path.to_str().unwrap(), "--r", "9"]).status.success());
}

#[test]
fn sieve_example() {
    let dir = tempfile::tempdir().unwrap();
    let emitted = dir.path().join("abnormal.hex");
    let out = stdout_ok(&[
        "sieve",
        "--anf",
        SIEVE_F,
        "--m",
        "7",
        "--emit-abnormal",
        emitted.to_str().unwrap(),
    ]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2, "{out}");
    assert!(lines[0].ends_with("|Q(f)|=1"));
    assert_eq!(lines[1].trim(), SIEVE_Q);
    let text = fs::read_to_string(&emitted).unwrap();
    assert_eq!(text.lines().count(), 2);
    let abnormal = stdout_ok(&["abnormal", "--in", emitted.to_str().unwrap()]);
    assert!(abnormal.contains(" abnormal "), "{abnormal}");
}

#[test]
fn expand_with_verification() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("expansions.txt");
    stdout_ok(&[
        "expand",
        "--anf",
        EXAMPLE_G,
        "--m",
        "5",
        "--verify",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    let text = fs::read_to_string(&out_path).unwrap();
    let g = example_hex();
    assert_eq!(text.lines().count(), 384);
    for line in text.lines() {
        let (left, right) = line.split_once(" -> ").unwrap();
        assert_eq!(left, g);
        assert_eq!(right.len(), 16);
    }
    let stdout = stdout_ok(&["expand", "--anf", EXAMPLE_G, "--m", "5"]);
    assert_eq!(stdout, text);
    let tiny = bentnorm(&["expand", "--anf", EXAMPLE_G, "--m", "5", "--budget", "1"]);
    assert!(!tiny.status.success());
    assert!(String::from_utf8_lossy(&tiny.stderr).contains("budget"));
    let not_near_bent = bentnorm(&["expand", "--anf", "x1", "--m", "5"]);
    assert!(!not_near_bent.status.success());
}

/// `h(x) = g(y(x)) + x6 + 1` from the printed coordinates of `y`.
fn ea_pair() -> (String, String) {
    let g = BoolFun::from_anf_str(6, "x1*x4 + x2*x5 + x3*x6 + x1*x2*x3").unwrap();
    let coords: Vec<BoolFun> = [
        "1 + x2 + x4",
        "x1 + x2 + x4 + x6",
        "x2 + x4 + x6",
        "1 + x1 + x2 + x5",
        "x1 + x2",
        "1 + x2 + x3 + x5",
    ]
    .iter()
    .map(|s| BoolFun::from_anf_str(6, s).unwrap())
    .collect();
    let h = BoolFun::from_fn(6, |x| {
        let y = coords
            .iter()
            .enumerate()
            .fold(0u32, |acc, (j, c)| acc | (c.get(x) as u32) << j);
        g.get(y) ^ (x >> 5 & 1 == 1) ^ true
    });
    (g.to_hex(), h.to_hex())
}

#[test]
fn verify_ea_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pair.hex");
    let path = path.to_str().unwrap();
    let (g, h) = ea_pair();
    let cert = "A=1a,3f,20,7,28,6;b=29;a=1 + x6";
    write_functions(Path::new(path), 6, &[&g, &h]);
    assert_eq!(stdout_ok(&["verify-ea", "--in", path, "--cert", cert]).trim(), "equivalent");

    write_functions(Path::new(path), 6, &[&g, &g]);
    let out = bentnorm(&["verify-ea", "--in", path, "--cert", cert]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("counterexample x="));
    let identity = "A=1,2,4,8,10,20;b=0;a=0";
    assert_eq!(stdout_ok(&["verify-ea", "--in", path, "--cert", identity]).trim(), "equivalent");
    let singular = bentnorm(&["verify-ea", "--in", path, "--cert", "A=1,1,4,8,10,20;b=0;a=0"]);
    assert!(!singular.status.success());
}

#[test]
fn campaign_stages() {
    let dir = tempfile::tempdir().unwrap();
    let work = dir.path().join("run");
    let input = dir.path().join("input.hex");
    let g = example_hex();
    write_functions(&input, 5, &[&g, "0f0f00ff", "deadbeef"]);
    stdout_ok(&[
        "campaign",
        "--in",
        input.to_str().unwrap(),
        "--out",
        work.to_str().unwrap(),
        "--stage",
        "sieve",
    ]);
    // every function on 5 variables is normal or weakly normal
    let sieve = fs::read_to_string(work.join("sieve.txt")).unwrap();
    assert_eq!(sieve.lines().filter(|l| l.ends_with("|Q(f)|=0")).count(), 3);

    // seed the dedup stage with near-bent inputs, one repeated up to an affine term
    let shifted = stdout_ok(&["spectrum", "--anf", &format!("{EXAMPLE_G} + x1 + 1"), "--m", "5"]);
    let shifted = shifted.split_whitespace().next().unwrap().to_string();
    write_functions(&work.join("abnormal.hex"), 5, &[&g, &shifted, "deadbeef"]);
    for stage in ["dedup", "expand", "check"] {
        stdout_ok(&["campaign", "--out", work.to_str().unwrap(), "--stage", stage]);
    }
    let near_bent = fs::read_to_string(work.join("near_bent.hex")).unwrap();
    assert_eq!(near_bent.lines().count(), 2, "{near_bent}");
    let expansions = fs::read_to_string(work.join("expansions.txt")).unwrap();
    assert_eq!(expansions.lines().count(), 384);
    let check = fs::read_to_string(work.join("check.txt")).unwrap();
    assert_eq!(check.trim(), "checked=384 abnormal=0");
}

#[test]
fn bad_input_is_reported() {
    let out = bentnorm(&["analyze", "--anf", "x9", "--m", "3"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    let out = bentnorm(&["analyze"]);
    assert!(!out.status.success());
}
