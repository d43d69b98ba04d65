//! End-to-end tests against the built binary: exit-code contract,
//! spec-file parsing, CSV shapes, and byte-identical reports across
//! repeated runs.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_unikit")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("spawn unikit")
}

fn write(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn catalog_spec(dir: &Path, file: &str, instance: &str, operator: &str) -> PathBuf {
    write(
        dir,
        file,
        &format!("[operator]\nbuilder = catalog\ninstance = {instance}\noperator = {operator}\n"),
    )
}

#[test]
fn verify_catalog_passes_and_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let out1 = dir.path().join("r1.json");
    let out2 = dir.path().join("r2.json");
    let o1 = run(&["verify-catalog", "--grid", "100", "--out", out1.to_str().unwrap()]);
    assert_eq!(o1.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&o1.stderr));
    let o2 = run(&["verify-catalog", "--grid", "100", "--out", out2.to_str().unwrap()]);
    assert_eq!(o2.status.code(), Some(0));
    let r1 = std::fs::read(&out1).unwrap();
    let r2 = std::fs::read(&out2).unwrap();
    assert!(!r1.is_empty());
    assert_eq!(r1, r2, "reports differ between consecutive runs");
}

#[test]
fn verify_catalog_single_instance_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("relations.csv");
    let o = run(&["verify-catalog", "--only", "example1", "--grid", "100", "--csv", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let rows = std::fs::read_to_string(&csv).unwrap();
    assert!(rows.starts_with("instance,relation,pass,residual\n"));
    assert!(rows.lines().skip(1).all(|l| l.starts_with("example1,")));
}

#[test]
fn verify_catalog_unknown_instance_is_usage_error() {
    let o = run(&["verify-catalog", "--only", "nosuch"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn axioms_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "drastic.ini", "[operator]\nbuilder = drastic-band\ne = 0.5\n");
    let o = run(&["axioms", "--op", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&o.stderr));

    // A wrong neutral claim fails the analysis with a witness.
    let bad = write(dir.path(), "corrupted.ini", "[operator]\nbuilder = drastic-band\ne = 0.5\nneutral = 0.4\n");
    let o = run(&["axioms", "--op", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["pass"], serde_json::Value::Bool(false));
    assert!(report["payload"]["neutral"]["witness"].as_array().is_some_and(|w| !w.is_empty()));

    // A missing builder key is a parse error carrying the line number.
    let missing = write(dir.path(), "missing.ini", "[operator]\nbuilder = drastic-band\n");
    let o = run(&["axioms", "--op", missing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));

    // Unknown keys are rejected.
    let unknown = write(dir.path(), "unknown.ini", "[operator]\nbuilder = drastic-band\ne = 0.5\nfoo = 1\n");
    let o = run(&["axioms", "--op", unknown.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown key `foo`"));
}

#[test]
fn axioms_classifies_a_negation_spec() {
    let dir = tempfile::tempdir().unwrap();
    let neg = write(dir.path(), "sugeno.ini", "[negation]\nbuilder = sugeno\nlambda = 2\n");
    let o = run(&["axioms", "--op", neg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["payload"]["is_strong"], serde_json::Value::Bool(true));
}

fn count_valid(csv: &str) -> (usize, usize) {
    let mut valid = 0;
    let mut total = 0;
    for line in csv.lines().skip(1) {
        if line.is_empty() {
            continue;
        }
        total += 1;
        if line.ends_with(",true") {
            valid += 1;
        }
    }
    (valid, total)
}

#[test]
fn cuts_of_the_drastic_band_have_one_valid_alpha() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "drastic.ini", "[operator]\nbuilder = drastic-band\ne = 0.5\n");
    let out = dir.path().join("cuts.csv");
    let o = run(&["cuts", "--op", spec.to_str().unwrap(), "--role", "uninorm-cut", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let (valid, total) = count_valid(&std::fs::read_to_string(&out).unwrap());
    assert_eq!((valid, total), (1, 99));
    assert_eq!(String::from_utf8_lossy(&o.stdout), "valid 1 of 99\n");
}

#[test]
fn cuts_of_the_representable_uninorm_are_all_valid() {
    let dir = tempfile::tempdir().unwrap();
    let spec = catalog_spec(dir.path(), "u1.ini", "example1", "U1");
    let out = dir.path().join("cuts.csv");
    let o = run(&["cuts", "--op", spec.to_str().unwrap(), "--role", "uninorm-cut", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let (valid, total) = count_valid(&std::fs::read_to_string(&out).unwrap());
    assert_eq!((valid, total), (99, 99));
}

#[test]
fn cuts_of_the_extension_instance_at_declared_alphas() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "equf.ini", "[operator]\nbuilder = equf\n");
    let out = dir.path().join("cuts.csv");
    let o = run(&[
        "cuts",
        "--op",
        spec.to_str().unwrap(),
        "--role",
        "uninorm-cut",
        "--alphas",
        "0.375,0.5,0.6",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let (valid, total) = count_valid(&std::fs::read_to_string(&out).unwrap());
    assert_eq!((valid, total), (2, 3));
}

#[test]
fn extract_recovers_the_second_representation() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("rep");
    let o = run(&[
        "extract",
        "--catalog",
        "example1:I1",
        "--alpha",
        "0.25",
        "--grid",
        "100",
        "--out-dir",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    // The recovered operator matches 3xy / (3xy + (1-x)(1-y)).
    let u_csv = std::fs::read_to_string(out_dir.join("u_star.csv")).unwrap();
    let mut worst: f64 = 0.0;
    for line in u_csv.lines().skip(1) {
        let v: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
        let (x, y, got) = (v[0], v[1], v[2]);
        let reference = if (x == 0.0 && y == 1.0) || (x == 1.0 && y == 0.0) {
            1.0
        } else {
            let num = 3.0 * x * y;
            num / (num + (1.0 - x) * (1.0 - y))
        };
        worst = worst.max((got - reference).abs());
    }
    assert!(worst <= 1e-9, "recovered operator differs from the closed form by {worst}");
    // The recovered negation matches (1-x)/(1+2x).
    let n_csv = std::fs::read_to_string(out_dir.join("n_star.csv")).unwrap();
    for line in n_csv.lines().skip(1) {
        let v: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
        let reference = (1.0 - v[0]) / (1.0 + 2.0 * v[0]);
        assert!((v[1] - reference).abs() <= 1e-9);
    }
}

#[test]
fn extract_rejects_an_invalid_cut() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("rep");
    let o = run(&[
        "extract",
        "--catalog",
        "step-negation:I1",
        "--alpha",
        "0.3",
        "--grid",
        "100",
        "--out-dir",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["payload"]["valid"], serde_json::Value::Bool(false));
}

#[test]
fn equal_on_the_paired_implications_and_on_distinct_uninorms() {
    let dir = tempfile::tempdir().unwrap();
    let i1 = catalog_spec(dir.path(), "i1.ini", "example1", "I1");
    let i2 = catalog_spec(dir.path(), "i2.ini", "example1", "I2");
    let o = run(&[
        "equal",
        "--a",
        i1.to_str().unwrap(),
        "--b",
        i2.to_str().unwrap(),
        "--exclude",
        "0,0;1,1",
        "--tol",
        "1e-12",
        "--grid",
        "100",
    ]);
    assert_eq!(o.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&o.stderr));

    let u3 = catalog_spec(dir.path(), "u3.ini", "u3u4", "U3");
    let u4 = catalog_spec(dir.path(), "u4.ini", "u3u4", "U4");
    let o = run(&["equal", "--a", u3.to_str().unwrap(), "--b", u4.to_str().unwrap(), "--grid", "100"]);
    assert_eq!(o.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    // The operators agree outside ]1/4,3/4[^2 and the gap at (0.5,0.5)
    // is 0.125, so the worst witness lies strictly inside the band.
    assert!(report["payload"]["max_residual"].as_f64().unwrap() >= 0.125);
    let witness = report["payload"]["witness"].as_array().unwrap();
    for w in witness {
        let v = w.as_f64().unwrap();
        assert!(v > 0.25 && v < 0.75, "witness {witness:?} outside the band");
    }
}

#[test]
fn sample_shape_and_bit_exact_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "drastic.ini", "[operator]\nbuilder = drastic-band\ne = 0.5\n");
    let first = dir.path().join("s1.csv");
    let o = run(&["sample", "--op", spec.to_str().unwrap(), "--grid", "4", "--out", first.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(&first).unwrap();
    assert_eq!(csv.lines().count(), 26); // header + (n+1)^2 rows
    assert!(csv.starts_with("x,y,value\n"));

    // Ingest the sample and re-sample at the same grid: byte-identical.
    let sampled = write(
        dir.path(),
        "sampled.ini",
        &format!("[operator]\nbuilder = sampled\nfile = {}\n", first.display()),
    );
    let second = dir.path().join("s2.csv");
    let o = run(&["sample", "--op", sampled.to_str().unwrap(), "--grid", "4", "--out", second.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read(&first).unwrap(), std::fs::read(&second).unwrap());
}

#[test]
fn conjugate_shift_builder_matches_the_catalog_operator() {
    let dir = tempfile::tempdir().unwrap();
    let shift = write(
        dir.path(),
        "shift.ini",
        "[operator]\nbuilder = conjugate-shift\nbase = power-band\nw = 0.7071067811865476\nz = 0.25\n",
    );
    let reference = catalog_spec(dir.path(), "u2.ini", "nonc-power", "U2");
    let o = run(&["equal", "--a", shift.to_str().unwrap(), "--b", reference.to_str().unwrap(), "--grid", "100", "--tol", "1e-12"]);
    assert_eq!(o.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn band_ordinal_sum_builder_matches_the_catalog_operator() {
    let dir = tempfile::tempdir().unwrap();
    let osum = write(
        dir.path(),
        "osum.ini",
        "[operator]\nbuilder = band-ordinal-sum\ninner = representable\nk = 1\na = 0.25\nd = 0.75\nouter = minmax\n",
    );
    let reference = catalog_spec(dir.path(), "u3.ini", "u3u4", "U3");
    let o = run(&["equal", "--a", osum.to_str().unwrap(), "--b", reference.to_str().unwrap(), "--grid", "100", "--tol", "1e-12"]);
    assert_eq!(o.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn implication_cuts_flag_the_natural_negation_as_a_step() {
    // The cut at 0 of the representable implication is 1 at x = 0 and 0
    // elsewhere; interior cuts are continuous negations.
    let dir = tempfile::tempdir().unwrap();
    let spec = catalog_spec(dir.path(), "i1.ini", "example1", "I1");
    let out = dir.path().join("cuts.csv");
    let o = run(&[
        "cuts",
        "--op",
        spec.to_str().unwrap(),
        "--role",
        "implication-cut",
        "--alphas",
        "0,0.25,0.5,0.9",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let (valid, total) = count_valid(&std::fs::read_to_string(&out).unwrap());
    assert_eq!((valid, total), (3, 4));
}

#[test]
fn table_negation_classifies_as_strict() {
    let dir = tempfile::tempdir().unwrap();
    let neg = write(dir.path(), "table.ini", "[negation]\nbuilder = table\npoints = 0:1;0.3:0.8;0.7:0.1;1:0\n");
    let o = run(&["axioms", "--op", neg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["payload"]["is_strict"], serde_json::Value::Bool(true));
}

/// Criterion: two consecutive full verify-catalog runs produce
/// byte-identical reports (stdout path included).
#[test]
fn full_reports_are_deterministic_on_stdout() {
    println!("criterion 11: checking byte-identical consecutive runs");
    let o1 = run(&["verify-catalog", "--grid", "60"]);
    let o2 = run(&["verify-catalog", "--grid", "60"]);
    assert_eq!(o1.status.code(), Some(0));
    assert_eq!(o1.stdout, o2.stdout);
    println!("criterion 11: PASS");
}
