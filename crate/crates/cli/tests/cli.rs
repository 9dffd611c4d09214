use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use espectra::format::{parse_tensor, system_to_json, tensor_to_json};
use espectra::generate::{tangent_cubic, tangent_cubic_z_system};
use espectra::invariants::binary_q_discriminant;
use espectra::{Parity, SymmetricTensor};
use espectra_cli::RunReport;
use num_complex::Complex64;
use num_traits::Zero;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn espectra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_espectra"))
        .args(args)
        .env_remove("ESPECTRA_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn report(out: &Output) -> RunReport {
    RunReport::from_json(&stdout(out)).expect("report parses")
}

/// The report JSON with the timings removed.
fn without_timings(out: &Output) -> serde_json::Value {
    let mut v: serde_json::Value = serde_json::from_str(&stdout(out)).unwrap();
    v.as_object_mut().unwrap().remove("timings");
    v
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn fixtures_match_generators() {
    let x = std::fs::read_to_string(fixture("ternary_cubic_x.json")).unwrap();
    assert_eq!(x.trim_end(), tensor_to_json(&tangent_cubic()));
    let z = std::fs::read_to_string(fixture("ternary_cubic_z_system.json")).unwrap();
    assert_eq!(
        z.trim_end(),
        system_to_json(&tangent_cubic_z_system(), Parity::Odd, 14)
    );
}

#[test]
fn generate_round_trips() {
    for (kind, n, d, seed) in [
        ("random", "2", "3", "1"),
        ("fermat", "1", "3", "0"),
        ("tangent", "1", "4", "7"),
    ] {
        let out = espectra(&[
            "generate", "--kind", kind, "--n", n, "--d", d, "--seed", seed,
        ]);
        assert_eq!(out.status.code(), Some(0));
        let text = stdout(&out);
        let f = parse_tensor(&text).unwrap();
        assert_eq!(tensor_to_json(&f), text.trim_end(), "{kind}");
        let again = espectra(&[
            "generate", "--kind", kind, "--n", n, "--d", d, "--seed", seed,
        ]);
        assert_eq!(again.stdout, out.stdout);
    }
}

#[test]
fn generate_examples() {
    let f = parse_tensor(&stdout(&espectra(&[
        "generate", "--kind", "fermat", "--n", "1", "--d", "3",
    ])))
    .unwrap();
    assert_eq!(f.poly().len(), 2);
    let out = espectra(&[
        "generate", "--kind", "tangent", "--n", "1", "--d", "4", "--seed", "7",
    ]);
    let f = parse_tensor(&stdout(&out)).unwrap();
    assert!(binary_q_discriminant(&f).unwrap().b0.is_zero());
}

#[test]
fn reports_round_trip() {
    let out = espectra(&[
        "eigen",
        "--input",
        fixture("ternary_cubic_x.json").to_str().unwrap(),
    ]);
    let text = stdout(&out);
    let parsed = RunReport::from_json(&text).unwrap();
    assert_eq!(parsed.to_json(), text.trim_end());
    assert_eq!(RunReport::from_json(&parsed.to_json()).unwrap(), parsed);
}

#[test]
fn runs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let text = stdout(&espectra(&[
        "generate", "--kind", "random", "--n", "2", "--d", "3", "--seed", "5",
    ]));
    let path = write_temp(&dir, "f.json", &text);
    for args in [
        vec!["eigen", "--input", &path],
        vec!["echar", "--input", &path],
        vec!["verify", "--suite", "1,3", "--samples", "4", "--seed", "2"],
    ] {
        let a = espectra(&args);
        let b = espectra(&args);
        assert_eq!(without_timings(&a), without_timings(&b), "{args:?}");
    }
}

#[test]
fn echar_examples() {
    let out = espectra(&[
        "echar",
        "--input",
        fixture("ternary_cubic_z_system.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(
        (r.psi_degree, r.n_expected, r.deficient),
        (Some(12), Some(14), Some(true))
    );
    assert_eq!(r.input_digest.as_ref().map(String::len), Some(64));

    let dir = tempfile::tempdir().unwrap();
    let quartic = tensor_to_json(&SymmetricTensor::quadric_power(3, 2).unwrap());
    let r = report(&espectra(&[
        "echar",
        "--input",
        &write_temp(&dir, "q.json", &quartic),
    ]));
    assert_eq!(r.identically_zero, Some(true));

    let binary = stdout(&espectra(&[
        "generate", "--kind", "random", "--n", "1", "--d", "4", "--seed", "3",
    ]));
    let r = report(&espectra(&[
        "echar",
        "--input",
        &write_temp(&dir, "b.json", &binary),
    ]));
    assert_eq!(r.psi_degree, Some(4));
    assert_eq!(r.psi_coeffs.unwrap().len(), 5);
}

#[test]
fn eigen_examples() {
    let dir = tempfile::tempdir().unwrap();
    let ones = tensor_to_json(
        &SymmetricTensor::fermat(&vec![espectra::ExactScalar::from_int(1); 3], 3).unwrap(),
    );
    let path = write_temp(&dir, "ones.json", &ones);
    for method in ["fermat", "charpoly"] {
        let r = report(&espectra(&["eigen", "--input", &path, "--method", method]));
        assert_eq!(r.pairs.unwrap().len(), 7, "{method}");
    }

    let diag = "{\"n\": 2, \"d\": 2, \"coeffs\": [{\"exp\": [2,0,0], \"re\": \"2\", \"im\": \"0\"}, \
                {\"exp\": [0,2,0], \"re\": \"-1\", \"im\": \"0\"}, {\"exp\": [0,0,2], \"re\": \"5\", \"im\": \"0\"}]}";
    let r = report(&espectra(&[
        "eigen",
        "--input",
        &write_temp(&dir, "diag.json", diag),
    ]));
    assert_eq!(r.pairs.unwrap().len(), 3);
    assert!((r.product.unwrap().value().re + 10.0).abs() < 1e-9);

    let out = espectra(&[
        "eigen",
        "--input",
        fixture("ternary_cubic_x.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r.pairs.unwrap().len(), 6);
    assert!(r.warnings.iter().any(|w| w.contains("deficient")));
    assert_eq!(r.certificate.map(|c| c.len()), Some(3));
}

#[test]
fn verify_examples() {
    let r = report(&espectra(&["verify", "--suite", "1,4", "--samples", "10"]));
    assert!(r.verdict.unwrap().passed);

    let r = report(&espectra(&["verify", "--suite", "(1,2)", "--samples", "3"]));
    for row in r.theorem.unwrap() {
        assert_eq!(row.vieta, row.resultant);
    }

    let out = espectra(&[
        "verify",
        "--input",
        fixture("ternary_cubic_x.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(5));
    let r = report(&out);
    let verdict = r.verdict.unwrap();
    assert!(!verdict.passed && verdict.checks[0].detail.starts_with("HYPOTHESIS_FAILED"));
    let x: Vec<_> = r.certificate.unwrap().iter().map(|c| c.value()).collect();
    let k = x[1];
    let expected = [
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, -1.0),
    ];
    assert!(x
        .iter()
        .zip(expected)
        .all(|(v, e)| (v - k * e).norm() < 1e-10));
}

#[test]
fn exit_code_parse_and_flags() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_temp(
        &dir,
        "bad.json",
        "{\"n\": 1, \"d\": 3, \"coeffs\": [{\"exp\": [2,0], \"re\": \"1\", \"im\": \"0\"}]}",
    );
    assert_eq!(espectra(&["echar", "--input", &bad]).status.code(), Some(2));
    let junk = write_temp(&dir, "junk.json", "not json");
    assert_eq!(
        espectra(&["eigen", "--input", &junk]).status.code(),
        Some(2)
    );
    assert_eq!(
        espectra(&["echar", "--input", "/nonexistent/f.json"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        espectra(&["generate", "--kind", "tangent", "--n", "3", "--d", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        espectra(&["generate", "--kind", "bogus", "--n", "1", "--d", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        espectra(&["verify", "--suite", "1-3"]).status.code(),
        Some(2)
    );
    assert_eq!(
        espectra(&["invariants", "--n", "0", "--d", "3"])
            .status
            .code(),
        Some(2)
    );
    let cubic = tensor_to_json(&espectra::generate::random_tensor(1, 3, 0).unwrap());
    let path = write_temp(&dir, "c.json", &cubic);
    assert_eq!(
        espectra(&["eigen", "--input", &path, "--method", "fermat"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn exit_code_resultant() {
    let dir = tempfile::tempdir().unwrap();
    let big = stdout(&espectra(&[
        "generate", "--kind", "fermat", "--n", "4", "--d", "5",
    ]));
    let path = write_temp(&dir, "big.json", &big);
    let out = espectra(&["echar", "--input", &path]);
    assert_eq!(
        out.status.code(),
        Some(3),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn exit_code_recovery() {
    let dir = tempfile::tempdir().unwrap();
    let tangent = stdout(&espectra(&[
        "generate", "--kind", "tangent", "--n", "1", "--d", "4", "--seed", "7",
    ]));
    let path = write_temp(&dir, "t.json", &tangent);
    let out = espectra(&["eigen", "--input", &path, "--method", "binary"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(!report(&out).warnings.is_empty());

    let irregular = tensor_to_json(&espectra::generate::irregular_tensor(1, 3, 0).unwrap());
    let path = write_temp(&dir, "irr.json", &irregular);
    assert_eq!(
        espectra(&["eigen", "--input", &path]).status.code(),
        Some(4)
    );
}

#[test]
fn thread_variable_is_honored() {
    let run = |value: &str| {
        Command::new(env!("CARGO_BIN_EXE_espectra"))
            .args(["invariants", "--n", "2", "--d", "3"])
            .env("ESPECTRA_THREADS", value)
            .output()
            .unwrap()
    };
    assert_eq!(run("1").status.code(), Some(0));
    assert_eq!(run("zero").status.code(), Some(2));
    assert_eq!(run("0").status.code(), Some(2));
}
