//! Command-line front end: each subcommand reads a tensor (or λ-system) JSON
//! file, runs one pipeline and returns a [`RunReport`].
//!
//! Exit codes: 0 success, 2 bad input or flags, 3 resultant failure,
//! 4 eigenpair recovery failure, 5 verification failure.

pub mod report;

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use espectra::echar::{e_char_poly_of_system, expected_count, find_deficit_solution};
use espectra::format::{parse_input, tensor_to_json, Input};
use espectra::generate::{fermat_tensor, random_tensor, tangent_tensor};
use espectra::invariants::{constant_term_ratio, invariant_report, verify_with_psi};
use espectra::spectra::{binary_eigenpairs, eigenpairs_from_charpoly, fermat_eigenpairs};
use espectra::{e_char_poly, ECharPoly, EigenPair, Error, FermatSpec, Parity, SymmetricTensor};
use num_complex::Complex64;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

pub use report::RunReport;
use report::{Check, ExactJson, Float, InvariantsJson, PairRow, TheoremRow, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESULTANT: i32 = 3;
pub const EXIT_RECOVERY: i32 = 4;
pub const EXIT_VERIFY: i32 = 5;

/// Environment variable bounding the worker pool size.
pub const THREADS_VAR: &str = "ESPECTRA_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "espectra",
    version,
    about = "E-eigenpairs and E-characteristic polynomials of symmetric tensors"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact characteristic polynomial of a tensor or λ-system.
    Echar {
        #[arg(long)]
        input: PathBuf,
    },
    /// Eigenpair table.
    Eigen {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Charpoly)]
        method: Method,
    },
    /// Product-of-eigenvalues verification for one tensor or a random suite.
    Verify {
        #[arg(long, required_unless_present = "suite", conflicts_with = "suite")]
        input: Option<PathBuf>,
        /// `n,d`, optionally parenthesized.
        #[arg(long, value_parser = parse_suite)]
        suite: Option<(usize, u32)>,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Test tensor JSON on stdout.
    Generate {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Closed-form counts and degrees for `(n, d)`.
    Invariants {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Charpoly,
    Binary,
    Fermat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Random,
    Fermat,
    Tangent,
}

fn parse_suite(text: &str) -> Result<(usize, u32), String> {
    let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
    let (n, d) = inner
        .split_once(',')
        .ok_or_else(|| format!("expected n,d, got {text:?}"))?;
    let n = n.trim().parse().map_err(|e| format!("bad n: {e}"))?;
    let d = d.trim().parse().map_err(|e| format!("bad d: {e}"))?;
    Ok((n, d))
}

/// What a command produced: the text for stdout, human-readable notes for
/// stderr and the exit code.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub notes: Vec<String>,
    pub code: i32,
}

impl Outcome {
    fn report(report: &RunReport, notes: Vec<String>, code: i32) -> Self {
        Self {
            stdout: report.to_json(),
            notes,
            code,
        }
    }

    fn failure(code: i32, message: impl Into<String>) -> Self {
        Self {
            stdout: String::new(),
            notes: vec![message.into()],
            code,
        }
    }
}

/// Sizes the global worker pool from [`THREADS_VAR`] when it is set.
pub fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| format!("{THREADS_VAR} must be a positive integer, got {value:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| e.to_string())
}

/// Runs one parsed command line; `argv` is echoed into the report.
pub fn run(cli: Cli, argv: Vec<String>) -> Outcome {
    let mut report = RunReport {
        command: argv,
        ..RunReport::default()
    };
    match cli.command {
        Command::Echar { input } => with_input(&input, &mut report, |input, report| {
            cmd_echar(input, report)
        }),
        Command::Eigen { input, method } => with_input(&input, &mut report, |input, report| {
            cmd_eigen(input, method, report)
        }),
        Command::Verify {
            input: Some(path), ..
        } => with_input(&path, &mut report, |input, report| {
            cmd_verify_input(input, report)
        }),
        Command::Verify {
            suite: Some((n, d)),
            samples,
            seed,
            ..
        } => cmd_verify_suite(n, d, samples, seed, &mut report),
        Command::Verify { .. } => Outcome::failure(EXIT_USAGE, "verify needs --input or --suite"),
        Command::Generate { kind, n, d, seed } => cmd_generate(kind, n, d, seed),
        Command::Invariants { n, d } => cmd_invariants(n, d, &mut report),
    }
}

fn read_input(path: &Path, report: &mut RunReport) -> Result<Input, Outcome> {
    let bytes = std::fs::read(path)
        .map_err(|e| Outcome::failure(EXIT_USAGE, format!("{}: {e}", path.display())))?;
    report.input_digest = Some(hex::encode(Sha256::digest(&bytes)));
    let text = String::from_utf8(bytes)
        .map_err(|e| Outcome::failure(EXIT_USAGE, format!("{}: {e}", path.display())))?;
    parse_input(&text).map_err(|e| Outcome::failure(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn with_input(
    path: &Path,
    report: &mut RunReport,
    body: impl FnOnce(Input, &mut RunReport) -> Outcome,
) -> Outcome {
    match read_input(path, report) {
        Ok(input) => body(input, report),
        Err(outcome) => outcome,
    }
}

fn time<T>(report: &mut RunReport, stage: &str, work: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let value = work();
    report
        .timings
        .insert(stage.to_string(), Float(start.elapsed().as_secs_f64()));
    value
}

fn parity_name(p: Parity) -> String {
    match p {
        Parity::Even => "even".into(),
        Parity::Odd => "odd".into(),
    }
}

fn record_psi(psi: &ECharPoly, report: &mut RunReport) {
    report.psi_coeffs = Some(psi.psi.coeffs().iter().map(ExactJson::from).collect());
    report.parity = Some(parity_name(psi.parity));
    report.psi_degree = psi.degree();
    report.identically_zero = Some(psi.identically_zero);
    report.deficient = Some(psi.deficient);
}

fn deficiency_note(psi: &ECharPoly) -> String {
    match psi.degree() {
        Some(deg) => format!("deficient: deg ψ = {deg} < {}", psi.n_expected),
        None => "deficient: ψ vanishes identically".to_string(),
    }
}

/// Adds the isotropic-eigenvector certificate when `ψ` drops degree.
fn record_deficiency(
    f: &SymmetricTensor,
    psi: &ECharPoly,
    report: &mut RunReport,
    notes: &mut Vec<String>,
) {
    if !psi.deficient {
        return;
    }
    let note = deficiency_note(psi);
    report.warnings.push(note.clone());
    notes.push(note);
    if psi.identically_zero {
        return;
    }
    if let Ok(Some(cert)) = time(report, "certificate", || find_deficit_solution(f)) {
        notes.push(format!("isotropic eigenvector {}", format_vector(&cert.x)));
        report.certificate = Some(cert.x.iter().map(|&v| v.into()).collect());
    }
}

fn format_vector(x: &[Complex64]) -> String {
    let parts: Vec<String> = x
        .iter()
        .map(|v| format!("{:.6}{:+.6}i", v.re, v.im))
        .collect();
    format!("({})", parts.join(", "))
}

fn charpoly_of(f: &SymmetricTensor, report: &mut RunReport) -> Result<ECharPoly, Outcome> {
    time(report, "charpoly", || e_char_poly(f))
        .map_err(|e| Outcome::failure(EXIT_RESULTANT, format!("resultant: {e}")))
}

pub fn cmd_echar(input: Input, report: &mut RunReport) -> Outcome {
    let mut notes = Vec::new();
    let psi = match &input {
        Input::Tensor(f) => match charpoly_of(f, report) {
            Ok(psi) => psi,
            Err(outcome) => return outcome,
        },
        Input::System(s) => match time(report, "charpoly", || {
            e_char_poly_of_system(&s.system, s.parity, s.n_expected)
        }) {
            Ok(psi) => psi,
            Err(e) => return Outcome::failure(EXIT_RESULTANT, format!("resultant: {e}")),
        },
    };
    record_psi(&psi, report);
    report.n_expected = Some(psi.n_expected);
    if psi.identically_zero {
        notes.push("ψ is identically zero".into());
    } else {
        notes.push(format!(
            "ψ has degree {} of expected {}",
            psi.degree().unwrap_or(0),
            psi.n_expected
        ));
    }
    match &input {
        Input::Tensor(f) => record_deficiency(f, &psi, report, &mut notes),
        Input::System(_) if psi.deficient => {
            let note = deficiency_note(&psi);
            report.warnings.push(note.clone());
            notes.push(note);
        }
        Input::System(_) => {}
    }
    Outcome::report(report, notes, EXIT_OK)
}

fn tensor_of(input: Input, command: &str) -> Result<SymmetricTensor, Outcome> {
    match input {
        Input::Tensor(f) => Ok(f),
        Input::System(_) => Err(Outcome::failure(
            EXIT_USAGE,
            format!("{command} needs a tensor, not a system"),
        )),
    }
}

/// `f = Σ a_i x_i^d` read off a tensor whose terms are all pure powers.
fn fermat_spec_of(f: &SymmetricTensor) -> Option<FermatSpec> {
    let mut a = vec![Complex64::new(0.0, 0.0); f.n_vars()];
    for (m, c) in f.poly().terms() {
        let i = m.exps().iter().position(|&e| e == f.degree())?;
        a[i] = c.to_complex();
    }
    FermatSpec::new(a, f.degree()).ok()
}

fn record_pairs(pairs: &[EigenPair], report: &mut RunReport) {
    report.pairs = Some(pairs.iter().map(PairRow::from).collect());
    report.count = Some(pairs.len());
    report.product = Some(pairs.iter().map(|p| p.lambda).product::<Complex64>().into());
}

pub fn cmd_eigen(input: Input, method: Method, report: &mut RunReport) -> Outcome {
    let f = match tensor_of(input, "eigen") {
        Ok(f) => f,
        Err(outcome) => return outcome,
    };
    let mut notes = Vec::new();
    report.n_expected = expected_count(f.n(), f.degree()).try_into().ok();
    let mut code = EXIT_OK;
    match method {
        Method::Charpoly => {
            let psi = match charpoly_of(&f, report) {
                Ok(psi) => psi,
                Err(outcome) => return outcome,
            };
            record_psi(&psi, report);
            record_deficiency(&f, &psi, report, &mut notes);
            if psi.identically_zero {
                record_pairs(&[], report);
                notes.push("no finite spectrum: ψ vanishes identically".into());
                return Outcome::report(report, notes, EXIT_RECOVERY);
            }
            let recovery = match time(report, "recovery", || eigenpairs_from_charpoly(&f, &psi)) {
                Ok(r) => r,
                Err(e) => return Outcome::failure(EXIT_RECOVERY, format!("recovery: {e}")),
            };
            record_pairs(&recovery.pairs, report);
            report.unrecovered = Some(recovery.failures.iter().map(|&l| l.into()).collect());
            for e in recovery.failure_errors() {
                notes.push(e.to_string());
                code = EXIT_RECOVERY;
            }
        }
        Method::Binary => match time(report, "recovery", || binary_eigenpairs(&f)) {
            Ok(pairs) => record_pairs(&pairs, report),
            Err(e) => {
                report.warnings.push(e.to_string());
                return Outcome::report(report, vec![format!("recovery: {e}")], EXIT_RECOVERY);
            }
        },
        Method::Fermat => {
            let Some(spec) = fermat_spec_of(&f) else {
                return Outcome::failure(
                    EXIT_USAGE,
                    "fermat method needs f = Σ a_i x_i^d with every a_i nonzero",
                );
            };
            match time(report, "recovery", || fermat_eigenpairs(&spec)) {
                Ok(spectrum) => {
                    record_pairs(&spectrum.pairs, report);
                    if !spectrum.isotropic.is_empty() {
                        let note = format!(
                            "{} isotropic arrangements skipped",
                            spectrum.isotropic.len()
                        );
                        report.warnings.push(note.clone());
                        notes.push(note);
                    }
                }
                Err(e) => return Outcome::failure(EXIT_RECOVERY, format!("recovery: {e}")),
            }
        }
    }
    notes.push(format!(
        "{} eigenpairs of expected {}",
        report.count.unwrap_or(0),
        report.n_expected.map_or("?".to_string(), |n| n.to_string())
    ));
    Outcome::report(report, notes, code)
}

pub fn cmd_verify_input(input: Input, report: &mut RunReport) -> Outcome {
    let f = match tensor_of(input, "verify") {
        Ok(f) => f,
        Err(outcome) => return outcome,
    };
    let mut notes = Vec::new();
    let psi = match charpoly_of(&f, report) {
        Ok(psi) => psi,
        Err(outcome) => return outcome,
    };
    record_psi(&psi, report);
    report.n_expected = Some(psi.n_expected);
    record_deficiency(&f, &psi, report, &mut notes);
    let check = match time(report, "verify", || verify_with_psi(&f, &psi)) {
        Ok(r) => {
            let row = TheoremRow::new(&r, None);
            let check = Check {
                name: "main_theorem".into(),
                passed: r.passed,
                detail: format!("relative error {:.3e}", r.relative_error),
            };
            report.theorem = Some(vec![row]);
            check
        }
        Err(Error::HypothesisFailed(detail)) => Check {
            name: "hypotheses".into(),
            passed: false,
            detail: format!("HYPOTHESIS_FAILED: {detail}"),
        },
        Err(e) => Check {
            name: "main_theorem".into(),
            passed: false,
            detail: e.to_string(),
        },
    };
    notes.push(format!(
        "{}: {} ({})",
        check.name,
        pass_word(check.passed),
        check.detail
    ));
    finish_verdict(report, vec![check], notes)
}

fn pass_word(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

fn finish_verdict(report: &mut RunReport, checks: Vec<Check>, mut notes: Vec<String>) -> Outcome {
    let verdict = Verdict::from_checks(checks);
    let code = if verdict.passed { EXIT_OK } else { EXIT_VERIFY };
    notes.push(format!("verdict: {}", pass_word(verdict.passed)));
    report.verdict = Some(verdict);
    Outcome::report(report, notes, code)
}

fn usage_check(n: usize, d: u32) -> Result<(), Outcome> {
    if n == 0 || d < 2 {
        return Err(Outcome::failure(
            EXIT_USAGE,
            format!("need n >= 1 and d >= 2, got n = {n}, d = {d}"),
        ));
    }
    Ok(())
}

pub fn cmd_verify_suite(
    n: usize,
    d: u32,
    samples: usize,
    seed: u64,
    report: &mut RunReport,
) -> Outcome {
    if let Err(outcome) = usage_check(n, d) {
        return outcome;
    }
    if samples == 0 {
        return Outcome::failure(EXIT_USAGE, "--samples must be positive");
    }
    let tensors: Vec<(u64, SymmetricTensor)> = match (0..samples as u64)
        .map(|k| random_tensor(n, d, seed + k).map(|f| (seed + k, f)))
        .collect::<espectra::Result<Vec<_>>>()
    {
        Ok(t) => t,
        Err(e) => return Outcome::failure(EXIT_USAGE, e.to_string()),
    };
    let mut notes = Vec::new();
    let mut checks = Vec::new();

    let results: Vec<(u64, espectra::Result<_>)> = time(report, "verify", || {
        tensors
            .par_iter()
            .map(|(s, f)| (*s, espectra::invariants::verify_main_theorem(f)))
            .collect()
    });
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for (s, result) in results {
        match result {
            Ok(r) => {
                if !r.passed {
                    failures.push(format!("seed {s}: relative error {:.3e}", r.relative_error));
                }
                rows.push(TheoremRow::new(&r, Some(s)));
            }
            Err(e) => failures.push(format!("seed {s}: {e}")),
        }
    }
    let passed_rows = rows.iter().filter(|r| r.passed).count();
    checks.push(Check {
        name: "main_theorem".into(),
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("{passed_rows}/{samples} samples")
        } else {
            failures.join("; ")
        },
    });
    report.theorem = Some(rows);

    if samples >= 2 {
        let only: Vec<SymmetricTensor> = tensors.into_iter().map(|(_, f)| f).collect();
        let check = match time(report, "constant_ratio", || constant_term_ratio(&only)) {
            Ok(c) => {
                let detail = format!("c = {c}");
                report.constant_ratio = Some((&c).into());
                Check {
                    name: "constant_term_ratio".into(),
                    passed: true,
                    detail,
                }
            }
            Err(e) => Check {
                name: "constant_term_ratio".into(),
                passed: false,
                detail: e.to_string(),
            },
        };
        checks.push(check);
    }

    let inv = invariant_report(n, d);
    report.invariants = Some(InvariantsJson::from(&inv));
    checks.push(Check {
        name: "invariant_identities".into(),
        passed: true,
        detail: "alpha = beta and 2 phi = (d-2) delta0".into(),
    });
    for c in &checks {
        notes.push(format!(
            "{}: {} ({})",
            c.name,
            pass_word(c.passed),
            c.detail
        ));
    }
    finish_verdict(report, checks, notes)
}

pub fn cmd_generate(kind: Kind, n: usize, d: u32, seed: u64) -> Outcome {
    if let Err(outcome) = usage_check(n, d) {
        return outcome;
    }
    let tensor = match kind {
        Kind::Random => random_tensor(n, d, seed),
        Kind::Fermat => fermat_tensor(n, d, seed),
        Kind::Tangent if n > 2 => {
            return Outcome::failure(EXIT_USAGE, "tangent tensors need n <= 2")
        }
        Kind::Tangent => tangent_tensor(n, d, seed),
    };
    match tensor {
        Ok(f) => Outcome {
            stdout: tensor_to_json(&f),
            notes: Vec::new(),
            code: EXIT_OK,
        },
        Err(e) => Outcome::failure(EXIT_USAGE, e.to_string()),
    }
}

pub fn cmd_invariants(n: usize, d: u32, report: &mut RunReport) -> Outcome {
    if let Err(outcome) = usage_check(n, d) {
        return outcome;
    }
    let inv = time(report, "invariants", || invariant_report(n, d));
    report.invariants = Some(InvariantsJson::from(&inv));
    let notes = vec![format!(
        "N = {}, phi = {}, delta0 = {}",
        inv.count, inv.phi, inv.delta0
    )];
    Outcome::report(report, notes, EXIT_OK)
}
