//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Runs without the libtest harness so the lines are always
//! shown.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::Parser;
use espectra::echar::{build_even_system, build_odd_system, expected_count, find_deficit_solution};
use espectra::format::parse_input;
use espectra::generate::{cayley_orthogonal, fermat_coefficients, random_tensor, tangent_cubic};
use espectra::invariants::{
    alpha, beta, binary_q_discriminant, constant_term_ratio, delta0, fermat_product_check,
    gradient_resultant, phi, verify_main_theorem,
};
use espectra::resultant::{resultant, sylvester_resultant};
use espectra::spectra::{
    binary_eigenpairs, eigenpairs_from_charpoly, fermat_eigenpairs, multiset_distance,
};
use espectra::{
    e_char_poly, ExactScalar, FermatSpec, Monomial, MultiPoly, SymmetricTensor, UniPoly,
};
use espectra_cli::{run, Cli, RunReport};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

/// Fails unless `cond` holds; a NaN comparison counts as failure.
macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_str()
        .unwrap()
        .to_string()
}

fn c(n: i64) -> ExactScalar {
    ExactScalar::from_int(n)
}

fn count(n: usize, d: u32) -> usize {
    expected_count(n, d).to_usize().unwrap()
}

fn within(limit: Duration, start: Instant, what: &str) -> Result<f64, String> {
    let elapsed = start.elapsed();
    if elapsed > limit {
        return Err(format!(
            "{what} took {:.1} s, limit {} s",
            elapsed.as_secs_f64(),
            limit.as_secs()
        ));
    }
    Ok(elapsed.as_secs_f64())
}

/// `ψ` of the z-coordinate λ-system, through the `echar` command.
fn criterion_1() -> Outcome {
    const PRINTED: [&str; 7] = [
        "22405379203945800000",
        "1737672597491537284396875",
        "45686609440492531312122181875",
        "538619871002221271247213134552625",
        "2746031584320556852962647720783548350",
        "2137752598886514957981090279414043391031",
        "13843807659909379464027427753236120270069196",
    ];
    let start = Instant::now();
    let path = fixture("ternary_cubic_z_system.json");
    let cli =
        Cli::try_parse_from(["espectra", "echar", "--input", &path]).map_err(|e| e.to_string())?;
    let outcome = run(cli, vec![]);
    ensure!(
        outcome.code == 0,
        "echar exited with {}: {:?}",
        outcome.code,
        outcome.notes
    );
    let report = RunReport::from_json(&outcome.stdout).map_err(|e| e.to_string())?;
    let coeffs = report
        .psi_coeffs
        .ok_or("no psi_coeffs")?
        .iter()
        .map(|c| c.value())
        .collect::<espectra::Result<Vec<_>>>()
        .map_err(|e| e.to_string())?;
    let psi = UniPoly::from_coeffs(coeffs);
    ensure!(
        psi.degree() == Some(12),
        "degree {:?}, expected 12",
        psi.degree()
    );
    let nonzero = psi.coeffs().iter().filter(|c| !c.is_zero()).count();
    ensure!(nonzero == 7, "{nonzero} nonzero coefficients, expected 7");

    // printed list runs from λ^12 down to the constant
    let mut printed = vec![ExactScalar::zero(); 13];
    for (k, text) in PRINTED.iter().enumerate() {
        printed[12 - 2 * k] = ExactScalar::parse_parts(text, "0").map_err(|e| e.to_string())?;
    }
    let printed = UniPoly::from_coeffs(printed);
    let (ours, _) = psi.primitive_part();
    let (theirs, _) = printed.primitive_part();
    let sign = if ours == theirs {
        "+"
    } else if ours == theirs.scale(&c(-1)) {
        "-"
    } else {
        return Err("primitive parts differ".into());
    };
    let factor = psi.coeff(12).checked_div(&printed.coeff(12)).unwrap();
    let seconds = within(Duration::from_secs(300), start, "echar")?;
    Ok(format!(
        "degree 12, 7 coefficients equal up to sign {sign}; computed = printed × {factor}; {seconds:.1} s"
    ))
}

/// Degree drop and the isotropic eigenvector of the x-coordinate cubic.
fn criterion_2() -> Outcome {
    let text =
        std::fs::read_to_string(fixture("ternary_cubic_x.json")).map_err(|e| e.to_string())?;
    let f = match parse_input(&text).map_err(|e| e.to_string())? {
        espectra::format::Input::Tensor(f) => f,
        espectra::format::Input::System(_) => return Err("fixture is not a tensor".into()),
    };
    ensure!(f == tangent_cubic(), "fixture differs from the generator");
    let psi = e_char_poly(&f).map_err(|e| e.to_string())?;
    ensure!(psi.deficient, "not flagged deficient");
    ensure!(
        psi.degree() == Some(12) && psi.n_expected == 14,
        "deg {:?} of {}",
        psi.degree(),
        psi.n_expected
    );
    let cert = find_deficit_solution(&f)
        .map_err(|e| e.to_string())?
        .ok_or("no certificate")?;
    ensure!(
        cert.residual <= 1e-8,
        "certificate residual {:.2e}",
        cert.residual
    );
    let expected = [
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, -1.0),
    ];
    let k = cert.x[1];
    let off = cert
        .x
        .iter()
        .zip(expected)
        .map(|(x, e)| (x - k * e).norm() / k.norm())
        .fold(0.0, f64::max);
    ensure!(
        off <= 1e-8,
        "certificate not proportional to (0, 1, -i): {off:.2e}"
    );
    Ok(format!(
        "deg ψ = 12 < 14, x ∝ (0, 1, -i), residual {:.1e}",
        cert.residual
    ))
}

/// Product law for binary forms, exact Vieta and numeric eigenpairs.
fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for d in 3..=5u32 {
        let n_classes = count(1, d);
        for seed in 0..20u64 {
            let f = random_tensor(1, d, 3000 + seed).map_err(|e| e.to_string())?;
            let report =
                verify_main_theorem(&f).map_err(|e| format!("d = {d}, seed {seed}: {e}"))?;
            ensure!(
                report.passed,
                "d = {d}, seed {seed}: relative error {:.2e}",
                report.relative_error
            );
            worst = worst.max(report.relative_error);

            let pairs = binary_eigenpairs(&f).map_err(|e| e.to_string())?;
            ensure!(
                pairs.len() == n_classes,
                "d = {d}, seed {seed}: {} pairs",
                pairs.len()
            );
            let product: Complex64 = pairs.iter().map(|p| p.lambda).product();
            let vieta = report.vieta.to_complex();
            // even d: Π λ; odd d: (-1)^N Π λ^2
            let numeric = if d % 2 == 0 {
                product
            } else if n_classes.is_multiple_of(2) {
                product * product
            } else {
                -(product * product)
            };
            let err = (numeric - vieta).norm() / vieta.norm();
            ensure!(
                err <= 1e-6,
                "d = {d}, seed {seed}: numeric product off by {err:.2e}"
            );
            worst = worst.max(err);

            let disc = binary_q_discriminant(&f)
                .map_err(|e| e.to_string())?
                .qdisc
                .to_complex()
                .norm();
            let res = report.resultant.to_complex().norm();
            let lhs = product.norm() * disc.powf((d as f64 - 2.0) / 2.0);
            let err = (lhs / res - 1.0).abs();
            ensure!(
                err <= 1e-6,
                "d = {d}, seed {seed}: numeric identity off by {err:.2e}"
            );
            worst = worst.max(err);
        }
    }
    let seconds = within(Duration::from_secs(120), start, "suite")?;
    Ok(format!(
        "60 forms, worst relative error {worst:.1e}, {seconds:.1} s"
    ))
}

/// Closed-form Fermat spectra and the Fermat resultant.
fn criterion_4() -> Outcome {
    let mut cases = 0;
    let mut worst: f64 = 0.0;
    for n in 1..=2 {
        for d in 3..=5u32 {
            for seed in 0..5u64 {
                let a = fermat_coefficients(n, 40 + seed);
                let spec = FermatSpec::new(a.iter().map(ExactScalar::to_complex).collect(), d)
                    .map_err(|e| e.to_string())?;
                let spectrum = fermat_eigenpairs(&spec).map_err(|e| e.to_string())?;
                ensure!(
                    spectrum.pairs.len() == count(n, d),
                    "n = {n}, d = {d}: {} pairs",
                    spectrum.pairs.len()
                );
                let check = fermat_product_check(&spec).map_err(|e| e.to_string())?;
                ensure!(
                    check.relative_error <= 1e-6,
                    "n = {n}, d = {d}: {:.2e}",
                    check.relative_error
                );
                worst = worst.max(check.relative_error);
                let f = SymmetricTensor::fermat(&a, d).map_err(|e| e.to_string())?;
                let res = gradient_resultant(&f).map_err(|e| e.to_string())?;
                let product = a.iter().fold(ExactScalar::one(), |acc, x| &acc * x);
                ensure!(
                    res == product.pow((d - 1).pow(n as u32)),
                    "n = {n}, d = {d}: Res {res}"
                );
                cases += 1;
            }
        }
    }
    Ok(format!(
        "{cases} coefficient vectors, worst product error {worst:.1e}, resultants exact"
    ))
}

/// `α_k = β_k` and `2φ = (d-2)δ_0`.
fn criterion_5() -> Outcome {
    let start = Instant::now();
    for n in 1..=20 {
        for k in 0..n {
            ensure!(
                alpha(n, k) == beta(n, k),
                "alpha != beta at n = {n}, k = {k}"
            );
        }
        for d in 2..=12u32 {
            ensure!(
                BigInt::from(2) * phi(n, d) == BigInt::from(d as i64 - 2) * delta0(n, d),
                "2 phi != (d-2) delta0 at n = {n}, d = {d}"
            );
        }
    }
    let seconds = within(Duration::from_secs(1), start, "identities")?;
    Ok(format!("n <= 20, d <= 12, {:.0} ms", seconds * 1e3))
}

/// `c_0 / Res^k` is one exact constant per `(n, d)`.
fn criterion_6() -> Outcome {
    let mut found = Vec::new();
    for (n, d) in [(1, 3), (1, 4), (2, 3), (2, 4)] {
        let samples = (0..6u64)
            .map(|s| random_tensor(n, d, 6000 + s))
            .collect::<espectra::Result<Vec<_>>>()
            .map_err(|e| e.to_string())?;
        let ratio =
            constant_term_ratio(&samples).map_err(|e| format!("(n, d) = ({n}, {d}): {e}"))?;
        found.push(format!("({n},{d}): {ratio}"));
    }
    Ok(format!("6 samples each; {}", found.join(", ")))
}

/// Seven sign classes for random ternary cubics.
fn criterion_7() -> Outcome {
    let mut worst: f64 = 0.0;
    for seed in 0..10u64 {
        let f = random_tensor(2, 3, 7000 + seed).map_err(|e| e.to_string())?;
        let psi = e_char_poly(&f).map_err(|e| e.to_string())?;
        let recovery = eigenpairs_from_charpoly(&f, &psi).map_err(|e| e.to_string())?;
        ensure!(
            recovery.pairs.len() == 7,
            "seed {seed}: {} classes",
            recovery.pairs.len()
        );
        for p in &recovery.pairs {
            let gap = (p.lambda - f.evaluate(&p.x)).norm();
            ensure!(
                gap <= 1e-8 * (1.0 + p.lambda.norm()),
                "seed {seed}: |λ - f(x)| = {gap:.2e}"
            );
            worst = worst.max(gap);
        }
    }
    Ok(format!(
        "10 cubics × 7 classes, max |λ - f(x)| = {worst:.1e}"
    ))
}

fn squared_eigenvalues(f: &SymmetricTensor) -> Result<Vec<Complex64>, String> {
    let psi = e_char_poly(f).map_err(|e| e.to_string())?;
    let recovery = eigenpairs_from_charpoly(f, &psi).map_err(|e| e.to_string())?;
    ensure!(
        recovery.failures.is_empty(),
        "unrecovered roots {:?}",
        recovery.failures
    );
    Ok(recovery.pairs.iter().map(|p| p.lambda * p.lambda).collect())
}

/// Eigenvalues are unchanged by a rational orthogonal change of coordinates.
fn criterion_8() -> Outcome {
    let mut worst: f64 = 0.0;
    for seed in 0..10u64 {
        let f = random_tensor(2, 3, 8000 + seed).map_err(|e| e.to_string())?;
        let g = f
            .linear_change(&cayley_orthogonal(3, seed))
            .map_err(|e| e.to_string())?;
        let (a, b) = (squared_eigenvalues(&f)?, squared_eigenvalues(&g)?);
        ensure!(
            a.len() == 7 && b.len() == 7,
            "seed {seed}: {} vs {} classes",
            a.len(),
            b.len()
        );
        let dist = multiset_distance(&a, &b);
        ensure!(dist <= 1e-6, "seed {seed}: multisets differ by {dist:.2e}");
        worst = worst.max(dist);
    }
    Ok(format!(
        "10 pairs, max distance {worst:.1e} (classes compared through λ^2)"
    ))
}

fn binary(coeffs: &[i64]) -> MultiPoly {
    let d = coeffs.len() as u32 - 1;
    MultiPoly::from_terms(
        2,
        coeffs
            .iter()
            .enumerate()
            .map(|(j, &a)| (vec![d - j as u32, j as u32], c(a))),
    )
    .unwrap()
}

fn random_binary(rng: &mut ChaCha8Rng, d: u32) -> MultiPoly {
    loop {
        let coeffs: Vec<i64> = (0..=d).map(|_| rng.gen_range(-9..=9)).collect();
        if coeffs[0] != 0 || coeffs[d as usize] != 0 {
            return binary(&coeffs);
        }
    }
}

/// Fermat normalization, per-form homogeneity and Sylvester/Macaulay agreement.
fn criterion_9() -> Outcome {
    let start = Instant::now();
    for (n, d, seed) in [
        (1, 3, 1),
        (1, 5, 2),
        (2, 2, 3),
        (2, 3, 4),
        (2, 4, 5),
        (3, 3, 6),
    ] {
        let a = fermat_coefficients(n, seed);
        let f = SymmetricTensor::fermat(&a, d).map_err(|e| e.to_string())?;
        let product = a.iter().fold(ExactScalar::one(), |acc, x| &acc * x);
        let res = gradient_resultant(&f).map_err(|e| e.to_string())?;
        ensure!(
            res == product.pow((d - 1).pow(n as u32)),
            "Fermat normalization fails at n = {n}, d = {d}"
        );
    }

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut scalings = 0;
    for degrees in [vec![2u32, 2, 2], vec![1, 2, 3], vec![3, 3]] {
        let m = degrees.len();
        let forms: Vec<MultiPoly> = degrees
            .iter()
            .map(|&d| {
                let mut p = MultiPoly::zero(m);
                for mono in Monomial::all_of_degree(m, d) {
                    p.add_term(mono, &c(rng.gen_range(-5..=5)));
                }
                p
            })
            .collect();
        let base = resultant(forms.clone(), degrees.clone())
            .map_err(|e| e.to_string())?
            .value;
        ensure!(!base.is_zero(), "degenerate random system {degrees:?}");
        for i in 0..m {
            let t = ExactScalar::ratio(rng.gen_range(2..=9), rng.gen_range(1..=7));
            let mut scaled = forms.clone();
            scaled[i] = scaled[i].scale(&t);
            let exponent: u32 = (0..m).filter(|&j| j != i).map(|j| degrees[j]).product();
            let value = resultant(scaled, degrees.clone())
                .map_err(|e| e.to_string())?
                .value;
            ensure!(
                value == &base * &t.pow(exponent),
                "homogeneity fails for form {i} of {degrees:?}"
            );
            scalings += 1;
        }
    }
    for sys in [
        build_even_system(&random_tensor(1, 4, 1).unwrap()),
        build_odd_system(&random_tensor(1, 3, 2).unwrap()),
    ] {
        let sys = sys.map_err(|e| e.to_string())?;
        let forms = sys.at(&c(3));
        let base = resultant(forms.clone(), sys.degrees().to_vec())
            .map_err(|e| e.to_string())?
            .value;
        let mut scaled = forms.clone();
        scaled[0] = scaled[0].scale(&c(2));
        let exponent: u32 = sys.degrees()[1..].iter().product();
        let value = resultant(scaled, sys.degrees().to_vec())
            .map_err(|e| e.to_string())?
            .value;
        ensure!(
            value == &base * &c(2).pow(exponent),
            "homogeneity fails on an eigen-system"
        );
        scalings += 1;
    }

    for k in 0..100 {
        let (dp, dq) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let (p, q) = (random_binary(&mut rng, dp), random_binary(&mut rng, dq));
        let syl = sylvester_resultant(&p, &q).map_err(|e| e.to_string())?;
        let mac = resultant(vec![p.clone(), q.clone()], vec![dp, dq])
            .map_err(|e| e.to_string())?
            .value;
        ensure!(syl == mac, "pair {k}: Sylvester {syl} vs Macaulay {mac}");
    }
    let seconds = within(Duration::from_secs(60), start, "resultant checks")?;
    Ok(format!(
        "6 Fermat systems, {scalings} scalings, 100 binary pairs, {seconds:.1} s"
    ))
}

/// Odd-degree `ψ` has only even powers.
fn criterion_10() -> Outcome {
    let shapes = [(1, 3), (1, 5), (2, 3), (1, 7)];
    for k in 0..20u64 {
        let (n, d) = shapes[k as usize % shapes.len()];
        let psi = e_char_poly(&random_tensor(n, d, 10_000 + k).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        ensure!(
            psi.degree() == Some(psi.n_expected),
            "sample {k}: degree {:?}",
            psi.degree()
        );
        for (power, coeff) in psi.psi.coeffs().iter().enumerate() {
            ensure!(
                power % 2 == 0 || coeff.is_zero(),
                "sample {k}: nonzero coefficient of λ^{power}"
            );
        }
    }
    Ok("20 samples over (1,3), (1,5), (2,3), (1,7)".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("z-system characteristic polynomial", criterion_1),
        ("deficiency detection", criterion_2),
        ("binary product law", criterion_3),
        ("Fermat closed form", criterion_4),
        ("combinatorial identities", criterion_5),
        ("constant-term law", criterion_6),
        ("count law", criterion_7),
        ("orthogonal invariance", criterion_8),
        ("resultant engine properties", criterion_9),
        ("parity structure", criterion_10),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|panic| {
            let message = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {message}"))
        });
        let elapsed = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!(
                "criterion {:>2} PASS  {name} ({elapsed:.1} s): {detail}",
                k + 1
            ),
            Err(reason) => {
                failed += 1;
                println!(
                    "criterion {:>2} FAIL  {name} ({elapsed:.1} s): {reason}",
                    k + 1
                );
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all 10 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 10 criteria failed");
        ExitCode::FAILURE
    }
}
