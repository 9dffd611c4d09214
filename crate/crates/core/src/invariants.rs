//! Closed-form invariants and the product-of-eigenvalues verifier.
//!
//! The combinatorial quantities are evaluated with exact integers. The
//! verifier compares three independent computations: the Vieta product of
//! `ψ_f`, the resultant of `(1/d)∇f` and a discriminant of `f` relative to the
//! isotropic quadric (exact `b_0 b_d` for binary forms, a Sylvester proxy for
//! ternary forms).

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::binomial;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::echar::{
    e_char_poly, expected_count, find_deficit_solution, is_irregular, ECharPoly, Parity,
};
use crate::error::{Error, Result};
use crate::poly::SymmetricTensor;
use crate::resultant::{resultant, sylvester_binary};
use crate::scalar::ExactScalar;
use crate::spectra::{fermat_eigenpairs, FermatSpec};

/// `N`, `φ_n(d)`, `δ_0`, `α_k` and `β_k` for one `(n, d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub n: usize,
    pub d: u32,
    pub count: BigInt,
    pub phi: BigInt,
    pub delta0: BigInt,
    pub alpha: Vec<BigInt>,
    pub beta: Vec<BigInt>,
}

fn big(k: usize) -> BigInt {
    BigInt::from(k)
}

fn sign(k: usize) -> BigInt {
    if k.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `α_k = (k+1) Σ_(j=0)^(n-1-k) C(n+1, j) (-1)^j 2^(n-1-k-j)`.
pub fn alpha(n: usize, k: usize) -> BigInt {
    assert!(k < n, "alpha needs k < n");
    let sum: BigInt = (0..=n - 1 - k)
        .map(|j| binomial(big(n + 1), big(j)) * sign(j) * (BigInt::one() << (n - 1 - k - j)))
        .sum();
    big(k + 1) * sum
}

/// `β_k = (k+1) Σ_(l=0)^(n-1-k) C(k+l+1, l) (-1)^l`.
pub fn beta(n: usize, k: usize) -> BigInt {
    assert!(k < n, "beta needs k < n");
    let sum: BigInt = (0..=n - 1 - k)
        .map(|l| binomial(big(k + l + 1), big(l)) * sign(l))
        .sum();
    big(k + 1) * sum
}

/// `δ_0 = 2 Σ_k α_k d^k`, the degree of the discriminant relative to the
/// isotropic quadric.
pub fn delta0(n: usize, d: u32) -> BigInt {
    let d = BigInt::from(d);
    let sum: BigInt = (0..n).map(|k| alpha(n, k) * d.pow(k as u32)).sum();
    2 * sum
}

/// `φ_n(d) = (n+1)(d-1)^n - N`.
pub fn phi(n: usize, d: u32) -> BigInt {
    big(n + 1) * BigInt::from(d - 1).pow(n as u32) - expected_count(n, d)
}

/// All invariants for `(n, d)`, with `α_k = β_k` and `2φ = (d-2)δ_0` asserted.
pub fn invariant_report(n: usize, d: u32) -> InvariantReport {
    assert!(n >= 1 && d >= 2, "invariants need n >= 1 and d >= 2");
    let alpha: Vec<BigInt> = (0..n).map(|k| alpha(n, k)).collect();
    let beta: Vec<BigInt> = (0..n).map(|k| beta(n, k)).collect();
    let report = InvariantReport {
        n,
        d,
        count: expected_count(n, d),
        phi: phi(n, d),
        delta0: delta0(n, d),
        alpha,
        beta,
    };
    assert_eq!(
        report.alpha, report.beta,
        "alpha/beta identity fails at n = {n}"
    );
    assert_eq!(
        BigInt::from(2) * &report.phi,
        BigInt::from(d as i64 - 2) * &report.delta0,
        "2 phi = (d-2) delta0 fails at n = {n}, d = {d}"
    );
    report
}

/// `b_0 = f(1, i)`, `b_d = f(1, -i)` and their product, the discriminant of a
/// binary form relative to the isotropic point pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryInvariants {
    pub b0: ExactScalar,
    pub bd: ExactScalar,
    pub qdisc: ExactScalar,
}

pub fn binary_q_discriminant(f: &SymmetricTensor) -> Result<BinaryInvariants> {
    if f.n() != 1 {
        return Err(Error::UnsupportedDimension { n: f.n() });
    }
    let one = ExactScalar::one();
    let b0 = f.evaluate_exact(&[one.clone(), ExactScalar::gauss(0, 1)]);
    let bd = f.evaluate_exact(&[one, ExactScalar::gauss(0, -1)]);
    let qdisc = &b0 * &bd;
    Ok(BinaryInvariants { b0, bd, qdisc })
}

/// `Res(∂g/∂s, ∂g/∂t)` for the restriction `g` of a ternary form to the
/// isotropic conic. It vanishes exactly when `f` is tangent to the conic or
/// singular on it.
pub fn ternary_q_discriminant_proxy(f: &SymmetricTensor) -> Result<ExactScalar> {
    let g = f.restrict_to_conic()?;
    if g.is_zero() {
        return Err(Error::DegenerateRestriction);
    }
    Ok(sylvester_binary(&g.partial_s(), &g.partial_t()))
}

/// `Res((1/d)∇f)`, exact.
pub fn gradient_resultant(f: &SymmetricTensor) -> Result<ExactScalar> {
    let d = f.degree();
    if d < 2 {
        return Err(Error::InvalidDegree(format!(
            "gradient resultant needs d >= 2, got {d}"
        )));
    }
    let scale = ExactScalar::ratio(1, d as i64);
    let forms = f.gradient().iter().map(|g| g.scale(&scale)).collect();
    Ok(resultant(forms, vec![d - 1; f.n_vars()])?.value)
}

/// Exponents `(k_res, k_disc)` with `c_0 = c·Res^k_res` and
/// `c_top = e·Δ^k_disc`.
pub fn exponents(d: u32) -> (u32, u32) {
    match Parity::of(d) {
        Parity::Even => (1, (d - 2) / 2),
        Parity::Odd => (2, d - 2),
    }
}

/// The discriminant used against `c_top`: `b_0 b_d` for `n = 1`, the
/// Sylvester proxy for `n = 2`.
pub fn discriminant_for(f: &SymmetricTensor) -> Result<ExactScalar> {
    match f.n() {
        1 => Ok(binary_q_discriminant(f)?.qdisc),
        2 => ternary_q_discriminant_proxy(f),
        n => Err(Error::UnsupportedDimension { n }),
    }
}

/// Outcome of [`verify_main_theorem`] for one tensor.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MainTheoremReport {
    pub n: usize,
    pub d: u32,
    pub parity: Parity,
    pub psi_degree: Option<usize>,
    /// `(-1)^k c_0/c_k`: `Π λ` for even `d`, `(-1)^N Π λ^2` for odd `d`.
    pub vieta: ExactScalar,
    pub resultant: ExactScalar,
    /// `b_0 b_d` for `n = 1`, the Sylvester proxy for `n = 2`.
    pub discriminant: ExactScalar,
    /// `|Π λ|` over one representative per sign class.
    pub lhs: f64,
    /// `c_0 / Res^k_res`; the theory says `|c| = 1`.
    pub constant_c: ExactScalar,
    /// `c_top / Δ^k_disc`. Unit modulus for `n = 1`; for `n = 2` the proxy
    /// differs from the primitive discriminant by an unknown constant.
    pub leading_ratio: ExactScalar,
    /// `n = 1`: `|LHS·|Δ|^((d-2)/2) / |Res| - 1|`. `n = 2`: `||c| - 1|`.
    pub relative_error: f64,
    /// Exact form of the checked identity, on squared moduli.
    pub exact_identity: bool,
    pub passed: bool,
}

/// Checks `|Π λ| · |Δ|^((d-2)/2) = |Res((1/d)∇f)|` for a regular tensor with
/// the full number of eigenvalues (`n ≤ 2`).
///
/// For `n = 1` `Δ = b_0 b_d` exactly. For `n = 2` only `|c_0| = |Res|^k_res`
/// can be checked exactly, which is the same identity with `Δ^k_disc`
/// replaced by `c_top`; the proxy ratio is reported for cross-sample checks.
pub fn verify_main_theorem(f: &SymmetricTensor) -> Result<MainTheoremReport> {
    let psi = e_char_poly(f)?;
    verify_with_psi(f, &psi)
}

/// As [`verify_main_theorem`] with `ψ_f` supplied by the caller.
pub fn verify_with_psi(f: &SymmetricTensor, psi: &ECharPoly) -> Result<MainTheoremReport> {
    let (n, d) = (f.n(), f.degree());
    if is_irregular(f)? {
        return Err(Error::HypothesisFailed("the tensor is irregular".into()));
    }
    if psi.deficient {
        let degree = psi.degree().map_or("-∞".to_string(), |k| k.to_string());
        let mut detail = format!("deficient: deg ψ = {degree} < {}", psi.n_expected);
        if let Some(cert) = find_deficit_solution(f)? {
            let parts: Vec<String> = cert
                .x
                .iter()
                .map(|v| format!("{:.6}{:+.6}i", v.re, v.im))
                .collect();
            detail.push_str(&format!("; isotropic eigenvector ({})", parts.join(", ")));
        }
        return Err(Error::HypothesisFailed(detail));
    }
    let (k_res, k_disc) = exponents(d);
    let vieta = psi.vieta_product().expect("full degree");
    let res = gradient_resultant(f)?;
    let disc = discriminant_for(f)?;
    let c0 = psi.constant_term();
    let top = psi.top_coefficient();
    let res_pow = res.pow(k_res);
    let constant_c = c0
        .checked_div(&res_pow)
        .ok_or_else(|| Error::Degenerate("Res((1/d)∇f) vanishes on a regular tensor".into()))?;
    let disc_pow = disc.pow(k_disc);
    let leading_ratio = top.checked_div(&disc_pow).ok_or_else(|| {
        Error::Degenerate("discriminant vanishes on a non-deficient tensor".into())
    })?;
    // |Π λ| = |vieta| (even) or |vieta|^(1/2) (odd).
    let lhs_ln = vieta.ln_abs() / k_res as f64;
    let (relative_error, exact_identity) = if n == 1 {
        let err = (lhs_ln + (d as f64 - 2.0) / 2.0 * disc.ln_abs() - res.ln_abs())
            .exp_m1()
            .abs();
        let exact = &vieta.norm_sqr() * &disc.norm_sqr().pow(k_disc as i32)
            == res.norm_sqr().pow(k_res as i32);
        (err, exact)
    } else {
        let err = (c0.ln_abs() - k_res as f64 * res.ln_abs()).exp_m1().abs();
        (err, constant_c.norm_sqr().is_one())
    };
    Ok(MainTheoremReport {
        n,
        d,
        parity: psi.parity,
        psi_degree: psi.degree(),
        vieta,
        resultant: res,
        discriminant: disc,
        lhs: lhs_ln.exp(),
        constant_c,
        leading_ratio,
        relative_error,
        exact_identity,
        passed: exact_identity && relative_error <= 1e-6,
    })
}

fn all_equal(values: Vec<ExactScalar>) -> Result<ExactScalar> {
    let first = values
        .first()
        .cloned()
        .ok_or_else(|| Error::Degenerate("no samples".into()))?;
    for (index, v) in values.iter().enumerate().skip(1) {
        if *v != first {
            return Err(Error::RatioMismatch {
                index,
                first: first.to_string(),
                other: v.to_string(),
            });
        }
    }
    Ok(first)
}

fn check_shape(samples: &[SymmetricTensor]) -> Result<()> {
    if samples.len() < 2 {
        return Err(Error::Degenerate("at least two samples are needed".into()));
    }
    let (n, d) = (samples[0].n(), samples[0].degree());
    if samples.iter().any(|f| f.n() != n || f.degree() != d) {
        return Err(Error::Degenerate("samples must share (n, d)".into()));
    }
    Ok(())
}

/// `c_0 / Res((1/d)∇f)` (even `d`) or `c_0 / Res^2` (odd `d`), asserted equal
/// across all samples.
pub fn constant_term_ratio(samples: &[SymmetricTensor]) -> Result<ExactScalar> {
    check_shape(samples)?;
    let (k_res, _) = exponents(samples[0].degree());
    let ratios = samples
        .par_iter()
        .map(|f| {
            let c0 = e_char_poly(f)?.constant_term();
            let res = gradient_resultant(f)?.pow(k_res);
            c0.checked_div(&res)
                .ok_or_else(|| Error::Degenerate("Res((1/d)∇f) vanishes".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    all_equal(ratios)
}

/// `c_top / Δ^k_disc` asserted equal across all samples, with `Δ` from
/// [`discriminant_for`].
pub fn leading_coefficient_ratio(samples: &[SymmetricTensor]) -> Result<ExactScalar> {
    check_shape(samples)?;
    let (_, k_disc) = exponents(samples[0].degree());
    let ratios = samples
        .par_iter()
        .map(|f| {
            let top = e_char_poly(f)?.top_coefficient();
            let disc = discriminant_for(f)?.pow(k_disc);
            top.checked_div(&disc)
                .ok_or_else(|| Error::Degenerate("discriminant vanishes".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    all_equal(ratios)
}

/// The product `h = Π <y, y>` over all Fermat arrangements, evaluated
/// numerically.
pub fn fermat_h_polynomial(spec: &FermatSpec) -> Result<Complex64> {
    if spec.d < 3 {
        return Err(Error::InvalidDegree(format!(
            "h needs d >= 3, got {}",
            spec.d
        )));
    }
    if let Some(index) = spec.a.iter().position(|a| a.norm() == 0.0) {
        return Err(Error::ZeroCoefficient { index });
    }
    Ok(spec.h_product())
}

/// Closed-form product of Fermat eigenvalues against `g / h^((d-2)/2)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FermatProductCheck {
    pub count: usize,
    pub product: Complex64,
    pub g: Complex64,
    pub h: Complex64,
    /// Relative error of `Π λ = g/h^((d-2)/2)` for even `d`, and of the
    /// squared identity `Π λ^2 = g^2/h^(d-2)` for odd `d`.
    pub relative_error: f64,
}

pub fn fermat_product_check(spec: &FermatSpec) -> Result<FermatProductCheck> {
    let h = fermat_h_polynomial(spec)?;
    let spectrum = fermat_eigenpairs(spec)?;
    if !spectrum.isotropic.is_empty() {
        return Err(Error::NormZero);
    }
    let product: Complex64 = spectrum.pairs.iter().map(|p| p.lambda).product();
    let g = spec.g_product();
    let d = spec.d;
    let (lhs, rhs) = if d.is_multiple_of(2) {
        (product, g / h.powu((d - 2) / 2))
    } else {
        (product * product, g * g / h.powu(d - 2))
    };
    Ok(FermatProductCheck {
        count: spectrum.pairs.len(),
        product,
        g,
        h,
        relative_error: (lhs - rhs).norm() / rhs.norm(),
    })
}
