//! The E-characteristic polynomial `ψ_f` and the isotropic-eigenvector tests
//! that explain when its degree drops.
//!
//! For even `d`, `ψ_f(λ)` is the resultant of the `n+1` forms
//! `(1/d)∂f/∂x_i - λ‖x‖^(d-2)x_i`. For odd `d` a variable `x_0` is added and
//! `ψ_f(λ)` is the resultant of `x_0^2 - ‖x‖^2` and
//! `(1/d)∂f/∂x_i - λx_0^(d-2)x_i`; it then contains only even powers of `λ`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{BinaryForm, Monomial, MultiPoly, SymmetricTensor, UniPoly};
use crate::resultant::{parametric_resultant, ParametricSystem};
use crate::scalar::ExactScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(d: u32) -> Self {
        if d.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// The expected number of E-eigenvalues (up to sign) of a general tensor:
/// `n+1` for `d = 2`, else `((d-1)^(n+1) - 1)/(d-2)`.
pub fn expected_count(n: usize, d: u32) -> BigInt {
    if d == 2 {
        return BigInt::from(n + 1);
    }
    assert!(d >= 3, "degree must be at least 2");
    (BigInt::from(d - 1).pow(n as u32 + 1) - 1) / BigInt::from(d - 2)
}

fn expected_count_usize(n: usize, d: u32) -> Result<usize> {
    expected_count(n, d).to_usize().ok_or_else(|| {
        Error::InvalidDegree(format!("eigenvalue count overflows for n = {n}, d = {d}"))
    })
}

/// `ψ_f` together with the data needed to read it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ECharPoly {
    pub psi: UniPoly,
    pub parity: Parity,
    /// `N` for even `d`, `2N` for odd `d`.
    pub n_expected: usize,
    /// `deg ψ < n_expected`, including the case `ψ ≡ 0`.
    pub deficient: bool,
    pub identically_zero: bool,
}

impl ECharPoly {
    fn from_psi(psi: UniPoly, parity: Parity, n_expected: usize) -> Self {
        let identically_zero = psi.is_zero();
        let deficient = psi.degree().is_none_or(|deg| deg < n_expected);
        Self {
            psi,
            parity,
            n_expected,
            deficient,
            identically_zero,
        }
    }

    pub fn degree(&self) -> Option<usize> {
        self.psi.degree()
    }

    pub fn coeff(&self, k: usize) -> ExactScalar {
        self.psi.coeff(k)
    }

    /// `c_0`.
    pub fn constant_term(&self) -> ExactScalar {
        self.psi.coeff(0)
    }

    /// `c_N` (even) or `c_2N` (odd), the coefficient a full-degree `ψ` leads with.
    pub fn top_coefficient(&self) -> ExactScalar {
        self.psi.coeff(self.n_expected)
    }

    /// `(-1)^k c_0 / c_k` with `k = n_expected`: the product of all roots of
    /// `ψ`. For odd `d` the roots pair up as `±λ_i`, so this is
    /// `(-1)^N Π λ_i^2` over one root per pair.
    pub fn vieta_product(&self) -> Option<ExactScalar> {
        let top = self.top_coefficient();
        if top.is_zero() {
            return None;
        }
        let ratio = &self.constant_term() / &top;
        Some(if self.n_expected % 2 == 1 {
            -ratio
        } else {
            ratio
        })
    }
}

fn lift_to(p: &MultiPoly, n_vars: usize, offset: usize) -> MultiPoly {
    p.lift(n_vars, offset)
}

fn inv_degree(d: u32) -> ExactScalar {
    ExactScalar::ratio(1, d as i64)
}

/// The forms `(1/d)∂f/∂x_i - λ‖x‖^(d-2)x_i` for even `d`.
pub fn build_even_system(f: &SymmetricTensor) -> Result<ParametricSystem> {
    let d = f.degree();
    if d < 2 || d % 2 == 1 {
        return Err(Error::InvalidDegree(format!(
            "even system needs even d >= 2, got {d}"
        )));
    }
    let m = f.n_vars();
    let power = MultiPoly::quadric(m).pow((d - 2) / 2);
    let constant = f
        .gradient()
        .iter()
        .map(|g| g.scale(&inv_degree(d)))
        .collect();
    let linear = (0..m)
        .map(|i| (&power * &MultiPoly::var(m, i)).scale(&-ExactScalar::one()))
        .collect();
    ParametricSystem::new(constant, linear, vec![d - 1; m])
}

/// The forms `x_0^2 - ‖x‖^2` and `(1/d)∂f/∂x_i - λx_0^(d-2)x_i` for odd `d`,
/// in the variables `(x_0, x_1, ..., x_{n+1})`.
pub fn build_odd_system(f: &SymmetricTensor) -> Result<ParametricSystem> {
    let d = f.degree();
    if d < 3 || d.is_multiple_of(2) {
        return Err(Error::InvalidDegree(format!(
            "odd system needs odd d >= 3, got {d}"
        )));
    }
    let m = f.n_vars() + 1;
    let x0_sq = MultiPoly::monomial(Monomial::pure_power(m, 0, 2), ExactScalar::one());
    let quadric = &x0_sq - &lift_to(&MultiPoly::quadric(m - 1), m, 1);
    let x0_pow = MultiPoly::monomial(Monomial::pure_power(m, 0, d - 2), -ExactScalar::one());
    let mut constant = vec![quadric];
    let mut linear = vec![MultiPoly::zero(m)];
    for (i, g) in f.gradient().iter().enumerate() {
        constant.push(lift_to(&g.scale(&inv_degree(d)), m, 1));
        linear.push(&x0_pow * &MultiPoly::var(m, i + 1));
    }
    let mut degrees = vec![2];
    degrees.extend(std::iter::repeat_n(d - 1, f.n_vars()));
    ParametricSystem::new(constant, linear, degrees)
}

/// `ψ_f`, exact, interpolated at the theoretical degree bound.
pub fn e_char_poly(f: &SymmetricTensor) -> Result<ECharPoly> {
    let d = f.degree();
    if d < 2 {
        return Err(Error::InvalidDegree(format!(
            "characteristic polynomial needs d >= 2, got {d}"
        )));
    }
    let parity = Parity::of(d);
    let count = expected_count_usize(f.n(), d)?;
    let (sys, n_expected) = match parity {
        Parity::Even => (build_even_system(f)?, count),
        Parity::Odd => (build_odd_system(f)?, 2 * count),
    };
    e_char_poly_of_system(&sys, parity, n_expected)
}

/// `ψ` of an already assembled eigen-system, for systems written in other
/// coordinates than the standard ones.
pub fn e_char_poly_of_system(
    sys: &ParametricSystem,
    parity: Parity,
    n_expected: usize,
) -> Result<ECharPoly> {
    let psi = parametric_resultant(sys, n_expected)?;
    Ok(ECharPoly::from_psi(psi, parity, n_expected))
}

fn i_point(sign: i64) -> [ExactScalar; 2] {
    [ExactScalar::one(), ExactScalar::gauss(0, sign)]
}

/// Whether `∇f` has a common zero on the isotropic quadric.
///
/// For `n = 1` the quadric is the point pair `(1, ±i)` and the gradient is
/// evaluated there exactly; for `n = 2` the partials are pulled back to the
/// parametrized conic and tested for a common root by an exact gcd.
pub fn is_irregular(f: &SymmetricTensor) -> Result<bool> {
    match f.n() {
        1 => {
            let grad = f.gradient();
            Ok([1, -1].iter().any(|&s| {
                let p = i_point(s);
                grad.iter().all(|g| g.evaluate_exact(&p).is_zero())
            }))
        }
        2 => {
            let pulled: Vec<BinaryForm> = f
                .gradient()
                .iter()
                .map(|g| {
                    SymmetricTensor::with_degree(g.clone(), f.degree().saturating_sub(1).max(1))
                })
                .map(|t| t.and_then(|t| t.restrict_to_conic()))
                .collect::<Result<_>>()?;
            let nonzero: Vec<&BinaryForm> = pulled.iter().filter(|b| !b.is_zero()).collect();
            let Some((first, rest)) = nonzero.split_first() else {
                return Ok(true);
            };
            let g = rest.iter().fold((*first).clone(), |acc, b| acc.gcd(b));
            Ok(g.degree() > 0)
        }
        n => Err(Error::UnsupportedDimension { n }),
    }
}

/// A nonzero solution of the deficit system `(1/d)∇f(x) = λx`, `<x, x> = 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeficitCertificate {
    /// Scaled so that `|x|_∞ = 1`.
    pub x: Vec<Complex64>,
    pub lambda: Complex64,
    /// `max(|(1/d)∇f(x) - λx|_∞, |<x, x>|)`.
    pub residual: f64,
}

impl DeficitCertificate {
    fn at(f: &SymmetricTensor, x: Vec<Complex64>) -> Self {
        let scale = x.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let x: Vec<Complex64> = x.iter().map(|c| c / scale).collect();
        let d = f.degree() as f64;
        let grad: Vec<Complex64> = f.gradient().iter().map(|g| g.evaluate(&x) / d).collect();
        let k = (0..x.len())
            .max_by(|&a, &b| x[a].norm().total_cmp(&x[b].norm()))
            .unwrap();
        let lambda = grad[k] / x[k];
        let eq = grad
            .iter()
            .zip(&x)
            .map(|(g, xi)| (g - lambda * xi).norm())
            .fold(0.0, f64::max);
        let iso: Complex64 = x.iter().map(|c| c * c).sum();
        Self {
            x,
            lambda,
            residual: eq.max(iso.norm()),
        }
    }
}

/// An isotropic eigenvector of `f`, if one exists (`n ≤ 2`).
///
/// `n = 1`: `(1, ±i)` is an eigenvector exactly when `f(1, ±i) = 0`.
/// `n = 2`: a point of the conic is an eigenvector exactly when the pulled
/// back form `g(s, t)` has a repeated root there, i.e. a common root of
/// `∂g/∂s` and `∂g/∂t`.
pub fn find_deficit_solution(f: &SymmetricTensor) -> Result<Option<DeficitCertificate>> {
    match f.n() {
        1 => {
            for s in [1, -1] {
                if f.evaluate_exact(&i_point(s)).is_zero() {
                    let x = vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, s as f64)];
                    return Ok(Some(DeficitCertificate::at(f, x)));
                }
            }
            Ok(None)
        }
        2 => {
            let g = f.restrict_to_conic()?;
            if g.is_zero() {
                // f vanishes on the whole conic, so every point of it is an
                // eigenvector; report one.
                let x = SymmetricTensor::conic_point(
                    Complex64::new(1.0, 0.0),
                    Complex64::new(0.0, 0.0),
                );
                return Ok(Some(DeficitCertificate::at(f, x.to_vec())));
            }
            let common = g.partial_s().gcd(&g.partial_t());
            if common.degree() == 0 {
                return Ok(None);
            }
            let best = common
                .projective_roots()
                .into_iter()
                .map(|(s, t)| {
                    DeficitCertificate::at(f, SymmetricTensor::conic_point(s, t).to_vec())
                })
                .min_by(|a, b| a.residual.total_cmp(&b.residual));
            Ok(best)
        }
        n => Err(Error::UnsupportedDimension { n }),
    }
}
