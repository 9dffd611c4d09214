//! E-eigenpairs: numeric recovery from the roots of `ψ_f`, the binary-form
//! route through `D(f) = x_1 ∂f/∂x_2 - x_2 ∂f/∂x_1`, and the closed form for
//! scaled Fermat polynomials.

mod fermat;
mod newton;
mod pencil;

use num_complex::Complex64;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::echar::{ECharPoly, Parity};
use crate::error::{Error, Result};
use crate::poly::{BinaryForm, MultiPoly, SymmetricTensor, UniPoly};
use crate::roots::roots_with_multiplicity;
use crate::scalar::ExactScalar;

pub use fermat::{fermat_eigenpairs, FermatSpec, FermatSpectrum};
pub(crate) use newton::bilinear;
use newton::{random_start, EigenSystem};
use pencil::MacaulayPencil;

/// Tolerance of the eigenpair invariants.
pub const PAIR_TOLERANCE: f64 = 1e-8;
const STARTS: usize = 32;
const GN_ITERATIONS: usize = 100;
const POLISH_ITERATIONS: usize = 20;
const SUCCESS: f64 = 1e-10;
const SEED: u64 = 0xe1_9e_2a_17;

/// An E-eigenpair `(λ, x)`: `(1/d)∇f(x) = λx` with `<x, x> = 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenPair {
    pub lambda: Complex64,
    pub x: Vec<Complex64>,
    /// `max_i |(1/d)∂f/∂x_i(x) - λx_i|`.
    pub residual: f64,
}

impl EigenPair {
    /// Builds the pair in canonical sign form and records its residual.
    pub fn new(f: &SymmetricTensor, lambda: Complex64, x: Vec<Complex64>) -> Self {
        let (lambda, x) = canonical(f.degree(), lambda, x);
        let residual = EigenSystem::new(f).residual(&x, lambda);
        Self {
            lambda,
            x,
            residual,
        }
    }

    /// Whether the pair meets all three invariants at [`PAIR_TOLERANCE`].
    pub fn is_valid(&self, f: &SymmetricTensor) -> bool {
        let norm_ok = (bilinear(&self.x, &self.x) - 1.0).norm() <= PAIR_TOLERANCE;
        let value_ok = (self.lambda - f.evaluate(&self.x)).norm()
            <= PAIR_TOLERANCE * (1.0 + self.lambda.norm());
        norm_ok && self.residual <= PAIR_TOLERANCE && value_ok
    }

    fn same_class(&self, other: &Self) -> bool {
        let dx = self
            .x
            .iter()
            .zip(&other.x)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        dx <= 1e-6 && (self.lambda - other.lambda).norm() <= 1e-6 * (1.0 + self.lambda.norm())
    }
}

/// Picks the representative of `{(λ, x), (±λ, -x)}` whose first significant
/// component has positive real part (ties: positive imaginary part). The
/// sign of `λ` flips with `x` only for odd `d`.
pub(crate) fn canonical(
    d: u32,
    lambda: Complex64,
    x: Vec<Complex64>,
) -> (Complex64, Vec<Complex64>) {
    let scale = x.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let lead = x.iter().find(|c| c.norm() > 1e-8 * scale).copied();
    let flip = match lead {
        Some(c) if c.re.abs() > 1e-12 * scale => c.re < 0.0,
        Some(c) => c.im < 0.0,
        None => false,
    };
    if !flip {
        return (lambda, x);
    }
    let x = x.into_iter().map(|c| -c).collect();
    (if d % 2 == 1 { -lambda } else { lambda }, x)
}

/// Eigenpairs of a binary form from the roots of `D(f)`, one per sign class.
pub fn binary_eigenpairs(f: &SymmetricTensor) -> Result<Vec<EigenPair>> {
    if f.n() != 1 {
        return Err(Error::UnsupportedDimension { n: f.n() });
    }
    let x1 = MultiPoly::var(2, 0);
    let x2 = MultiPoly::var(2, 1);
    let grad = f.gradient();
    let df = &(&x1 * &grad[1]) - &(&x2 * &grad[0]);
    if df.is_zero() {
        return Err(Error::Degenerate("D(f) vanishes identically".into()));
    }
    let form = BinaryForm::from_multipoly(&df, f.degree())?;
    for s in [1, -1] {
        if form
            .eval(&ExactScalar::from_int(1), &ExactScalar::gauss(0, s))
            .is_zero()
        {
            return Err(Error::IsotropicRoot);
        }
    }
    let system = EigenSystem::new(f);
    let pairs = form
        .projective_roots()
        .into_iter()
        .map(|(s, t)| {
            let q = (s * s + t * t).sqrt();
            let x = vec![s / q, t / q];
            let lambda = f.evaluate(&x);
            let (x, lambda) = system.polish(x, lambda, POLISH_ITERATIONS);
            EigenPair::new(f, lambda, x)
        })
        .collect();
    Ok(pairs)
}

/// Eigenpairs recovered from the roots of `ψ_f`, plus the roots for which
/// recovery fell short.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Recovery {
    pub pairs: Vec<EigenPair>,
    /// One entry per missing sign class, holding its root of `ψ`.
    pub failures: Vec<Complex64>,
}

impl Recovery {
    pub fn failure_errors(&self) -> Vec<Error> {
        self.failures
            .iter()
            .map(|l| Error::RecoveryFailed { re: l.re, im: l.im })
            .collect()
    }
}

/// For odd `d` the kernel fixes `x` only up to sign and `-x` belongs to
/// `-λ`; picks the sign with `f(x)` closer to `λ`.
fn orient(f: &SymmetricTensor, x: Vec<Complex64>, lambda: Complex64) -> Vec<Complex64> {
    let value = f.evaluate(&x);
    if f.degree() % 2 == 1 && (value + lambda).norm() < (value - lambda).norm() {
        x.into_iter().map(|c| -c).collect()
    } else {
        x
    }
}

fn recover_root(
    f: &SymmetricTensor,
    system: &EigenSystem,
    pencil: Option<&MacaulayPencil>,
    lambda: Complex64,
    multiplicity: usize,
    seed: u64,
) -> Vec<EigenPair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found: Vec<EigenPair> = Vec::new();
    let mut solid = 0;
    let kernel_start = pencil
        .and_then(|p| p.start(lambda))
        .map(|x| orient(f, x, lambda));
    let random = (0..STARTS).map(|_| random_start(&mut rng, f.n_vars()));
    for start in kernel_start.into_iter().chain(random) {
        let x = system.gauss_newton(start, lambda, GN_ITERATIONS);
        if system
            .residual(&x, lambda)
            .max((bilinear(&x, &x) - 1.0).norm())
            > 1e-4
        {
            continue;
        }
        let (x, polished) = system.polish(x, lambda, POLISH_ITERATIONS);
        if (polished - lambda).norm() > 1e-6 * (1.0 + lambda.norm()) {
            continue;
        }
        let pair = EigenPair::new(f, polished, x);
        if !pair.is_valid(f) || found.iter().any(|p| p.same_class(&pair)) {
            continue;
        }
        if pair.residual <= SUCCESS {
            solid += 1;
        }
        found.push(pair);
        if solid >= multiplicity {
            break;
        }
    }
    found
}

/// Eigenpairs of `f` from the numeric roots of `ψ_f`.
///
/// Each distinct root is handed to Gauss–Newton, first from the kernel of
/// the Macaulay pencil at that root and then from random starts; the
/// resulting pairs are polished, checked against the pair invariants and
/// deduplicated by sign class.
pub fn eigenpairs_from_charpoly(f: &SymmetricTensor, psi: &ECharPoly) -> Result<Recovery> {
    if psi.identically_zero {
        return Err(Error::Degenerate("ψ vanishes identically".into()));
    }
    let system = EigenSystem::new(f);
    let pencil = MacaulayPencil::new(f);
    let clusters = class_root_multiplicities(psi);
    let per_root: Vec<Vec<EigenPair>> = clusters
        .par_iter()
        .enumerate()
        .map(|(k, &(lambda, mult))| {
            let seed = SEED ^ (k as u64).wrapping_mul(0x9e37_79b9);
            recover_root(f, &system, pencil.as_ref(), lambda, mult, seed)
        })
        .collect();
    let mut recovery = Recovery::default();
    for ((lambda, mult), pairs) in clusters.iter().zip(per_root) {
        recovery.failures.extend(std::iter::repeat_n(
            *lambda,
            mult.saturating_sub(pairs.len()),
        ));
        for p in pairs {
            if !recovery.pairs.iter().any(|q| q.same_class(&p)) {
                recovery.pairs.push(p);
            }
        }
    }
    Ok(recovery)
}

/// Distinct roots of `ψ` up to sign class, each with its exact multiplicity.
/// For odd `d`, `ψ(λ) = P(λ^2)` and the classes correspond to the roots of `P`.
pub fn class_root_multiplicities(psi: &ECharPoly) -> Vec<(Complex64, usize)> {
    match psi.parity {
        Parity::Even => roots_with_multiplicity(&psi.psi),
        Parity::Odd => {
            let p = UniPoly::from_coeffs(psi.psi.coeffs().iter().step_by(2).cloned().collect());
            roots_with_multiplicity(&p)
                .into_iter()
                .map(|(mu, k)| (mu.sqrt(), k))
                .collect()
        }
    }
}

/// One root of `ψ` per sign class, repeated by multiplicity.
pub fn class_roots(psi: &ECharPoly) -> Vec<Complex64> {
    class_root_multiplicities(psi)
        .into_iter()
        .flat_map(|(z, k)| std::iter::repeat_n(z, k))
        .collect()
}

/// `Π λ` over one representative per sign class. For odd `d` the result is
/// defined only up to sign.
pub fn product_of_eigenvalues(pairs: &[EigenPair], _parity: Parity) -> Complex64 {
    pairs.iter().map(|p| p.lambda).product()
}

/// Multiset distance helper: sorts complex values lexicographically.
pub fn sorted_values(mut v: Vec<Complex64>) -> Vec<Complex64> {
    v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    v
}

/// Greedy matching distance between two multisets of equal size,
/// relative to `1 + |a|`.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for x in a {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, (x - y).norm() / (1.0 + x.norm())))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .unwrap();
        used[j] = true;
        worst = worst.max(d);
    }
    worst
}
