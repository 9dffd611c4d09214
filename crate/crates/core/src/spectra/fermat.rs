use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{bilinear, canonical, EigenPair};
use crate::error::{Error, Result};

/// The scaled Fermat polynomial `Σ a_i x_i^d`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FermatSpec {
    pub a: Vec<Complex64>,
    pub d: u32,
}

/// A support set `k_1 < ... < k_j` and exponents `α` with `α[0] = 0`.
pub type Arrangement = (Vec<usize>, Vec<u32>);

/// Closed-form eigenpairs, plus the arrangements whose vector turned out
/// isotropic and so could not be normalized.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FermatSpectrum {
    pub pairs: Vec<EigenPair>,
    pub isotropic: Vec<Arrangement>,
}

impl FermatSpec {
    pub fn new(a: Vec<Complex64>, d: u32) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidDegree(format!(
                "Fermat degree must be at least 2, got {d}"
            )));
        }
        if a.is_empty() {
            return Err(Error::ArityMismatch {
                expected: 1,
                found: 0,
            });
        }
        Ok(Self { a, d })
    }

    pub fn n(&self) -> usize {
        self.a.len() - 1
    }

    fn check_nonzero(&self) -> Result<()> {
        match self.a.iter().position(|c| c.norm() == 0.0) {
            Some(index) => Err(Error::ZeroCoefficient { index }),
            None => Ok(()),
        }
    }

    /// `ξ_i = a_i^(1/(d-2))` on the principal branch.
    fn xi(&self) -> Vec<Complex64> {
        let e = 1.0 / (self.d - 2) as f64;
        self.a.iter().map(|a| a.powf(e)).collect()
    }

    /// Every support set in increasing bitmask order, each followed by all
    /// exponent vectors `α ∈ {0, ..., d-3}^(j-1)` in lexicographic order.
    pub fn arrangements(&self) -> Vec<Arrangement> {
        let m = self.a.len();
        let base = self.d.saturating_sub(2).max(1);
        let mut out = Vec::new();
        for mask in 1u32..(1 << m) {
            let support: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
            if self.d == 2 && support.len() > 1 {
                continue;
            }
            let j = support.len();
            let total = base.pow(j as u32 - 1);
            for code in 0..total {
                let mut alpha = vec![0u32; j];
                let mut c = code;
                for slot in alpha[1..].iter_mut().rev() {
                    *slot = c % base;
                    c /= base;
                }
                out.push((support.clone(), alpha));
            }
        }
        out
    }

    /// The unnormalized eigenvector `y_(k_l) = Π_(m≠l) ξ_(k_m) · ε^(α_l)`.
    pub fn y_vector(&self, support: &[usize], alpha: &[u32]) -> Vec<Complex64> {
        let m = self.a.len();
        let mut y = vec![Complex64::new(0.0, 0.0); m];
        if self.d == 2 {
            y[support[0]] = Complex64::new(1.0, 0.0);
            return y;
        }
        let xi = self.xi();
        let eps = Complex64::from_polar(1.0, std::f64::consts::TAU / (self.d - 2) as f64);
        for (l, &k) in support.iter().enumerate() {
            let others: Complex64 = support
                .iter()
                .enumerate()
                .filter(|&(q, _)| q != l)
                .map(|(_, &i)| xi[i])
                .product();
            y[k] = others * eps.powu(alpha[l]);
        }
        y
    }

    fn support_product(&self, support: &[usize]) -> Complex64 {
        support.iter().map(|&i| self.a[i]).product()
    }

    /// `g = Π_arrangements Π_(k∈K) a_k`, which equals `(a_1⋯a_(n+1))^((d-1)^n)`.
    pub fn g_product(&self) -> Complex64 {
        self.arrangements()
            .iter()
            .map(|(support, _)| self.support_product(support))
            .product()
    }

    /// `h = Π_arrangements <y, y>`.
    pub fn h_product(&self) -> Complex64 {
        self.arrangements()
            .iter()
            .map(|(support, alpha)| {
                let y = self.y_vector(support, alpha);
                bilinear(&y, &y)
            })
            .product()
    }

    /// `max_i |a_i x_i^(d-1) - λx_i|`.
    pub fn residual(&self, lambda: Complex64, x: &[Complex64]) -> f64 {
        self.a
            .iter()
            .zip(x)
            .map(|(a, xi)| (a * xi.powu(self.d - 1) - lambda * xi).norm())
            .fold(0.0, f64::max)
    }

    /// `f(x) = Σ a_i x_i^d`.
    pub fn evaluate(&self, x: &[Complex64]) -> Complex64 {
        self.a
            .iter()
            .zip(x)
            .map(|(a, xi)| a * xi.powu(self.d))
            .sum()
    }
}

/// All eigenpairs of a scaled Fermat polynomial from the closed form:
/// `x = y/√<y, y>` and `λ = (Π_(k∈K) a_k)/<y, y>^((d-2)/2)`.
pub fn fermat_eigenpairs(spec: &FermatSpec) -> Result<FermatSpectrum> {
    spec.check_nonzero()?;
    let mut out = FermatSpectrum::default();
    for (support, alpha) in spec.arrangements() {
        let y = spec.y_vector(&support, &alpha);
        let q = bilinear(&y, &y);
        let scale: f64 = y.iter().map(|c| c.norm_sqr()).sum();
        if q.norm() <= 1e-14 * scale {
            out.isotropic.push((support, alpha));
            continue;
        }
        let s = q.sqrt();
        let x: Vec<Complex64> = y.iter().map(|c| c / s).collect();
        let lambda = spec.support_product(&support) / s.powu(spec.d - 2);
        let (lambda, x) = canonical(spec.d, lambda, x);
        let residual = spec.residual(lambda, &x);
        out.pairs.push(EigenPair {
            lambda,
            x,
            residual,
        });
    }
    Ok(out)
}
