//! Numeric refinement of eigenpairs: Gauss–Newton on the overdetermined
//! system with `λ` fixed, then Newton on the square system in `(x, λ)`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::poly::{MultiPoly, SymmetricTensor};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A polynomial with coefficients rounded to double precision.
#[derive(Clone, Debug)]
pub(crate) struct NumericPoly {
    terms: Vec<(Vec<u32>, Complex64)>,
}

impl NumericPoly {
    pub fn new(p: &MultiPoly, scale: f64) -> Self {
        Self {
            terms: p
                .terms()
                .map(|(m, c)| (m.exps().to_vec(), c.to_complex() * scale))
                .collect(),
        }
    }

    pub fn eval(&self, x: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| e.iter().zip(x).fold(*c, |acc, (&k, xi)| acc * xi.powu(k)))
            .sum()
    }
}

/// `(1/d)∇f` and its Jacobian `(1/d)∇²f`, ready for numeric evaluation.
#[derive(Clone, Debug)]
pub(crate) struct EigenSystem {
    grad: Vec<NumericPoly>,
    hess: Vec<Vec<NumericPoly>>,
}

pub(crate) fn bilinear(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

impl EigenSystem {
    pub fn new(f: &SymmetricTensor) -> Self {
        let s = 1.0 / f.degree() as f64;
        let grad_exact = f.gradient();
        let grad = grad_exact.iter().map(|g| NumericPoly::new(g, s)).collect();
        let hess = grad_exact
            .iter()
            .map(|g| {
                (0..f.n_vars())
                    .map(|j| NumericPoly::new(&g.derivative(j), s))
                    .collect()
            })
            .collect();
        Self { grad, hess }
    }

    fn dim(&self) -> usize {
        self.grad.len()
    }

    /// `max_i |(1/d)∂f/∂x_i(x) - λx_i|`.
    pub fn residual(&self, x: &[Complex64], lambda: Complex64) -> f64 {
        self.grad
            .iter()
            .zip(x)
            .map(|(g, xi)| (g.eval(x) - lambda * xi).norm())
            .fold(0.0, f64::max)
    }

    /// Residual of all `n+2` equations, including `<x, x> - 1`.
    fn full_residual(&self, x: &[Complex64], lambda: Complex64) -> f64 {
        self.residual(x, lambda).max((bilinear(x, x) - 1.0).norm())
    }

    fn equations(&self, x: &[Complex64], lambda: Complex64) -> DVector<Complex64> {
        let m = self.dim();
        let mut r = DVector::from_element(m + 1, ZERO);
        for i in 0..m {
            r[i] = self.grad[i].eval(x) - lambda * x[i];
        }
        r[m] = bilinear(x, x) - 1.0;
        r
    }

    fn hessian(&self, x: &[Complex64], lambda: Complex64) -> DMatrix<Complex64> {
        let m = self.dim();
        DMatrix::from_fn(m, m, |i, j| {
            let h = self.hess[i][j].eval(x);
            if i == j {
                h - lambda
            } else {
                h
            }
        })
    }

    /// Damped Gauss–Newton with `λ` fixed; returns the final iterate.
    pub fn gauss_newton(
        &self,
        mut x: Vec<Complex64>,
        lambda: Complex64,
        iterations: usize,
    ) -> Vec<Complex64> {
        let m = self.dim();
        let mut current = self.equations(&x, lambda).norm();
        for _ in 0..iterations {
            if current <= 1e-13 {
                break;
            }
            let h = self.hessian(&x, lambda);
            let jac = DMatrix::from_fn(m + 1, m, |i, j| if i < m { h[(i, j)] } else { 2.0 * x[j] });
            let r = self.equations(&x, lambda);
            let Ok(step) = jac.svd(true, true).solve(&(-r), 1e-14) else {
                break;
            };
            let mut t = 1.0;
            let mut improved = false;
            for _ in 0..30 {
                let trial: Vec<Complex64> =
                    x.iter().zip(step.iter()).map(|(a, b)| a + b * t).collect();
                let value = self.equations(&trial, lambda).norm();
                if value.is_finite() && value < current {
                    x = trial;
                    current = value;
                    improved = true;
                    break;
                }
                t *= 0.5;
            }
            if !improved {
                break;
            }
        }
        x
    }

    /// Newton on the square system in `(x, λ)`; keeps the best iterate.
    pub fn polish(
        &self,
        x: Vec<Complex64>,
        lambda: Complex64,
        iterations: usize,
    ) -> (Vec<Complex64>, Complex64) {
        let m = self.dim();
        let mut best = (x.clone(), lambda, self.full_residual(&x, lambda));
        let (mut x, mut lambda) = (x, lambda);
        for _ in 0..iterations {
            let h = self.hessian(&x, lambda);
            let jac = DMatrix::from_fn(m + 1, m + 1, |i, j| match (i < m, j < m) {
                (true, true) => h[(i, j)],
                (true, false) => -x[i],
                (false, true) => 2.0 * x[j],
                (false, false) => ZERO,
            });
            let r = self.equations(&x, lambda);
            let Some(step) = jac.lu().solve(&(-r)) else {
                break;
            };
            x = x.iter().zip(step.iter()).map(|(a, b)| a + b).collect();
            lambda += step[m];
            let res = self.full_residual(&x, lambda);
            if !res.is_finite() {
                break;
            }
            if res < best.2 {
                best = (x.clone(), lambda, res);
            }
            if res <= 1e-15 {
                break;
            }
        }
        (best.0, best.1)
    }
}

/// A random complex start with `<x, x> = 1`.
pub(crate) fn random_start(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Complex64> {
    loop {
        let x: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let q = bilinear(&x, &x);
        if q.norm() > 1e-3 {
            let s = q.sqrt();
            return x.iter().map(|c| c / s).collect();
        }
    }
}
