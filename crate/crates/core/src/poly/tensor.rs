use num_complex::Complex64;
use num_traits::{One, Zero};

use super::{BinaryForm, Monomial, MultiPoly};
use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

/// A symmetric tensor of order `d` on `C^(n+1)`, stored as the homogeneous
/// polynomial `f(x_1, ..., x_{n+1})` it defines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricTensor {
    poly: MultiPoly,
    degree: u32,
}

impl SymmetricTensor {
    /// Wraps a nonzero homogeneous polynomial, inferring its degree.
    pub fn new(poly: MultiPoly) -> Result<Self> {
        if poly.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let degree = poly.homogeneous_degree().ok_or(Error::NonHomogeneous)?;
        Self::with_degree(poly, degree)
    }

    /// Wraps a polynomial whose terms all have total degree `degree`
    /// (the zero polynomial is accepted).
    pub fn with_degree(poly: MultiPoly, degree: u32) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidDegree(
                "tensor degree must be positive".into(),
            ));
        }
        if poly.n_vars() == 0 {
            return Err(Error::ArityMismatch {
                expected: 1,
                found: 0,
            });
        }
        if poly.terms().any(|(m, _)| m.degree() != degree) {
            return Err(Error::NonHomogeneous);
        }
        Ok(Self { poly, degree })
    }

    /// Binary form from coefficients `a_0..a_d` under the binomial
    /// convention `f = Σ C(d,j) a_j x1^(d-j) x2^j`.
    pub fn from_binomial_coeffs(a: &[ExactScalar]) -> Result<Self> {
        if a.len() < 2 {
            return Err(Error::InvalidDegree("need at least a_0, a_1".into()));
        }
        let d = (a.len() - 1) as u32;
        let mut p = MultiPoly::zero(2);
        let mut binom = 1i64;
        for (j, aj) in a.iter().enumerate() {
            p.add_term(
                Monomial::new(vec![d - j as u32, j as u32]),
                &(aj * &ExactScalar::from_int(binom)),
            );
            binom = binom * (d as i64 - j as i64) / (j as i64 + 1);
        }
        Self::with_degree(p, d)
    }

    /// Scaled Fermat polynomial `Σ a_i x_i^d`.
    pub fn fermat(a: &[ExactScalar], d: u32) -> Result<Self> {
        let n_vars = a.len();
        let mut p = MultiPoly::zero(n_vars);
        for (i, ai) in a.iter().enumerate() {
            p.add_term(Monomial::pure_power(n_vars, i, d), ai);
        }
        Self::with_degree(p, d)
    }

    /// `‖x‖^(2k)` in `n_vars` variables.
    pub fn quadric_power(n_vars: usize, k: u32) -> Result<Self> {
        Self::with_degree(MultiPoly::quadric(n_vars).pow(k), 2 * k)
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Dimension parameter: the tensor lives on `C^(n+1)`.
    pub fn n(&self) -> usize {
        self.poly.n_vars() - 1
    }

    pub fn n_vars(&self) -> usize {
        self.poly.n_vars()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// `(∂f/∂x_1, ..., ∂f/∂x_{n+1})`, each homogeneous of degree `d - 1`.
    pub fn gradient(&self) -> Vec<MultiPoly> {
        (0..self.n_vars())
            .map(|i| self.poly.derivative(i))
            .collect()
    }

    pub fn scaled(&self, c: &ExactScalar) -> Self {
        Self {
            poly: self.poly.scale(c),
            degree: self.degree,
        }
    }

    pub fn evaluate(&self, x: &[Complex64]) -> Complex64 {
        self.poly.evaluate(x)
    }

    pub fn evaluate_exact(&self, x: &[ExactScalar]) -> ExactScalar {
        self.poly.evaluate_exact(x)
    }

    /// Euler residual `|<∇f(x), x> - d·f(x)|`.
    pub fn euler_check(&self, x: &[Complex64]) -> f64 {
        let grad: Complex64 = self
            .gradient()
            .iter()
            .zip(x)
            .map(|(g, xi)| g.evaluate(x) * xi)
            .sum();
        (grad - self.evaluate(x) * self.degree as f64).norm()
    }

    /// `f(A·x)` for an exact `(n+1)×(n+1)` matrix `A` given by rows.
    pub fn linear_change(&self, a: &[Vec<ExactScalar>]) -> Result<Self> {
        let m = self.n_vars();
        if a.len() != m || a.iter().any(|r| r.len() != m) {
            return Err(Error::ArityMismatch {
                expected: m,
                found: a.len(),
            });
        }
        let subs: Vec<MultiPoly> = a
            .iter()
            .map(|row| {
                let mut p = MultiPoly::zero(m);
                for (j, c) in row.iter().enumerate() {
                    p.add_term(Monomial::pure_power(m, j, 1), c);
                }
                p
            })
            .collect();
        Self::with_degree(self.poly.compose(&subs), self.degree)
    }

    /// Pulls `f` back along the rational parametrization
    /// `(s^2 - t^2, i(s^2 + t^2), 2st)` of the isotropic conic.
    pub fn restrict_to_conic(&self) -> Result<BinaryForm> {
        if self.n() != 2 {
            return Err(Error::UnsupportedDimension { n: self.n() });
        }
        let s2 = MultiPoly::monomial(Monomial::new(vec![2, 0]), ExactScalar::one());
        let t2 = MultiPoly::monomial(Monomial::new(vec![0, 2]), ExactScalar::one());
        let st2 = MultiPoly::monomial(Monomial::new(vec![1, 1]), ExactScalar::from_int(2));
        let x1 = &s2 - &t2;
        let x2 = (&s2 + &t2).scale(&ExactScalar::i());
        let g = self.poly.compose(&[x1, x2, st2]);
        BinaryForm::from_multipoly(&g, 2 * self.degree)
    }

    /// The point of the isotropic conic with parameters `(s, t)`.
    pub fn conic_point(s: Complex64, t: Complex64) -> [Complex64; 3] {
        let i = Complex64::new(0.0, 1.0);
        [s * s - t * t, i * (s * s + t * t), 2.0 * s * t]
    }

    /// Coefficients as `(exponents, value)` in graded-lex order.
    pub fn coefficients(&self) -> Vec<(Vec<u32>, ExactScalar)> {
        self.poly
            .terms()
            .map(|(m, c)| (m.exps().to_vec(), c.clone()))
            .collect()
    }

    pub fn is_real(&self) -> bool {
        self.poly.terms().all(|(_, c)| c.is_real())
    }

    /// True when some coefficient is nonzero.
    pub fn has_terms(&self) -> bool {
        !self.poly.terms().all(|(_, c)| c.is_zero())
    }
}
