use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::ExactScalar;

/// Dense univariate polynomial, coefficients indexed by power.
///
/// The coefficient list never ends in zero; the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<ExactScalar>,
}

impl UniPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: ExactScalar) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `x - root`.
    pub fn linear_root(root: &ExactScalar) -> Self {
        Self::from_coeffs(vec![-root, ExactScalar::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<ExactScalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^power`, zero past the degree.
    pub fn coeff(&self, power: usize) -> ExactScalar {
        self.coeffs
            .get(power)
            .cloned()
            .unwrap_or_else(ExactScalar::zero)
    }

    pub fn leading(&self) -> Option<&ExactScalar> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &ExactScalar) -> ExactScalar {
        self.coeffs
            .iter()
            .rev()
            .fold(ExactScalar::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, c| acc * x + c.to_complex())
    }

    pub fn to_complex_coeffs(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(ExactScalar::to_complex).collect()
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &ExactScalar::from_int(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// True when every odd-power coefficient is exactly zero.
    pub fn is_even_function(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(Zero::is_zero)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lc_inv = divisor.leading().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![ExactScalar::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let q = &rem[rem.len() - 1] * &lc_inv;
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &(&q * dc);
            }
            quot[k] = q;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Yun's square-free decomposition: pairwise coprime square-free `a_k`
    /// with `self = lc·Π a_k^k`, returned as `(a_k, k)` for non-constant `a_k`.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree().is_none_or(|d| d == 0) {
            return out;
        }
        let dp = self.derivative();
        let a0 = self.gcd(&dp);
        let mut b = self.div_rem(&a0).0;
        let mut c = dp.div_rem(&a0).0;
        let mut k = 1;
        while b.degree().is_some_and(|d| d > 0) {
            let d = &c - &b.derivative();
            let a = b.gcd(&d);
            b = b.div_rem(&a).0;
            c = d.div_rem(&a).0;
            if a.degree().is_some_and(|d| d > 0) {
                out.push((a, k));
            }
            k += 1;
        }
        out
    }

    /// Splits off a positive rational factor so that the remaining
    /// coefficients are Gaussian integers whose parts have gcd 1.
    /// Returns `(primitive, factor)` with `self = factor·primitive`.
    pub fn primitive_part(&self) -> (Self, ExactScalar) {
        if self.is_zero() {
            return (Self::zero(), ExactScalar::one());
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(&c.denom_lcm()));
        let scale = ExactScalar::from_bigint(lcm.clone());
        let ints: Vec<ExactScalar> = self.coeffs.iter().map(|c| c * &scale).collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| {
            acc.gcd(&c.re().to_integer()).gcd(&c.im().to_integer())
        });
        let factor = ExactScalar::real(BigRational::new(content, lcm));
        let inv = factor.inv().expect("nonzero content");
        (self.scale(&inv), factor)
    }

    /// Unique polynomial of degree `< nodes.len()` through `(nodes[k], values[k])`,
    /// by Newton divided differences. Nodes must be distinct.
    pub fn interpolate(nodes: &[ExactScalar], values: &[ExactScalar]) -> Self {
        assert_eq!(nodes.len(), values.len());
        let n = nodes.len();
        let mut table = values.to_vec();
        for level in 1..n {
            for k in (level..n).rev() {
                let num = &table[k] - &table[k - 1];
                let den = &nodes[k] - &nodes[k - level];
                table[k] = &num / &den;
            }
        }
        // Horner on the Newton form.
        let mut acc = Self::zero();
        for k in (0..n).rev() {
            acc = &(&acc * &Self::linear_root(&nodes[k])) + &Self::constant(table[k].clone());
        }
        acc
    }
}

impl<'a> Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![ExactScalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UniPoly::from_coeffs(out)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{k}")?,
            }
        }
        Ok(())
    }
}
