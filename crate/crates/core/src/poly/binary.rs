use num_complex::Complex64;
use num_traits::{One, Zero};

use super::{Monomial, MultiPoly, UniPoly};
use crate::error::{Error, Result};
use crate::roots;
use crate::scalar::ExactScalar;

/// Binary form `Σ_j coeffs[j]·s^(degree-j)·t^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    degree: u32,
    coeffs: Vec<ExactScalar>,
}

impl BinaryForm {
    pub fn new(degree: u32, coeffs: Vec<ExactScalar>) -> Self {
        assert_eq!(coeffs.len(), degree as usize + 1);
        Self { degree, coeffs }
    }

    pub fn zero(degree: u32) -> Self {
        Self::new(degree, vec![ExactScalar::zero(); degree as usize + 1])
    }

    /// Reads a homogeneous polynomial in two variables as a binary form of
    /// the given degree.
    pub fn from_multipoly(p: &MultiPoly, degree: u32) -> Result<Self> {
        if p.n_vars() != 2 {
            return Err(Error::ArityMismatch {
                expected: 2,
                found: p.n_vars(),
            });
        }
        let mut coeffs = vec![ExactScalar::zero(); degree as usize + 1];
        for (m, c) in p.terms() {
            if m.degree() != degree {
                return Err(Error::NonHomogeneous);
            }
            coeffs[m.exps()[1] as usize] = c.clone();
        }
        Ok(Self { degree, coeffs })
    }

    pub fn to_multipoly(&self) -> MultiPoly {
        let mut p = MultiPoly::zero(2);
        for (j, c) in self.coeffs.iter().enumerate() {
            p.add_term(Monomial::new(vec![self.degree - j as u32, j as u32]), c);
        }
        p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn partial_s(&self) -> Self {
        if self.degree == 0 {
            return Self::zero(0);
        }
        let coeffs = (0..self.degree as usize)
            .map(|j| &self.coeffs[j] * &ExactScalar::from_int((self.degree as usize - j) as i64))
            .collect();
        Self::new(self.degree - 1, coeffs)
    }

    pub fn partial_t(&self) -> Self {
        if self.degree == 0 {
            return Self::zero(0);
        }
        let coeffs = (1..=self.degree as usize)
            .map(|j| &self.coeffs[j] * &ExactScalar::from_int(j as i64))
            .collect();
        Self::new(self.degree - 1, coeffs)
    }

    /// Affine chart `s = 1`, as a polynomial in `t`.
    pub fn dehomogenize(&self) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.clone())
    }

    /// Multiplicity of the root `[s:t] = [0:1]`.
    pub fn multiplicity_at_infinity(&self) -> u32 {
        if self.is_zero() {
            return self.degree;
        }
        self.coeffs.iter().rev().take_while(|c| c.is_zero()).count() as u32
    }

    /// Monic greatest common divisor of two nonzero binary forms.
    pub fn gcd(&self, other: &Self) -> Self {
        let g = self.dehomogenize().gcd(&other.dehomogenize());
        let inf = self
            .multiplicity_at_infinity()
            .min(other.multiplicity_at_infinity());
        let gd = g.degree().unwrap_or(0) as u32;
        let degree = gd + inf;
        let mut coeffs = vec![ExactScalar::zero(); degree as usize + 1];
        for (j, c) in g.coeffs().iter().enumerate() {
            coeffs[j] = c.clone();
        }
        if g.is_zero() {
            coeffs[0] = ExactScalar::one();
        }
        Self::new(degree, coeffs)
    }

    pub fn eval(&self, s: &ExactScalar, t: &ExactScalar) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for (j, c) in self.coeffs.iter().enumerate() {
            acc += &(&(c * &s.pow(self.degree - j as u32)) * &t.pow(j as u32));
        }
        acc
    }

    /// Numeric projective roots `(s, t)`, with multiplicity, normalized to
    /// `s = 1` except for roots at infinity.
    pub fn projective_roots(&self) -> Vec<(Complex64, Complex64)> {
        let p = self.dehomogenize();
        let mut out: Vec<(Complex64, Complex64)> = roots::roots_of(&p)
            .into_iter()
            .map(|t| (Complex64::new(1.0, 0.0), t))
            .collect();
        for _ in 0..self.multiplicity_at_infinity() {
            out.push((Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> ExactScalar {
        ExactScalar::from_int(n)
    }

    #[test]
    fn gcd_tracks_roots_at_infinity() {
        // s^2 t and s t^2 share s t
        let a = BinaryForm::new(3, vec![c(0), c(1), c(0), c(0)]);
        let b = BinaryForm::new(3, vec![c(0), c(0), c(1), c(0)]);
        let g = a.gcd(&b);
        assert_eq!(g, BinaryForm::new(2, vec![c(0), c(1), c(0)]));
        // s and t are coprime
        let s = BinaryForm::new(1, vec![c(1), c(0)]);
        let t = BinaryForm::new(1, vec![c(0), c(1)]);
        assert_eq!(s.gcd(&t).degree(), 0);
    }

    #[test]
    fn euler_identity_on_partials() {
        let f = BinaryForm::new(3, vec![c(2), c(-1), c(5), c(3)]);
        let (s, t) = (c(3), c(-2));
        let lhs = &(&s * &f.partial_s().eval(&s, &t)) + &(&t * &f.partial_t().eval(&s, &t));
        assert_eq!(lhs, &c(3) * &f.eval(&s, &t));
    }

    #[test]
    fn multipoly_round_trip() {
        let f = BinaryForm::new(2, vec![c(1), c(4), c(1)]);
        assert_eq!(BinaryForm::from_multipoly(&f.to_multipoly(), 2).unwrap(), f);
    }
}
