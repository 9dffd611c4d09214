use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::Monomial;
use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

/// Sparse multivariate polynomial with exact Gaussian-rational coefficients.
///
/// Terms are keyed by exponent vector and iterate in graded-lex order.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    n_vars: usize,
    terms: BTreeMap<Monomial, ExactScalar>,
}

impl MultiPoly {
    pub fn zero(n_vars: usize) -> Self {
        Self {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n_vars: usize, c: ExactScalar) -> Self {
        Self::monomial(Monomial::one(n_vars), c)
    }

    pub fn var(n_vars: usize, index: usize) -> Self {
        Self::monomial(Monomial::pure_power(n_vars, index, 1), ExactScalar::one())
    }

    pub fn monomial(m: Monomial, c: ExactScalar) -> Self {
        let n_vars = m.n_vars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { n_vars, terms }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(n_vars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, ExactScalar)>,
    {
        let mut p = Self::zero(n_vars);
        for (exps, c) in terms {
            if exps.len() != n_vars {
                return Err(Error::ArityMismatch {
                    expected: n_vars,
                    found: exps.len(),
                });
            }
            p.add_term(Monomial::new(exps), &c);
        }
        Ok(p)
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> ExactScalar {
        self.terms
            .get(&Monomial::new(exps.to_vec()))
            .cloned()
            .unwrap_or_else(ExactScalar::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: &ExactScalar) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.n_vars(), self.n_vars);
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Total degree of the highest term; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// The common degree of all terms, if there is one.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.n_vars);
        }
        Self {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(self.n_vars, ExactScalar::one());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.n_vars);
        for (m, c) in &self.terms {
            let e = m.exps()[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[var] -= 1;
            out.add_term(Monomial::new(exps), &(c * &ExactScalar::from_int(e as i64)));
        }
        out
    }

    pub fn evaluate(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.n_vars, "point length must equal n_vars");
        self.terms
            .iter()
            .map(|(m, c)| {
                m.exps()
                    .iter()
                    .zip(point)
                    .fold(c.to_complex(), |acc, (&e, &x)| acc * x.powu(e))
            })
            .sum()
    }

    /// `Σ |c_α|·|x^α|`, an upper bound for `|p(x)|`.
    pub fn evaluate_majorant(&self, point: &[Complex64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.exps()
                    .iter()
                    .zip(point)
                    .fold(c.to_complex().norm(), |acc, (&e, x)| {
                        acc * x.norm().powi(e as i32)
                    })
            })
            .sum()
    }

    pub fn evaluate_exact(&self, point: &[ExactScalar]) -> ExactScalar {
        assert_eq!(point.len(), self.n_vars, "point length must equal n_vars");
        let mut acc = ExactScalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (&e, x) in m.exps().iter().zip(point) {
                if e > 0 {
                    t = &t * &x.pow(e);
                }
            }
            acc += &t;
        }
        acc
    }

    /// Substitutes `x_i := subs[i]`; the result lives in the ring of `subs`.
    pub fn compose(&self, subs: &[MultiPoly]) -> Self {
        assert_eq!(subs.len(), self.n_vars);
        let target = subs.first().map_or(0, MultiPoly::n_vars);
        let mut powers: Vec<Vec<MultiPoly>> = subs
            .iter()
            .map(|s| vec![MultiPoly::constant(target, ExactScalar::one()), s.clone()])
            .collect();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &subs[i];
                    powers[i].push(next);
                }
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Re-embeds the polynomial into `n_vars` variables, shifting its
    /// variables to start at index `offset`.
    pub fn lift(&self, n_vars: usize, offset: usize) -> Self {
        assert!(offset + self.n_vars <= n_vars);
        let mut out = Self::zero(n_vars);
        for (m, c) in &self.terms {
            let mut exps = vec![0; n_vars];
            exps[offset..offset + self.n_vars].copy_from_slice(m.exps());
            out.add_term(Monomial::new(exps), c);
        }
        out
    }

    /// Swaps variables according to `perm`: variable `i` becomes `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        let mut out = Self::zero(self.n_vars);
        for (m, c) in &self.terms {
            let mut exps = vec![0; self.n_vars];
            for (i, &e) in m.exps().iter().enumerate() {
                exps[perm[i]] = e;
            }
            out.add_term(Monomial::new(exps), c);
        }
        out
    }

    /// `x_1^2 + ... + x_n^2`.
    pub fn quadric(n_vars: usize) -> Self {
        let mut q = Self::zero(n_vars);
        for i in 0..n_vars {
            q.add_term(Monomial::pure_power(n_vars, i, 2), &ExactScalar::one());
        }
        q
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.n_vars, rhs.n_vars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.n_vars, rhs.n_vars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.n_vars, rhs.n_vars);
        let mut out = MultiPoly::zero(self.n_vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-ExactScalar::one())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (i, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{}", i + 1, e)?,
                }
            }
        }
        Ok(())
    }
}
