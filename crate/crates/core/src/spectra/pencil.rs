//! Starting vectors from the Macaulay pencil `M(λ) = M_c + λ M_l`.
//!
//! The rows of the Macaulay matrix of the eigen-system are linear in `λ`. At
//! a simple root of `ψ` the matrix has a one-dimensional right kernel spanned
//! by the monomials of degree `D` evaluated at the eigenvector, so ratios of
//! kernel entries give the eigenvector directly.

use std::collections::HashMap;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::echar::{build_even_system, build_odd_system, Parity};
use crate::poly::{Monomial, SymmetricTensor};
use crate::resultant::{next_permutation, MacaulaySystem};

use super::bilinear;

/// Largest pencil built for starting vectors; beyond this only random starts
/// are used.
const PENCIL_LIMIT: usize = 1000;
const INVERSE_STEPS: usize = 2;

pub(crate) struct MacaulayPencil {
    constant: DMatrix<Complex64>,
    linear: DMatrix<Complex64>,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// 1 when the first variable is the auxiliary `x_0` of the odd system.
    offset: usize,
    /// Variable renaming applied to the system: variable `k` became `perm[k]`.
    perm: Vec<usize>,
}

fn dense(sys: &MacaulaySystem) -> DMatrix<Complex64> {
    let rows = sys.matrix();
    let n = rows.len();
    DMatrix::from_fn(n, n, |i, j| rows[i][j].to_complex())
}

/// Numerical rank test of `M′` at a fixed generic `λ`.
fn minor_is_regular(
    constant: &DMatrix<Complex64>,
    linear: &DMatrix<Complex64>,
    columns: &[usize],
) -> bool {
    if columns.is_empty() {
        return true;
    }
    let lambda = Complex64::new(0.37, 0.61);
    let k = columns.len();
    let minor = DMatrix::from_fn(k, k, |i, j| {
        let (r, c) = (columns[i], columns[j]);
        constant[(r, c)] + linear[(r, c)] * lambda
    });
    let s = minor.singular_values();
    let (lo, hi) = (s.min(), s.max());
    hi > 0.0 && lo > 1e-10 * hi
}

impl MacaulayPencil {
    pub fn new(f: &SymmetricTensor) -> Option<Self> {
        let (sys, offset) = match Parity::of(f.degree()) {
            Parity::Even => (build_even_system(f).ok()?, 0),
            Parity::Odd => (build_odd_system(f).ok()?, 1),
        };
        let degrees = sys.degrees().to_vec();
        let constant =
            MacaulaySystem::with_degrees(sys.constant_parts().to_vec(), degrees.clone()).ok()?;
        if constant.size() > PENCIL_LIMIT {
            return None;
        }
        let linear = MacaulaySystem::with_degrees(sys.linear_parts().to_vec(), degrees).ok()?;
        // A structurally singular minor `M′` makes `M(λ)` singular for every
        // `λ`, so the kernel would not single out the eigenvector.
        let mut perm: Vec<usize> = (0..constant.forms().len()).collect();
        loop {
            let c = constant.permuted(&perm).ok()?;
            let l = linear.permuted(&perm).ok()?;
            let (mc, ml) = (dense(&c), dense(&l));
            if minor_is_regular(&mc, &ml, c.reduced_columns()) {
                let monomials = c.monomials().to_vec();
                let index = monomials
                    .iter()
                    .cloned()
                    .enumerate()
                    .map(|(k, m)| (m, k))
                    .collect();
                return Some(Self {
                    constant: mc,
                    linear: ml,
                    monomials,
                    index,
                    offset,
                    perm,
                });
            }
            if !next_permutation(&mut perm) {
                return None;
            }
        }
    }

    /// A few steps of inverse iteration on `M(λ)`, read off as a unit vector
    /// `x` with `<x, x> = 1`.
    pub fn start(&self, lambda: Complex64) -> Option<Vec<Complex64>> {
        let m = &self.constant + &self.linear * lambda;
        let lu = m.lu();
        let size = self.monomials.len();
        let mut v = DVector::from_fn(size, |k, _| {
            Complex64::new(1.0 + (k % 7) as f64 * 0.1, 0.3 - (k % 5) as f64 * 0.1)
        });
        for _ in 0..INVERSE_STEPS {
            v = lu.solve(&v)?;
            let norm = v.norm();
            if !norm.is_finite() || norm == 0.0 {
                return None;
            }
            v /= Complex64::new(norm, 0.0);
        }
        let top = (0..size).max_by(|&a, &b| v[a].norm().total_cmp(&v[b].norm()))?;
        let mono = &self.monomials[top];
        let n_vars = mono.n_vars();
        let j = (0..n_vars).max_by_key(|&k| mono.exps()[k])?;
        let base = Monomial::pure_power(n_vars, j, 1).quotient_of(mono);
        let y: Vec<Complex64> = (self.offset..n_vars)
            .map(|i| v[self.index[&base.mul(&Monomial::pure_power(n_vars, self.perm[i], 1))]])
            .collect();
        let q = bilinear(&y, &y);
        let scale: f64 = y.iter().map(|c| c.norm_sqr()).sum();
        if q.norm() <= 1e-12 * scale {
            return None;
        }
        let s = q.sqrt();
        Some(y.iter().map(|c| c / s).collect())
    }
}
