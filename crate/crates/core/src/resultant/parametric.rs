use rayon::prelude::*;

use super::macaulay::resultant;
use crate::error::{Error, Result};
use crate::poly::{MultiPoly, UniPoly};
use crate::scalar::ExactScalar;

/// Extra nodes tried beyond `degree_bound + 1` before giving up.
const SPARE_NODES: usize = 32;

/// A square system whose forms are `constant_i + λ·linear_i`.
#[derive(Clone, Debug)]
pub struct ParametricSystem {
    n_vars: usize,
    degrees: Vec<u32>,
    constant: Vec<MultiPoly>,
    linear: Vec<MultiPoly>,
}

impl ParametricSystem {
    pub fn new(
        constant: Vec<MultiPoly>,
        linear: Vec<MultiPoly>,
        degrees: Vec<u32>,
    ) -> Result<Self> {
        let m = constant.len();
        if linear.len() != m || degrees.len() != m {
            return Err(Error::ArityMismatch {
                expected: m,
                found: linear.len().min(degrees.len()),
            });
        }
        for ((c, l), &d) in constant.iter().zip(&linear).zip(&degrees) {
            for p in [c, l] {
                if p.n_vars() != m {
                    return Err(Error::ArityMismatch {
                        expected: m,
                        found: p.n_vars(),
                    });
                }
                if p.terms().any(|(mono, _)| mono.degree() != d) {
                    return Err(Error::NonHomogeneous);
                }
            }
        }
        Ok(Self {
            n_vars: m,
            degrees,
            constant,
            linear,
        })
    }

    /// A system with no λ-dependence.
    pub fn constant(forms: Vec<MultiPoly>, degrees: Vec<u32>) -> Result<Self> {
        let linear = forms.iter().map(|f| MultiPoly::zero(f.n_vars())).collect();
        Self::new(forms, linear, degrees)
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn constant_parts(&self) -> &[MultiPoly] {
        &self.constant
    }

    pub fn linear_parts(&self) -> &[MultiPoly] {
        &self.linear
    }

    /// The forms at a fixed `λ`.
    pub fn at(&self, lambda: &ExactScalar) -> Vec<MultiPoly> {
        self.constant
            .iter()
            .zip(&self.linear)
            .map(|(c, l)| c + &l.scale(lambda))
            .collect()
    }

    /// `Res` of the specialized system, with permutation retries.
    pub fn resultant_at(&self, lambda: &ExactScalar) -> Result<ExactScalar> {
        Ok(resultant(self.at(lambda), self.degrees.clone())?.value)
    }
}

/// Interpolation node `k` in the order `0, 1, -1, 2, -2, ...`.
pub(crate) fn node(k: usize) -> i64 {
    let half = k.div_ceil(2) as i64;
    if k % 2 == 1 {
        half
    } else {
        -half
    }
}

/// The resultant of `sys` as a polynomial in `λ` of degree at most
/// `degree_bound`, by exact evaluation at integer nodes and Newton
/// interpolation. Nodes where every variable permutation leaves the Macaulay
/// denominator singular are skipped.
pub fn parametric_resultant(sys: &ParametricSystem, degree_bound: usize) -> Result<UniPoly> {
    let needed = degree_bound + 1;
    let max_nodes = needed + SPARE_NODES;
    let mut nodes = Vec::with_capacity(needed);
    let mut values = Vec::with_capacity(needed);
    let mut next = 0;
    while nodes.len() < needed {
        if next >= max_nodes {
            return Err(Error::InterpolationFailed {
                needed,
                found: nodes.len(),
            });
        }
        let batch: Vec<usize> = (next..max_nodes.min(next + needed - nodes.len())).collect();
        next += batch.len();
        let results: Vec<(ExactScalar, Result<ExactScalar>)> = batch
            .par_iter()
            .map(|&k| {
                let lambda = ExactScalar::from_int(node(k));
                let r = sys.resultant_at(&lambda);
                (lambda, r)
            })
            .collect();
        for (lambda, r) in results {
            match r {
                Ok(v) => {
                    nodes.push(lambda);
                    values.push(v);
                }
                Err(Error::DenominatorSingular) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(UniPoly::interpolate(&nodes, &values))
}
