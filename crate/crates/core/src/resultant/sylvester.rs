use num_traits::Zero;

use super::bareiss::determinant;
use crate::error::{Error, Result};
use crate::poly::{BinaryForm, MultiPoly};
use crate::scalar::ExactScalar;

/// Resultant of two binary forms via the Sylvester matrix.
///
/// Coefficients are read in the order `x1^m, x1^(m-1)x2, ..., x2^m`, so that
/// `Res(x1, x2) = 1`.
pub fn sylvester_resultant(p: &MultiPoly, q: &MultiPoly) -> Result<ExactScalar> {
    let (p, q) = (as_binary(p)?, as_binary(q)?);
    Ok(sylvester_binary(&p, &q))
}

fn as_binary(p: &MultiPoly) -> Result<BinaryForm> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let d = p.homogeneous_degree().ok_or(Error::NonHomogeneous)?;
    if d == 0 {
        return Err(Error::InvalidDegree(
            "Sylvester resultant needs positive degrees".into(),
        ));
    }
    BinaryForm::from_multipoly(p, d)
}

/// Sylvester resultant of two binary forms of the stated degrees; zero forms
/// give zero.
pub(crate) fn sylvester_binary(p: &BinaryForm, q: &BinaryForm) -> ExactScalar {
    let (m, k) = (p.degree() as usize, q.degree() as usize);
    let size = m + k;
    if size == 0 {
        return ExactScalar::from_int(1);
    }
    let mut rows = vec![vec![ExactScalar::zero(); size]; size];
    for r in 0..k {
        for (j, c) in p.coeffs().iter().enumerate() {
            rows[r][r + j] = c.clone();
        }
    }
    for r in 0..m {
        for (j, c) in q.coeffs().iter().enumerate() {
            rows[k + r][r + j] = c.clone();
        }
    }
    determinant(&rows)
}
