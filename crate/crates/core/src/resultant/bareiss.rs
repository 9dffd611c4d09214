use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use crate::scalar::{scale_to_gauss, ExactRing, ExactScalar, GaussInt};

/// Fraction-free Gaussian elimination. Consumes the matrix; returns its
/// determinant in the same ring.
///
/// After step `k` every entry below row `k` is a `(k+1)×(k+1)` minor, so the
/// division by the previous pivot is always exact.
pub(crate) fn bareiss<R: ExactRing + PartialEq>(mut a: Vec<Vec<R>>) -> R {
    let n = a.len();
    if n == 0 {
        return R::one_elem();
    }
    let mut negate = false;
    let mut prev = R::one_elem();
    for k in 0..n {
        if a[k][k].is_zero_elem() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero_elem()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return R::zero_elem(),
            }
        }
        if k + 1 == n {
            break;
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        let unit_step = *pivot == prev;
        let prev_is_one = prev == R::one_elem();
        for row in rest.iter_mut() {
            let factor = std::mem::replace(&mut row[k], R::zero_elem());
            if factor.is_zero_elem() {
                // row_j ← row_j·pivot/prev
                if unit_step {
                    continue;
                }
                for x in row[k + 1..].iter_mut() {
                    if !x.is_zero_elem() {
                        *x = x.mul(pivot).div_exact(&prev);
                    }
                }
            } else {
                for (x, p) in row[k + 1..].iter_mut().zip(&pivot_row[k + 1..]) {
                    let t = if p.is_zero_elem() {
                        if x.is_zero_elem() {
                            continue;
                        }
                        x.mul(pivot)
                    } else if x.is_zero_elem() {
                        factor.mul(p).neg()
                    } else {
                        x.mul(pivot).sub(&factor.mul(p))
                    };
                    *x = if prev_is_one { t } else { t.div_exact(&prev) };
                }
            }
        }
        prev = pivot.clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

/// Exact determinant of a square matrix of Gaussian rationals.
///
/// Each row is scaled by the lcm of its denominators, the integer matrix is
/// eliminated over `Z` or `Z[i]`, and the scale is divided back out.
pub fn determinant(rows: &[Vec<ExactScalar>]) -> ExactScalar {
    let n = rows.len();
    assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
    let scales: Vec<BigInt> = rows
        .iter()
        .map(|r| {
            r.iter()
                .fold(<BigInt as One>::one(), |acc, x| acc.lcm(&x.denom_lcm()))
        })
        .collect();
    let scaled: Vec<Vec<GaussInt>> = rows
        .iter()
        .zip(&scales)
        .map(|(r, s)| r.iter().map(|x| scale_to_gauss(x, s)).collect())
        .collect();
    let det = det_gauss(scaled);
    let denom: BigInt = scales.iter().product();
    &det / &ExactScalar::real(BigRational::from_integer(denom))
}

/// Determinant over `Z[i]`, eliminating over `Z` when every entry is real.
pub(crate) fn det_gauss(m: Vec<Vec<GaussInt>>) -> ExactScalar {
    if m.iter().flatten().all(|x| num_traits::Zero::is_zero(&x.im)) {
        let ints = m
            .into_iter()
            .map(|r| r.into_iter().map(|x| x.re).collect())
            .collect();
        ExactScalar::from_bigint(bareiss::<BigInt>(ints))
    } else {
        bareiss(m).into_exact()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn m(rows: &[&[i64]]) -> Vec<Vec<ExactScalar>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| ExactScalar::from_int(x)).collect())
            .collect()
    }

    #[test]
    fn small_integer_determinants() {
        assert_eq!(
            determinant(&m(&[&[2, 0], &[0, 3]])),
            ExactScalar::from_int(6)
        );
        assert_eq!(
            determinant(&m(&[&[0, 1], &[1, 0]])),
            ExactScalar::from_int(-1)
        );
        assert_eq!(
            determinant(&m(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]])),
            ExactScalar::from_int(4)
        );
        assert!(determinant(&m(&[&[1, 2], &[2, 4]])).is_zero());
        assert_eq!(determinant(&[]), ExactScalar::from_int(1));
    }

    #[test]
    fn rational_and_gaussian_entries() {
        let half = ExactScalar::ratio(1, 2);
        let i = ExactScalar::i();
        // [[1/2, i], [i, 1/2]] → 1/4 + 1
        let a = vec![vec![half.clone(), i.clone()], vec![i, half]];
        assert_eq!(determinant(&a), ExactScalar::ratio(5, 4));
    }

    #[test]
    fn matches_cofactor_expansion_on_vandermonde() {
        // det V(x_0..x_4) = Π_{i<j} (x_j - x_i)
        let xs = [-2i64, 1, 3, 4, 7];
        let rows: Vec<Vec<ExactScalar>> = xs
            .iter()
            .map(|&x| (0..5).map(|k| ExactScalar::from_int(x.pow(k))).collect())
            .collect();
        let mut expected = 1i64;
        for i in 0..5 {
            for j in i + 1..5 {
                expected *= xs[j] - xs[i];
            }
        }
        assert_eq!(determinant(&rows), ExactScalar::from_int(expected));
    }
}
