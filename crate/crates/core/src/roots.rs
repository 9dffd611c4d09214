//! Simultaneous root finding for univariate polynomials (Aberth–Ehrlich).

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::UniPoly;
use crate::scalar::ExactScalar;

const MAX_ITERATIONS: usize = 200;
const SEED: u64 = 0x5eed_ab3e;
const EXACT_NEWTON_STEPS: usize = 8;

/// All complex roots of `p` with multiplicity. Exact zero roots are split off
/// before iterating, so `x^k·q(x)` returns exactly `k` zeros.
pub fn roots_of(p: &UniPoly) -> Vec<Complex64> {
    let coeffs = p.to_complex_coeffs();
    let zeros = p
        .coeffs()
        .iter()
        .take_while(|c| num_traits::Zero::is_zero(*c))
        .count();
    let mut out = vec![Complex64::new(0.0, 0.0); zeros];
    out.extend(roots_complex(&coeffs[zeros.min(coeffs.len())..]));
    out
}

/// Newton steps on a simple root with `p(z)/p'(z)` evaluated exactly at the
/// current double-precision iterate, so cancellation in `p` cannot stall
/// convergence.
fn exact_newton(p: &UniPoly, dp: &UniPoly, mut z: Complex64) -> Complex64 {
    for _ in 0..EXACT_NEWTON_STEPS {
        let Some(x) = ExactScalar::from_complex(z) else {
            return z;
        };
        let Some(step) = p.eval(&x).checked_div(&dp.eval(&x)) else {
            return z;
        };
        let step = step.to_complex();
        if !step.is_finite() {
            return z;
        }
        z -= step;
        if step.norm() <= 1e-17 * z.norm() {
            break;
        }
    }
    z
}

/// Distinct roots of `p` with their exact multiplicities, from the roots of
/// the square-free factors of `p`.
pub fn roots_with_multiplicity(p: &UniPoly) -> Vec<(Complex64, usize)> {
    let mut out: Vec<(Complex64, usize)> = p
        .squarefree_decomposition()
        .iter()
        .flat_map(|(factor, k)| {
            let dfactor = factor.derivative();
            roots_of(factor)
                .into_iter()
                .map(move |z| (exact_newton(factor, &dfactor, z), *k))
        })
        .collect();
    out.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
    out
}

/// Roots of `Σ coeffs[k]·x^k`. The leading coefficient must be nonzero.
pub fn roots_complex(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut coeffs = coeffs.to_vec();
    while coeffs
        .last()
        .is_some_and(|c| *c == Complex64::new(0.0, 0.0))
    {
        coeffs.pop();
    }
    let n = match coeffs.len() {
        0 | 1 => return Vec::new(),
        len => len - 1,
    };
    if n == 1 {
        return vec![-coeffs[0] / coeffs[1]];
    }
    // λ = σμ brings the root moduli near 1; σ^n = |c_0 / c_n|.
    let sigma = if coeffs[0].norm() > 0.0 {
        (coeffs[0].norm() / coeffs[n].norm()).powf(1.0 / n as f64)
    } else {
        1.0
    };
    let scaled: Vec<Complex64> = coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| c * sigma.powi(k as i32) / coeffs[n])
        .collect();
    let mut z = aberth(&scaled);
    for zk in z.iter_mut() {
        *zk *= sigma;
        *zk = newton_polish(&coeffs, *zk);
    }
    z.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    z
}

fn eval_with_derivative(coeffs: &[Complex64], x: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp)
}

fn aberth(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let offset: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let r = rng.gen_range(0.9..1.1);
            Complex64::from_polar(r, offset + std::f64::consts::TAU * k as f64 / n as f64)
        })
        .collect();
    let mut done = vec![false; n];
    for _ in 0..MAX_ITERATIONS {
        let mut all_done = true;
        for k in 0..n {
            if done[k] {
                continue;
            }
            let (p, dp) = eval_with_derivative(coeffs, z[k]);
            if p.norm() == 0.0 {
                done[k] = true;
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| {
                    let diff = z[k] - z[j];
                    if diff.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        1.0 / diff
                    }
                })
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.is_finite() {
                continue;
            }
            z[k] -= step;
            if step.norm() <= 1e-15 * (1.0 + z[k].norm()) {
                done[k] = true;
            } else {
                all_done = false;
            }
        }
        if all_done {
            break;
        }
    }
    z
}

/// One Newton step, kept only if it lowers `|p|`.
fn newton_polish(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let (p, dp) = eval_with_derivative(coeffs, z);
    if dp.norm() == 0.0 {
        return z;
    }
    let candidate = z - p / dp;
    let (pc, _) = eval_with_derivative(coeffs, candidate);
    if candidate.is_finite() && pc.norm() < p.norm() {
        candidate
    } else {
        z
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_roots(roots: &[i64]) -> UniPoly {
        roots
            .iter()
            .fold(UniPoly::constant(ExactScalar::from_int(1)), |acc, &r| {
                &acc * &UniPoly::linear_root(&ExactScalar::from_int(r))
            })
    }

    #[test]
    fn integer_roots() {
        let r = roots_of(&from_roots(&[-3, 1, 2, 7]));
        let expected = [-3.0, 1.0, 2.0, 7.0];
        for (z, e) in r.iter().zip(expected) {
            assert!((z - Complex64::new(e, 0.0)).norm() < 1e-10, "{z}");
        }
    }

    #[test]
    fn zero_roots_are_exact() {
        let p = &from_roots(&[0, 0]) * &from_roots(&[5]);
        let r = roots_of(&p);
        assert_eq!(r.iter().filter(|z| z.norm() == 0.0).count(), 2);
        assert!(r
            .iter()
            .any(|z| (z - Complex64::new(5.0, 0.0)).norm() < 1e-10));
    }

    #[test]
    fn unit_circle_and_badly_scaled() {
        // x^2 + 1
        let p = UniPoly::from_coeffs(vec![
            ExactScalar::from_int(1),
            ExactScalar::from_int(0),
            ExactScalar::from_int(1),
        ]);
        let r = roots_of(&p);
        assert!(r
            .iter()
            .all(|z| (z.norm() - 1.0).abs() < 1e-12 && z.re.abs() < 1e-12));
        // roots 1e6 and 2e6
        let q = from_roots(&[1_000_000, 2_000_000]);
        let r = roots_of(&q);
        assert!((r[0].re - 1e6).abs() < 1e-4 && (r[1].re - 2e6).abs() < 1e-4);
    }

    #[test]
    fn multiplicities_are_exact() {
        let p = &from_roots(&[1, 1, -2, 3, 3, 3]) * &from_roots(&[0]);
        let r = roots_with_multiplicity(&p);
        let k: Vec<usize> = r.iter().map(|z| z.1).collect();
        assert_eq!(k, vec![1, 1, 2, 3]);
        assert!((r[2].0 - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        assert!((r[3].0 - Complex64::new(3.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn double_root() {
        let r = roots_of(&from_roots(&[1, 1, -2]));
        assert!(
            r.iter()
                .filter(|z| (*z - Complex64::new(1.0, 0.0)).norm() < 1e-6)
                .count()
                == 2
        );
    }
}
