//! Test tensors: seeded random forms, scaled Fermat forms, forms tangent to
//! the isotropic quadric, irregular forms, and a fixed tangent ternary cubic.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::invariants::{discriminant_for, gradient_resultant};
use crate::poly::{Monomial, MultiPoly, SymmetricTensor};
use crate::resultant::ParametricSystem;
use crate::scalar::ExactScalar;

/// Coefficients of random forms are drawn from `-COEFF_RANGE..=COEFF_RANGE`.
pub const COEFF_RANGE: i64 = 9;
const MAX_REJECTIONS: usize = 1000;

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A form of degree `d` in `n_vars` variables with independent integer
/// coefficients in `-COEFF_RANGE..=COEFF_RANGE`.
fn random_form(rng: &mut ChaCha8Rng, n_vars: usize, d: u32) -> MultiPoly {
    let mut p = MultiPoly::zero(n_vars);
    for m in Monomial::all_of_degree(n_vars, d) {
        let c = rng.gen_range(-COEFF_RANGE..=COEFF_RANGE);
        p.add_term(m, &ExactScalar::from_int(c));
    }
    p
}

fn nonzero_int(rng: &mut ChaCha8Rng) -> i64 {
    let v = rng.gen_range(1..=COEFF_RANGE);
    if rng.gen_bool(0.5) {
        v
    } else {
        -v
    }
}

fn check_shape(n: usize, d: u32) -> Result<()> {
    if n < 1 {
        return Err(Error::UnsupportedDimension { n });
    }
    if d < 2 {
        return Err(Error::InvalidDegree(format!(
            "generated forms need d >= 2, got {d}"
        )));
    }
    Ok(())
}

/// Whether `f` has the full number of eigenvalues and a nonzero gradient
/// resultant. Decided exactly for `n ≤ 2`; larger `n` only checks the resultant.
pub fn is_generic(f: &SymmetricTensor) -> Result<bool> {
    if f.n() <= 2 {
        match discriminant_for(f) {
            Ok(disc) if disc.is_zero() => return Ok(false),
            Ok(_) => {}
            Err(Error::DegenerateRestriction) => return Ok(false),
            Err(e) => return Err(e),
        }
    }
    Ok(!gradient_resultant(f)?.is_zero())
}

/// A random real form with small integer coefficients, resampled until it is
/// regular, non-deficient and nonsingular (see [`is_generic`]).
pub fn random_tensor(n: usize, d: u32, seed: u64) -> Result<SymmetricTensor> {
    check_shape(n, d)?;
    let mut rng = rng_for(seed);
    for _ in 0..MAX_REJECTIONS {
        let p = random_form(&mut rng, n + 1, d);
        if p.is_zero() {
            continue;
        }
        let f = SymmetricTensor::with_degree(p, d)?;
        if is_generic(&f)? {
            return Ok(f);
        }
    }
    Err(Error::Degenerate("no generic form found".into()))
}

/// `n + 1` nonzero integers in `±(1..=COEFF_RANGE)`.
pub fn fermat_coefficients(n: usize, seed: u64) -> Vec<ExactScalar> {
    let mut rng = rng_for(seed);
    (0..=n)
        .map(|_| ExactScalar::from_int(nonzero_int(&mut rng)))
        .collect()
}

/// `Σ a_i x_i^d` with `a` from [`fermat_coefficients`].
pub fn fermat_tensor(n: usize, d: u32, seed: u64) -> Result<SymmetricTensor> {
    check_shape(n, d)?;
    SymmetricTensor::fermat(&fermat_coefficients(n, seed), d)
}

/// `x_1 + i x_2` lifted to `n_vars` variables: it vanishes at `(1, i, 0, ...)`
/// and cuts out the tangent line of the isotropic quadric there.
fn isotropic_line(n_vars: usize) -> MultiPoly {
    &MultiPoly::var(n_vars, 0) + &MultiPoly::var(n_vars, 1).scale(&ExactScalar::i())
}

/// A form with an isotropic eigenvector at `(1, i, 0)` (or `(1, i)`), hence
/// deficient.
///
/// `n = 1`: a random `f` minus `f(1, i)·x_1^d`, so `b_0 = f(1, i) = 0`.
/// `n = 2`: `f = L·M + q·R` with `L = x_1 + i x_2`, `q = ‖x‖^2` and random
/// `M`, `R`; then `f(P) = 0` and `∇f(P) = (M(P) + 2R(P))·P` at `P = (1, i, 0)`.
pub fn tangent_tensor(n: usize, d: u32, seed: u64) -> Result<SymmetricTensor> {
    check_shape(n, d)?;
    let mut rng = rng_for(seed);
    for _ in 0..MAX_REJECTIONS {
        let p = match n {
            1 => {
                let f = random_form(&mut rng, 2, d);
                let b0 = f.evaluate_exact(&[ExactScalar::one(), ExactScalar::i()]);
                &f - &MultiPoly::monomial(Monomial::pure_power(2, 0, d), b0)
            }
            2 => {
                let m = random_form(&mut rng, 3, d - 1);
                let r = random_form(&mut rng, 3, d - 2);
                &(&isotropic_line(3) * &m) + &(&MultiPoly::quadric(3) * &r)
            }
            n => return Err(Error::UnsupportedDimension { n }),
        };
        if p.is_zero() {
            continue;
        }
        let f = SymmetricTensor::with_degree(p, d)?;
        if !crate::echar::is_irregular(&f)? {
            return Ok(f);
        }
    }
    Err(Error::Degenerate("no regular tangent form found".into()))
}

/// A form whose gradient vanishes at the isotropic point `(1, i, 0, ...)`:
/// `L^2 R_1 + L x_3 R_2 + x_3^2 R_3` for `n ≥ 2` and `L^2 R` for `n = 1`,
/// with `L = x_1 + i x_2`.
pub fn irregular_tensor(n: usize, d: u32, seed: u64) -> Result<SymmetricTensor> {
    check_shape(n, d)?;
    let mut rng = rng_for(seed);
    let m = n + 1;
    let l = isotropic_line(m);
    for _ in 0..MAX_REJECTIONS {
        let mut p = &(&l * &l) * &random_form(&mut rng, m, d - 2);
        if n >= 2 {
            let x3 = MultiPoly::var(m, 2);
            p = &p + &(&(&l * &x3) * &random_form(&mut rng, m, d - 2));
            p = &p + &(&(&x3 * &x3) * &random_form(&mut rng, m, d - 2));
        }
        if !p.is_zero() {
            return SymmetricTensor::with_degree(p, d);
        }
    }
    Err(Error::Degenerate("no irregular form found".into()))
}

fn solve_exact(a: &[Vec<ExactScalar>], b: &[Vec<ExactScalar>]) -> Vec<Vec<ExactScalar>> {
    // Gauss-Jordan on [a | b]; a is invertible by construction.
    let k = a.len();
    let mut rows: Vec<Vec<ExactScalar>> = a
        .iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().chain(rb).cloned().collect())
        .collect();
    for col in 0..k {
        let pivot = (col..k)
            .find(|&r| !rows[r][col].is_zero())
            .expect("invertible matrix");
        rows.swap(col, pivot);
        let inv = rows[col][col].inv().expect("nonzero pivot");
        rows[col] = rows[col].iter().map(|v| v * &inv).collect();
        for r in 0..k {
            if r != col && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                let pivot_row = rows[col].clone();
                for (v, p) in rows[r].iter_mut().zip(&pivot_row) {
                    *v -= &(&factor * p);
                }
            }
        }
    }
    rows.into_iter().map(|r| r[k..].to_vec()).collect()
}

/// A random rational orthogonal matrix `(I - S)^(-1)(I + S)` from a skew
/// matrix `S` with small integer entries (Cayley transform).
#[allow(clippy::needless_range_loop)] // fills both triangles of `S`
pub fn cayley_orthogonal(dim: usize, seed: u64) -> Vec<Vec<ExactScalar>> {
    let mut rng = rng_for(seed);
    let mut s = vec![vec![ExactScalar::zero(); dim]; dim];
    for i in 0..dim {
        for j in i + 1..dim {
            let v = ExactScalar::from_int(rng.gen_range(-3..=3));
            s[j][i] = -&v;
            s[i][j] = v;
        }
    }
    let shifted = |sign: i64| -> Vec<Vec<ExactScalar>> {
        (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| {
                        let id = if i == j {
                            ExactScalar::one()
                        } else {
                            ExactScalar::zero()
                        };
                        &id + &(&s[i][j] * &ExactScalar::from_int(sign))
                    })
                    .collect()
            })
            .collect()
    };
    solve_exact(&shifted(-1), &shifted(1))
}

fn poly_from(terms: &[([u32; 3], i64, i64)]) -> MultiPoly {
    MultiPoly::from_terms(
        3,
        terms
            .iter()
            .map(|(e, re, im)| (e.to_vec(), ExactScalar::gauss(*re, *im))),
    )
    .expect("three variables")
}

/// A ternary cubic with one isotropic eigenvector `(0, 1, -i)` whose curve is
/// tangent to the isotropic conic there. Its characteristic polynomial has
/// degree 12 instead of 14.
pub fn tangent_cubic() -> SymmetricTensor {
    let p = poly_from(&[
        ([3, 0, 0], 0, 342),
        ([1, 2, 0], 0, -522),
        ([2, 0, 1], 0, -389),
        ([0, 2, 1], 0, 79),
        ([1, 0, 2], 0, -474),
        ([0, 0, 3], 0, 95),
        ([2, 1, 0], -773, 0),
        ([0, 3, 0], 191, 0),
        ([1, 1, 1], -48, 0),
        ([0, 1, 2], 175, 0),
    ]);
    SymmetricTensor::new(p).expect("homogeneous cubic")
}

/// The real cubic `g(z_1, z_2, z_3)` that [`tangent_cubic`] becomes under
/// `x_1 = i·z_1, x_2 = (z_2 + z_3)/2, x_3 = (z_2 - z_3)/(2i)`, up to the
/// factor `-i`. In these coordinates the isotropic quadric is `z_1^2 - z_2 z_3`.
pub fn tangent_cubic_z() -> SymmetricTensor {
    let p = poly_from(&[
        ([3, 0, 0], 342, 0),
        ([2, 1, 0], 581, 0),
        ([2, 0, 1], 192, 0),
        ([1, 1, 1], 498, 0),
        ([0, 2, 1], 139, 0),
        ([1, 0, 2], 24, 0),
        ([0, 1, 2], 48, 0),
        ([0, 0, 3], 4, 0),
    ]);
    SymmetricTensor::new(p).expect("homogeneous cubic")
}

/// The odd-degree eigen-system of [`tangent_cubic`] written in the
/// coordinates `(z_0, z_1, z_2, z_3)` of [`tangent_cubic_z`]:
///
/// ```text
/// z_0^2 + z_1^2 - z_2 z_3
/// g_1/3 + λ z_0 z_1
/// g_2/3 + g_3/3 - λ z_0 (z_2 + z_3)/2
/// g_2/3 - g_3/3 + λ z_0 (z_2 - z_3)/2
/// ```
///
/// where `g_k = ∂g/∂z_k`.
pub fn tangent_cubic_z_system() -> ParametricSystem {
    let g = tangent_cubic_z();
    let lift = |p: &MultiPoly| p.lift(4, 1);
    let third = ExactScalar::ratio(1, 3);
    let half = ExactScalar::ratio(1, 2);
    let grad: Vec<MultiPoly> = g
        .gradient()
        .iter()
        .map(|p| lift(&p.scale(&third)))
        .collect();
    let z = |k: usize| MultiPoly::var(4, k);
    let quad = &(&(&z(0) * &z(0)) + &(&z(1) * &z(1))) - &(&z(2) * &z(3));
    let constant = vec![
        quad,
        grad[0].clone(),
        &grad[1] + &grad[2],
        &grad[1] - &grad[2],
    ];
    let linear = vec![
        MultiPoly::zero(4),
        &z(0) * &z(1),
        (&z(0) * &(&z(2) + &z(3))).scale(&(-&half)),
        (&z(0) * &(&z(2) - &z(3))).scale(&half),
    ];
    ParametricSystem::new(constant, linear, vec![2, 2, 2, 2]).expect("well-formed system")
}
