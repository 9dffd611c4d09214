//! Macaulay resultants modulo a prime `p ≡ 1 (mod 4)`.
//!
//! Reduction sends `i` to a fixed square root of `-1` in `F_p`. When the
//! denominator minor stays invertible mod `p`, the image of the exact
//! resultant is `det M / det M′ mod p`, so a nonzero image certifies that the
//! exact value is nonzero. This makes degree checks affordable for systems
//! whose exact Bareiss elimination is too slow.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::macaulay::{next_permutation, permutation_is_odd, MacaulaySystem};
use super::parametric::{node, ParametricSystem};
use crate::poly::Monomial;
use crate::scalar::ExactScalar;

/// Arithmetic in `F_p` for a prime `p ≡ 1 (mod 4)` below `2^63`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    sqrt_minus_one: u64,
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for b in BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl PrimeField {
    /// `None` unless `p` is a prime congruent to 1 mod 4.
    pub fn new(p: u64) -> Option<Self> {
        if p % 4 != 1 || p >= 1 << 63 || !is_prime(p) {
            return None;
        }
        // c^((p-1)/4) squares to -1 for any quadratic non-residue c.
        let c = (2..).find(|&c| pow_mod(c, (p - 1) / 2, p) == p - 1)?;
        let sqrt_minus_one = pow_mod(c, (p - 1) / 4, p);
        Some(Self { p, sqrt_minus_one })
    }

    /// The `k`-th prime `≡ 1 (mod 4)` counting down from `2^62`.
    pub fn nth_large(k: usize) -> Self {
        let mut candidate = (1u64 << 62) + 1;
        let mut found = 0;
        loop {
            candidate -= 4;
            if let Some(f) = Self::new(candidate) {
                if found == k {
                    return f;
                }
                found += 1;
            }
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.p as u128) as u64
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.p - b % self.p)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.p)
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        (!a.is_multiple_of(self.p)).then(|| pow_mod(a, self.p - 2, self.p))
    }

    fn reduce_int(&self, n: &BigInt) -> u64 {
        let r = n % BigInt::from(self.p);
        let r = if r < BigInt::zero() {
            r + BigInt::from(self.p)
        } else {
            r
        };
        r.to_u64().unwrap()
    }

    fn reduce_rational(&self, q: &BigRational) -> Option<u64> {
        let den = self.inv(self.reduce_int(q.denom()))?;
        Some(self.mul(self.reduce_int(q.numer()), den))
    }

    /// Image of `re + im·i`; `None` when a denominator vanishes mod `p`.
    pub fn reduce(&self, x: &ExactScalar) -> Option<u64> {
        let re = self.reduce_rational(x.re())?;
        let im = self.reduce_rational(x.im())?;
        Some(self.add(re, self.mul(im, self.sqrt_minus_one)))
    }

    /// Determinant by Gaussian elimination.
    pub fn determinant(&self, mut a: Vec<Vec<u64>>) -> u64 {
        let n = a.len();
        let mut det = 1u64;
        for k in 0..n {
            let Some(piv) = (k..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            if piv != k {
                a.swap(piv, k);
                det = self.sub(0, det);
            }
            det = self.mul(det, a[k][k]);
            let inv = self.inv(a[k][k]).unwrap();
            let (top, rest) = a.split_at_mut(k + 1);
            let pivot_row = &top[k];
            for row in rest.iter_mut() {
                if row[k] == 0 {
                    continue;
                }
                let factor = self.mul(row[k], inv);
                for j in k..n {
                    if pivot_row[j] != 0 {
                        row[j] = self.sub(row[j], self.mul(factor, pivot_row[j]));
                    }
                }
            }
        }
        det
    }

    fn minor(
        &self,
        sys: &MacaulaySystem,
        images: &[HashMap<Monomial, u64>],
        indices: &[usize],
    ) -> u64 {
        let m = sys.forms().len();
        let index: HashMap<&Monomial, usize> = sys
            .monomials()
            .iter()
            .enumerate()
            .map(|(k, x)| (x, k))
            .collect();
        let position: HashMap<usize, usize> =
            indices.iter().enumerate().map(|(k, &j)| (j, k)).collect();
        let rows = indices
            .iter()
            .map(|&r| {
                let i = sys.row_forms()[r];
                let shift =
                    Monomial::pure_power(m, i, sys.degrees()[i]).quotient_of(&sys.monomials()[r]);
                let mut dense = vec![0u64; indices.len()];
                for (t, &c) in &images[i] {
                    if let Some(&k) = position.get(&index[&shift.mul(t)]) {
                        dense[k] = c;
                    }
                }
                dense
            })
            .collect();
        self.determinant(rows)
    }

    /// Image of `macaulay_resultant`; `None` when a coefficient does not
    /// reduce or the denominator minor is singular mod `p`.
    pub fn macaulay_resultant(&self, sys: &MacaulaySystem) -> Option<u64> {
        if sys.has_zero_form() {
            return Some(0);
        }
        let images = sys
            .forms()
            .iter()
            .map(|f| {
                f.terms()
                    .map(|(m, c)| Some((m.clone(), self.reduce(c)?)))
                    .collect::<Option<HashMap<_, _>>>()
            })
            .collect::<Option<Vec<_>>>()?;
        let den = self.minor(sys, &images, sys.reduced_columns());
        let den_inv = self.inv(den)?;
        let all: Vec<usize> = (0..sys.size()).collect();
        Some(self.mul(self.minor(sys, &images, &all), den_inv))
    }

    /// Image of the permutation-retrying resultant.
    pub fn resultant(&self, sys: &MacaulaySystem) -> Option<u64> {
        let odd_product = sys.degrees().iter().all(|d| d % 2 == 1);
        let mut perm: Vec<usize> = (0..sys.forms().len()).collect();
        loop {
            let candidate = sys.permuted(&perm).ok()?;
            if let Some(v) = self.macaulay_resultant(&candidate) {
                return Some(if odd_product && permutation_is_odd(&perm) {
                    self.sub(0, v)
                } else {
                    v
                });
            }
            if !next_permutation(&mut perm) {
                return None;
            }
        }
    }

    /// Image of `parametric_resultant` as coefficients `c_0..c_bound` in
    /// `F_p`, or `None` if too many nodes fail to reduce.
    pub fn parametric_resultant(
        &self,
        sys: &ParametricSystem,
        degree_bound: usize,
    ) -> Option<Vec<u64>> {
        let needed = degree_bound + 1;
        let mut xs = Vec::with_capacity(needed);
        let mut ys = Vec::with_capacity(needed);
        let mut k = 0;
        while xs.len() < needed {
            if k >= needed + 32 {
                return None;
            }
            let lambda = ExactScalar::from_int(node(k));
            k += 1;
            let Ok(s) = MacaulaySystem::with_degrees(sys.at(&lambda), sys.degrees().to_vec())
            else {
                return None;
            };
            if let Some(v) = self.resultant(&s) {
                xs.push(self.reduce(&lambda)?);
                ys.push(v);
            }
        }
        Some(self.interpolate(&xs, &ys))
    }

    /// Newton interpolation through distinct nodes.
    pub fn interpolate(&self, xs: &[u64], ys: &[u64]) -> Vec<u64> {
        let n = xs.len();
        let mut table = ys.to_vec();
        for level in 1..n {
            for k in (level..n).rev() {
                let num = self.sub(table[k], table[k - 1]);
                let den = self
                    .inv(self.sub(xs[k], xs[k - level]))
                    .expect("distinct nodes");
                table[k] = self.mul(num, den);
            }
        }
        let mut acc = vec![0u64; n];
        for k in (0..n).rev() {
            // acc ← acc·(x - xs[k]) + table[k]
            let mut next = vec![0u64; n];
            for (j, &a) in acc.iter().enumerate() {
                if j + 1 < n {
                    next[j + 1] = self.add(next[j + 1], a);
                }
                next[j] = self.sub(next[j], self.mul(a, xs[k]));
            }
            next[0] = self.add(next[0], table[k]);
            acc = next;
        }
        acc
    }
}

/// Degree of a coefficient vector, `None` if all entries vanish.
pub fn degree_of(coeffs: &[u64]) -> Option<usize> {
    coeffs.iter().rposition(|&c| c != 0)
}
