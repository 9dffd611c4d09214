use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::bareiss::det_gauss;
use crate::error::{Error, Result};
use crate::poly::{Monomial, MultiPoly, UniPoly};
use crate::scalar::{scale_to_gauss, ExactScalar, GaussInt};

/// Largest Macaulay matrix dimension the engine will build.
pub const MATRIX_LIMIT: usize = 3000;

/// A square system of `m` homogeneous forms in `m` variables together with
/// the layout of its Macaulay matrix.
///
/// Rows and columns are both indexed by the monomials of the critical degree
/// `D = Σ(d_i - 1) + 1`, in graded-lex order. The row of a monomial `μ` holds
/// `(μ / x_i^(d_i))·f_i` for the first `i` with `x_i^(d_i) | μ`; with this
/// layout the system `(x_i^(d_i))` has the identity as its matrix.
#[derive(Clone, Debug)]
pub struct MacaulaySystem {
    forms: Vec<MultiPoly>,
    degrees: Vec<u32>,
    critical_degree: u32,
    monomials: Vec<Monomial>,
    row_form: Vec<usize>,
    reduced_columns: Vec<usize>,
}

/// An exact resultant and whether its sign was fixed by Fermat calibration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResultantValue {
    pub value: ExactScalar,
    pub sign_normalized: bool,
}

fn binomial(n: u64, k: u64) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

impl MacaulaySystem {
    /// Builds the system, inferring each degree from its form.
    pub fn new(forms: Vec<MultiPoly>) -> Result<Self> {
        let degrees = forms
            .iter()
            .map(|f| {
                if f.is_zero() {
                    return Err(Error::ZeroPolynomial);
                }
                f.homogeneous_degree().ok_or(Error::NonHomogeneous)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::with_degrees(forms, degrees)
    }

    /// Builds the system with declared degrees; zero forms are allowed.
    pub fn with_degrees(forms: Vec<MultiPoly>, degrees: Vec<u32>) -> Result<Self> {
        let m = forms.len();
        if m == 0 || degrees.len() != m {
            return Err(Error::ArityMismatch {
                expected: m,
                found: degrees.len(),
            });
        }
        for (f, &d) in forms.iter().zip(&degrees) {
            if f.n_vars() != m {
                return Err(Error::ArityMismatch {
                    expected: m,
                    found: f.n_vars(),
                });
            }
            if d == 0 {
                return Err(Error::InvalidDegree("form degrees must be positive".into()));
            }
            if f.terms().any(|(mono, _)| mono.degree() != d) {
                return Err(Error::NonHomogeneous);
            }
        }
        let critical_degree = degrees.iter().map(|d| d - 1).sum::<u32>() + 1;
        let size = binomial(critical_degree as u64 + m as u64 - 1, m as u64 - 1);
        if size > MATRIX_LIMIT as u128 {
            return Err(Error::MatrixTooLarge {
                size: size.min(usize::MAX as u128) as usize,
                limit: MATRIX_LIMIT,
            });
        }
        let monomials = Monomial::all_of_degree(m, critical_degree);
        let mut row_form = Vec::with_capacity(monomials.len());
        let mut reduced_columns = Vec::new();
        for (idx, mono) in monomials.iter().enumerate() {
            let divisors: Vec<usize> = (0..m).filter(|&i| mono.exps()[i] >= degrees[i]).collect();
            row_form.push(divisors[0]);
            if divisors.len() >= 2 {
                reduced_columns.push(idx);
            }
        }
        Ok(Self {
            forms,
            degrees,
            critical_degree,
            monomials,
            row_form,
            reduced_columns,
        })
    }

    pub fn forms(&self) -> &[MultiPoly] {
        &self.forms
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn critical_degree(&self) -> u32 {
        self.critical_degree
    }

    /// Row and column basis of the numerator matrix.
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// Index of the form generating each row.
    pub fn row_forms(&self) -> &[usize] {
        &self.row_form
    }

    /// Indices of the monomials divisible by at least two pure powers
    /// `x_i^(d_i)`; rows and columns of the denominator minor.
    pub fn reduced_columns(&self) -> &[usize] {
        &self.reduced_columns
    }

    pub fn size(&self) -> usize {
        self.monomials.len()
    }

    pub fn has_zero_form(&self) -> bool {
        self.forms.iter().any(MultiPoly::is_zero)
    }

    /// Sparse rows `(column, coefficient)` of the numerator matrix.
    pub(crate) fn sparse_rows(&self) -> Vec<Vec<(usize, &ExactScalar)>> {
        let index: HashMap<&Monomial, usize> = self
            .monomials
            .iter()
            .enumerate()
            .map(|(k, m)| (m, k))
            .collect();
        let m = self.forms.len();
        self.monomials
            .iter()
            .zip(&self.row_form)
            .map(|(mono, &i)| {
                let shift = Monomial::pure_power(m, i, self.degrees[i]).quotient_of(mono);
                self.forms[i]
                    .terms()
                    .map(|(t, c)| (index[&shift.mul(t)], c))
                    .collect()
            })
            .collect()
    }

    /// The numerator matrix `M`, dense.
    pub fn matrix(&self) -> Vec<Vec<ExactScalar>> {
        let n = self.size();
        self.sparse_rows()
            .into_iter()
            .map(|row| {
                let mut dense = vec![ExactScalar::zero(); n];
                for (j, c) in row {
                    dense[j] = c.clone();
                }
                dense
            })
            .collect()
    }

    /// `(det M, det M′)`, exact.
    pub fn determinants(&self) -> (ExactScalar, ExactScalar) {
        let den = self.denominator_determinant();
        (self.numerator_determinant(), den)
    }

    pub(crate) fn numerator_determinant(&self) -> ExactScalar {
        let all: Vec<usize> = (0..self.size()).collect();
        self.minor_determinant(&all)
    }

    pub(crate) fn denominator_determinant(&self) -> ExactScalar {
        self.minor_determinant(&self.reduced_columns)
    }

    /// Determinant of the principal minor on `indices`, computed over the
    /// Gaussian integers after clearing each form's denominators.
    fn minor_determinant(&self, indices: &[usize]) -> ExactScalar {
        let scales: Vec<BigInt> = self
            .forms
            .iter()
            .map(|f| {
                f.terms()
                    .fold(BigInt::one(), |acc, (_, c)| acc.lcm(&c.denom_lcm()))
            })
            .collect();
        let scaled_forms: Vec<HashMap<&Monomial, GaussInt>> = self
            .forms
            .iter()
            .zip(&scales)
            .map(|(f, s)| f.terms().map(|(m, c)| (m, scale_to_gauss(c, s))).collect())
            .collect();
        let position: HashMap<usize, usize> =
            indices.iter().enumerate().map(|(k, &j)| (j, k)).collect();
        let index: HashMap<&Monomial, usize> = self
            .monomials
            .iter()
            .enumerate()
            .map(|(k, m)| (m, k))
            .collect();
        let m = self.forms.len();
        let zero = GaussInt {
            re: BigInt::zero(),
            im: BigInt::zero(),
        };
        let mut denom = BigInt::one();
        let rows: Vec<Vec<GaussInt>> = indices
            .iter()
            .map(|&r| {
                let i = self.row_form[r];
                denom *= &scales[i];
                let shift =
                    Monomial::pure_power(m, i, self.degrees[i]).quotient_of(&self.monomials[r]);
                let mut dense = vec![zero.clone(); indices.len()];
                for (t, c) in &scaled_forms[i] {
                    if let Some(&k) = position.get(&index[&shift.mul(t)]) {
                        dense[k] = c.clone();
                    }
                }
                dense
            })
            .collect();
        &det_gauss(rows) / &ExactScalar::real(BigRational::from_integer(denom))
    }

    /// The same system with variables renamed: variable `k` becomes `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let forms = self.forms.iter().map(|f| f.permute_vars(perm)).collect();
        Self::with_degrees(forms, self.degrees.clone())
    }
}

/// Value of `det M / det M′` on `(x_1^(d_1), ..., x_m^(d_m))`, cached per
/// degree profile. Dividing by it forces `Res` of that system to be `1`.
fn calibration(degrees: &[u32]) -> ExactScalar {
    static CACHE: OnceLock<Mutex<HashMap<Vec<u32>, ExactScalar>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(degrees) {
        return v.clone();
    }
    let m = degrees.len();
    let forms = degrees
        .iter()
        .enumerate()
        .map(|(i, &d)| MultiPoly::monomial(Monomial::pure_power(m, i, d), ExactScalar::one()))
        .collect();
    let sys = MacaulaySystem::with_degrees(forms, degrees.to_vec()).expect("valid Fermat system");
    let (num, den) = sys.determinants();
    let value = &num / &den;
    cache
        .lock()
        .unwrap()
        .insert(degrees.to_vec(), value.clone());
    value
}

/// `det M / det M′`, normalized so that `Res(x_1^(d_1), ..., x_m^(d_m)) = 1`.
///
/// Fails with [`Error::DenominatorSingular`] when the minor `M′` vanishes;
/// the resultant itself may still be nonzero, see [`resultant`].
pub fn macaulay_resultant(sys: &MacaulaySystem) -> Result<ExactScalar> {
    if sys.has_zero_form() {
        return Ok(ExactScalar::zero());
    }
    let den = sys.denominator_determinant();
    if den.is_zero() {
        return Err(Error::DenominatorSingular);
    }
    let num = sys.numerator_determinant();
    let cal = calibration(sys.degrees());
    Ok(&(&num / &den) / &cal)
}

/// Lexicographic successor of a permutation; `false` after the last one.
pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

pub(crate) fn permutation_is_odd(p: &[usize]) -> bool {
    let mut inversions = 0usize;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

/// The resultant of `forms`, retrying under variable permutations when the
/// Macaulay denominator is singular.
///
/// Renaming variables by a permutation `σ` multiplies the resultant by
/// `sign(σ)^(d_1⋯d_m)`, which is undone here.
pub fn resultant(forms: Vec<MultiPoly>, degrees: Vec<u32>) -> Result<ResultantValue> {
    let sys = MacaulaySystem::with_degrees(forms, degrees)?;
    let degree_product_odd = sys.degrees().iter().all(|d| d % 2 == 1);
    let mut perm: Vec<usize> = (0..sys.forms().len()).collect();
    loop {
        let candidate = if perm.iter().enumerate().all(|(k, &p)| k == p) {
            sys.clone()
        } else {
            sys.permuted(&perm)?
        };
        match macaulay_resultant(&candidate) {
            Ok(value) => {
                let value = if degree_product_odd && permutation_is_odd(&perm) {
                    -value
                } else {
                    value
                };
                return Ok(ResultantValue {
                    value,
                    sign_normalized: true,
                });
            }
            Err(Error::DenominatorSingular) => {
                if !next_permutation(&mut perm) {
                    return perturbed_resultant(&sys).map(|value| ResultantValue {
                        value,
                        sign_normalized: true,
                    });
                }
            }
            Err(e) => return Err(e),
        }
    }
}

/// `Res(f_i + ε x_i^(d_i))` is a polynomial in `ε` of degree at most
/// `Σ_i Π_(j≠i) d_j` whose denominator is nonsingular for all but finitely
/// many `ε`; interpolating it and evaluating at `ε = 0` recovers `Res(f)`
/// when every variable order leaves the denominator singular.
fn perturbed_resultant(sys: &MacaulaySystem) -> Result<ExactScalar> {
    let degrees = sys.degrees();
    let m = degrees.len();
    let bound: usize = (0..m)
        .map(|i| {
            (0..m)
                .filter(|&j| j != i)
                .map(|j| degrees[j] as usize)
                .product::<usize>()
        })
        .sum();
    let needed = bound + 1;
    let mut nodes = Vec::with_capacity(needed);
    let mut values = Vec::with_capacity(needed);
    for k in 1..=(needed + 32) as i64 {
        let eps = ExactScalar::from_int(k);
        let forms = sys
            .forms()
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let mut g = f.clone();
                g.add_term(Monomial::pure_power(m, i, degrees[i]), &eps);
                g
            })
            .collect();
        let shifted = MacaulaySystem::with_degrees(forms, degrees.to_vec())?;
        match macaulay_resultant(&shifted) {
            Ok(v) => {
                nodes.push(eps);
                values.push(v);
                if nodes.len() == needed {
                    let p = UniPoly::interpolate(&nodes, &values);
                    return Ok(p.eval(&ExactScalar::from_int(0)));
                }
            }
            Err(Error::DenominatorSingular) => {}
            Err(e) => return Err(e),
        }
    }
    Err(Error::DenominatorSingular)
}
