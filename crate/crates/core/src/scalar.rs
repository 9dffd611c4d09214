//! Exact Gaussian-rational scalars.
//!
//! Every coefficient in the toolkit lives in `Q(i)`: a pair of arbitrary
//! precision rationals `re + im·i`. Real inputs are the `im = 0` subring.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An exact element `re + im·i` of the Gaussian rationals.
///
/// Serializes as `{"re": "p/q", "im": "p/q"}` so that no precision is lost.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "ScalarParts", try_from = "ScalarParts")]
pub struct ExactScalar {
    re: BigRational,
    im: BigRational,
}

impl ExactScalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Self {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(BigRational::from_integer(BigInt::from(n)))
    }

    /// The exact value of a finite double-precision complex number.
    pub fn from_complex(z: Complex64) -> Option<Self> {
        Some(Self::new(
            BigRational::from_float(z.re)?,
            BigRational::from_float(z.im)?,
        ))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::real(BigRational::from_integer(n))
    }

    /// `re + im·i` with integer parts.
    pub fn gauss(re: i64, im: i64) -> Self {
        Self {
            re: BigRational::from_integer(BigInt::from(re)),
            im: BigRational::from_integer(BigInt::from(im)),
        }
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::gauss(0, 1)
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// `re² + im²`, exact.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self {
            re: &self.re / &n,
            im: -&self.im / &n,
        })
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self * &r)
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
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

    /// Nearest double-precision complex value.
    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// `ln |z|`, accurate for magnitudes far outside the double range;
    /// `-inf` for zero.
    pub fn ln_abs(&self) -> f64 {
        let q = self.norm_sqr();
        if q.is_zero() {
            return f64::NEG_INFINITY;
        }
        0.5 * (ln_bigint(q.numer()) - ln_bigint(q.denom()))
    }

    /// Least common multiple of the denominators of both parts.
    pub fn denom_lcm(&self) -> BigInt {
        self.re.denom().lcm(self.im.denom())
    }

    /// Parses the JSON string pair used by the tensor format (`"p/q"` or `"p"`).
    pub fn parse_parts(re: &str, im: &str) -> Result<Self> {
        Ok(Self {
            re: parse_rational(re)?,
            im: parse_rational(im)?,
        })
    }

    /// String pair `(re, im)` suitable for lossless serialization.
    pub fn to_parts(&self) -> (String, String) {
        (self.re.to_string(), self.im.to_string())
    }
}

#[derive(Serialize, Deserialize)]
struct ScalarParts {
    re: String,
    im: String,
}

impl From<ExactScalar> for ScalarParts {
    fn from(c: ExactScalar) -> Self {
        let (re, im) = c.to_parts();
        Self { re, im }
    }
}

impl TryFrom<ScalarParts> for ExactScalar {
    type Error = Error;
    fn try_from(p: ScalarParts) -> Result<Self> {
        Self::parse_parts(&p.re, &p.im)
    }
}

/// `ln |n|` for a nonzero integer of any size.
fn ln_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().unwrap_or(f64::NAN).abs().ln();
    }
    let shift = bits - 64;
    let top: BigInt = n.abs() >> shift;
    top.to_f64().unwrap_or(f64::NAN).ln() + shift as f64 * std::f64::consts::LN_2
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    BigRational::from_str(t).map_err(|_| Error::Parse(format!("not an exact rational: {s:?}")))
}

impl Zero for ExactScalar {
    fn zero() -> Self {
        Self {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for ExactScalar {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for ExactScalar {
    fn from(r: BigRational) -> Self {
        Self::real(r)
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}*i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}*i", self.re, -&self.im)
        } else {
            write!(f, "{}+{}*i", self.re, self.im)
        }
    }
}

impl<'a> Add<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl<'a> Sub<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl<'a> Mul<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        if self.im.is_zero() && rhs.im.is_zero() {
            return ExactScalar::real(&self.re * &rhs.re);
        }
        ExactScalar {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

/// Panics on division by zero, like `BigRational`.
impl<'a> Div<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: &ExactScalar) -> ExactScalar {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, rhs: &ExactScalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&ExactScalar> for ExactScalar {
    fn mul_assign(&mut self, rhs: &ExactScalar) {
        *self = &*self * rhs;
    }
}

/// Gaussian integer `re + im·i`; the working ring of fraction-free elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

/// The minimal ring interface Bareiss elimination needs: exact division is
/// only ever called when the quotient is known to lie in the ring.
pub(crate) trait ExactRing: Clone {
    fn zero_elem() -> Self;
    fn one_elem() -> Self;
    fn is_zero_elem(&self) -> bool;
    fn mul(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn div_exact(&self, rhs: &Self) -> Self;
}

impl ExactRing for BigInt {
    fn zero_elem() -> Self {
        Zero::zero()
    }
    fn one_elem() -> Self {
        One::one()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        debug_assert!(Zero::is_zero(&(self % rhs)));
        self / rhs
    }
}

impl ExactRing for GaussInt {
    fn zero_elem() -> Self {
        GaussInt {
            re: <BigInt as Zero>::zero(),
            im: <BigInt as Zero>::zero(),
        }
    }
    fn one_elem() -> Self {
        GaussInt {
            re: <BigInt as One>::one(),
            im: <BigInt as Zero>::zero(),
        }
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn mul(&self, rhs: &Self) -> Self {
        if Zero::is_zero(&self.im) && Zero::is_zero(&rhs.im) {
            return GaussInt {
                re: &self.re * &rhs.re,
                im: <BigInt as Zero>::zero(),
            };
        }
        GaussInt {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        GaussInt {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
    fn neg(&self) -> Self {
        GaussInt {
            re: -&self.re,
            im: -&self.im,
        }
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        if Zero::is_zero(&rhs.im) {
            return GaussInt {
                re: &self.re / &rhs.re,
                im: &self.im / &rhs.re,
            };
        }
        let n = &rhs.re * &rhs.re + &rhs.im * &rhs.im;
        let re = &self.re * &rhs.re + &self.im * &rhs.im;
        let im = &self.im * &rhs.re - &self.re * &rhs.im;
        debug_assert!((&re % &n).is_zero() && (&im % &n).is_zero());
        GaussInt {
            re: re / &n,
            im: im / n,
        }
    }
}

impl GaussInt {
    pub fn into_exact(self) -> ExactScalar {
        ExactScalar::new(
            BigRational::from_integer(self.re),
            BigRational::from_integer(self.im),
        )
    }
}

/// Scales `value` by the integer `scale` and returns the Gaussian integer,
/// panicking if the product is not integral.
pub(crate) fn scale_to_gauss(value: &ExactScalar, scale: &BigInt) -> GaussInt {
    let to_int = |r: &BigRational| {
        let s = r * BigRational::from_integer(scale.clone());
        assert!(s.is_integer(), "denominator not cleared");
        s.to_integer()
    };
    GaussInt {
        re: to_int(&value.re),
        im: to_int(&value.im),
    }
}
