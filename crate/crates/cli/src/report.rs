//! The `RunReport` JSON document.
//!
//! Exact values are `{"re": "p/q", "im": "p/q"}` string pairs. Floating-point
//! values are strings holding 17 significant digits, which round-trip every
//! `f64` exactly.

use std::collections::BTreeMap;
use std::fmt;

use espectra::invariants::{InvariantReport, MainTheoremReport};
use espectra::{EigenPair, ExactScalar};
use num_complex::Complex64;
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

/// An `f64` serialized as a 17-significant-digit decimal string.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Float(pub f64);

impl fmt::Display for Float {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.16e}", self.0)
    }
}

impl Serialize for Float {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Float {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map(Float).map_err(de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub re: Float,
    pub im: Float,
}

impl From<Complex64> for ComplexJson {
    fn from(z: Complex64) -> Self {
        Self {
            re: Float(z.re),
            im: Float(z.im),
        }
    }
}

impl ComplexJson {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.0, self.im.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactJson {
    pub re: String,
    pub im: String,
}

impl From<&ExactScalar> for ExactJson {
    fn from(c: &ExactScalar) -> Self {
        let (re, im) = c.to_parts();
        Self { re, im }
    }
}

impl ExactJson {
    pub fn value(&self) -> espectra::Result<ExactScalar> {
        ExactScalar::parse_parts(&self.re, &self.im)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairRow {
    pub lambda: ComplexJson,
    pub x: Vec<ComplexJson>,
    pub residual: Float,
}

impl From<&EigenPair> for PairRow {
    fn from(p: &EigenPair) -> Self {
        Self {
            lambda: p.lambda.into(),
            x: p.x.iter().map(|&v| v.into()).collect(),
            residual: Float(p.residual),
        }
    }
}

/// `InvariantReport` with big integers as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsJson {
    pub n: usize,
    pub d: u32,
    pub count: String,
    pub phi: String,
    pub delta0: String,
    pub alpha: Vec<String>,
    pub beta: Vec<String>,
}

impl From<&InvariantReport> for InvariantsJson {
    fn from(r: &InvariantReport) -> Self {
        Self {
            n: r.n,
            d: r.d,
            count: r.count.to_string(),
            phi: r.phi.to_string(),
            delta0: r.delta0.to_string(),
            alpha: r.alpha.iter().map(ToString::to_string).collect(),
            beta: r.beta.iter().map(ToString::to_string).collect(),
        }
    }
}

/// One verified tensor.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremRow {
    pub n: usize,
    pub d: u32,
    pub seed: Option<u64>,
    pub vieta: ExactJson,
    pub resultant: ExactJson,
    pub discriminant: ExactJson,
    pub constant_c: ExactJson,
    pub leading_ratio: ExactJson,
    pub relative_error: Float,
    pub passed: bool,
}

impl TheoremRow {
    pub fn new(r: &MainTheoremReport, seed: Option<u64>) -> Self {
        Self {
            n: r.n,
            d: r.d,
            seed,
            vieta: (&r.vieta).into(),
            resultant: (&r.resultant).into(),
            discriminant: (&r.discriminant).into(),
            constant_c: (&r.constant_c).into(),
            leading_ratio: (&r.leading_ratio).into(),
            relative_error: Float(r.relative_error),
            passed: r.passed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Verdict {
    pub fn from_checks(checks: Vec<Check>) -> Self {
        Self {
            passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }
}

/// Output of every subcommand except `generate`. Every key is always written;
/// fields that do not apply to a command are `null`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: Vec<String>,
    /// SHA-256 of the input file, hex.
    pub input_digest: Option<String>,
    /// `c_0, c_1, ...` up to the top nonzero coefficient.
    pub psi_coeffs: Option<Vec<ExactJson>>,
    pub parity: Option<String>,
    /// Expected degree of `ψ` for `echar` and `verify`; expected number of
    /// sign classes `N` for `eigen`.
    pub n_expected: Option<usize>,
    pub psi_degree: Option<usize>,
    pub identically_zero: Option<bool>,
    pub deficient: Option<bool>,
    /// Isotropic eigenvector witnessing a degree drop.
    pub certificate: Option<Vec<ComplexJson>>,
    pub pairs: Option<Vec<PairRow>>,
    pub count: Option<usize>,
    pub product: Option<ComplexJson>,
    pub unrecovered: Option<Vec<ComplexJson>>,
    pub theorem: Option<Vec<TheoremRow>>,
    pub constant_ratio: Option<ExactJson>,
    pub invariants: Option<InvariantsJson>,
    pub verdict: Option<Verdict>,
    pub warnings: Vec<String>,
    /// Wall-clock seconds per stage.
    pub timings: BTreeMap<String, Float>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}
