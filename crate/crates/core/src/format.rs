//! JSON formats for tensors and λ-parametric eigen-systems.
//!
//! A tensor is `{"n": 2, "d": 3, "coeffs": [{"exp": [3,0,0], "re": "0", "im": "342"}, ...]}`.
//! `re` and `im` are exact rationals written as `"p/q"` strings or plain
//! integers. With `"binary_binomial": true` (only for `n = 1`) the
//! coefficient at `[d-j, j]` is read as `a_j` in `f = Σ C(d,j) a_j x_1^(d-j) x_2^j`.
//!
//! A system lists forms `constant + λ·linear` in the same coefficient notation:
//! `{"n_vars": 4, "degrees": [2,2,2,2], "parity": "odd", "n_expected": 14,
//!   "forms": [{"constant": [...], "linear": [...]}, ...]}`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::binomial;
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize};

use crate::echar::Parity;
use crate::error::{Error, Result};
use crate::poly::{Monomial, MultiPoly, SymmetricTensor};
use crate::resultant::ParametricSystem;
use crate::scalar::ExactScalar;

/// An exact rational given as a string or a JSON integer.
fn exact_string<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<String, D::Error> {
    match serde_json::Value::deserialize(de)? {
        serde_json::Value::String(s) => Ok(s),
        serde_json::Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string()),
        other => Err(de::Error::custom(format!(
            "expected an exact rational string or integer, got {other}"
        ))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffJson {
    pub exp: Vec<u32>,
    #[serde(deserialize_with = "exact_string")]
    pub re: String,
    #[serde(deserialize_with = "exact_string")]
    pub im: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorJson {
    pub n: usize,
    pub d: u32,
    pub coeffs: Vec<CoeffJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub binary_binomial: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormJson {
    pub constant: Vec<CoeffJson>,
    #[serde(default)]
    pub linear: Vec<CoeffJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemJson {
    pub n_vars: usize,
    pub degrees: Vec<u32>,
    pub parity: Parity,
    pub n_expected: usize,
    pub forms: Vec<FormJson>,
}

/// A parsed λ-parametric system with the metadata needed to read its `ψ`.
#[derive(Clone, Debug)]
pub struct SystemInput {
    pub system: ParametricSystem,
    pub parity: Parity,
    pub n_expected: usize,
}

/// Either input kind accepted by the command-line front end.
#[derive(Clone, Debug)]
pub enum Input {
    Tensor(SymmetricTensor),
    System(SystemInput),
}

fn coeffs_to_json(p: &MultiPoly) -> Vec<CoeffJson> {
    p.terms()
        .map(|(m, c)| {
            let (re, im) = c.to_parts();
            CoeffJson {
                exp: m.exps().to_vec(),
                re,
                im,
            }
        })
        .collect()
}

fn poly_from_json(n_vars: usize, coeffs: &[CoeffJson]) -> Result<MultiPoly> {
    let mut seen = BTreeSet::new();
    let mut p = MultiPoly::zero(n_vars);
    for c in coeffs {
        if c.exp.len() != n_vars {
            return Err(Error::ArityMismatch {
                expected: n_vars,
                found: c.exp.len(),
            });
        }
        if !seen.insert(c.exp.clone()) {
            return Err(Error::Parse(format!("duplicate exponent {:?}", c.exp)));
        }
        let value = ExactScalar::parse_parts(&c.re, &c.im)?;
        p.add_term(Monomial::new(c.exp.clone()), &value);
    }
    Ok(p)
}

impl TensorJson {
    pub fn from_tensor(f: &SymmetricTensor) -> Self {
        Self {
            n: f.n(),
            d: f.degree(),
            coeffs: coeffs_to_json(f.poly()),
            binary_binomial: None,
        }
    }

    pub fn to_tensor(&self) -> Result<SymmetricTensor> {
        let n_vars = self.n + 1;
        for c in &self.coeffs {
            if c.exp.len() == n_vars && c.exp.iter().sum::<u32>() != self.d {
                return Err(Error::NonHomogeneous);
            }
        }
        let mut p = poly_from_json(n_vars, &self.coeffs)?;
        if self.binary_binomial == Some(true) {
            if self.n != 1 {
                return Err(Error::Parse("binary_binomial requires n = 1".into()));
            }
            let d = BigInt::from(self.d);
            p = MultiPoly::from_terms(
                2,
                p.terms().map(|(m, c)| {
                    let j = BigInt::from(m.exps()[1]);
                    (
                        m.exps().to_vec(),
                        c * &ExactScalar::from_bigint(binomial(d.clone(), j)),
                    )
                }),
            )?;
        }
        SymmetricTensor::with_degree(p, self.d)
    }
}

impl SystemJson {
    pub fn from_system(sys: &ParametricSystem, parity: Parity, n_expected: usize) -> Self {
        Self {
            n_vars: sys.n_vars(),
            degrees: sys.degrees().to_vec(),
            parity,
            n_expected,
            forms: sys
                .constant_parts()
                .iter()
                .zip(sys.linear_parts())
                .map(|(c, l)| FormJson {
                    constant: coeffs_to_json(c),
                    linear: coeffs_to_json(l),
                })
                .collect(),
        }
    }

    pub fn to_input(&self) -> Result<SystemInput> {
        let m = self.n_vars;
        let mut constant = Vec::with_capacity(self.forms.len());
        let mut linear = Vec::with_capacity(self.forms.len());
        for form in &self.forms {
            constant.push(poly_from_json(m, &form.constant)?);
            linear.push(poly_from_json(m, &form.linear)?);
        }
        Ok(SystemInput {
            system: ParametricSystem::new(constant, linear, self.degrees.clone())?,
            parity: self.parity,
            n_expected: self.n_expected,
        })
    }
}

/// Parses a tensor.
pub fn parse_tensor(text: &str) -> Result<SymmetricTensor> {
    let json: TensorJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    json.to_tensor()
}

/// Parses a tensor or, when a `"forms"` key is present, a system.
pub fn parse_input(text: &str) -> Result<Input> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if value.get("forms").is_some() {
        let json: SystemJson =
            serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(Input::System(json.to_input()?))
    } else {
        let json: TensorJson =
            serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(Input::Tensor(json.to_tensor()?))
    }
}

/// Pretty JSON for a tensor, coefficients in graded-lex order.
pub fn tensor_to_json(f: &SymmetricTensor) -> String {
    serde_json::to_string_pretty(&TensorJson::from_tensor(f)).expect("tensor JSON serializes")
}

/// Pretty JSON for a system.
pub fn system_to_json(sys: &ParametricSystem, parity: Parity, n_expected: usize) -> String {
    serde_json::to_string_pretty(&SystemJson::from_system(sys, parity, n_expected))
        .expect("system JSON serializes")
}
