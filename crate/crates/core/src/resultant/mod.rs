//! Exact resultants of square homogeneous systems.
//!
//! [`sylvester_resultant`] handles two binary forms, [`macaulay_resultant`]
//! handles `m` forms in `m` variables, and [`parametric_resultant`] recovers
//! a resultant whose forms depend affinely on a parameter `λ` by sampling
//! and interpolating. All three share the normalization
//! `Res(x_1^(d_1), ..., x_m^(d_m)) = 1`.

mod bareiss;
mod macaulay;
pub mod modular;
mod parametric;
mod sylvester;

pub use bareiss::determinant;
pub(crate) use macaulay::next_permutation;
pub use macaulay::{macaulay_resultant, resultant, MacaulaySystem, ResultantValue, MATRIX_LIMIT};
pub use parametric::{parametric_resultant, ParametricSystem};
pub(crate) use sylvester::sylvester_binary;
pub use sylvester::sylvester_resultant;
