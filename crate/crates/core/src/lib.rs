//! E-eigenpairs, E-characteristic polynomials and resultants of symmetric
//! tensors, computed exactly where possible and in double precision where not.
//!
//! A symmetric tensor of order `d` on `C^(n+1)` is handled as the homogeneous
//! polynomial `f` it defines. An E-eigenpair is `(λ, x)` with
//! `(1/d)∇f(x) = λx` and `<x, x> = 1` (bilinear, not Hermitian).
//!
//! The pipeline runs bottom-up:
//! [`poly`] for exact arithmetic, [`resultant`] for Sylvester and Macaulay
//! resultants, [`echar`] for the characteristic polynomial `ψ_f`,
//! [`spectra`] for eigenpairs and [`invariants`] for the closed-form
//! quantities that tie the eigenvalue product to resultants and discriminants.

pub mod echar;
pub mod error;
pub mod format;
pub mod generate;
pub mod invariants;
pub mod poly;
pub mod resultant;
pub mod roots;
pub mod scalar;
pub mod spectra;

pub use echar::{e_char_poly, ECharPoly, Parity};
pub use error::{Error, Result};
pub use poly::{BinaryForm, Monomial, MultiPoly, SymmetricTensor, UniPoly};
pub use scalar::ExactScalar;
pub use spectra::{EigenPair, FermatSpec};
