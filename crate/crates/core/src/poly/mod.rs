//! Exact polynomial arithmetic over the Gaussian rationals.

mod binary;
mod monomial;
mod multi;
mod tensor;
mod uni;

pub use binary::BinaryForm;
pub use monomial::Monomial;
pub use multi::MultiPoly;
pub use tensor::SymmetricTensor;
pub use uni::UniPoly;
