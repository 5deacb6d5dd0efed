//! Exact computation of central extensions and Casimir invariants of
//! finite-dimensional Lie algebras.

pub mod algebra;
pub mod casimir;
pub mod catalog;
pub mod doc;
pub mod error;
pub mod extension;
pub mod groups;
pub mod matrix;
pub mod scalar;
pub mod sparse;
pub mod verify;

pub use algebra::{AlgebraElement, JacobiReport, LieAlgebra};
pub use error::{Error, Result};
pub use matrix::QMatrix;
pub use scalar::Scalar;
