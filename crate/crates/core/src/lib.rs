//! Exact invariant generalized complex geometry on nilpotent Lie algebras.

pub mod error;
pub mod catalog;
pub mod ce;
pub mod dga;
pub mod double;
pub mod exterior;
pub mod gcs;
pub mod expr;
pub mod lie;
pub mod oracle;
pub mod linalg;
pub mod scalar;
pub mod semiabelian;
pub mod verify;

pub use error::{Error, Result};
pub use exterior::{Form, Multivector};
pub use lie::{parse_salamon, LieAlgebra};
pub use linalg::{Matrix, Subspace, Vector};
pub use scalar::{GaussianRational, Rational};
pub use double::Double;
pub use gcs::{ClassicalComplexStructure, Gcs};
pub use dga::DgaPresentation;
