//! Exact computations for filiform Lie algebras of order 3 and their
//! infinitesimal deformations.

pub mod deformation;
pub mod error;
pub mod exactlin;
pub mod families;
pub mod filiform;
pub mod graded;
pub mod json;
pub mod sl2;

pub use error::{Error, Result};
pub use exactlin::Rational;
pub use graded::{GradeIndex, OrderFAlgebra};
