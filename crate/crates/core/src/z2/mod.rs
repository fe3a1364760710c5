//! Bit-packed linear algebra over Z2 and quadratic forms.

mod matrix;
mod quadratic;
mod vector;

pub use matrix::{DimensionMismatch, Echelon, Z2Matrix};
pub use quadratic::{CanonicalForm, FormKind, QuadraticFormZ2};
pub use vector::Z2Vector;
