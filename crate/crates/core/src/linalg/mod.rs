//! Exact integer and rational linear algebra. Nothing in here touches
//! floating point.

mod forms;
mod matrix;
mod snf;

pub use forms::{inertia, pfaffian_magnitude, AlternatingForm, Inertia};
pub use matrix::{unimodular_inverse, IntMatrix, Matrix, RatMatrix};
pub use snf::{complete_to_basis, hermite_rows, kernel_saturated, smith_normal_form, SmithForm};
