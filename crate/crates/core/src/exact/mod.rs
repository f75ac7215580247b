//! Exact linear algebra over prime fields and the integers.

mod field;
mod matrix;
mod snf;

pub use field::{is_prime, FieldScalar, Prime};
pub use matrix::{FpMatrix, IntMatrix, Matrix, RankKernel};
pub use snf::{smith_normal_form, SmithForm};
