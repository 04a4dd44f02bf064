//! Exact arithmetic: rationals, integer matrices, Smith normal form and
//! cyclotomic fields.

pub mod arith;
pub mod cyclotomic;
pub mod matrix;
pub mod rational;
pub mod smith;

pub use cyclotomic::{cyc_as_rational, cyclotomic_polynomial, CycField, CycNum};
pub use matrix::{invert_rational_matrix, IntMatrix, Matrix, RatMatrix};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use smith::{smith_normal_form, SmithDecomposition};
