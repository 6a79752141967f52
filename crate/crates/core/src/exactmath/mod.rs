//! Exact rational and integer-polynomial linear algebra: big rationals,
//! polynomial arithmetic, Sturm root counting, Hermite normal form, and
//! minimal polynomials of rational matrices.

pub mod hnf;
pub mod matrix;
pub mod minpoly;
pub mod poly;
pub mod sturm;

pub use hnf::{hermite_normal_form, Hnf};
pub use matrix::{IntMatrix, RationalMatrix};
pub use minpoly::minimal_polynomial_of_matrix;
pub use poly::{rational_roots, IntPolynomial};
pub use sturm::sturm_real_root_count;
