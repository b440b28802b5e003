//! Exact linear algebra over GF(p) and GF(p^k).

mod exact;
mod field;
mod matrix;
mod poly;
mod sparse;

pub use exact::generic_power_ranks;
pub use field::{field, is_irreducible, is_prime, least_irreducible, Fe, FieldCtx};
pub use matrix::MatrixFF;
pub use poly::MultiPoly;
pub use sparse::SparseMatFF;
