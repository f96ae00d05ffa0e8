//! Scalars, polynomials and linear algebra over GF(2^k).

pub mod field;
pub mod linalg;
pub mod poly;

pub use field::{Fe, Field, FieldEmbedding};
pub use linalg::{Frame, Matrix, Subspace};
pub use poly::UniPoly;
