//! Exact-arithmetic toolkit for the symmetry algebras of classical cone
//! varieties: sparse rational linear algebra, sparse polynomials, the
//! standard parametrized embeddings, degree-bounded ideal pieces, tangency
//! Lie algebras with their prolongations, cone/section/projection geometry,
//! and the closed-form dimension census built on top of them.

pub mod census;
pub mod error;
pub mod geometry;
pub mod ideal;
pub mod lie;
pub mod matrix;
pub mod pipeline;
pub mod poly;
pub mod scalar;
pub mod varieties;

pub use error::Error;
pub use ideal::GradedPiece;
pub use lie::{LinearLieAlgebra, ProlongationSpace, SymTensor};
pub use matrix::{MatrixQ, RowReducer};
pub use pipeline::{ComputeOptions, VarietyReport};
pub use poly::{Monomial, MonomialBasis, Polynomial};
pub use scalar::Scalar;
pub use varieties::{Parametrization, ProjectionCenter, VarietyDescriptor};
