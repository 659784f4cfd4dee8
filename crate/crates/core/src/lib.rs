pub mod appendix;
pub mod complex;
pub mod flatten;
pub mod fvector;
pub mod geometry;
pub mod polytope600;
pub mod scalar;
pub mod io;

pub use complex::{FVector, Simplex, SimplicialComplex, VertexId};
pub use geometry::Embedding;
pub use scalar::{ExactScalar, QSqrt5, Scalar};

pub type Rational = num_rational::BigRational;
/// Exact integer coordinates, as in the appendix tables.
pub type IntEmbedding = Embedding<i128, 3>;
pub type RationalEmbedding = Embedding<Rational, 3>;
pub type FloatEmbedding = Embedding<f64, 3>;
