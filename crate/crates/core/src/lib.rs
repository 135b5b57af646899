//! Exact computations with finite-dimensional n-Lie algebras: Filippov and
//! representation checks, Reynolds and Nijenhuis operators, NS-n-Lie
//! structures, Reynolds cohomology, first-order deformations, and the
//! determinant 3-Lie algebras of commutative associative algebras.

pub mod algebra;
pub mod assoc;
pub mod catalog;
pub mod cohomology;
pub mod constructions;
pub mod corpus;
pub mod deformation;
pub mod error;
pub mod linalg;
pub mod matrix;
pub mod nijenhuis;
pub mod ns;
pub mod representation;
pub mod reynolds;
pub mod scalar;
pub mod vector;
pub mod verdict;
pub mod wedge;

pub use algebra::{NAryAlgebra, Symmetry};
pub use error::{Error, Result};
pub use matrix::Matrix;
pub use scalar::{Dual, Rational, RingKind, Scalar};
pub use verdict::{ArgGroup, Counterexample, Verdict};
