//! Pearl complexes of monotone Lagrangians at the algebraic level: group-ring
//! boundaries, their specializations, homology, the Maslov spectral sequence
//! and determinant-line signs.
//!
//! Everything is exact. Algorithms are generic over [`algebra::Ring`]; the
//! aliases below fix the common coefficient choices.

pub mod algebra;
pub mod det_lines;
pub mod error;
pub mod homology;
pub mod pearl;
pub mod specialize;
pub mod spectral;

pub use algebra::{
    ClassGroup, ClassVector, CoefficientRing, Coefficients, Fp, GroupRingElement, HomologyGroup,
    Integer, LaurentPoly, Matrix, Rational, Ring, Zmod,
};
pub use error::{Error, Result};
pub use homology::{homology_window, HomologyResult};
pub use pearl::{builtin_fixture, GradedComplex, QuantumDatum};

/// The canonical complex over `Z[H₂^D]`.
pub type IntComplex = GradedComplex<Integer>;
pub type RatComplex = GradedComplex<Rational>;
pub type FpComplex = GradedComplex<Fp>;
pub type ZmodComplex = GradedComplex<Zmod>;

pub type IntMatrix = Matrix<Integer>;
pub type RatMatrix = Matrix<Rational>;
