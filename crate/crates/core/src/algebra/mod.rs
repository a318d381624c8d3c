//! Exact arithmetic: coefficient rings, group rings, Laurent polynomials,
//! matrices and Smith normal form.

pub mod group_ring;
pub mod laurent;
pub mod matrix;
pub mod modular;
pub mod ring;
pub mod snf;

pub use group_ring::{ClassGroup, ClassVector, GroupRingElement};
pub use laurent::LaurentPoly;
pub use matrix::Matrix;
pub use modular::{Fp, Zmod};
pub use ring::{Coefficients, EuclideanDomain, Field, Integer, Rational, Ring};
pub use snf::{
    homology_at_degree, modular_homology, smith_normal_form, CoefficientRing, DegreeHomology,
    HomologyGroup, Snf,
};
