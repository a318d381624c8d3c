//! Quantum data, the canonical pearl complex and its symbolic checks.

pub mod complex;
pub mod datum;
pub mod fixtures;
pub mod torus;

pub use complex::{
    is_cycle, perturb_entry, BoundaryLine, Chain, DSquaredWitness, Generator, GradedComplex,
    GradingViolation, Periodicity,
};
pub use datum::{
    canonical_json, load_datum, save_datum, BoundaryEntry, CriticalPoint, DiskRecord, Model,
    QuantumDatum, Term,
};
pub use fixtures::{
    builtin_datum, builtin_fixture, fixture_periodicity, standard_fixture_names, FIXTURE_NAMES,
};
pub use torus::{assemble_boundary, torus_roles};
