//! Built-in examples: the three monotone tori, `RP¹` with its canonical
//! complex, and the degree windows of `RPⁿ`.

use super::complex::{GradedComplex, Periodicity};
use super::datum::{
    load_datum, BoundaryEntry, CriticalPoint, Model, QuantumDatum, Term,
};
use crate::algebra::Integer;
use crate::error::{Error, Result};

const CLIFFORD: &str = include_str!("../../data/clifford.json");
const CHEKANOV: &str = include_str!("../../data/chekanov.json");
const EXOTIC: &str = include_str!("../../data/exotic-s2s2.json");
const RP1: &str = include_str!("../../data/rp1-canonical.json");

/// Names accepted by [`builtin_datum`]; `rp<n>-window` stands for any `n >= 2`.
pub const FIXTURE_NAMES: [&str; 5] = [
    "clifford",
    "chekanov",
    "exotic-s2s2",
    "rp1-canonical",
    "rp<n>-window",
];

/// Largest `n` accepted for `rp<n>-window`.
pub const MAX_RP_DIMENSION: i64 = 64;

fn rp_window_dimension(name: &str) -> Option<i64> {
    let n: i64 = name.strip_prefix("rp")?.strip_suffix("-window")?.parse().ok()?;
    (2..=MAX_RP_DIMENSION).contains(&n).then_some(n)
}

/// `q_n → q_{n−1} → q_{n−2}` over `Z` with maps `0` and `2`.
fn rp_window(n: i64) -> QuantumDatum {
    let q = |i: i64| format!("q{i}");
    QuantumDatum {
        name: format!("rp{n}-window"),
        dimension: n,
        model: Model::Explicit,
        rank: 0,
        generators: Vec::new(),
        maslov: Vec::new(),
        critical_points: (0..3)
            .map(|k| CriticalPoint {
                id: q(n - k),
                index: n - k,
            })
            .collect(),
        disks: Vec::new(),
        boundary: vec![BoundaryEntry {
            from: q(n - 1),
            to: q(n - 2),
            element: vec![Term {
                coeff: 2,
                class: Vec::new(),
            }],
        }],
    }
}

pub fn builtin_datum(name: &str) -> Result<QuantumDatum> {
    let text = match name {
        "clifford" => CLIFFORD,
        "chekanov" => CHEKANOV,
        "exotic-s2s2" => EXOTIC,
        "rp1-canonical" => RP1,
        _ => {
            return rp_window_dimension(name)
                .map(rp_window)
                .ok_or_else(|| Error::UnknownFixture(name.to_string()))
        }
    };
    load_datum(text)
}

/// Periodicity annotation carried by a fixture, if any. The `RPⁿ` windows
/// repeat with period 2, determined by degrees `n − 2` and `n − 1`.
pub fn fixture_periodicity(name: &str) -> Option<Periodicity> {
    rp_window_dimension(name).map(|n| Periodicity {
        period: 2,
        fundamental: vec![n - 2, n - 1],
    })
}

pub fn builtin_fixture(name: &str) -> Result<GradedComplex<Integer>> {
    let d = builtin_datum(name)?;
    Ok(GradedComplex::from_datum(&d)?.with_periodicity(fixture_periodicity(name)))
}

/// Concrete fixture names used by tests and reports: the named examples and
/// the windows `rp2-window` through `rp6-window`.
pub fn standard_fixture_names() -> Vec<String> {
    let mut v: Vec<String> = FIXTURE_NAMES[..4].iter().map(|s| s.to_string()).collect();
    v.extend((2..=6).map(|n| format!("rp{n}-window")));
    v
}
