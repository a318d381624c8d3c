//! JSON model of a quantum datum.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// Two-dimensional torus with the standard perfect Morse function.
    Torus2,
    /// Boundary operator given entry by entry.
    Explicit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CriticalPoint {
    pub id: String,
    pub index: i64,
}

/// A family of Maslov-2 disks: its class, the homology class of its boundary
/// loop on the torus, and the number of disks through a generic point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiskRecord {
    pub class: Vec<i64>,
    pub winding: [i64; 2],
    #[serde(default = "one")]
    pub count: i64,
}

fn one() -> i64 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub coeff: i64,
    pub class: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundaryEntry {
    pub from: String,
    pub to: String,
    pub element: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuantumDatum {
    pub name: String,
    pub dimension: i64,
    pub model: Model,
    pub rank: usize,
    pub generators: Vec<String>,
    pub maslov: Vec<i64>,
    pub critical_points: Vec<CriticalPoint>,
    #[serde(default)]
    pub disks: Vec<DiskRecord>,
    #[serde(default)]
    pub boundary: Vec<BoundaryEntry>,
}

impl QuantumDatum {
    pub fn maslov_of(&self, class: &[i64]) -> i64 {
        class.iter().zip(&self.maslov).map(|(a, b)| a * b).sum()
    }

    pub fn point_index(&self, id: &str) -> Option<usize> {
        self.critical_points.iter().position(|p| p.id == id)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidDatum(m));
        if self.dimension < 0 {
            return bad(format!("negative dimension {}", self.dimension));
        }
        if self.generators.len() != self.rank {
            return bad(format!(
                "rank is {} but {} generator names are given",
                self.rank,
                self.generators.len()
            ));
        }
        if self.maslov.len() != self.rank {
            return bad(format!(
                "rank is {} but maslov has {} entries",
                self.rank,
                self.maslov.len()
            ));
        }
        let mut seen = BTreeSet::new();
        for p in &self.critical_points {
            if !seen.insert(p.id.as_str()) {
                return bad(format!("duplicate critical point id `{}`", p.id));
            }
            if p.index < 0 || p.index > self.dimension {
                return bad(format!(
                    "critical point `{}` has index {} outside [0, {}]",
                    p.id, p.index, self.dimension
                ));
            }
        }
        match self.model {
            Model::Torus2 => self.validate_torus(),
            Model::Explicit => self.validate_explicit(),
        }
    }

    fn validate_torus(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidDatum(m));
        if self.dimension != 2 {
            return bad(format!("torus2 model needs dimension 2, got {}", self.dimension));
        }
        let mut indices: Vec<i64> = self.critical_points.iter().map(|p| p.index).collect();
        indices.sort_unstable();
        if indices != [0, 1, 1, 2] {
            return bad(format!(
                "torus2 model needs critical points of indices 2, 1, 1, 0; got {indices:?}"
            ));
        }
        if !self.boundary.is_empty() {
            return bad("torus2 model takes disks, not boundary entries".into());
        }
        for (i, d) in self.disks.iter().enumerate() {
            if d.class.len() != self.rank {
                return bad(format!(
                    "disk {i}: class has length {}, expected {}",
                    d.class.len(),
                    self.rank
                ));
            }
            let mu = self.maslov_of(&d.class);
            if mu != 2 {
                return bad(format!("disk {i}: μ(class {:?}) = {mu}, expected 2", d.class));
            }
            if d.count < 1 {
                return bad(format!("disk {i}: count {} is not positive", d.count));
            }
        }
        Ok(())
    }

    fn validate_explicit(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidDatum(m));
        if !self.disks.is_empty() {
            return bad("explicit model takes boundary entries, not disks".into());
        }
        let mut pairs = BTreeSet::new();
        for (i, b) in self.boundary.iter().enumerate() {
            for id in [&b.from, &b.to] {
                if self.point_index(id).is_none() {
                    return bad(format!("boundary entry {i}: unknown critical point `{id}`"));
                }
            }
            if !pairs.insert((b.from.as_str(), b.to.as_str())) {
                return bad(format!(
                    "boundary entry {i}: repeated pair {} -> {}",
                    b.from, b.to
                ));
            }
            for t in &b.element {
                if t.class.len() != self.rank {
                    return bad(format!(
                        "boundary entry {i}: class has length {}, expected {}",
                        t.class.len(),
                        self.rank
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Parses and validates a datum. Schema errors carry the offending field path.
pub fn load_datum(text: &str) -> Result<QuantumDatum> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let d: QuantumDatum = serde_path_to_error::deserialize(de).map_err(|e| Error::Schema {
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })?;
    d.validate()?;
    Ok(d)
}

/// Pretty JSON with a trailing newline; every optional field is written out.
pub fn save_datum(d: &QuantumDatum) -> String {
    let mut s = serde_json::to_string_pretty(d).expect("datum serializes");
    s.push('\n');
    s
}

/// Compact JSON used for digests.
pub fn canonical_json(d: &QuantumDatum) -> String {
    serde_json::to_string(d).expect("datum serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = r#"{
        "name": "t", "dimension": 2, "model": "torus2", "rank": 1,
        "generators": ["A"], "maslov": [2],
        "critical_points": [{"id": "q2", "index": 2}, {"id": "x", "index": 1},
                            {"id": "y", "index": 1}, {"id": "q0", "index": 0}],
        "disks": [{"class": [1], "winding": [1, 0]}]
    }"#;

    #[test]
    fn count_defaults_to_one() {
        let d = load_datum(SMALL).unwrap();
        assert_eq!(d.disks[0].count, 1);
        assert!(d.boundary.is_empty());
    }

    #[test]
    fn round_trip() {
        let d = load_datum(SMALL).unwrap();
        let again = load_datum(&save_datum(&d)).unwrap();
        assert_eq!(d, again);
        assert_eq!(save_datum(&again), save_datum(&d));
    }

    #[test]
    fn unknown_field_reports_path() {
        let text = SMALL.replace("\"winding\"", "\"wind\": 0, \"winding\"");
        match load_datum(&text) {
            Err(Error::Schema { path, .. }) => assert!(path.starts_with("disks[0]"), "{path}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn wrong_maslov_names_the_record() {
        let text = SMALL.replace("\"maslov\": [2]", "\"maslov\": [4]");
        let err = load_datum(&text).unwrap_err().to_string();
        assert!(err.contains("disk 0"), "{err}");
        assert!(err.contains("= 4"), "{err}");
    }

    #[test]
    fn duplicate_ids_rejected() {
        let text = SMALL.replace("\"id\": \"y\"", "\"id\": \"x\"");
        assert!(matches!(load_datum(&text), Err(Error::InvalidDatum(_))));
    }

    #[test]
    fn empty_disks_are_fine() {
        let text = SMALL.replace("[{\"class\": [1], \"winding\": [1, 0]}]", "[]");
        assert!(load_datum(&text).unwrap().disks.is_empty());
    }
}
