//! Graded free modules over a group ring with a degree −1 boundary.

use std::collections::BTreeMap;

use super::datum::{BoundaryEntry, CriticalPoint, Model, QuantumDatum, Term};
use crate::algebra::{ClassGroup, ClassVector, Coefficients, GroupRingElement, Integer, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub id: String,
    pub index: i64,
}

/// Declares that homology repeats with the given degree period, so that it is
/// determined by the listed fundamental degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Periodicity {
    pub period: i64,
    pub fundamental: Vec<i64>,
}

impl Periodicity {
    /// The fundamental degree congruent to `d`.
    pub fn representative(&self, d: i64) -> Option<i64> {
        self.fundamental
            .iter()
            .copied()
            .find(|f| (d - f).rem_euclid(self.period) == 0)
    }
}

/// A module element `Σ a_q · q` indexed by generator position.
pub type Chain<R> = BTreeMap<usize, GroupRingElement<R>>;

/// `QC_*` as a free `R[H]`-module on critical points, `H` the class group.
///
/// The basis element `e^A q` sits in degree `|q| − μ(A)`. `entries[(s, t)]` is
/// the coefficient of `t` in `∂s`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedComplex<R> {
    name: String,
    coefficients: Coefficients,
    dimension: i64,
    group: ClassGroup,
    generators: Vec<Generator>,
    entries: BTreeMap<(usize, usize), GroupRingElement<R>>,
    periodicity: Option<Periodicity>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GradingViolation {
    pub source: String,
    pub target: String,
    pub class: ClassVector,
    pub expected: i64,
    pub found: i64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DSquaredWitness<R> {
    pub source: String,
    pub target: String,
    pub element: GroupRingElement<R>,
    pub rendered: String,
}

/// One row of a boundary table: `∂source = Σ coefficient · target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryLine {
    pub source: String,
    pub terms: Vec<(String, String)>,
}

impl std::fmt::Display for BoundaryLine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "∂{} = ", self.source)?;
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (target, coeff)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if coeff == "1" {
                write!(f, "{target}")?;
            } else {
                write!(f, "({coeff}){target}")?;
            }
        }
        Ok(())
    }
}

impl<R: Ring> GradedComplex<R> {
    pub fn new<I>(
        name: impl Into<String>,
        coefficients: Coefficients,
        dimension: i64,
        group: ClassGroup,
        generators: Vec<Generator>,
        entries: I,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = ((usize, usize), GroupRingElement<R>)>,
    {
        let n = generators.len();
        let mut map: BTreeMap<(usize, usize), GroupRingElement<R>> = BTreeMap::new();
        for ((s, t), a) in entries {
            if s >= n || t >= n {
                return Err(Error::InvalidDatum(format!(
                    "boundary entry ({s}, {t}) outside {n} generators"
                )));
            }
            if a.rank() != group.rank() {
                return Err(Error::RankMismatch {
                    left: group.rank(),
                    right: a.rank(),
                });
            }
            let a = group.reduce_element(&a);
            let total = match map.remove(&(s, t)) {
                Some(old) => old + a,
                None => a,
            };
            if !total.is_zero() {
                map.insert((s, t), total);
            }
        }
        Ok(GradedComplex {
            name: name.into(),
            coefficients,
            dimension,
            group,
            generators,
            entries: map,
            periodicity: None,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coefficients
    }

    pub fn dimension(&self) -> i64 {
        self.dimension
    }

    pub fn group(&self) -> &ClassGroup {
        &self.group
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_position(&self, id: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.id == id)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &GroupRingElement<R>)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    pub fn entry(&self, source: usize, target: usize) -> GroupRingElement<R> {
        self.entries
            .get(&(source, target))
            .cloned()
            .unwrap_or_else(|| GroupRingElement::zero(self.group.rank()))
    }

    /// Entry looked up by generator ids.
    pub fn entry_by_id(&self, source: &str, target: &str) -> Option<GroupRingElement<R>> {
        Some(self.entry(
            self.generator_position(source)?,
            self.generator_position(target)?,
        ))
    }

    pub fn periodicity(&self) -> Option<&Periodicity> {
        self.periodicity.as_ref()
    }

    pub fn with_periodicity(mut self, p: Option<Periodicity>) -> Self {
        self.periodicity = p;
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Same generators with every entry transformed; the target group and
    /// coefficients replace the current ones.
    pub fn map_entries<S, F>(
        &self,
        coefficients: Coefficients,
        group: ClassGroup,
        mut f: F,
    ) -> Result<GradedComplex<S>>
    where
        S: Ring,
        F: FnMut(&GroupRingElement<R>) -> Result<GroupRingElement<S>>,
    {
        let mut mapped = Vec::with_capacity(self.entries.len());
        for (k, a) in &self.entries {
            mapped.push((*k, f(a)?));
        }
        Ok(GradedComplex::new(
            self.name.clone(),
            coefficients,
            self.dimension,
            group,
            self.generators.clone(),
            mapped,
        )?
        .with_periodicity(self.periodicity.clone()))
    }

    /// Degree of `e^A q` for the generator at `position`.
    pub fn degree_of(&self, position: usize, class: &ClassVector) -> i64 {
        self.group.degree(self.generators[position].index, class)
    }

    pub fn boundary(&self, chain: &Chain<R>) -> Result<Chain<R>> {
        let mut out: Chain<R> = BTreeMap::new();
        for (&s, a) in chain {
            for ((_, t), b) in self.entries.range((s, 0)..(s + 1, 0)) {
                let term = self.group.mul(a, b)?;
                let sum = match out.remove(t) {
                    Some(old) => old + term,
                    None => term,
                };
                if !sum.is_zero() {
                    out.insert(*t, sum);
                }
            }
        }
        Ok(out)
    }

    /// First boundary term whose degree is not one less than its source's.
    pub fn check_grading(&self) -> Option<GradingViolation> {
        for (&(s, t), a) in &self.entries {
            let expected = self.group.normalize_degree(self.generators[s].index - 1);
            for (class, _) in a.terms() {
                let found = self.degree_of(t, class);
                if found != expected {
                    return Some(GradingViolation {
                        source: self.generators[s].id.clone(),
                        target: self.generators[t].id.clone(),
                        class: class.clone(),
                        expected,
                        found,
                    });
                }
            }
        }
        None
    }

    /// `∂²` computed symbolically; `None` when it vanishes.
    pub fn check_d_squared(&self) -> Option<DSquaredWitness<R>> {
        for s in 0..self.generators.len() {
            let chain = Chain::from([(s, GroupRingElement::one(self.group.rank()))]);
            let once = self.boundary(&chain).expect("ranks agree");
            let twice = self.boundary(&once).expect("ranks agree");
            if let Some((t, a)) = twice.into_iter().next() {
                return Some(DSquaredWitness {
                    source: self.generators[s].id.clone(),
                    target: self.generators[t].id.clone(),
                    rendered: self.group.render(&a),
                    element: a,
                });
            }
        }
        None
    }

    /// `1 = Σ_{|q| = n} q`, the sum of the maxima with the zero class.
    pub fn unit(&self) -> Result<Chain<R>> {
        let chain: Chain<R> = self
            .generators
            .iter()
            .enumerate()
            .filter(|(_, g)| g.index == self.dimension)
            .map(|(i, _)| (i, GroupRingElement::one(self.group.rank())))
            .collect();
        if chain.is_empty() {
            return Err(Error::Precondition(format!(
                "no critical point of index {} in `{}`",
                self.dimension, self.name
            )));
        }
        Ok(chain)
    }

    pub fn render_chain(&self, chain: &Chain<R>) -> String {
        if chain.is_empty() {
            return "0".into();
        }
        chain
            .iter()
            .map(|(&i, a)| {
                let c = self.group.render(a);
                let id = &self.generators[i].id;
                if c == "1" {
                    id.clone()
                } else {
                    format!("({c}){id}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// The boundary as a table, one line per generator in basis order.
    pub fn boundary_table(&self) -> Vec<BoundaryLine> {
        (0..self.generators.len())
            .map(|s| BoundaryLine {
                source: self.generators[s].id.clone(),
                terms: self
                    .entries
                    .range((s, 0)..(s + 1, 0))
                    .map(|(&(_, t), a)| (self.generators[t].id.clone(), self.group.render(a)))
                    .collect(),
            })
            .collect()
    }
}

impl GradedComplex<Integer> {
    /// Builds the canonical complex over `Z[Z^k]` of a validated datum.
    pub fn from_datum(d: &QuantumDatum) -> Result<Self> {
        d.validate()?;
        match d.model {
            Model::Torus2 => super::torus::assemble_boundary(d),
            Model::Explicit => {
                let generators = d
                    .critical_points
                    .iter()
                    .map(|p| Generator {
                        id: p.id.clone(),
                        index: p.index,
                    })
                    .collect();
                let mut entries = Vec::new();
                for b in &d.boundary {
                    let s = d.point_index(&b.from).expect("validated");
                    let t = d.point_index(&b.to).expect("validated");
                    let a = GroupRingElement::from_terms(
                        d.rank,
                        b.element
                            .iter()
                            .map(|t| (Integer::from(t.coeff), ClassVector(t.class.clone()))),
                    )?;
                    entries.push(((s, t), a));
                }
                GradedComplex::new(
                    d.name.clone(),
                    Coefficients::Z,
                    d.dimension,
                    ClassGroup::free(d.generators.clone(), d.maslov.clone()),
                    generators,
                    entries,
                )
            }
        }
    }

    /// The complex as an explicit datum; needs a free class group and
    /// coefficients that fit in 64 bits.
    pub fn to_datum(&self) -> Result<QuantumDatum> {
        if !self.group.is_free() || self.group.period().is_some() {
            return Err(Error::Precondition(
                "only complexes over free class groups serialize as data".into(),
            ));
        }
        let mut boundary = Vec::new();
        for (&(s, t), a) in &self.entries {
            let mut element = Vec::new();
            for (class, c) in a.terms() {
                let coeff = i64::try_from(c.clone()).map_err(|_| {
                    Error::Precondition(format!("coefficient {c} does not fit in 64 bits"))
                })?;
                element.push(Term {
                    coeff,
                    class: class.0.clone(),
                });
            }
            boundary.push(BoundaryEntry {
                from: self.generators[s].id.clone(),
                to: self.generators[t].id.clone(),
                element,
            });
        }
        Ok(QuantumDatum {
            name: self.name.clone(),
            dimension: self.dimension,
            model: Model::Explicit,
            rank: self.group.rank(),
            generators: self.group.names().to_vec(),
            maslov: self.group.maslov().to_vec(),
            critical_points: self
                .generators
                .iter()
                .map(|g| CriticalPoint {
                    id: g.id.clone(),
                    index: g.index,
                })
                .collect(),
            disks: Vec::new(),
            boundary,
        })
    }
}

/// Whether a chain is a cycle.
pub fn is_cycle<R: Ring>(c: &GradedComplex<R>, chain: &Chain<R>) -> Result<bool> {
    Ok(c.boundary(chain)?.is_empty())
}

/// Adds `delta` to one coefficient of one entry; used to build broken inputs.
pub fn perturb_entry<R: Ring>(
    c: &GradedComplex<R>,
    source: usize,
    target: usize,
    class: ClassVector,
    delta: R,
) -> Result<GradedComplex<R>> {
    let mut entries: Vec<_> = c.entries().map(|(k, a)| (k, a.clone())).collect();
    entries.push((
        (source, target),
        GroupRingElement::monomial(delta, class),
    ));
    Ok(GradedComplex::new(
        c.name.clone(),
        c.coefficients,
        c.dimension,
        c.group.clone(),
        c.generators.clone(),
        entries,
    )?
    .with_periodicity(c.periodicity.clone()))
}
