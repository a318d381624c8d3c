//! Group rings `R[H]` of finitely generated abelian class groups.
//!
//! The canonical complex of a Lagrangian with trivial `π₂` local system lives
//! over `Z[Z^k]`; quotients by subsystems produce `Z[Z^k/G]`, and the Novikov
//! ring `Z[t, t⁻¹]` is the group ring of `Z` with `t` of Maslov index `N_L`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer as _;

use super::ring::Ring;
use crate::error::{Error, Result};

/// Exponent vector of a class in the free generators.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ClassVector(pub Vec<i64>);

impl ClassVector {
    pub fn zero(rank: usize) -> Self {
        ClassVector(vec![0; rank])
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        ClassVector(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn scale(&self, s: i64) -> Self {
        ClassVector(self.0.iter().map(|x| x * s).collect())
    }

    /// Dot product with a linear form.
    pub fn pair(&self, form: &[i64]) -> i64 {
        self.0.iter().zip(form).map(|(a, b)| a * b).sum()
    }
}

impl From<Vec<i64>> for ClassVector {
    fn from(v: Vec<i64>) -> Self {
        ClassVector(v)
    }
}

impl Add for &ClassVector {
    type Output = ClassVector;
    fn add(self, rhs: &ClassVector) -> ClassVector {
        assert_eq!(self.rank(), rhs.rank(), "class rank mismatch");
        ClassVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &ClassVector {
    type Output = ClassVector;
    fn sub(self, rhs: &ClassVector) -> ClassVector {
        assert_eq!(self.rank(), rhs.rank(), "class rank mismatch");
        ClassVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &ClassVector {
    type Output = ClassVector;
    fn neg(self) -> ClassVector {
        ClassVector(self.0.iter().map(|a| -a).collect())
    }
}

/// Finitely supported combination `Σ cᵢ e^{Aᵢ}`.
///
/// Terms are kept in a `BTreeMap`, so iteration is lexicographic in the class
/// vector and structural equality is ring equality.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupRingElement<R> {
    rank: usize,
    terms: BTreeMap<ClassVector, R>,
}

impl<R: Ring> GroupRingElement<R> {
    pub fn zero(rank: usize) -> Self {
        GroupRingElement {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(R::one(), ClassVector::zero(rank))
    }

    /// `c · e^A`.
    pub fn monomial(coeff: R, class: ClassVector) -> Self {
        let rank = class.rank();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(class, coeff);
        }
        GroupRingElement { rank, terms }
    }

    /// Sums the given terms, merging repeated classes and dropping zeros.
    pub fn from_terms<I>(rank: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (R, ClassVector)>,
    {
        let mut out = Self::zero(rank);
        for (c, a) in terms {
            if a.rank() != rank {
                return Err(Error::RankMismatch {
                    left: rank,
                    right: a.rank(),
                });
            }
            out.add_term(c, a);
        }
        Ok(out)
    }

    pub fn add_term(&mut self, coeff: R, class: ClassVector) {
        debug_assert_eq!(class.rank(), self.rank);
        if coeff.is_zero() {
            return;
        }
        match self.terms.remove(&class) {
            Some(old) => {
                let sum = old + coeff;
                if !sum.is_zero() {
                    self.terms.insert(class, sum);
                }
            }
            None => {
                self.terms.insert(class, coeff);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ClassVector, &R)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, class: &ClassVector) -> R {
        self.terms.get(class).cloned().unwrap_or_else(R::zero)
    }

    /// Distributive product with `e^A · e^B = e^{A+B}`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        let mut out = Self::zero(self.rank);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(ca.clone() * cb.clone(), a + b);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &R) -> Self {
        let mut out = Self::zero(self.rank);
        for (a, c) in &self.terms {
            out.add_term(c.clone() * s.clone(), a.clone());
        }
        out
    }

    /// Multiplication by the monomial `e^A`.
    pub fn shift(&self, class: &ClassVector) -> Self {
        GroupRingElement {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (a + class, c.clone()))
                .collect(),
        }
    }

    /// Sum of coefficients: the augmentation `e^A ↦ 1`.
    pub fn augmentation(&self) -> R {
        self.terms.values().cloned().fold(R::zero(), |a, b| a + b)
    }

    /// Applies a map on classes and coefficients, re-collecting terms.
    pub fn map_terms<S, F>(&self, rank: usize, mut f: F) -> GroupRingElement<S>
    where
        S: Ring,
        F: FnMut(&ClassVector, &R) -> (S, ClassVector),
    {
        let mut out = GroupRingElement::zero(rank);
        for (a, c) in &self.terms {
            let (c2, a2) = f(a, c);
            out.add_term(c2, a2);
        }
        out
    }

    pub fn map_coefficients<S: Ring, F: FnMut(&R) -> S>(&self, mut f: F) -> GroupRingElement<S> {
        self.map_terms(self.rank, |a, c| (f(c), a.clone()))
    }

    /// `Σ c e^{-A}`.
    pub fn conjugate(&self) -> Self {
        self.map_terms(self.rank, |a, c| (c.clone(), -a))
    }
}

impl<R: Ring> Add for GroupRingElement<R> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        assert_eq!(self.rank, rhs.rank, "class rank mismatch");
        for (a, c) in rhs.terms {
            self.add_term(c, a);
        }
        self
    }
}

impl<R: Ring> Sub for GroupRingElement<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<R: Ring> Neg for GroupRingElement<R> {
    type Output = Self;
    fn neg(self) -> Self {
        GroupRingElement {
            rank: self.rank,
            terms: self.terms.into_iter().map(|(a, c)| (a, -c)).collect(),
        }
    }
}

/// A finitely generated abelian group `Z^f ⊕ ⊕ Z/dᵢ` together with a Maslov
/// homomorphism, presented by coordinates.
///
/// `moduli[i] == 0` marks a free coordinate. When `period` is set the Maslov
/// values, and hence degrees, are only defined modulo it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassGroup {
    names: Vec<String>,
    moduli: Vec<u64>,
    maslov: Vec<i64>,
    period: Option<i64>,
}

impl ClassGroup {
    /// The free group `Z^k` on named generators.
    pub fn free(names: Vec<String>, maslov: Vec<i64>) -> Self {
        assert_eq!(names.len(), maslov.len());
        ClassGroup {
            moduli: vec![0; names.len()],
            names,
            maslov,
            period: None,
        }
    }

    /// The trivial group.
    pub fn trivial() -> Self {
        Self::free(Vec::new(), Vec::new())
    }

    /// `Z` generated by the Novikov variable `t` with Maslov index `min_maslov`.
    pub fn novikov(min_maslov: i64) -> Self {
        Self::free(vec!["t".into()], vec![min_maslov])
    }

    pub fn new(
        names: Vec<String>,
        moduli: Vec<u64>,
        maslov: Vec<i64>,
        period: Option<i64>,
    ) -> Self {
        assert_eq!(names.len(), moduli.len());
        assert_eq!(names.len(), maslov.len());
        let period = period.filter(|&p| p != 0).map(i64::abs);
        let maslov = match period {
            Some(p) => maslov.into_iter().map(|m| m.rem_euclid(p)).collect(),
            None => maslov,
        };
        ClassGroup {
            names,
            moduli,
            maslov,
            period,
        }
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn maslov(&self) -> &[i64] {
        &self.maslov
    }

    pub fn period(&self) -> Option<i64> {
        self.period
    }

    pub fn is_free(&self) -> bool {
        self.moduli.iter().all(|&m| m == 0)
    }

    pub fn free_rank(&self) -> usize {
        self.moduli.iter().filter(|&&m| m == 0).count()
    }

    pub fn is_novikov(&self) -> bool {
        self.rank() == 1 && self.is_free() && self.period.is_none() && self.maslov[0] > 0
    }

    /// Canonical representative: torsion coordinates reduced into `[0, d)`.
    pub fn reduce(&self, class: &ClassVector) -> ClassVector {
        ClassVector(
            class
                .0
                .iter()
                .zip(&self.moduli)
                .map(|(&x, &m)| if m == 0 { x } else { x.rem_euclid(m as i64) })
                .collect(),
        )
    }

    pub fn maslov_of(&self, class: &ClassVector) -> i64 {
        let m = class.pair(&self.maslov);
        match self.period {
            Some(p) => m.rem_euclid(p),
            None => m,
        }
    }

    /// Degree of the basis element `(q, A)`: `|q| − μ(A)`, reduced modulo the
    /// period when there is one.
    pub fn degree(&self, index: i64, class: &ClassVector) -> i64 {
        self.normalize_degree(index - class.pair(&self.maslov))
    }

    pub fn normalize_degree(&self, d: i64) -> i64 {
        match self.period {
            Some(p) => d.rem_euclid(p),
            None => d,
        }
    }

    /// Minimal Maslov number: positive generator of the image of μ, `None`
    /// when μ vanishes identically.
    pub fn min_maslov(&self) -> Option<i64> {
        let g = self
            .maslov
            .iter()
            .zip(&self.moduli)
            .filter(|(_, &m)| m == 0)
            .fold(0i64, |g, (&v, _)| g.gcd(&v));
        (g != 0).then_some(g)
    }

    pub fn mul<R: Ring>(
        &self,
        a: &GroupRingElement<R>,
        b: &GroupRingElement<R>,
    ) -> Result<GroupRingElement<R>> {
        let prod = a.mul(b)?;
        Ok(self.reduce_element(&prod))
    }

    pub fn reduce_element<R: Ring>(&self, a: &GroupRingElement<R>) -> GroupRingElement<R> {
        if self.is_free() {
            return a.clone();
        }
        a.map_terms(a.rank(), |c, x| (x.clone(), self.reduce(c)))
    }

    /// Human-readable rendering, e.g. `-e^{B} + e^{C}` or `5t`.
    pub fn render<R: Ring>(&self, a: &GroupRingElement<R>) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (class, c)) in a.terms().enumerate() {
            let mono = self.render_class(class);
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, cs),
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            match (mono.as_str(), mag.as_str()) {
                ("1", m) => out.push_str(m),
                (x, "1") => out.push_str(x),
                (x, m) if m.contains('/') => out.push_str(&format!("({m}){x}")),
                (x, m) => out.push_str(&format!("{m}{x}")),
            }
        }
        out
    }

    fn render_class(&self, class: &ClassVector) -> String {
        if class.is_zero() {
            return "1".into();
        }
        if self.is_novikov() && self.names[0] == "t" {
            return match class.0[0] {
                1 => "t".into(),
                k => format!("t^{k}"),
            };
        }
        format!("e^{{{}}}", self.class_name(class))
    }

    /// Additive name of a class, e.g. `h-2beta+alpha`; `0` for the zero class.
    pub fn class_name(&self, class: &ClassVector) -> String {
        let mut s = String::new();
        for (name, &e) in self.names.iter().zip(&class.0) {
            if e == 0 {
                continue;
            }
            if e < 0 {
                s.push('-');
            } else if !s.is_empty() {
                s.push('+');
            }
            if e.abs() != 1 {
                s.push_str(&e.abs().to_string());
            }
            s.push_str(name);
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

impl<R: Ring> fmt::Display for GroupRingElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = (0..self.rank).map(|i| format!("g{i}")).collect();
        let g = ClassGroup::free(names, vec![0; self.rank]);
        f.write_str(&g.render(self))
    }
}

/// `e^A` with coefficient one.
pub fn e<R: Ring>(class: &[i64]) -> GroupRingElement<R> {
    GroupRingElement::monomial(R::one(), ClassVector(class.to_vec()))
}
