//! Spectral sequence of the Maslov filtration on a Novikov-specialized
//! complex over a field.
//!
//! The basis element `t^m q` has degree `|q| − m·N_L` and lies in filtration
//! level `p = −m`, the least `p` with `μ ≥ −p·N_L`. Pages are computed on a
//! truncated band of `t`-powers; only the columns far from the band edges are
//! reported, and a second computation with a wider band guards against edge
//! effects.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::algebra::{ClassGroup, ClassVector, CoefficientRing, Field, GroupRingElement, Matrix};
use crate::error::{Error, Result};
use crate::homology::{homology_window, HomologyResult};
use crate::pearl::GradedComplex;

#[derive(Clone, Debug, PartialEq)]
pub struct FilteredComplex<F> {
    complex: GradedComplex<F>,
    n_l: i64,
}

impl<F: Field> FilteredComplex<F> {
    pub fn complex(&self) -> &GradedComplex<F> {
        &self.complex
    }

    pub fn min_maslov(&self) -> i64 {
        self.n_l
    }

    /// Filtration level of `t^m q`.
    pub fn filtration(m: i64) -> i64 {
        -m
    }

    pub fn degree(&self, generator: usize, m: i64) -> i64 {
        self.complex.generators()[generator].index - m * self.n_l
    }

    fn index_span(&self) -> (i64, i64) {
        let idx = self.complex.generators().iter().map(|g| g.index);
        (idx.clone().min().unwrap_or(0), idx.max().unwrap_or(0))
    }

    /// Page from which every differential vanishes: `d_r` lowers the Morse
    /// index by `r·N_L − 1`, which cannot exceed the index span.
    pub fn stable_page(&self) -> usize {
        let (lo, hi) = self.index_span();
        ((hi - lo + 1) / self.n_l) as usize + 1
    }
}

pub fn maslov_filtration<F: Field>(c: &GradedComplex<F>) -> Result<FilteredComplex<F>> {
    if !c.group().is_novikov() {
        return Err(Error::Precondition(
            "the Maslov filtration needs a Novikov-specialized complex".into(),
        ));
    }
    for ((s, t), a) in c.entries() {
        if let Some((class, _)) = a.terms().find(|(class, _)| class.0[0] < 0) {
            return Err(Error::FiltrationViolation(format!(
                "∂{} has a t^{} term on {}",
                c.generators()[s].id,
                class.0[0],
                c.generators()[t].id
            )));
        }
    }
    Ok(FilteredComplex {
        n_l: c.group().maslov()[0],
        complex: c.clone(),
    })
}

/// The `t⁰` part of the boundary on the generators: the Morse complex.
pub fn morse_part<F: Field>(f: &FilteredComplex<F>) -> Result<GradedComplex<F>> {
    let c = f.complex();
    c.map_entries(c.coefficients(), ClassGroup::trivial(), |a| {
        let x = a.coefficient(&ClassVector(vec![0]));
        Ok(GroupRingElement::monomial(x, ClassVector::zero(0)))
    })
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct PageEntry {
    pub p: i64,
    pub q: i64,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Differential<F> {
    /// `(p, q)` of the source; the target is `(p − r, q + r − 1)`.
    pub source: (i64, i64),
    pub target: (i64, i64),
    pub matrix: Matrix<F>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralPage<F> {
    pub r: usize,
    pub entries: Vec<PageEntry>,
    pub differentials: Vec<Differential<F>>,
}

impl<F: Field> SpectralPage<F> {
    pub fn dim(&self, p: i64, q: i64) -> usize {
        self.entries
            .iter()
            .find(|e| e.p == p && e.q == q)
            .map_or(0, |e| e.dim)
    }

    pub fn total(&self) -> usize {
        self.entries.iter().map(|e| e.dim).sum()
    }

    /// Dimensions down column `p`, by increasing `q`.
    pub fn column(&self, p: i64) -> Vec<usize> {
        self.entries
            .iter()
            .filter(|e| e.p == p)
            .map(|e| e.dim)
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.total() == 0
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "r": self.r, "entries": self.entries })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralSequence<F> {
    pub min_maslov: i64,
    /// Reported filtration columns.
    pub columns: (i64, i64),
    /// Degrees all of whose contributions lie in the reported columns.
    pub safe_degrees: Vec<i64>,
    pub margin: i64,
    pub pages: Vec<SpectralPage<F>>,
    /// The first page past which no differential can be nonzero.
    pub infinity: SpectralPage<F>,
}

impl<F: Field> SpectralSequence<F> {
    pub fn page(&self, r: usize) -> Option<&SpectralPage<F>> {
        self.pages.iter().find(|p| p.r == r)
    }

    /// `Σ_p dim E^∞_{p, d−p}`.
    pub fn infinity_degree(&self, d: i64) -> usize {
        self.infinity
            .entries
            .iter()
            .filter(|e| e.p + e.q == d)
            .map(|e| e.dim)
            .sum()
    }
}

#[derive(Clone, Debug)]
struct Cell {
    m: i64,
    degree: i64,
}

/// The band of `t`-powers `m_lo ≤ m ≤ m_hi`, a subquotient complex.
struct Band<F> {
    cells: Vec<Cell>,
    by_degree: BTreeMap<i64, Vec<usize>>,
    d: Matrix<F>,
}

impl<F: Field> Band<F> {
    fn new(f: &FilteredComplex<F>, m_lo: i64, m_hi: i64) -> Self {
        let c = f.complex();
        let mut cells = Vec::new();
        let mut index = HashMap::new();
        for m in m_lo..=m_hi {
            for g in 0..c.generators().len() {
                index.insert((g, m), cells.len());
                cells.push(Cell {
                    m,
                    degree: f.degree(g, m),
                });
            }
        }
        let mut d = Matrix::<F>::zeros(cells.len(), cells.len());
        for ((s, t), a) in c.entries() {
            for (class, x) in a.terms() {
                for m in m_lo..=m_hi {
                    if let Some(&row) = index.get(&(t, m + class.0[0])) {
                        let col = index[&(s, m)];
                        let v = d[(row, col)].clone() + x.clone();
                        d[(row, col)] = v;
                    }
                }
            }
        }
        let mut by_degree: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (i, cell) in cells.iter().enumerate() {
            by_degree.entry(cell.degree).or_default().push(i);
        }
        Band {
            cells,
            by_degree,
            d,
        }
    }

    fn level(&self, i: usize) -> i64 {
        FilteredComplex::<F>::filtration(self.cells[i].m)
    }

    fn degree_cells(&self, d: i64) -> &[usize] {
        self.by_degree.get(&d).map_or(&[], |v| v.as_slice())
    }

    /// `F_p` in degree `d`, as unit vectors in degree coordinates.
    fn filtered_units(&self, p: i64, d: i64) -> Vec<Vec<F>> {
        let cells = self.degree_cells(d);
        cells
            .iter()
            .enumerate()
            .filter(|(_, &i)| self.level(i) <= p)
            .map(|(k, _)| {
                let mut v = vec![F::zero(); cells.len()];
                v[k] = F::one();
                v
            })
            .collect()
    }

    /// `Z^r_p = {x ∈ F_p : ∂x ∈ F_{p−r}}` in degree `d`.
    fn z(&self, r: usize, p: i64, d: i64) -> Vec<Vec<F>> {
        let cols_all = self.degree_cells(d);
        let cols: Vec<usize> = (0..cols_all.len())
            .filter(|&k| self.level(cols_all[k]) <= p)
            .collect();
        let rows_all = self.degree_cells(d - 1);
        let rows: Vec<usize> = rows_all
            .iter()
            .filter(|&&i| self.level(i) > p - r as i64)
            .copied()
            .collect();
        let sub = Matrix::from_rows(
            rows.iter()
                .map(|&i| cols.iter().map(|&k| self.d[(i, cols_all[k])].clone()).collect())
                .collect(),
            cols.len(),
        );
        sub.kernel()
            .into_iter()
            .map(|kv| {
                let mut v = vec![F::zero(); cols_all.len()];
                for (j, &k) in cols.iter().enumerate() {
                    v[k] = kv[j].clone();
                }
                v
            })
            .collect()
    }

    /// `∂` from degree `d` coordinates to degree `d − 1` coordinates.
    fn apply(&self, d: i64, x: &[F]) -> Vec<F> {
        let src = self.degree_cells(d);
        let tgt = self.degree_cells(d - 1);
        tgt.iter()
            .map(|&i| {
                src.iter()
                    .zip(x)
                    .fold(F::zero(), |acc, (&j, v)| acc + self.d[(i, j)].clone() * v.clone())
            })
            .collect()
    }

    /// Representatives of a basis of `E^r_{p}` in degree `d`, and the
    /// spanning set of the subspace divided out.
    fn page_basis(&self, r: usize, p: i64, d: i64) -> (Vec<Vec<F>>, Vec<Vec<F>>) {
        let n = self.degree_cells(d).len();
        let mut den = self.filtered_units(p - 1, d);
        let from_above = match r {
            0 => Vec::new(),
            r => self.z(r - 1, p + r as i64 - 1, d + 1),
        };
        den.extend(from_above.iter().map(|x| self.apply(d + 1, x)));
        let mut span = den.clone();
        let mut rank = rank_of(&span, n);
        let mut reps = Vec::new();
        for z in self.z(r, p, d) {
            span.push(z.clone());
            let next = rank_of(&span, n);
            if next > rank {
                rank = next;
                reps.push(z);
            } else {
                span.pop();
            }
        }
        (reps, den)
    }
}

fn rank_of<F: Field>(vectors: &[Vec<F>], n: usize) -> usize {
    if vectors.is_empty() || n == 0 {
        return 0;
    }
    Matrix::from_columns(vectors, n).rank()
}

/// Coordinates of `y` on `reps` modulo `den`.
fn express<F: Field>(y: &[F], reps: &[Vec<F>], den: &[Vec<F>]) -> Result<Vec<F>> {
    if reps.is_empty() {
        return Ok(Vec::new());
    }
    let mut cols = reps.to_vec();
    cols.extend(den.iter().cloned());
    let x = Matrix::from_columns(&cols, y.len())
        .solve(y)
        .ok_or_else(|| Error::InvalidDatum("differential leaves the next page".into()))?;
    Ok(x[..reps.len()].to_vec())
}

struct Layout {
    columns: (i64, i64),
    safe_degrees: Vec<i64>,
    /// `(p, d)` pairs with a nonzero `E⁰`.
    cells: BTreeSet<(i64, i64)>,
}

fn layout<F: Field>(f: &FilteredComplex<F>) -> Layout {
    let n = f.n_l;
    let safe_degrees: Vec<i64> = (0..n).collect();
    let indices: BTreeSet<i64> = f.complex().generators().iter().map(|g| g.index).collect();
    let mut ps = BTreeSet::new();
    for &d in &safe_degrees {
        for &i in &indices {
            if (d - i).rem_euclid(n) == 0 {
                ps.insert((d - i) / n);
            }
        }
    }
    let columns = (
        ps.first().copied().unwrap_or(0),
        ps.last().copied().unwrap_or(0),
    );
    let mut cells = BTreeSet::new();
    for p in columns.0..=columns.1 {
        for &i in &indices {
            cells.insert((p, i + p * n));
        }
    }
    Layout {
        columns,
        safe_degrees,
        cells,
    }
}

fn compute_on_band<F: Field>(
    f: &FilteredComplex<F>,
    r_max: usize,
    margin: i64,
) -> Result<SpectralSequence<F>> {
    let lay = layout(f);
    let (p_lo, p_hi) = lay.columns;
    let band = Band::new(f, -p_hi - margin, -p_lo + margin);
    let stable = f.stable_page().max(r_max + 1);
    let mut pages = Vec::new();
    let mut previous: Option<SpectralPage<F>> = None;
    for r in 0..=stable {
        let page = page_on_band(&band, &lay, r)?;
        if let Some(prev) = &previous {
            check_next_page(prev, &page)?;
        }
        if r <= r_max {
            pages.push(page.clone());
        }
        previous = Some(page);
    }
    let infinity = previous.expect("at least one page");
    Ok(SpectralSequence {
        min_maslov: f.n_l,
        columns: lay.columns,
        safe_degrees: lay.safe_degrees,
        margin,
        pages,
        infinity,
    })
}

fn page_on_band<F: Field>(band: &Band<F>, lay: &Layout, r: usize) -> Result<SpectralPage<F>> {
    let mut bases = BTreeMap::new();
    let mut entries = Vec::new();
    for &(p, d) in &lay.cells {
        let (reps, den) = band.page_basis(r, p, d);
        entries.push(PageEntry {
            p,
            q: d - p,
            dim: reps.len(),
        });
        bases.insert((p, d), (reps, den));
    }
    let mut differentials = Vec::new();
    {
        let ri = r as i64;
        for (&(p, d), (reps, _)) in &bases {
            let Some((treps, tden)) = bases.get(&(p - ri, d - 1)) else {
                continue;
            };
            if reps.is_empty() || treps.is_empty() {
                continue;
            }
            let cols = reps
                .iter()
                .map(|x| express(&band.apply(d, x), treps, tden))
                .collect::<Result<Vec<_>>>()?;
            differentials.push(Differential {
                source: (p, d - p),
                target: (p - ri, d - 1 - p + ri),
                matrix: Matrix::from_columns(&cols, treps.len()),
            });
        }
    }
    entries.sort();
    Ok(SpectralPage {
        r,
        entries,
        differentials,
    })
}

/// `d_r ∘ d_r = 0` and `dim E^{r+1} = dim H(E^r, d_r)` wherever both sides
/// lie in the reported columns.
fn check_next_page<F: Field>(prev: &SpectralPage<F>, next: &SpectralPage<F>) -> Result<()> {
    let r = prev.r as i64;
    let out: HashMap<(i64, i64), &Differential<F>> =
        prev.differentials.iter().map(|d| (d.source, d)).collect();
    for d1 in &prev.differentials {
        if let Some(d2) = out.get(&d1.target) {
            if !d2.matrix.mul(&d1.matrix)?.is_zero() {
                return Err(Error::InvalidDatum(format!(
                    "d_{r} ∘ d_{r} ≠ 0 at {:?}",
                    d1.source
                )));
            }
        }
    }
    let (lo, hi) = (
        prev.entries.iter().map(|e| e.p).min().unwrap_or(0),
        prev.entries.iter().map(|e| e.p).max().unwrap_or(0),
    );
    for e in &prev.entries {
        let target = (e.p - r, e.q + r - 1);
        let source = (e.p + r, e.q - r + 1);
        if !(lo..=hi).contains(&target.0) || !(lo..=hi).contains(&source.0) {
            continue;
        }
        let rank_out = out.get(&(e.p, e.q)).map_or(0, |d| d.matrix.rank());
        let rank_in = out.get(&source).map_or(0, |d| d.matrix.rank());
        let expected = e.dim - rank_out - rank_in;
        if next.dim(e.p, e.q) != expected {
            return Err(Error::InvalidDatum(format!(
                "E^{} at ({}, {}) is not the homology of E^{r}",
                r + 1,
                e.p,
                e.q
            )));
        }
    }
    Ok(())
}

/// Default band margin, in filtration levels, on each side of the reported
/// columns.
pub fn default_margin<F: Field>(f: &FilteredComplex<F>) -> i64 {
    2 * f.stable_page() as i64 + 2
}

pub fn compute_pages<F: Field>(f: &FilteredComplex<F>, r_max: usize) -> Result<SpectralSequence<F>> {
    compute_pages_with_margin(f, r_max, default_margin(f))
}

/// Computes with margins `margin` and `margin + 1` and insists they agree.
pub fn compute_pages_with_margin<F: Field>(
    f: &FilteredComplex<F>,
    r_max: usize,
    margin: i64,
) -> Result<SpectralSequence<F>> {
    let a = compute_on_band(f, r_max, margin)?;
    let b = compute_on_band(f, r_max, margin + 1)?;
    let same = a.pages.len() == b.pages.len()
        && a.pages.iter().zip(&b.pages).all(|(x, y)| x.entries == y.entries)
        && a.infinity.entries == b.infinity.entries;
    if !same {
        return Err(Error::WindowTooSmall(format!(
            "margin {margin} changes the reported columns"
        )));
    }
    Ok(a)
}

pub fn pages_json<F: Field>(pages: &[SpectralPage<F>]) -> serde_json::Value {
    serde_json::Value::Array(pages.iter().map(|p| p.to_json()).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvergenceRow {
    pub degree: i64,
    pub e_infinity: usize,
    pub homology: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceReport {
    pub fn matches(&self) -> bool {
        self.rows.iter().all(|r| r.e_infinity == r.homology)
    }

    pub fn mismatches(&self) -> Vec<i64> {
        self.rows
            .iter()
            .filter(|r| r.e_infinity != r.homology)
            .map(|r| r.degree)
            .collect()
    }
}

/// Compares `Σ_p dim E^∞_{p, d−p}` with `dim H_d` on the safe degrees.
pub fn convergence_check<F: Field>(
    ss: &SpectralSequence<F>,
    h: &HomologyResult,
) -> Result<ConvergenceReport> {
    let mut rows = Vec::new();
    for &d in &ss.safe_degrees {
        let g = h.at(d).ok_or_else(|| {
            Error::Precondition(format!("homology result does not cover degree {d}"))
        })?;
        if !g.torsion.is_empty() {
            return Err(Error::Precondition("convergence needs field coefficients".into()));
        }
        rows.push(ConvergenceRow {
            degree: d,
            e_infinity: ss.infinity_degree(d),
            homology: g.free_rank,
        });
    }
    Ok(ConvergenceReport { rows })
}

/// Pages up to `r_max`, homology on the safe degrees, and their comparison.
pub fn spectral_with_check<F: Field + CoefficientRing>(
    c: &GradedComplex<F>,
    r_max: usize,
) -> Result<(SpectralSequence<F>, HomologyResult, ConvergenceReport)> {
    let f = maslov_filtration(c)?;
    let ss = compute_pages(&f, r_max)?;
    let lo = *ss.safe_degrees.first().unwrap_or(&0);
    let hi = *ss.safe_degrees.last().unwrap_or(&0);
    let h = homology_window(c, lo..=hi)?;
    let report = convergence_check(&ss, &h)?;
    Ok((ss, h, report))
}
