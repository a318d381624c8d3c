//! Degree-wise homology of graded complexes, the principal case over group
//! rings, and dual complexes.

use std::collections::HashMap;
use std::ops::RangeInclusive;

use num_integer::Integer as _;
use num_traits::Signed;

use crate::algebra::{
    smith_normal_form, ClassGroup, ClassVector, CoefficientRing, Coefficients,
    Field, GroupRingElement, HomologyGroup, LaurentPoly, Matrix, Ring,
};
use crate::error::{Error, Result};
use crate::pearl::{Chain, GradedComplex, Generator, Periodicity};

/// Largest finite class group whose elements are enumerated.
pub const MAX_ENUMERATED_CLASSES: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Smith normal form of the expanded degree-wise matrices.
    Expanded,
    /// One generator per degree over a group ring; see [`principal_coker`].
    Principal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyEntry {
    pub degree: i64,
    pub group: HomologyGroup,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PeriodSource {
    /// Declared on the complex; homology is computed on the fundamental
    /// degrees only and repeated.
    Annotation,
    /// Degrees of the complex are only defined modulo the period.
    ClassGroup,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodNote {
    pub period: i64,
    pub fundamental: Vec<i64>,
    pub source: PeriodSource,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyResult {
    pub coefficients: Coefficients,
    pub method: Method,
    pub entries: Vec<HomologyEntry>,
    pub period: Option<PeriodNote>,
}

impl HomologyResult {
    pub fn at(&self, degree: i64) -> Option<&HomologyGroup> {
        self.entries
            .iter()
            .find(|e| e.degree == degree)
            .map(|e| &e.group)
    }

    /// Sum of free ranks over the window.
    pub fn total_rank(&self) -> usize {
        self.entries.iter().map(|e| e.group.free_rank).sum()
    }
}

fn free_coordinates(g: &ClassGroup) -> Vec<usize> {
    (0..g.rank()).filter(|&i| g.moduli()[i] == 0).collect()
}

fn torsion_assignments(g: &ClassGroup) -> Result<Vec<Vec<i64>>> {
    let torsion: Vec<usize> = (0..g.rank()).filter(|&i| g.moduli()[i] != 0).collect();
    let size = torsion
        .iter()
        .try_fold(1u64, |acc, &i| acc.checked_mul(g.moduli()[i]))
        .filter(|&s| s <= MAX_ENUMERATED_CLASSES)
        .ok_or_else(|| Error::Precondition("class group too large to enumerate".into()))?;
    let mut out = Vec::with_capacity(size as usize);
    let mut cur = vec![0i64; g.rank()];
    loop {
        out.push(cur.clone());
        let mut advanced = false;
        for &i in torsion.iter().rev() {
            cur[i] += 1;
            if cur[i] < g.moduli()[i] as i64 {
                advanced = true;
                break;
            }
            cur[i] = 0;
        }
        if !advanced {
            return Ok(out);
        }
    }
}

/// Basis of the degree-`d` part over the base ring: pairs `(generator, class)`
/// with `|q| − μ(A) = d`, ordered by generator and then class.
///
/// Finite when the class group is finite, or has one free coordinate of
/// nonzero Maslov index and integer-valued degrees.
pub fn degree_basis<R: Ring>(c: &GradedComplex<R>, d: i64) -> Result<Vec<(usize, ClassVector)>> {
    let g = c.group();
    let free = free_coordinates(g);
    let d = g.normalize_degree(d);
    let infinite = || Error::InfiniteRank { degree: d };
    let free_coord = match free.as_slice() {
        [] => None,
        [i] if g.period().is_none() && g.maslov()[*i] != 0 => Some(*i),
        _ => return Err(infinite()),
    };
    let assignments = torsion_assignments(g)?;
    let mut out = Vec::new();
    for (pos, q) in c.generators().iter().enumerate() {
        for base in &assignments {
            let mut class = ClassVector(base.clone());
            match free_coord {
                None => {}
                Some(i) => {
                    let rest = q.index - class.pair(g.maslov()) - d;
                    let lambda = g.maslov()[i];
                    if rest % lambda != 0 {
                        continue;
                    }
                    class.0[i] = rest / lambda;
                }
            }
            if c.degree_of(pos, &class) == d {
                out.push((pos, class));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Matrix of `∂: C_d → C_{d−1}` in the bases of [`degree_basis`].
pub fn boundary_matrix<R: Ring>(c: &GradedComplex<R>, d: i64) -> Result<Matrix<R>> {
    let source = degree_basis(c, d)?;
    let target = degree_basis(c, d - 1)?;
    let index: HashMap<&(usize, ClassVector), usize> =
        target.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let g = c.group();
    let mut m = Matrix::<R>::zeros(target.len(), source.len());
    for (col, (s, b)) in source.iter().enumerate() {
        for ((s2, t), a) in c.entries() {
            if s2 != *s {
                continue;
            }
            for (class, x) in a.terms() {
                let key = (t, g.reduce(&(class + b)));
                let row = *index.get(&key).ok_or_else(|| {
                    Error::InvalidDatum(format!(
                        "boundary of {} leaves degree {}",
                        c.generators()[*s].id,
                        d - 1
                    ))
                })?;
                let v = m[(row, col)].clone() + x.clone();
                m[(row, col)] = v;
            }
        }
    }
    Ok(m)
}

/// Homology at a single degree by expansion over the base ring.
pub fn expanded_homology<R: CoefficientRing>(c: &GradedComplex<R>, d: i64) -> Result<HomologyGroup> {
    let d_in = boundary_matrix(c, d + 1)?;
    let d_out = boundary_matrix(c, d)?;
    R::degree_homology(&d_in, &d_out, &c.coefficients())
}

/// Per-degree homology over the window `range`.
///
/// A periodicity annotation on the complex is honored: only its fundamental
/// degrees are computed, and other degrees are read off by congruence.
pub fn homology_window<R: CoefficientRing>(
    c: &GradedComplex<R>,
    range: RangeInclusive<i64>,
) -> Result<HomologyResult> {
    if let Some(p) = c.periodicity() {
        return periodic_window(c, p, range);
    }
    let mut entries = Vec::new();
    let mut method = Method::Expanded;
    for d in range {
        let group = match expanded_homology(c, d) {
            Ok(h) => h,
            Err(Error::InfiniteRank { .. }) => {
                method = Method::Principal;
                principal_degree_homology(c, d)?
            }
            Err(e) => return Err(e),
        };
        entries.push(HomologyEntry { degree: d, group });
    }
    let period = c.group().period().map(|p| PeriodNote {
        period: p,
        fundamental: (0..p).collect(),
        source: PeriodSource::ClassGroup,
    });
    Ok(HomologyResult {
        coefficients: c.coefficients(),
        method,
        entries,
        period,
    })
}

fn periodic_window<R: CoefficientRing>(
    c: &GradedComplex<R>,
    p: &Periodicity,
    range: RangeInclusive<i64>,
) -> Result<HomologyResult> {
    let mut fundamental = HashMap::new();
    for &f in &p.fundamental {
        fundamental.insert(f, expanded_homology(c, f)?);
    }
    let mut entries = Vec::new();
    for d in range {
        let rep = p.representative(d).ok_or_else(|| {
            Error::Precondition(format!(
                "periodicity annotation does not cover degree {d}"
            ))
        })?;
        entries.push(HomologyEntry {
            degree: d,
            group: fundamental[&rep].clone(),
        });
    }
    Ok(HomologyResult {
        coefficients: c.coefficients(),
        method: Method::Expanded,
        entries,
        period: Some(PeriodNote {
            period: p.period,
            fundamental: p.fundamental.clone(),
            source: PeriodSource::Annotation,
        }),
    })
}

/// Generators with a basis element in degree `d` over a free class group.
fn generators_in_degree<R: Ring>(c: &GradedComplex<R>, d: i64) -> Vec<usize> {
    let n = c.group().min_maslov();
    c.generators()
        .iter()
        .enumerate()
        .filter(|(_, q)| match n {
            Some(n) => (q.index - d).rem_euclid(n) == 0,
            None => q.index == d,
        })
        .map(|(i, _)| i)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Kernel {
    Zero,
    /// The whole rank-one free module: `f = 0`.
    FreeRankOne,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cokernel<R> {
    Zero,
    FreeRankOne,
    /// `R[H]/(e^g − 1) ≅ R[H/⟨g⟩]`; `per_degree` is set when every degree
    /// piece is a single copy of the base ring.
    Recognized {
        g: ClassVector,
        per_degree: bool,
    },
    /// No simplification found; the presentation `R[H]/(f)`.
    Presentation(GroupRingElement<R>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct PrincipalCoker<R> {
    pub source: String,
    pub target: String,
    pub source_degree: i64,
    pub target_degree: i64,
    pub element: GroupRingElement<R>,
    pub rendered: String,
    pub kernel: Kernel,
    pub cokernel: Cokernel<R>,
}

fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// Writes `f = u·e^h·(e^g − 1)` with `u` a unit of the base ring and `g`
/// primitive, when possible; returns `g`.
pub fn recognize_unit_times_cyclotomic<R: Ring>(f: &GroupRingElement<R>) -> Option<ClassVector> {
    let terms: Vec<_> = f.terms().collect();
    let [(a1, c1), (a2, c2)] = terms.as_slice() else {
        return None;
    };
    if !c1.is_unit() || ((*c1).clone() + (*c2).clone()) != R::zero() {
        return None;
    }
    // f = c2·e^{a2} + c1·e^{a1} = c2·e^{a1}(e^{a2 − a1} − 1)
    let g = *a2 - *a1;
    (gcd_all(&g.0) == 1).then_some(g)
}

/// Whether every degree piece of `R[Z^k/⟨g⟩]` is one copy of `R`.
fn quotient_is_rank_one_per_degree(group: &ClassGroup, g: &ClassVector) -> bool {
    let k = group.rank();
    group.maslov_of(g) == 0
        && (k == 1 || (k == 2 && group.min_maslov().is_some()))
}

/// Homology of a 1×1 piece `R[H]·s --f--> R[H]·t` of a complex over a free
/// class group, at the degree `d` of `s` (and `d − 1` of `t`).
pub fn principal_coker<R: Ring>(c: &GradedComplex<R>, d: i64) -> Result<PrincipalCoker<R>> {
    let g = c.group();
    if !g.is_free() || g.period().is_some() {
        return Err(Error::Precondition(
            "the principal path needs a free class group".into(),
        ));
    }
    let here = generators_in_degree(c, d);
    let below = generators_in_degree(c, d - 1);
    let ([s], [t]) = (here.as_slice(), below.as_slice()) else {
        return Err(Error::Precondition(format!(
            "degrees {d} and {} need exactly one generator each, found {} and {}",
            d - 1,
            here.len(),
            below.len()
        )));
    };
    let f = c.entry(*s, *t);
    let kernel = if f.is_zero() {
        Kernel::FreeRankOne
    } else {
        Kernel::Zero
    };
    let cokernel = if f.is_zero() {
        Cokernel::FreeRankOne
    } else if f.len() == 1 && f.terms().next().unwrap().1.is_unit() {
        Cokernel::Zero
    } else if let Some(gen) = recognize_unit_times_cyclotomic(&f) {
        Cokernel::Recognized {
            per_degree: quotient_is_rank_one_per_degree(g, &gen),
            g: gen,
        }
    } else {
        Cokernel::Presentation(f.clone())
    };
    Ok(PrincipalCoker {
        source: c.generators()[*s].id.clone(),
        target: c.generators()[*t].id.clone(),
        source_degree: d,
        target_degree: d - 1,
        rendered: g.render(&f),
        element: f,
        kernel,
        cokernel,
    })
}

/// Degree-`d` homology when each degree has at most one generator over the
/// group ring.
fn principal_degree_homology<R: Ring>(c: &GradedComplex<R>, d: i64) -> Result<HomologyGroup> {
    let g = c.group();
    let infinite = Error::InfiniteRank { degree: d };
    if !g.is_free() || g.period().is_some() {
        return Err(infinite);
    }
    let here = generators_in_degree(c, d);
    let [s] = here.as_slice() else {
        return if here.is_empty() {
            Ok(HomologyGroup::zero())
        } else {
            Err(infinite)
        };
    };
    let outgoing: Vec<_> = c.entries().filter(|((a, _), _)| a == s).collect();
    if outgoing.len() > 1 {
        return Err(infinite);
    }
    if !outgoing.is_empty() {
        // the group ring is a domain, so a nonzero 1×1 map is injective
        return Ok(HomologyGroup::zero());
    }
    let incoming: Vec<_> = c.entries().filter(|((_, b), _)| b == s).collect();
    let one = HomologyGroup {
        free_rank: 1,
        torsion: Vec::new(),
    };
    match incoming.as_slice() {
        [] => {
            if g.rank() == 1 && g.min_maslov().is_some() {
                Ok(one)
            } else {
                Err(infinite)
            }
        }
        [(_, f)] => {
            if f.len() == 1 && f.terms().next().unwrap().1.is_unit() {
                return Ok(HomologyGroup::zero());
            }
            match recognize_unit_times_cyclotomic(f) {
                Some(gen) if quotient_is_rank_one_per_degree(g, &gen) => Ok(one),
                Some(_) => Err(infinite),
                None => Err(Error::UnsupportedRing(format!(
                    "cokernel of {} over the group ring is not recognized",
                    g.render(f)
                ))),
            }
        }
        _ => Err(infinite),
    }
}

/// `H` of the whole complex as a module over `F[t, t⁻¹]`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentHomology<F> {
    pub free_rank: usize,
    pub torsion: Vec<LaurentPoly<F>>,
}

impl<F: Field> LaurentHomology<F> {
    /// `F`-dimension of one period of `N_L` consecutive degrees.
    pub fn dimension_per_period(&self) -> u64 {
        self.free_rank as u64 + self.torsion.iter().map(|f| f.width()).sum::<u64>()
    }
}

/// Smith normal form of the full boundary over `F[t, t⁻¹]` for a
/// Novikov-specialized complex.
pub fn laurent_homology<F: Field>(c: &GradedComplex<F>) -> Result<LaurentHomology<F>> {
    if !c.group().is_novikov() {
        return Err(Error::Precondition(
            "module homology needs a Novikov-specialized complex".into(),
        ));
    }
    let n = c.generators().len();
    let mut m = Matrix::<LaurentPoly<F>>::zeros(n, n);
    for ((s, t), a) in c.entries() {
        m[(t, s)] = LaurentPoly::from_group_ring(a)?;
    }
    let snf = smith_normal_form(&m)?;
    Ok(LaurentHomology {
        free_rank: n - 2 * snf.rank(),
        torsion: snf
            .factors
            .into_iter()
            .filter(|f| !f.is_unit())
                        .collect(),
    })
}

/// Cochain complex `Hom(QC, Λ)` with `δ = (−1)^{k−1}∂^∨` on the map into
/// degree `k`.
///
/// Stored as a chain complex in negated degrees: the functional `e^A q^∨` of
/// degree `|q| + μ(A)` sits at chain degree `−|q| − μ(A)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualComplex<R> {
    chains: GradedComplex<R>,
}

impl<R: Ring> DualComplex<R> {
    pub fn as_chain_complex(&self) -> &GradedComplex<R> {
        &self.chains
    }

    /// Coefficient of `s^∨` in `δ(t^∨)`.
    pub fn coboundary(&self, t: usize, s: usize) -> GroupRingElement<R> {
        self.chains.entry(t, s)
    }

    pub fn check_d_squared(&self) -> bool {
        self.chains.check_d_squared().is_none()
    }
}

pub fn dual_complex<R: Ring>(c: &GradedComplex<R>) -> Result<DualComplex<R>> {
    let g = c.group();
    if g.maslov().iter().any(|m| m.is_odd()) || g.period().is_some_and(|p| p.is_odd()) {
        return Err(Error::Precondition(
            "the dual sign is not linear over a group ring with odd Maslov classes".into(),
        ));
    }
    let generators = c
        .generators()
        .iter()
        .map(|q| Generator {
            id: q.id.clone(),
            index: -q.index,
        })
        .collect();
    let entries = c.entries().map(|((s, t), a)| {
        let k = c.generators()[t].index + 1;
        let a = if (k - 1).is_odd() { -a.clone() } else { a.clone() };
        ((t, s), a)
    });
    let periodicity = c.periodicity().map(|p| Periodicity {
        period: p.period,
        fundamental: p.fundamental.iter().map(|f| -f).collect(),
    });
    let chains = GradedComplex::new(
        format!("{}-dual", c.name()),
        c.coefficients(),
        -c.dimension(),
        g.clone(),
        generators,
        entries,
    )?
    .with_periodicity(periodicity);
    Ok(DualComplex { chains })
}

/// Cohomology over the window of cohomological degrees.
pub fn cohomology_window<R: CoefficientRing>(
    d: &DualComplex<R>,
    range: RangeInclusive<i64>,
) -> Result<HomologyResult> {
    let (a, b) = (*range.start(), *range.end());
    let mut h = homology_window(&d.chains, -b..=-a)?;
    h.entries.reverse();
    for e in &mut h.entries {
        e.degree = -e.degree;
    }
    if let Some(p) = &mut h.period {
        for f in &mut p.fundamental {
            *f = -*f;
        }
        if p.source == PeriodSource::ClassGroup {
            for f in &mut p.fundamental {
                *f = f.rem_euclid(p.period);
            }
            p.fundamental.sort();
        }
    }
    Ok(h)
}

/// `⟨φ, b⟩ = Σ_q φ_q b_q` for a functional and a chain.
pub fn pairing<R: Ring>(
    group: &ClassGroup,
    functional: &Chain<R>,
    chain: &Chain<R>,
) -> Result<GroupRingElement<R>> {
    let mut out = GroupRingElement::zero(group.rank());
    for (i, a) in functional {
        if let Some(b) = chain.get(i) {
            out = out + group.mul(a, b)?;
        }
    }
    Ok(group.reduce_element(&out))
}

/// `⟨δa, b⟩ = (−1)^{k−1}⟨a, ∂b⟩` for a chain `b` of degree `k`.
pub fn pairing_identity_holds<R: Ring>(
    c: &GradedComplex<R>,
    dual: &DualComplex<R>,
    a: &Chain<R>,
    b: &Chain<R>,
    k: i64,
) -> Result<bool> {
    let g = c.group();
    let lhs = pairing(g, &dual.chains.boundary(a)?, b)?;
    let rhs = pairing(g, a, &c.boundary(b)?)?;
    let rhs = if (k - 1).is_odd() { -rhs } else { rhs };
    Ok(lhs == rhs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl PairingReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The pairing identity on all `a = t^∨` and `b = e^B s` with `B` zero or a
/// generator of the class group.
pub fn check_pairing_on_basis<R: Ring>(
    c: &GradedComplex<R>,
    dual: &DualComplex<R>,
) -> Result<PairingReport> {
    let g = c.group();
    let mut shifts = vec![ClassVector::zero(g.rank())];
    shifts.extend((0..g.rank()).map(|i| ClassVector::unit(g.rank(), i)));
    let mut report = PairingReport {
        checked: 0,
        failures: Vec::new(),
    };
    let n = c.generators().len();
    for t in 0..n {
        let a = Chain::from([(t, GroupRingElement::one(g.rank()))]);
        for s in 0..n {
            for b_class in &shifts {
                let b = Chain::from([(s, GroupRingElement::monomial(R::one(), b_class.clone()))]);
                let k = c.degree_of(s, b_class);
                report.checked += 1;
                if !pairing_identity_holds(c, dual, &a, &b, k)? {
                    report.failures.push(format!(
                        "a = {}^∨, b = {}",
                        c.generators()[t].id,
                        c.render_chain(&b)
                    ));
                }
            }
        }
    }
    Ok(report)
}

/// Degrees spanned by the generators of a complex, widened by `margin`.
pub fn default_window<R: Ring>(c: &GradedComplex<R>, margin: i64) -> RangeInclusive<i64> {
    if let Some(p) = c.periodicity() {
        let lo = *p.fundamental.iter().min().unwrap_or(&0);
        let hi = *p.fundamental.iter().max().unwrap_or(&0);
        return lo - margin..=hi + margin;
    }
    if let Some(p) = c.group().period() {
        return 0..=p - 1;
    }
    let lo = c.generators().iter().map(|q| q.index).min().unwrap_or(0);
    let hi = c.generators().iter().map(|q| q.index).max().unwrap_or(0);
    lo - margin..=hi + margin
}

/// Integer invariant factors rendered as `Z/n`.
pub fn render_group(h: &HomologyGroup, coefficients: &Coefficients) -> String {
    let base = match coefficients {
        Coefficients::Z => "Z".to_string(),
        Coefficients::Q => "Q".to_string(),
        Coefficients::Fp(p) => format!("F{p}"),
        Coefficients::Zmod(m) => format!("Z/{m}"),
    };
    let mut parts = Vec::new();
    match h.free_rank {
        0 => {}
        1 => parts.push(base),
        r => parts.push(format!("{base}^{r}")),
    }
    for t in &h.torsion {
        parts.push(format!("Z/{}", t.abs()));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Fp, Integer, Rational, Zmod};
    use crate::pearl::builtin_fixture;
    use crate::specialize::{
        change_coefficients, novikov_specialize, quotient_by_subsystem, SignCharacter, Subsystem,
    };

    fn hg(free_rank: usize, torsion: &[i64]) -> HomologyGroup {
        HomologyGroup {
            free_rank,
            torsion: torsion.iter().map(|&t| Integer::from(t)).collect(),
        }
    }

    #[test]
    fn rp_window_over_z() {
        for n in 2..=6 {
            let c = builtin_fixture(&format!("rp{n}-window")).unwrap();
            let h = homology_window(&c, 0..=n).unwrap();
            for e in &h.entries {
                let expected = if (n - e.degree) % 2 == 0 { hg(0, &[2]) } else { hg(0, &[]) };
                assert_eq!(e.group, expected, "n={n} d={}", e.degree);
            }
            assert_eq!(h.period.as_ref().unwrap().period, 2);
        }
    }

    #[test]
    fn rp_window_over_z4_and_f2() {
        let c = builtin_fixture("rp4-window").unwrap();
        let z4: GradedComplex<Zmod> = change_coefficients(&c, &Coefficients::Zmod(4)).unwrap();
        let h = homology_window(&z4, 2..=3).unwrap();
        assert_eq!(h.at(3), Some(&hg(0, &[2])));
        assert_eq!(h.at(2), Some(&hg(0, &[2])));
        let f2: GradedComplex<Fp> = change_coefficients(&c, &Coefficients::Fp(2)).unwrap();
        let h = homology_window(&f2, 0..=4).unwrap();
        assert!(h.entries.iter().all(|e| e.group == hg(1, &[])));
    }

    #[test]
    fn novikov_torus_homology() {
        let ch = novikov_specialize(&builtin_fixture("chekanov").unwrap()).unwrap();
        let h = homology_window(&ch, 0..=1).unwrap();
        assert_eq!(h.at(0), Some(&hg(0, &[5])));
        assert_eq!(h.at(1), Some(&hg(0, &[5])));
        let q: GradedComplex<Rational> =
            change_coefficients(&builtin_fixture("chekanov").unwrap(), &Coefficients::Q).unwrap();
        let hq = homology_window(&novikov_specialize(&q).unwrap(), -2..=3).unwrap();
        assert!(hq.entries.iter().all(|e| e.group.is_zero()));
        let cl = novikov_specialize(&builtin_fixture("clifford").unwrap()).unwrap();
        let h = homology_window(&cl, 0..=1).unwrap();
        assert_eq!(h.at(0), Some(&hg(2, &[])));
        assert_eq!(h.at(1), Some(&hg(2, &[])));
    }

    #[test]
    fn principal_rp1() {
        let c = builtin_fixture("rp1-canonical").unwrap();
        let p = principal_coker(&c, 0).unwrap();
        assert_eq!(p.kernel, Kernel::Zero);
        assert_eq!((p.source.as_str(), p.target.as_str()), ("q0", "q1"));
        assert!(matches!(p.cokernel, Cokernel::Recognized { per_degree: true, .. }));
        let h = homology_window(&c, -3..=3).unwrap();
        assert_eq!(h.method, Method::Principal);
        for e in &h.entries {
            let expected = if e.degree.rem_euclid(2) == 1 { hg(1, &[]) } else { hg(0, &[]) };
            assert_eq!(e.group, expected, "degree {}", e.degree);
        }
    }

    #[test]
    fn principal_trivial_cases() {
        let c = builtin_fixture("rp1-canonical").unwrap();
        let zero = c.map_entries(Coefficients::Z, c.group().clone(), |a| Ok(a.scale(&Integer::from(0)))).unwrap();
        let p = principal_coker(&zero, 0).unwrap();
        assert_eq!((p.kernel, p.cokernel), (Kernel::FreeRankOne, Cokernel::FreeRankOne));
        let two = c
            .map_entries(Coefficients::Z, c.group().clone(), |_| {
                Ok(GroupRingElement::monomial(Integer::from(2), ClassVector(vec![1, 0])))
            })
            .unwrap();
        let p = principal_coker(&two, 0).unwrap();
        assert!(matches!(p.cokernel, Cokernel::Presentation(_)));
    }

    #[test]
    fn rp1_quotients_homology() {
        let c = builtin_fixture("rp1-canonical").unwrap();
        let g = Subsystem::new(vec![ClassVector(vec![1, 0]), ClassVector(vec![0, 1])]);
        let triv = quotient_by_subsystem(&c, &g, &SignCharacter::trivial(2)).unwrap();
        let h = homology_window(&triv, -2..=2).unwrap();
        assert!(h.entries.iter().all(|e| e.group == hg(1, &[])));
        let tw = quotient_by_subsystem(&c, &g, &SignCharacter::new(&[1, -1]).unwrap()).unwrap();
        let h = homology_window(&tw, -2..=2).unwrap();
        for e in &h.entries {
            let expected = if e.degree.rem_euclid(2) == 1 { hg(0, &[2]) } else { hg(0, &[]) };
            assert_eq!(e.group, expected);
        }
        let dual = dual_complex(&tw).unwrap();
        let ch = cohomology_window(&dual, -2..=2).unwrap();
        for e in &ch.entries {
            let expected = if e.degree.rem_euclid(2) == 0 { hg(0, &[2]) } else { hg(0, &[]) };
            assert_eq!(e.group, expected, "degree {}", e.degree);
        }
    }

    #[test]
    fn dual_sign_on_rank_one_map() {
        let c = builtin_fixture("rp3-window").unwrap();
        let d = dual_complex(&c).unwrap();
        // ∂q2 = 2 q1 from degree 2; δ(q1^∨) = (−1)^{2−1}·2 q2^∨
        let q1 = c.generator_position("q1").unwrap();
        let q2 = c.generator_position("q2").unwrap();
        assert_eq!(d.coboundary(q1, q2).augmentation(), Integer::from(-2));
        assert!(d.check_d_squared());
        let h = cohomology_window(&d, 0..=3).unwrap();
        for e in &h.entries {
            let expected = if (3 - e.degree) % 2 == 1 { hg(0, &[2]) } else { hg(0, &[]) };
            assert_eq!(e.group, expected, "degree {}", e.degree);
        }
    }

    #[test]
    fn pairing_identity_on_fixtures() {
        for name in ["clifford", "chekanov", "exotic-s2s2", "rp1-canonical", "rp4-window"] {
            let c = builtin_fixture(name).unwrap();
            let d = dual_complex(&c).unwrap();
            assert!(d.check_d_squared(), "{name}");
            let r = check_pairing_on_basis(&c, &d).unwrap();
            assert!(r.holds(), "{name}: {:?}", r.failures);
            assert!(r.checked > 0);
        }
    }

    #[test]
    fn laurent_module_counts() {
        let q: GradedComplex<Rational> =
            change_coefficients(&builtin_fixture("clifford").unwrap(), &Coefficients::Q).unwrap();
        let lh = laurent_homology(&novikov_specialize(&q).unwrap()).unwrap();
        assert_eq!(lh.dimension_per_period(), 4);
        let q: GradedComplex<Rational> =
            change_coefficients(&builtin_fixture("chekanov").unwrap(), &Coefficients::Q).unwrap();
        let lh = laurent_homology(&novikov_specialize(&q).unwrap()).unwrap();
        assert_eq!(lh.dimension_per_period(), 0);
    }

    #[test]
    fn canonical_torus_degrees_are_infinite() {
        let c = builtin_fixture("clifford").unwrap();
        assert!(matches!(
            homology_window(&c, 0..=0),
            Err(Error::InfiniteRank { .. })
        ));
    }

    #[test]
    fn rendering() {
        assert_eq!(render_group(&hg(0, &[2]), &Coefficients::Z), "Z/2");
        assert_eq!(render_group(&hg(2, &[]), &Coefficients::Q), "Q^2");
        assert_eq!(render_group(&hg(0, &[]), &Coefficients::Z), "0");
    }
}
