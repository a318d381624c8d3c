//! Reductions of the canonical complex: base change, rank-one local systems,
//! quotients by subsystems of classes, and the Novikov specialization.

use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{
    smith_normal_form, ClassGroup, ClassVector, CoefficientRing, Coefficients, GroupRingElement,
    Integer, Matrix, Rational, Ring,
};
use crate::algebra::snf::integer_kernel;
use crate::error::{Error, Result};
use crate::pearl::GradedComplex;

/// A subgroup `G ≤ Z^k` given by generating classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subsystem {
    generators: Vec<ClassVector>,
    /// Generators marked as spherical classes.
    spherical: Vec<usize>,
}

impl Subsystem {
    pub fn new(generators: Vec<ClassVector>) -> Self {
        Subsystem {
            generators,
            spherical: Vec::new(),
        }
    }

    pub fn with_spherical(mut self, spherical: Vec<usize>) -> Self {
        self.spherical = spherical;
        self
    }

    pub fn generators(&self) -> &[ClassVector] {
        &self.generators
    }

    pub fn spherical(&self) -> &[usize] {
        &self.spherical
    }

    /// `ker μ` of a free class group.
    pub fn maslov_kernel(group: &ClassGroup) -> Result<Self> {
        let row = Matrix::from_rows(
            vec![group.maslov().iter().map(|&m| Integer::from(m)).collect()],
            group.rank(),
        );
        let cols = integer_kernel(&row)?;
        Ok(Subsystem::new(
            cols.into_iter()
                .map(|v| ClassVector(v.iter().map(|x| x.to_i64().expect("small")).collect()))
                .collect(),
        ))
    }
}

/// Values `±1` of a sign character on the generators of a subsystem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignCharacter(Vec<i8>);

impl SignCharacter {
    pub fn new(values: &[i64]) -> Result<Self> {
        values
            .iter()
            .map(|&v| match v {
                1 => Ok(1),
                -1 => Ok(-1),
                _ => Err(Error::InconsistentCharacter(format!(
                    "character value {v} is not ±1"
                ))),
            })
            .collect::<Result<Vec<i8>>>()
            .map(SignCharacter)
    }

    pub fn trivial(m: usize) -> Self {
        SignCharacter(vec![1; m])
    }

    pub fn values(&self) -> &[i8] {
        &self.0
    }

    fn parity(&self, j: usize) -> bool {
        self.0[j] == -1
    }
}

/// Unit holonomies of a rank-one local system on the class generators.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalSystem<R> {
    values: Vec<R>,
}

impl<R: Ring> LocalSystem<R> {
    pub fn new(values: Vec<R>) -> Result<Self> {
        for (i, v) in values.iter().enumerate() {
            if !v.is_unit() {
                return Err(Error::NotInvertible(format!(
                    "holonomy {v} on generator {i}"
                )));
            }
        }
        Ok(LocalSystem { values })
    }

    pub fn values(&self) -> &[R] {
        &self.values
    }

    pub fn inverse(&self) -> Self {
        LocalSystem {
            values: self
                .values
                .iter()
                .map(|v| v.try_inverse().expect("units"))
                .collect(),
        }
    }

    /// `ρ(A) = Π ρᵢ^{Aᵢ}`.
    pub fn holonomy(&self, class: &ClassVector) -> R {
        let mut out = R::one();
        for (v, &e) in self.values.iter().zip(&class.0) {
            let base = if e < 0 {
                v.try_inverse().expect("units")
            } else {
                v.clone()
            };
            for _ in 0..e.unsigned_abs() {
                out = out * base.clone();
            }
        }
        out
    }
}

impl<R: CoefficientRing> LocalSystem<R> {
    pub fn from_rationals(values: &[Rational], coefficients: &Coefficients) -> Result<Self> {
        let v = values
            .iter()
            .map(|q| R::embed_rational(q, coefficients))
            .collect::<Result<Vec<_>>>()?;
        Self::new(v)
    }
}

/// Entrywise image of the canonical integer complex in another ring.
pub fn change_coefficients<S: CoefficientRing>(
    c: &GradedComplex<Integer>,
    target: &Coefficients,
) -> Result<GradedComplex<S>> {
    if !S::matches(target) {
        return Err(Error::UnsupportedRing(format!(
            "{target} coefficients in a {} complex",
            S::describe()
        )));
    }
    c.map_entries(*target, c.group().clone(), |a| {
        Ok(a.map_coefficients(|x| S::embed_int(x, target)))
    })
}

/// Multiplies the coefficient of every `e^A` by `ρ(A)`.
pub fn twist_local_system<R: Ring>(
    c: &GradedComplex<R>,
    ls: &LocalSystem<R>,
) -> Result<GradedComplex<R>> {
    let g = c.group();
    if ls.values.len() != g.rank() {
        return Err(Error::RankMismatch {
            left: g.rank(),
            right: ls.values.len(),
        });
    }
    for (i, &m) in g.moduli().iter().enumerate() {
        if m != 0 {
            let order = ClassVector::unit(g.rank(), i).scale(m as i64);
            if !ls.holonomy(&order).is_one() {
                return Err(Error::Precondition(format!(
                    "holonomy on the torsion generator {} has order not dividing {m}",
                    g.names()[i]
                )));
            }
        }
    }
    c.map_entries(c.coefficients(), g.clone(), |a| {
        Ok(a.map_terms(a.rank(), |class, x| {
            (x.clone() * ls.holonomy(class), class.clone())
        }))
    })
}

fn to_i64(x: &Integer) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| Error::Precondition(format!("class coordinate {x} out of range")))
}

fn unimodular_inverse(u: &Matrix<Integer>) -> Matrix<Integer> {
    let q = u.map(|x| Rational::from_integer(x.clone()));
    q.inverse()
        .expect("unimodular")
        .map(|x| {
            debug_assert!(x.is_integer());
            x.to_integer()
        })
}

/// Identifies `(q, A)` with `(q, A + g)` for `g ∈ G`, twisting coefficients by
/// the sign character: `e^A ↦ χ(g)·e^{[A]}` where `A = rep[A] + g`.
///
/// Coordinates on `Z^k / G` come from the Smith form `U·M·V = D` of the
/// generator matrix: `y = U·x`, with coordinate `i` reduced modulo `dᵢ` and
/// dropped when `dᵢ = 1`. The Maslov class survives modulo the gcd of its
/// values on `G`, which must be even.
pub fn quotient_by_subsystem<R: Ring>(
    c: &GradedComplex<R>,
    g: &Subsystem,
    chi: &SignCharacter,
) -> Result<GradedComplex<R>> {
    let group = c.group();
    if !group.is_free() || group.period().is_some() {
        return Err(Error::Precondition(
            "subsystem quotients start from a free class group".into(),
        ));
    }
    let k = group.rank();
    let m = g.generators.len();
    if chi.0.len() != m {
        return Err(Error::InconsistentCharacter(format!(
            "{} character values for {m} generators",
            chi.0.len()
        )));
    }
    for (j, gen) in g.generators.iter().enumerate() {
        if gen.rank() != k {
            return Err(Error::RankMismatch {
                left: k,
                right: gen.rank(),
            });
        }
        let mu = group.maslov_of(gen);
        if mu.rem_euclid(2) != 0 {
            return Err(Error::OddMaslovObstruction {
                generator: j,
                value: mu,
            });
        }
    }
    for &j in &g.spherical {
        if j >= m {
            return Err(Error::InconsistentCharacter(format!(
                "spherical generator {j} out of range"
            )));
        }
        if chi.parity(j) {
            return Err(Error::InconsistentCharacter(format!(
                "character is −1 on the spherical generator {j}"
            )));
        }
    }
    if m == 0 {
        return Ok(c.clone());
    }
    let period = g
        .generators
        .iter()
        .fold(0i64, |acc, gen| acc.gcd(&group.maslov_of(gen)));

    let gm = Matrix::from_columns(
        &g.generators
            .iter()
            .map(|v| v.0.iter().map(|&x| Integer::from(x)).collect())
            .collect::<Vec<_>>(),
        k,
    );
    let snf = smith_normal_form(&gm)?;
    let r = snf.rank();
    let factors: Vec<Integer> = snf.factors.iter().map(|f| f.abs()).collect();

    // χ on the i-th unit of G in the new coordinates, as a parity
    let tau: Vec<bool> = (0..m)
        .map(|i| {
            (0..m).fold(false, |acc, j| {
                acc ^ (chi.parity(j) && snf.v[(j, i)].is_odd())
            })
        })
        .collect();
    if let Some(i) = (r..m).find(|&i| tau[i]) {
        let relation: Vec<String> = (0..m).map(|j| snf.v[(j, i)].to_string()).collect();
        return Err(Error::InconsistentCharacter(format!(
            "character is −1 on the relation ({}) among the generators",
            relation.join(", ")
        )));
    }

    let u = &snf.u;
    let u_inv = unimodular_inverse(u);
    let kept: Vec<usize> = (0..k)
        .filter(|&i| i >= r || !factors[i].is_one())
        .collect();
    let moduli: Vec<u64> = kept
        .iter()
        .map(|&i| if i < r { factors[i].to_u64().expect("small") } else { 0 })
        .collect();
    let old_maslov: Vec<Integer> = group.maslov().iter().map(|&x| Integer::from(x)).collect();
    let mut names = Vec::with_capacity(kept.len());
    let mut maslov = Vec::with_capacity(kept.len());
    for &i in &kept {
        let rep: Vec<i64> = u_inv.column(i).iter().map(to_i64).collect::<Result<_>>()?;
        let rep = ClassVector(rep);
        names.push(format!("[{}]", group.class_name(&rep)));
        let mu: Integer = old_maslov
            .iter()
            .zip(u_inv.column(i))
            .fold(Integer::zero(), |acc, (a, b)| acc + a * b);
        maslov.push(to_i64(&mu)?);
    }
    let new_group = ClassGroup::new(names, moduli, maslov, (period != 0).then_some(period));
    let rank = new_group.rank();

    let convert = |class: &ClassVector| -> Result<(bool, ClassVector)> {
        let x: Vec<Integer> = class.0.iter().map(|&v| Integer::from(v)).collect();
        let y = u.apply(&x);
        let mut sign = false;
        for i in 0..r {
            let (q, _) = y[i].div_mod_floor(&factors[i]);
            sign ^= tau[i] && q.is_odd();
        }
        let coords = kept
            .iter()
            .map(|&i| {
                if i < r {
                    to_i64(&y[i].mod_floor(&factors[i]))
                } else {
                    to_i64(&y[i])
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((sign, ClassVector(coords)))
    };

    let out = c.map_entries(c.coefficients(), new_group.clone(), |a| {
        let mut e = GroupRingElement::zero(rank);
        for (class, x) in a.terms() {
            let (neg, cls) = convert(class)?;
            e.add_term(if neg { -x.clone() } else { x.clone() }, cls);
        }
        Ok(e)
    })?;
    Ok(out)
}

/// `e^A ↦ t^{μ(A)/N_L}` with `|t| = −N_L`.
pub fn novikov_specialize<R: Ring>(c: &GradedComplex<R>) -> Result<GradedComplex<R>> {
    let group = c.group();
    if group.period().is_some() {
        return Err(Error::Precondition(
            "Novikov specialization needs an integer-valued Maslov class".into(),
        ));
    }
    let n = group.min_maslov().ok_or_else(|| {
        Error::Precondition("the Maslov class vanishes, so N_L is infinite".into())
    })?;
    c.map_entries(c.coefficients(), ClassGroup::novikov(n), |a| {
        let mut e = GroupRingElement::zero(1);
        for (class, x) in a.terms() {
            let mu = group.maslov_of(class);
            if mu % n != 0 {
                return Err(Error::Precondition(format!(
                    "μ = {mu} is not a multiple of N_L = {n}"
                )));
            }
            e.add_term(x.clone(), ClassVector(vec![mu / n]));
        }
        Ok(e)
    })
}

/// The isomorphism `R[Z] ≅ R[t, t⁻¹]` for a rank-one free class group, taking
/// the generator of positive Maslov index to `t`.
pub fn identify_with_novikov<R: Ring>(c: &GradedComplex<R>) -> Result<GradedComplex<R>> {
    let group = c.group();
    if group.rank() != 1 || !group.is_free() || group.period().is_some() || group.maslov()[0] == 0
    {
        return Err(Error::Precondition(
            "expected a rank-one free class group with nonzero Maslov index".into(),
        ));
    }
    let mu = group.maslov()[0];
    let s = mu.signum();
    c.map_entries(c.coefficients(), ClassGroup::novikov(mu.abs()), |a| {
        Ok(a.map_terms(1, |class, x| (x.clone(), ClassVector(vec![s * class.0[0]]))))
    })
}

/// A holonomy value in JSON: an integer or `{"num": n, "den": d}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum HolonomyValue {
    Int(i64),
    Ratio(Ratio),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Ratio {
    pub num: i64,
    pub den: i64,
}

impl HolonomyValue {
    pub fn to_rational(&self) -> Result<Rational> {
        match *self {
            HolonomyValue::Int(n) => Ok(Rational::from_integer(n.into())),
            HolonomyValue::Ratio(Ratio { den: 0, .. }) => {
                Err(Error::NotInvertible("holonomy with zero denominator".into()))
            }
            HolonomyValue::Ratio(Ratio { num, den }) => {
                Ok(Rational::new(num.into(), den.into()))
            }
        }
    }
}

/// Subsystem file: generating classes, the sign character on them, an
/// optional local system, and optionally the generators that are spherical.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubsystemSpec {
    pub generators: Vec<Vec<i64>>,
    #[serde(default)]
    pub character: Option<Vec<i64>>,
    #[serde(default)]
    pub holonomy: Option<Vec<HolonomyValue>>,
    #[serde(default)]
    pub spherical: Vec<usize>,
}

impl SubsystemSpec {
    pub fn subsystem(&self) -> Subsystem {
        Subsystem::new(self.generators.iter().cloned().map(ClassVector).collect())
            .with_spherical(self.spherical.clone())
    }

    /// The supplied character, or the trivial one when `μ` vanishes on `G`.
    pub fn character(&self, group: &ClassGroup) -> Result<SignCharacter> {
        match &self.character {
            Some(v) => SignCharacter::new(v),
            None => {
                let nonzero = self
                    .generators
                    .iter()
                    .any(|g| group.maslov_of(&ClassVector(g.clone())) != 0);
                for (j, g) in self.generators.iter().enumerate() {
                    let mu = group.maslov_of(&ClassVector(g.clone()));
                    if mu.rem_euclid(2) != 0 {
                        return Err(Error::OddMaslovObstruction {
                            generator: j,
                            value: mu,
                        });
                    }
                }
                if nonzero {
                    Err(Error::Precondition(
                        "a sign character is required when μ does not vanish on the subsystem"
                            .into(),
                    ))
                } else {
                    Ok(SignCharacter::trivial(self.generators.len()))
                }
            }
        }
    }

    pub fn holonomy_values(&self) -> Result<Option<Vec<Rational>>> {
        self.holonomy
            .as_ref()
            .map(|v| v.iter().map(HolonomyValue::to_rational).collect())
            .transpose()
    }
}

pub fn load_subsystem(text: &str) -> Result<SubsystemSpec> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| Error::Schema {
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })
}

/// Parses `v1,v2,...` where each value is an integer or `n/d`.
pub fn parse_holonomy_list(s: &str) -> Result<Vec<Rational>> {
    s.split(',')
        .map(|part| {
            let part = part.trim();
            let bad = || Error::Precondition(format!("bad holonomy value `{part}`"));
            match part.split_once('/') {
                Some((n, d)) => {
                    let n: Integer = n.trim().parse().map_err(|_| bad())?;
                    let d: Integer = d.trim().parse().map_err(|_| bad())?;
                    if d.is_zero() {
                        return Err(bad());
                    }
                    Ok(Rational::new(n, d))
                }
                None => Ok(Rational::from_integer(part.parse().map_err(|_| bad())?)),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Field, Fp, Zmod};
    use crate::pearl::builtin_fixture;

    fn z(n: i64) -> Integer {
        Integer::from(n)
    }

    #[test]
    fn empty_subsystem_is_identity() {
        let c = builtin_fixture("clifford").unwrap();
        let q = quotient_by_subsystem(&c, &Subsystem::new(vec![]), &SignCharacter::trivial(0)).unwrap();
        assert_eq!(q, c);
    }

    #[test]
    fn rp1_quotients() {
        let c = builtin_fixture("rp1-canonical").unwrap();
        let g = Subsystem::new(vec![ClassVector(vec![1, 0]), ClassVector(vec![0, 1])]);
        let trivial = quotient_by_subsystem(&c, &g, &SignCharacter::trivial(2)).unwrap();
        assert_eq!(trivial.entries().count(), 0);
        assert_eq!(trivial.group().rank(), 0);
        assert_eq!(trivial.group().period(), Some(2));
        let twisted = quotient_by_subsystem(&c, &g, &SignCharacter::new(&[1, -1]).unwrap()).unwrap();
        let f = twisted.entry_by_id("q0", "q1").unwrap();
        assert_eq!(f, GroupRingElement::monomial(z(-2), ClassVector(vec![])));
        assert!(twisted.check_d_squared().is_none());
        assert!(twisted.check_grading().is_none());
    }

    #[test]
    fn odd_maslov_is_obstructed() {
        let c = builtin_fixture("rp1-canonical").unwrap();
        let c = c
            .map_entries(
                Coefficients::Z,
                ClassGroup::free(vec!["A".into(), "B".into()], vec![3, 3]),
                |a| Ok(a.clone()),
            )
            .unwrap();
        let err = quotient_by_subsystem(
            &c,
            &Subsystem::new(vec![ClassVector(vec![1, 0])]),
            &SignCharacter::trivial(1),
        )
        .unwrap_err();
        assert!(err.to_string().contains("not, in general, a module"), "{err}");
    }

    #[test]
    fn inconsistent_character_on_relation() {
        let c = builtin_fixture("clifford").unwrap();
        let g = Subsystem::new(vec![
            ClassVector(vec![1, -1, 0]),
            ClassVector(vec![-1, 1, 0]),
        ]);
        let err = quotient_by_subsystem(&c, &g, &SignCharacter::new(&[1, -1]).unwrap());
        assert!(matches!(err, Err(Error::InconsistentCharacter(_))));
        assert!(quotient_by_subsystem(&c, &g, &SignCharacter::new(&[-1, -1]).unwrap()).is_ok());
    }

    #[test]
    fn spherical_generators_need_plus_one() {
        let c = builtin_fixture("clifford").unwrap();
        let g = Subsystem::new(vec![ClassVector(vec![1, 1, 1])]).with_spherical(vec![0]);
        assert!(quotient_by_subsystem(&c, &g, &SignCharacter::new(&[-1]).unwrap()).is_err());
        assert!(quotient_by_subsystem(&c, &g, &SignCharacter::new(&[1]).unwrap()).is_ok());
    }

    #[test]
    fn novikov_examples() {
        let t = |c: i64| GroupRingElement::monomial(z(c), ClassVector(vec![1]));
        let cl = novikov_specialize(&builtin_fixture("clifford").unwrap()).unwrap();
        assert_eq!(cl.entries().count(), 0);
        let ch = novikov_specialize(&builtin_fixture("chekanov").unwrap()).unwrap();
        assert_eq!(ch.entry_by_id("x", "q2").unwrap(), t(5));
        assert!(ch.entry_by_id("y", "q2").unwrap().is_zero());
        assert!(ch.entry_by_id("q0", "x").unwrap().is_zero());
        assert_eq!(ch.entry_by_id("q0", "y").unwrap(), t(-5));
        let ex = novikov_specialize(&builtin_fixture("exotic-s2s2").unwrap()).unwrap();
        assert_eq!(ex.entry_by_id("x", "q2").unwrap(), t(3));
        assert_eq!(ex.entry_by_id("q0", "y").unwrap(), t(-3));
        assert_eq!(ch.group().render(&t(5)), "5t");
    }

    #[test]
    fn novikov_through_kernel_quotient() {
        for name in ["clifford", "chekanov", "exotic-s2s2"] {
            let c = builtin_fixture(name).unwrap();
            let g = Subsystem::maslov_kernel(c.group()).unwrap();
            let q = quotient_by_subsystem(&c, &g, &SignCharacter::trivial(g.generators().len()))
                .unwrap();
            assert_eq!(identify_with_novikov(&q).unwrap(), novikov_specialize(&c).unwrap(), "{name}");
        }
    }

    #[test]
    fn twisting_clifford_by_holonomies() {
        let c: GradedComplex<Rational> =
            change_coefficients(&builtin_fixture("clifford").unwrap(), &Coefficients::Q).unwrap();
        let q = |n: i64, d: i64| Rational::new(n.into(), d.into());
        let (x1, x2) = (q(2, 1), q(3, 5));
        let x3 = (x1.clone() * x2.clone()).inv();
        let ls = LocalSystem::new(vec![x1, x2.clone(), x3.clone()]).unwrap();
        let tw = novikov_specialize(&twist_local_system(&c, &ls).unwrap()).unwrap();
        let expected = GroupRingElement::monomial(x3 - x2, ClassVector(vec![1]));
        assert_eq!(tw.entry_by_id("x", "q2").unwrap(), expected);
        let back = twist_local_system(&twist_local_system(&c, &ls).unwrap(), &ls.inverse()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn chekanov_over_f5_vanishes() {
        let c5: GradedComplex<Fp> =
            change_coefficients(&builtin_fixture("chekanov").unwrap(), &Coefficients::Fp(5)).unwrap();
        assert_eq!(novikov_specialize(&c5).unwrap().entries().count(), 0);
    }

    #[test]
    fn base_change_on_rp3_window() {
        let c = builtin_fixture("rp3-window").unwrap();
        let f2: GradedComplex<Fp> = change_coefficients(&c, &Coefficients::Fp(2)).unwrap();
        assert_eq!(f2.entries().count(), 0);
        let z4: GradedComplex<Zmod> = change_coefficients(&c, &Coefficients::Zmod(4)).unwrap();
        let two = z4.entry_by_id("q2", "q1").unwrap();
        assert_eq!(two.augmentation(), Zmod::new(2, 4));
        let same: GradedComplex<Integer> = change_coefficients(&c, &Coefficients::Z).unwrap();
        assert_eq!(same, c);
        assert!(change_coefficients::<Fp>(&c, &Coefficients::Q).is_err());
    }

    #[test]
    fn integer_holonomy_must_be_a_sign() {
        assert!(LocalSystem::new(vec![z(2)]).is_err());
        assert!(LocalSystem::new(vec![z(-1)]).is_ok());
    }

    #[test]
    fn subsystem_json() {
        let s = load_subsystem(
            r#"{"generators": [[1, 0], [0, 1]], "character": [1, -1], "holonomy": [1, {"num": 1, "den": 2}]}"#,
        )
        .unwrap();
        assert_eq!(s.subsystem().generators().len(), 2);
        let h = s.holonomy_values().unwrap().unwrap();
        assert_eq!(h[1], Rational::new(1.into(), 2.into()));
        assert!(load_subsystem(r#"{"generators": [], "bogus": 1}"#).is_err());
        assert_eq!(parse_holonomy_list("2, -1/3").unwrap()[1], Rational::new((-1).into(), 3.into()));
    }
}
