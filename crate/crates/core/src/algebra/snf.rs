//! Smith normal form over Euclidean domains and per-degree homology.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::Matrix;
use super::modular::{Fp, Zmod};
use super::ring::{Coefficients, EuclideanDomain, Integer, Rational, Ring};
use crate::error::{Error, Result};

/// `u · m · v = diag` with `u`, `v` invertible.
#[derive(Clone, Debug, PartialEq)]
pub struct Snf<R> {
    pub u: Matrix<R>,
    pub v: Matrix<R>,
    /// Nonzero invariant factors `d₁ | d₂ | …`, normalized.
    pub factors: Vec<R>,
}

impl<R: Ring> Snf<R> {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// The full diagonal matrix with the shape of the input.
    pub fn diagonal(&self) -> Matrix<R> {
        let mut d = Matrix::zeros(self.u.rows(), self.v.cols());
        for (i, f) in self.factors.iter().enumerate() {
            d[(i, i)] = f.clone();
        }
        d
    }
}

pub fn smith_normal_form<R: EuclideanDomain>(m: &Matrix<R>) -> Result<Snf<R>> {
    if !R::is_euclidean() {
        return Err(Error::UnsupportedRing(
            "Smith normal form needs a Euclidean coefficient ring; specialize to a field \
             or use the principal cokernel path"
                .into(),
        ));
    }
    let (rows, cols) = m.shape();
    let mut a = m.clone();
    let mut u = Matrix::identity(rows);
    let mut v = Matrix::identity(cols);
    let mut factors = Vec::new();

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_entry(&a, t, (t..rows).flat_map(|i| (t..cols).map(move |j| (i, j))))
        else {
            break;
        };
        move_to_pivot(&mut a, &mut u, &mut v, t, pi, pj);

        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !a[(i, t)].is_zero() {
                    let (q, _) = a[(i, t)].div_rem_euclid(&a[(t, t)]);
                    let q = -q;
                    a.add_row_multiple(i, t, &q);
                    u.add_row_multiple(i, t, &q);
                    clean &= a[(i, t)].is_zero();
                }
            }
            for j in t + 1..cols {
                if !a[(t, j)].is_zero() {
                    let (q, _) = a[(t, j)].div_rem_euclid(&a[(t, t)]);
                    let q = -q;
                    a.add_col_multiple(j, t, &q);
                    v.add_col_multiple(j, t, &q);
                    clean &= a[(t, j)].is_zero();
                }
            }
            if !clean {
                let cross = (t..rows)
                    .map(|i| (i, t))
                    .chain((t + 1..cols).map(|j| (t, j)));
                let (pi, pj) = min_entry(&a, t, cross).expect("pivot is nonzero");
                move_to_pivot(&mut a, &mut u, &mut v, t, pi, pj);
                continue;
            }
            // divisibility chain: fold an offending row into the pivot row
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a[(t, t)].divides(&a[(i, j)]));
            match bad {
                Some((i, _)) => {
                    let one = R::one();
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }

        let unit = a[(t, t)].normalizing_unit();
        a.scale_row(t, &unit);
        u.scale_row(t, &unit);
        factors.push(a[(t, t)].clone());
    }

    Ok(Snf { u, v, factors })
}

fn min_entry<R, I>(a: &Matrix<R>, _t: usize, cells: I) -> Option<(usize, usize)>
where
    R: EuclideanDomain,
    I: Iterator<Item = (usize, usize)>,
{
    cells
        .filter(|&(i, j)| !a[(i, j)].is_zero())
        .min_by(|&x, &y| a[x].size().cmp(&a[y].size()))
}

fn move_to_pivot<R: Ring>(
    a: &mut Matrix<R>,
    u: &mut Matrix<R>,
    v: &mut Matrix<R>,
    t: usize,
    i: usize,
    j: usize,
) {
    a.swap_rows(t, i);
    u.swap_rows(t, i);
    a.swap_cols(t, j);
    v.swap_cols(t, j);
}

/// Homology of `C_{d+1} --d_in--> C_d --d_out--> C_{d-1}` at `C_d`.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeHomology<R> {
    pub free_rank: usize,
    /// Non-unit invariant factors of the incoming map, in divisibility order.
    pub torsion: Vec<R>,
}

fn check_composable<R: Ring>(d_in: &Matrix<R>, d_out: &Matrix<R>) -> Result<()> {
    if d_in.rows() != d_out.cols() {
        return Err(Error::DimensionMismatch(format!(
            "incoming map has {} rows but outgoing map has {} columns",
            d_in.rows(),
            d_out.cols()
        )));
    }
    let comp = d_out.mul(d_in)?;
    match comp.first_nonzero() {
        Some((row, col)) => Err(Error::NonzeroComposition { row, col }),
        None => Ok(()),
    }
}

pub fn homology_at_degree<R: EuclideanDomain>(
    d_in: &Matrix<R>,
    d_out: &Matrix<R>,
) -> Result<DegreeHomology<R>> {
    check_composable(d_in, d_out)?;
    let s_in = smith_normal_form(d_in)?;
    let s_out = smith_normal_form(d_out)?;
    let n = d_in.rows();
    Ok(DegreeHomology {
        free_rank: n - s_in.rank() - s_out.rank(),
        torsion: s_in.factors.into_iter().filter(|f| !f.is_unit()).collect(),
    })
}

/// Homology of one degree as an abelian group: `R^free ⊕ ⊕ Z/tᵢ`.
///
/// For `Z/m` coefficients `free_rank` counts summands `Z/m` and `torsion`
/// lists the proper divisors of `m` that occur.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn zero() -> Self {
        HomologyGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion.iter().map(|t| t.to_u64().unwrap()).collect()
    }
}

/// Coefficient rings for which the engine computes degree-wise homology.
///
/// The descriptor argument carries the runtime modulus of residue rings.
pub trait CoefficientRing: Ring {
    fn describe() -> &'static str;

    /// Whether values of this type can represent the given coefficients.
    fn matches(coefficients: &Coefficients) -> bool;

    fn embed_int(n: &BigInt, coefficients: &Coefficients) -> Self;

    /// Image of a rational; fails when the denominator is not invertible.
    fn embed_rational(q: &Rational, coefficients: &Coefficients) -> Result<Self> {
        let num = Self::embed_int(q.numer(), coefficients);
        let den = Self::embed_int(q.denom(), coefficients);
        den.try_inverse()
            .map(|d| num * d)
            .ok_or_else(|| Error::NotInvertible(format!("{q} over {coefficients}")))
    }

    fn degree_homology(
        d_in: &Matrix<Self>,
        d_out: &Matrix<Self>,
        coefficients: &Coefficients,
    ) -> Result<HomologyGroup>;
}

impl CoefficientRing for Integer {
    fn describe() -> &'static str {
        "Z"
    }

    fn matches(coefficients: &Coefficients) -> bool {
        matches!(coefficients, Coefficients::Z)
    }

    fn embed_int(n: &BigInt, _coefficients: &Coefficients) -> Self {
        n.clone()
    }

    fn embed_rational(q: &Rational, _coefficients: &Coefficients) -> Result<Self> {
        if q.is_integer() {
            Ok(q.to_integer())
        } else {
            Err(Error::NotInvertible(format!("{q} is not an integer")))
        }
    }

    fn degree_homology(
        d_in: &Matrix<Self>,
        d_out: &Matrix<Self>,
        _coefficients: &Coefficients,
    ) -> Result<HomologyGroup> {
        let h = homology_at_degree(d_in, d_out)?;
        Ok(HomologyGroup {
            free_rank: h.free_rank,
            torsion: h.torsion,
        })
    }
}

impl CoefficientRing for Rational {
    fn describe() -> &'static str {
        "Q"
    }

    fn matches(coefficients: &Coefficients) -> bool {
        matches!(coefficients, Coefficients::Q)
    }

    fn embed_int(n: &BigInt, _coefficients: &Coefficients) -> Self {
        Rational::from_integer(n.clone())
    }

    fn embed_rational(q: &Rational, _coefficients: &Coefficients) -> Result<Self> {
        Ok(q.clone())
    }

    fn degree_homology(
        d_in: &Matrix<Self>,
        d_out: &Matrix<Self>,
        _coefficients: &Coefficients,
    ) -> Result<HomologyGroup> {
        let h = homology_at_degree(d_in, d_out)?;
        debug_assert!(h.torsion.is_empty());
        Ok(HomologyGroup {
            free_rank: h.free_rank,
            torsion: Vec::new(),
        })
    }
}

impl CoefficientRing for Fp {
    fn describe() -> &'static str {
        "F_p"
    }

    fn matches(coefficients: &Coefficients) -> bool {
        matches!(coefficients, Coefficients::Fp(_))
    }

    fn embed_int(n: &BigInt, coefficients: &Coefficients) -> Self {
        Fp::from_bigint(n, coefficients.modulus().expect("prime field"))
    }

    fn degree_homology(
        d_in: &Matrix<Self>,
        d_out: &Matrix<Self>,
        _coefficients: &Coefficients,
    ) -> Result<HomologyGroup> {
        let h = homology_at_degree(d_in, d_out)?;
        Ok(HomologyGroup {
            free_rank: h.free_rank,
            torsion: Vec::new(),
        })
    }
}

impl CoefficientRing for Zmod {
    fn describe() -> &'static str {
        "Z/m"
    }

    fn matches(coefficients: &Coefficients) -> bool {
        matches!(coefficients, Coefficients::Zmod(_))
    }

    fn embed_int(n: &BigInt, coefficients: &Coefficients) -> Self {
        Zmod::from_bigint(n, coefficients.modulus().expect("modulus"))
    }

    fn degree_homology(
        d_in: &Matrix<Self>,
        d_out: &Matrix<Self>,
        coefficients: &Coefficients,
    ) -> Result<HomologyGroup> {
        let Coefficients::Zmod(modulus) = *coefficients else {
            return Err(Error::UnsupportedRing(format!(
                "residue matrices with {coefficients} coefficients"
            )));
        };
        check_composable(d_in, d_out)?;
        let lift = |m: &Matrix<Zmod>| m.map(|x| x.lift());
        modular_homology(&lift(d_in), &lift(d_out), modulus as u64)
    }
}

/// Homology at the middle of `Z^a --d_in--> Z^n --d_out--> Z^b` after
/// tensoring with `Z/m`, computed on integer lifts.
///
/// Cycles are the lattice `K = {x : d_out x ∈ mZ^b}` (the kernel of the block
/// `[d_out | m·I]` projected to its first block); boundaries are
/// `I = im d_in + mZ^n`; the answer is the finite group `K / I`.
pub fn modular_homology(
    d_in: &Matrix<Integer>,
    d_out: &Matrix<Integer>,
    modulus: u64,
) -> Result<HomologyGroup> {
    let n = d_in.rows();
    let m = BigInt::from(modulus);
    if n == 0 {
        return Ok(HomologyGroup::zero());
    }
    let block = d_out.hconcat(&Matrix::<Integer>::identity(d_out.rows()).scale(&m));
    let kernel = integer_kernel(&block)?;
    let cycle_basis: Vec<Vec<Integer>> = kernel.iter().map(|v| v[..n].to_vec()).collect();
    debug_assert_eq!(cycle_basis.len(), n);

    let mut boundary_gens: Vec<Vec<Integer>> = (0..d_in.cols()).map(|j| d_in.column(j)).collect();
    for i in 0..n {
        let mut e = vec![BigInt::zero(); n];
        e[i] = m.clone();
        boundary_gens.push(e);
    }

    // coordinates of the boundary generators in the cycle basis
    let k_rat = Matrix::from_columns(&cycle_basis, n).map(|x| Rational::from_integer(x.clone()));
    let mut coords = Vec::with_capacity(boundary_gens.len());
    for g in &boundary_gens {
        let b: Vec<Rational> = g.iter().map(|x| Rational::from_integer(x.clone())).collect();
        let c = k_rat
            .solve(&b)
            .ok_or_else(|| Error::Precondition("boundary outside cycle lattice".into()))?;
        coords.push(
            c.into_iter()
                .map(|x| {
                    assert!(x.is_integer(), "non-integral lattice coordinate");
                    x.to_integer()
                })
                .collect::<Vec<_>>(),
        );
    }
    let rel = Matrix::from_columns(&coords, n);
    let snf = smith_normal_form(&rel)?;
    let mut out = HomologyGroup::zero();
    for f in snf.factors.iter().filter(|f| !f.is_one()) {
        if f.abs() == m {
            out.free_rank += 1;
        } else {
            out.torsion.push(f.abs());
        }
    }
    Ok(out)
}

/// A basis of the integer null space, from the trailing columns of `V`.
pub fn integer_kernel(m: &Matrix<Integer>) -> Result<Vec<Vec<Integer>>> {
    let snf = smith_normal_form(m)?;
    Ok((snf.rank()..m.cols()).map(|j| snf.v.column(j)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::laurent::LaurentPoly;

    fn z(rows: &[&[i64]]) -> Matrix<Integer> {
        Matrix::from_i64(rows)
    }

    fn check_snf(m: &Matrix<Integer>) -> Snf<Integer> {
        let s = smith_normal_form(m).unwrap();
        let prod = s.u.mul(m).unwrap().mul(&s.v).unwrap();
        assert_eq!(prod, s.diagonal());
        s
    }

    #[test]
    fn one_by_one() {
        assert_eq!(check_snf(&z(&[&[2]])).factors, vec![BigInt::from(2)]);
        assert_eq!(check_snf(&z(&[&[-3]])).factors, vec![BigInt::from(3)]);
    }

    #[test]
    fn two_by_two_needs_divisibility_fix() {
        let s = check_snf(&z(&[&[2, 4], &[6, 8]]));
        assert_eq!(s.factors, vec![BigInt::from(2), BigInt::from(4)]);
        let s = check_snf(&z(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.factors, vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn empty_shapes() {
        let m = Matrix::<Integer>::zeros(0, 3);
        let s = smith_normal_form(&m).unwrap();
        assert!(s.factors.is_empty());
        assert_eq!(s.v.shape(), (3, 3));
    }

    #[test]
    fn laurent_snf() {
        type Q = LaurentPoly<Rational>;
        let t = Q::t();
        let m = Matrix::from_rows(vec![vec![t.clone() - Q::one()]], 1);
        let s = smith_normal_form(&m).unwrap();
        assert_eq!(s.factors, vec![t - Q::one()]);
    }

    #[test]
    fn integer_laurent_is_rejected() {
        type Zt = LaurentPoly<Integer>;
        let m = Matrix::from_rows(vec![vec![Zt::t()]], 1);
        assert!(matches!(
            smith_normal_form(&m),
            Err(Error::UnsupportedRing(_))
        ));
    }

    #[test]
    fn homology_examples() {
        let zero11 = Matrix::<Integer>::zeros(1, 1);
        let h = homology_at_degree(&Matrix::<Integer>::zeros(3, 0), &Matrix::zeros(0, 3)).unwrap();
        assert_eq!((h.free_rank, h.torsion.len()), (3, 0));
        let h = homology_at_degree(&z(&[&[2]]), &zero11).unwrap();
        assert_eq!(h.free_rank, 0);
        assert_eq!(h.torsion, vec![BigInt::from(2)]);

        type Q = LaurentPoly<Rational>;
        let five_t = Q::monomial(Rational::from_integer(5.into()), 1);
        let h = homology_at_degree(
            &Matrix::from_rows(vec![vec![five_t]], 1),
            &Matrix::<Q>::zeros(1, 1),
        )
        .unwrap();
        assert_eq!(h, DegreeHomology { free_rank: 0, torsion: vec![] });
    }

    #[test]
    fn nonzero_composition_reports_witness() {
        let err = homology_at_degree(&z(&[&[1]]), &z(&[&[1]])).unwrap_err();
        assert_eq!(err, Error::NonzeroComposition { row: 0, col: 0 });
    }

    #[test]
    fn modular_multiplication_by_two() {
        let two = z(&[&[2]]);
        let zero = z(&[&[0]]);
        // C: Z<a> --2--> Z<b>; over Z/4 the source has ker 2 = Z/2, the target (Z/4)/(2) = Z/2
        let at_source = modular_homology(&Matrix::zeros(1, 0), &two, 4).unwrap();
        assert_eq!(at_source.torsion_u64(), vec![2]);
        let at_target = modular_homology(&two, &Matrix::zeros(0, 1), 4).unwrap();
        assert_eq!(at_target.torsion_u64(), vec![2]);
        let f2 = modular_homology(&two, &zero, 2).unwrap();
        assert_eq!(f2, HomologyGroup { free_rank: 1, torsion: vec![] });
    }
}
