//! Determinant lines of finite-dimensional rational vector spaces.
//!
//! Every based space `V` has the distinguished generator `v₁ ∧ … ∧ v_n` of
//! `Λ^max V`. An exact triple `0 → V' → V → V'' → 0` induces an isomorphism
//! `Λ^max V' ⊗ Λ^max V'' → Λ^max V`; with distinguished generators on all three
//! lines it is multiplication by a nonzero rational, computed here. Exact
//! squares and direct sums are checked through these scalars.

use num_traits::{One, Zero};

use crate::algebra::{Matrix, Rational};
use crate::error::{Error, Result};

/// A finite-dimensional space over `Q` with a distinguished ordered basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasedSpace {
    labels: Vec<String>,
}

impl BasedSpace {
    pub fn new(labels: Vec<String>) -> Self {
        BasedSpace { labels }
    }

    /// `Q^n` with basis labels `prefix0, prefix1, …`.
    pub fn standard(prefix: &str, dim: usize) -> Self {
        BasedSpace {
            labels: (0..dim).map(|i| format!("{prefix}{i}")).collect(),
        }
    }

    pub fn zero() -> Self {
        BasedSpace { labels: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn determinant_line(&self) -> GradedLine {
        GradedLine {
            label: if self.labels.is_empty() {
                "1".into()
            } else {
                self.labels.join("∧")
            },
            parity: (self.dim() % 2) as u8,
        }
    }
}

/// A one-dimensional line with a `Z/2` grading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedLine {
    pub label: String,
    pub parity: u8,
}

impl GradedLine {
    pub fn new(label: impl Into<String>, parity: u8) -> Self {
        GradedLine {
            label: label.into(),
            parity: parity % 2,
        }
    }
}

/// Sign of the interchange `L₁ ⊗ L₂ → L₂ ⊗ L₁`: `(−1)^{deg L₁ · deg L₂}`.
pub fn interchange_sign(l1: &GradedLine, l2: &GradedLine) -> i32 {
    if l1.parity % 2 == 1 && l2.parity % 2 == 1 {
        -1
    } else {
        1
    }
}

fn koszul(a: usize, b: usize) -> Rational {
    if a % 2 == 1 && b % 2 == 1 {
        -Rational::one()
    } else {
        Rational::one()
    }
}

/// `0 → sub --inclusion--> total --projection--> quotient → 0`, maps written
/// in the distinguished bases.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactTriple {
    sub: BasedSpace,
    total: BasedSpace,
    quotient: BasedSpace,
    inclusion: Matrix<Rational>,
    projection: Matrix<Rational>,
}

impl ExactTriple {
    pub fn new(
        sub: BasedSpace,
        total: BasedSpace,
        quotient: BasedSpace,
        inclusion: Matrix<Rational>,
        projection: Matrix<Rational>,
    ) -> Result<Self> {
        let (k, n, l) = (sub.dim(), total.dim(), quotient.dim());
        if inclusion.shape() != (n, k) || projection.shape() != (l, n) {
            return Err(Error::NotExact(format!(
                "map shapes {:?}, {:?} do not fit dimensions {k}, {n}, {l}",
                inclusion.shape(),
                projection.shape()
            )));
        }
        if n != k + l {
            return Err(Error::NotExact(format!("dim {n} != {k} + {l}")));
        }
        if !projection.mul(&inclusion)?.is_zero() {
            return Err(Error::NotExact("projection ∘ inclusion != 0".into()));
        }
        if inclusion.rank() != k {
            return Err(Error::NotExact("inclusion is not injective".into()));
        }
        if projection.rank() != l {
            return Err(Error::NotExact("projection is not surjective".into()));
        }
        Ok(ExactTriple {
            sub,
            total,
            quotient,
            inclusion,
            projection,
        })
    }

    pub fn sub(&self) -> &BasedSpace {
        &self.sub
    }

    pub fn total(&self) -> &BasedSpace {
        &self.total
    }

    pub fn quotient(&self) -> &BasedSpace {
        &self.quotient
    }

    pub fn inclusion(&self) -> &Matrix<Rational> {
        &self.inclusion
    }

    pub fn projection(&self) -> &Matrix<Rational> {
        &self.projection
    }

    /// Some preimage under the projection of each quotient basis vector.
    pub fn canonical_lifts(&self) -> Vec<Vec<Rational>> {
        (0..self.quotient.dim())
            .map(|j| {
                let mut e = vec![Rational::zero(); self.quotient.dim()];
                e[j] = Rational::one();
                self.projection.solve(&e).expect("projection is surjective")
            })
            .collect()
    }

    /// The scalar `c` with `∧v'ᵢ ⊗ ∧v''ⱼ ↦ c · ∧eₖ`, where the image uses the
    /// included `v'ᵢ` followed by the lifts of the `v''ⱼ`.
    pub fn scalar(&self) -> Rational {
        self.scalar_with_lifts(&self.canonical_lifts())
            .expect("canonical lifts are valid")
    }

    /// Same scalar computed from caller-chosen lifts; they must be preimages.
    pub fn scalar_with_lifts(&self, lifts: &[Vec<Rational>]) -> Result<Rational> {
        let n = self.total.dim();
        if lifts.len() != self.quotient.dim() {
            return Err(Error::NotExact("wrong number of lifts".into()));
        }
        let mut cols: Vec<Vec<Rational>> =
            (0..self.sub.dim()).map(|j| self.inclusion.column(j)).collect();
        for (j, v) in lifts.iter().enumerate() {
            if v.len() != n {
                return Err(Error::NotExact("lift has the wrong length".into()));
            }
            let image = self.projection.apply(v);
            let ok = image
                .iter()
                .enumerate()
                .all(|(i, x)| if i == j { x.is_one() } else { x.is_zero() });
            if !ok {
                return Err(Error::NotExact(format!("lift {j} is not a preimage")));
            }
            cols.push(v.clone());
        }
        if n == 0 {
            return Ok(Rational::one());
        }
        Ok(Matrix::from_columns(&cols, n).determinant())
    }
}

/// Outcome of evaluating both composites around an exact square.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareReport {
    /// `Ψ_M ∘ (Ψ_L ⊗ Ψ_R) ∘ (id ⊗ R ⊗ id)` on the distinguished generators.
    pub via_columns: Rational,
    /// `Ψ_C ∘ (Ψ_T ⊗ Ψ_B)` on the distinguished generators.
    pub via_rows: Rational,
}

impl SquareReport {
    pub fn commutes(&self) -> bool {
        self.via_columns == self.via_rows
    }
}

/// A 3×3 diagram of based spaces with exact rows and columns.
///
/// Spaces are named by position: `LT CT RT / LM CM RM / LB CB RB`.
#[derive(Clone, Debug)]
pub struct ExactSquare {
    pub top: ExactTriple,
    pub middle: ExactTriple,
    pub bottom: ExactTriple,
    pub left: ExactTriple,
    pub center: ExactTriple,
    pub right: ExactTriple,
}

impl ExactSquare {
    pub fn new(
        top: ExactTriple,
        middle: ExactTriple,
        bottom: ExactTriple,
        left: ExactTriple,
        center: ExactTriple,
        right: ExactTriple,
    ) -> Result<Self> {
        let shared = [
            (&top.sub, &left.sub, "LT"),
            (&top.total, &center.sub, "CT"),
            (&top.quotient, &right.sub, "RT"),
            (&middle.sub, &left.total, "LM"),
            (&middle.total, &center.total, "CM"),
            (&middle.quotient, &right.total, "RM"),
            (&bottom.sub, &left.quotient, "LB"),
            (&bottom.total, &center.quotient, "CB"),
            (&bottom.quotient, &right.quotient, "RB"),
        ];
        for (a, b, name) in shared {
            if a != b {
                return Err(Error::NotExact(format!("row and column disagree on {name}")));
            }
        }
        let squares = [
            (
                center.inclusion.mul(&top.inclusion)?,
                middle.inclusion.mul(&left.inclusion)?,
                "LT → CM",
            ),
            (
                right.inclusion.mul(&top.projection)?,
                middle.projection.mul(&center.inclusion)?,
                "CT → RM",
            ),
            (
                center.projection.mul(&middle.inclusion)?,
                bottom.inclusion.mul(&left.projection)?,
                "LM → CB",
            ),
            (
                right.projection.mul(&middle.projection)?,
                bottom.projection.mul(&center.projection)?,
                "CM → RB",
            ),
        ];
        for (a, b, name) in squares {
            if a != b {
                return Err(Error::NotExact(format!("square {name} does not commute")));
            }
        }
        Ok(ExactSquare {
            top,
            middle,
            bottom,
            left,
            center,
            right,
        })
    }

    /// Square built from the block decomposition `CM = I ⊕ A ⊕ B ⊕ R` with
    /// `LT = I`, `CT = I ⊕ A`, `LM = I ⊕ B`, and the remaining spaces the
    /// induced quotients. `bases` gives each space's distinguished basis as the
    /// columns of an invertible matrix in block coordinates, in the order
    /// `LT CT RT LM CM RM LB CB RB`.
    pub fn from_blocks(dims: [usize; 4], bases: &[Matrix<Rational>; 9]) -> Result<Self> {
        use Block::*;
        let layouts: [&[Block]; 9] = [
            &[I],
            &[I, A],
            &[A],
            &[I, B],
            &[I, A, B, R],
            &[A, R],
            &[B],
            &[B, R],
            &[R],
        ];
        let names = ["LT", "CT", "RT", "LM", "CM", "RM", "LB", "CB", "RB"];
        let size = |b: Block| dims[b as usize];
        let dim_of = |layout: &[Block]| layout.iter().map(|&b| size(b)).sum::<usize>();
        let mut inverses = Vec::with_capacity(9);
        for (k, layout) in layouts.iter().enumerate() {
            let n = dim_of(layout);
            if bases[k].shape() != (n, n) {
                return Err(Error::NotExact(format!(
                    "basis of {} must be {n}x{n}",
                    names[k]
                )));
            }
            let inv = if n == 0 {
                Matrix::zeros(0, 0)
            } else {
                bases[k]
                    .inverse()
                    .ok_or_else(|| Error::NotExact(format!("basis of {} is singular", names[k])))?
            };
            inverses.push(inv);
        }
        let space = |k: usize| BasedSpace::standard(&names[k].to_lowercase(), dim_of(layouts[k]));
        let block_map = |from: usize, to: usize| -> Result<Matrix<Rational>> {
            let (src, dst) = (layouts[from], layouts[to]);
            let mut f = Matrix::zeros(dim_of(dst), dim_of(src));
            let offset = |layout: &[Block], b: Block| -> Option<usize> {
                let mut o = 0;
                for &x in layout {
                    if x == b {
                        return Some(o);
                    }
                    o += size(x);
                }
                None
            };
            for &b in src {
                if let (Some(os), Some(od)) = (offset(src, b), offset(dst, b)) {
                    for t in 0..size(b) {
                        f[(od + t, os + t)] = Rational::one();
                    }
                }
            }
            inverses[to].mul(&f)?.mul(&bases[from])
        };
        let triple = |a: usize, b: usize, c: usize| -> Result<ExactTriple> {
            ExactTriple::new(space(a), space(b), space(c), block_map(a, b)?, block_map(b, c)?)
        };
        Self::new(
            triple(0, 1, 2)?,
            triple(3, 4, 5)?,
            triple(6, 7, 8)?,
            triple(0, 3, 6)?,
            triple(1, 4, 7)?,
            triple(2, 5, 8)?,
        )
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Block {
    I = 0,
    A = 1,
    B = 2,
    R = 3,
}

/// The scalar of the isomorphism `ddd(V') ⊗ ddd(V'') → ddd(V)` on
/// distinguished generators.
pub fn exact_triple_scalar(t: &ExactTriple) -> Rational {
    t.scalar()
}

/// Evaluates both composites of the exact-square diagram on distinguished
/// generators.
pub fn verify_exact_square(sq: &ExactSquare) -> SquareReport {
    let rt = sq.top.quotient.dim();
    let lb = sq.bottom.sub.dim();
    let via_columns = koszul(rt, lb) * sq.left.scalar() * sq.right.scalar() * sq.middle.scalar();
    let via_rows = sq.top.scalar() * sq.bottom.scalar() * sq.center.scalar();
    SquareReport {
        via_columns,
        via_rows,
    }
}

/// `0 → D₁ → D₁ ⊕ D₂ → D₂ → 0` where `D₁ ⊕ D₂` carries the basis given by the
/// columns of `sum_basis` in the standard coordinates (`D₁` first).
pub fn direct_sum_triple(d1: usize, d2: usize, sum_basis: &Matrix<Rational>) -> Result<ExactTriple> {
    split_triple(d1, d2, &Matrix::identity(d1), sum_basis, &Matrix::identity(d2), false)
}

/// `0 → D₂ → D₁ ⊕ D₂ → D₁ → 0`, the same sum with the factors' roles exchanged.
pub fn direct_sum_triple_reversed(
    d1: usize,
    d2: usize,
    sum_basis: &Matrix<Rational>,
) -> Result<ExactTriple> {
    split_triple(d1, d2, &Matrix::identity(d2), sum_basis, &Matrix::identity(d1), true)
}

fn invert(m: &Matrix<Rational>) -> Result<Matrix<Rational>> {
    if m.rows() == 0 {
        return Ok(Matrix::zeros(0, 0));
    }
    m.inverse()
        .ok_or_else(|| Error::NotExact("singular basis matrix".into()))
}

/// Triple for the coordinate splitting `Q^{a+b} = Q^a ⊕ Q^b`; with `reversed`
/// the second summand is the subspace. Bases are given as columns in
/// standard coordinates.
fn split_triple(
    a: usize,
    b: usize,
    sub: &Matrix<Rational>,
    total: &Matrix<Rational>,
    quotient: &Matrix<Rational>,
    reversed: bool,
) -> Result<ExactTriple> {
    let n = a + b;
    let (k, k_off, l, l_off) = if reversed { (b, a, a, 0) } else { (a, 0, b, a) };
    let mut inc = Matrix::zeros(n, k);
    for t in 0..k {
        inc[(k_off + t, t)] = Rational::one();
    }
    let mut proj = Matrix::zeros(l, n);
    for t in 0..l {
        proj[(t, l_off + t)] = Rational::one();
    }
    ExactTriple::new(
        BasedSpace::standard("x", k),
        BasedSpace::standard("s", n),
        BasedSpace::standard("y", l),
        invert(total)?.mul(&inc)?.mul(sub)?,
        invert(quotient)?.mul(&proj)?.mul(total)?,
    )
}

/// Both bracketings `(D₁ ⊕ D₂) ⊕ D₃` and `D₁ ⊕ (D₂ ⊕ D₃)` of the direct-sum
/// isomorphism `ddd(D₁) ⊗ ddd(D₂) ⊗ ddd(D₃) → ddd(D₁ ⊕ D₂ ⊕ D₃)`, as scalars.
/// The intermediate sums and the total carry the given bases.
pub fn direct_sum_bracketings(
    dims: [usize; 3],
    basis_12: &Matrix<Rational>,
    basis_23: &Matrix<Rational>,
    basis_123: &Matrix<Rational>,
) -> Result<(Rational, Rational)> {
    let [d1, d2, d3] = dims;
    let id = Matrix::<Rational>::identity;
    let left = split_triple(d1 + d2, d3, basis_12, basis_123, &id(d3), false)?.scalar()
        * split_triple(d1, d2, &id(d1), basis_12, &id(d2), false)?.scalar();
    let right = split_triple(d1, d2 + d3, &id(d1), basis_123, basis_23, false)?.scalar()
        * split_triple(d2, d3, &id(d2), basis_23, &id(d3), false)?.scalar();
    Ok((left, right))
}

/// The square `0 → D₁ → D₁ / D₂ → D₁⊕D₂ → D₁ / D₂ → D₂ → 0` whose commutativity
/// expresses supercommutativity of the direct-sum isomorphisms.
pub fn supercommutativity_square(d1: usize, d2: usize) -> Result<ExactSquare> {
    // blocks: I = 0, A = D₁, B = D₂, R = 0
    let id = |n: usize| Matrix::<Rational>::identity(n);
    let bases = [
        id(0),
        id(d1),
        id(d1),
        id(d2),
        id(d1 + d2),
        id(d1),
        id(d2),
        id(d2),
        id(0),
    ];
    ExactSquare::from_blocks([0, d1, d2, 0], &bases)
}
