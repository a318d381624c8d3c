//! Boundary of the standard Morse model on `T²` from Maslov-2 disk data.
//!
//! With the perfect Morse function (maximum `q₂`, saddles `x`, `y`, minimum
//! `q₀`), the trivial Pin structure and the orientations `S(x) = ∂₁`,
//! `S(y) = ∂₀`, `S(q₀) = ∂₀ ∧ ∂₁`, a disk family of class `A`, count `c` and
//! boundary winding `(w₀, w₁)` contributes
//!
//! ```text
//! ∂x  ∋ −c·w₁·e^A q₂        ∂y ∋ −c·w₀·e^A q₂
//! ∂q₀ ∋  c·e^A (−w₀·x + w₁·y)
//! ```

use super::complex::{GradedComplex, Generator};
use super::datum::{Model, QuantumDatum};
use crate::algebra::{ClassGroup, ClassVector, Coefficients, GroupRingElement, Integer};
use crate::error::{Error, Result};

/// Positions of `(q₂, x, y, q₀)` among the datum's critical points. The first
/// index-1 point is the saddle `x`.
pub fn torus_roles(d: &QuantumDatum) -> Result<[usize; 4]> {
    let find = |index: i64, skip: usize| {
        d.critical_points
            .iter()
            .enumerate()
            .filter(|(_, p)| p.index == index)
            .nth(skip)
            .map(|(i, _)| i)
    };
    match (find(2, 0), find(1, 0), find(1, 1), find(0, 0)) {
        (Some(a), Some(b), Some(c), Some(e)) => Ok([a, b, c, e]),
        _ => Err(Error::InvalidDatum(
            "torus2 model needs critical points of indices 2, 1, 1, 0".into(),
        )),
    }
}

pub fn assemble_boundary(d: &QuantumDatum) -> Result<GradedComplex<Integer>> {
    if d.model != Model::Torus2 {
        return Err(Error::InvalidDatum(format!(
            "`{}` is not a torus2 datum",
            d.name
        )));
    }
    d.validate()?;
    let [q2, x, y, q0] = torus_roles(d)?;
    let k = d.rank;
    let mut dx = GroupRingElement::zero(k);
    let mut dy = GroupRingElement::zero(k);
    let mut dq0_x = GroupRingElement::zero(k);
    let mut dq0_y = GroupRingElement::zero(k);
    for disk in &d.disks {
        let class = ClassVector(disk.class.clone());
        let [w0, w1] = disk.winding;
        let c = disk.count;
        dx.add_term(Integer::from(-c * w1), class.clone());
        dy.add_term(Integer::from(-c * w0), class.clone());
        dq0_x.add_term(Integer::from(-c * w0), class.clone());
        dq0_y.add_term(Integer::from(c * w1), class);
    }
    let generators = d
        .critical_points
        .iter()
        .map(|p| Generator {
            id: p.id.clone(),
            index: p.index,
        })
        .collect();
    GradedComplex::new(
        d.name.clone(),
        Coefficients::Z,
        2,
        ClassGroup::free(d.generators.clone(), d.maslov.clone()),
        generators,
        [
            ((x, q2), dx),
            ((y, q2), dy),
            ((q0, x), dq0_x),
            ((q0, y), dq0_y),
        ],
    )
}
