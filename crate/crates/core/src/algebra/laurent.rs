//! Laurent polynomials `R[t, t⁻¹]` in one variable.
//!
//! Over a field this is a Euclidean domain with size `max exponent − min
//! exponent`. Over `Z` the trait impl exists but reports itself unsupported.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::group_ring::{ClassVector, GroupRingElement};
use super::ring::{EuclideanDomain, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPoly<R> {
    terms: BTreeMap<i64, R>,
}

impl<R: Ring> LaurentPoly<R> {
    pub fn monomial(coeff: R, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        LaurentPoly { terms }
    }

    pub fn t() -> Self {
        Self::monomial(R::one(), 1)
    }

    pub fn constant(c: R) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_terms<I: IntoIterator<Item = (R, i64)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (c, e) in terms {
            out.add_term(c, e);
        }
        out
    }

    fn add_term(&mut self, c: R, e: i64) {
        if c.is_zero() {
            return;
        }
        let v = match self.terms.remove(&e) {
            Some(old) => old + c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(e, v);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &R)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `max − min` exponent; zero for monomials.
    pub fn width(&self) -> u64 {
        match (self.min_exp(), self.max_exp()) {
            (Some(a), Some(b)) => (b - a) as u64,
            _ => 0,
        }
    }

    pub fn leading(&self) -> Option<&R> {
        self.terms.values().next_back()
    }

    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Value at `t = 1`.
    pub fn at_one(&self) -> R {
        self.terms.values().cloned().fold(R::zero(), |a, b| a + b)
    }

    /// Converts a rank-one group ring element `Σ c e^{m}` into `Σ c t^m`.
    pub fn from_group_ring(a: &GroupRingElement<R>) -> Result<Self> {
        if a.rank() != 1 {
            return Err(Error::RankMismatch {
                left: 1,
                right: a.rank(),
            });
        }
        Ok(Self::from_terms(a.terms().map(|(cl, c)| (c.clone(), cl.0[0]))))
    }

    pub fn to_group_ring(&self) -> GroupRingElement<R> {
        GroupRingElement::from_terms(
            1,
            self.terms.iter().map(|(e, c)| (c.clone(), ClassVector(vec![*e]))),
        )
        .expect("rank one")
    }
}

impl<R: Ring> Zero for LaurentPoly<R> {
    fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<R: Ring> One for LaurentPoly<R> {
    fn one() -> Self {
        Self::constant(R::one())
    }
}

impl<R: Ring> Add for LaurentPoly<R> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (e, c) in rhs.terms {
            self.add_term(c, e);
        }
        self
    }
}

impl<R: Ring> Sub for LaurentPoly<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<R: Ring> Neg for LaurentPoly<R> {
    type Output = Self;
    fn neg(self) -> Self {
        LaurentPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl<R: Ring> Mul for LaurentPoly<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(c1.clone() * c2.clone(), e1 + e2);
            }
        }
        out
    }
}

impl<R: Ring> fmt::Display for LaurentPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // highest power first
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, cs),
            };
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mono = match e {
                0 => String::new(),
                1 => "t".into(),
                k => format!("t^{k}"),
            };
            match (mono.is_empty(), mag == "1") {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{mag}{mono}")?,
            }
        }
        Ok(())
    }
}

impl<R: Ring> Ring for LaurentPoly<R> {
    const IS_FIELD: bool = false;

    fn from_int(n: &BigInt) -> Self {
        Self::constant(R::from_int(n))
    }

    /// Units are the monomials `u·t^k` with `u` a unit of `R`.
    fn try_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        c.try_inverse().map(|ci| Self::monomial(ci, -e))
    }
}

impl<R: Ring> EuclideanDomain for LaurentPoly<R> {
    fn is_euclidean() -> bool {
        R::IS_FIELD
    }

    fn size(&self) -> BigUint {
        BigUint::from(self.width())
    }

    fn div_rem_euclid(&self, d: &Self) -> (Self, Self) {
        assert!(R::IS_FIELD, "Laurent division needs field coefficients");
        let s = d.min_exp().expect("division by zero");
        let divisor = d.shift(-s);
        let lead_inv = divisor
            .leading()
            .unwrap()
            .try_inverse()
            .expect("field coefficient");
        let top = divisor.max_exp().unwrap();
        let r0 = match self.min_exp() {
            Some(r) => r,
            None => return (Self::zero(), Self::zero()),
        };
        // ordinary polynomial division of t^{-r0}·self by divisor
        let mut rem = self.shift(-r0);
        let mut quot = Self::zero();
        while let Some(m) = rem.max_exp() {
            if m < top {
                break;
            }
            let c = rem.leading().unwrap().clone() * lead_inv.clone();
            let q = Self::monomial(c, m - top);
            rem = rem - q.clone() * divisor.clone();
            quot = quot + q;
        }
        (quot.shift(r0 - s), rem.shift(r0))
    }

    /// Shifts to lowest exponent zero and makes the leading coefficient one.
    fn normalizing_unit(&self) -> Self {
        match (self.min_exp(), self.leading().and_then(|c| c.try_inverse())) {
            (Some(m), Some(ci)) => Self::monomial(ci, -m),
            (Some(m), None) => Self::monomial(R::one(), -m),
            (None, _) => Self::one(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = LaurentPoly<BigRational>;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn division_reduces_width() {
        let t = Q::t();
        let a = t.clone() * t.clone() * t.clone() + Q::constant(q(2)) + Q::monomial(q(1), -2);
        let d = t.clone() - Q::one();
        let (quo, rem) = a.div_rem_euclid(&d);
        assert_eq!(quo * d.clone() + rem.clone(), a);
        assert!(rem.is_zero() || rem.width() < d.width());
    }

    #[test]
    fn monomials_are_units() {
        let x = Q::monomial(q(5), 1);
        assert!(x.is_unit());
        assert_eq!(x.clone() * x.try_inverse().unwrap(), Q::one());
        assert!(!(Q::t() - Q::one()).is_unit());
    }

    #[test]
    fn normalization_is_monic_with_zero_lowest_exponent() {
        let x = Q::monomial(q(-2), 3) + Q::monomial(q(4), 2);
        assert_eq!(x.normalized(), Q::t() - Q::constant(q(2)));
        assert_eq!((Q::t() - Q::one()).to_string(), "t - 1");
    }

    #[test]
    fn integer_laurent_ring_is_not_euclidean() {
        assert!(!LaurentPoly::<BigInt>::is_euclidean());
        assert!(Q::is_euclidean());
    }
}
