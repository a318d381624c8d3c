//! Coefficient ring traits.
//!
//! Every ring used by the crate is exact. The traits sit on top of the
//! `num-traits` vocabulary so that integers, rationals, residues and Laurent
//! polynomials can be fed through the same matrix and homology code.

use std::fmt::{self, Debug, Display};
use std::str::FromStr;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::modular::is_prime;
use crate::error::{Error, Result};

/// A commutative ring with identity whose elements are plain values.
pub trait Ring:
    Clone
    + Debug
    + Display
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Whether every nonzero element is invertible.
    const IS_FIELD: bool;

    /// Image of an integer under the unique ring map `Z -> R`.
    fn from_int(n: &BigInt) -> Self;

    fn try_inverse(&self) -> Option<Self>;

    fn is_unit(&self) -> bool {
        self.try_inverse().is_some()
    }

    fn from_i64(n: i64) -> Self {
        Self::from_int(&BigInt::from(n))
    }
}

/// A ring with a Euclidean division, as needed by Smith normal form.
pub trait EuclideanDomain: Ring {
    /// `false` for rings that carry the trait only so that callers get a
    /// runtime "unsupported ring" error instead of a type error.
    fn is_euclidean() -> bool {
        true
    }

    /// Euclidean size of a nonzero element.
    fn size(&self) -> BigUint;

    /// `(q, r)` with `self = q * d + r` and `r = 0` or `size(r) < size(d)`.
    fn div_rem_euclid(&self, d: &Self) -> (Self, Self);

    /// A unit `u` such that `u * self` is the chosen normal representative
    /// of the associate class of `self`.
    fn normalizing_unit(&self) -> Self;

    fn normalized(&self) -> Self {
        self.normalizing_unit() * self.clone()
    }

    fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem_euclid(self).1.is_zero()
    }
}

pub trait Field: EuclideanDomain {
    fn inv(&self) -> Self {
        self.try_inverse().expect("inverse of zero")
    }
}

pub type Integer = BigInt;
pub type Rational = BigRational;

impl Ring for BigInt {
    const IS_FIELD: bool = false;

    fn from_int(n: &BigInt) -> Self {
        n.clone()
    }

    fn try_inverse(&self) -> Option<Self> {
        if self.is_one() || (-self).is_one() {
            Some(self.clone())
        } else {
            None
        }
    }
}

impl EuclideanDomain for BigInt {
    fn size(&self) -> BigUint {
        self.magnitude().clone()
    }

    fn div_rem_euclid(&self, d: &Self) -> (Self, Self) {
        let (q, r) = self.div_mod_floor(d);
        // pick the remainder of least magnitude
        let twice: BigInt = &r * 2;
        if twice.abs() > d.abs() {
            (q + 1, r - d)
        } else {
            (q, r)
        }
    }

    fn normalizing_unit(&self) -> Self {
        if self.sign() == Sign::Minus {
            -BigInt::one()
        } else {
            BigInt::one()
        }
    }
}

impl Ring for BigRational {
    const IS_FIELD: bool = true;

    fn from_int(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn try_inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl EuclideanDomain for BigRational {
    fn size(&self) -> BigUint {
        BigUint::zero()
    }

    fn div_rem_euclid(&self, d: &Self) -> (Self, Self) {
        (self / d, BigRational::zero())
    }

    fn normalizing_unit(&self) -> Self {
        if self.is_zero() {
            BigRational::one()
        } else {
            self.recip()
        }
    }
}

impl Field for BigRational {}

/// Runtime descriptor of a base coefficient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coefficients {
    Z,
    Q,
    /// Prime field `F_p`.
    Fp(u32),
    /// `Z/m`, any `m >= 2`.
    Zmod(u32),
}

impl Coefficients {
    pub fn modulus(&self) -> Option<u32> {
        match self {
            Coefficients::Fp(p) | Coefficients::Zmod(p) => Some(*p),
            _ => None,
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self, Coefficients::Q | Coefficients::Fp(_))
    }

    /// Characteristic, 0 for `Z` and `Q`.
    pub fn characteristic(&self) -> u32 {
        self.modulus().unwrap_or(0)
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Z => f.write_str("Z"),
            Coefficients::Q => f.write_str("Q"),
            Coefficients::Fp(p) => write!(f, "Fp:{p}"),
            Coefficients::Zmod(m) => write!(f, "Zmod:{m}"),
        }
    }
}

impl FromStr for Coefficients {
    type Err = Error;

    /// Accepts `Z`, `Q`, `Fp:<p>`, `Zmod:<m>`, and the shorthand `F<p>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnsupportedRing(format!("`{s}` (expected Z, Q, Fp:<p> or Zmod:<m>)"));
        let parse = |x: &str| x.parse::<u32>().map_err(|_| bad());
        let c = match s {
            "Z" => Coefficients::Z,
            "Q" => Coefficients::Q,
            _ => {
                if let Some(p) = s.strip_prefix("Fp:") {
                    Coefficients::Fp(parse(p)?)
                } else if let Some(m) = s.strip_prefix("Zmod:") {
                    Coefficients::Zmod(parse(m)?)
                } else if let Some(p) = s.strip_prefix('F') {
                    Coefficients::Fp(parse(p)?)
                } else {
                    return Err(bad());
                }
            }
        };
        match c {
            Coefficients::Fp(p) if !is_prime(p) => {
                Err(Error::UnsupportedRing(format!("F_{p}: {p} is not prime")))
            }
            Coefficients::Zmod(m) if m < 2 => Err(Error::UnsupportedRing(format!("Z/{m}"))),
            c => Ok(c),
        }
    }
}
