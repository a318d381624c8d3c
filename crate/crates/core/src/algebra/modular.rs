//! Residue rings `Z/m` with a modulus chosen at runtime.
//!
//! A value remembers its modulus. Values produced by `zero()`, `one()` and
//! `from_int` are *unbound* (modulus 0) and adopt the modulus of whatever
//! bound value they are combined with.

use std::cmp::Ordering;
use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer as _;
use num_traits::{One, ToPrimitive, Zero};

use super::ring::{EuclideanDomain, Field, Ring};

pub trait ModKind: Copy + fmt::Debug + Send + Sync + 'static {
    const IS_FIELD: bool;
}

#[derive(Clone, Copy, Debug)]
pub struct Composite;

#[derive(Clone, Copy, Debug)]
pub struct Prime;

impl ModKind for Composite {
    const IS_FIELD: bool = false;
}

impl ModKind for Prime {
    const IS_FIELD: bool = true;
}

#[derive(Clone, Copy, Debug)]
pub struct ModInt<K: ModKind> {
    value: i64,
    modulus: u32,
    kind: PhantomData<K>,
}

/// `Z/m` for arbitrary `m >= 2`.
pub type Zmod = ModInt<Composite>;
/// `F_p`; constructors reject composite moduli.
pub type Fp = ModInt<Prime>;

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl<K: ModKind> ModInt<K> {
    /// Residue of `value` modulo `modulus`.
    ///
    /// Panics for a modulus below 2, or for a composite modulus when `K` is
    /// [`Prime`]; ring descriptors validate moduli before values are built.
    pub fn new(value: i64, modulus: u32) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2");
        assert!(!K::IS_FIELD || is_prime(modulus), "{modulus} is not prime");
        ModInt {
            value: value.rem_euclid(modulus as i64),
            modulus,
            kind: PhantomData,
        }
    }

    pub fn from_bigint(value: &BigInt, modulus: u32) -> Self {
        let r = value.mod_floor(&BigInt::from(modulus));
        Self::new(r.to_i64().expect("residue fits"), modulus)
    }

    fn unbound(value: i64) -> Self {
        ModInt {
            value,
            modulus: 0,
            kind: PhantomData,
        }
    }

    /// The modulus, or `None` for an unbound value.
    pub fn modulus(&self) -> Option<u32> {
        (self.modulus != 0).then_some(self.modulus)
    }

    /// Canonical representative in `[0, m)` (raw integer if unbound).
    pub fn residue(&self) -> i64 {
        self.value
    }

    pub fn lift(&self) -> BigInt {
        BigInt::from(self.value)
    }

    fn bind(self, modulus: u32) -> Self {
        if self.modulus == 0 && modulus != 0 {
            Self::new(self.value, modulus)
        } else {
            self
        }
    }

    fn common(a: Self, b: Self) -> (Self, Self, u32) {
        let m = a.modulus.max(b.modulus);
        assert!(
            a.modulus == 0 || b.modulus == 0 || a.modulus == b.modulus,
            "mixing moduli {} and {}",
            a.modulus,
            b.modulus
        );
        (a.bind(m), b.bind(m), m)
    }

    fn make(value: i128, modulus: u32) -> Self {
        if modulus == 0 {
            Self::unbound(i64::try_from(value).expect("unbound residue overflow"))
        } else {
            Self::new(value.rem_euclid(modulus as i128) as i64, modulus)
        }
    }
}

impl<K: ModKind> PartialEq for ModInt<K> {
    fn eq(&self, other: &Self) -> bool {
        let (a, b, _) = Self::common(*self, *other);
        a.value == b.value
    }
}

impl<K: ModKind> Eq for ModInt<K> {}

impl<K: ModKind> PartialOrd for ModInt<K> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<K: ModKind> Ord for ModInt<K> {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = Self::common(*self, *other);
        a.value.cmp(&b.value)
    }
}

impl<K: ModKind> fmt::Display for ModInt<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl<K: ModKind> Add for ModInt<K> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (a, b, m) = Self::common(self, rhs);
        Self::make(a.value as i128 + b.value as i128, m)
    }
}

impl<K: ModKind> Sub for ModInt<K> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let (a, b, m) = Self::common(self, rhs);
        Self::make(a.value as i128 - b.value as i128, m)
    }
}

impl<K: ModKind> Mul for ModInt<K> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (a, b, m) = Self::common(self, rhs);
        Self::make(a.value as i128 * b.value as i128, m)
    }
}

impl<K: ModKind> Neg for ModInt<K> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::make(-(self.value as i128), self.modulus)
    }
}

impl<K: ModKind> Zero for ModInt<K> {
    fn zero() -> Self {
        Self::unbound(0)
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl<K: ModKind> One for ModInt<K> {
    fn one() -> Self {
        Self::unbound(1)
    }
}

fn inverse_mod(a: i64, m: u32) -> Option<i64> {
    let g = num_integer::Integer::extended_gcd(&a, &(m as i64));
    (g.gcd == 1).then(|| g.x.rem_euclid(m as i64))
}

impl<K: ModKind> Ring for ModInt<K> {
    const IS_FIELD: bool = K::IS_FIELD;

    fn from_int(n: &BigInt) -> Self {
        Self::unbound(n.to_i64().expect("integer literal fits in i64"))
    }

    fn try_inverse(&self) -> Option<Self> {
        if self.modulus == 0 {
            return (self.value == 1 || self.value == -1).then_some(*self);
        }
        inverse_mod(self.value, self.modulus).map(|v| Self::new(v, self.modulus))
    }
}

impl EuclideanDomain for Fp {
    fn size(&self) -> BigUint {
        BigUint::zero()
    }

    fn div_rem_euclid(&self, d: &Self) -> (Self, Self) {
        (*self * d.inv(), Self::zero())
    }

    fn normalizing_unit(&self) -> Self {
        self.try_inverse().unwrap_or_else(Self::one)
    }
}

impl Field for Fp {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unbound_values_adopt_modulus() {
        let a = Zmod::new(3, 4);
        assert_eq!(a + Zmod::one(), Zmod::zero());
        assert_eq!((a * a).residue(), 1);
        assert_eq!(Zmod::new(2, 4).try_inverse(), None);
        assert_eq!(-Zmod::new(1, 4), Zmod::new(3, 4));
    }

    #[test]
    fn field_inverse() {
        for v in 1..5 {
            let x = Fp::new(v, 5);
            assert_eq!(x * x.inv(), Fp::one());
        }
    }

    #[test]
    #[should_panic]
    fn composite_prime_field_rejected() {
        let _ = Fp::new(1, 6);
    }
}
