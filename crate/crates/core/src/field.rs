//! Exact coefficient fields: prime fields `F_p` and the rationals.
//!
//! Hot loops (row reduction, polynomial products) are generic over [`Field`],
//! so each field gets its own monomorphized code. The rationals use a
//! two-word fast path that falls back to arbitrary precision on overflow.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Public coefficient type: an exact rational. Over `F_p` it holds the
/// canonical representative in `0..p`.
pub type Coeff = BigRational;

/// Which field the computation runs over. `p = 0` means the rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldTag {
    Rational,
    Prime(u64),
}

/// Largest supported characteristic; products of two residues fit in a `u64`.
pub const MAX_PRIME: u64 = (1 << 32) - 1;

impl FieldTag {
    /// `0` selects the rationals; anything else must be a prime below 2^32.
    pub fn from_characteristic(p: u64) -> Result<Self> {
        if p == 0 {
            Ok(FieldTag::Rational)
        } else if p > MAX_PRIME {
            Err(Error::InvalidCharacteristic(p))
        } else if is_prime(p) {
            Ok(FieldTag::Prime(p))
        } else {
            Err(Error::InvalidCharacteristic(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldTag::Rational => 0,
            FieldTag::Prime(p) => *p,
        }
    }

    /// Brings an exact rational into this field's canonical form.
    pub fn normalize(&self, c: &Coeff) -> Result<Coeff> {
        match self {
            FieldTag::Rational => Ok(c.clone()),
            FieldTag::Prime(p) => {
                let f = PrimeField::new(*p);
                let e = f.from_coeff(c)?;
                Ok(Coeff::from_integer(BigInt::from(e)))
            }
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.reduce_exact(a + b)
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.reduce_exact(a * b)
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        self.reduce_exact(-a)
    }

    // Inputs are already canonical, so the result has denominator 1 over F_p.
    fn reduce_exact(&self, c: Coeff) -> Coeff {
        match self {
            FieldTag::Rational => c,
            FieldTag::Prime(p) => {
                let m = BigInt::from(*p);
                Coeff::from_integer(c.to_integer().mod_floor(&m))
            }
        }
    }

    /// Signed representative used for printing: `(-p/2, p/2]` over `F_p`.
    pub fn display_coeff(&self, c: &Coeff) -> Coeff {
        match self {
            FieldTag::Rational => c.clone(),
            FieldTag::Prime(p) => {
                let v = c.to_integer();
                let m = BigInt::from(*p);
                if v.clone() * 2 > m {
                    Coeff::from_integer(v - m)
                } else {
                    c.clone()
                }
            }
        }
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rational => write!(f, "Q"),
            FieldTag::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut k = 3u64;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 2;
    }
    true
}

/// Arithmetic over a concrete field. Elements carry no context; the field
/// value does (the modulus for `F_p`).
pub trait Field: Clone + Send + Sync + fmt::Debug + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn tag(&self) -> FieldTag;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn to_coeff(&self, a: &Self::Elem) -> Coeff;
    fn from_coeff(&self, c: &Coeff) -> Result<Self::Elem>;

    /// `acc -= a * b`
    fn sub_mul_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        let t = self.mul(a, b);
        *acc = self.sub(acc, &t);
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
}

/// `F_p` with `p < 2^32`, residues stored as `u64` in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        debug_assert!((2..=MAX_PRIME).contains(&p));
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn tag(&self) -> FieldTag {
        FieldTag::Prime(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }
    fn to_coeff(&self, a: &u64) -> Coeff {
        Coeff::from_integer(BigInt::from(*a))
    }
    fn from_coeff(&self, c: &Coeff) -> Result<u64> {
        let m = BigInt::from(self.p);
        let num = c.numer().mod_floor(&m).to_u64().unwrap_or(0);
        let den = c.denom().mod_floor(&m).to_u64().unwrap_or(0);
        let inv = self
            .inv(&den)
            .ok_or_else(|| Error::CoefficientNotInField(c.to_string(), self.p))?;
        Ok(num * inv % self.p)
    }
}

/// Exact rational number: machine-word fast path, big-integer fallback.
///
/// Always normalized: `Small` whenever numerator and denominator fit in
/// `i64`, denominator positive, fraction in lowest terms. Equality is
/// therefore structural.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rational {
    Small(i64, i64),
    Big(BigRational),
}

impl Rational {
    pub const ZERO: Rational = Rational::Small(0, 1);

    pub fn from_int(v: i64) -> Self {
        Rational::Small(v, 1)
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(b) => b.clone(),
        }
    }

    pub fn from_big(b: BigRational) -> Self {
        // BigRational arithmetic keeps lowest terms with positive denominator.
        match (b.numer().to_i64(), b.denom().to_i64()) {
            (Some(n), Some(d)) => Rational::Small(n, d),
            _ => Rational::Big(b),
        }
    }

    fn from_i128(n: i128, d: i128) -> Self {
        debug_assert!(d != 0);
        let g = n.gcd(&d);
        let (mut n, mut d) = (n / g, d / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rational::Small(n, d),
            _ => Rational::Big(BigRational::new(BigInt::from(n), BigInt::from(d))),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }

    fn add(&self, o: &Rational) -> Rational {
        if let (Rational::Small(a, b), Rational::Small(c, d)) = (self, o) {
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if b == d {
                return Rational::from_i128(a + c, b);
            }
            if let Some(n) = (a * d).checked_add(c * b) {
                return Rational::from_i128(n, b * d);
            }
        }
        Rational::from_big(self.to_big() + o.to_big())
    }

    fn neg(&self) -> Rational {
        match self {
            Rational::Small(n, d) => match n.checked_neg() {
                Some(m) => Rational::Small(m, *d),
                None => Rational::from_big(-self.to_big()),
            },
            Rational::Big(b) => Rational::from_big(-b),
        }
    }

    fn mul(&self, o: &Rational) -> Rational {
        if let (Rational::Small(a, b), Rational::Small(c, d)) = (self, o) {
            if *a == 0 || *c == 0 {
                return Rational::ZERO;
            }
            return Rational::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128);
        }
        Rational::from_big(self.to_big() * o.to_big())
    }

    fn inv(&self) -> Option<Rational> {
        match self {
            Rational::Small(0, _) => None,
            Rational::Small(n, d) => Some(Rational::from_i128(*d as i128, *n as i128)),
            Rational::Big(b) => Some(Rational::from_big(b.recip())),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_big())
    }
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RationalField;

impl Field for RationalField {
    type Elem = Rational;

    fn tag(&self) -> FieldTag {
        FieldTag::Rational
    }
    fn zero(&self) -> Rational {
        Rational::ZERO
    }
    fn one(&self) -> Rational {
        Rational::Small(1, 1)
    }
    fn from_i64(&self, v: i64) -> Rational {
        Rational::from_int(v)
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a.add(b)
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a.add(&b.neg())
    }
    fn neg(&self, a: &Rational) -> Rational {
        a.neg()
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a.mul(b)
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        a.inv()
    }
    fn to_coeff(&self, a: &Rational) -> Coeff {
        a.to_big()
    }
    fn from_coeff(&self, c: &Coeff) -> Result<Rational> {
        Ok(Rational::from_big(c.clone()))
    }
}

/// Runs a field-generic computation for a runtime [`FieldTag`].
pub trait FieldVisitor {
    type Output;
    fn visit<F: Field>(self, field: F) -> Self::Output;
}

pub fn with_field<V: FieldVisitor>(tag: FieldTag, visitor: V) -> V::Output {
    match tag {
        FieldTag::Rational => visitor.visit(RationalField),
        FieldTag::Prime(p) => visitor.visit(PrimeField::new(p)),
    }
}

/// Parses `INT` or `INT/INT` into an exact rational.
pub fn parse_coeff(s: &str) -> Option<Coeff> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn characteristic_validation() {
        assert_eq!(
            FieldTag::from_characteristic(0).unwrap(),
            FieldTag::Rational
        );
        assert_eq!(
            FieldTag::from_characteristic(7).unwrap(),
            FieldTag::Prime(7)
        );
        assert!(FieldTag::from_characteristic(1).is_err());
        assert!(FieldTag::from_characteristic(9).is_err());
        assert!(FieldTag::from_characteristic(1 << 33).is_err());
    }

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(2147483647);
        for a in [1u64, 2, 12345, 2147483646] {
            let ai = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &ai), 1);
        }
        assert_eq!(f.inv(&0), None);
    }

    #[test]
    fn coeff_reduction_mod_p() {
        let f = PrimeField::new(5);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(f.from_coeff(&half).unwrap(), 3);
        let fifth = BigRational::new(1.into(), 5.into());
        assert!(f.from_coeff(&fifth).is_err());
        let neg = BigRational::from_integer((-1).into());
        assert_eq!(f.from_coeff(&neg).unwrap(), 4);
    }

    #[test]
    fn rational_overflow_falls_back_to_big() {
        let q = RationalField;
        let big = q.from_i64(i64::MAX);
        let sq = q.mul(&big, &big);
        assert!(matches!(sq, Rational::Big(_)));
        let back = q.div(&sq, &big).unwrap();
        assert_eq!(back, big);
        let x = q.sub(&sq, &sq);
        assert!(q.is_zero(&x));
        assert_eq!(x, Rational::ZERO);
    }

    #[test]
    fn rational_small_path_normalizes() {
        let q = RationalField;
        let a = Rational::from_i128(2, 4);
        assert_eq!(a, Rational::Small(1, 2));
        let b = q.add(&a, &Rational::Small(-1, 2));
        assert_eq!(b, Rational::ZERO);
        let c = Rational::from_i128(3, -6);
        assert_eq!(c, Rational::Small(-1, 2));
    }

    #[test]
    fn display_coeff_symmetric() {
        let t = FieldTag::Prime(7);
        let six = Coeff::from_integer(6.into());
        assert_eq!(t.display_coeff(&six), Coeff::from_integer((-1).into()));
    }
}
