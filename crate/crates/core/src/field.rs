//! Coefficient fields: the rationals and prime fields `F_p`.
//!
//! Polynomials are generic over a [`Field`] context value. The context
//! carries runtime data (the modulus for `F_p`) and implements all element
//! arithmetic, so elements themselves stay plain data (`BigRational`, `u64`).

use std::fmt::Debug;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::FieldError;

/// Serializable description of a coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Send + Sync;

    fn spec(&self) -> FieldSpec;
    /// Zero for the rationals.
    fn characteristic(&self) -> u64;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Whether `a` is a canonical element of this field.
    fn contains(&self, a: &Self::Elem) -> bool;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// Some `r` with `r^n = a`, if one exists in the field.
    fn nth_root(&self, a: &Self::Elem, n: u32) -> Option<Self::Elem>;

    fn to_json(&self, a: &Self::Elem) -> Value;
    fn from_json(&self, v: &Value) -> Result<Self::Elem, FieldError>;
    fn format(&self, a: &Self::Elem) -> String;

    fn pow(&self, a: &Self::Elem, mut k: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rational
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn contains(&self, _a: &BigRational) -> bool {
        true
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }

    fn nth_root(&self, a: &BigRational, n: u32) -> Option<BigRational> {
        if n == 0 {
            return a.is_one().then(BigRational::one);
        }
        if a.is_zero() {
            return Some(BigRational::zero());
        }
        if a.is_negative() && n.is_multiple_of(2) {
            return None;
        }
        let root_int = |v: &BigInt| -> Option<BigInt> {
            let r = v.abs().nth_root(n);
            (num_traits::pow(r.clone(), n as usize) == v.abs()).then_some(r)
        };
        let num = root_int(a.numer())?;
        let den = root_int(a.denom())?;
        let r = BigRational::new(num, den);
        Some(if a.is_negative() { -r } else { r })
    }

    fn to_json(&self, a: &BigRational) -> Value {
        Value::String(self.format(a))
    }

    fn from_json(&self, v: &Value) -> Result<BigRational, FieldError> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(num) => num
                .as_i64()
                .map(|i| self.from_i64(i))
                .ok_or_else(|| FieldError::BadCoefficient(num.to_string())),
            other => Err(FieldError::BadCoefficient(other.to_string())),
        }
    }

    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
}

/// Parses `"n"` or `"n/d"` with arbitrary-precision integers.
pub fn parse_rational(s: &str) -> Result<BigRational, FieldError> {
    let s = s.trim();
    let bad = || FieldError::BadCoefficient(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

/// The prime field `F_p`, with `p < 2^32` so products fit in `u64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p >= 1 << 32 {
            return Err(FieldError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    /// Image of a rational number under `Z_(p) -> F_p`.
    pub fn reduce_rational(&self, q: &BigRational) -> Result<u64, FieldError> {
        let p = BigInt::from(self.p);
        let reduce = |v: &BigInt| -> u64 {
            let r = ((v % &p) + &p) % &p;
            r.to_u64().expect("residue fits in u64")
        };
        let den = reduce(q.denom());
        if den == 0 {
            return Err(FieldError::DenominatorDivisibleByP {
                value: Rationals.format(q),
                p: self.p,
            });
        }
        let inv = self.inv(&den).expect("nonzero residue is invertible");
        Ok(self.mul(&reduce(q.numer()), &inv))
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_i64(v)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn contains(&self, a: &u64) -> bool {
        *a < self.p
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| self.pow(a, self.p - 2))
    }

    /// Smallest root by exhaustive search; intended for the small primes
    /// used in searches.
    fn nth_root(&self, a: &u64, n: u32) -> Option<u64> {
        (0..self.p).find(|r| self.pow(r, n as u64) == *a)
    }

    fn to_json(&self, a: &u64) -> Value {
        Value::from(*a)
    }

    fn from_json(&self, v: &Value) -> Result<u64, FieldError> {
        match v {
            Value::Number(num) => num
                .as_i64()
                .map(|i| self.reduce_i64(i))
                .ok_or_else(|| FieldError::BadCoefficient(num.to_string())),
            Value::String(s) => self.reduce_rational(&parse_rational(s)?),
            other => Err(FieldError::BadCoefficient(other.to_string())),
        }
    }

    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
}
