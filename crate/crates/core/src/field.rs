//! Exact scalars: arbitrary-precision rationals and residues modulo a small prime.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::FieldError;

/// The ground field a theory is instantiated over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    Rationals,
    Prime(u32),
}

impl Field {
    pub const F2: Field = Field::Prime(2);

    /// `Field::Prime(p)` after checking that `p` is a prime below 2^16.
    pub fn prime(p: u32) -> Result<Self, FieldError> {
        if !(2..1 << 16).contains(&p) || !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(self) -> u32 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(self) -> FieldScalar {
        self.from_int(0)
    }

    pub fn one(self) -> FieldScalar {
        self.from_int(1)
    }

    pub fn from_int(self, n: i64) -> FieldScalar {
        match self {
            Field::Rationals => FieldScalar::Rational(BigRational::from_integer(n.into())),
            Field::Prime(p) => FieldScalar::Modular {
                value: n.rem_euclid(p as i64) as u32,
                modulus: p,
            },
        }
    }

    /// Reduces a rational `num/den` into this field. Fails when `den` vanishes here.
    pub fn from_ratio(self, num: &BigInt, den: &BigInt) -> Result<FieldScalar, FieldError> {
        if den.is_zero() {
            return Err(FieldError::ZeroDenominator);
        }
        match self {
            Field::Rationals => Ok(FieldScalar::Rational(BigRational::new(
                num.clone(),
                den.clone(),
            ))),
            Field::Prime(p) => {
                let pb = BigInt::from(p);
                let n = reduce_mod(num, &pb);
                let d = reduce_mod(den, &pb);
                if d == 0 {
                    return Err(FieldError::ZeroDenominator);
                }
                let modulus = p;
                let d = FieldScalar::Modular { value: d, modulus };
                let inv = d.inverse().ok_or(FieldError::ZeroDenominator)?;
                Ok(&FieldScalar::Modular { value: n, modulus } * &inv)
            }
        }
    }

    /// Parses a scalar literal such as `-3`, `2/5` into this field.
    pub fn parse_scalar(self, text: &str) -> Result<FieldScalar, FieldError> {
        let text = text.trim();
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (text, "1"),
        };
        let num = BigInt::from_str(num).map_err(|_| FieldError::BadLiteral(text.to_string()))?;
        let den = BigInt::from_str(den).map_err(|_| FieldError::BadLiteral(text.to_string()))?;
        self.from_ratio(&num, &den)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "q"),
            Field::Prime(2) => write!(f, "f2"),
            Field::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = FieldError;

    /// Accepts `q`, `f2` and `fp:<prime>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "q" | "qq" | "rationals" => Ok(Field::Rationals),
            "f2" => Ok(Field::F2),
            other => {
                let p = other
                    .strip_prefix("fp:")
                    .and_then(|p| p.parse::<u32>().ok())
                    .ok_or_else(|| FieldError::UnknownField(s.to_string()))?;
                Field::prime(p)
            }
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn reduce_mod(n: &BigInt, p: &BigInt) -> u32 {
    let r = ((n % p) + p) % p;
    r.to_u32().expect("residue fits in u32")
}

/// An element of ℚ or of GF(p).
///
/// Rationals are kept in lowest terms with a positive denominator (the
/// `BigRational` normal form); residues live in `[0, p)`. Arithmetic between
/// scalars of different fields is a logic error and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldScalar {
    Rational(BigRational),
    Modular { value: u32, modulus: u32 },
}

impl FieldScalar {
    pub fn field(&self) -> Field {
        match self {
            FieldScalar::Rational(_) => Field::Rationals,
            FieldScalar::Modular { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldScalar::Rational(r) => r.is_zero(),
            FieldScalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldScalar::Rational(r) => r.is_one(),
            FieldScalar::Modular { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(&self) -> Option<FieldScalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            FieldScalar::Rational(r) => FieldScalar::Rational(r.recip()),
            FieldScalar::Modular { value, modulus } => FieldScalar::Modular {
                value: pow_mod(*value as u64, *modulus as u64 - 2, *modulus as u64) as u32,
                modulus: *modulus,
            },
        })
    }

    pub fn pow(&self, mut e: u32) -> FieldScalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// The integer value, if this is a rational with denominator 1 or a residue.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            FieldScalar::Rational(r) if r.is_integer() => r.to_integer().to_i64(),
            FieldScalar::Rational(_) => None,
            FieldScalar::Modular { value, .. } => Some(*value as i64),
        }
    }

    fn check_same(&self, other: &FieldScalar) {
        assert_eq!(
            self.field(),
            other.field(),
            "arithmetic between scalars of different fields"
        );
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldScalar::Rational(r) => write!(f, "{r}"),
            FieldScalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

impl<'a> Add<&'a FieldScalar> for &'a FieldScalar {
    type Output = FieldScalar;

    fn add(self, rhs: &FieldScalar) -> FieldScalar {
        self.check_same(rhs);
        match (self, rhs) {
            (FieldScalar::Rational(a), FieldScalar::Rational(b)) => FieldScalar::Rational(a + b),
            (
                FieldScalar::Modular { value: a, modulus },
                FieldScalar::Modular { value: b, .. },
            ) => FieldScalar::Modular {
                value: ((*a as u64 + *b as u64) % *modulus as u64) as u32,
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl<'a> Sub<&'a FieldScalar> for &'a FieldScalar {
    type Output = FieldScalar;

    fn sub(self, rhs: &FieldScalar) -> FieldScalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a FieldScalar> for &'a FieldScalar {
    type Output = FieldScalar;

    fn mul(self, rhs: &FieldScalar) -> FieldScalar {
        self.check_same(rhs);
        match (self, rhs) {
            (FieldScalar::Rational(a), FieldScalar::Rational(b)) => FieldScalar::Rational(a * b),
            (
                FieldScalar::Modular { value: a, modulus },
                FieldScalar::Modular { value: b, .. },
            ) => FieldScalar::Modular {
                value: ((*a as u64 * *b as u64) % *modulus as u64) as u32,
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for &FieldScalar {
    type Output = FieldScalar;

    fn neg(self) -> FieldScalar {
        match self {
            FieldScalar::Rational(a) => FieldScalar::Rational(-a),
            FieldScalar::Modular { value, modulus } => FieldScalar::Modular {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for FieldScalar {
    type Output = FieldScalar;

    fn neg(self) -> FieldScalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldScalar> for FieldScalar {
            type Output = FieldScalar;
            fn $m(self, rhs: FieldScalar) -> FieldScalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldScalar> for FieldScalar {
            type Output = FieldScalar;
            fn $m(self, rhs: &'a FieldScalar) -> FieldScalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&FieldScalar> for FieldScalar {
    fn add_assign(&mut self, rhs: &FieldScalar) {
        *self = &*self + rhs;
    }
}

/// Sign of a rational scalar; residues report `None`.
pub fn rational_sign(x: &FieldScalar) -> Option<i8> {
    match x {
        FieldScalar::Rational(r) if r.is_positive() => Some(1),
        FieldScalar::Rational(r) if r.is_negative() => Some(-1),
        FieldScalar::Rational(_) => Some(0),
        FieldScalar::Modular { .. } => None,
    }
}
