//! Exact field scalars: arbitrary-precision rationals and prime-field residues.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Largest admissible prime modulus (exclusive).
pub const MAX_MODULUS: u32 = 1 << 31;

/// The coefficient field of a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    /// Builds `F_p`, rejecting composite or oversized moduli.
    pub fn prime(p: u32) -> Result<Field, Error> {
        if p >= MAX_MODULUS || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(self) -> Scalar {
        Scalar::from_i64(self, 0)
    }

    pub fn one(self) -> Scalar {
        Scalar::from_i64(self, 1)
    }

    pub fn characteristic(self) -> u32 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => f.write_str("Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = u64::from(p);
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of `Q` or of `F_p`.
///
/// Rationals are kept in lowest terms with a positive denominator (this is
/// what `BigRational` maintains). Residues are stored as `0 <= value < modulus`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u32, modulus: u32 },
}

impl Scalar {
    pub fn from_i64(field: Field, v: i64) -> Scalar {
        match field {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Residue { value: v.rem_euclid(i64::from(p)) as u32, modulus: p },
        }
    }

    /// `num / den` in the given field; `None` when `den` vanishes there.
    pub fn from_ratio(field: Field, num: &BigInt, den: &BigInt) -> Option<Scalar> {
        match field {
            Field::Rational => {
                if den.is_zero() {
                    None
                } else {
                    Some(Scalar::Rational(BigRational::new(num.clone(), den.clone())))
                }
            }
            Field::Prime(p) => {
                let n = reduce_bigint(num, p);
                let d = reduce_bigint(den, p);
                let d = Scalar::Residue { value: d, modulus: p }.inv()?;
                Some(&Scalar::Residue { value: n, modulus: p } * &d)
            }
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Residue { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    /// True for rationals below zero; residues are never negative.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_negative(),
            Scalar::Residue { .. } => false,
        }
    }

    pub fn checked_add(&self, rhs: &Scalar) -> Result<Scalar, Error> {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a + b)),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) if p == q => {
                let s = (u64::from(*a) + u64::from(*b)) % u64::from(*p);
                Ok(Scalar::Residue { value: s as u32, modulus: *p })
            }
            _ => Err(Error::FieldMismatch(self.field(), rhs.field())),
        }
    }

    pub fn checked_sub(&self, rhs: &Scalar) -> Result<Scalar, Error> {
        self.checked_add(&-rhs)
    }

    pub fn checked_mul(&self, rhs: &Scalar) -> Result<Scalar, Error> {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a * b)),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) if p == q => {
                let s = (u64::from(*a) * u64::from(*b)) % u64::from(*p);
                Ok(Scalar::Residue { value: s as u32, modulus: *p })
            }
            _ => Err(Error::FieldMismatch(self.field(), rhs.field())),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        match self {
            Scalar::Rational(r) => Some(Scalar::Rational(r.recip())),
            Scalar::Residue { value, modulus } => {
                // Fermat: a^(p-2)
                Some(Scalar::Residue { value: pow_mod(*value, modulus - 2, *modulus), modulus: *modulus })
            }
        }
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
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

    /// The embedding of an integer multiple `k * self`.
    pub fn times(&self, k: i64) -> Scalar {
        self * &Scalar::from_i64(self.field(), k)
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Residue { .. } => None,
        }
    }

    /// Absolute value for rationals; identity on residues.
    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(r.abs()),
            s => s.clone(),
        }
    }
}

fn reduce_bigint(v: &BigInt, p: u32) -> u32 {
    let m = BigInt::from(p);
    let r = v.mod_floor(&m);
    // 0 <= r < p < 2^31
    let (_, digits) = r.to_u32_digits();
    digits.first().copied().unwrap_or(0)
}

fn pow_mod(base: u32, mut e: u32, m: u32) -> u32 {
    let m64 = u64::from(m);
    let mut b = u64::from(base) % m64;
    let mut acc = 1u64 % m64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m64;
        }
        b = b * b % m64;
        e >>= 1;
    }
    acc as u32
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order used only for canonical containers; not field-theoretic.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            (Scalar::Rational(_), Scalar::Residue { .. }) => Ordering::Less,
            (Scalar::Residue { .. }, Scalar::Rational(_)) => Ordering::Greater,
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) => (p, a).cmp(&(q, b)),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Residue { value, modulus } => {
                Scalar::Residue { value: if *value == 0 { 0 } else { modulus - value }, modulus: *modulus }
            }
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

// Operators panic on mixed fields; use the `checked_*` methods to get an error.
macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match self.$checked(rhs) {
                    Ok(s) => s,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, checked_add);
scalar_binop!(Sub, sub, checked_sub);
scalar_binop!(Mul, mul, checked_mul);
