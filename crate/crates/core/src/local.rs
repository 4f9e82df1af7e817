//! Polynomials localized at a single distinguished variable.

use core::fmt;

use crate::error::Error;
use crate::poly::{JetVar, Monomial, Poly};
use crate::ring::RingElement;
use crate::scalar::Scalar;

/// `numerator / unit^denom_exp`, kept so that `unit` does not divide the
/// numerator whenever `denom_exp > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LocalPoly {
    numerator: Poly,
    unit: JetVar,
    denom_exp: u32,
}

impl LocalPoly {
    pub fn new(numerator: Poly, unit: JetVar, denom_exp: u32) -> LocalPoly {
        LocalPoly { numerator, unit, denom_exp }.normalized()
    }

    pub fn from_poly(numerator: Poly, unit: JetVar) -> LocalPoly {
        LocalPoly::new(numerator, unit, 0)
    }

    pub fn numerator(&self) -> &Poly {
        &self.numerator
    }

    pub fn unit(&self) -> &JetVar {
        &self.unit
    }

    pub fn denom_exp(&self) -> u32 {
        self.denom_exp
    }

    /// The polynomial itself when no denominator remains.
    pub fn as_poly(&self) -> Option<&Poly> {
        (self.denom_exp == 0).then_some(&self.numerator)
    }

    /// Cancels common powers of the unit. Idempotent.
    pub fn normalized(mut self) -> LocalPoly {
        if self.numerator.is_zero() {
            self.denom_exp = 0;
            return self;
        }
        let common = self.numerator.terms().map(|(m, _)| m.exponent(&self.unit)).min().unwrap_or(0).min(self.denom_exp);
        if common > 0 {
            self.numerator = Poly::from_terms(
                self.numerator
                    .terms()
                    .map(|(m, c)| (m.divide_var(&self.unit, common).expect("min exponent"), c.clone())),
            );
            self.denom_exp -= common;
        }
        self
    }

    fn unit_power(&self, e: u32) -> Monomial {
        Monomial::from_factors([(self.unit.clone(), e)])
    }

    fn check_unit(&self, rhs: &LocalPoly) -> Result<(), Error> {
        if self.unit != rhs.unit {
            return Err(Error::UnitMismatch(self.unit.clone(), rhs.unit.clone()));
        }
        Ok(())
    }

    pub fn checked_add(&self, rhs: &LocalPoly) -> Result<LocalPoly, Error> {
        self.check_unit(rhs)?;
        let k = self.denom_exp.max(rhs.denom_exp);
        let a = self.numerator.mul_monomial(&self.unit_power(k - self.denom_exp));
        let b = rhs.numerator.mul_monomial(&self.unit_power(k - rhs.denom_exp));
        Ok(LocalPoly::new(a.checked_add(&b)?, self.unit.clone(), k))
    }

    pub fn checked_mul(&self, rhs: &LocalPoly) -> Result<LocalPoly, Error> {
        self.check_unit(rhs)?;
        Ok(LocalPoly::new(
            self.numerator.checked_mul(&rhs.numerator)?,
            self.unit.clone(),
            self.denom_exp + rhs.denom_exp,
        ))
    }

    /// Exact value at a point; the unit must not be sent to zero.
    pub fn eval_with<F>(&self, mut value: F) -> Result<Scalar, Error>
    where
        F: FnMut(&JetVar) -> Option<Scalar>,
    {
        let u = value(&self.unit).ok_or_else(|| Error::UnboundVariable(self.unit.clone()))?;
        let u_inv = u.inv().ok_or(Error::DivisionByZero)?;
        let num = self.numerator.eval_with(&mut value)?;
        if self.numerator.is_zero() {
            return Ok(u.field().zero());
        }
        num.checked_mul(&u_inv.pow(self.denom_exp))
    }
}

impl RingElement for LocalPoly {
    fn zero_like(&self) -> Self {
        LocalPoly { numerator: Poly::zero(), unit: self.unit.clone(), denom_exp: 0 }
    }

    fn is_zero_elem(&self) -> bool {
        self.numerator.is_zero()
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }

    fn neg_ref(&self) -> Self {
        LocalPoly { numerator: -&self.numerator, unit: self.unit.clone(), denom_exp: self.denom_exp }
    }

    fn scale(&self, c: &Scalar) -> Self {
        LocalPoly::new(self.numerator.scale(c), self.unit.clone(), self.denom_exp)
    }

    /// Units are exactly `c * unit^k` with `c` a nonzero scalar.
    fn unit_inverse(&self) -> Option<Self> {
        if self.numerator.len() != 1 {
            return None;
        }
        let (m, c) = self.numerator.terms().next()?;
        let a = m.exponent(&self.unit);
        if m.divide_var(&self.unit, a)? != Monomial::one() {
            return None;
        }
        let inv = c.inv()?;
        Some(LocalPoly::new(Poly::monomial(self.unit_power(self.denom_exp), inv), self.unit.clone(), a))
    }
}

/// `num` when the denominator is trivial, otherwise `num/u^k`. The numerator
/// is parenthesized when it has several terms or a fractional coefficient.
impl fmt::Display for LocalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom_exp == 0 {
            return write!(f, "{}", self.numerator);
        }
        let fractional = self.numerator.terms().any(|(_, c)| c.as_rational().is_some_and(|r| !r.is_integer()));
        if self.numerator.len() > 1 || fractional {
            write!(f, "({})/{}", self.numerator, self.unit)?;
        } else {
            write!(f, "{}/{}", self.numerator, self.unit)?;
        }
        if self.denom_exp > 1 {
            write!(f, "^{}", self.denom_exp)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Symbol;
    use crate::scalar::Field;
    use alloc::string::ToString;

    const Q: Field = Field::Rational;

    fn t(i: u32) -> JetVar {
        JetVar::jet(&Symbol::new(0, "t0"), i)
    }

    fn tp(i: u32) -> Poly {
        Poly::var(t(i), Q)
    }

    #[test]
    fn normalization_cancels_unit_powers() {
        let a = LocalPoly::new(&tp(0) * &tp(1), t(0), 3);
        assert_eq!(a.numerator(), &tp(1));
        assert_eq!(a.denom_exp(), 2);
        assert_eq!(a.clone().normalized(), a);
        assert_eq!(a.to_string(), "t0_1/t0_0^2");
    }

    #[test]
    fn equality_after_normalization() {
        let a = LocalPoly::new(tp(1), t(0), 1);
        let b = LocalPoly::new(&tp(1) * &tp(0), t(0), 2);
        assert_eq!(a, b);
    }

    #[test]
    fn unit_inverse_of_monomial() {
        let u = LocalPoly::from_poly(tp(0).scale(&Scalar::from_i64(Q, 2)), t(0));
        let inv = u.unit_inverse().unwrap();
        assert_eq!(inv.to_string(), "(1/2)/t0_0");
        let prod = u.mul_ref(&inv);
        assert_eq!(prod, LocalPoly::from_poly(Poly::one(Q), t(0)));
        assert!(LocalPoly::from_poly(&tp(0) + &tp(1), t(0)).unit_inverse().is_none());
        assert!(LocalPoly::from_poly(tp(1), t(0)).unit_inverse().is_none());
    }

    #[test]
    fn evaluation_rejects_zero_unit() {
        let a = LocalPoly::new(tp(1), t(0), 1);
        let at = |zero: bool| move |v: &JetVar| Some(Scalar::from_i64(Q, if v.order == 0 && zero { 0 } else { 4 }));
        assert_eq!(a.eval_with(at(false)).unwrap(), Q.one());
        assert_eq!(a.eval_with(at(true)), Err(Error::DivisionByZero));
    }

    #[test]
    fn mismatched_units_are_rejected() {
        let a = LocalPoly::from_poly(tp(1), t(0));
        let b = LocalPoly::from_poly(tp(1), t(1));
        assert!(matches!(a.checked_add(&b), Err(Error::UnitMismatch(..))));
    }
}
