//! A minimal commutative-ring interface shared by polynomials, localized
//! polynomials and truncated series, plus evaluation of polynomials in any
//! such ring.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt::Debug;

use crate::error::Error;
use crate::poly::{JetVar, Poly};
use crate::scalar::Scalar;

/// Ring operations on values that know their own ring.
///
/// There is no global `one()`: the field and the localization live in the
/// values, so identities are derived from an existing element.
pub trait RingElement: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn scale(&self, c: &Scalar) -> Self;
    /// The inverse when `self` is a unit the representation can detect.
    fn unit_inverse(&self) -> Option<Self>;

    fn pow_ref(&self, one: &Self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = one.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }
}

impl RingElement for Poly {
    fn zero_like(&self) -> Self {
        Poly::zero()
    }

    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg_ref(&self) -> Self {
        -self
    }

    fn scale(&self, c: &Scalar) -> Self {
        Poly::scale(self, c)
    }

    fn unit_inverse(&self) -> Option<Self> {
        self.as_constant().and_then(|c| c.inv()).map(Poly::constant)
    }
}

/// Evaluates `f` in the ring of `one`, sending each variable to `image(var)`.
///
/// This is the ring homomorphism out of the free polynomial ring determined
/// by the images; powers of each image are cached across terms.
pub fn substitute<R, F>(f: &Poly, one: &R, mut image: F) -> Result<R, Error>
where
    R: RingElement,
    F: FnMut(&JetVar) -> Result<R, Error>,
{
    let mut powers: BTreeMap<JetVar, Vec<R>> = BTreeMap::new();
    let mut acc = one.zero_like();
    for (m, c) in f.terms() {
        let mut term = one.scale(c);
        for (v, e) in m.factors() {
            if !powers.contains_key(v) {
                let img = image(v)?;
                powers.insert(v.clone(), alloc::vec![img]);
            }
            let cache = powers.get_mut(v).expect("inserted above");
            while cache.len() < e as usize {
                let next = cache[cache.len() - 1].mul_ref(&cache[0]);
                cache.push(next);
            }
            term = term.mul_ref(&cache[e as usize - 1]);
        }
        acc = acc.add_ref(&term);
    }
    Ok(acc)
}
