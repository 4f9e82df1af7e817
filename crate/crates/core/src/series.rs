//! Truncated power series `R[[t]]/(t^{n+1})` over any [`RingElement`].

use alloc::vec::Vec;

use crate::error::Error;
use crate::ring::RingElement;
use crate::scalar::Scalar;

/// `c_0 + c_1 t + ... + c_n t^n`, always exactly `n + 1` coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncSeries<R> {
    coeffs: Vec<R>,
}

impl<R: RingElement> TruncSeries<R> {
    /// Wraps `coeffs` as a series of level `coeffs.len() - 1`.
    ///
    /// # Panics
    /// If `coeffs` is empty.
    pub fn new(coeffs: Vec<R>) -> TruncSeries<R> {
        assert!(!coeffs.is_empty(), "a truncated series has at least one coefficient");
        TruncSeries { coeffs }
    }

    /// `c` as a series of the given level.
    pub fn constant(level: u32, c: R) -> TruncSeries<R> {
        let mut coeffs = Vec::with_capacity(level as usize + 1);
        let z = c.zero_like();
        coeffs.push(c);
        coeffs.resize(level as usize + 1, z);
        TruncSeries { coeffs }
    }

    pub fn level(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &R {
        &self.coeffs[i]
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// Drops every coefficient above `t^level`.
    pub fn truncate(&self, level: u32) -> TruncSeries<R> {
        assert!(level <= self.level());
        TruncSeries { coeffs: self.coeffs[..=level as usize].to_vec() }
    }

    fn check_level(&self, rhs: &Self) {
        assert_eq!(self.coeffs.len(), rhs.coeffs.len(), "series levels differ");
    }

    /// The multiplicative inverse; the constant term must be a unit.
    pub fn invert(&self) -> Result<TruncSeries<R>, Error> {
        let b0 = self.coeffs[0].unit_inverse().ok_or(Error::NonUnitLeadingCoefficient)?;
        let n = self.coeffs.len();
        let mut out: Vec<R> = Vec::with_capacity(n);
        out.push(b0.clone());
        for k in 1..n {
            let mut acc = b0.zero_like();
            for j in 1..=k {
                if !self.coeffs[j].is_zero_elem() {
                    acc = acc.add_ref(&self.coeffs[j].mul_ref(&out[k - j]));
                }
            }
            out.push(acc.mul_ref(&b0).neg_ref());
        }
        Ok(TruncSeries { coeffs: out })
    }
}

/// Inverts `s` in the truncated ring: `s * series_invert(s) == 1`.
pub fn series_invert<R: RingElement>(s: &TruncSeries<R>) -> Result<TruncSeries<R>, Error> {
    s.invert()
}

impl<R: RingElement> RingElement for TruncSeries<R> {
    fn zero_like(&self) -> Self {
        let z = self.coeffs[0].zero_like();
        TruncSeries { coeffs: alloc::vec![z; self.coeffs.len()] }
    }

    fn is_zero_elem(&self) -> bool {
        self.coeffs.iter().all(R::is_zero_elem)
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        self.check_level(rhs);
        TruncSeries { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.add_ref(b)).collect() }
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self.check_level(rhs);
        TruncSeries { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.sub_ref(b)).collect() }
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self.check_level(rhs);
        let n = self.coeffs.len();
        let mut out: Vec<R> = (0..n).map(|_| self.coeffs[0].zero_like()).collect();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_elem() {
                continue;
            }
            for (j, b) in rhs.coeffs[..n - i].iter().enumerate() {
                if !b.is_zero_elem() {
                    out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
                }
            }
        }
        TruncSeries { coeffs: out }
    }

    fn neg_ref(&self) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(R::neg_ref).collect() }
    }

    fn scale(&self, c: &Scalar) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect() }
    }

    fn unit_inverse(&self) -> Option<Self> {
        self.invert().ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use crate::scalar::Field;
    use alloc::vec;

    const Q: Field = Field::Rational;

    fn c(k: i64) -> Poly {
        Poly::integer(Q, k)
    }

    #[test]
    fn geometric_series() {
        let s = TruncSeries::new(vec![c(1), c(-1), c(0)]);
        let inv = series_invert(&s).unwrap();
        assert_eq!(inv.coeffs(), &[c(1), c(1), c(1)]);
    }

    #[test]
    fn level_zero_is_scalar_inverse() {
        let inv = series_invert(&TruncSeries::new(vec![c(2)])).unwrap();
        let half = Poly::constant(Scalar::from_ratio(Q, &1.into(), &2.into()).unwrap());
        assert_eq!(inv.coeffs(), &[half]);
    }

    #[test]
    fn non_unit_constant_term() {
        let s = TruncSeries::new(vec![c(0), c(1)]);
        assert_eq!(series_invert(&s), Err(Error::NonUnitLeadingCoefficient));
    }

    #[test]
    fn multiplication_truncates() {
        let s = TruncSeries::new(vec![c(1), c(1), c(0)]);
        let sq = s.mul_ref(&s);
        assert_eq!(sq.coeffs(), &[c(1), c(2), c(1)]);
        let cube = sq.mul_ref(&s);
        assert_eq!(cube.coeffs(), &[c(1), c(3), c(3)]);
    }
}
