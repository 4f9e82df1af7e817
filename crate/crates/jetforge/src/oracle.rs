//! Numeric evaluation of `f(sum_i a_i t^i)` at concrete points.
//!
//! This path only reads the terms of a polynomial and multiplies scalar
//! coefficient vectors; it never touches the symbolic series machinery, so
//! it can referee the symbolic checks.

use std::collections::BTreeMap;

use jetforge_core::{Field, Poly, Scalar, Symbol};
use num_bigint::BigInt;
use rand::Rng;

/// The arithmetic the evaluator needs.
pub trait Number: Clone + PartialEq {
    fn zero(field: Field) -> Self;
    fn from_scalar(c: &Scalar) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
}

impl Number for Scalar {
    fn zero(field: Field) -> Self {
        field.zero()
    }

    fn from_scalar(c: &Scalar) -> Self {
        c.clone()
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
}

/// `re + eps * d` with `d^2 = 0`; the `eps` part carries one partial
/// derivative through an evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dual {
    pub re: Scalar,
    pub eps: Scalar,
}

impl Dual {
    pub fn new(re: Scalar, eps: Scalar) -> Dual {
        Dual { re, eps }
    }
}

impl Number for Dual {
    fn zero(field: Field) -> Self {
        Dual::new(field.zero(), field.zero())
    }

    fn from_scalar(c: &Scalar) -> Self {
        Dual::new(c.clone(), c.field().zero())
    }

    fn add(&self, rhs: &Self) -> Self {
        Dual::new(&self.re + &rhs.re, &self.eps + &rhs.eps)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Dual::new(&self.re * &rhs.re, &(&self.re * &rhs.eps) + &(&self.eps * &rhs.re))
    }
}

/// Values `a_{x,i}` for each base symbol `x` and order `i <= n`.
pub type Point<N> = BTreeMap<Symbol, Vec<N>>;

fn mul_trunc<N: Number>(a: &[N], b: &[N], field: Field) -> Vec<N> {
    let mut out = vec![N::zero(field); a.len()];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate().take(a.len() - i) {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

/// Coefficients of `t^0..t^n` in `f(sum_i a_{x,i} t^i)`.
pub fn eval_series<N: Number>(f: &Poly, point: &Point<N>, n: u32, field: Field) -> Vec<N> {
    let size = n as usize + 1;
    let mut acc = vec![N::zero(field); size];
    for (m, c) in f.terms() {
        let mut term = vec![N::zero(field); size];
        term[0] = N::from_scalar(c);
        for (v, e) in m.factors() {
            let s = &point[&v.base];
            for _ in 0..e {
                term = mul_trunc(&term, s, field);
            }
        }
        for (a, t) in acc.iter_mut().zip(term) {
            *a = a.add(&t);
        }
    }
    acc
}

/// A random scalar: `p/q` with `|p| <= 20`, `1 <= q <= 7` over `Q`, a
/// uniform residue over `F_p`.
pub fn random_scalar<R: Rng>(field: Field, rng: &mut R) -> Scalar {
    match field {
        Field::Rational => {
            let p: i64 = rng.gen_range(-20..=20);
            let q: i64 = rng.gen_range(1..=7);
            Scalar::from_ratio(field, &BigInt::from(p), &BigInt::from(q)).expect("nonzero denominator")
        }
        Field::Prime(p) => Scalar::from_i64(field, rng.gen_range(0..i64::from(p))),
    }
}

pub fn random_point<R: Rng>(vars: &[Symbol], n: u32, field: Field, rng: &mut R) -> Point<Scalar> {
    vars.iter().map(|s| (s.clone(), (0..=n).map(|_| random_scalar(field, rng)).collect())).collect()
}

/// Value of a polynomial in jet variables `x^{(i)}` at a point.
pub fn eval_jets(p: &Poly, point: &Point<Scalar>, field: Field) -> Scalar {
    p.eval_with(|v| point.get(&v.base).and_then(|s| s.get(v.order as usize)).cloned())
        .map(|c| if p.is_zero() { field.zero() } else { c })
        .expect("point covers every jet variable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use jetforge_core::JetVar;

    const Q: Field = Field::Rational;

    #[test]
    fn square_of_a_line() {
        let x = Symbol::new(0, "x");
        let f = Poly::var(JetVar::base(&x), Q).pow(2);
        let point: Point<Scalar> = [(x, vec![Scalar::from_i64(Q, 1), Scalar::from_i64(Q, 2)])].into();
        let s = eval_series(&f, &point, 1, Q);
        assert_eq!(s, [Scalar::from_i64(Q, 1), Scalar::from_i64(Q, 4)]);
    }

    #[test]
    fn dual_numbers_differentiate() {
        let x = Symbol::new(0, "x");
        let f = Poly::var(JetVar::base(&x), Q).pow(3);
        let point: Point<Dual> = [(x, vec![Dual::new(Scalar::from_i64(Q, 2), Q.one())])].into();
        let s = eval_series(&f, &point, 0, Q);
        assert_eq!(s[0], Dual::new(Scalar::from_i64(Q, 8), Scalar::from_i64(Q, 12)));
    }
}
