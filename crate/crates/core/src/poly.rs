//! Sparse multivariate polynomials over jet-indexed variables.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::Error;
use crate::scalar::{Field, Scalar};

/// A base variable: a stable index plus its display name.
///
/// Symbols order by index first, so the index fixes the variable order of
/// every ring the symbol appears in.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    index: u32,
    name: Arc<str>,
}

impl Symbol {
    pub fn new(index: u32, name: &str) -> Symbol {
        Symbol { index, name: Arc::from(name) }
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// The variable `x^{(i)}` (or `x^{(i,j)}` in bivariate jet rings).
///
/// `x^{(0)}` without a second order is the base variable `x` itself.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JetVar {
    pub base: Symbol,
    pub order: u32,
    pub order2: Option<u32>,
}

impl JetVar {
    pub fn base(sym: &Symbol) -> JetVar {
        JetVar { base: sym.clone(), order: 0, order2: None }
    }

    pub fn jet(sym: &Symbol, order: u32) -> JetVar {
        JetVar { base: sym.clone(), order, order2: None }
    }

    pub fn bivariate(sym: &Symbol, i: u32, j: u32) -> JetVar {
        JetVar { base: sym.clone(), order: i, order2: Some(j) }
    }

    pub fn is_base(&self) -> bool {
        self.order == 0 && self.order2.is_none()
    }
}

impl fmt::Display for JetVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.order2 {
            None => write!(f, "{}_{}", self.base, self.order),
            Some(j) => write!(f, "{}_{}_{}", self.base, self.order, j),
        }
    }
}

/// A power product, stored as `(variable, exponent)` pairs sorted by variable.
///
/// Ordering is lexicographic on exponent vectors with variables in ascending
/// order, so `x_0 > x_1 > y_0` and `x_0^2 > x_0*y_0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: Vec<(JetVar, u32)>,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn var(v: JetVar) -> Monomial {
        Monomial { factors: alloc::vec![(v, 1)] }
    }

    /// Collects factors, merging repeated variables and dropping zero exponents.
    pub fn from_factors<I: IntoIterator<Item = (JetVar, u32)>>(it: I) -> Monomial {
        let mut map: BTreeMap<JetVar, u32> = BTreeMap::new();
        for (v, e) in it {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial { factors: map.into_iter().filter(|(_, e)| *e > 0).collect() }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> impl Iterator<Item = (&JetVar, u32)> {
        self.factors.iter().map(|(v, e)| (v, *e))
    }

    pub fn exponent(&self, v: &JetVar) -> u32 {
        self.factors.binary_search_by(|(w, _)| w.cmp(v)).map(|k| self.factors[k].1).unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    /// `sum exponent * weight(var)`, `None` if some variable has no weight.
    pub fn weighted_degree<F>(&self, mut weight: F) -> Option<u32>
    where
        F: FnMut(&JetVar) -> Option<u32>,
    {
        let mut acc = 0;
        for (v, e) in &self.factors {
            acc += e * weight(v)?;
        }
        Some(acc)
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        let (a, b) = (&self.factors, &rhs.factors);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { factors: out }
    }

    /// Removes `v^e`; `None` if the exponent of `v` is below `e`.
    pub fn divide_var(&self, v: &JetVar, e: u32) -> Option<Monomial> {
        let have = self.exponent(v);
        if have < e {
            return None;
        }
        let factors = self
            .factors
            .iter()
            .filter_map(|(w, x)| if w == v { (x - e > 0).then(|| (w.clone(), x - e)) } else { Some((w.clone(), *x)) })
            .collect();
        Some(Monomial { factors })
    }

    /// Applies a variable renaming. Callers supply an injective map.
    pub fn rename<F: FnMut(&JetVar) -> JetVar>(&self, mut f: F) -> Monomial {
        Monomial::from_factors(self.factors.iter().map(|(v, e)| (f(v), *e)))
    }

    fn fmt_with<F>(&self, f: &mut fmt::Formatter<'_>, name: &F) -> fmt::Result
    where
        F: Fn(&JetVar, &mut fmt::Formatter<'_>) -> fmt::Result,
    {
        for (k, (v, e)) in self.factors.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            name(v, f)?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.factors, &other.factors);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    // `a` has a positive exponent where `b` has zero
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match ea.cmp(eb) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        o => return o,
                    },
                },
            }
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        self.fmt_with(f, &|v: &JetVar, f: &mut fmt::Formatter<'_>| write!(f, "{v}"))
    }
}

/// A polynomial with exact coefficients. Zero coefficients are never stored.
///
/// The zero polynomial carries no field; every other polynomial takes the
/// field of its coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Poly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn constant(c: Scalar) -> Poly {
        Poly::monomial(Monomial::one(), c)
    }

    pub fn one(field: Field) -> Poly {
        Poly::constant(field.one())
    }

    pub fn integer(field: Field, k: i64) -> Poly {
        Poly::constant(Scalar::from_i64(field, k))
    }

    pub fn var(v: JetVar, field: Field) -> Poly {
        Poly::monomial(Monomial::var(v), field.one())
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    /// Sums the given terms; repeated monomials are combined.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Scalar)>>(it: I) -> Poly {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = &*old + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (descending) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.get(m)
    }

    pub fn field(&self) -> Option<Field> {
        self.terms.values().next().map(Scalar::field)
    }

    /// The constant coefficient if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => None,
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || self.as_constant().is_some()
    }

    pub fn variables(&self) -> BTreeSet<JetVar> {
        self.terms.keys().flat_map(|m| m.factors().map(|(v, _)| v.clone())).collect()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    /// All distinct weighted degrees of the monomials; empty for zero.
    pub fn weighted_degrees<F>(&self, mut weight: F) -> Option<BTreeSet<u32>>
    where
        F: FnMut(&JetVar) -> Option<u32>,
    {
        self.terms.keys().map(|m| m.weighted_degree(&mut weight)).collect()
    }

    pub fn checked_add(&self, rhs: &Poly) -> Result<Poly, Error> {
        check_fields(self, rhs)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &Poly) -> Result<Poly, Error> {
        self.checked_add(&-rhs)
    }

    pub fn checked_mul(&self, rhs: &Poly) -> Result<Poly, Error> {
        check_fields(self, rhs)?;
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly { terms: self.terms.iter().map(|(n, a)| (n.mul(m), a.clone())).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let Some(field) = self.field() else {
            return if e == 0 { Poly::constant(Scalar::from_i64(Field::Rational, 1)) } else { Poly::zero() };
        };
        let mut base = self.clone();
        let mut acc = Poly::one(field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to `v`.
    pub fn partial_derivative(&self, v: &JetVar) -> Poly {
        Poly::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponent(v);
            (e > 0).then(|| (m.divide_var(v, 1).expect("exponent checked"), c.times(i64::from(e))))
        }))
    }

    /// Evaluates at an exact point.
    pub fn eval_with<F>(&self, mut value: F) -> Result<Scalar, Error>
    where
        F: FnMut(&JetVar) -> Option<Scalar>,
    {
        let mut acc: Option<Scalar> = None;
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.factors() {
                let x = value(v).ok_or_else(|| Error::UnboundVariable(v.clone()))?;
                t = t.checked_mul(&x.pow(e))?;
            }
            acc = Some(match acc {
                None => t,
                Some(a) => a.checked_add(&t)?,
            });
        }
        // the zero polynomial evaluates to zero in whichever field the point uses
        Ok(acc.unwrap_or_else(|| Field::Rational.zero()))
    }

    pub fn eval(&self, point: &BTreeMap<JetVar, Scalar>) -> Result<Scalar, Error> {
        let zero = point.values().next().map(|s| s.field().zero());
        let v = self.eval_with(|x| point.get(x).cloned())?;
        Ok(if self.is_zero() { zero.unwrap_or(v) } else { v })
    }

    /// Renames variables through an injective map.
    pub fn rename<F: FnMut(&JetVar) -> JetVar>(&self, mut f: F) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.rename(&mut f), c.clone())))
    }

    /// Formats with a custom variable printer (the canonical form uses `x_i`).
    pub fn display_with<F>(&self, name: F) -> impl fmt::Display + '_
    where
        F: Fn(&JetVar, &mut fmt::Formatter<'_>) -> fmt::Result + 'static,
    {
        PolyDisplay { poly: self, name }
    }
}

fn check_fields(a: &Poly, b: &Poly) -> Result<(), Error> {
    match (a.field(), b.field()) {
        (Some(x), Some(y)) if x != y => Err(Error::FieldMismatch(x, y)),
        _ => Ok(()),
    }
}

struct PolyDisplay<'a, F> {
    poly: &'a Poly,
    name: F,
}

impl<F> fmt::Display for PolyDisplay<'_, F>
where
    F: Fn(&JetVar, &mut fmt::Formatter<'_>) -> fmt::Result,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.poly.terms().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let c = c.abs();
            if m.is_one() {
                write!(f, "{c}")?;
            } else {
                if !c.is_one() {
                    write!(f, "{c}*")?;
                }
                m.fmt_with(f, &self.name)?;
            }
        }
        Ok(())
    }
}

/// Canonical text form: descending terms, `p/q` coefficients, `x_i` variables.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = PolyDisplay { poly: self, name: |v: &JetVar, f: &mut fmt::Formatter<'_>| write!(f, "{v}") };
        fmt::Display::fmt(&d, f)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

// Operators panic on mixed fields; the checked methods report it instead.
macro_rules! poly_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                match self.$checked(rhs) {
                    Ok(p) => p,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}

poly_binop!(Add, add, checked_add);
poly_binop!(Sub, sub, checked_sub);
poly_binop!(Mul, mul, checked_mul);
