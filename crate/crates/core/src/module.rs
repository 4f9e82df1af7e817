//! Hasse-Schmidt modules of presented modules.
//!
//! The dual of `A_n[[t]]_n` is identified with the free `A_n`-module on
//! `t^{[0]}, ..., t^{[n]}` carrying the twisted action
//! `a . t^{[i]} = sum_{j <= i} d_{i-j}(a) t^{[j]}`. A module
//! `M = A^r / (rows p_k)` then has Hasse-Schmidt module presented on the
//! basis `e_l (x) t^{[j]}` by the rows `p_k (x) t^{[i]}`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::Error;
use crate::hs::{
    check_poly_over, hs_components, induced_morphism, jet_presentation, AlgebraMorphism, AlgebraPresentation, Grading,
    GradingMode, JetPresentation,
};
use crate::poly::{JetVar, Poly, Symbol};
use crate::scalar::Field;

/// `T(p)`: entry `(j, i)` is `d_{i-j}(p)` for `j <= i`, zero below the
/// diagonal. Column `i` is the twisted action of `p` on `t^{[i]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedMatrix {
    entries: Vec<Vec<Poly>>,
}

pub fn twisted_action_matrix(p: &Poly, n: u32) -> Result<TwistedMatrix, Error> {
    let d = hs_components(p, n)?;
    Ok(TwistedMatrix::from_components(&d))
}

impl TwistedMatrix {
    /// Builds `T` from `[d_0(p), ..., d_n(p)]`.
    pub fn from_components(d: &[Poly]) -> TwistedMatrix {
        let size = d.len();
        let entries = (0..size)
            .map(|j| (0..size).map(|i| if j <= i { d[i - j].clone() } else { Poly::zero() }).collect())
            .collect();
        TwistedMatrix { entries }
    }

    pub fn identity(n: u32, field: Field) -> TwistedMatrix {
        let mut d = alloc::vec![Poly::zero(); n as usize + 1];
        d[0] = Poly::one(field);
        TwistedMatrix::from_components(&d)
    }

    pub fn level(&self) -> u32 {
        (self.entries.len() - 1) as u32
    }

    pub fn entry(&self, row: usize, col: usize) -> &Poly {
        &self.entries[row][col]
    }

    pub fn rows(&self) -> &[Vec<Poly>] {
        &self.entries
    }

    pub fn add(&self, rhs: &TwistedMatrix) -> TwistedMatrix {
        let entries =
            self.entries.iter().zip(&rhs.entries).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect()).collect();
        TwistedMatrix { entries }
    }

    pub fn mul(&self, rhs: &TwistedMatrix) -> TwistedMatrix {
        let size = self.entries.len();
        let entries = (0..size)
            .map(|r| {
                (0..size)
                    .map(|c| (0..size).fold(Poly::zero(), |acc, k| &acc + &(&self.entries[r][k] * &rhs.entries[k][c])))
                    .collect()
            })
            .collect();
        TwistedMatrix { entries }
    }

    /// Applies `f` to every entry.
    pub fn map_entries<F>(&self, mut f: F) -> Result<TwistedMatrix, Error>
    where
        F: FnMut(&Poly) -> Result<Poly, Error>,
    {
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(&mut f).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TwistedMatrix { entries })
    }
}

/// `A^rank / (rows of relations)`; row `k` is `sum_l p_{kl} e_l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModulePresentation {
    over: AlgebraPresentation,
    rank: usize,
    relations: Vec<Vec<Poly>>,
}

impl ModulePresentation {
    pub fn new(over: AlgebraPresentation, rank: usize, relations: Vec<Vec<Poly>>) -> Result<Self, Error> {
        let declared: BTreeSet<&Symbol> = over.vars().iter().collect();
        for row in &relations {
            if row.len() != rank {
                return Err(Error::ShapeMismatch("relation row length differs from module rank"));
            }
            for p in row {
                check_poly_over(p, over.field(), &declared)?;
            }
        }
        Ok(ModulePresentation { over, rank, relations })
    }

    pub fn free(over: AlgebraPresentation, rank: usize) -> Self {
        ModulePresentation { over, rank, relations: Vec::new() }
    }

    pub fn over(&self) -> &AlgebraPresentation {
        &self.over
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relations(&self) -> &[Vec<Poly>] {
        &self.relations
    }

    /// `M (x)_A A'` along `phi`: the relation matrix with `phi` applied.
    pub fn base_change(&self, phi: &AlgebraMorphism) -> Result<ModulePresentation, Error> {
        if phi.source() != &self.over {
            return Err(Error::ShapeMismatch("morphism source is not the module's ring"));
        }
        let relations = self
            .relations
            .iter()
            .map(|row| row.iter().map(|p| phi.apply(p)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        ModulePresentation::new(phi.target().clone(), self.rank, relations)
    }
}

/// Label of the basis element `e_l (x) t^{[i]}` (generators count from 1).
pub fn basis_label(l: usize, i: u32) -> String {
    format!("e{}_{}", l + 1, i)
}

/// The level-`n` Hasse-Schmidt module, presented over the jet algebra.
///
/// Basis `(l, j)` sits at column `l * (n + 1) + j`; relation `(k, i)` sits at
/// row `k * (n + 1) + i` and reads `sum_l sum_{j <= i} d_{i-j}(p_{kl}) e_l^{(j)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HSModulePresentation {
    over: JetPresentation,
    base_rank: usize,
    matrix: Vec<Vec<Poly>>,
}

impl HSModulePresentation {
    pub fn over(&self) -> &JetPresentation {
        &self.over
    }

    pub fn level(&self) -> u32 {
        self.over.level()
    }

    pub fn base_rank(&self) -> usize {
        self.base_rank
    }

    pub fn rank(&self) -> usize {
        self.base_rank * (self.level() as usize + 1)
    }

    pub fn basis_labels(&self) -> Vec<String> {
        (0..self.base_rank).flat_map(|l| (0..=self.level()).map(move |i| basis_label(l, i))).collect()
    }

    pub fn matrix(&self) -> &[Vec<Poly>] {
        &self.matrix
    }

    pub fn row(&self, k: usize, i: u32) -> &[Poly] {
        &self.matrix[k * (self.level() as usize + 1) + i as usize]
    }

    pub fn is_free(&self) -> bool {
        self.matrix.is_empty()
    }
}

pub fn hs_module_presentation(m: &ModulePresentation, n: u32) -> HSModulePresentation {
    let width = n as usize + 1;
    let mut matrix = Vec::with_capacity(m.relations.len() * width);
    for row in &m.relations {
        let blocks: Vec<TwistedMatrix> =
            row.iter().map(|p| twisted_action_matrix(p, n).expect("validated module")).collect();
        for i in 0..width {
            // relation p_k (x) t^{[i]}: column i of each block
            matrix.push(blocks.iter().flat_map(|t| (0..width).map(move |j| t.entry(j, i).clone())).collect());
        }
    }
    HSModulePresentation { over: jet_presentation(&m.over, n), base_rank: m.rank, matrix }
}

/// `a . (e_l (x) t^{[i]}) = sum_{j <= i} d_{i-j}(a) e_l (x) t^{[j]}` as a
/// coordinate vector over the Hasse-Schmidt module basis.
pub fn delta_apply(a: &Poly, l: usize, i: u32, m: &ModulePresentation, n: u32) -> Result<Vec<Poly>, Error> {
    if l >= m.rank {
        return Err(Error::IndexOutOfRange { what: "basis", index: l, bound: m.rank });
    }
    if i > n {
        return Err(Error::IndexOutOfRange { what: "order", index: i as usize, bound: n as usize + 1 });
    }
    let t = twisted_action_matrix(a, n)?;
    let width = n as usize + 1;
    let mut v = alloc::vec![Poly::zero(); m.rank * width];
    for j in 0..=i as usize {
        v[l * width + j] = t.entry(j, i as usize).clone();
    }
    Ok(v)
}

/// Kähler differentials presented on `dx_l` by the Jacobian of the relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KaehlerPresentation {
    vars: Vec<JetVar>,
    matrix: Vec<Vec<Poly>>,
}

impl KaehlerPresentation {
    pub fn vars(&self) -> &[JetVar] {
        &self.vars
    }

    pub fn rank(&self) -> usize {
        self.vars.len()
    }

    /// Entry `(k, l)` is `d(relation k)/d(var l)`.
    pub fn matrix(&self) -> &[Vec<Poly>] {
        &self.matrix
    }

    /// `Omega_{A/k}` as an `A`-module, for a base presentation.
    pub fn to_module(&self, a: &AlgebraPresentation) -> Result<ModulePresentation, Error> {
        ModulePresentation::new(a.clone(), self.rank(), self.matrix.clone())
    }
}

fn jacobian(vars: Vec<JetVar>, relations: &[Poly]) -> KaehlerPresentation {
    let matrix = relations.iter().map(|f| vars.iter().map(|v| f.partial_derivative(v)).collect()).collect();
    KaehlerPresentation { vars, matrix }
}

pub fn kaehler_presentation(a: &AlgebraPresentation) -> KaehlerPresentation {
    jacobian(a.vars().iter().map(JetVar::base).collect(), a.relations())
}

/// `Omega_{A_n/k}` from the jet presentation: rows `(k, i)`, columns `(l, j)`.
pub fn kaehler_of_jets(j: &JetPresentation) -> KaehlerPresentation {
    jacobian(j.vars().to_vec(), j.relations())
}

/// Entrywise comparison of the jet Jacobian with the Hasse-Schmidt module of
/// the base Jacobian.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CotangentReport {
    pub holds: bool,
    pub rows: usize,
    pub cols: usize,
    /// `(row, col)` positions that differ.
    pub mismatches: Vec<(usize, usize)>,
}

pub fn cotangent_theorem_check(a: &AlgebraPresentation, n: u32) -> CotangentReport {
    let width = n as usize + 1;
    let jets = jet_presentation(a, n);
    let lhs = kaehler_of_jets(&jets);
    let omega = kaehler_presentation(a).to_module(a).expect("Jacobian entries lie in A");
    let rhs = hs_module_presentation(&omega, n);
    // column of x_l^{(j)} in the block layout
    let col_of = |v: &JetVar| {
        let l = a.vars().iter().position(|s| s == &v.base).expect("jet of a declared var");
        l * width + v.order as usize
    };
    let rows = lhs.matrix.len();
    let cols = lhs.vars.len();
    let mut mismatches = Vec::new();
    if rows != rhs.matrix().len() || cols != rhs.rank() {
        return CotangentReport { holds: false, rows, cols, mismatches };
    }
    for (r, row) in lhs.matrix.iter().enumerate() {
        for (c, v) in lhs.vars.iter().enumerate() {
            if row[c] != rhs.matrix()[r][col_of(v)] {
                mismatches.push((r, c));
            }
        }
    }
    CotangentReport { holds: mismatches.is_empty(), rows, cols, mismatches }
}

/// `d(d_i f)/d x_l^{(j)} == d_{i-j}(df/dx_l)` for all `i, j <= n` and the
/// given base variables; returns the failing `(i, j, l)`.
pub fn jacobian_identity_failures(f: &Poly, vars: &[Symbol], n: u32) -> Result<Vec<(u32, u32, usize)>, Error> {
    let d = hs_components(f, n)?;
    let mut failures = Vec::new();
    for (l, x) in vars.iter().enumerate() {
        let df = hs_components(&f.partial_derivative(&JetVar::base(x)), n)?;
        for i in 0..=n {
            for j in 0..=n {
                let lhs = d[i as usize].partial_derivative(&JetVar::jet(x, j));
                let rhs = if j <= i { df[(i - j) as usize].clone() } else { Poly::zero() };
                if lhs != rhs {
                    failures.push((i, j, l));
                }
            }
        }
    }
    Ok(failures)
}

/// `Sym_A(M)`: `A[e_1..e_r]` modulo the relations of `A` (degree 0) and the
/// rows `sum_l p_{kl} e_l` (degree 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymPresentation {
    algebra: AlgebraPresentation,
    generators: Vec<Symbol>,
    base_relations: usize,
}

impl SymPresentation {
    pub fn algebra(&self) -> &AlgebraPresentation {
        &self.algebra
    }

    pub fn generators(&self) -> &[Symbol] {
        &self.generators
    }

    /// Relations `0..base_relations()` come from `A`, the rest from `M`.
    pub fn base_relations(&self) -> usize {
        self.base_relations
    }
}

fn generator_prefix(a: &AlgebraPresentation, rank: usize) -> String {
    let mut prefix = String::from("e");
    while (1..=rank).any(|l| a.symbol(&format!("{prefix}{l}")).is_some()) {
        prefix.push('e');
    }
    prefix
}

pub fn sym_presentation(m: &ModulePresentation) -> SymPresentation {
    let a = &m.over;
    let field = a.field();
    let prefix = generator_prefix(a, m.rank);
    let next = a.vars().iter().map(|s| s.index() + 1).max().unwrap_or(0);
    let generators: Vec<Symbol> =
        (0..m.rank).map(|l| Symbol::new(next + l as u32, &format!("{prefix}{}", l + 1))).collect();
    let mut vars = a.vars().to_vec();
    vars.extend(generators.iter().cloned());
    let mut grading = Grading::new();
    for s in a.vars() {
        grading.insert(s.clone(), 0);
    }
    for e in &generators {
        grading.insert(e.clone(), 1);
    }
    let mut relations = a.relations().to_vec();
    for row in &m.relations {
        let r = row
            .iter()
            .zip(&generators)
            .fold(Poly::zero(), |acc, (p, e)| &acc + &(p * &Poly::var(JetVar::base(e), field)));
        relations.push(r);
    }
    let algebra = AlgebraPresentation::graded(field, vars, relations, grading)
        .expect("degree-0 and degree-1 relations are homogeneous");
    SymPresentation { algebra, generators, base_relations: a.relations().len() }
}

/// Outcome of comparing the jets of `Sym_A(M)` with `A_n` and `UHS^n(M)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymReport {
    pub holds: bool,
    pub degree0_ok: bool,
    pub degree1_ok: bool,
    /// Degree-1 jet relations read as rows over the `e_l^{(j)}` basis.
    pub degree1_rows: Vec<Vec<Poly>>,
    /// First jet relation `(k, i)` of `Sym_A(M)` that fails to match.
    pub mismatch: Option<(usize, u32)>,
}

/// Reads a polynomial linear in the `generators^{(j)}` as a coefficient row;
/// `None` if some monomial is not linear in them.
fn linear_form(p: &Poly, generators: &[Symbol], n: u32) -> Option<Vec<Poly>> {
    let width = n as usize + 1;
    let pos: BTreeMap<&Symbol, usize> = generators.iter().enumerate().map(|(l, e)| (e, l)).collect();
    let mut parts: Vec<Vec<(crate::poly::Monomial, crate::scalar::Scalar)>> =
        alloc::vec![Vec::new(); generators.len() * width];
    for (mono, c) in p.terms() {
        let mut hit = None;
        for (v, e) in mono.factors() {
            if let Some(&l) = pos.get(&v.base) {
                if e != 1 || hit.is_some() {
                    return None;
                }
                hit = Some((l, v.clone()));
            }
        }
        let (l, v) = hit?;
        let rest = mono.divide_var(&v, 1).expect("factor present");
        parts[l * width + v.order as usize].push((rest, c.clone()));
    }
    Some(parts.into_iter().map(Poly::from_terms).collect())
}

pub fn sym_theorem_check(m: &ModulePresentation, n: u32) -> SymReport {
    let sym = sym_presentation(m);
    let jets = jet_presentation(&sym.algebra, n);
    let base = jet_presentation(&m.over, n);
    let hs = hs_module_presentation(m, n);
    let grading = sym.algebra.grading();
    let degree_is = |p: &Poly, d: u32| {
        p.terms().all(|(mono, _)| crate::hs::grade_monomial(mono, GradingMode::Induced, grading) == Ok(d))
    };
    let mut report =
        SymReport { holds: false, degree0_ok: true, degree1_ok: true, degree1_rows: Vec::new(), mismatch: None };
    for k in 0..sym.algebra.relations().len() {
        for i in 0..=n {
            let r = jets.relation(k, i);
            let ok = if k < sym.base_relations {
                let ok = degree_is(r, 0) && r == base.relation(k, i);
                report.degree0_ok &= ok;
                ok
            } else {
                let row = linear_form(r, &sym.generators, n);
                let ok = degree_is(r, 1) && row.as_deref() == Some(hs.row(k - sym.base_relations, i));
                if let Some(row) = row {
                    report.degree1_rows.push(row);
                }
                report.degree1_ok &= ok;
                ok
            };
            if !ok && report.mismatch.is_none() {
                report.mismatch = Some((k, i));
            }
        }
    }
    report.holds = report.degree0_ok && report.degree1_ok && report.degree1_rows.len() == hs.matrix().len();
    report
}

/// `f_n` applied to `UHS^n(M)` against `UHS^n(M (x)_A A')`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseChangeReport {
    pub holds: bool,
    pub mismatches: Vec<(usize, usize)>,
}

pub fn base_change_check(phi: &AlgebraMorphism, m: &ModulePresentation, n: u32) -> Result<BaseChangeReport, Error> {
    let fnm = induced_morphism(phi, n);
    let pushed = hs_module_presentation(m, n)
        .matrix
        .iter()
        .map(|row| row.iter().map(|p| fnm.apply(p)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    let changed = hs_module_presentation(&m.base_change(phi)?, n);
    let mut mismatches = Vec::new();
    for (r, row) in pushed.iter().enumerate() {
        for (c, p) in row.iter().enumerate() {
            if p != &changed.matrix[r][c] {
                mismatches.push((r, c));
            }
        }
    }
    let holds = mismatches.is_empty() && pushed.len() == changed.matrix.len();
    Ok(BaseChangeReport { holds, mismatches })
}

/// Both zig-zag composites of the free pair `V = A_n[[t]]_n`, `V*`, with
/// coevaluation `1 -> sum_i t^{[i]} (x) t^i` and evaluation
/// `t^i (x) t^{[j]} -> delta_ij`, as matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZigzagReport {
    pub holds: bool,
    /// `V -> V (x) V* (x) V -> V`
    pub on_module: Vec<Vec<Poly>>,
    /// `V* -> V* (x) V (x) V* -> V*`
    pub on_dual: Vec<Vec<Poly>>,
}

pub fn free_dual_zigzag_check(n: u32) -> ZigzagReport {
    let field = Field::Rational;
    let size = n as usize + 1;
    let delta = |a: usize, b: usize| Poly::integer(field, i64::from(a == b));
    // coeval[a][b]: coefficient of t^{[a]} (x) t^b
    let coeval: Vec<Vec<Poly>> = (0..size).map(|a| (0..size).map(|b| delta(a, b)).collect()).collect();
    // eval[a][b] = <t^a, t^{[b]}>
    let eval: Vec<Vec<Poly>> = (0..size).map(|a| (0..size).map(|b| delta(a, b)).collect()).collect();
    // t^v -> sum_{a,b} coeval[a][b] t^v (x) t^{[a]} (x) t^b -> sum eval[v][a] coeval[a][b] t^b
    let on_module: Vec<Vec<Poly>> = (0..size)
        .map(|b| {
            (0..size).map(|v| (0..size).fold(Poly::zero(), |acc, a| &acc + &(&eval[v][a] * &coeval[a][b]))).collect()
        })
        .collect();
    // t^{[w]} -> sum coeval[a][b] t^{[a]} (x) t^b (x) t^{[w]} -> sum coeval[a][b] eval[b][w] t^{[a]}
    let on_dual: Vec<Vec<Poly>> = (0..size)
        .map(|a| {
            (0..size).map(|w| (0..size).fold(Poly::zero(), |acc, b| &acc + &(&coeval[a][b] * &eval[b][w]))).collect()
        })
        .collect();
    let id: Vec<Vec<Poly>> = (0..size).map(|a| (0..size).map(|b| delta(a, b)).collect()).collect();
    ZigzagReport { holds: on_module == id && on_dual == id, on_module, on_dual }
}

/// The evaluation pairing is balanced for `p`: multiplying `t^i` by the
/// series `d(p)` and pairing with `t^{[w]}` agrees with pairing `t^i` against
/// the twisted action of `p` on `t^{[w]}`.
pub fn pairing_balanced(p: &Poly, n: u32) -> Result<bool, Error> {
    let d = hs_components(p, n)?;
    let t = TwistedMatrix::from_components(&d);
    let size = n as usize + 1;
    for i in 0..size {
        // d(p) * t^i = sum_k d_k(p) t^{i+k}
        let mut image = alloc::vec![Poly::zero(); size];
        for (k, dk) in d.iter().enumerate() {
            if i + k < size {
                image[i + k] = dk.clone();
            }
        }
        if image.iter().enumerate().any(|(w, e)| e != t.entry(i, w)) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    const Q: Field = Field::Rational;

    fn s(i: u32, n: &str) -> Symbol {
        Symbol::new(i, n)
    }

    fn jv(sym: &Symbol, i: u32) -> Poly {
        Poly::var(JetVar::jet(sym, i), Q)
    }

    fn c(k: i64) -> Poly {
        Poly::integer(Q, k)
    }

    fn plane() -> AlgebraPresentation {
        AlgebraPresentation::free(Q, vec![s(0, "x"), s(1, "y")]).unwrap()
    }

    fn cusp() -> AlgebraPresentation {
        let f = &jv(&s(1, "y"), 0).pow(2) - &jv(&s(0, "x"), 0).pow(3);
        AlgebraPresentation::new(Q, vec![s(0, "x"), s(1, "y")], vec![f]).unwrap()
    }

    fn koszul() -> ModulePresentation {
        let (x, y) = (jv(&s(0, "x"), 0), jv(&s(1, "y"), 0));
        ModulePresentation::new(plane(), 2, vec![vec![x, y]]).unwrap()
    }

    #[test]
    fn twisted_matrix_examples() {
        assert_eq!(twisted_action_matrix(&c(1), 3).unwrap(), TwistedMatrix::identity(3, Q));
        let x = s(0, "x");
        let t = twisted_action_matrix(&jv(&x, 0), 2).unwrap();
        let z = Poly::zero();
        assert_eq!(
            t.rows(),
            &[
                vec![jv(&x, 0), jv(&x, 1), jv(&x, 2)],
                vec![z.clone(), jv(&x, 0), jv(&x, 1)],
                vec![z.clone(), z.clone(), jv(&x, 0)]
            ]
        );
        let y = s(1, "y");
        let tx = twisted_action_matrix(&jv(&x, 0), 1).unwrap();
        let ty = twisted_action_matrix(&jv(&y, 0), 1).unwrap();
        let txy = twisted_action_matrix(&(&jv(&x, 0) * &jv(&y, 0)), 1).unwrap();
        assert_eq!(tx.mul(&ty), txy);
        assert_eq!(txy.entry(0, 1), &(&(&jv(&x, 0) * &jv(&y, 1)) + &(&jv(&x, 1) * &jv(&y, 0))));
    }

    #[test]
    fn free_module_stays_free() {
        let m = ModulePresentation::free(cusp(), 1);
        let h = hs_module_presentation(&m, 3);
        assert!(h.is_free());
        assert_eq!(h.rank(), 4);
        assert_eq!(h.basis_labels(), ["e1_0", "e1_1", "e1_2", "e1_3"]);
    }

    #[test]
    fn koszul_module_rows() {
        let h = hs_module_presentation(&koszul(), 1);
        let (x, y) = (s(0, "x"), s(1, "y"));
        let z = Poly::zero();
        assert_eq!(h.matrix().len(), 2);
        assert_eq!(h.row(0, 0), &[jv(&x, 0), z.clone(), jv(&y, 0), z.clone()]);
        assert_eq!(h.row(0, 1), &[jv(&x, 1), jv(&x, 0), jv(&y, 1), jv(&y, 0)]);
        assert_eq!(h.basis_labels(), ["e1_0", "e1_1", "e2_0", "e2_1"]);
    }

    #[test]
    fn level_zero_module_is_the_module() {
        let h = hs_module_presentation(&koszul(), 0);
        assert_eq!(h.matrix(), koszul().relations());
    }

    #[test]
    fn delta_apply_examples() {
        let m = ModulePresentation::free(plane(), 2);
        let unit = delta_apply(&c(1), 1, 1, &m, 2).unwrap();
        let mut want = vec![Poly::zero(); 6];
        want[4] = c(1);
        assert_eq!(unit, want);

        let x = s(0, "x");
        let m1 = ModulePresentation::free(plane(), 1);
        let v = delta_apply(&jv(&x, 0), 0, 1, &m1, 1).unwrap();
        assert_eq!(v, vec![jv(&x, 1), jv(&x, 0)]);

        let v = delta_apply(&c(3), 0, 2, &m1, 2).unwrap();
        assert_eq!(v, vec![Poly::zero(), Poly::zero(), c(3)]);

        assert!(matches!(delta_apply(&c(1), 1, 0, &m1, 1), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(delta_apply(&c(1), 0, 2, &m1, 1), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn kaehler_examples() {
        let k = kaehler_presentation(&cusp());
        assert_eq!(k.rank(), 2);
        let (x, y) = (s(0, "x"), s(1, "y"));
        assert_eq!(k.matrix(), &[vec![&c(-3) * &jv(&x, 0).pow(2), &c(2) * &jv(&y, 0)]]);
        assert!(kaehler_presentation(&plane()).matrix().is_empty());

        let kj = kaehler_of_jets(&jet_presentation(&cusp(), 1));
        let z = Poly::zero();
        assert_eq!(
            kj.matrix(),
            &[
                vec![&c(-3) * &jv(&x, 0).pow(2), z.clone(), &c(2) * &jv(&y, 0), z.clone()],
                vec![
                    &c(-6) * &(&jv(&x, 0) * &jv(&x, 1)),
                    &c(-3) * &jv(&x, 0).pow(2),
                    &c(2) * &jv(&y, 1),
                    &c(2) * &jv(&y, 0)
                ],
            ]
        );
    }

    #[test]
    fn cotangent_examples() {
        assert!(cotangent_theorem_check(&cusp(), 1).holds);
        assert!(cotangent_theorem_check(&plane(), 3).holds);
        assert!(cotangent_theorem_check(&cusp(), 0).holds);
        assert!(jacobian_identity_failures(&cusp().relations()[0], cusp().vars(), 3).unwrap().is_empty());
    }

    #[test]
    fn sym_examples() {
        let x = s(0, "x");
        let line = AlgebraPresentation::free(Q, vec![x.clone()]).unwrap();
        let sp = sym_presentation(&ModulePresentation::free(line.clone(), 2));
        let names: Vec<_> = sp.algebra().vars().iter().map(|v| v.name()).collect();
        assert_eq!(names, ["x", "e1", "e2"]);
        assert!(sp.algebra().relations().is_empty());
        assert_eq!(sp.algebra().grading().unwrap()[&sp.generators()[0]], 1);

        let sk = sym_presentation(&koszul());
        assert_eq!(sk.algebra().relations().len(), 1);
        assert_eq!(sk.algebra().relations()[0].to_string(), "x_0*e1_0 + y_0*e2_0");
        assert_eq!(sk.algebra().relation_degree(0), Ok(Some(1)));

        let zero = sym_presentation(&ModulePresentation::free(cusp(), 0));
        assert_eq!(zero.algebra().vars(), cusp().vars());
        assert_eq!(zero.algebra().relations(), cusp().relations());
    }

    #[test]
    fn sym_generator_names_avoid_collisions() {
        let a = AlgebraPresentation::free(Q, vec![s(0, "e1")]).unwrap();
        let sp = sym_presentation(&ModulePresentation::free(a, 1));
        assert_eq!(sp.generators()[0].name(), "ee1");
    }

    #[test]
    fn sym_theorem_examples() {
        assert!(sym_theorem_check(&ModulePresentation::free(cusp(), 2), 2).holds);
        let r = sym_theorem_check(&koszul(), 1);
        assert!(r.holds);
        let sk = sym_presentation(&koszul());
        let jets = jet_presentation(sk.algebra(), 1);
        assert_eq!(jets.relation(0, 0).to_string(), "x_0*e1_0 + y_0*e2_0");
        assert_eq!(jets.relation(0, 1).to_string(), "x_0*e1_1 + x_1*e1_0 + y_0*e2_1 + y_1*e2_0");
        assert!(sym_theorem_check(&koszul(), 0).holds);
    }

    #[test]
    fn base_change_examples() {
        let x = s(0, "x");
        let u = s(0, "u");
        let src = AlgebraPresentation::free(Q, vec![x.clone()]).unwrap();
        let tgt = AlgebraPresentation::free(Q, vec![u.clone()]).unwrap();
        let m = ModulePresentation::new(src.clone(), 1, vec![vec![jv(&x, 0)]]).unwrap();
        assert!(base_change_check(&AlgebraMorphism::identity(&src), &m, 2).unwrap().holds);

        let mut images = BTreeMap::new();
        images.insert(x.clone(), jv(&u, 0).pow(2));
        let phi = AlgebraMorphism::new(src.clone(), tgt, images).unwrap();
        assert!(base_change_check(&phi, &m, 1).unwrap().holds);
        let changed = hs_module_presentation(&m.base_change(&phi).unwrap(), 1);
        let u0 = jv(&u, 0);
        assert_eq!(changed.row(0, 0), &[u0.pow(2), Poly::zero()]);
        assert_eq!(changed.row(0, 1), &[&c(2) * &(&u0 * &jv(&u, 1)), u0.pow(2)]);

        let mk = ModulePresentation::new(src, 2, vec![vec![c(2), c(-1)]]).unwrap();
        assert!(base_change_check(&phi, &mk, 3).unwrap().holds);
    }

    #[test]
    fn zigzag_examples() {
        for n in 0..=6 {
            let r = free_dual_zigzag_check(n);
            assert!(r.holds, "n = {n}");
            assert_eq!(r.on_module.len(), n as usize + 1);
        }
    }

    #[test]
    fn pairing_is_balanced() {
        let a = cusp();
        assert!(pairing_balanced(&a.relations()[0], 3).unwrap());
    }
}
