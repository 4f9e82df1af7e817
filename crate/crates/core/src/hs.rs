//! The universal Hasse-Schmidt derivation on presented algebras.
//!
//! For `A = k[x_1..x_r]/(f_1..f_s)` the level-`n` jet algebra is presented
//! by the variables `x^{(i)}`, `0 <= i <= n`, and the relations `d_i(f_k)`,
//! where `d_i(f)` is the `t^i` coefficient of `f(sum_i x^{(i)} t^i)`.
//! Everything here is computed by truncated-series substitution.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use crate::error::Error;
use crate::poly::{JetVar, Monomial, Poly, Symbol};
use crate::ring::substitute;
use crate::scalar::Field;
use crate::series::TruncSeries;

/// Degrees of the base variables of a graded algebra.
pub type Grading = BTreeMap<Symbol, u32>;

/// `k[vars]/(relations)`, optionally graded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraPresentation {
    field: Field,
    vars: Vec<Symbol>,
    relations: Vec<Poly>,
    grading: Option<Grading>,
}

impl AlgebraPresentation {
    pub fn new(field: Field, vars: Vec<Symbol>, relations: Vec<Poly>) -> Result<Self, Error> {
        Self::build(field, vars, relations, None)
    }

    /// A graded presentation; every relation must be homogeneous.
    pub fn graded(field: Field, vars: Vec<Symbol>, relations: Vec<Poly>, grading: Grading) -> Result<Self, Error> {
        Self::build(field, vars, relations, Some(grading))
    }

    pub fn free(field: Field, vars: Vec<Symbol>) -> Result<Self, Error> {
        Self::build(field, vars, Vec::new(), None)
    }

    fn build(field: Field, vars: Vec<Symbol>, relations: Vec<Poly>, grading: Option<Grading>) -> Result<Self, Error> {
        let mut seen = BTreeSet::new();
        for v in &vars {
            if !seen.insert(v.name()) || vars.iter().filter(|w| w.index() == v.index()).count() > 1 {
                return Err(Error::DuplicateVariable(v.name().into()));
            }
        }
        let declared: BTreeSet<&Symbol> = vars.iter().collect();
        for r in &relations {
            check_poly_over(r, field, &declared)?;
        }
        if let Some(g) = &grading {
            if vars.iter().any(|v| !g.contains_key(v)) || g.keys().any(|v| !declared.contains(v)) {
                return Err(Error::MissingGrading);
            }
            for (index, r) in relations.iter().enumerate() {
                let degs = r.weighted_degrees(|v| g.get(&v.base).copied()).ok_or(Error::MissingGrading)?;
                if degs.len() > 1 {
                    return Err(Error::InhomogeneousRelation { index });
                }
            }
        }
        Ok(AlgebraPresentation { field, vars, relations, grading })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vars(&self) -> &[Symbol] {
        &self.vars
    }

    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    pub fn grading(&self) -> Option<&Grading> {
        self.grading.as_ref()
    }

    /// The degree of a homogeneous relation (`None` for the zero relation).
    pub fn relation_degree(&self, k: usize) -> Result<Option<u32>, Error> {
        let g = self.grading.as_ref().ok_or(Error::MissingGrading)?;
        let degs = self.relations[k].weighted_degrees(|v| g.get(&v.base).copied()).ok_or(Error::MissingGrading)?;
        Ok(degs.into_iter().next())
    }

    pub fn var_poly(&self, k: usize) -> Poly {
        Poly::var(JetVar::base(&self.vars[k]), self.field)
    }

    pub fn symbol(&self, name: &str) -> Option<&Symbol> {
        self.vars.iter().find(|s| s.name() == name)
    }
}

/// Checks that `p` only uses base variables among `declared`, over `field`.
pub(crate) fn check_poly_over(p: &Poly, field: Field, declared: &BTreeSet<&Symbol>) -> Result<(), Error> {
    if let Some(f) = p.field() {
        if f != field {
            return Err(Error::FieldMismatch(f, field));
        }
    }
    for v in p.variables() {
        if !v.is_base() {
            return Err(Error::NotABaseElement(v));
        }
        if !declared.contains(&v.base) {
            return Err(Error::UndeclaredVariable(v));
        }
    }
    Ok(())
}

fn ensure_base(f: &Poly) -> Result<(), Error> {
    match f.variables().into_iter().find(|v| !v.is_base()) {
        Some(v) => Err(Error::NotABaseElement(v)),
        None => Ok(()),
    }
}

/// `[d_0(f), ..., d_n(f)]`: the `t^i` coefficients of `f(sum_i x^{(i)} t^i)`.
pub fn hs_components(f: &Poly, n: u32) -> Result<Vec<Poly>, Error> {
    ensure_base(f)?;
    let Some(field) = f.field() else {
        return Ok(alloc::vec![Poly::zero(); n as usize + 1]);
    };
    let one = TruncSeries::constant(n, Poly::one(field));
    let series = substitute(f, &one, |v| {
        Ok(TruncSeries::new((0..=n).map(|i| Poly::var(JetVar::jet(&v.base, i), field)).collect()))
    })?;
    Ok(series.into_coeffs())
}

/// `result[i][j]` is the `s^i t^j` coefficient of `f(sum x^{(i,j)} s^i t^j)`.
pub fn hs_components_2d(f: &Poly, n: u32, m: u32) -> Result<Vec<Vec<Poly>>, Error> {
    ensure_base(f)?;
    let Some(field) = f.field() else {
        return Ok(alloc::vec![alloc::vec![Poly::zero(); m as usize + 1]; n as usize + 1]);
    };
    let one = TruncSeries::constant(n, TruncSeries::constant(m, Poly::one(field)));
    let series = substitute(f, &one, |v| {
        Ok(TruncSeries::new(
            (0..=n)
                .map(|i| {
                    TruncSeries::new((0..=m).map(|j| Poly::var(JetVar::bivariate(&v.base, i, j), field)).collect())
                })
                .collect(),
        ))
    })?;
    Ok(series.into_coeffs().into_iter().map(TruncSeries::into_coeffs).collect())
}

/// Which grading [`grade_monomial`] computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GradingMode {
    /// `deg x^{(i)} = i`
    Structural,
    /// `deg x^{(i)} = deg x` for a grading of the source algebra
    Induced,
}

pub fn grade_monomial(m: &Monomial, mode: GradingMode, grading: Option<&Grading>) -> Result<u32, Error> {
    match mode {
        GradingMode::Structural => Ok(m.weighted_degree(|v| Some(v.order)).expect("total weight")),
        GradingMode::Induced => {
            let g = grading.ok_or(Error::MissingGrading)?;
            m.weighted_degree(|v| g.get(&v.base).copied()).ok_or(Error::MissingGrading)
        }
    }
}

/// The level-`n` jet algebra of a presented algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetPresentation {
    level: u32,
    source: AlgebraPresentation,
    vars: Vec<JetVar>,
    relations: Vec<Poly>,
}

/// Presents the level-`n` jet algebra: relation `(k, i)` is `d_i(f_k)`.
pub fn jet_presentation(a: &AlgebraPresentation, n: u32) -> JetPresentation {
    let vars = a.vars.iter().flat_map(|x| (0..=n).map(move |i| JetVar::jet(x, i))).collect();
    let relations = a.relations.iter().flat_map(|f| hs_components(f, n).expect("validated presentation")).collect();
    JetPresentation { level: n, source: a.clone(), vars, relations }
}

impl JetPresentation {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn source(&self) -> &AlgebraPresentation {
        &self.source
    }

    pub fn field(&self) -> Field {
        self.source.field
    }

    pub fn vars(&self) -> &[JetVar] {
        &self.vars
    }

    /// All relations in `(relation, order)` order.
    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    /// `d_i(f_k)`.
    pub fn relation(&self, k: usize, i: u32) -> &Poly {
        &self.relations[k * (self.level as usize + 1) + i as usize]
    }

    pub fn structural_degree(&self, m: &Monomial) -> u32 {
        grade_monomial(m, GradingMode::Structural, None).expect("structural grading is total")
    }

    pub fn induced_degree(&self, m: &Monomial) -> Result<u32, Error> {
        grade_monomial(m, GradingMode::Induced, self.source.grading())
    }

    /// Re-presents this jet algebra as an ordinary algebra whose base
    /// variables are fresh symbols `x_i`, one per jet variable.
    ///
    /// Returns the algebra and, for each fresh symbol (by position), the jet
    /// variable it stands for. Symbol indices follow the jet variable order.
    pub fn to_algebra(&self) -> (AlgebraPresentation, Vec<JetVar>) {
        let syms: Vec<Symbol> = self
            .vars
            .iter()
            .enumerate()
            .map(|(p, v)| Symbol::new(p as u32, &format!("{}_{}", v.base.name(), v.order)))
            .collect();
        let position: BTreeMap<&JetVar, usize> = self.vars.iter().enumerate().map(|(p, v)| (v, p)).collect();
        let relations = self.relations.iter().map(|r| r.rename(|v| JetVar::base(&syms[position[v]]))).collect();
        let alg = AlgebraPresentation::new(self.field(), syms, relations).expect("fresh symbols are declared");
        (alg, self.vars.clone())
    }
}

/// Relations of the level-`n` jet algebra, sent into level `m > n` by the
/// co-truncation map `x^{(i)} -> x^{(i)}`, compared with the level-`m`
/// relations of order at most `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CotruncationReport {
    pub holds: bool,
    pub compared: usize,
    /// First `(relation, order)` that differs.
    pub witness: Option<(usize, u32)>,
}

/// The co-truncation map on polynomials: variable inclusion from level `n`
/// into level `m`.
pub fn cotruncate(p: &Poly, n: u32, m: u32) -> Result<Poly, Error> {
    if m <= n {
        return Err(Error::BadLevels { n, m });
    }
    if let Some(v) = p.variables().into_iter().find(|v| v.order > n || v.order2.is_some()) {
        return Err(Error::NotABaseElement(v));
    }
    Ok(p.rename(|v| JetVar::jet(&v.base, v.order)))
}

pub fn cotruncation_subset_check(a: &AlgebraPresentation, n: u32, m: u32) -> Result<CotruncationReport, Error> {
    if m <= n {
        return Err(Error::BadLevels { n, m });
    }
    let low = jet_presentation(a, n);
    let high = jet_presentation(a, m);
    let mut compared = 0;
    for k in 0..a.relations.len() {
        for i in 0..=n {
            compared += 1;
            if &cotruncate(low.relation(k, i), n, m)? != high.relation(k, i) {
                return Ok(CotruncationReport { holds: false, compared, witness: Some((k, i)) });
            }
        }
    }
    let vars_included = low.vars.iter().all(|v| high.vars.contains(v));
    Ok(CotruncationReport { holds: vars_included, compared, witness: None })
}

/// A `k`-algebra map given by the images of the source variables.
///
/// That relations map into the target ideal is the caller's contract; it is
/// not checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraMorphism {
    source: AlgebraPresentation,
    target: AlgebraPresentation,
    images: BTreeMap<Symbol, Poly>,
}

impl AlgebraMorphism {
    pub fn new(
        source: AlgebraPresentation,
        target: AlgebraPresentation,
        images: BTreeMap<Symbol, Poly>,
    ) -> Result<Self, Error> {
        if source.field != target.field {
            return Err(Error::FieldMismatch(source.field, target.field));
        }
        let declared: BTreeSet<&Symbol> = target.vars.iter().collect();
        for x in &source.vars {
            let img = images.get(x).ok_or_else(|| Error::UnboundVariable(JetVar::base(x)))?;
            check_poly_over(img, target.field, &declared)?;
        }
        if let Some(x) = images.keys().find(|x| !source.vars.contains(x)) {
            return Err(Error::UndeclaredVariable(JetVar::base(x)));
        }
        Ok(AlgebraMorphism { source, target, images })
    }

    pub fn identity(a: &AlgebraPresentation) -> Self {
        let images = a.vars.iter().map(|x| (x.clone(), Poly::var(JetVar::base(x), a.field))).collect();
        AlgebraMorphism { source: a.clone(), target: a.clone(), images }
    }

    pub fn source(&self) -> &AlgebraPresentation {
        &self.source
    }

    pub fn target(&self) -> &AlgebraPresentation {
        &self.target
    }

    pub fn images(&self) -> &BTreeMap<Symbol, Poly> {
        &self.images
    }

    /// `phi(g)` for `g` in the source variables.
    pub fn apply(&self, g: &Poly) -> Result<Poly, Error> {
        let declared: BTreeSet<&Symbol> = self.source.vars.iter().collect();
        check_poly_over(g, self.source.field, &declared)?;
        substitute(g, &Poly::one(self.source.field), |v| Ok(self.images[&v.base].clone()))
    }
}

/// The map `f_n` between jet algebras induced by an algebra map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetMorphism {
    level: u32,
    source: JetPresentation,
    target: JetPresentation,
    images: BTreeMap<JetVar, Poly>,
}

impl JetMorphism {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn source(&self) -> &JetPresentation {
        &self.source
    }

    pub fn target(&self) -> &JetPresentation {
        &self.target
    }

    pub fn images(&self) -> &BTreeMap<JetVar, Poly> {
        &self.images
    }

    pub fn image(&self, v: &JetVar) -> Option<&Poly> {
        self.images.get(v)
    }

    /// Applies `f_n` to a polynomial in the source jet variables.
    pub fn apply(&self, p: &Poly) -> Result<Poly, Error> {
        substitute(p, &Poly::one(self.source.field()), |v| {
            self.images.get(v).cloned().ok_or_else(|| Error::UndeclaredVariable(v.clone()))
        })
    }
}

/// `x^{(i)} -> d_i(phi(x))`.
pub fn induced_morphism(phi: &AlgebraMorphism, n: u32) -> JetMorphism {
    let mut images = BTreeMap::new();
    for x in &phi.source.vars {
        let comps = hs_components(&phi.images[x], n).expect("images are base elements");
        for (i, c) in comps.into_iter().enumerate() {
            images.insert(JetVar::jet(x, i as u32), c);
        }
    }
    JetMorphism { level: n, source: jet_presentation(&phi.source, n), target: jet_presentation(&phi.target, n), images }
}

/// Whether `f_n(d_i(g)) == d_i(phi(g))` for every `i <= n`.
pub fn functoriality_check(phi: &AlgebraMorphism, g: &Poly, n: u32) -> Result<bool, Error> {
    let fnm = induced_morphism(phi, n);
    let lhs = hs_components(g, n)?.iter().map(|d| fnm.apply(d)).collect::<Result<Vec<_>, _>>()?;
    let rhs = hs_components(&phi.apply(g)?, n)?;
    Ok(lhs == rhs)
}

/// The bivariate jet algebra with variables `x^{(i,j)}`, `i <= n`, `j <= m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiJetPresentation {
    levels: (u32, u32),
    vars: Vec<JetVar>,
    relations: Vec<Poly>,
}

impl BiJetPresentation {
    pub fn levels(&self) -> (u32, u32) {
        self.levels
    }

    pub fn vars(&self) -> &[JetVar] {
        &self.vars
    }

    /// Relations in `(relation, i, j)` order.
    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    pub fn relation(&self, k: usize, i: u32, j: u32) -> &Poly {
        let (n, m) = (self.levels.0 as usize + 1, self.levels.1 as usize + 1);
        &self.relations[(k * n + i as usize) * m + j as usize]
    }
}

pub fn bijet_presentation(a: &AlgebraPresentation, n: u32, m: u32) -> BiJetPresentation {
    let vars = a
        .vars
        .iter()
        .flat_map(|x| (0..=n).flat_map(move |i| (0..=m).map(move |j| JetVar::bivariate(x, i, j))))
        .collect();
    let relations = a
        .relations
        .iter()
        .flat_map(|f| hs_components_2d(f, n, m).expect("validated presentation").into_iter().flatten())
        .collect();
    BiJetPresentation { levels: (n, m), vars, relations }
}

/// The three presentations of the `(n, m)` bivariate jet algebra, each in
/// `(relation, i, j)` order after renaming into `x^{(i,j)}` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigradeReport {
    pub holds: bool,
    /// Level-`n` jets of the level-`m` jet algebra: `(x^{(j)})^{(i)}`.
    pub outer_n: Vec<Poly>,
    /// Level-`m` jets of the level-`n` jet algebra: `(x^{(i)})^{(j)}`.
    pub outer_m: Vec<Poly>,
    pub bivariate: Vec<Poly>,
    /// First `(relation, i, j)` where the three disagree.
    pub mismatch: Option<(usize, u32, u32)>,
}

/// Relations of jets-of-jets, keyed by `(k, outer order, inner order)` and
/// renamed through `(x^{(inner)})^{(outer)} -> rename(x, outer, inner)`.
fn iterated_jets<F>(a: &AlgebraPresentation, inner: u32, outer: u32, rename: F) -> BTreeMap<(usize, u32, u32), Poly>
where
    F: Fn(&Symbol, u32, u32) -> JetVar,
{
    let (rebased, origin) = jet_presentation(a, inner).to_algebra();
    let outer_jets = jet_presentation(&rebased, outer);
    let mut out = BTreeMap::new();
    for k in 0..a.relations.len() {
        for q in 0..=inner {
            let kk = k * (inner as usize + 1) + q as usize;
            for p in 0..=outer {
                let r = outer_jets.relation(kk, p).rename(|v| {
                    let orig = &origin[v.base.index() as usize];
                    rename(&orig.base, v.order, orig.order)
                });
                out.insert((k, p, q), r);
            }
        }
    }
    out
}

/// Compares jets-of-jets in both orders against the bivariate jets.
pub fn bigrade_commute_check(a: &AlgebraPresentation, n: u32, m: u32) -> BigradeReport {
    // n outer, m inner: (x^{(j)})^{(i)} -> x^{(i,j)}
    let outer_n = iterated_jets(a, m, n, JetVar::bivariate);
    // m outer, n inner: (x^{(i)})^{(j)} -> x^{(i,j)}; keyed (k, j, i)
    let outer_m = iterated_jets(a, n, m, |x, j, i| JetVar::bivariate(x, i, j));
    let bi = bijet_presentation(a, n, m);
    let mut report =
        BigradeReport { holds: true, outer_n: Vec::new(), outer_m: Vec::new(), bivariate: Vec::new(), mismatch: None };
    for k in 0..a.relations.len() {
        for i in 0..=n {
            for j in 0..=m {
                let p = &outer_n[&(k, i, j)];
                let q = &outer_m[&(k, j, i)];
                let r = bi.relation(k, i, j);
                if (p != r || q != r) && report.mismatch.is_none() {
                    report.mismatch = Some((k, i, j));
                }
                report.outer_n.push(p.clone());
                report.outer_m.push(q.clone());
                report.bivariate.push(r.clone());
            }
        }
    }
    let set = |v: &[Poly]| v.iter().cloned().collect::<BTreeSet<Poly>>();
    let sets_equal = set(&report.outer_n) == set(&report.bivariate) && set(&report.outer_m) == set(&report.bivariate);
    report.holds = report.mismatch.is_none() && sets_equal;
    report
}
