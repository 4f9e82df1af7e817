//! Seeded runner for the thirteen identity suites.
//!
//! Every trial draws its instance from a ChaCha stream keyed by
//! `(seed, suite, trial)`; the random-point oracles draw from a second
//! stream with the same key and a different tag, so adding oracle points
//! never changes the instances.

use std::fmt;
use std::time::Instant;

use jetforge_core::hs::{
    bigrade_commute_check, cotruncation_subset_check, functoriality_check, hs_components, jet_presentation,
    AlgebraPresentation,
};
use jetforge_core::module::{
    base_change_check, cotangent_theorem_check, free_dual_zigzag_check, jacobian_identity_failures, pairing_balanced,
    sym_theorem_check, twisted_action_matrix, TwistedMatrix,
};
use jetforge_core::p1::{chart_symbol, cocycle_check, global_sections, p1_transition, ChartMode};
use jetforge_core::{Field, JetVar, Poly, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::dsl::Document;
use crate::oracle::{eval_jets, eval_series, random_point, Dual, Point};
use crate::random::{random_graded_algebra, random_instance, random_module_decl, InstanceKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Leibniz,
    StructuralGrading,
    InducedGrading,
    JacobianIdentity,
    BigradeCommute,
    Cotruncation,
    Functoriality,
    TwistedRingHom,
    SymTheorem,
    CotangentTheorem,
    BaseChange,
    Zigzag,
    P1Cocycle,
}

impl Suite {
    pub const ALL: [Suite; 13] = [
        Suite::Leibniz,
        Suite::StructuralGrading,
        Suite::InducedGrading,
        Suite::JacobianIdentity,
        Suite::BigradeCommute,
        Suite::Cotruncation,
        Suite::Functoriality,
        Suite::TwistedRingHom,
        Suite::SymTheorem,
        Suite::CotangentTheorem,
        Suite::BaseChange,
        Suite::Zigzag,
        Suite::P1Cocycle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Leibniz => "leibniz",
            Suite::StructuralGrading => "structural_grading",
            Suite::InducedGrading => "induced_grading",
            Suite::JacobianIdentity => "jacobian_identity",
            Suite::BigradeCommute => "bigrade_commute",
            Suite::Cotruncation => "cotruncation",
            Suite::Functoriality => "functoriality",
            Suite::TwistedRingHom => "twisted_ring_hom",
            Suite::SymTheorem => "sym_theorem",
            Suite::CotangentTheorem => "cotangent_theorem",
            Suite::BaseChange => "base_change",
            Suite::Zigzag => "zigzag",
            Suite::P1Cocycle => "p1_cocycle",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }

    /// Whether trials are refereed by random-point evaluation.
    pub fn has_oracle(self) -> bool {
        matches!(self, Suite::Leibniz | Suite::JacobianIdentity)
    }

    fn tag(self) -> u64 {
        Suite::ALL.iter().position(|s| *s == self).expect("listed") as u64
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CheckError {
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("configuration out of bounds: {0}")]
    Bounds(String),
    #[error("cannot replay {suite}: {reason}")]
    Replay { suite: Suite, reason: String },
}

/// `all`, or a comma-separated list of suite names.
pub fn parse_suites(spec: &str) -> Result<Vec<Suite>, CheckError> {
    if spec == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    let mut out = Vec::new();
    for name in spec.split(',').map(str::trim) {
        let s = Suite::from_name(name).ok_or_else(|| CheckError::UnknownSuite(name.into()))?;
        if !out.contains(&s) {
            out.push(s);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckConfig {
    pub seed: u64,
    pub trials: u32,
    pub max_vars: usize,
    pub max_relations: usize,
    pub max_degree: u32,
    /// Jet level bound for single-level suites.
    pub max_level: u32,
    /// Bound on both levels of the bigraded suite.
    pub max_bilevel: u32,
    pub max_rank: usize,
    /// Coefficients are drawn from `-coeff_bound..=coeff_bound`.
    pub coeff_bound: i64,
    pub oracle_points: usize,
    pub suites: Vec<Suite>,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            seed: 42,
            trials: 100,
            max_vars: 3,
            max_relations: 2,
            max_degree: 3,
            max_level: 4,
            max_bilevel: 2,
            max_rank: 2,
            coeff_bound: 9,
            oracle_points: 20,
            suites: Suite::ALL.to_vec(),
        }
    }
}

impl CheckConfig {
    pub fn validate(&self) -> Result<(), CheckError> {
        let bad = |what: &str| Err(CheckError::Bounds(what.into()));
        if self.trials == 0 {
            return bad("trials must be positive");
        }
        if !(1..=3).contains(&self.max_vars) {
            return bad("max_vars must be in 1..=3");
        }
        if self.max_relations > 2 {
            return bad("max_relations must be at most 2");
        }
        if self.max_degree > 3 {
            return bad("max_degree must be at most 3");
        }
        if !(1..=4).contains(&self.max_level) {
            return bad("max_level must be in 1..=4");
        }
        if self.max_bilevel > 2 {
            return bad("max_bilevel must be at most 2");
        }
        if self.max_rank > 3 {
            return bad("max_rank must be at most 3");
        }
        if !(1..=9).contains(&self.coeff_bound) {
            return bad("coeff_bound must be in 1..=9");
        }
        if self.suites.is_empty() {
            return bad("no suites selected");
        }
        Ok(())
    }
}

/// Level parameters of one trial; `m` only for the two-level suites, `d`
/// only for the `P^1` suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Params {
    pub n: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<i64>,
}

impl Params {
    pub fn level(n: u32) -> Params {
        Params { n, m: None, d: None }
    }

    /// The flags that replay this trial with `jetforge check --replay`.
    pub fn args(&self) -> String {
        let mut s = format!("--n {}", self.n);
        if let Some(m) = self.m {
            s.push_str(&format!(" --m {m}"));
        }
        if let Some(d) = self.d {
            s.push_str(&format!(" --d {d}"));
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub document: Option<Document>,
    pub params: Params,
}

const INSTANCE_STREAM: u64 = 0;
const ORACLE_STREAM: u64 = 1;

fn stream(seed: u64, suite: Suite, trial: u32, purpose: u64) -> ChaCha20Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&suite.tag().to_le_bytes());
    key[16..24].copy_from_slice(&u64::from(trial).to_le_bytes());
    key[24..].copy_from_slice(&purpose.to_le_bytes());
    ChaCha20Rng::from_seed(key)
}

/// The instance of trial `trial`. Trial 0 is always the degenerate one:
/// zero polynomials, empty ideal, rank-0 module, level 0.
pub fn generate(suite: Suite, cfg: &CheckConfig, trial: u32) -> Instance {
    let rng = &mut stream(cfg.seed, suite, trial, INSTANCE_STREAM);
    let degenerate = trial == 0;
    let level = |rng: &mut ChaCha20Rng, max: u32| if degenerate { 0 } else { rng.gen_range(0..=max) };
    let doc = |kind, rng: &mut ChaCha20Rng| Some(random_instance(kind, cfg, degenerate, rng));
    match suite {
        Suite::Leibniz | Suite::StructuralGrading | Suite::TwistedRingHom | Suite::CotangentTheorem => {
            let document = doc(InstanceKind::Algebra, rng);
            Instance { document, params: Params::level(level(rng, cfg.max_level)) }
        }
        Suite::JacobianIdentity | Suite::Zigzag => {
            let document = doc(InstanceKind::Poly, rng);
            Instance { document, params: Params::level(level(rng, cfg.max_level)) }
        }
        Suite::InducedGrading => {
            let document = Some(random_graded_algebra(cfg, degenerate, rng));
            Instance { document, params: Params::level(level(rng, cfg.max_level)) }
        }
        Suite::SymTheorem => {
            let document = doc(InstanceKind::Module, rng);
            Instance { document, params: Params::level(level(rng, cfg.max_level)) }
        }
        Suite::Functoriality => {
            let document = doc(InstanceKind::Morphism, rng);
            Instance { document, params: Params::level(level(rng, cfg.max_level)) }
        }
        Suite::BaseChange => {
            let mut d = random_instance(InstanceKind::Morphism, cfg, degenerate, rng);
            d.module = Some(random_module_decl(&d.symbols(), d.field, cfg, degenerate, rng));
            Instance { document: Some(d), params: Params::level(level(rng, cfg.max_level)) }
        }
        Suite::BigradeCommute => {
            let document = doc(InstanceKind::Algebra, rng);
            let n = level(rng, cfg.max_bilevel);
            let m = level(rng, cfg.max_bilevel);
            Instance { document, params: Params { n, m: Some(m), d: None } }
        }
        Suite::Cotruncation => {
            let document = doc(InstanceKind::Algebra, rng);
            let n = level(rng, cfg.max_level - 1);
            let m = if degenerate { 1 } else { rng.gen_range(n + 1..=cfg.max_level) };
            Instance { document, params: Params { n, m: Some(m), d: None } }
        }
        Suite::P1Cocycle => {
            let d = if degenerate { 0 } else { rng.gen_range(-3..=3) };
            Instance { document: None, params: Params { n: level(rng, cfg.max_level), m: None, d: Some(d) } }
        }
    }
}

/// Outcome of one trial. `oracle` is the random-point verdict for suites
/// that have one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub passed: bool,
    pub detail: String,
    pub oracle: Option<bool>,
}

impl Verdict {
    fn from_checks(checks: Vec<(bool, String)>) -> Verdict {
        let failed: Vec<String> = checks.into_iter().filter(|(ok, _)| !ok).map(|(_, d)| d).collect();
        Verdict { passed: failed.is_empty(), detail: failed.join("; "), oracle: None }
    }

    fn error(e: impl fmt::Display) -> Verdict {
        Verdict { passed: false, detail: format!("error: {e}"), oracle: None }
    }

    /// Symbolic and numeric verdicts differ.
    pub fn disagrees(&self) -> bool {
        self.oracle.is_some_and(|o| o != self.passed)
    }
}

fn relations(doc: &Document) -> Vec<Poly> {
    doc.ideal.iter().map(|(_, p)| p.clone()).collect()
}

/// Unordered pairs of relations, with repetition; `(0, 0)` for an empty ideal.
fn relation_pairs(doc: &Document) -> Vec<(Poly, Poly)> {
    let rels = relations(doc);
    if rels.is_empty() {
        return vec![(Poly::zero(), Poly::zero())];
    }
    let mut out = Vec::new();
    for a in 0..rels.len() {
        for b in a..rels.len() {
            out.push((rels[a].clone(), rels[b].clone()));
        }
    }
    out
}

fn eq_scalar(a: &Scalar, b: &Scalar) -> bool {
    a == b
}

fn leibniz(doc: &Document, n: u32, points: usize, rng: &mut ChaCha20Rng) -> Result<Verdict, jetforge_core::Error> {
    let field = doc.field;
    let vars = doc.symbols();
    let mut checks = Vec::new();
    let mut oracle = true;
    for (f, g) in relation_pairs(doc) {
        let fg = &f * &g;
        let (df, dg, dfg) = (hs_components(&f, n)?, hs_components(&g, n)?, hs_components(&fg, n)?);
        let sums: Vec<Poly> =
            (0..=n as usize).map(|i| (0..=i).fold(Poly::zero(), |acc, k| &acc + &(&df[k] * &dg[i - k]))).collect();
        for i in 0..=n as usize {
            checks.push((dfg[i] == sums[i], format!("d_{i}(f*g) differs from the Leibniz sum")));
        }
        for _ in 0..points {
            let pt = random_point(&vars, n, field, rng);
            let direct = eval_series(&fg, &pt, n, field);
            for i in 0..=n as usize {
                let lhs = eval_jets(&dfg[i], &pt, field);
                let rhs = (0..=i).fold(field.zero(), |acc, k| {
                    &acc + &(&eval_jets(&df[k], &pt, field) * &eval_jets(&dg[i - k], &pt, field))
                });
                oracle &= eq_scalar(&lhs, &direct[i]) && eq_scalar(&rhs, &direct[i]);
            }
        }
    }
    let mut v = Verdict::from_checks(checks);
    v.oracle = Some(oracle);
    Ok(v)
}

fn jacobian(doc: &Document, n: u32, points: usize, rng: &mut ChaCha20Rng) -> Result<Verdict, jetforge_core::Error> {
    let field = doc.field;
    let vars = doc.symbols();
    let mut checks = Vec::new();
    let mut oracle = true;
    for f in relations(doc) {
        let failures = jacobian_identity_failures(&f, &vars, n)?;
        checks.push((failures.is_empty(), format!("(i, j, var) failures {failures:?}")));
        let d = hs_components(&f, n)?;
        for _ in 0..points {
            let pt = random_point(&vars, n, field, rng);
            for (l, x) in vars.iter().enumerate() {
                let df = f.partial_derivative(&JetVar::base(x));
                let df_series = eval_series(&df, &pt, n, field);
                for j in 0..=n {
                    // perturb a_{x_l, j} only
                    let dual: Point<Dual> = pt
                        .iter()
                        .enumerate()
                        .map(|(k, (s, vals))| {
                            let row = vals
                                .iter()
                                .enumerate()
                                .map(|(i, a)| {
                                    let eps = if k == l && i as u32 == j { field.one() } else { field.zero() };
                                    Dual::new(a.clone(), eps)
                                })
                                .collect();
                            (s.clone(), row)
                        })
                        .collect();
                    let s = eval_series(&f, &dual, n, field);
                    for i in 0..=n {
                        let want = if j <= i { df_series[(i - j) as usize].clone() } else { field.zero() };
                        let symbolic = eval_jets(&d[i as usize].partial_derivative(&JetVar::jet(x, j)), &pt, field);
                        oracle &= s[i as usize].eps == want && symbolic == want;
                    }
                }
            }
        }
    }
    let mut v = Verdict::from_checks(checks);
    v.oracle = Some(oracle);
    Ok(v)
}

fn structural(a: &AlgebraPresentation, n: u32) -> Verdict {
    let j = jet_presentation(a, n);
    let mut checks = Vec::new();
    for k in 0..a.relations().len() {
        for i in 0..=n {
            let ok = j.relation(k, i).terms().all(|(m, _)| j.structural_degree(m) == i);
            checks.push((ok, format!("relation ({k}, {i}) is not of structural degree {i}")));
        }
    }
    Verdict::from_checks(checks)
}

fn induced(a: &AlgebraPresentation, n: u32) -> Result<Verdict, jetforge_core::Error> {
    let j = jet_presentation(a, n);
    let mut checks = Vec::new();
    for k in 0..a.relations().len() {
        let deg = a.relation_degree(k)?;
        for i in 0..=n {
            let r = j.relation(k, i);
            let ok = match deg {
                Some(e) => r.terms().all(|(m, _)| j.induced_degree(m) == Ok(e)),
                None => r.is_zero(),
            };
            checks.push((ok, format!("relation ({k}, {i}) is not of induced degree {deg:?}")));
        }
    }
    Ok(Verdict::from_checks(checks))
}

fn twisted(doc: &Document, n: u32) -> Result<Verdict, jetforge_core::Error> {
    let t = |p: &Poly| twisted_action_matrix(p, n);
    let one = Poly::one(doc.field);
    let mut checks = vec![(t(&one)? == TwistedMatrix::identity(n, doc.field), "T(1) is not the identity".into())];
    for (f, g) in relation_pairs(doc) {
        let (tf, tg) = (t(&f)?, t(&g)?);
        checks.push((t(&(&f * &g))? == tf.mul(&tg), "T(fg) != T(f) T(g)".into()));
        checks.push((t(&(&f + &g))? == tf.add(&tg), "T(f+g) != T(f) + T(g)".into()));
    }
    Ok(Verdict::from_checks(checks))
}

fn p1(d: i64, n: u32) -> Verdict {
    let mut checks = vec![(cocycle_check(d, n).holds, format!("cocycle fails for d={d}, n={n}"))];
    if d >= 0 {
        let t1 = Poly::var(JetVar::base(&chart_symbol(1)), Field::Rational).pow(d as u32);
        let m = p1_transition(d, n, ChartMode::Chart1);
        let ok = twisted_action_matrix(&t1, n).is_ok_and(|t| {
            (0..=n as usize).all(|i| {
                (0..=n as usize)
                    .all(|j| m.entry(i, j).as_poly() == Some(&t.entry(i, j).rename(|v| JetVar::jet(&v.base, v.order))))
            })
        });
        checks.push((ok, "chart-1 transition differs from T(t1^d)".into()));
    }
    if d == 1 {
        let ok = global_sections(1, n).is_ok_and(|s| s.len() == 2 * (n as usize + 1) && s.iter().all(|g| g.global));
        checks.push((ok, "global sections of O(1) are not the 2(n+1) frame elements".into()));
    }
    Verdict::from_checks(checks)
}

fn require(suite: Suite, doc: Option<&Document>) -> Result<&Document, CheckError> {
    doc.ok_or_else(|| CheckError::Replay { suite, reason: "an input document is required".into() })
}

fn need_m(suite: Suite, p: &Params) -> Result<u32, CheckError> {
    p.m.ok_or_else(|| CheckError::Replay { suite, reason: "--m is required".into() })
}

/// Checks the identity of `suite` on one instance.
pub fn check_instance(
    suite: Suite,
    instance: &Instance,
    oracle_points: usize,
    oracle_rng: &mut ChaCha20Rng,
) -> Result<Verdict, CheckError> {
    let n = instance.params.n;
    let doc = instance.document.as_ref();
    let algebra = || -> Result<AlgebraPresentation, CheckError> {
        require(suite, doc)?.algebra().map_err(|e| CheckError::Replay { suite, reason: e.to_string() })
    };
    let core = |r: Result<Verdict, jetforge_core::Error>| r.unwrap_or_else(Verdict::error);
    let morphism_doc = || -> Result<&Document, CheckError> {
        let d = require(suite, doc)?;
        if d.morphism.is_none() {
            return Err(CheckError::Replay { suite, reason: "the input declares no morphism".into() });
        }
        Ok(d)
    };
    Ok(match suite {
        Suite::Leibniz => core(leibniz(require(suite, doc)?, n, oracle_points, oracle_rng)),
        Suite::JacobianIdentity => core(jacobian(require(suite, doc)?, n, oracle_points, oracle_rng)),
        Suite::StructuralGrading => structural(&algebra()?, n),
        Suite::InducedGrading => {
            let a = algebra()?;
            if a.grading().is_none() {
                return Err(CheckError::Replay { suite, reason: "the input declares no grading".into() });
            }
            core(induced(&a, n))
        }
        Suite::BigradeCommute => {
            let r = bigrade_commute_check(&algebra()?, n, need_m(suite, &instance.params)?);
            Verdict::from_checks(vec![(r.holds, format!("first mismatch (k, i, j) = {:?}", r.mismatch))])
        }
        Suite::Cotruncation => {
            let m = need_m(suite, &instance.params)?;
            core(
                cotruncation_subset_check(&algebra()?, n, m)
                    .map(|r| Verdict::from_checks(vec![(r.holds, format!("first mismatch (k, i) = {:?}", r.witness))])),
            )
        }
        Suite::Functoriality => {
            let d = morphism_doc()?;
            core((|| {
                let phi = d.algebra_morphism().expect("checked")?;
                let mut gs = relations(d);
                gs.extend(d.symbols().iter().map(|s| Poly::var(JetVar::base(s), d.field)));
                let mut checks = Vec::new();
                for (k, g) in gs.iter().enumerate() {
                    checks.push((
                        functoriality_check(&phi, g, n)?,
                        format!("f_n(d_i g) != d_i(phi g) for test element {k}"),
                    ));
                }
                Ok(Verdict::from_checks(checks))
            })())
        }
        Suite::TwistedRingHom => core(twisted(require(suite, doc)?, n)),
        Suite::SymTheorem => {
            let d = require(suite, doc)?;
            core(d.module_presentation().map(|m| {
                let r = sym_theorem_check(&m, n);
                Verdict::from_checks(vec![(
                    r.holds,
                    format!("degree0 {} degree1 {} first mismatch {:?}", r.degree0_ok, r.degree1_ok, r.mismatch),
                )])
            }))
        }
        Suite::CotangentTheorem => {
            let r = cotangent_theorem_check(&algebra()?, n);
            Verdict::from_checks(vec![(r.holds, format!("mismatched (row, col) {:?}", r.mismatches))])
        }
        Suite::BaseChange => {
            let d = morphism_doc()?;
            core((|| {
                let phi = d.algebra_morphism().expect("checked")?;
                let r = base_change_check(&phi, &d.module_presentation()?, n)?;
                Ok(Verdict::from_checks(vec![(r.holds, format!("mismatched (row, col) {:?}", r.mismatches))]))
            })())
        }
        Suite::Zigzag => {
            let d = require(suite, doc)?;
            core((|| {
                let mut checks =
                    vec![(free_dual_zigzag_check(n).holds, "zig-zag composite is not the identity".into())];
                for f in relations(d) {
                    checks.push((pairing_balanced(&f, n)?, "evaluation pairing is not balanced".into()));
                }
                Ok(Verdict::from_checks(checks))
            })())
        }
        Suite::P1Cocycle => {
            let d = instance.params.d.ok_or_else(|| CheckError::Replay { suite, reason: "--d is required".into() })?;
            p1(d, n)
        }
    })
}

/// Re-runs one identity on a given instance, with oracle points drawn from
/// the seed's stream for trial 0.
pub fn replay(suite: Suite, instance: &Instance, cfg: &CheckConfig) -> Result<Verdict, CheckError> {
    let mut rng = stream(cfg.seed, suite, 0, ORACLE_STREAM);
    check_instance(suite, instance, cfg.oracle_points, &mut rng)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub trial: u32,
    /// Flags for `jetforge check --suite <name> --replay <file>`.
    pub args: String,
    /// The full input document, empty for suites that take none.
    pub input: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub trials: u32,
    pub passed: bool,
    pub failures: Vec<Failure>,
    /// Trials refereed by random-point evaluation.
    pub oracle_trials: u32,
    /// Trials where the symbolic and numeric verdicts differ.
    pub oracle_disagreements: Vec<u32>,
    pub wall_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub seed: u64,
    pub trials: u32,
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
    pub wall_ms: u64,
}

impl CheckReport {
    /// The report with every timing zeroed, for comparing runs.
    pub fn without_timings(mut self) -> CheckReport {
        self.wall_ms = 0;
        for s in &mut self.suites {
            s.wall_ms = 0;
        }
        self
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteReport> {
        self.suites.iter().find(|s| s.suite == name)
    }
}

fn run_trial(suite: Suite, cfg: &CheckConfig, trial: u32) -> (Instance, Result<Verdict, CheckError>) {
    let instance = generate(suite, cfg, trial);
    let mut rng = stream(cfg.seed, suite, trial, ORACLE_STREAM);
    let verdict = check_instance(suite, &instance, cfg.oracle_points, &mut rng);
    (instance, verdict)
}

fn run_one(suite: Suite, cfg: &CheckConfig) -> SuiteReport {
    let start = Instant::now();
    let outcomes: Vec<_> = (0..cfg.trials).into_par_iter().map(|t| (t, run_trial(suite, cfg, t))).collect();
    let mut failures = Vec::new();
    let mut oracle_trials = 0;
    let mut oracle_disagreements = Vec::new();
    for (trial, (instance, verdict)) in outcomes {
        let verdict = verdict.unwrap_or_else(Verdict::error);
        if verdict.oracle.is_some() {
            oracle_trials += 1;
        }
        let mut detail = verdict.detail.clone();
        if verdict.disagrees() {
            oracle_disagreements.push(trial);
            let note =
                format!("random-point oracle says {}", if verdict.oracle == Some(true) { "holds" } else { "fails" });
            detail = if detail.is_empty() { note } else { format!("{detail}; {note}") };
        }
        if !verdict.passed || verdict.disagrees() {
            failures.push(Failure {
                trial,
                args: instance.params.args(),
                input: instance.document.as_ref().map(ToString::to_string).unwrap_or_default(),
                detail,
            });
        }
    }
    SuiteReport {
        suite: suite.name(),
        trials: cfg.trials,
        passed: failures.is_empty(),
        failures,
        oracle_trials,
        oracle_disagreements,
        wall_ms: start.elapsed().as_millis() as u64,
    }
}

/// Runs every selected suite. Trials run in parallel and are reported in
/// trial order.
pub fn run_suite(cfg: &CheckConfig) -> Result<CheckReport, CheckError> {
    cfg.validate()?;
    let start = Instant::now();
    let suites: Vec<SuiteReport> = cfg.suites.iter().map(|s| run_one(*s, cfg)).collect();
    Ok(CheckReport {
        seed: cfg.seed,
        trials: cfg.trials,
        passed: suites.iter().all(|s| s.passed),
        suites,
        wall_ms: start.elapsed().as_millis() as u64,
    })
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<20} {:>6} {:>8} {:>9} {:>8}", "suite", "trials", "failures", "oracle", "ms")?;
        for s in &self.suites {
            let oracle = if s.oracle_trials > 0 {
                format!("{}/{}", s.oracle_trials - s.oracle_disagreements.len() as u32, s.oracle_trials)
            } else {
                "-".into()
            };
            writeln!(f, "{:<20} {:>6} {:>8} {:>9} {:>8}", s.suite, s.trials, s.failures.len(), oracle, s.wall_ms)?;
        }
        for s in &self.suites {
            for fail in &s.failures {
                writeln!(f, "\n{} trial {} ({}): {}", s.suite, fail.trial, fail.args, fail.detail)?;
                for line in fail.input.lines() {
                    writeln!(f, "    {line}")?;
                }
            }
        }
        let failed = self.suites.iter().filter(|s| !s.passed).count();
        if failed == 0 {
            write!(f, "\nall {} suites passed (seed {}, {} ms)", self.suites.len(), self.seed, self.wall_ms)
        } else {
            write!(f, "\n{failed} of {} suites failed (seed {})", self.suites.len(), self.seed)
        }
    }
}
