//! Seeded random documents within the check-suite bounds.

use std::collections::BTreeMap;

use jetforge_core::{Field, JetVar, Monomial, Poly, Scalar, Symbol};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::check::CheckConfig;
use crate::dsl::{Document, ModuleDecl, MorphismDecl};

const SOURCE_NAMES: [&str; 3] = ["x", "y", "z"];
const TARGET_NAMES: [&str; 3] = ["u", "v", "w"];
const PRIMES: [u32; 4] = [2, 3, 7, 101];
const MAX_TERMS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceKind {
    Poly,
    Algebra,
    Module,
    Morphism,
}

/// `Q` three times out of four, otherwise a small prime field.
pub fn random_field<R: Rng>(rng: &mut R) -> Field {
    if rng.gen_bool(0.75) {
        Field::Rational
    } else {
        Field::prime(*PRIMES.choose(rng).expect("nonempty")).expect("prime")
    }
}

fn symbols(names: &[&str], k: usize) -> Vec<Symbol> {
    names.iter().take(k).enumerate().map(|(i, n)| Symbol::new(i as u32, n)).collect()
}

fn random_monomial<R: Rng>(vars: &[Symbol], max_degree: u32, rng: &mut R) -> Monomial {
    let d = rng.gen_range(0..=max_degree);
    let mut exps = vec![0u32; vars.len()];
    for _ in 0..d {
        exps[rng.gen_range(0..vars.len())] += 1;
    }
    Monomial::from_factors(vars.iter().zip(exps).map(|(s, e)| (JetVar::base(s), e)))
}

fn random_coefficient<R: Rng>(field: Field, bound: i64, rng: &mut R) -> Scalar {
    loop {
        let c = rng.gen_range(-bound..=bound);
        if c != 0 {
            return Scalar::from_i64(field, c);
        }
    }
}

/// At most six terms of total degree at most `max_degree`. The zero
/// polynomial comes up about once in seven draws.
pub fn random_poly<R: Rng>(vars: &[Symbol], field: Field, cfg: &CheckConfig, rng: &mut R) -> Poly {
    let terms = rng.gen_range(0..=MAX_TERMS);
    // repeated monomials keep their last coefficient, so the bound holds
    let picked: BTreeMap<Monomial, Scalar> = (0..terms)
        .map(|_| (random_monomial(vars, cfg.max_degree, rng), random_coefficient(field, cfg.coeff_bound, rng)))
        .collect();
    Poly::from_terms(picked)
}

/// Every monomial in `vars` of total degree at most `max_degree`.
fn all_monomials(vars: &[Symbol], max_degree: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one()];
    for s in vars {
        let v = JetVar::base(s);
        out = out
            .iter()
            .flat_map(|m| {
                let used = m.total_degree();
                let v = &v;
                (0..=max_degree - used).map(move |e| m.mul(&Monomial::from_factors([(v.clone(), e)])))
            })
            .collect();
    }
    out
}

/// A polynomial homogeneous of some degree for `weights`, built by picking
/// a degree and then only monomials of that weighted degree.
pub fn random_homogeneous<R: Rng>(
    vars: &[Symbol],
    weights: &[u32],
    field: Field,
    cfg: &CheckConfig,
    rng: &mut R,
) -> Poly {
    let weight = |m: &Monomial| m.weighted_degree(|v| Some(weights[v.base.index() as usize])).expect("all weighted");
    let pool = all_monomials(vars, cfg.max_degree);
    let target = weight(pool.choose(rng).expect("contains 1"));
    let same: Vec<&Monomial> = pool.iter().filter(|m| weight(m) == target).collect();
    let terms = rng.gen_range(0..=MAX_TERMS.min(same.len()));
    Poly::from_terms(
        same.choose_multiple(rng, terms).map(|m| ((*m).clone(), random_coefficient(field, cfg.coeff_bound, rng))),
    )
}

fn base_document<R: Rng>(cfg: &CheckConfig, rng: &mut R) -> (Document, Vec<Symbol>) {
    let field = random_field(rng);
    let k = rng.gen_range(1..=cfg.max_vars);
    let doc = Document::ring(field, &SOURCE_NAMES[..k]);
    let syms = doc.symbols();
    (doc, syms)
}

fn relations<R: Rng>(
    count: usize,
    vars: &[Symbol],
    field: Field,
    cfg: &CheckConfig,
    rng: &mut R,
) -> Vec<(String, Poly)> {
    (0..count).map(|i| (format!("f{}", i + 1), random_poly(vars, field, cfg, rng))).collect()
}

/// Rank at most `max_rank`, at most `max_relations` rows; rank 0 when
/// `degenerate`.
pub fn random_module_decl<R: Rng>(
    vars: &[Symbol],
    field: Field,
    cfg: &CheckConfig,
    degenerate: bool,
    rng: &mut R,
) -> ModuleDecl {
    let rank = if degenerate { 0 } else { rng.gen_range(0..=cfg.max_rank) };
    let rows = if degenerate { 0 } else { rng.gen_range(0..=cfg.max_relations) };
    let relations = (0..rows)
        .map(|i| (format!("r{}", i + 1), (0..rank).map(|_| random_poly(vars, field, cfg, rng)).collect()))
        .collect();
    ModuleDecl { rank, relations }
}

/// A random document of the given kind. With `degenerate` set, every
/// polynomial is zero, the ideal is empty and the module has rank 0.
pub fn random_instance<R: Rng>(kind: InstanceKind, cfg: &CheckConfig, degenerate: bool, rng: &mut R) -> Document {
    let (mut doc, vars) = base_document(cfg, rng);
    let field = doc.field;
    match kind {
        InstanceKind::Poly => {
            let f = if degenerate { Poly::zero() } else { random_poly(&vars, field, cfg, rng) };
            doc.ideal.push(("f".into(), f));
        }
        InstanceKind::Algebra => {
            let r = if degenerate { 0 } else { rng.gen_range(0..=cfg.max_relations) };
            doc.ideal = relations(r, &vars, field, cfg, rng);
        }
        InstanceKind::Module => {
            let r = if degenerate { 0 } else { rng.gen_range(0..=cfg.max_relations) };
            doc.ideal = relations(r, &vars, field, cfg, rng);
            doc.module = Some(random_module_decl(&vars, field, cfg, degenerate, rng));
        }
        InstanceKind::Morphism => {
            let r = if degenerate { 0 } else { rng.gen_range(0..=cfg.max_relations) };
            doc.ideal = relations(r, &vars, field, cfg, rng);
            let t = rng.gen_range(1..=cfg.max_vars);
            let target = symbols(&TARGET_NAMES, t);
            let tr = if degenerate { 0 } else { rng.gen_range(0..=1) };
            let target_ideal =
                (0..tr).map(|i| (format!("g{}", i + 1), random_poly(&target, field, cfg, rng))).collect();
            let maps = vars
                .iter()
                .map(|_| if degenerate { Poly::zero() } else { random_poly(&target, field, cfg, rng) })
                .collect();
            doc.morphism = Some(MorphismDecl {
                target_vars: TARGET_NAMES[..t].iter().map(|s| s.to_string()).collect(),
                target_ideal,
                maps,
            });
        }
    }
    doc
}

/// A graded algebra whose relations are homogeneous by construction; weights
/// are drawn from `1..=3`.
pub fn random_graded_algebra<R: Rng>(cfg: &CheckConfig, degenerate: bool, rng: &mut R) -> Document {
    let (mut doc, vars) = base_document(cfg, rng);
    let weights: Vec<u32> = vars.iter().map(|_| rng.gen_range(1..=3)).collect();
    let r = if degenerate { 0 } else { rng.gen_range(0..=cfg.max_relations) };
    doc.ideal =
        (0..r).map(|i| (format!("f{}", i + 1), random_homogeneous(&vars, &weights, doc.field, cfg, rng))).collect();
    doc.grades = Some(weights);
    doc
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn polys_respect_bounds() {
        let cfg = CheckConfig::default();
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        let vars = symbols(&SOURCE_NAMES, 2);
        let mut saw_zero = false;
        for _ in 0..500 {
            let p = random_poly(&vars, Field::Rational, &cfg, &mut rng);
            assert!(p.len() <= 6 && p.total_degree() <= 3);
            assert!(p.terms().all(|(_, c)| c.abs() <= Scalar::from_i64(Field::Rational, 9)));
            saw_zero |= p.is_zero();
        }
        assert!(saw_zero);
    }

    #[test]
    fn degenerate_cases_occur() {
        let cfg = CheckConfig::default();
        let mut rng = ChaCha20Rng::seed_from_u64(2);
        let (mut free, mut free_module) = (false, false);
        for _ in 0..200 {
            free |= random_instance(InstanceKind::Algebra, &cfg, false, &mut rng).ideal.is_empty();
            let m = random_instance(InstanceKind::Module, &cfg, false, &mut rng).module.unwrap();
            free_module |= m.rank == 1 && m.relations.is_empty();
        }
        assert!(free && free_module);
    }

    #[test]
    fn graded_instances_parse_back() {
        let cfg = CheckConfig::default();
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        for _ in 0..100 {
            let d = random_graded_algebra(&cfg, false, &mut rng);
            assert!(d.algebra().is_ok());
            assert_eq!(crate::dsl::parse_document(&d.to_string(), Field::Rational).unwrap(), d);
        }
    }
}
