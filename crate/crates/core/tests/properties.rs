use std::collections::BTreeMap;

use jetforge_core::hs::{
    bigrade_commute_check, cotruncation_subset_check, functoriality_check, grade_monomial, hs_components,
    jet_presentation, AlgebraMorphism, AlgebraPresentation, Grading, GradingMode,
};
use jetforge_core::module::{
    base_change_check, cotangent_theorem_check, hs_module_presentation, jacobian_identity_failures, pairing_balanced,
    sym_theorem_check, twisted_action_matrix, ModulePresentation, TwistedMatrix,
};
use jetforge_core::p1::cocycle_check;
use jetforge_core::{Field, JetVar, LocalPoly, Monomial, Poly, RingElement, Scalar, Symbol, TruncSeries};
use proptest::prelude::*;

const Q: Field = Field::Rational;

fn symbols(k: usize) -> Vec<Symbol> {
    ["x", "y", "z"].iter().take(k).enumerate().map(|(i, s)| Symbol::new(i as u32, s)).collect()
}

/// Up to six terms of total degree at most 3 in `vars`.
fn poly_in(vars: Vec<Symbol>, field: Field) -> impl Strategy<Value = Poly> {
    let k = vars.len();
    prop::collection::vec((prop::collection::vec(0u32..=3, k), -9i64..=9), 0..=6).prop_map(move |terms| {
        Poly::from_terms(terms.into_iter().filter(|(e, _)| e.iter().sum::<u32>() <= 3).map(|(e, c)| {
            let m = Monomial::from_factors(vars.iter().zip(e).map(|(s, e)| (JetVar::base(s), e)));
            (m, Scalar::from_i64(field, c))
        }))
    })
}

fn poly() -> impl Strategy<Value = Poly> {
    poly_in(symbols(2), Q)
}

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Q), Just(Field::prime(7).unwrap()), Just(Field::prime(101).unwrap())]
}

/// A homogeneous polynomial of the given degree for the grading `deg = weights`.
fn homogeneous(vars: Vec<Symbol>, weights: Vec<u32>, degree: u32) -> impl Strategy<Value = Poly> {
    poly_in(vars.clone(), Q).prop_map(move |p| {
        Poly::from_terms(
            p.terms()
                .filter(|(m, _)| m.weighted_degree(|v| Some(weights[v.base.index() as usize])) == Some(degree))
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    })
}

fn algebra() -> impl Strategy<Value = AlgebraPresentation> {
    (1usize..=3).prop_flat_map(|k| {
        prop::collection::vec(poly_in(symbols(k), Q), 0..=2)
            .prop_map(move |rels| AlgebraPresentation::new(Q, symbols(k), rels).unwrap())
    })
}

fn module() -> impl Strategy<Value = ModulePresentation> {
    (algebra(), 0usize..=2).prop_flat_map(|(a, rank)| {
        let k = a.vars().len();
        prop::collection::vec(prop::collection::vec(poly_in(symbols(k), Q), rank), 0..=2)
            .prop_map(move |rows| ModulePresentation::new(a.clone(), rank, rows).unwrap())
    })
}

fn point(vars: &[JetVar], vals: &[i64]) -> BTreeMap<JetVar, Scalar> {
    vars.iter().cloned().zip(vals.iter().map(|v| Scalar::from_i64(Q, *v))).collect()
}

fn all_jets(n: u32) -> Vec<JetVar> {
    symbols(2).iter().flat_map(|s| (0..=n).map(move |i| JetVar::jet(s, i))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(f in poly(), g in poly(), h in poly()) {
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn arithmetic_over_prime_fields(fd in field(), e in prop::collection::vec(-9i64..=9, 3)) {
        let f = Poly::integer(fd, e[0]);
        let g = Poly::integer(fd, e[1]);
        prop_assert_eq!((&f * &g).as_constant().unwrap_or(fd.zero()), Scalar::from_i64(fd, e[0] * e[1]));
        if let Some(c) = f.as_constant() {
            prop_assert!(c.checked_mul(&c.inv().unwrap()).unwrap().is_one());
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(f in poly(), g in poly(), vals in prop::collection::vec(-5i64..=5, 2)) {
        let pt = point(&all_jets(0), &vals);
        let ev = |p: &Poly| p.eval(&pt).unwrap();
        prop_assert_eq!(ev(&(&f + &g)), ev(&f).checked_add(&ev(&g)).unwrap());
        prop_assert_eq!(ev(&(&f * &g)), ev(&f).checked_mul(&ev(&g)).unwrap());
    }

    #[test]
    fn leibniz(f in poly(), g in poly(), n in 0u32..=4) {
        let df = hs_components(&f, n).unwrap();
        let dg = hs_components(&g, n).unwrap();
        let dfg = hs_components(&(&f * &g), n).unwrap();
        for i in 0..=n as usize {
            let rhs = (0..=i).fold(Poly::zero(), |acc, k| &acc + &(&df[k] * &dg[i - k]));
            prop_assert_eq!(&dfg[i], &rhs);
        }
    }

    #[test]
    fn linearity(f in poly(), g in poly(), c in -9i64..=9, n in 0u32..=4) {
        let s = Scalar::from_i64(Q, c);
        let lhs = hs_components(&(&f.scale(&s) + &g), n).unwrap();
        let df = hs_components(&f, n).unwrap();
        let dg = hs_components(&g, n).unwrap();
        for i in 0..=n as usize {
            prop_assert_eq!(&lhs[i], &(&df[i].scale(&s) + &dg[i]));
        }
    }

    #[test]
    fn components_have_structural_degree(f in poly(), n in 0u32..=4) {
        for (i, d) in hs_components(&f, n).unwrap().iter().enumerate() {
            for (m, _) in d.terms() {
                prop_assert_eq!(grade_monomial(m, GradingMode::Structural, None).unwrap(), i as u32);
            }
        }
    }

    #[test]
    fn components_keep_induced_degree(
        f in homogeneous(symbols(2), vec![1, 2], 2),
        n in 0u32..=3,
    ) {
        let vars = symbols(2);
        let grading: Grading = vars.iter().cloned().zip([1, 2]).collect();
        let a = AlgebraPresentation::graded(Q, vars, vec![f.clone()], grading.clone()).unwrap();
        let j = jet_presentation(&a, n);
        for r in j.relations() {
            for (m, _) in r.terms() {
                prop_assert_eq!(grade_monomial(m, GradingMode::Induced, Some(&grading)).unwrap(), 2);
                prop_assert_eq!(j.induced_degree(m).unwrap(), 2);
            }
        }
    }

    #[test]
    fn twisted_matrix_is_a_ring_map(f in poly(), g in poly(), n in 0u32..=3) {
        let t = |p: &Poly| twisted_action_matrix(p, n).unwrap();
        prop_assert_eq!(t(&(&f * &g)), t(&f).mul(&t(&g)));
        prop_assert_eq!(t(&(&f + &g)), t(&f).add(&t(&g)));
        prop_assert_eq!(t(&Poly::one(Q)), TwistedMatrix::identity(n, Q));
        prop_assert!(pairing_balanced(&f, n).unwrap());
    }

    #[test]
    fn jacobian_identity(f in poly(), n in 0u32..=3) {
        prop_assert!(jacobian_identity_failures(&f, &symbols(2), n).unwrap().is_empty());
    }

    #[test]
    fn functoriality(g in poly(), im in prop::collection::vec(poly_in(symbols(1), Q), 2), n in 0u32..=3) {
        let src = AlgebraPresentation::free(Q, symbols(2)).unwrap();
        let u = vec![Symbol::new(0, "u")];
        let tgt = AlgebraPresentation::free(Q, u.clone()).unwrap();
        let images = symbols(2)
            .into_iter()
            .zip(im)
            .map(|(s, p)| (s, p.rename(|v| JetVar::jet(&u[0], v.order))))
            .collect();
        let phi = AlgebraMorphism::new(src, tgt, images).unwrap();
        prop_assert!(functoriality_check(&phi, &g, n).unwrap());
    }

    #[test]
    fn base_change(m in module(), n in 0u32..=2) {
        let k = m.over().vars().len();
        let src = AlgebraPresentation::free(Q, symbols(k)).unwrap();
        let m = ModulePresentation::new(src.clone(), m.rank(), m.relations().to_vec()).unwrap();
        let u = Symbol::new(0, "u");
        let tgt = AlgebraPresentation::free(Q, vec![u.clone()]).unwrap();
        let up = Poly::var(JetVar::base(&u), Q);
        let images = symbols(k).into_iter().enumerate().map(|(i, s)| (s, up.pow(i as u32 + 1))).collect();
        let phi = AlgebraMorphism::new(src, tgt, images).unwrap();
        prop_assert!(base_change_check(&phi, &m, n).unwrap().holds);
    }

    #[test]
    fn cotruncation(a in algebra(), n in 0u32..=3, gap in 1u32..=2) {
        prop_assert!(cotruncation_subset_check(&a, n, n + gap).unwrap().holds);
    }

    #[test]
    fn cotangent(a in algebra(), n in 0u32..=3) {
        let r = cotangent_theorem_check(&a, n);
        prop_assert!(r.holds, "{:?}", r.mismatches);
    }

    #[test]
    fn sym(m in module(), n in 0u32..=3) {
        let r = sym_theorem_check(&m, n);
        prop_assert!(r.holds, "{:?}", r.mismatch);
    }

    #[test]
    fn hs_module_shape(m in module(), n in 0u32..=3) {
        let hs = hs_module_presentation(&m, n);
        prop_assert_eq!(hs.rank(), m.rank() * (n as usize + 1));
        prop_assert_eq!(hs.matrix().len(), m.relations().len() * (n as usize + 1));
    }

    #[test]
    fn bigrade(a in algebra(), n in 0u32..=2, m in 0u32..=2) {
        let r = bigrade_commute_check(&a, n, m);
        prop_assert!(r.holds, "{:?}", r.mismatch);
    }

    #[test]
    fn localized_normalization(e in 0u32..=3, k in 0u32..=4, c in 1i64..=9) {
        let t0 = Symbol::new(0, "t0");
        let u = JetVar::jet(&t0, 0);
        let num = Poly::var(JetVar::jet(&t0, 1), Q).mul_monomial(&Monomial::from_factors([(u.clone(), e)]));
        let a = LocalPoly::new(num.scale(&Scalar::from_i64(Q, c)), u.clone(), k);
        prop_assert_eq!(a.clone().normalized(), a.clone());
        prop_assert_eq!(a.denom_exp(), k.saturating_sub(e));
        let unit = LocalPoly::new(Poly::var(u.clone(), Q), u.clone(), 0);
        let back = a.mul_ref(&unit.pow_ref(&LocalPoly::from_poly(Poly::one(Q), u), k));
        prop_assert!(back.as_poly().is_some());
    }

    #[test]
    fn series_inverse_round_trip(c0 in 1i64..=9, rest in prop::collection::vec(-9i64..=9, 0..=4)) {
        let mut coeffs = vec![Poly::integer(Q, c0)];
        coeffs.extend(rest.iter().map(|c| Poly::integer(Q, *c)));
        let s = TruncSeries::new(coeffs);
        let inv = s.invert().unwrap();
        prop_assert_eq!(s.mul_ref(&inv), TruncSeries::constant(s.level(), Poly::one(Q)));
    }

    #[test]
    fn p1_cocycles(d in -2i64..=2, n in 0u32..=3) {
        prop_assert!(cocycle_check(d, n).holds);
    }
}
