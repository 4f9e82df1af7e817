use jetforge::check::{generate, CheckConfig, Suite};
use jetforge::dsl::parse_document;
use jetforge::random::{random_graded_algebra, random_instance, InstanceKind};
use jetforge_core::Field;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

const KINDS: [InstanceKind; 4] =
    [InstanceKind::Poly, InstanceKind::Algebra, InstanceKind::Module, InstanceKind::Morphism];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn print_then_parse_is_identity(seed: u64, kind in 0usize..5, degenerate: bool) {
        let cfg = CheckConfig::default();
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let doc = match KINDS.get(kind) {
            Some(k) => random_instance(*k, &cfg, degenerate, &mut rng),
            None => random_graded_algebra(&cfg, degenerate, &mut rng),
        };
        let text = doc.to_string();
        let back = parse_document(&text, Field::Rational).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn generation_is_deterministic(seed: u64, trial in 0u32..50, suite in 0usize..13) {
        let cfg = CheckConfig { seed, ..CheckConfig::default() };
        let s = Suite::ALL[suite];
        prop_assert_eq!(generate(s, &cfg, trial), generate(s, &cfg, trial));
    }
}

#[test]
fn comments_and_spacing_do_not_matter() {
    let a = parse_document("ring Q[x,y]   # plane\nideal f=y^2-x^3\n\n", Field::Rational).unwrap();
    let b = parse_document("ring Q[x, y]\nideal f = y^2 - x^3\n", Field::Rational).unwrap();
    assert_eq!(a, b);
}
