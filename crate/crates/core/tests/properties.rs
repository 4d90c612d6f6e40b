use proptest::prelude::*;

use ambiguity_core::base::{Arrow, FinSet, Morphism, RelMorphism};
use ambiguity_core::cpm::{is_positive, is_pure};
use ambiguity_core::enrich::EnrichedMorphism;
use ambiguity_core::monads::{MonadElement, MonadTag};
use ambiguity_core::pregroup::{parse, PregroupType, SimpleType};
use ambiguity_core::relate::{embed, EmbeddingTag};
use ambiguity_core::sample::Sampler;
use ambiguity_core::weight::{format_weight, parse_weight, ratio, Weight};

fn tag() -> impl Strategy<Value = MonadTag> {
    prop::sample::select(MonadTag::ALL.to_vec())
}

fn square(n: usize, bits: &[bool]) -> RelMorphism {
    let x = FinSet::numbered("X", n);
    RelMorphism::from_bits(x.clone(), x, bits[..n * n].to_vec()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn weights_round_trip(num in -1000i64..1000, den in 1i64..1000) {
        let w = ratio(num, den);
        prop_assert_eq!(parse_weight(&format_weight(&w)).unwrap(), w);
    }

    #[test]
    fn distributions_are_canonical(raw in prop::collection::vec((0u8..4, 1i64..10), 1..6)) {
        let total: i64 = raw.iter().map(|(_, w)| w).sum();
        let d = MonadElement::dist(raw.iter().map(|&(x, w)| (x, ratio(w, total)))).unwrap();
        let terms = d.terms();
        prop_assert!(terms.iter().all(|(_, w)| *w > Weight::from_integer(0.into())));
        prop_assert_eq!(terms.iter().map(|(_, w)| w.clone()).sum::<Weight>(), Weight::from_integer(1.into()));
        prop_assert!(terms.windows(2).all(|p| p[0].0 < p[1].0));
        // unit laws
        let left = MonadElement::flatten(&MonadElement::unit(MonadTag::Dist, d.clone())).unwrap();
        prop_assert_eq!(&left, &d);
        let right = MonadElement::flatten(&d.map(|x| MonadElement::unit(MonadTag::Dist, *x))).unwrap();
        prop_assert_eq!(right, d);
    }

    #[test]
    fn enriched_composition_is_associative(t in tag(), seed in any::<u64>()) {
        let mut s = Sampler::<RelMorphism>::new(seed);
        let (a, b, c, d) = (s.object(), s.object(), s.object(), s.object());
        let f = s.enriched(t, &a, &b);
        let g = s.enriched(t, &b, &c);
        let h = s.enriched(t, &c, &d);
        let left = h.compose_after(&g.compose_after(&f).unwrap()).unwrap();
        let right = h.compose_after(&g).unwrap().compose_after(&f).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(f.dagger().dagger(), f);
    }

    #[test]
    fn lifting_is_functorial(t in tag(), seed in any::<u64>()) {
        let mut s = Sampler::<RelMorphism>::new(seed);
        let (a, b, c) = (s.object(), s.object(), s.object());
        let (f, g) = (s.base(&a, &b), s.base(&b, &c));
        let lifted = EnrichedMorphism::lift_base(g.after(&f).unwrap(), t);
        let composed = EnrichedMorphism::lift_base(g, t)
            .compose_after(&EnrichedMorphism::lift_base(f, t))
            .unwrap();
        prop_assert_eq!(lifted, composed);
    }

    #[test]
    fn embeddings_keep_supports(seed in any::<u64>(), which in 0usize..4) {
        let e = EmbeddingTag::ALL[which];
        let mut s = Sampler::<RelMorphism>::new(seed);
        let (a, b) = (s.object(), s.object());
        let m = s.enriched(e.source(), &a, &b);
        let image = embed(e, &m).unwrap();
        prop_assert_eq!(image.tag(), e.target());
        prop_assert_eq!(image.support(), m.support());
    }

    #[test]
    fn positive_states_are_symmetric_and_closed_under_union(
        n in 0usize..=4,
        r in prop::collection::vec(any::<bool>(), 16),
        q in prop::collection::vec(any::<bool>(), 16),
    ) {
        let (r, q) = (square(n, &r), square(n, &q));
        if is_positive(&r) {
            prop_assert_eq!(r.dagger(), r.clone());
            if is_positive(&q) {
                prop_assert!(is_positive(&r.union(&q).unwrap()));
            }
        }
        if is_pure(&r) {
            prop_assert!(is_positive(&r));
        }
    }

    #[test]
    fn parses_replay_to_the_target(
        codes in prop::collection::vec(0usize..5, 0..10),
        to_unit in any::<bool>(),
    ) {
        let alphabet = [
            SimpleType::new("n", -1),
            SimpleType::new("n", 0),
            SimpleType::new("n", 1),
            SimpleType::new("s", 0),
            SimpleType::new("s", -1),
        ];
        let flat = PregroupType(codes.iter().map(|&c| alphabet[c].clone()).collect());
        prop_assert_eq!(flat.to_string().parse::<PregroupType>().unwrap(), flat.clone());
        let target: PregroupType = if to_unit { PregroupType::default() } else { "s".parse().unwrap() };
        if let Some(r) = parse(std::slice::from_ref(&flat), &target) {
            prop_assert_eq!(&r.replay(&flat.0).unwrap(), &target.0);
            prop_assert_eq!(r.steps.len() * 2 + target.0.len(), flat.0.len());
        }
    }
}
