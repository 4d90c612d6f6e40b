//! Functors between the free enrichments, the support enrichment, the
//! uniform-mixture counterexample and enrichment conditions for
//! categories that are not free.

mod conditions;
mod counterexample;
mod support;

pub use conditions::{
    check_enrichment_conditions, check_free_model_conditions, free_model_algebra,
    mat_zero_algebra, random_condition_samples, rel_exhaustive_samples, rel_intersection_algebra,
    rel_union_algebra, ConditionSample, EnrichmentKind, HomsetAlgebra, RelateError,
};
pub use counterexample::{
    counterexample_uniform, functional_relations, non_uniform_witnesses, search_counterexample,
    successor_with_absorber,
    CounterexampleReport,
};
pub use support::{check_support_enrichment, check_uniform_functor, support_mix, uniform_distribution};

use std::fmt;

use crate::base::{Arrow, Morphism};
use crate::enrich::{EnrichError, EnrichedMorphism};
use crate::monads::{MonadElement, MonadTag};
use crate::report::{Check, Render, Report, Witness};
use crate::sample::{RandomArrow, Sampler};

type Em<M> = EnrichedMorphism<M>;

/// The four identity-on-objects embeddings between the free models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EmbeddingTag {
    BotToPOmega,
    PPlusToPOmega,
    BotToSubDist,
    DistToSubDist,
}

impl EmbeddingTag {
    pub const ALL: [EmbeddingTag; 4] = [
        EmbeddingTag::BotToPOmega,
        EmbeddingTag::PPlusToPOmega,
        EmbeddingTag::BotToSubDist,
        EmbeddingTag::DistToSubDist,
    ];

    pub fn source(self) -> MonadTag {
        match self {
            EmbeddingTag::BotToPOmega | EmbeddingTag::BotToSubDist => MonadTag::Lift,
            EmbeddingTag::PPlusToPOmega => MonadTag::PPlus,
            EmbeddingTag::DistToSubDist => MonadTag::Dist,
        }
    }

    pub fn target(self) -> MonadTag {
        match self {
            EmbeddingTag::BotToPOmega | EmbeddingTag::PPlusToPOmega => MonadTag::POmega,
            EmbeddingTag::BotToSubDist | EmbeddingTag::DistToSubDist => MonadTag::SubDist,
        }
    }
}

impl fmt::Display for EmbeddingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E[{}->{}]", self.source(), self.target())
    }
}

/// Applies an embedding; `⊥` goes to `∅` or `Σ∅`, everything else is
/// read as the same set or sum in the larger model.
pub fn embed<M: Morphism>(tag: EmbeddingTag, m: &Em<M>) -> Result<Em<M>, EnrichError> {
    if m.tag() != tag.source() {
        return Err(EnrichError::TagMismatch {
            left: tag.source(),
            right: m.tag(),
        });
    }
    let hom = match m.hom() {
        MonadElement::Lift(None) => MonadElement::bottom(tag.target()).expect("target has bottom"),
        MonadElement::Lift(Some(f)) => MonadElement::unit(tag.target(), f.clone()),
        MonadElement::PPlus(s) => MonadElement::POmega(s.clone()),
        MonadElement::Dist(w) => MonadElement::SubDist(w.clone()),
        _ => unreachable!("source tag checked above"),
    };
    Em::new(m.src().clone(), m.tgt().clone(), hom)
}

/// Checks that `functor` preserves identities, composition, tensor and
/// dagger on `samples` seeded morphisms of the `source` model. The
/// composable pairs in `extra` are checked first.
pub fn check_functor<M: RandomArrow>(
    title: impl Into<String>,
    source: MonadTag,
    target: MonadTag,
    functor: impl Fn(&Em<M>) -> Result<Em<M>, EnrichError>,
    extra: &[(Em<M>, Em<M>)],
    samples: usize,
    seed: u64,
) -> Report {
    let mut s = Sampler::<M>::new(seed);
    let mut id = Check::new("E(id) = id");
    let mut comp = Check::new("E(g∘f) = E(g)∘E(f)");
    let mut tensor = Check::new("E(f⊗g) = E(f)⊗E(g)");
    let mut dagger = Check::new("E(f†) = E(f)†");

    let compare = |check: &mut Check, input: String, l: Result<Em<M>, EnrichError>, r: Result<Em<M>, EnrichError>| {
        match (l, r) {
            (Ok(l), Ok(r)) => {
                check.expect_eq(|| input, &l, &r);
            }
            (l, r) => check.fail(input, format!("{:?} / {:?}", l.err(), r.err())),
        }
    };

    for (f, g) in extra {
        compare(
            &mut comp,
            format!("{} ; {}", f.render(), g.render()),
            g.compose_after(f).and_then(|gf| functor(&gf)),
            functor(g).and_then(|eg| functor(f).and_then(|ef| eg.compose_after(&ef))),
        );
    }

    for _ in 0..samples {
        let (a, b, c) = (s.object(), s.object(), s.object());
        compare(
            &mut id,
            format!("{a:?}"),
            functor(&Em::identity(source, &a)),
            Ok(Em::identity(target, &a)),
        );

        let f = s.enriched(source, &a, &b);
        let g = s.enriched(source, &b, &c);
        let input = format!("{} ; {}", f.render(), g.render());
        compare(
            &mut comp,
            input.clone(),
            g.compose_after(&f).and_then(|gf| functor(&gf)),
            functor(&g).and_then(|eg| functor(&f).and_then(|ef| eg.compose_after(&ef))),
        );
        compare(
            &mut tensor,
            input,
            f.tensor(&g).and_then(|t| functor(&t)),
            functor(&f).and_then(|ef| functor(&g).and_then(|eg| ef.tensor(&eg))),
        );
        compare(
            &mut dagger,
            f.render(),
            functor(&f.dagger()),
            functor(&f).map(|ef| ef.dagger()),
        );
    }

    let mut report = Report::new(title);
    for c in [id, comp, tensor, dagger] {
        report.push(c);
    }
    report
}

pub fn check_embedding_functorial<M: RandomArrow>(tag: EmbeddingTag, samples: usize, seed: u64) -> Report {
    check_functor::<M>(
        format!("functoriality of {tag}"),
        tag.source(),
        tag.target(),
        |m| embed(tag, m),
        &[],
        samples,
        seed,
    )
}

/// Negative control: `E[lift->subdist]` altered to send `⊥` to the
/// point mass on the identity (on the full relation off the diagonal of
/// objects).
pub fn corrupted_bot_to_subdist(
    m: &Em<crate::base::RelMorphism>,
) -> Result<Em<crate::base::RelMorphism>, EnrichError> {
    use crate::base::RelMorphism;
    if m.tag() == MonadTag::Lift && m.is_bottom() {
        let f = if m.src() == m.tgt() {
            RelMorphism::identity(m.src())
        } else {
            RelMorphism::full(m.src().clone(), m.tgt().clone())
        };
        return Ok(Em::lift_base(f, MonadTag::SubDist));
    }
    embed(EmbeddingTag::BotToSubDist, m)
}

/// The two embeddings out of `C_⊥` agree after forgetting weights:
/// `supp(E[lift->subdist](m)) = E[lift->pomega](m)`.
pub fn check_embedding_square<M: RandomArrow>(samples: usize, seed: u64) -> Report {
    let mut s = Sampler::<M>::new(seed);
    let mut check = Check::new("supp ∘ E[lift->subdist] = E[lift->pomega]");
    for _ in 0..samples {
        let (a, b) = (s.object(), s.object());
        let m = s.enriched(MonadTag::Lift, &a, &b);
        let via_s = embed(EmbeddingTag::BotToSubDist, &m).and_then(|e| {
            Em::from_set(MonadTag::POmega, a.clone(), b.clone(), e.support().into_iter().cloned())
        });
        let direct = embed(EmbeddingTag::BotToPOmega, &m);
        match (via_s, direct) {
            (Ok(l), Ok(r)) => {
                check.expect_eq(|| m.render(), &l, &r);
            }
            (l, r) => {
                check.expect(false, || Witness {
                    input: m.render(),
                    lhs: format!("{l:?}"),
                    rhs: format!("{r:?}"),
                });
            }
        }
    }
    let mut report = Report::new("embedding square");
    report.push(check);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::{FinSet, MatMorphism, RelMorphism};
    use crate::weight::ratio;

    #[test]
    fn embedding_examples() {
        let a = FinSet::numbered("A", 2);
        let bot = Em::<RelMorphism>::bottom(MonadTag::Lift, a.clone(), a.clone()).unwrap();
        assert_eq!(
            embed(EmbeddingTag::BotToPOmega, &bot).unwrap(),
            Em::from_set(MonadTag::POmega, a.clone(), a.clone(), []).unwrap()
        );
        let id = RelMorphism::identity(&a);
        let lifted = Em::lift_base(id.clone(), MonadTag::Lift);
        assert_eq!(
            embed(EmbeddingTag::BotToSubDist, &lifted).unwrap(),
            Em::lift_base(id.clone(), MonadTag::SubDist)
        );
        let full = RelMorphism::full(a.clone(), a.clone());
        let half = Em::from_sum(
            MonadTag::Dist,
            a.clone(),
            a.clone(),
            [(ratio(1, 2), id.clone()), (ratio(1, 2), full.clone())],
        )
        .unwrap();
        let sub = embed(EmbeddingTag::DistToSubDist, &half).unwrap();
        assert_eq!(sub.tag(), MonadTag::SubDist);
        assert_eq!(sub.hom().terms(), half.hom().terms());
        assert!(matches!(
            embed(EmbeddingTag::PPlusToPOmega, &half),
            Err(EnrichError::TagMismatch { .. })
        ));
    }

    #[test]
    fn embeddings_are_functors() {
        for tag in EmbeddingTag::ALL {
            let r = check_embedding_functorial::<RelMorphism>(tag, 40, 11);
            assert!(r.passed(), "{r}");
            let r = check_embedding_functorial::<MatMorphism>(tag, 10, 11);
            assert!(r.passed(), "{r}");
        }
        assert!(check_embedding_square::<RelMorphism>(50, 2).passed());
    }

    #[test]
    fn corrupted_embedding_is_caught() {
        let r = check_functor::<RelMorphism>(
            "corrupted",
            MonadTag::Lift,
            MonadTag::SubDist,
            corrupted_bot_to_subdist,
            &[],
            100,
            4,
        );
        assert!(!r.passed());
        assert!(!r.check("E(g∘f) = E(g)∘E(f)").unwrap().passed());
    }
}
