//! Enumerable homsets and scalars of the enrichments over FinRel.

use num::{One, Zero};

use super::EnrichedMorphism;
use crate::base::{FinSet, Morphism, RelMorphism};
use crate::monads::{enumerate, MonadTag};
use crate::weight::Weight;

/// The identity scalar of FinRel, read as "true".
pub fn rel_scalar_true() -> RelMorphism {
    RelMorphism::identity(&FinSet::unit())
}

/// The empty scalar of FinRel, read as "false".
pub fn rel_scalar_false() -> RelMorphism {
    RelMorphism::empty(FinSet::unit(), FinSet::unit())
}

/// Every element of `C_T(src, tgt)` over FinRel; `None` for the weighted
/// models, whose homsets are infinite.
pub fn enumerate_homset(
    tag: MonadTag,
    src: &FinSet,
    tgt: &FinSet,
) -> Option<Vec<EnrichedMorphism<RelMorphism>>> {
    let cells = src.len() * tgt.len();
    let base: Vec<RelMorphism> = (0u64..1 << cells)
        .map(|mask| {
            let bits = (0..cells).map(|i| mask >> i & 1 == 1).collect();
            RelMorphism::from_bits(src.clone(), tgt.clone(), bits).expect("sized to fit")
        })
        .collect();
    let elems = enumerate(tag, &base)?;
    Some(
        elems
            .into_iter()
            .map(|hom| {
                EnrichedMorphism::new(src.clone(), tgt.clone(), hom).expect("homset members")
            })
            .collect(),
    )
}

/// `p|true⟩ + (1−p)|false⟩` in `(FinRel)_D(I, I)`.
pub fn scalar_from_probability(p: &Weight) -> EnrichedMorphism<RelMorphism> {
    let unit = FinSet::unit();
    EnrichedMorphism::from_sum(
        MonadTag::Dist,
        unit.clone(),
        unit,
        [
            (p.clone(), rel_scalar_true()),
            (Weight::one() - p, rel_scalar_false()),
        ],
    )
    .expect("p lies in [0, 1]")
}

/// Inverse of [`scalar_from_probability`]: the weight on "true" of a
/// `Dist` scalar.
pub fn probability_of_scalar(m: &EnrichedMorphism<RelMorphism>) -> Option<Weight> {
    let unit = FinSet::unit();
    if m.tag() != MonadTag::Dist || m.src != unit || m.tgt != unit {
        return None;
    }
    let truth = rel_scalar_true();
    Some(
        m.hom
            .terms()
            .into_iter()
            .find(|(f, _)| **f == truth)
            .map(|(_, w)| w)
            .unwrap_or_else(Weight::zero),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::ratio;

    #[test]
    fn three_lift_scalars() {
        let unit = FinSet::unit();
        let scalars = enumerate_homset(MonadTag::Lift, &unit, &unit).unwrap();
        assert_eq!(scalars.len(), 3);
        assert_eq!(scalars.iter().filter(|s| s.is_bottom()).count(), 1);
    }

    #[test]
    fn powerset_scalar_counts() {
        let unit = FinSet::unit();
        assert_eq!(enumerate_homset(MonadTag::PPlus, &unit, &unit).unwrap().len(), 3);
        assert_eq!(enumerate_homset(MonadTag::POmega, &unit, &unit).unwrap().len(), 4);
        assert!(enumerate_homset(MonadTag::Dist, &unit, &unit).is_none());
    }

    #[test]
    fn probability_round_trip_and_product() {
        let p = ratio(2, 3);
        let q = ratio(3, 5);
        let sp = scalar_from_probability(&p);
        assert_eq!(probability_of_scalar(&sp), Some(p.clone()));
        let prod = scalar_from_probability(&q).compose_after(&sp).unwrap();
        assert_eq!(prod, scalar_from_probability(&(&p * &q)));
        assert_eq!(probability_of_scalar(&scalar_from_probability(&Weight::zero())), Some(Weight::zero()));
    }
}
