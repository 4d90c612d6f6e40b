//! Exhaustive enumeration of `T X` (where finite) and seeded generation
//! of elements (everywhere).

use rand::seq::SliceRandom;
use rand::Rng;

use super::{MonadElement, MonadTag};
use crate::weight::{integer, Weight};

/// All elements of `T X`, or `None` for the weighted monads.
pub fn enumerate<X: Ord + Clone>(tag: MonadTag, carrier: &[X]) -> Option<Vec<MonadElement<X>>> {
    match tag {
        MonadTag::Lift => Some(
            std::iter::once(MonadElement::Lift(None))
                .chain(carrier.iter().cloned().map(|x| MonadElement::Lift(Some(x))))
                .collect(),
        ),
        MonadTag::POmega => Some(subsets(carrier).map(MonadElement::pomega).collect()),
        MonadTag::PPlus => Some(
            subsets(carrier)
                .filter(|s| !s.is_empty())
                .map(|s| MonadElement::PPlus(s.into_iter().collect()))
                .collect(),
        ),
        MonadTag::Dist | MonadTag::SubDist => None,
    }
}

/// Subsets of `carrier` as vectors, in bitmask order.
pub(crate) fn subsets<X: Clone>(carrier: &[X]) -> impl Iterator<Item = Vec<X>> + '_ {
    assert!(carrier.len() < 32, "carrier too large to enumerate subsets");
    (0u32..(1u32 << carrier.len())).map(move |mask| {
        carrier
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, x)| x.clone())
            .collect()
    })
}

/// `k` positive integer weights normalized to total `1`, or to a random
/// total in `(0, 1]` when `deficit` is set.
pub(crate) fn random_weights<R: Rng>(k: usize, deficit: bool, rng: &mut R) -> Vec<Weight> {
    let raw: Vec<i64> = (0..k).map(|_| rng.gen_range(1..=6)).collect();
    let slack: i64 = if deficit { rng.gen_range(0..=6) } else { 0 };
    let total: i64 = raw.iter().sum::<i64>() + slack;
    raw.into_iter()
        .map(|w| integer(w) / integer(total))
        .collect()
}

/// A seeded element of `T X`; `None` when `T X` is empty.
pub fn random_element<X: Ord + Clone, R: Rng>(
    tag: MonadTag,
    carrier: &[X],
    rng: &mut R,
) -> Option<MonadElement<X>> {
    let pick = |rng: &mut R, min: usize| -> Option<Vec<X>> {
        if carrier.len() < min {
            return None;
        }
        let k = rng.gen_range(min..=carrier.len().min(3).max(min));
        Some(carrier.choose_multiple(rng, k).cloned().collect())
    };
    match tag {
        MonadTag::Lift => {
            if carrier.is_empty() || rng.gen_ratio(1, 4) {
                Some(MonadElement::Lift(None))
            } else {
                carrier.choose(rng).cloned().map(|x| MonadElement::Lift(Some(x)))
            }
        }
        MonadTag::PPlus => pick(rng, 1).map(|xs| MonadElement::PPlus(xs.into_iter().collect())),
        MonadTag::POmega => pick(rng, 0).map(MonadElement::pomega),
        MonadTag::Dist => pick(rng, 1).map(|xs| {
            let ws = random_weights(xs.len(), false, rng);
            MonadElement::dist(xs.into_iter().zip(ws)).expect("normalized weights")
        }),
        MonadTag::SubDist => pick(rng, 0).map(|xs| {
            let ws = random_weights(xs.len(), true, rng);
            MonadElement::subdist(xs.into_iter().zip(ws)).expect("sub-normalized weights")
        }),
    }
}

/// Hand-picked corner cases: point masses, uniform pairs and (where the
/// monad has one) the bottom element.
pub(crate) fn corner_cases<X: Ord + Clone>(tag: MonadTag, carrier: &[X]) -> Vec<MonadElement<X>> {
    let mut out: Vec<MonadElement<X>> = carrier
        .iter()
        .map(|x| MonadElement::unit(tag, x.clone()))
        .collect();
    if let Some(b) = MonadElement::bottom(tag) {
        out.push(b);
    }
    if carrier.len() >= 2 {
        let pair = [carrier[0].clone(), carrier[1].clone()];
        let half = crate::weight::ratio(1, 2);
        let uniform = match tag {
            MonadTag::Lift => None,
            MonadTag::PPlus => MonadElement::pplus(pair).ok(),
            MonadTag::POmega => Some(MonadElement::pomega(pair)),
            MonadTag::Dist => MonadElement::dist(pair.map(|x| (x, half.clone()))).ok(),
            MonadTag::SubDist => MonadElement::subdist(pair.map(|x| (x, half.clone()))).ok(),
        };
        out.extend(uniform);
    }
    if tag == MonadTag::SubDist {
        if let Some(x) = carrier.first() {
            out.push(
                MonadElement::subdist([(x.clone(), crate::weight::ratio(1, 3))])
                    .expect("1/3 is sub-normalized"),
            );
        }
    }
    out
}

/// Deterministic sample of `T X`: all elements when enumerable, otherwise
/// corner cases followed by seeded random elements up to `count`.
pub(crate) fn sample_elements<X: Ord + Clone, R: Rng>(
    tag: MonadTag,
    carrier: &[X],
    count: usize,
    rng: &mut R,
) -> Vec<MonadElement<X>> {
    if let Some(all) = enumerate(tag, carrier) {
        return all;
    }
    let mut out = corner_cases(tag, carrier);
    while out.len() < count {
        match random_element(tag, carrier, rng) {
            Some(e) => out.push(e),
            None => break,
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn enumeration_sizes() {
        let x = [0u8, 1, 2];
        assert_eq!(enumerate(MonadTag::Lift, &x).unwrap().len(), 4);
        assert_eq!(enumerate(MonadTag::PPlus, &x).unwrap().len(), 7);
        assert_eq!(enumerate(MonadTag::POmega, &x).unwrap().len(), 8);
        assert!(enumerate(MonadTag::Dist, &x).is_none());
        let none: [u8; 0] = [];
        assert_eq!(enumerate(MonadTag::PPlus, &none).unwrap().len(), 0);
        assert_eq!(enumerate(MonadTag::POmega, &none).unwrap().len(), 1);
    }

    #[test]
    fn random_elements_are_valid_and_deterministic() {
        let x = [0u8, 1, 2];
        for tag in MonadTag::ALL {
            let mut r1 = ChaCha8Rng::seed_from_u64(7);
            let mut r2 = ChaCha8Rng::seed_from_u64(7);
            for _ in 0..50 {
                let a = random_element(tag, &x, &mut r1).unwrap();
                let b = random_element(tag, &x, &mut r2).unwrap();
                a.validate().unwrap();
                assert_eq!(a, b);
            }
        }
    }
}
