//! Seeded generators for base and enriched morphisms.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::base::{FinSet, MatMorphism, MatObj, Morphism, RelMorphism};
use crate::enrich::EnrichedMorphism;
use crate::monads::{random_element, MonadTag};
use crate::weight::{integer, ratio, Weight};

/// A base category that law suites can sample from.
pub trait RandomArrow: Morphism {
    /// Objects used by the suites, smallest first.
    fn object_pool() -> Vec<Self::Object>;

    fn random(src: &Self::Object, tgt: &Self::Object, rng: &mut ChaCha8Rng) -> Self;
}

impl RandomArrow for RelMorphism {
    fn object_pool() -> Vec<FinSet> {
        vec![
            FinSet::new("X1", ["a"]).expect("distinct"),
            FinSet::new("X2", ["a", "b"]).expect("distinct"),
            FinSet::new("X3", ["a", "b", "c"]).expect("distinct"),
        ]
    }

    fn random(src: &FinSet, tgt: &FinSet, rng: &mut ChaCha8Rng) -> Self {
        let bits = (0..src.len() * tgt.len()).map(|_| rng.gen_bool(0.5)).collect();
        RelMorphism::from_bits(src.clone(), tgt.clone(), bits).expect("sized to fit")
    }
}

impl RandomArrow for MatMorphism {
    fn object_pool() -> Vec<MatObj> {
        (1..=3).map(MatObj::of_dim).collect()
    }

    fn random(src: &MatObj, tgt: &MatObj, rng: &mut ChaCha8Rng) -> Self {
        let choices: [Weight; 5] = [integer(0), integer(1), integer(-1), integer(2), ratio(1, 2)];
        let rows = (0..tgt.dim())
            .map(|_| {
                (0..src.dim())
                    .map(|_| choices.choose(rng).expect("non-empty").clone())
                    .collect()
            })
            .collect();
        MatMorphism::from_rows(src.clone(), tgt.clone(), rows).expect("sized to fit")
    }
}

/// Deterministic source of objects and morphisms for one suite run.
pub struct Sampler<M: RandomArrow> {
    rng: ChaCha8Rng,
    pool: Vec<M::Object>,
}

impl<M: RandomArrow> Sampler<M> {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            pool: M::object_pool(),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn object(&mut self) -> M::Object {
        self.pool.choose(&mut self.rng).expect("non-empty pool").clone()
    }

    pub fn base(&mut self, src: &M::Object, tgt: &M::Object) -> M {
        M::random(src, tgt, &mut self.rng)
    }

    /// An element of `T(C(src, tgt))` drawn over up to three random base
    /// morphisms, so supports of size one to three (or empty) all occur.
    pub fn enriched(&mut self, tag: MonadTag, src: &M::Object, tgt: &M::Object) -> EnrichedMorphism<M> {
        let k = self.rng.gen_range(1..=3);
        let arrows: Vec<M> = (0..k).map(|_| self.base(src, tgt)).collect();
        let hom = random_element(tag, &arrows, &mut self.rng).expect("non-empty carrier");
        EnrichedMorphism::new(src.clone(), tgt.clone(), hom).expect("arrows share a homset")
    }

    /// Like [`enriched`](Self::enriched) but never the bottom element.
    pub fn enriched_proper(
        &mut self,
        tag: MonadTag,
        src: &M::Object,
        tgt: &M::Object,
    ) -> EnrichedMorphism<M> {
        loop {
            let m = self.enriched(tag, src, tgt);
            if !m.is_bottom() {
                return m;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::Arrow;

    #[test]
    fn same_seed_same_stream() {
        let mut a = Sampler::<RelMorphism>::new(9);
        let mut b = Sampler::<RelMorphism>::new(9);
        for _ in 0..20 {
            let (x, y) = (a.object(), a.object());
            assert_eq!(x, b.object());
            assert_eq!(y, b.object());
            assert_eq!(a.enriched(MonadTag::Dist, &x, &y), b.enriched(MonadTag::Dist, &x, &y));
        }
    }

    #[test]
    fn sampled_morphisms_are_well_typed() {
        let mut s = Sampler::<MatMorphism>::new(3);
        for tag in MonadTag::ALL {
            let (x, y) = (s.object(), s.object());
            let m = s.enriched(tag, &x, &y);
            assert_eq!(m.src(), &x);
            assert_eq!(m.tgt(), &y);
            assert!(m.hom().validate().is_ok());
        }
    }
}
