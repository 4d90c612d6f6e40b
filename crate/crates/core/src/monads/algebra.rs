//! Eilenberg-Moore algebras, checked pointwise.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::enumerate::sample_elements;
use super::{MonadElement, MonadError, MonadTag};
use crate::report::Render;

type Structure<'a, A> = Box<dyn Fn(&MonadElement<A>) -> Option<A> + 'a>;

/// A carrier with a structure map `T A → A`. The structure may be
/// partial; evaluating it outside its domain is a [`MonadError::Domain`].
pub struct EmAlgebra<'a, A: Ord> {
    pub carrier: Vec<A>,
    structure: Structure<'a, A>,
}

impl<'a, A: Ord + Clone + Render + 'a> EmAlgebra<'a, A> {
    pub fn new(
        carrier: Vec<A>,
        structure: impl Fn(&MonadElement<A>) -> Option<A> + 'a,
    ) -> Self {
        EmAlgebra {
            carrier,
            structure: Box::new(structure),
        }
    }

    /// The finite-join structure induced by a join semilattice with bottom,
    /// as a `POmega` (or `PPlus`, ignoring `bottom`) algebra.
    pub fn join_semilattice(
        carrier: Vec<A>,
        join: impl Fn(&A, &A) -> A + 'a,
        bottom: A,
    ) -> Self {
        EmAlgebra::new(carrier, move |t| match t {
            MonadElement::PPlus(s) | MonadElement::POmega(s) => {
                Some(s.iter().fold(bottom.clone(), |acc, x| join(&acc, x)))
            }
            _ => None,
        })
    }

    pub fn apply(&self, t: &MonadElement<A>) -> Result<A, MonadError> {
        (self.structure)(t).ok_or_else(|| MonadError::Domain(t.render()))
    }
}

/// Inputs for the multiplication law: all of `T T A` when it is small and
/// enumerable, seeded elements otherwise.
pub fn em_samples<A: Ord + Clone>(
    tag: MonadTag,
    carrier: &[A],
    samples: usize,
    seed: u64,
) -> Vec<MonadElement<MonadElement<A>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let small: Vec<A> = carrier.iter().take(3).cloned().collect();
    let ta = sample_elements(tag, &small, samples, &mut rng);
    let inner: Vec<_> = ta.iter().take(8).cloned().collect();
    sample_elements(tag, &inner, samples, &mut rng)
}

/// Verifies `a ∘ η = id` on the carrier and `a ∘ μ = a ∘ T a` on `samples`.
pub fn check_em_algebra<A: Ord + Clone + Render>(
    algebra: &EmAlgebra<'_, A>,
    tag: MonadTag,
    samples: &[MonadElement<MonadElement<A>>],
) -> Result<bool, MonadError> {
    for x in &algebra.carrier {
        if algebra.apply(&MonadElement::unit(tag, x.clone()))? != *x {
            return Ok(false);
        }
    }
    for tt in samples {
        let lhs = algebra.apply(&MonadElement::flatten(tt)?)?;
        let pushed = tt.try_map(|t| algebra.apply(t))?;
        let rhs = algebra.apply(&pushed)?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::{ratio, Weight};
    use num::Zero;

    #[test]
    fn two_element_join_semilattice() {
        let alg = EmAlgebra::join_semilattice(vec![0u8, 1], |a, b| *a.max(b), 0);
        let samples = em_samples(MonadTag::POmega, &alg.carrier, 50, 1);
        assert!(check_em_algebra(&alg, MonadTag::POmega, &samples).unwrap());
    }

    #[test]
    fn unit_interval_barycenter() {
        let carrier: Vec<Weight> = (0..=4).map(|i| ratio(i, 4)).collect();
        let alg = EmAlgebra::new(carrier, |t: &MonadElement<Weight>| match t {
            MonadElement::Dist(m) => Some(m.iter().map(|(x, p)| x * p).sum()),
            _ => None,
        });
        let samples = em_samples(MonadTag::Dist, &alg.carrier, 60, 2);
        assert!(check_em_algebra(&alg, MonadTag::Dist, &samples).unwrap());
    }

    #[test]
    fn unit_law_violation_detected() {
        let alg = EmAlgebra::join_semilattice(vec![0u8, 1], |a, b| *a.max(b), 0);
        let broken = EmAlgebra::new(alg.carrier.clone(), |t: &MonadElement<u8>| {
            alg.apply(t).ok().map(|x| 1 - x)
        });
        assert!(!check_em_algebra(&broken, MonadTag::POmega, &[]).unwrap());
    }

    #[test]
    fn undefined_structure_is_domain_error() {
        let alg = EmAlgebra::new(vec![Weight::zero()], |_t: &MonadElement<Weight>| None);
        assert!(matches!(
            check_em_algebra(&alg, MonadTag::Dist, &[]),
            Err(MonadError::Domain(_))
        ));
    }
}
