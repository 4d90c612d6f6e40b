//! The composite-monad isomorphisms `Pω X ≅ (P⁺ X)_⊥` and `S X ≅ D(X_⊥)`.
//!
//! Each target side comes with its own multiplication, written directly
//! on the composite representation, so that the isomorphisms can be
//! checked against unit and multiplication rather than only as bijections.

use num::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::enumerate::sample_elements;
use super::{MonadElement, MonadError, MonadTag};
use crate::report::{Check, Render, Report};
use crate::weight::Weight;

fn expect_tag<X: Ord + Clone>(
    t: &MonadElement<X>,
    wanted: super::MonadTag,
) -> Result<(), MonadError> {
    if t.tag() == wanted {
        Ok(())
    } else {
        Err(MonadError::Structure(format!(
            "expected a {wanted} element, found {}",
            t.tag()
        )))
    }
}

/// `∅ ↦ ⊥`, `U ↦ U`.
pub fn pomega_to_lifted_pplus<X: Ord + Clone>(
    t: &MonadElement<X>,
) -> Result<MonadElement<MonadElement<X>>, MonadError> {
    match t {
        MonadElement::POmega(s) if s.is_empty() => Ok(MonadElement::Lift(None)),
        MonadElement::POmega(s) => Ok(MonadElement::Lift(Some(MonadElement::PPlus(s.clone())))),
        other => {
            expect_tag(other, MonadTag::POmega)?;
            unreachable!()
        }
    }
}

pub fn lifted_pplus_to_pomega<X: Ord + Clone>(
    t: &MonadElement<MonadElement<X>>,
) -> Result<MonadElement<X>, MonadError> {
    match t {
        MonadElement::Lift(None) => Ok(MonadElement::pomega([])),
        MonadElement::Lift(Some(MonadElement::PPlus(s))) => Ok(MonadElement::POmega(s.clone())),
        _ => Err(MonadError::Structure(
            "expected a lifted non-empty powerset element".into(),
        )),
    }
}

/// Multiplication of the composite `(P⁺ -)_⊥`: discard `⊥` members, take
/// the union of what remains, and return `⊥` if nothing remains.
pub fn lifted_pplus_flatten<X: Ord + Clone>(
    nested: &MonadElement<MonadElement<MonadElement<MonadElement<X>>>>,
) -> Result<MonadElement<MonadElement<X>>, MonadError> {
    let outer = match nested {
        MonadElement::Lift(None) => return Ok(MonadElement::Lift(None)),
        MonadElement::Lift(Some(MonadElement::PPlus(s))) => s,
        _ => {
            return Err(MonadError::Structure(
                "expected a lifted non-empty powerset element".into(),
            ))
        }
    };
    let mut union = std::collections::BTreeSet::new();
    for member in outer {
        match member {
            MonadElement::Lift(None) => {}
            MonadElement::Lift(Some(MonadElement::PPlus(inner))) => {
                union.extend(inner.iter().cloned())
            }
            _ => {
                return Err(MonadError::Structure(
                    "inner member is not a lifted non-empty powerset element".into(),
                ))
            }
        }
    }
    if union.is_empty() {
        Ok(MonadElement::Lift(None))
    } else {
        Ok(MonadElement::Lift(Some(MonadElement::PPlus(union))))
    }
}

/// Missing mass becomes weight on `⊥` (`None`).
pub fn subdist_to_dist_lifted<X: Ord + Clone>(
    t: &MonadElement<X>,
) -> Result<MonadElement<Option<X>>, MonadError> {
    let MonadElement::SubDist(m) = t else {
        expect_tag(t, MonadTag::SubDist)?;
        unreachable!()
    };
    let missing = Weight::one() - m.total();
    let terms = m
        .iter()
        .map(|(x, w)| (Some(x.clone()), w.clone()))
        .chain(std::iter::once((None, missing)));
    MonadElement::dist(terms)
}

pub fn dist_lifted_to_subdist<X: Ord + Clone>(
    t: &MonadElement<Option<X>>,
) -> Result<MonadElement<X>, MonadError> {
    let MonadElement::Dist(m) = t else {
        expect_tag(t, MonadTag::Dist)?;
        unreachable!()
    };
    MonadElement::subdist(
        m.iter()
            .filter_map(|(x, w)| x.as_ref().map(|x| (x.clone(), w.clone()))),
    )
}

/// Multiplication of the composite `D(-_⊥)`: weight on an outer `⊥`
/// stays on `⊥`, everything else flattens as in `D`.
pub fn dist_lifted_flatten<X: Ord + Clone>(
    nested: &MonadElement<Option<MonadElement<Option<X>>>>,
) -> Result<MonadElement<Option<X>>, MonadError> {
    let MonadElement::Dist(outer) = nested else {
        return Err(MonadError::Structure(
            "expected a distribution over lifted distributions".into(),
        ));
    };
    let mut terms: Vec<(Option<X>, Weight)> = Vec::new();
    for (member, p) in outer.iter() {
        match member {
            None => terms.push((None, p.clone())),
            Some(MonadElement::Dist(inner)) => {
                terms.extend(inner.iter().map(|(x, q)| (x.clone(), p * q)))
            }
            Some(_) => {
                return Err(MonadError::Structure(
                    "inner member is not a distribution".into(),
                ))
            }
        }
    }
    MonadElement::dist(terms)
}

type Nested<X> = MonadElement<MonadElement<X>>;

fn compare<T: PartialEq + Render>(
    check: &mut Check,
    input: impl FnOnce() -> String,
    lhs: Result<T, MonadError>,
    rhs: Result<T, MonadError>,
) {
    match (lhs, rhs) {
        (Ok(l), Ok(r)) => {
            check.expect_eq(input, &l, &r);
        }
        (l, r) => check.fail(input(), format!("{:?} / {:?}", l.err(), r.err())),
    }
}

/// `Pω X ≅ (P⁺ X)_⊥` on `X = {0, .., size - 1}`: both round trips on every
/// element, the units, and the multiplications on every element of
/// `Pω Pω X`.
pub fn check_pomega_iso(size: u8) -> Report {
    let carrier: Vec<u8> = (0..size).collect();
    let tx = super::enumerate(MonadTag::POmega, &carrier).expect("enumerable");
    let pplus = super::enumerate(MonadTag::PPlus, &carrier).expect("enumerable");
    let composite: Vec<Nested<u8>> = std::iter::once(MonadElement::Lift(None))
        .chain(pplus.into_iter().map(|p| MonadElement::Lift(Some(p))))
        .collect();

    let mut there = Check::new("ψ∘φ = id on Pω X");
    for t in &tx {
        compare(&mut there, || t.render(), pomega_to_lifted_pplus(t).and_then(|c| lifted_pplus_to_pomega(&c)), Ok(t.clone()));
    }
    let mut back = Check::new("φ∘ψ = id on (P⁺ X)_⊥");
    for c in &composite {
        compare(&mut back, || c.render(), lifted_pplus_to_pomega(c).and_then(|t| pomega_to_lifted_pplus(&t)), Ok(c.clone()));
    }
    let mut unit = Check::new("φ∘η = η");
    for x in &carrier {
        compare(
            &mut unit,
            || x.render(),
            pomega_to_lifted_pplus(&MonadElement::unit(MonadTag::POmega, *x)),
            Ok(MonadElement::Lift(Some(MonadElement::unit(MonadTag::PPlus, *x)))),
        );
    }
    let mut mult = Check::new("φ∘μ = μ∘φ∘Pω(φ)");
    let ttx = super::enumerate(MonadTag::POmega, &tx).expect("enumerable");
    for tt in &ttx {
        let lhs = MonadElement::flatten(tt).and_then(|t| pomega_to_lifted_pplus(&t));
        let rhs = tt
            .try_map(pomega_to_lifted_pplus)
            .and_then(|mapped| pomega_to_lifted_pplus(&mapped))
            .and_then(|nested| lifted_pplus_flatten(&nested));
        compare(&mut mult, || tt.render(), lhs, rhs);
    }

    let mut report = Report::new(format!("Pω X ≅ (P⁺ X)_⊥ on |X|={size}"));
    for c in [there, back, unit, mult] {
        report.push(c);
    }
    report
}

/// `S X ≅ D(X_⊥)` on `X = {0, .., size - 1}` over `samples` seeded
/// elements at each level.
pub fn check_subdist_iso(size: u8, samples: usize, seed: u64) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let carrier: Vec<u8> = (0..size).collect();
    let lifted: Vec<Option<u8>> = std::iter::once(None).chain(carrier.iter().copied().map(Some)).collect();
    let tx = sample_elements(MonadTag::SubDist, &carrier, samples, &mut rng);
    let dx = sample_elements(MonadTag::Dist, &lifted, samples, &mut rng);

    let mut there = Check::new("ψ∘σ = id on S X");
    for t in &tx {
        compare(&mut there, || t.render(), subdist_to_dist_lifted(t).and_then(|d| dist_lifted_to_subdist(&d)), Ok(t.clone()));
    }
    let mut back = Check::new("σ∘ψ = id on D(X_⊥)");
    for d in &dx {
        compare(&mut back, || d.render(), dist_lifted_to_subdist(d).and_then(|t| subdist_to_dist_lifted(&t)), Ok(d.clone()));
    }
    let mut unit = Check::new("σ∘η = η");
    for x in &carrier {
        compare(
            &mut unit,
            || x.render(),
            subdist_to_dist_lifted(&MonadElement::unit(MonadTag::SubDist, *x)),
            Ok(MonadElement::unit(MonadTag::Dist, Some(*x))),
        );
    }
    let mut mult = Check::new("σ∘μ = μ∘σ∘S(σ)");
    let inner: Vec<_> = tx.iter().take(8).cloned().collect();
    for tt in sample_elements(MonadTag::SubDist, &inner, samples, &mut rng) {
        let lhs = MonadElement::flatten(&tt).and_then(|t| subdist_to_dist_lifted(&t));
        let rhs = tt
            .try_map(subdist_to_dist_lifted)
            .and_then(|mapped| subdist_to_dist_lifted(&mapped))
            .and_then(|nested| dist_lifted_flatten(&nested));
        compare(&mut mult, || tt.render(), lhs, rhs);
    }

    let mut report = Report::new(format!("S X ≅ D(X_⊥) on |X|={size}"));
    for c in [there, back, unit, mult] {
        report.push(c);
    }
    report
}
