//! The five informational monads on finite sets.
//!
//! | tag       | `T X`                                   | reading                       |
//! |-----------|-----------------------------------------|-------------------------------|
//! | `Lift`    | `X + {⊥}`                               | missing information           |
//! | `PPlus`   | non-empty finite subsets                | unquantified ambiguity        |
//! | `POmega`  | finite subsets                          | ambiguity and missing info    |
//! | `Dist`    | finitely supported weights, total `1`   | quantified ambiguity          |
//! | `SubDist` | finitely supported weights, total `≤ 1` | quantified, possibly partial  |
//!
//! Elements are held in canonical form: sets are `BTreeSet`s and weight
//! maps never store zero entries, so structural equality is semantic
//! equality.

mod algebra;
mod enumerate;
mod iso;
mod laws;

pub use algebra::{check_em_algebra, em_samples, EmAlgebra};
pub use enumerate::{enumerate, random_element};
pub(crate) use enumerate::random_weights;
pub use iso::{
    check_pomega_iso, check_subdist_iso, dist_lifted_flatten, dist_lifted_to_subdist,
    lifted_pplus_flatten, lifted_pplus_to_pomega, pomega_to_lifted_pplus, subdist_to_dist_lifted,
};
pub use laws::{
    check_commutativity, check_monad_laws, check_monad_laws_with, check_relevant, is_affine,
    terminal_elements, MonadStructure, Native,
};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::report::Render;
use crate::weight::{format_weight, Weight};

#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum MonadTag {
    Lift,
    PPlus,
    POmega,
    Dist,
    SubDist,
}

impl MonadTag {
    pub const ALL: [MonadTag; 5] = [
        MonadTag::Lift,
        MonadTag::PPlus,
        MonadTag::POmega,
        MonadTag::Dist,
        MonadTag::SubDist,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MonadTag::Lift => "lift",
            MonadTag::PPlus => "pplus",
            MonadTag::POmega => "pomega",
            MonadTag::Dist => "dist",
            MonadTag::SubDist => "subdist",
        }
    }

    /// Whether `T X` is finite (and enumerable) for finite `X`.
    pub fn is_enumerable(self) -> bool {
        matches!(self, MonadTag::Lift | MonadTag::PPlus | MonadTag::POmega)
    }

    pub fn is_weighted(self) -> bool {
        matches!(self, MonadTag::Dist | MonadTag::SubDist)
    }
}

impl fmt::Display for MonadTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for MonadTag {
    type Err = MonadError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MonadTag::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| MonadError::UnknownTag(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonadError {
    #[error("element {0} is outside the function's domain")]
    Domain(String),
    #[error("malformed nesting: {0}")]
    Structure(String),
    #[error("invalid weights: {0}")]
    Weight(String),
    #[error("non-empty powerset element must have at least one member")]
    Empty,
    #[error("unknown monad `{0}`")]
    UnknownTag(String),
}

/// Strictly positive rational weights keyed by element, zero entries never stored.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightMap<X: Ord>(BTreeMap<X, Weight>);

impl<X: Ord> WeightMap<X> {
    pub fn empty() -> Self {
        WeightMap(BTreeMap::new())
    }

    /// Collects terms, adding the weights of equal keys and dropping zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (X, Weight)>) -> Result<Self, MonadError> {
        let mut map: BTreeMap<X, Weight> = BTreeMap::new();
        for (x, w) in terms {
            if w.is_negative() {
                return Err(MonadError::Weight(format!(
                    "negative weight {}",
                    format_weight(&w)
                )));
            }
            if w.is_zero() {
                continue;
            }
            *map.entry(x).or_insert_with(Weight::zero) += w;
        }
        Ok(WeightMap(map))
    }

    pub fn point(x: X) -> Self {
        WeightMap(BTreeMap::from([(x, Weight::one())]))
    }

    pub fn total(&self) -> Weight {
        self.0.values().sum()
    }

    pub fn get(&self, x: &X) -> Weight {
        self.0.get(x).cloned().unwrap_or_else(Weight::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&X, &Weight)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn keys(&self) -> impl Iterator<Item = &X> {
        self.0.keys()
    }

    pub fn as_map(&self) -> &BTreeMap<X, Weight> {
        &self.0
    }
}

impl<X: Ord + Render> Render for WeightMap<X> {
    fn render(&self) -> String {
        if self.0.is_empty() {
            return "Σ∅".to_string();
        }
        self.0.render()
    }
}

/// An element of `T X` for one of the five monads.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MonadElement<X: Ord> {
    /// `None` is `⊥`.
    Lift(Option<X>),
    /// Invariant: non-empty.
    PPlus(BTreeSet<X>),
    POmega(BTreeSet<X>),
    /// Invariant: total weight exactly one.
    Dist(WeightMap<X>),
    /// Invariant: total weight at most one.
    SubDist(WeightMap<X>),
}

impl<X: Ord + Clone> MonadElement<X> {
    pub fn tag(&self) -> MonadTag {
        match self {
            MonadElement::Lift(_) => MonadTag::Lift,
            MonadElement::PPlus(_) => MonadTag::PPlus,
            MonadElement::POmega(_) => MonadTag::POmega,
            MonadElement::Dist(_) => MonadTag::Dist,
            MonadElement::SubDist(_) => MonadTag::SubDist,
        }
    }

    /// `η_X(x)`: `x`, `{x}` or `δ_x`.
    pub fn unit(tag: MonadTag, x: X) -> Self {
        match tag {
            MonadTag::Lift => MonadElement::Lift(Some(x)),
            MonadTag::PPlus => MonadElement::PPlus(BTreeSet::from([x])),
            MonadTag::POmega => MonadElement::POmega(BTreeSet::from([x])),
            MonadTag::Dist => MonadElement::Dist(WeightMap::point(x)),
            MonadTag::SubDist => MonadElement::SubDist(WeightMap::point(x)),
        }
    }

    /// The distinguished "no information" element, where the monad has one:
    /// `⊥`, `∅`, or the empty formal sum.
    pub fn bottom(tag: MonadTag) -> Option<Self> {
        match tag {
            MonadTag::Lift => Some(MonadElement::Lift(None)),
            MonadTag::POmega => Some(MonadElement::POmega(BTreeSet::new())),
            MonadTag::SubDist => Some(MonadElement::SubDist(WeightMap::empty())),
            MonadTag::PPlus | MonadTag::Dist => None,
        }
    }

    pub fn pplus(items: impl IntoIterator<Item = X>) -> Result<Self, MonadError> {
        let set: BTreeSet<X> = items.into_iter().collect();
        if set.is_empty() {
            return Err(MonadError::Empty);
        }
        Ok(MonadElement::PPlus(set))
    }

    pub fn pomega(items: impl IntoIterator<Item = X>) -> Self {
        MonadElement::POmega(items.into_iter().collect())
    }

    /// A normalized formal sum; terms with equal keys are collected.
    pub fn dist(terms: impl IntoIterator<Item = (X, Weight)>) -> Result<Self, MonadError> {
        let map = WeightMap::from_terms(terms)?;
        if !map.total().is_one() {
            return Err(MonadError::Weight(format!(
                "distribution weights total {}, expected 1",
                format_weight(&map.total())
            )));
        }
        Ok(MonadElement::Dist(map))
    }

    /// A sub-normalized formal sum; terms with equal keys are collected.
    pub fn subdist(terms: impl IntoIterator<Item = (X, Weight)>) -> Result<Self, MonadError> {
        let map = WeightMap::from_terms(terms)?;
        if map.total() > Weight::one() {
            return Err(MonadError::Weight(format!(
                "subdistribution weights total {}, exceeding 1",
                format_weight(&map.total())
            )));
        }
        Ok(MonadElement::SubDist(map))
    }

    /// Checks the per-tag invariants; useful after deserialization.
    pub fn validate(&self) -> Result<(), MonadError> {
        match self {
            MonadElement::PPlus(s) if s.is_empty() => Err(MonadError::Empty),
            MonadElement::Dist(m) if !m.total().is_one() => Err(MonadError::Weight(format!(
                "distribution weights total {}",
                format_weight(&m.total())
            ))),
            MonadElement::SubDist(m) if m.total() > Weight::one() => Err(MonadError::Weight(
                format!("subdistribution weights total {}", format_weight(&m.total())),
            )),
            _ => Ok(()),
        }
    }

    /// The elements appearing with non-zero weight (or at all).
    pub fn support(&self) -> Vec<&X> {
        match self {
            MonadElement::Lift(x) => x.iter().collect(),
            MonadElement::PPlus(s) | MonadElement::POmega(s) => s.iter().collect(),
            MonadElement::Dist(m) | MonadElement::SubDist(m) => m.keys().collect(),
        }
    }

    /// Weighted view: sets and lifts get weight one per member.
    pub fn terms(&self) -> Vec<(&X, Weight)> {
        match self {
            MonadElement::Dist(m) | MonadElement::SubDist(m) => {
                m.iter().map(|(x, w)| (x, w.clone())).collect()
            }
            _ => self.support().into_iter().map(|x| (x, Weight::one())).collect(),
        }
    }

    pub fn is_bottom(&self) -> bool {
        match self {
            MonadElement::Lift(x) => x.is_none(),
            MonadElement::POmega(s) => s.is_empty(),
            MonadElement::SubDist(m) => m.is_empty(),
            _ => false,
        }
    }

    /// Functor action; weights of merged preimages are summed.
    pub fn map<Y: Ord + Clone>(&self, mut f: impl FnMut(&X) -> Y) -> MonadElement<Y> {
        self.try_map(|x| Ok::<Y, std::convert::Infallible>(f(x)))
            .unwrap_or_else(|e| match e {})
    }

    pub fn try_map<Y: Ord + Clone, E>(
        &self,
        mut f: impl FnMut(&X) -> Result<Y, E>,
    ) -> Result<MonadElement<Y>, E> {
        Ok(match self {
            MonadElement::Lift(x) => MonadElement::Lift(x.as_ref().map(&mut f).transpose()?),
            MonadElement::PPlus(s) => {
                MonadElement::PPlus(s.iter().map(&mut f).collect::<Result<_, E>>()?)
            }
            MonadElement::POmega(s) => {
                MonadElement::POmega(s.iter().map(&mut f).collect::<Result<_, E>>()?)
            }
            MonadElement::Dist(m) => MonadElement::Dist(map_weights(m, f)?),
            MonadElement::SubDist(m) => MonadElement::SubDist(map_weights(m, f)?),
        })
    }

    /// Functor action of a finite function given as a table.
    pub fn map_finite<Y: Ord + Clone>(
        &self,
        table: &BTreeMap<X, Y>,
    ) -> Result<MonadElement<Y>, MonadError>
    where
        X: Render,
    {
        self.try_map(|x| {
            table
                .get(x)
                .cloned()
                .ok_or_else(|| MonadError::Domain(x.render()))
        })
    }

    /// `μ_X`: union for the powersets, weighted flattening for sums.
    pub fn flatten(nested: &MonadElement<MonadElement<X>>) -> Result<Self, MonadError> {
        let tag = nested.tag();
        for inner in nested.support() {
            if inner.tag() != tag {
                return Err(MonadError::Structure(format!(
                    "{} element nested inside {}",
                    inner.tag(),
                    tag
                )));
            }
        }
        Ok(match nested {
            MonadElement::Lift(None) => MonadElement::Lift(None),
            MonadElement::Lift(Some(inner)) => inner.clone(),
            MonadElement::PPlus(s) => MonadElement::PPlus(union_all(s)),
            MonadElement::POmega(s) => MonadElement::POmega(union_all(s)),
            MonadElement::Dist(m) => MonadElement::Dist(flatten_weights(m)?),
            MonadElement::SubDist(m) => MonadElement::SubDist(flatten_weights(m)?),
        })
    }

    /// Kleisli extension.
    pub fn bind<Y: Ord + Clone>(
        &self,
        f: impl FnMut(&X) -> MonadElement<Y>,
    ) -> Result<MonadElement<Y>, MonadError> {
        MonadElement::flatten(&self.map(f))
    }

    /// `st : A × T B → T(A × B)`
    pub fn strength<A: Ord + Clone>(a: &A, t: &Self) -> MonadElement<(A, X)> {
        t.map(|x| (a.clone(), x.clone()))
    }

    /// `cst : T A × B → T(A × B)`
    pub fn costrength<B: Ord + Clone>(t: &Self, b: &B) -> MonadElement<(X, B)> {
        t.map(|x| (x.clone(), b.clone()))
    }

    /// `dst = μ ∘ T(cst) ∘ st : T A × T B → T(A × B)`.
    pub fn double_strength<Y: Ord + Clone>(
        t: &Self,
        u: &MonadElement<Y>,
    ) -> Result<MonadElement<(X, Y)>, MonadError> {
        let st = MonadElement::<Y>::strength(t, u);
        let inner = st.map(|(ta, b)| MonadElement::<X>::costrength(ta, b));
        MonadElement::flatten(&inner)
    }

    /// The other candidate, `μ ∘ T(st) ∘ cst`. Coincides with
    /// [`double_strength`](Self::double_strength) exactly when the monad is
    /// commutative.
    pub fn double_strength_alt<Y: Ord + Clone>(
        t: &Self,
        u: &MonadElement<Y>,
    ) -> Result<MonadElement<(X, Y)>, MonadError> {
        let cst = MonadElement::<X>::costrength(t, u);
        let inner = cst.map(|(a, tb)| MonadElement::<Y>::strength(a, tb));
        MonadElement::flatten(&inner)
    }
}

fn map_weights<X: Ord, Y: Ord, E>(
    m: &WeightMap<X>,
    mut f: impl FnMut(&X) -> Result<Y, E>,
) -> Result<WeightMap<Y>, E> {
    let mut out: BTreeMap<Y, Weight> = BTreeMap::new();
    for (x, w) in m.iter() {
        *out.entry(f(x)?).or_insert_with(Weight::zero) += w;
    }
    Ok(WeightMap(out))
}

fn union_all<X: Ord + Clone>(sets: &BTreeSet<MonadElement<X>>) -> BTreeSet<X> {
    sets.iter()
        .flat_map(|inner| inner.support().into_iter().cloned())
        .collect()
}

fn flatten_weights<X: Ord + Clone>(
    m: &WeightMap<MonadElement<X>>,
) -> Result<WeightMap<X>, MonadError> {
    let mut terms = Vec::new();
    for (inner, p) in m.iter() {
        for (x, q) in inner.terms() {
            terms.push((x.clone(), p * q));
        }
    }
    WeightMap::from_terms(terms)
}

impl<X: Ord + Clone + Render> Render for MonadElement<X> {
    fn render(&self) -> String {
        match self {
            MonadElement::Lift(x) => x.render(),
            MonadElement::PPlus(s) | MonadElement::POmega(s) => s.render(),
            MonadElement::Dist(m) | MonadElement::SubDist(m) => m.render(),
        }
    }
}

impl<X: Ord + Clone + Render> fmt::Display for MonadElement<X> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.tag(), self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::{one, ratio};

    fn d(terms: &[(char, Weight)]) -> MonadElement<char> {
        MonadElement::dist(terms.iter().cloned()).unwrap()
    }

    #[test]
    fn lift_map_fixes_bottom() {
        let bot: MonadElement<u8> = MonadElement::Lift(None);
        assert_eq!(bot.map(|x| x + 1), MonadElement::Lift(None));
    }

    #[test]
    fn dist_map_sums_preimages() {
        let t = d(&[('a', ratio(1, 2)), ('b', ratio(1, 2))]);
        let image = t.map(|_| 'c');
        assert_eq!(image, d(&[('c', one())]));
    }

    #[test]
    fn pomega_map_of_empty() {
        let e: MonadElement<u8> = MonadElement::pomega([]);
        assert_eq!(e.map(|x| x * 2), MonadElement::pomega([]));
    }

    #[test]
    fn map_finite_reports_domain_errors() {
        let table = BTreeMap::from([(0u8, 1u8)]);
        let t = MonadElement::pomega([0u8, 1]);
        assert_eq!(t.map_finite(&table), Err(MonadError::Domain("1".into())));
        let ok = MonadElement::pomega([0u8]).map_finite(&table).unwrap();
        assert_eq!(ok, MonadElement::pomega([1u8]));
    }

    #[test]
    fn units() {
        assert_eq!(MonadElement::unit(MonadTag::Lift, 3u8), MonadElement::Lift(Some(3)));
        assert_eq!(
            MonadElement::unit(MonadTag::PPlus, 'x'),
            MonadElement::pplus(['x']).unwrap()
        );
        assert_eq!(MonadElement::unit(MonadTag::Dist, 'x'), d(&[('x', one())]));
    }

    #[test]
    fn flatten_examples() {
        let a = MonadElement::pomega(['a']);
        let ab = MonadElement::pomega(['a', 'b']);
        let tt = MonadElement::pomega([a, ab.clone()]);
        assert_eq!(MonadElement::flatten(&tt).unwrap(), ab);

        let inner1 = d(&[('a', one())]);
        let inner2 = d(&[('a', ratio(1, 2)), ('b', ratio(1, 2))]);
        let tt = MonadElement::dist([(inner1, ratio(1, 2)), (inner2, ratio(1, 2))]).unwrap();
        assert_eq!(
            MonadElement::flatten(&tt).unwrap(),
            d(&[('a', ratio(3, 4)), ('b', ratio(1, 4))])
        );

        let empty: MonadElement<char> = MonadElement::subdist([]).unwrap();
        let tt = MonadElement::subdist([(empty, ratio(1, 2))]).unwrap();
        assert_eq!(
            MonadElement::flatten(&tt).unwrap(),
            MonadElement::subdist([]).unwrap()
        );
    }

    #[test]
    fn flatten_rejects_mixed_tags() {
        let tt = MonadElement::pomega([MonadElement::Lift(Some('a'))]);
        assert!(matches!(
            MonadElement::flatten(&tt),
            Err(MonadError::Structure(_))
        ));
    }

    #[test]
    fn double_strength_examples() {
        let t = MonadElement::pplus(['a', 'b']).unwrap();
        let u = MonadElement::pplus(['c', 'd']).unwrap();
        let expected =
            MonadElement::pplus([('a', 'c'), ('a', 'd'), ('b', 'c'), ('b', 'd')]).unwrap();
        assert_eq!(MonadElement::double_strength(&t, &u).unwrap(), expected);
        assert_eq!(MonadElement::double_strength_alt(&t, &u).unwrap(), expected);

        let t = d(&[('a', ratio(1, 2)), ('b', ratio(1, 2))]);
        let u = d(&[('c', one())]);
        let expected =
            MonadElement::dist([(('a', 'c'), ratio(1, 2)), (('b', 'c'), ratio(1, 2))]).unwrap();
        assert_eq!(MonadElement::double_strength(&t, &u).unwrap(), expected);

        let bot: MonadElement<char> = MonadElement::Lift(None);
        let y = MonadElement::Lift(Some('y'));
        assert_eq!(
            MonadElement::double_strength(&bot, &y).unwrap(),
            MonadElement::Lift(None)
        );
    }

    #[test]
    fn weight_invariants_enforced() {
        assert!(MonadElement::dist([('a', ratio(6, 5))]).is_err());
        assert!(MonadElement::dist([('a', ratio(1, 2))]).is_err());
        assert!(MonadElement::subdist([('a', ratio(1, 2))]).is_ok());
        assert!(MonadElement::subdist([('a', ratio(3, 4)), ('b', ratio(1, 2))]).is_err());
        assert!(MonadElement::subdist([('a', ratio(-1, 2))]).is_err());
        assert_eq!(MonadElement::<u8>::pplus([]), Err(MonadError::Empty));
    }

    #[test]
    fn zero_weights_not_stored_and_equal_terms_collect() {
        let m = MonadElement::dist([
            ('a', ratio(1, 4)),
            ('a', ratio(1, 4)),
            ('b', ratio(1, 2)),
            ('c', ratio(0, 1)),
        ])
        .unwrap();
        assert_eq!(m, d(&[('a', ratio(1, 2)), ('b', ratio(1, 2))]));
        assert_eq!(m.support().len(), 2);
    }

    #[test]
    fn idempotence_of_affine_theories() {
        let s = MonadElement::pplus(['x', 'x']).unwrap();
        assert_eq!(s, MonadElement::unit(MonadTag::PPlus, 'x'));
        let m = MonadElement::dist([('x', ratio(1, 3)), ('x', ratio(2, 3))]).unwrap();
        assert_eq!(m, MonadElement::unit(MonadTag::Dist, 'x'));
    }

    #[test]
    fn tag_round_trip() {
        for t in MonadTag::ALL {
            assert_eq!(t.name().parse::<MonadTag>().unwrap(), t);
        }
        assert!("bogus".parse::<MonadTag>().is_err());
    }
}
