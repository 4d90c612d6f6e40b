//! States of CPM(Rel) on small carriers, read as a toy model of mixing.
//!
//! A state is a relation `R` on a carrier `X`. It is positive when
//! `R = S†∘S` for some relation `S : X → E`; it is pure when `R = A × A`.
//! Mixing two states is their union. [`find_anomalies`] enumerates every
//! positive state and looks for pure states that are unions of two mixed
//! ones, and for distinct pure states whose union is pure.
//! [`contrast_with_dist`] shows that the same mixtures in the
//! distribution model keep both states apart.

use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::base::{Arrow, FinSet, Morphism, RelMorphism};
use crate::enrich::{enr_mix, EnrichedMorphism};
use crate::monads::MonadTag;
use crate::report::{Check, Report, Witness};
use crate::sample::Sampler;
use crate::weight::{format_weight, one, ratio, Weight};

/// Largest carrier accepted by [`find_anomalies`]: 2^(4·4) relations.
pub const MAX_CARRIER: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CpmError {
    #[error("carrier size {0} exceeds the enumeration bound {MAX_CARRIER}")]
    Bound(usize),
}

/// The carrier `{a, b, ...}` of size `n`.
pub fn carrier(n: usize) -> FinSet {
    let labels: Vec<String> = (0..n)
        .map(|i| char::from(b'a' + i as u8).to_string())
        .collect();
    FinSet::new(format!("X{n}"), labels).expect("distinct labels")
}

/// `A × A` for the elements whose bit is set in `mask`.
pub fn square(x: &FinSet, mask: u32) -> RelMorphism {
    let n = x.len();
    let bits = (0..n * n)
        .map(|k| mask >> (k / n) & 1 == 1 && mask >> (k % n) & 1 == 1)
        .collect();
    RelMorphism::from_bits(x.clone(), x.clone(), bits).expect("square shape")
}

fn is_square(r: &RelMorphism) -> bool {
    r.src() == r.tgt()
}

/// Subsets `A` with `A × A ⊆ R`.
fn admissible(r: &RelMorphism) -> impl Iterator<Item = u32> + '_ {
    let n = r.src().len();
    (0..1u32 << n).filter(move |&mask| {
        (0..n).all(|i| {
            mask >> i & 1 == 0 || (0..n).all(|j| mask >> j & 1 == 0 || r.related(i, j))
        })
    })
}

/// `R = S†∘S` for some `S`. The rows of such an `S` give squares inside
/// `R` covering it, so it suffices to test whether the squares admitted
/// by `R` cover `R`.
pub fn is_positive(r: &RelMorphism) -> bool {
    if !is_square(r) {
        return false;
    }
    let x = r.src();
    let n = x.len();
    let mut covered = vec![false; n * n];
    for mask in admissible(r) {
        for (k, c) in covered.iter_mut().enumerate() {
            *c |= mask >> (k / n) & 1 == 1 && mask >> (k % n) & 1 == 1;
        }
    }
    covered.as_slice() == r.bits()
}

/// `R = A × A` for some subset `A`, the empty one included.
pub fn is_pure(r: &RelMorphism) -> bool {
    if !is_square(r) {
        return false;
    }
    let n = r.src().len();
    let a: u32 = (0..n).filter(|&i| r.related(i, i)).map(|i| 1 << i).sum();
    square(r.src(), a).bits() == r.bits()
}

/// Set notation: `{a,b}²` for pure states, a pair list otherwise.
pub fn describe(r: &RelMorphism) -> String {
    let x = r.src();
    let el = |i: usize| x.elements()[i].as_str();
    if is_pure(r) {
        let a: Vec<&str> = (0..x.len()).filter(|&i| r.related(i, i)).map(el).collect();
        return if a.is_empty() {
            "∅".into()
        } else {
            format!("{{{}}}²", a.join(","))
        };
    }
    let mut pairs = r.pairs();
    pairs.sort_unstable();
    let pairs: Vec<String> = pairs
        .into_iter()
        .map(|(s, t)| format!("{}{}", el(s), el(t)))
        .collect();
    format!("{{{}}}", pairs.join(", "))
}

/// A pure state obtained by mixing two mixed states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PureFromMixed {
    pub pure: RelMorphism,
    pub mixed: (RelMorphism, RelMorphism),
    /// Unordered mixed pairs with union `pure`.
    pub decompositions: usize,
}

/// Two distinct pure states whose mixture is pure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PureFromPure {
    pub left: RelMorphism,
    pub right: RelMorphism,
    pub union: RelMorphism,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Anomalies {
    pub size: usize,
    pub positive: Vec<RelMorphism>,
    pub pure_count: usize,
    pub pure_from_mixed: Vec<PureFromMixed>,
    pub pure_from_pure: Vec<PureFromPure>,
}

impl Anomalies {
    pub fn mixed_count(&self) -> usize {
        self.positive.len() - self.pure_count
    }

    pub fn report(&self) -> Report {
        let n = self.size;
        let mut report = Report::new(format!("CPM(Rel) anomalies on {n} elements"));

        let mut symmetric = Check::new("positive states are symmetric");
        for r in &self.positive {
            symmetric.expect_eq(|| describe(r), r, &r.dagger());
        }
        report.push(symmetric);

        let x = carrier(n);
        let mut rect = Check::new("pure states are positive");
        for mask in 0..1u32 << n {
            let p = square(&x, mask);
            rect.expect(is_positive(&p), || Witness {
                input: describe(&p),
                lhs: "not positive".into(),
                rhs: String::new(),
            });
        }
        report.push(rect);

        let mut first = Check::new("pure = mixed ∪ mixed has a witness");
        first.expect(!self.pure_from_mixed.is_empty(), || Witness {
            input: format!("n = {n}"),
            lhs: format!("no witness among {} mixed states", self.mixed_count()),
            rhs: String::new(),
        });
        report.push(first);

        let mut second = Check::new("pure ∪ pure = pure has a witness");
        second.expect(!self.pure_from_pure.is_empty(), || Witness {
            input: format!("n = {n}"),
            lhs: "no witness".into(),
            rhs: String::new(),
        });
        report.push(second);

        report.note(format!(
            "{} positive states, {} pure, {} mixed",
            self.positive.len(),
            self.pure_count,
            self.mixed_count()
        ));
        for w in &self.pure_from_mixed {
            report.note(format!(
                "pure from mixed: {} = {} ∪ {}  ({} decompositions)",
                describe(&w.pure),
                describe(&w.mixed.0),
                describe(&w.mixed.1),
                w.decompositions
            ));
        }
        for w in &self.pure_from_pure {
            report.note(format!(
                "pure from pure: {} ∪ {} = {}",
                describe(&w.left),
                describe(&w.right),
                describe(&w.union)
            ));
        }
        report
    }
}

/// Enumerates every positive state on `n ≤ 4` elements and both kinds
/// of anomalous mixture.
pub fn find_anomalies(n: usize) -> Result<Anomalies, CpmError> {
    if n > MAX_CARRIER {
        return Err(CpmError::Bound(n));
    }
    let x = carrier(n);
    let positive: Vec<RelMorphism> = (0..1u64 << (n * n))
        .map(|code| {
            let bits = (0..n * n).map(|k| code >> k & 1 == 1).collect();
            RelMorphism::from_bits(x.clone(), x.clone(), bits).expect("shape")
        })
        .filter(is_positive)
        .collect();
    let (pure, mixed): (Vec<&RelMorphism>, Vec<&RelMorphism>) =
        positive.iter().partition(|r| is_pure(r));

    let mut pure_from_mixed = Vec::new();
    for p in &pure {
        let inside: Vec<&&RelMorphism> = mixed
            .iter()
            .filter(|m| m.bits().iter().zip(p.bits()).all(|(a, b)| !a || *b))
            .collect();
        let mut found = None;
        let mut count = 0;
        for (i, m1) in inside.iter().enumerate() {
            for m2 in &inside[i..] {
                if &&m1.union(m2).expect("same carrier") == p {
                    count += 1;
                    found.get_or_insert(((**m1).clone(), (**m2).clone()));
                }
            }
        }
        if let Some(mixed) = found {
            pure_from_mixed.push(PureFromMixed {
                pure: (*p).clone(),
                mixed,
                decompositions: count,
            });
        }
    }

    let mut pure_from_pure = Vec::new();
    for (i, p1) in pure.iter().enumerate() {
        for p2 in &pure[i + 1..] {
            let u = p1.union(p2).expect("same carrier");
            if is_pure(&u) {
                pure_from_pure.push(PureFromPure {
                    left: (*p1).clone(),
                    right: (*p2).clone(),
                    union: u,
                });
            }
        }
    }

    Ok(Anomalies {
        size: n,
        pure_count: pure.len(),
        positive,
        pure_from_mixed,
        pure_from_pure,
    })
}

/// The smallest carrier size, up to `max`, with a pure-from-mixed witness.
pub fn smallest_pure_from_mixed(max: usize) -> Result<Option<usize>, CpmError> {
    for n in 0..=max {
        if !find_anomalies(n)?.pure_from_mixed.is_empty() {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

type DistState = EnrichedMorphism<RelMorphism>;

fn dist_mixture(p: &Weight, m1: &RelMorphism, m2: &RelMorphism) -> DistState {
    let lift = |m: &RelMorphism| EnrichedMorphism::lift_base(m.clone(), MonadTag::Dist);
    enr_mix(
        MonadTag::Dist,
        m1.src(),
        m1.tgt(),
        &[(p.clone(), lift(m1)), (one() - p, lift(m2))],
    )
    .expect("convex weights")
}

fn is_lifted(m: &DistState) -> bool {
    m.hom().terms().len() == 1
}

/// Mixes the two states of a witness in the distribution model for
/// `p ∈ {1/10, 1/4, 1/2, 3/4, 9/10, 1}` and checks that every proper
/// mixture is a two-term sum that no single relation lifts to.
pub fn contrast_with_dist(m1: &RelMorphism, m2: &RelMorphism) -> Report {
    let grid = [ratio(1, 10), ratio(1, 4), ratio(1, 2), ratio(3, 4), ratio(9, 10)];
    let union = m1.union(m2).expect("same carrier");
    let mut report = Report::new(format!(
        "mixing {} and {} in the distribution model",
        describe(m1),
        describe(m2)
    ));

    let mut kept = Check::new("p·m₁ + (1−p)·m₂ keeps two terms for 0 < p < 1");
    let mut not_union = Check::new("p·m₁ + (1−p)·m₂ ≠ lift(m₁ ∪ m₂)");
    for p in &grid {
        let mix = dist_mixture(p, m1, m2);
        let input = || format!("p = {}", format_weight(p));
        kept.expect(mix.hom().terms().len() == 2, || Witness {
            input: input(),
            lhs: mix.serialize(),
            rhs: "two terms".into(),
        });
        let lifted = EnrichedMorphism::lift_base(union.clone(), MonadTag::Dist);
        not_union.expect(mix != lifted, || Witness {
            input: input(),
            lhs: mix.serialize(),
            rhs: lifted.serialize(),
        });
    }
    report.push(kept);
    report.push(not_union);

    let mut degenerate = Check::new("p = 1 gives lift(m₁)");
    let at_one = dist_mixture(&one(), m1, m2);
    degenerate.expect_eq(
        || "p = 1".into(),
        &at_one.serialize(),
        &EnrichedMorphism::lift_base(m1.clone(), MonadTag::Dist).serialize(),
    );
    report.push(degenerate);

    let mut distinct = Check::new("p = 3/4 and p = 1/4 differ");
    let (hi, lo) = (dist_mixture(&ratio(3, 4), m1, m2), dist_mixture(&ratio(1, 4), m1, m2));
    distinct.expect(hi != lo, || Witness {
        input: "p = 3/4 vs 1/4".into(),
        lhs: hi.serialize(),
        rhs: lo.serialize(),
    });
    report.push(distinct);

    for p in &grid[..3] {
        report.note(dist_mixture(p, m1, m2).serialize());
    }
    report
}

/// Random convex mixtures of at least two distinct relations, all
/// weights strictly between 0 and 1, are never a lifted relation.
pub fn check_dist_mixtures(samples: usize, seed: u64) -> Report {
    let mut s = Sampler::<RelMorphism>::new(seed);
    let mut check = Check::new("proper mixtures are never lifted relations");
    while check.instances < samples {
        let (a, b) = (s.object(), s.object());
        let k = s.rng().gen_range(2..=4);
        let mut arrows: Vec<RelMorphism> = (0..k).map(|_| s.base(&a, &b)).collect();
        arrows.sort();
        arrows.dedup();
        if arrows.len() < 2 {
            continue;
        }
        let raw: Vec<u32> = arrows.iter().map(|_| s.rng().gen_range(1..=9)).collect();
        let total: u32 = raw.iter().sum();
        let parts: Vec<(Weight, DistState)> = raw
            .iter()
            .zip(&arrows)
            .map(|(&w, f)| {
                (
                    ratio(w as i64, total as i64),
                    EnrichedMorphism::lift_base(f.clone(), MonadTag::Dist),
                )
            })
            .collect();
        let mix = enr_mix(MonadTag::Dist, &a, &b, &parts).expect("convex weights");
        check.expect(!is_lifted(&mix), || Witness {
            input: arrows.iter().map(Morphism::key).collect::<Vec<_>>().join(", "),
            lhs: mix.serialize(),
            rhs: "a proper sum".into(),
        });
    }
    let mut report = Report::new("distribution mixtures");
    report.push(check);
    report
}

impl fmt::Display for Anomalies {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.report())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Positivity by searching every family of distinct non-empty rows
    /// for `S`, that is every `E` of size at most `2^n`.
    fn positive_by_search(r: &RelMorphism) -> bool {
        let x = r.src();
        let n = x.len();
        let rows: Vec<u32> = (1..1u32 << n).collect();
        (0..1u64 << rows.len()).any(|family| {
            let mut bits = vec![false; n * n];
            for (e, &row) in rows.iter().enumerate() {
                if family >> e & 1 == 1 {
                    for (k, b) in bits.iter_mut().enumerate() {
                        *b |= row >> (k / n) & 1 == 1 && row >> (k % n) & 1 == 1;
                    }
                }
            }
            bits.as_slice() == r.bits()
        })
    }

    fn rel(n: usize, pairs: &[(usize, usize)]) -> RelMorphism {
        RelMorphism::from_pairs(carrier(n), carrier(n), pairs.iter().copied()).unwrap()
    }

    #[test]
    fn positivity_matches_factorisation_search() {
        for n in 0..=3 {
            let x = carrier(n);
            for code in 0..1u64 << (n * n) {
                let bits = (0..n * n).map(|k| code >> k & 1 == 1).collect();
                let r = RelMorphism::from_bits(x.clone(), x.clone(), bits).unwrap();
                assert_eq!(is_positive(&r), positive_by_search(&r), "{}", describe(&r));
            }
        }
    }

    #[test]
    fn examples() {
        assert!(is_positive(&rel(2, &[(0, 0), (1, 1)])));
        assert!(is_positive(&rel(2, &[(0, 0), (0, 1), (1, 0), (1, 1)])));
        assert!(!is_positive(&rel(2, &[(0, 1)])));
        assert!(is_pure(&rel(2, &[(0, 0)])));
        assert!(is_pure(&rel(2, &[])));
        assert!(!is_pure(&rel(2, &[(0, 0), (1, 1)])));
        assert_eq!(describe(&rel(2, &[(0, 0), (1, 1)])), "{aa, bb}");
        assert_eq!(describe(&square(&carrier(3), 0b101)), "{a,c}²");
    }

    #[test]
    fn counts_on_small_carriers() {
        let a0 = find_anomalies(0).unwrap();
        assert!(a0.pure_from_mixed.is_empty() && a0.pure_from_pure.is_empty());

        let a1 = find_anomalies(1).unwrap();
        assert_eq!(a1.pure_from_pure.len(), 1);
        assert_eq!(a1.pure_from_pure[0].union, rel(1, &[(0, 0)]));

        let a2 = find_anomalies(2).unwrap();
        assert_eq!(a2.positive.len(), 5);
        assert_eq!(a2.mixed_count(), 1);
        assert!(a2.pure_from_mixed.is_empty());
        assert!(!a2.pure_from_pure.is_empty());

        let a3 = find_anomalies(3).unwrap();
        let full = square(&carrier(3), 0b111);
        assert!(a3.pure_from_mixed.iter().any(|w| w.pure == full));
        assert_eq!(smallest_pure_from_mixed(4).unwrap(), Some(3));
    }

    #[test]
    fn pure_unions_are_nested_squares() {
        let a = find_anomalies(3).unwrap();
        for w in &a.pure_from_pure {
            let (l, r, u) = (w.left.bits(), w.right.bits(), w.union.bits());
            assert!(l == u || r == u);
        }
        // eight subsets, 19 strictly nested pairs
        assert_eq!(a.pure_from_pure.len(), 19);
    }

    #[test]
    fn bound() {
        assert_eq!(find_anomalies(9), Err(CpmError::Bound(9)));
    }

    #[test]
    fn dist_contrast() {
        let x = carrier(2);
        let r = contrast_with_dist(&square(&x, 0b01), &square(&x, 0b10));
        assert!(r.passed(), "{r}");
        assert!(check_dist_mixtures(200, 5).passed());
    }
}
