//! Pointwise checkers for the monad axioms, commutativity, affinity and
//! relevance.

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::enumerate::{random_element, sample_elements};
use super::{MonadElement, MonadError, MonadTag};
use crate::report::{Check, Render, Report};
use crate::weight::ratio;

/// Unit and multiplication used by the law checker. [`Native`] is the
/// real structure; tests substitute corrupted ones as negative controls.
pub trait MonadStructure {
    fn unit<X: Ord + Clone>(&self, tag: MonadTag, x: X) -> MonadElement<X> {
        MonadElement::unit(tag, x)
    }

    fn flatten<X: Ord + Clone>(
        &self,
        nested: &MonadElement<MonadElement<X>>,
    ) -> Result<MonadElement<X>, MonadError> {
        MonadElement::flatten(nested)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Native;

impl MonadStructure for Native {}

type Elem = MonadElement<u8>;

/// Checks `μ ∘ ηT = id`, `μ ∘ Tη = id` (on `T X` and on `T T X`) and
/// `μ ∘ μT = μ ∘ Tμ` for the carrier `{0, .., carrier_size - 1}`.
///
/// Enumerable monads are checked exhaustively on `T X` and `T T X`;
/// associativity uses every element of `T T T X` whose outer layer has at
/// most two members, plus `samples` seeded larger ones. Weighted monads
/// use corner cases plus `samples` seeded elements at every level.
pub fn check_monad_laws(tag: MonadTag, carrier_size: u8, samples: usize, seed: u64) -> Report {
    check_monad_laws_with(&Native, tag, carrier_size, samples, seed)
}

pub fn check_monad_laws_with<S: MonadStructure>(
    structure: &S,
    tag: MonadTag,
    carrier_size: u8,
    samples: usize,
    seed: u64,
) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let carrier: Vec<u8> = (0..carrier_size).collect();
    let mut report = Report::new(format!("monad laws: {tag} on |X|={carrier_size}"));

    let tx: Vec<Elem> = sample_elements(tag, &carrier, samples, &mut rng);
    let ttx: Vec<MonadElement<Elem>> = level_two(tag, &tx, samples, &mut rng);

    for (left, right) in [
        unit_laws(structure, tag, &tx, "on T X"),
        unit_laws(structure, tag, &ttx, "on T T X"),
    ] {
        report.push(left);
        report.push(right);
    }

    let tttx = level_three(tag, &ttx, samples, &mut rng);
    let mut assoc = Check::new("associativity μ∘μT = μ∘Tμ");
    for ttt in &tttx {
        let lhs = structure
            .flatten(ttt)
            .and_then(|tt| structure.flatten(&tt));
        let rhs = ttt
            .try_map(|tt| structure.flatten(tt))
            .and_then(|tt| structure.flatten(&tt));
        match (lhs, rhs) {
            (Ok(l), Ok(r)) => {
                assoc.expect_eq(|| ttt.render(), &l, &r);
            }
            (l, r) => assoc.fail(ttt.render(), format!("{l:?} / {r:?}")),
        }
    }
    report.push(assoc);
    report
}

fn unit_laws<S: MonadStructure, X: Ord + Clone + Render>(
    structure: &S,
    tag: MonadTag,
    elems: &[MonadElement<X>],
    suffix: &str,
) -> (Check, Check) {
    let mut left = Check::new(format!("left unit μ∘ηT = id {suffix}"));
    let mut right = Check::new(format!("right unit μ∘Tη = id {suffix}"));
    for t in elems {
        let eta_t = structure.unit(tag, t.clone());
        match structure.flatten(&eta_t) {
            Ok(v) => {
                left.expect_eq(|| t.render(), &v, t);
            }
            Err(e) => left.fail(t.render(), e.to_string()),
        }
        let t_eta = t.map(|x| structure.unit(tag, x.clone()));
        match structure.flatten(&t_eta) {
            Ok(v) => {
                right.expect_eq(|| t.render(), &v, t);
            }
            Err(e) => right.fail(t.render(), e.to_string()),
        }
    }
    (left, right)
}

/// `T Y` for `Y` a sample of `T X`: all of it when enumerable, seeded otherwise.
fn level_two<X: Ord + Clone>(
    tag: MonadTag,
    tx: &[MonadElement<X>],
    samples: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<MonadElement<MonadElement<X>>> {
    if tag.is_enumerable() {
        return sample_elements(tag, tx, samples, rng);
    }
    let inner: Vec<_> = tx.iter().take(8).cloned().collect();
    sample_elements(tag, &inner, samples, rng)
}

fn level_three<X: Ord + Clone>(
    tag: MonadTag,
    ttx: &[MonadElement<MonadElement<X>>],
    samples: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<MonadElement<MonadElement<MonadElement<X>>>> {
    match tag {
        MonadTag::Lift => sample_elements(tag, ttx, samples, rng),
        MonadTag::PPlus | MonadTag::POmega => {
            let mut out: BTreeSet<MonadElement<MonadElement<MonadElement<X>>>> = BTreeSet::new();
            if tag == MonadTag::POmega {
                out.insert(MonadElement::pomega([]));
            }
            for (i, a) in ttx.iter().enumerate() {
                for b in &ttx[i..] {
                    let members = [a.clone(), b.clone()];
                    out.insert(match tag {
                        MonadTag::PPlus => MonadElement::PPlus(members.into_iter().collect()),
                        _ => MonadElement::pomega(members),
                    });
                }
            }
            let mut extra = Vec::new();
            for _ in 0..samples {
                extra.extend(random_element(tag, ttx, rng));
            }
            out.extend(extra);
            out.into_iter().collect()
        }
        MonadTag::Dist | MonadTag::SubDist => {
            let inner: Vec<_> = ttx.iter().take(6).cloned().collect();
            sample_elements(tag, &inner, samples, rng)
        }
    }
}

/// Compares `dst = μ∘T(cst)∘st` with `μ∘T(st)∘cst` on `T A × T B` for
/// `|A| = size_a`, `|B| = size_b`: every pair when enumerable, otherwise
/// at least `samples` seeded pairs.
pub fn check_commutativity(
    tag: MonadTag,
    size_a: u8,
    size_b: u8,
    samples: usize,
    seed: u64,
) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a: Vec<u8> = (0..size_a).collect();
    let b: Vec<u8> = (0..size_b).collect();
    let per_side = if tag.is_enumerable() {
        samples
    } else {
        ((samples as f64).sqrt().ceil() as usize).max(4)
    };
    let ta = sample_elements(tag, &a, per_side, &mut rng);
    let tb = sample_elements(tag, &b, per_side, &mut rng);
    let mut check = Check::new("double strength μ∘T(cst)∘st = μ∘T(st)∘cst");
    for t in &ta {
        for u in &tb {
            let input = || format!("({}, {})", t.render(), u.render());
            match (
                MonadElement::double_strength(t, u),
                MonadElement::double_strength_alt(t, u),
            ) {
                (Ok(l), Ok(r)) => {
                    check.expect_eq(input, &l, &r);
                }
                (l, r) => check.fail(input(), format!("{l:?} / {r:?}")),
            }
        }
    }
    let mut report = Report::new(format!(
        "commutativity: {tag} on |A|={size_a}, |B|={size_b}"
    ));
    report.push(check);
    report
}

/// The elements of `T 1`; for `SubDist`, which is infinite, three distinct
/// representatives.
pub fn terminal_elements(tag: MonadTag) -> Vec<MonadElement<()>> {
    match tag {
        MonadTag::Lift | MonadTag::PPlus | MonadTag::POmega => {
            super::enumerate(tag, &[()]).expect("enumerable")
        }
        // the only weight map on a single point with total one
        MonadTag::Dist => vec![MonadElement::unit(MonadTag::Dist, ())],
        MonadTag::SubDist => vec![
            MonadElement::subdist([]).expect("empty"),
            MonadElement::subdist([((), ratio(1, 2))]).expect("half"),
            MonadElement::unit(MonadTag::SubDist, ()),
        ],
    }
}

/// `η_1 : 1 → T 1` is an isomorphism iff `T 1` is exactly `{η(*)}`.
pub fn is_affine(tag: MonadTag) -> bool {
    let elems = terminal_elements(tag);
    elems.len() == 1 && elems[0] == MonadElement::unit(tag, ())
}

/// Checks `dst ∘ δ = T δ` pointwise, where `δ(x) = (x, x)`.
pub fn check_relevant(tag: MonadTag, carrier_size: u8, samples: usize, seed: u64) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let carrier: Vec<u8> = (0..carrier_size).collect();
    let mut check = Check::new("dst∘δ = Tδ");
    for t in sample_elements(tag, &carrier, samples, &mut rng) {
        let lhs = MonadElement::double_strength(&t, &t).expect("well-formed");
        let rhs = t.map(|x| (*x, *x));
        check.expect_eq(|| t.render(), &lhs, &rhs);
    }
    let mut report = Report::new(format!("relevance: {tag} on |X|={carrier_size}"));
    report.push(check);
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Keeps only the first inner element: breaks the unit laws.
    struct FirstOnly;

    impl MonadStructure for FirstOnly {
        fn flatten<X: Ord + Clone>(
            &self,
            nested: &MonadElement<MonadElement<X>>,
        ) -> Result<MonadElement<X>, MonadError> {
            match nested.support().first() {
                Some(inner) => Ok((*inner).clone()),
                None => MonadElement::flatten(nested),
            }
        }
    }

    #[test]
    fn native_laws_hold_small() {
        for tag in MonadTag::ALL {
            for n in 0..=2 {
                let r = check_monad_laws(tag, n, 30, 1);
                assert!(r.passed(), "{r}");
            }
        }
    }

    #[test]
    fn corrupted_multiplication_is_reported() {
        let r = check_monad_laws_with(&FirstOnly, MonadTag::POmega, 2, 20, 1);
        assert!(!r.passed());
        let r = check_monad_laws_with(&FirstOnly, MonadTag::Dist, 2, 20, 1);
        assert!(!r.passed());
        let w = &r.checks.iter().find(|c| !c.passed()).unwrap().witnesses[0];
        assert!(!w.input.is_empty());
    }

    #[test]
    fn commutativity_small() {
        for tag in MonadTag::ALL {
            assert!(check_commutativity(tag, 2, 2, 50, 3).passed());
            assert!(check_commutativity(tag, 1, 1, 50, 3).passed());
        }
    }

    #[test]
    fn affinity_verdicts() {
        let affine: Vec<MonadTag> = MonadTag::ALL.into_iter().filter(|t| is_affine(*t)).collect();
        assert_eq!(affine, vec![MonadTag::PPlus, MonadTag::Dist]);
        assert_eq!(terminal_elements(MonadTag::Lift).len(), 2);
        assert_eq!(terminal_elements(MonadTag::PPlus).len(), 1);
    }

    #[test]
    fn relevance_verdicts() {
        assert!(check_relevant(MonadTag::Lift, 3, 50, 1).passed());
        assert!(!check_relevant(MonadTag::PPlus, 2, 50, 1).passed());
        assert!(!check_relevant(MonadTag::POmega, 2, 50, 1).passed());
        assert!(!check_relevant(MonadTag::Dist, 2, 50, 1).passed());
        assert!(!check_relevant(MonadTag::SubDist, 2, 50, 1).passed());
    }
}
