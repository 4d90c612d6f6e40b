//! Uniform mixtures are not closed under composition once terms are collected.

use std::fmt;

use super::Em;
use crate::base::{Arrow, BaseError, FinSet, RelMorphism};
use crate::enrich::EnrichError;
use crate::monads::MonadTag;
use crate::report::{Check, Report};
use crate::weight::{format_weight, ratio, Weight};

fn carrier(n: usize) -> FinSet {
    FinSet::new(format!("F{n}"), (0..n).map(|i| i.to_string())).expect("distinct")
}

/// `0 → 1 → ... → n-1 → n-1` as a relation on `{0, .., n-1}`.
pub fn successor_with_absorber(n: usize) -> RelMorphism {
    let x = carrier(n);
    RelMorphism::from_pairs(x.clone(), x, (0..n).map(|i| (i, (i + 1).min(n - 1))))
        .expect("in range")
}

/// All `nⁿ` functions on `{0, .., n-1}`, as relations, in lexicographic
/// order of their value tables.
pub fn functional_relations(n: usize) -> Vec<RelMorphism> {
    let x = carrier(n);
    let total = n.pow(n as u32);
    (0..total)
        .map(|mut code| {
            let mut table = vec![0; n];
            for slot in table.iter_mut().rev() {
                *slot = code % n;
                code /= n;
            }
            RelMorphism::from_pairs(x.clone(), x.clone(), table.into_iter().enumerate())
                .expect("in range")
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterexampleReport {
    pub f: RelMorphism,
    pub e: Em<RelMorphism>,
    pub e_squared: Em<RelMorphism>,
    /// Collected weights of `e∘e`, ascending.
    pub weights: Vec<Weight>,
    pub uniform: bool,
}

/// Builds `e = ½|f⟩ + ½|f∘f⟩` in `(FinRel)_D`, composes it with itself
/// and inspects the collected weights.
pub fn counterexample_uniform(f: &RelMorphism) -> Result<CounterexampleReport, EnrichError> {
    if f.src() != f.tgt() {
        return Err(BaseError::Shape {
            rows: f.tgt().len(),
            cols: f.src().len(),
            expected_rows: f.src().len(),
            expected_cols: f.src().len(),
        }
        .into());
    }
    let ff = f.after(f)?;
    let half = ratio(1, 2);
    let e = Em::from_sum(
        MonadTag::Dist,
        f.src().clone(),
        f.tgt().clone(),
        [(half.clone(), f.clone()), (half, ff)],
    )?;
    let e_squared = e.compose_after(&e)?;
    let mut weights: Vec<Weight> = e_squared.hom().terms().into_iter().map(|(_, w)| w).collect();
    weights.sort();
    let uniform = weights.windows(2).all(|w| w[0] == w[1]);
    Ok(CounterexampleReport {
        f: f.clone(),
        e,
        e_squared,
        weights,
        uniform,
    })
}

impl CounterexampleReport {
    fn function_table(&self) -> String {
        let pairs = self.f.pairs();
        let parts: Vec<String> = pairs.iter().map(|(s, t)| format!("{s}→{t}")).collect();
        parts.join(", ")
    }
}

impl fmt::Display for CounterexampleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ws: Vec<String> = self.weights.iter().map(format_weight).collect();
        write!(
            f,
            "f = [{}]; e∘e = {}; weights {{{}}}; {}",
            self.function_table(),
            self.e_squared,
            ws.join(", "),
            if self.uniform { "uniform" } else { "non-uniform" }
        )
    }
}

/// Every functional relation on at most `max_n` elements whose `e∘e` is
/// non-uniform, together with the number of relations examined.
pub fn non_uniform_witnesses(max_n: usize) -> (usize, Vec<CounterexampleReport>) {
    let mut examined = 0;
    let mut found = Vec::new();
    for n in 1..=max_n {
        for f in functional_relations(n) {
            examined += 1;
            let r = counterexample_uniform(&f).expect("endomorphism");
            if !r.uniform {
                found.push(r);
            }
        }
    }
    (examined, found)
}

/// Exhaustive search over functional relations on `≤ max_n` elements.
/// The check passes when a non-uniform witness exists; the notes print
/// the first witness and the first one whose collected sum has two terms.
pub fn search_counterexample(max_n: usize) -> Report {
    let (examined, found) = non_uniform_witnesses(max_n);
    let mut report = Report::new(format!(
        "uniform-mixture counterexample: functions on ≤ {max_n} elements"
    ));
    let mut check = Check::new("some f gives a non-uniform e∘e");
    check.expect(!found.is_empty(), || crate::report::Witness {
        input: format!("{examined} functional relations"),
        lhs: "all uniform".into(),
        rhs: String::new(),
    });
    report.push(check);
    report.note(format!(
        "examined {examined} functional relations, {} non-uniform",
        found.len()
    ));
    if let Some(first) = found.first() {
        report.note(format!("first witness: {first}"));
    }
    let quarter = [ratio(1, 4), ratio(3, 4)];
    if let Some(shaped) = found.iter().find(|r| r.weights == quarter) {
        report.note(format!("first 1/4, 3/4 witness: {shaped}"));
    }
    report
}
