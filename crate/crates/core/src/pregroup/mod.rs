//! Pregroup types, a contraction parser, and sentence semantics.
//!
//! A simple type is a basic symbol with an adjoint order `z`: `n` has
//! `z = 0`, `n^r` has `z = 1`, `n^ll` has `z = -2`. Adjacent simple types
//! `(b, z)(b, z + 1)` contract to the unit. Types are written as
//! whitespace-separated simple types, e.g. `n^r s n^l`.

mod lexicon;
mod wiring;

pub use lexicon::{convert_state, load_lexicon, AnyLexicon, LexEntry, Lexicon, LexiconError};
pub use wiring::{semantics_wiring, sentence_meaning, TypeAssignment};

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PregroupError {
    #[error("invalid type `{0}`")]
    Syntax(String),
    #[error("step {step} does not cancel an adjacent adjoint pair")]
    InvalidStep { step: usize },
    #[error("reduction ends in `{found}`, expected `{expected}`")]
    WrongResult { found: String, expected: String },
    #[error("no basic type assignment for `{0}`")]
    Assignment(String),
    #[error("unknown word `{0}`")]
    UnknownWord(String),
    #[error("no reduction of `{types}` to `{target}`")]
    NoParse { types: String, target: String },
    #[error(transparent)]
    Base(#[from] crate::base::BaseError),
    #[error(transparent)]
    Enrich(#[from] crate::enrich::EnrichError),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimpleType {
    pub basic: String,
    pub adjoint: i32,
}

impl SimpleType {
    pub fn new(basic: impl Into<String>, adjoint: i32) -> Self {
        SimpleType {
            basic: basic.into(),
            adjoint,
        }
    }

    /// `self · next` contracts to the unit.
    pub fn cancels_with(&self, next: &SimpleType) -> bool {
        self.basic == next.basic && self.adjoint + 1 == next.adjoint
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.basic)?;
        let n = self.adjoint.unsigned_abs() as usize;
        if n > 0 {
            let letter = if self.adjoint > 0 { "r" } else { "l" };
            write!(f, "^{}", letter.repeat(n))?;
        }
        Ok(())
    }
}

impl FromStr for SimpleType {
    type Err = PregroupError;

    fn from_str(token: &str) -> Result<Self, Self::Err> {
        let err = || PregroupError::Syntax(token.to_string());
        let (basic, suffix) = match token.split_once('^') {
            Some((b, s)) => (b, s),
            None => (token, ""),
        };
        let valid_basic = !basic.is_empty()
            && basic.chars().all(|c| c.is_alphanumeric() || c == '_');
        if !valid_basic {
            return Err(err());
        }
        let adjoint = if suffix.is_empty() {
            if token.contains('^') {
                return Err(err());
            }
            0
        } else if suffix.chars().all(|c| c == 'r') {
            suffix.len() as i32
        } else if suffix.chars().all(|c| c == 'l') {
            -(suffix.len() as i32)
        } else {
            return Err(err());
        };
        Ok(SimpleType::new(basic, adjoint))
    }
}

/// A finite sequence of simple types; the empty sequence is the unit.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PregroupType(pub Vec<SimpleType>);

impl PregroupType {
    pub fn simple(&self) -> &[SimpleType] {
        &self.0
    }

    pub fn concat(types: &[PregroupType]) -> PregroupType {
        PregroupType(types.iter().flat_map(|t| t.0.iter().cloned()).collect())
    }
}

impl fmt::Display for PregroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for PregroupType {
    type Err = PregroupError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        text.split_whitespace()
            .map(SimpleType::from_str)
            .collect::<Result<_, _>>()
            .map(PregroupType)
    }
}

/// A sequence of contractions. Step `i` cancels positions `i` and `i + 1`
/// of the type string left by the earlier steps.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Reduction {
    pub steps: Vec<usize>,
}

impl Reduction {
    /// Applies the steps to `flat`, failing on any step that does not
    /// cancel an adjoint pair.
    pub fn replay(&self, flat: &[SimpleType]) -> Result<Vec<SimpleType>, PregroupError> {
        let mut cur = flat.to_vec();
        for (step, &i) in self.steps.iter().enumerate() {
            if i + 1 >= cur.len() || !cur[i].cancels_with(&cur[i + 1]) {
                return Err(PregroupError::InvalidStep { step });
            }
            cur.drain(i..i + 2);
        }
        Ok(cur)
    }

    /// [`replay`](Self::replay) and compare with `target`.
    pub fn verify(&self, types: &[PregroupType], target: &PregroupType) -> Result<(), PregroupError> {
        let flat = PregroupType::concat(types);
        let end = PregroupType(self.replay(&flat.0)?);
        if &end != target {
            return Err(PregroupError::WrongResult {
                found: end.to_string(),
                expected: target.to_string(),
            });
        }
        Ok(())
    }
}

/// Depth-first search over contractions, leftmost cancellable pair first.
/// Dead-end type strings are memoised, so each is explored once.
pub fn parse(types: &[PregroupType], target: &PregroupType) -> Option<Reduction> {
    fn go(
        cur: &mut Vec<SimpleType>,
        target: &[SimpleType],
        steps: &mut Vec<usize>,
        dead: &mut HashSet<Vec<SimpleType>>,
    ) -> bool {
        if cur.as_slice() == target {
            return true;
        }
        if cur.len() < target.len() + 2 || dead.contains(cur.as_slice()) {
            return false;
        }
        for i in 0..cur.len() - 1 {
            if !cur[i].cancels_with(&cur[i + 1]) {
                continue;
            }
            let removed: Vec<SimpleType> = cur.drain(i..i + 2).collect();
            steps.push(i);
            if go(cur, target, steps, dead) {
                return true;
            }
            steps.pop();
            for (k, t) in removed.into_iter().enumerate() {
                cur.insert(i + k, t);
            }
        }
        dead.insert(cur.clone());
        false
    }

    let mut cur = PregroupType::concat(types).0;
    let mut steps = Vec::new();
    let mut dead = HashSet::new();
    go(&mut cur, &target.0, &mut steps, &mut dead).then_some(Reduction { steps })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> PregroupType {
        s.parse().unwrap()
    }

    /// Every contraction order, without memo or pruning.
    fn all_reductions(cur: &[SimpleType], target: &[SimpleType], prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur == target {
            out.push(prefix.clone());
        }
        for i in 0..cur.len().saturating_sub(1) {
            if cur[i].cancels_with(&cur[i + 1]) {
                let mut next = cur.to_vec();
                next.drain(i..i + 2);
                prefix.push(i);
                all_reductions(&next, target, prefix, out);
                prefix.pop();
            }
        }
    }

    #[test]
    fn type_syntax_round_trips() {
        let t = ty("n^r s n^l n^ll x^rr");
        assert_eq!(t.0[0], SimpleType::new("n", 1));
        assert_eq!(t.0[2], SimpleType::new("n", -1));
        assert_eq!(t.0[3], SimpleType::new("n", -2));
        assert_eq!(t.to_string(), "n^r s n^l n^ll x^rr");
        assert_eq!(ty(""), PregroupType::default());
        for bad in ["n^", "n^rl", "^r", "n^x", "a-b"] {
            assert!(bad.parse::<PregroupType>().is_err(), "{bad}");
        }
    }

    #[test]
    fn transitive_sentence() {
        let types = [ty("n"), ty("n^r s n^l"), ty("n")];
        let r = parse(&types, &ty("s")).unwrap();
        assert_eq!(r.steps.len(), 2);
        assert_eq!(r.steps, vec![0, 1]);
        r.verify(&types, &ty("s")).unwrap();
    }

    #[test]
    fn trivial_and_failing_parses() {
        assert_eq!(parse(&[ty("s")], &ty("s")).unwrap().steps, Vec::<usize>::new());
        assert!(parse(&[ty("n"), ty("n")], &ty("s")).is_none());
        assert!(parse(&[ty("n^r"), ty("n")], &ty("")).is_none());
        assert!(parse(&[ty("n"), ty("n^r")], &ty("")).is_some());
    }

    #[test]
    fn replay_rejects_bad_steps() {
        let r = Reduction { steps: vec![1] };
        assert_eq!(
            r.replay(&ty("n n^r s").0),
            Err(PregroupError::InvalidStep { step: 0 })
        );
        let r = Reduction { steps: vec![0] };
        assert!(matches!(
            r.verify(&[ty("n n^r s")], &ty("n")),
            Err(PregroupError::WrongResult { .. })
        ));
    }

    #[test]
    fn agrees_with_exhaustive_search_up_to_length_eight() {
        let alphabet = [
            SimpleType::new("n", -1),
            SimpleType::new("n", 0),
            SimpleType::new("n", 1),
            SimpleType::new("s", 0),
        ];
        let mut examined = 0;
        for target in [ty("s"), ty("")] {
            for len in 0..=8usize {
                for code in 0..alphabet.len().pow(len as u32) {
                    let mut c = code;
                    let seq: Vec<SimpleType> = (0..len)
                        .map(|_| {
                            let t = alphabet[c % alphabet.len()].clone();
                            c /= alphabet.len();
                            t
                        })
                        .collect();
                    let mut all = Vec::new();
                    all_reductions(&seq, &target.0, &mut Vec::new(), &mut all);
                    let found = parse(&[PregroupType(seq.clone())], &target);
                    assert_eq!(found.is_some(), !all.is_empty(), "{seq:?}");
                    if let Some(r) = found {
                        assert_eq!(r.replay(&seq).unwrap(), target.0);
                        assert_eq!(r.steps, all[0], "leftmost-first order");
                    }
                    examined += 1;
                }
            }
        }
        assert_eq!(examined, 2 * (0..=8).map(|k| 4usize.pow(k)).sum::<usize>());
    }
}
