use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use super::{Arrow, BaseError, Morphism};

/// A finite set with ordered, pairwise-distinct element labels.
///
/// `atoms` lists the atomic factors this set was tensored from, with
/// units dropped; coherence isomorphisms exist exactly between sets with
/// equal atoms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FinSet {
    label: String,
    elements: Vec<String>,
    atoms: Vec<String>,
}

impl FinSet {
    pub fn new<S: Into<String>>(
        label: impl Into<String>,
        elements: impl IntoIterator<Item = S>,
    ) -> Result<Self, BaseError> {
        let label = label.into();
        let elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        let distinct: BTreeSet<&String> = elements.iter().collect();
        if distinct.len() != elements.len() {
            return Err(BaseError::Object(format!(
                "duplicate element labels in `{label}`"
            )));
        }
        Ok(FinSet {
            atoms: vec![label.clone()],
            label,
            elements,
        })
    }

    /// `label` with elements `label0, label1, ...`.
    pub fn numbered(label: &str, size: usize) -> Self {
        FinSet::new(label, (0..size).map(|i| format!("{label}{i}")))
            .expect("numbered labels are distinct")
    }

    pub fn unit() -> Self {
        FinSet {
            label: "I".to_string(),
            elements: vec!["*".to_string()],
            atoms: Vec::new(),
        }
    }

    pub fn tensor(&self, other: &FinSet) -> FinSet {
        let elements = self
            .elements
            .iter()
            .flat_map(|a| other.elements.iter().map(move |b| format!("({a},{b})")))
            .collect();
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        FinSet {
            label: format!("({}⊗{})", self.label, other.label),
            elements,
            atoms,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, element: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == element)
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// A relation `src → tgt`, stored row-major as a `|tgt| × |src|` boolean matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RelMorphism {
    src: FinSet,
    tgt: FinSet,
    bits: Vec<bool>,
}

impl RelMorphism {
    /// `rows[t][s]` is true when source element `s` is related to target element `t`.
    pub fn from_matrix(src: FinSet, tgt: FinSet, rows: &[Vec<bool>]) -> Result<Self, BaseError> {
        let shape_err = || BaseError::Shape {
            rows: rows.len(),
            cols: rows.first().map_or(0, Vec::len),
            expected_rows: tgt.len(),
            expected_cols: src.len(),
        };
        if rows.len() != tgt.len() || rows.iter().any(|r| r.len() != src.len()) {
            return Err(shape_err());
        }
        let bits = rows.iter().flatten().copied().collect();
        Ok(RelMorphism { src, tgt, bits })
    }

    /// Builds from `(source index, target index)` pairs.
    pub fn from_pairs(
        src: FinSet,
        tgt: FinSet,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, BaseError> {
        let mut rel = RelMorphism::empty(src, tgt);
        for (s, t) in pairs {
            if s >= rel.src.len() || t >= rel.tgt.len() {
                return Err(BaseError::Object(format!(
                    "pair ({s},{t}) outside {}x{}",
                    rel.src.len(),
                    rel.tgt.len()
                )));
            }
            let cols = rel.src.len();
            rel.bits[t * cols + s] = true;
        }
        Ok(rel)
    }

    /// Builds from a row-major bit vector of length `|tgt| * |src|`.
    pub fn from_bits(src: FinSet, tgt: FinSet, bits: Vec<bool>) -> Result<Self, BaseError> {
        if bits.len() != src.len() * tgt.len() {
            return Err(BaseError::Shape {
                rows: bits.len(),
                cols: 1,
                expected_rows: tgt.len(),
                expected_cols: src.len(),
            });
        }
        Ok(RelMorphism { src, tgt, bits })
    }

    pub fn empty(src: FinSet, tgt: FinSet) -> Self {
        let bits = vec![false; src.len() * tgt.len()];
        RelMorphism { src, tgt, bits }
    }

    pub fn full(src: FinSet, tgt: FinSet) -> Self {
        let bits = vec![true; src.len() * tgt.len()];
        RelMorphism { src, tgt, bits }
    }

    /// Whether source element `s` is related to target element `t`.
    pub fn related(&self, s: usize, t: usize) -> bool {
        self.bits[t * self.src.len() + s]
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// All related `(source index, target index)` pairs.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let cols = self.src.len();
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| (i % cols, i / cols))
            .collect()
    }

    pub fn union(&self, other: &RelMorphism) -> Result<Self, BaseError> {
        self.pointwise(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &RelMorphism) -> Result<Self, BaseError> {
        self.pointwise(other, |a, b| a && b)
    }

    fn pointwise(
        &self,
        other: &RelMorphism,
        op: impl Fn(bool, bool) -> bool,
    ) -> Result<Self, BaseError> {
        if self.src != other.src || self.tgt != other.tgt {
            return Err(BaseError::Composition {
                expected: format!("{} -> {}", self.src, self.tgt),
                found: format!("{} -> {}", other.src, other.tgt),
            });
        }
        let bits = self
            .bits
            .iter()
            .zip(&other.bits)
            .map(|(&a, &b)| op(a, b))
            .collect();
        Ok(RelMorphism {
            src: self.src.clone(),
            tgt: self.tgt.clone(),
            bits,
        })
    }

    /// The same matrix between different (equinumerous) objects.
    pub fn relabel(&self, src: FinSet, tgt: FinSet) -> Result<Self, BaseError> {
        RelMorphism::from_bits(src, tgt, self.bits.clone())
    }

    fn bit_string(&self) -> String {
        self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }
}

impl Ord for RelMorphism {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.src.label(), self.tgt.label())
            .cmp(&(other.src.label(), other.tgt.label()))
            .then_with(|| self.bits.cmp(&other.bits))
            .then_with(|| self.src.cmp(&other.src))
            .then_with(|| self.tgt.cmp(&other.tgt))
    }
}

impl PartialOrd for RelMorphism {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Arrow for RelMorphism {
    type Object = FinSet;

    fn src(&self) -> &FinSet {
        &self.src
    }

    fn tgt(&self) -> &FinSet {
        &self.tgt
    }

    fn after(&self, first: &Self) -> Result<Self, BaseError> {
        if first.tgt != self.src {
            return Err(BaseError::Composition {
                expected: self.src.label().to_string(),
                found: first.tgt.label().to_string(),
            });
        }
        let (n_src, n_mid, n_tgt) = (first.src.len(), self.src.len(), self.tgt.len());
        let mut bits = vec![false; n_tgt * n_src];
        for t in 0..n_tgt {
            for m in 0..n_mid {
                if !self.bits[t * n_mid + m] {
                    continue;
                }
                for s in 0..n_src {
                    if first.bits[m * n_src + s] {
                        bits[t * n_src + s] = true;
                    }
                }
            }
        }
        Ok(RelMorphism {
            src: first.src.clone(),
            tgt: self.tgt.clone(),
            bits,
        })
    }
}

impl Morphism for RelMorphism {
    fn identity(obj: &FinSet) -> Self {
        let n = obj.len();
        let bits = (0..n * n).map(|i| i / n == i % n).collect();
        RelMorphism {
            src: obj.clone(),
            tgt: obj.clone(),
            bits,
        }
    }

    fn unit_object() -> FinSet {
        FinSet::unit()
    }

    fn tensor_objects(a: &FinSet, b: &FinSet) -> FinSet {
        a.tensor(b)
    }

    fn tensor(&self, other: &Self) -> Self {
        let src = self.src.tensor(&other.src);
        let tgt = self.tgt.tensor(&other.tgt);
        let (sa, sb) = (self.src.len(), other.src.len());
        let (ta, tb) = (self.tgt.len(), other.tgt.len());
        let cols = sa * sb;
        let mut bits = vec![false; ta * tb * cols];
        for (s1, t1) in self.pairs() {
            for (s2, t2) in other.pairs() {
                bits[(t1 * tb + t2) * cols + (s1 * sb + s2)] = true;
            }
        }
        RelMorphism { src, tgt, bits }
    }

    fn dagger(&self) -> Self {
        let (rows, cols) = (self.tgt.len(), self.src.len());
        let mut bits = vec![false; rows * cols];
        for t in 0..rows {
            for s in 0..cols {
                bits[s * rows + t] = self.bits[t * cols + s];
            }
        }
        RelMorphism {
            src: self.tgt.clone(),
            tgt: self.src.clone(),
            bits,
        }
    }

    fn cup(obj: &FinSet) -> Self {
        let n = obj.len();
        let pairs = (0..n).map(|i| (0, i * n + i));
        RelMorphism::from_pairs(FinSet::unit(), obj.tensor(obj), pairs).expect("diagonal in range")
    }

    fn coherence(from: &FinSet, to: &FinSet) -> Result<Self, BaseError> {
        if from.atoms != to.atoms || from.len() != to.len() {
            return Err(BaseError::Coherence {
                from: from.label().to_string(),
                to: to.label().to_string(),
            });
        }
        let n = from.len();
        let bits = (0..n * n).map(|i| i / n == i % n).collect();
        Ok(RelMorphism {
            src: from.clone(),
            tgt: to.clone(),
            bits,
        })
    }

    fn key(&self) -> String {
        format!("{}|{}|{}", self.src.label(), self.tgt.label(), self.bit_string())
    }

    fn object_label(obj: &FinSet) -> String {
        obj.label().to_string()
    }
}

impl fmt::Display for RelMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}
