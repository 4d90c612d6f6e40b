use std::cmp::Ordering;
use std::fmt;

use num::{One, Zero};

use super::{Arrow, BaseError, Morphism};
use crate::weight::{format_weight, Weight};

/// A finite dimension with a label; `atoms` plays the same role as for
/// [`FinSet`](super::FinSet).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MatObj {
    label: String,
    dim: usize,
    atoms: Vec<String>,
}

impl MatObj {
    pub fn new(label: impl Into<String>, dim: usize) -> Self {
        let label = label.into();
        MatObj {
            atoms: vec![label.clone()],
            label,
            dim,
        }
    }

    /// An atomic object labelled by its dimension.
    pub fn of_dim(dim: usize) -> Self {
        MatObj::new(format!("R{dim}"), dim)
    }

    pub fn unit() -> Self {
        MatObj {
            label: "I".to_string(),
            dim: 1,
            atoms: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn tensor(&self, other: &MatObj) -> MatObj {
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        MatObj {
            label: format!("({}⊗{})", self.label, other.label),
            dim: self.dim * other.dim,
            atoms,
        }
    }
}

impl fmt::Display for MatObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// An exact rational `tgt.dim × src.dim` matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatMorphism {
    src: MatObj,
    tgt: MatObj,
    entries: Vec<Weight>,
}

impl MatMorphism {
    pub fn from_rows(src: MatObj, tgt: MatObj, rows: Vec<Vec<Weight>>) -> Result<Self, BaseError> {
        if rows.len() != tgt.dim || rows.iter().any(|r| r.len() != src.dim) {
            return Err(BaseError::Shape {
                rows: rows.len(),
                cols: rows.first().map_or(0, Vec::len),
                expected_rows: tgt.dim,
                expected_cols: src.dim,
            });
        }
        let entries = rows.into_iter().flatten().collect();
        Ok(MatMorphism { src, tgt, entries })
    }

    pub fn zero(src: MatObj, tgt: MatObj) -> Self {
        let entries = vec![Weight::zero(); src.dim * tgt.dim];
        MatMorphism { src, tgt, entries }
    }

    pub fn entry(&self, row: usize, col: usize) -> &Weight {
        &self.entries[row * self.src.dim + col]
    }

    pub fn entries(&self) -> &[Weight] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    fn diagonal(src: &MatObj, tgt: &MatObj) -> Self {
        let n = src.dim;
        let entries = (0..n * n)
            .map(|i| {
                if i / n == i % n {
                    Weight::one()
                } else {
                    Weight::zero()
                }
            })
            .collect();
        MatMorphism {
            src: src.clone(),
            tgt: tgt.clone(),
            entries,
        }
    }
}

impl Ord for MatMorphism {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.src.label(), self.tgt.label())
            .cmp(&(other.src.label(), other.tgt.label()))
            .then_with(|| self.entries.cmp(&other.entries))
            .then_with(|| self.src.cmp(&other.src))
            .then_with(|| self.tgt.cmp(&other.tgt))
    }
}

impl PartialOrd for MatMorphism {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Arrow for MatMorphism {
    type Object = MatObj;

    fn src(&self) -> &MatObj {
        &self.src
    }

    fn tgt(&self) -> &MatObj {
        &self.tgt
    }

    fn after(&self, first: &Self) -> Result<Self, BaseError> {
        if first.tgt != self.src {
            return Err(BaseError::Composition {
                expected: self.src.label().to_string(),
                found: first.tgt.label().to_string(),
            });
        }
        let (n_src, n_mid, n_tgt) = (first.src.dim, self.src.dim, self.tgt.dim);
        let mut entries = vec![Weight::zero(); n_tgt * n_src];
        for t in 0..n_tgt {
            for m in 0..n_mid {
                let a = &self.entries[t * n_mid + m];
                if a.is_zero() {
                    continue;
                }
                for s in 0..n_src {
                    let b = &first.entries[m * n_src + s];
                    if !b.is_zero() {
                        entries[t * n_src + s] += a * b;
                    }
                }
            }
        }
        Ok(MatMorphism {
            src: first.src.clone(),
            tgt: self.tgt.clone(),
            entries,
        })
    }
}

impl Morphism for MatMorphism {
    fn identity(obj: &MatObj) -> Self {
        MatMorphism::diagonal(obj, obj)
    }

    fn unit_object() -> MatObj {
        MatObj::unit()
    }

    fn tensor_objects(a: &MatObj, b: &MatObj) -> MatObj {
        a.tensor(b)
    }

    fn tensor(&self, other: &Self) -> Self {
        let src = self.src.tensor(&other.src);
        let tgt = self.tgt.tensor(&other.tgt);
        let (sa, sb) = (self.src.dim, other.src.dim);
        let (ta, tb) = (self.tgt.dim, other.tgt.dim);
        let cols = sa * sb;
        let mut entries = vec![Weight::zero(); ta * tb * cols];
        for t1 in 0..ta {
            for s1 in 0..sa {
                let a = &self.entries[t1 * sa + s1];
                if a.is_zero() {
                    continue;
                }
                for t2 in 0..tb {
                    for s2 in 0..sb {
                        let b = &other.entries[t2 * sb + s2];
                        entries[(t1 * tb + t2) * cols + (s1 * sb + s2)] = a * b;
                    }
                }
            }
        }
        MatMorphism { src, tgt, entries }
    }

    fn dagger(&self) -> Self {
        let (rows, cols) = (self.tgt.dim, self.src.dim);
        let mut entries = vec![Weight::zero(); rows * cols];
        for t in 0..rows {
            for s in 0..cols {
                entries[s * rows + t] = self.entries[t * cols + s].clone();
            }
        }
        MatMorphism {
            src: self.tgt.clone(),
            tgt: self.src.clone(),
            entries,
        }
    }

    fn cup(obj: &MatObj) -> Self {
        let n = obj.dim;
        let tgt = obj.tensor(obj);
        let mut entries = vec![Weight::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = Weight::one();
        }
        MatMorphism {
            src: MatObj::unit(),
            tgt,
            entries,
        }
    }

    fn coherence(from: &MatObj, to: &MatObj) -> Result<Self, BaseError> {
        if from.atoms != to.atoms || from.dim != to.dim {
            return Err(BaseError::Coherence {
                from: from.label().to_string(),
                to: to.label().to_string(),
            });
        }
        Ok(MatMorphism::diagonal(from, to))
    }

    fn key(&self) -> String {
        let entries: Vec<String> = self.entries.iter().map(format_weight).collect();
        format!("{}|{}|{}", self.src.label(), self.tgt.label(), entries.join(","))
    }

    fn object_label(obj: &MatObj) -> String {
        obj.label().to_string()
    }
}

impl fmt::Display for MatMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::{snake_left, snake_right};
    use crate::weight::{integer, ratio};

    fn mat(src: &MatObj, tgt: &MatObj, vals: &[i64]) -> MatMorphism {
        let rows = vals
            .chunks(src.dim().max(1))
            .take(tgt.dim())
            .map(|r| r.iter().map(|&v| integer(v)).collect())
            .collect();
        MatMorphism::from_rows(src.clone(), tgt.clone(), rows).unwrap()
    }

    #[test]
    fn product_and_identity() {
        let a = MatObj::of_dim(2);
        let f = mat(&a, &a, &[1, 2, 3, 4]);
        let g = mat(&a, &a, &[0, 1, 1, 0]);
        assert_eq!(g.after(&f).unwrap(), mat(&a, &a, &[3, 4, 1, 2]));
        assert_eq!(MatMorphism::identity(&a).after(&f).unwrap(), f);
    }

    #[test]
    fn cap_after_cup_is_dimension() {
        for n in 0..=3 {
            let a = MatObj::of_dim(n);
            let s = MatMorphism::cap(&a).after(&MatMorphism::cup(&a)).unwrap();
            assert_eq!(s.entries(), &[integer(n as i64)]);
        }
    }

    #[test]
    fn snakes() {
        for n in 0..=3 {
            let a = MatObj::of_dim(n);
            assert_eq!(snake_left::<MatMorphism>(&a), MatMorphism::identity(&a));
            assert_eq!(snake_right::<MatMorphism>(&a), MatMorphism::identity(&a));
        }
    }

    #[test]
    fn zero_object_morphisms_are_zero() {
        let zero = MatObj::of_dim(0);
        let a = MatObj::of_dim(2);
        let into = MatMorphism::zero(a.clone(), zero.clone());
        let out = MatMorphism::zero(zero, a.clone());
        let through = out.after(&into).unwrap();
        assert!(through.is_zero());
        let f = mat(&a, &a, &[1, 2, 3, 4]);
        assert!(through.after(&f).unwrap().is_zero());
        assert!(f.after(&through).unwrap().is_zero());
    }

    #[test]
    fn transpose_and_tensor() {
        let a = MatObj::of_dim(2);
        let b = MatObj::of_dim(1);
        let f = MatMorphism::from_rows(
            b.clone(),
            a.clone(),
            vec![vec![ratio(1, 2)], vec![ratio(1, 3)]],
        )
        .unwrap();
        assert_eq!(f.dagger().entries(), &[ratio(1, 2), ratio(1, 3)]);
        let t = f.tensor(&f);
        assert_eq!(
            t.entries(),
            &[ratio(1, 4), ratio(1, 6), ratio(1, 6), ratio(1, 9)]
        );
    }

    #[test]
    fn shape_checked() {
        let a = MatObj::of_dim(2);
        assert!(MatMorphism::from_rows(a.clone(), a, vec![vec![integer(1)]]).is_err());
    }
}
