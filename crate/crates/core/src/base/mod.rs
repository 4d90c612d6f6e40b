//! Finite dagger compact closed base categories.
//!
//! Two concrete bases are provided: [`FinRel`](rel) (finite sets and
//! relations, stored as boolean incidence matrices) and [`FinMat`](mat)
//! (natural-number dimensions and exact rational matrices). Both are
//! self-dual: the dual of an object is the object itself, and cups/caps
//! are the diagonal states/effects.
//!
//! Monoidal bookkeeping is strict up to explicit relabeling: tensoring
//! objects records the flattened list of atomic factors, and
//! [`Morphism::coherence`] produces the identity-matrix isomorphism
//! between any two objects with the same atomic factors. Associators
//! and unitors are instances of it.

mod mat;
mod rel;

pub use mat::{MatMorphism, MatObj};
pub use rel::{FinSet, RelMorphism};

use std::fmt::Debug;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BaseError {
    #[error("cannot compose: codomain {found} of the first arrow does not match domain {expected} of the second")]
    Composition { expected: String, found: String },
    #[error("no coherence isomorphism between {from} and {to}")]
    Coherence { from: String, to: String },
    #[error("invalid object: {0}")]
    Object(String),
    #[error("matrix shape {rows}x{cols} does not match {expected_rows}x{expected_cols}")]
    Shape {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
}

/// Anything with a domain, a codomain and a partial composition.
pub trait Arrow: Clone + Eq + Debug {
    type Object: Clone + Eq + Ord + Debug + Send + Sync;

    fn src(&self) -> &Self::Object;
    fn tgt(&self) -> &Self::Object;

    /// `self ∘ first`: apply `first`, then `self`.
    fn after(&self, first: &Self) -> Result<Self, BaseError>;
}

/// Arrows of a self-dual dagger compact closed category.
pub trait Morphism: Arrow + Ord + Send + Sync {
    fn identity(obj: &Self::Object) -> Self;

    fn unit_object() -> Self::Object;

    fn tensor_objects(a: &Self::Object, b: &Self::Object) -> Self::Object;

    fn tensor(&self, other: &Self) -> Self;

    fn dagger(&self) -> Self;

    /// The state `I → A ⊗ A` relating the unit to every diagonal pair.
    fn cup(obj: &Self::Object) -> Self;

    fn cap(obj: &Self::Object) -> Self {
        Self::cup(obj).dagger()
    }

    /// The canonical isomorphism between two bracketings of the same
    /// atomic factors (units dropped).
    fn coherence(from: &Self::Object, to: &Self::Object) -> Result<Self, BaseError>;

    /// Deterministic textual key; equal keys iff equal morphisms.
    fn key(&self) -> String;

    fn object_label(obj: &Self::Object) -> String;

    fn associator(a: &Self::Object, b: &Self::Object, c: &Self::Object) -> Self {
        let from = Self::tensor_objects(&Self::tensor_objects(a, b), c);
        let to = Self::tensor_objects(a, &Self::tensor_objects(b, c));
        Self::coherence(&from, &to).expect("associator between equal factor lists")
    }

    /// `I ⊗ A → A`
    fn left_unitor(a: &Self::Object) -> Self {
        let from = Self::tensor_objects(&Self::unit_object(), a);
        Self::coherence(&from, a).expect("left unitor")
    }

    /// `A ⊗ I → A`
    fn right_unitor(a: &Self::Object) -> Self {
        let from = Self::tensor_objects(a, &Self::unit_object());
        Self::coherence(&from, a).expect("right unitor")
    }

    /// Left-nested tensor of a list of objects; the empty list is the unit.
    fn tensor_all(objs: &[Self::Object]) -> Self::Object {
        let mut iter = objs.iter();
        match iter.next() {
            None => Self::unit_object(),
            Some(first) => iter.fold(first.clone(), |acc, o| Self::tensor_objects(&acc, o)),
        }
    }
}

/// `(id_A ⊗ cap_A) ∘ α ∘ (cup_A ⊗ id_A)`, conjugated by unitors so that
/// it is an endomorphism of `A`. Equals `id_A` in a compact closed category.
pub fn snake_left<M: Morphism>(a: &M::Object) -> M {
    let id = M::identity(a);
    let step1 = M::left_unitor(a).dagger();
    let step2 = M::cup(a).tensor(&id);
    let step3 = M::associator(a, a, a);
    let step4 = id.tensor(&M::cap(a));
    let step5 = M::right_unitor(a);
    [step2, step3, step4, step5]
        .iter()
        .try_fold(step1, |acc, m| m.after(&acc))
        .expect("snake composite is well typed")
}

/// `(cap_A ⊗ id_A) ∘ α⁻¹ ∘ (id_A ⊗ cup_A)`, the mirror image of [`snake_left`].
pub fn snake_right<M: Morphism>(a: &M::Object) -> M {
    let id = M::identity(a);
    let step1 = M::right_unitor(a).dagger();
    let step2 = id.tensor(&M::cup(a));
    let step3 = M::associator(a, a, a).dagger();
    let step4 = M::cap(a).tensor(&id);
    let step5 = M::left_unitor(a);
    [step2, step3, step4, step5]
        .iter()
        .try_fold(step1, |acc, m| m.after(&acc))
        .expect("snake composite is well typed")
}

impl crate::report::Render for RelMorphism {
    fn render(&self) -> String {
        self.key()
    }
}

impl crate::report::Render for MatMorphism {
    fn render(&self) -> String {
        self.key()
    }
}
