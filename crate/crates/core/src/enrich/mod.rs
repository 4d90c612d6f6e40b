//! Free enrichments `C_T` of a base category by one of the five monads.
//!
//! The homset `C_T(A, B)` is `T(C(A, B))`. Composition and tensor are the
//! bilinear extensions of the base operations, computed as the base
//! operation pushed through the double strength:
//!
//! ```text
//! g ∘ f   = T(∘)(dst(f, g))       f ⊗ g = T(⊗)(dst(f, g))       f† = T(†)(f)
//! ```
//!
//! which specialises to `⊥`-absorption for `Lift`, elementwise images for
//! the powersets and `Σᵢⱼ pᵢqⱼ |gⱼ∘fᵢ⟩` for the weighted monads. Results are
//! always in collected canonical form, so `==` decides equality.

mod laws;
mod scalars;

pub use laws::{check_dagger_compact, enriched_snake_left, enriched_snake_right};
pub use scalars::{
    enumerate_homset, probability_of_scalar, rel_scalar_false, rel_scalar_true,
    scalar_from_probability,
};

use std::fmt;

use num::{One, Signed, Zero};
use serde_json::json;
use thiserror::Error;

use crate::base::{Arrow, BaseError, Morphism};
use crate::monads::{MonadElement, MonadError, MonadTag};
use crate::report::Render;
use crate::weight::{format_weight, Weight};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnrichError {
    #[error("model mismatch: {left} vs {right}")]
    TagMismatch { left: MonadTag, right: MonadTag },
    #[error(transparent)]
    Base(#[from] BaseError),
    #[error(transparent)]
    Monad(#[from] MonadError),
    #[error("weight error: {0}")]
    Weight(String),
    #[error("a non-empty combination needs at least one part")]
    EmptyCombination,
    #[error("morphism {key} does not belong to the homset {src} -> {tgt}")]
    Homset { key: String, src: String, tgt: String },
    #[error("{0}")]
    Unsupported(String),
}

/// A morphism of `C_T`: a canonical element of `T(C(src, tgt))`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct EnrichedMorphism<M: Morphism> {
    src: M::Object,
    tgt: M::Object,
    hom: MonadElement<M>,
}

impl<M: Morphism> EnrichedMorphism<M> {
    /// Validates that every base morphism lives in `src → tgt` and that
    /// the element satisfies its tag's invariants.
    pub fn new(src: M::Object, tgt: M::Object, hom: MonadElement<M>) -> Result<Self, EnrichError> {
        hom.validate()?;
        for f in hom.support() {
            if f.src() != &src || f.tgt() != &tgt {
                return Err(EnrichError::Homset {
                    key: f.key(),
                    src: M::object_label(&src),
                    tgt: M::object_label(&tgt),
                });
            }
        }
        Ok(EnrichedMorphism { src, tgt, hom })
    }

    /// The embedding `C → C_T`: `f`, `{f}` or `1|f⟩`.
    pub fn lift_base(f: M, tag: MonadTag) -> Self {
        EnrichedMorphism {
            src: f.src().clone(),
            tgt: f.tgt().clone(),
            hom: MonadElement::unit(tag, f),
        }
    }

    /// `⊥`, `∅` or `Σ∅` in the given homset.
    pub fn bottom(tag: MonadTag, src: M::Object, tgt: M::Object) -> Result<Self, EnrichError> {
        let hom = MonadElement::bottom(tag).ok_or_else(|| {
            EnrichError::Unsupported(format!("{tag} homsets have no bottom element"))
        })?;
        Ok(EnrichedMorphism { src, tgt, hom })
    }

    /// A set-valued morphism (`PPlus` or `POmega`); duplicates collapse.
    pub fn from_set(
        tag: MonadTag,
        src: M::Object,
        tgt: M::Object,
        members: impl IntoIterator<Item = M>,
    ) -> Result<Self, EnrichError> {
        let hom = match tag {
            MonadTag::PPlus => MonadElement::pplus(members)?,
            MonadTag::POmega => MonadElement::pomega(members),
            other => {
                return Err(EnrichError::Unsupported(format!(
                    "{other} morphisms are not sets"
                )))
            }
        };
        EnrichedMorphism::new(src, tgt, hom)
    }

    /// A formal sum (`Dist` or `SubDist`); terms with equal base morphisms
    /// are collected and zero weights dropped.
    pub fn from_sum(
        tag: MonadTag,
        src: M::Object,
        tgt: M::Object,
        terms: impl IntoIterator<Item = (Weight, M)>,
    ) -> Result<Self, EnrichError> {
        let terms = terms.into_iter().map(|(w, f)| (f, w));
        let hom = match tag {
            MonadTag::Dist => MonadElement::dist(terms),
            MonadTag::SubDist => MonadElement::subdist(terms),
            other => {
                return Err(EnrichError::Unsupported(format!(
                    "{other} morphisms are not formal sums"
                )))
            }
        }
        .map_err(|e| match e {
            MonadError::Weight(msg) => EnrichError::Weight(msg),
            other => EnrichError::Monad(other),
        })?;
        EnrichedMorphism::new(src, tgt, hom)
    }

    pub fn tag(&self) -> MonadTag {
        self.hom.tag()
    }

    pub fn hom(&self) -> &MonadElement<M> {
        &self.hom
    }

    pub fn is_bottom(&self) -> bool {
        self.hom.is_bottom()
    }

    pub fn support(&self) -> Vec<&M> {
        self.hom.support()
    }

    pub fn identity(tag: MonadTag, obj: &M::Object) -> Self {
        EnrichedMorphism::lift_base(M::identity(obj), tag)
    }

    pub fn cup(tag: MonadTag, obj: &M::Object) -> Self {
        EnrichedMorphism::lift_base(M::cup(obj), tag)
    }

    pub fn cap(tag: MonadTag, obj: &M::Object) -> Self {
        EnrichedMorphism::lift_base(M::cap(obj), tag)
    }

    pub fn coherence(tag: MonadTag, from: &M::Object, to: &M::Object) -> Result<Self, EnrichError> {
        Ok(EnrichedMorphism::lift_base(M::coherence(from, to)?, tag))
    }

    fn same_tag(&self, other: &Self) -> Result<(), EnrichError> {
        if self.tag() != other.tag() {
            return Err(EnrichError::TagMismatch {
                left: self.tag(),
                right: other.tag(),
            });
        }
        Ok(())
    }

    /// `self ∘ first`, extended bilinearly and collected.
    pub fn compose_after(&self, first: &Self) -> Result<Self, EnrichError> {
        self.same_tag(first)?;
        if first.tgt != self.src {
            return Err(BaseError::Composition {
                expected: M::object_label(&self.src),
                found: M::object_label(&first.tgt),
            }
            .into());
        }
        let pairs = MonadElement::double_strength(&first.hom, &self.hom)?;
        let hom = pairs.try_map(|(f, g)| g.after(f))?;
        Ok(EnrichedMorphism {
            src: first.src.clone(),
            tgt: self.tgt.clone(),
            hom,
        })
    }

    pub fn tensor(&self, other: &Self) -> Result<Self, EnrichError> {
        self.same_tag(other)?;
        let pairs = MonadElement::double_strength(&self.hom, &other.hom)?;
        Ok(EnrichedMorphism {
            src: M::tensor_objects(&self.src, &other.src),
            tgt: M::tensor_objects(&self.tgt, &other.tgt),
            hom: pairs.map(|(f, g)| f.tensor(g)),
        })
    }

    pub fn dagger(&self) -> Self {
        EnrichedMorphism {
            src: self.tgt.clone(),
            tgt: self.src.clone(),
            hom: self.hom.map(M::dagger),
        }
    }

    /// Re-collects the terms. Values built through this module are already
    /// canonical, so this is the identity on them.
    pub fn canonicalize(&self) -> Self {
        let hom = match &self.hom {
            MonadElement::Dist(m) => MonadElement::Dist(
                crate::monads::WeightMap::from_terms(
                    m.iter().map(|(f, w)| (f.clone(), w.clone())),
                )
                .expect("weights already validated"),
            ),
            MonadElement::SubDist(m) => MonadElement::SubDist(
                crate::monads::WeightMap::from_terms(
                    m.iter().map(|(f, w)| (f.clone(), w.clone())),
                )
                .expect("weights already validated"),
            ),
            other => other.clone(),
        };
        EnrichedMorphism {
            src: self.src.clone(),
            tgt: self.tgt.clone(),
            hom,
        }
    }

    /// Deterministic serialization: tag, object labels, then the sorted
    /// term list with weights as `num/den`.
    pub fn serialize(&self) -> String {
        self.to_string()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .hom
            .terms()
            .into_iter()
            .map(|(f, w)| json!({"weight": format_weight(&w), "key": f.key()}))
            .collect();
        json!({
            "model": self.tag().name(),
            "src": M::object_label(&self.src),
            "tgt": M::object_label(&self.tgt),
            "bottom": self.is_bottom(),
            "terms": terms,
        })
    }
}

impl<M: Morphism> Arrow for EnrichedMorphism<M> {
    type Object = M::Object;

    fn src(&self) -> &M::Object {
        &self.src
    }

    fn tgt(&self) -> &M::Object {
        &self.tgt
    }

    fn after(&self, first: &Self) -> Result<Self, BaseError> {
        self.compose_after(first).map_err(|e| match e {
            EnrichError::Base(b) => b,
            other => BaseError::Object(other.to_string()),
        })
    }
}

/// `g ∘ f` in `C_T`.
pub fn enr_compose<M: Morphism>(
    g: &EnrichedMorphism<M>,
    f: &EnrichedMorphism<M>,
) -> Result<EnrichedMorphism<M>, EnrichError> {
    g.compose_after(f)
}

pub fn enr_equal<M: Morphism>(m: &EnrichedMorphism<M>, n: &EnrichedMorphism<M>) -> bool {
    m.canonicalize() == n.canonicalize()
}

/// The homset-algebra combination of parallel morphisms of one model:
///
/// * `Lift` (pointed sets): no parts gives `⊥`, a single part is returned
///   unchanged; the only operation is the constant.
/// * `PPlus`/`POmega` (join semilattices): union, weights ignored; an
///   empty union is `∅` for `POmega` and an error for `PPlus`.
/// * `Dist`/`SubDist` (convex / subconvex): `Σ pᵢ mᵢ`, flattened and
///   collected; weights must be non-negative and total `1` (resp. `≤ 1`).
pub fn enr_mix<M: Morphism>(
    tag: MonadTag,
    src: &M::Object,
    tgt: &M::Object,
    parts: &[(Weight, EnrichedMorphism<M>)],
) -> Result<EnrichedMorphism<M>, EnrichError> {
    for (_, m) in parts {
        if m.tag() != tag {
            return Err(EnrichError::TagMismatch {
                left: tag,
                right: m.tag(),
            });
        }
        if &m.src != src || &m.tgt != tgt {
            return Err(EnrichError::Homset {
                key: m.to_string(),
                src: M::object_label(src),
                tgt: M::object_label(tgt),
            });
        }
    }
    match tag {
        MonadTag::Lift => match parts {
            [] => EnrichedMorphism::bottom(tag, src.clone(), tgt.clone()),
            [(_, only)] => Ok(only.clone()),
            _ => Err(EnrichError::Unsupported(
                "pointed homsets only combine through the constant ⊥".into(),
            )),
        },
        MonadTag::PPlus | MonadTag::POmega => {
            if tag == MonadTag::PPlus && parts.is_empty() {
                return Err(EnrichError::EmptyCombination);
            }
            let members = parts
                .iter()
                .flat_map(|(_, m)| m.support().into_iter().cloned());
            EnrichedMorphism::from_set(tag, src.clone(), tgt.clone(), members)
        }
        MonadTag::Dist | MonadTag::SubDist => {
            let total: Weight = parts.iter().map(|(w, _)| w.clone()).sum();
            if parts.iter().any(|(w, _)| w.is_negative()) {
                return Err(EnrichError::Weight("negative mixing weight".into()));
            }
            let ok = match tag {
                MonadTag::Dist => total.is_one(),
                _ => total <= Weight::one(),
            };
            if !ok {
                return Err(EnrichError::Weight(format!(
                    "mixing weights total {} in a {tag} homset",
                    format_weight(&total)
                )));
            }
            let mut terms = Vec::new();
            for (p, m) in parts {
                if p.is_zero() {
                    continue;
                }
                for (f, q) in m.hom.terms() {
                    terms.push((p * q, f.clone()));
                }
            }
            EnrichedMorphism::from_sum(tag, src.clone(), tgt.clone(), terms)
        }
    }
}

impl<M: Morphism> Render for EnrichedMorphism<M> {
    fn render(&self) -> String {
        self.to_string()
    }
}

impl<M: Morphism> fmt::Display for EnrichedMorphism<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} -> {} : ",
            self.tag(),
            M::object_label(&self.src),
            M::object_label(&self.tgt)
        )?;
        match &self.hom {
            MonadElement::Lift(None) => f.write_str("bottom"),
            MonadElement::Lift(Some(m)) => f.write_str(&m.key()),
            MonadElement::PPlus(s) | MonadElement::POmega(s) => {
                let keys: Vec<String> = s.iter().map(Morphism::key).collect();
                write!(f, "{{{}}}", keys.join(", "))
            }
            MonadElement::Dist(m) | MonadElement::SubDist(m) => {
                if m.is_empty() {
                    return f.write_str("0");
                }
                let terms: Vec<String> = m
                    .iter()
                    .map(|(g, w)| format!("{}*<{}>", format_weight(w), g.key()))
                    .collect();
                f.write_str(&terms.join(" + "))
            }
        }
    }
}
