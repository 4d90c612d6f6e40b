//! From reductions to cap-and-identity wirings, and sentence meanings.

use std::collections::BTreeMap;

use super::{parse, Lexicon, PregroupError, PregroupType, Reduction, SimpleType};
use crate::base::{Arrow, Morphism};
use crate::enrich::{EnrichError, EnrichedMorphism};
use crate::monads::MonadTag;

/// The object part of the semantics functor: basic type → base object.
/// Every adjoint of a basic type is sent to the same (self-dual) object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeAssignment<O> {
    objects: BTreeMap<String, O>,
}

impl<O: Clone> Default for TypeAssignment<O> {
    fn default() -> Self {
        TypeAssignment {
            objects: BTreeMap::new(),
        }
    }
}

impl<O: Clone> TypeAssignment<O> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, basic: impl Into<String>, obj: O) {
        self.objects.insert(basic.into(), obj);
    }

    pub fn get(&self, basic: &str) -> Result<&O, PregroupError> {
        self.objects
            .get(basic)
            .ok_or_else(|| PregroupError::Assignment(basic.to_string()))
    }

    pub fn basics(&self) -> impl Iterator<Item = (&String, &O)> {
        self.objects.iter()
    }

    pub fn objects_for(&self, types: &[SimpleType]) -> Result<Vec<O>, PregroupError> {
        types.iter().map(|t| self.get(&t.basic).cloned()).collect()
    }
}

/// The wiring of a reduction: for each contraction, a cap on the two
/// cancelled positions tensored with identities, glued by coherence
/// isomorphisms between left-nested tensors. The result maps the tensor
/// of the whole type string to the tensor of what remains.
pub fn semantics_wiring<M: Morphism>(
    reduction: &Reduction,
    types: &[PregroupType],
    assignment: &TypeAssignment<M::Object>,
) -> Result<M, PregroupError> {
    let flat = PregroupType::concat(types).0;
    reduction.replay(&flat)?;
    let mut objs = assignment.objects_for(&flat)?;
    let mut wiring = M::identity(&M::tensor_all(&objs));
    for &i in &reduction.steps {
        let left = M::identity(&M::tensor_all(&objs[..i]));
        let right = M::identity(&M::tensor_all(&objs[i + 2..]));
        let piece = left.tensor(&M::cap(&objs[i])).tensor(&right);
        let mut rest = objs[..i].to_vec();
        rest.extend_from_slice(&objs[i + 2..]);
        let pre = M::coherence(&M::tensor_all(&objs), piece.src())?;
        let post = M::coherence(piece.tgt(), &M::tensor_all(&rest))?;
        wiring = post.after(&piece.after(&pre.after(&wiring)?)?)?;
        objs = rest;
    }
    Ok(wiring)
}

/// Parses the words' types to `target`, tensors their states and applies
/// the lifted wiring, all in the model `tag`.
pub fn sentence_meaning<M: Morphism>(
    lexicon: &Lexicon<M>,
    words: &[&str],
    target: &PregroupType,
    tag: MonadTag,
) -> Result<EnrichedMorphism<M>, PregroupError> {
    if lexicon.tag() != tag {
        return Err(EnrichError::TagMismatch {
            left: tag,
            right: lexicon.tag(),
        }
        .into());
    }
    let entries = words
        .iter()
        .map(|w| lexicon.entry(w))
        .collect::<Result<Vec<_>, _>>()?;
    let types: Vec<PregroupType> = entries.iter().map(|e| e.ty.clone()).collect();
    let reduction = parse(&types, target).ok_or_else(|| PregroupError::NoParse {
        types: types
            .iter()
            .map(|t| format!("[{t}]"))
            .collect::<Vec<_>>()
            .join(" "),
        target: target.to_string(),
    })?;
    let wiring: M = semantics_wiring(&reduction, &types, lexicon.assignment())?;

    let unit = M::unit_object();
    let mut states = entries.iter().map(|e| e.state.clone());
    let state = match states.next() {
        None => EnrichedMorphism::identity(tag, &unit),
        Some(first) => states.try_fold(first, |acc, s| acc.tensor(&s))?,
    };
    let into = EnrichedMorphism::coherence(tag, &unit, state.src())?;
    let onto = EnrichedMorphism::coherence(tag, state.tgt(), wiring.src())?;
    let meaning = EnrichedMorphism::lift_base(wiring, tag)
        .compose_after(&onto.compose_after(&state.compose_after(&into)?)?)?;
    Ok(meaning.canonicalize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::{FinSet, MatMorphism, MatObj, RelMorphism};

    fn ty(s: &str) -> PregroupType {
        s.parse().unwrap()
    }

    fn rel_assignment() -> TypeAssignment<FinSet> {
        let mut a = TypeAssignment::new();
        a.insert("n", FinSet::new("n", ["x", "y"]).unwrap());
        a.insert("s", FinSet::new("s", ["t", "f"]).unwrap());
        a
    }

    #[test]
    fn transitive_wiring_is_cap_id_cap() {
        let types = [ty("n"), ty("n^r s n^l"), ty("n")];
        let r = parse(&types, &ty("s")).unwrap();
        let asg = rel_assignment();
        let w: RelMorphism = semantics_wiring(&r, &types, &asg).unwrap();

        let n = asg.get("n").unwrap().clone();
        let s = asg.get("s").unwrap().clone();
        let direct = RelMorphism::cap(&n)
            .tensor(&RelMorphism::identity(&s))
            .tensor(&RelMorphism::cap(&n));
        let flat = RelMorphism::tensor_all(&[n.clone(), n.clone(), s.clone(), n.clone(), n]);
        let expected = RelMorphism::coherence(direct.tgt(), &s)
            .unwrap()
            .after(&direct.after(&RelMorphism::coherence(&flat, direct.src()).unwrap()).unwrap())
            .unwrap();
        assert_eq!(w, expected);
    }

    #[test]
    fn empty_reduction_is_identity() {
        let asg = rel_assignment();
        let w: RelMorphism = semantics_wiring(&Reduction::default(), &[ty("s")], &asg).unwrap();
        assert_eq!(w, RelMorphism::identity(asg.get("s").unwrap()));
    }

    #[test]
    fn single_contraction_is_cap() {
        let mut asg = TypeAssignment::new();
        asg.insert("n", MatObj::new("n", 2));
        let types = [ty("n"), ty("n^r")];
        let r = parse(&types, &ty("")).unwrap();
        let w: MatMorphism = semantics_wiring(&r, &types, &asg).unwrap();
        let n = MatObj::new("n", 2);
        let cap = MatMorphism::cap(&n);
        let expected = MatMorphism::coherence(cap.tgt(), &MatMorphism::unit_object())
            .unwrap()
            .after(&cap)
            .unwrap();
        assert_eq!(w, expected);
    }

    #[test]
    fn missing_assignment() {
        let asg = rel_assignment();
        let r = Reduction::default();
        assert_eq!(
            semantics_wiring::<RelMorphism>(&r, &[ty("q")], &asg),
            Err(PregroupError::Assignment("q".into()))
        );
    }
}
