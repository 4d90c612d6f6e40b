//! Lexicons: words with pregroup types and enriched states, loaded from JSON.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{Map, Value};

use super::{sentence_meaning, PregroupError, PregroupType, TypeAssignment};
use crate::base::{Arrow, FinSet, MatMorphism, MatObj, Morphism, RelMorphism};
use crate::enrich::{EnrichError, EnrichedMorphism};
use crate::monads::MonadTag;
use crate::weight::{format_weight, parse_weight, Weight};

type Em<M> = EnrichedMorphism<M>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexEntry<M: Morphism> {
    pub ty: PregroupType,
    pub state: Em<M>,
}

/// Words with types and states `I → ⟦type⟧` in one enriched model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lexicon<M: Morphism> {
    tag: MonadTag,
    assignment: TypeAssignment<M::Object>,
    words: BTreeMap<String, LexEntry<M>>,
}

impl<M: Morphism> Lexicon<M> {
    pub fn new(tag: MonadTag, assignment: TypeAssignment<M::Object>) -> Self {
        Lexicon {
            tag,
            assignment,
            words: BTreeMap::new(),
        }
    }

    pub fn tag(&self) -> MonadTag {
        self.tag
    }

    pub fn assignment(&self) -> &TypeAssignment<M::Object> {
        &self.assignment
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> impl Iterator<Item = (&String, &LexEntry<M>)> {
        self.words.iter()
    }

    pub fn entry(&self, word: &str) -> Result<&LexEntry<M>, PregroupError> {
        self.words
            .get(word)
            .ok_or_else(|| PregroupError::UnknownWord(word.to_string()))
    }

    /// The left-nested tensor of the objects assigned to `ty`.
    pub fn semantic_object(&self, ty: &PregroupType) -> Result<M::Object, PregroupError> {
        Ok(M::tensor_all(&self.assignment.objects_for(ty.simple())?))
    }

    /// Adds a word after checking the state's model and homset.
    pub fn insert(
        &mut self,
        word: impl Into<String>,
        ty: PregroupType,
        state: Em<M>,
    ) -> Result<(), PregroupError> {
        if state.tag() != self.tag {
            return Err(EnrichError::TagMismatch {
                left: self.tag,
                right: state.tag(),
            }
            .into());
        }
        let obj = self.semantic_object(&ty)?;
        if state.src() != &M::unit_object() || state.tgt() != &obj {
            return Err(EnrichError::Homset {
                key: state.to_string(),
                src: M::object_label(&M::unit_object()),
                tgt: M::object_label(&obj),
            }
            .into());
        }
        self.words.insert(word.into(), LexEntry { ty, state });
        Ok(())
    }

    /// Applies `f` to every state, producing a lexicon of model `tag`.
    pub fn map_states(
        &self,
        tag: MonadTag,
        f: impl Fn(&Em<M>) -> Result<Em<M>, EnrichError>,
    ) -> Result<Lexicon<M>, PregroupError> {
        let mut out = Lexicon::new(tag, self.assignment.clone());
        for (w, e) in &self.words {
            out.insert(w.clone(), e.ty.clone(), f(&e.state)?)?;
        }
        Ok(out)
    }

    /// Re-reads every state in model `tag` with [`convert_state`].
    pub fn convert(&self, tag: MonadTag) -> Result<Lexicon<M>, PregroupError> {
        self.map_states(tag, |m| convert_state(m, tag))
    }

    pub fn meaning(&self, words: &[&str], target: &PregroupType) -> Result<Em<M>, PregroupError> {
        sentence_meaning(self, words, target, self.tag)
    }
}

/// Reads a state in another model along a structure-preserving map:
///
/// * into `pomega`: the support, so `⊥` becomes `∅`;
/// * into `pplus`: the support, which must be non-empty;
/// * into `subdist`: the embeddings from `lift` and `dist`;
/// * into `dist`: a lifted arrow `f` as `1|f⟩`, or a subdistribution of
///   total weight one;
/// * into `lift`: any state with at most one base morphism of full weight.
///
/// Anything else has no faithful reading and is an error.
pub fn convert_state<M: Morphism>(m: &Em<M>, target: MonadTag) -> Result<Em<M>, EnrichError> {
    let from = m.tag();
    if from == target {
        return Ok(m.clone());
    }
    let (src, tgt) = (m.src().clone(), m.tgt().clone());
    let members = || m.support().into_iter().cloned();
    let refuse = || {
        EnrichError::Unsupported(format!(
            "no structure-preserving reading of {from} state {m} as {target}"
        ))
    };
    match target {
        MonadTag::POmega => Em::from_set(target, src, tgt, members()),
        MonadTag::PPlus => {
            if m.support().is_empty() {
                return Err(refuse());
            }
            Em::from_set(target, src, tgt, members())
        }
        MonadTag::SubDist => match from {
            MonadTag::Lift | MonadTag::Dist => Em::from_sum(
                target,
                src,
                tgt,
                m.hom().terms().into_iter().map(|(f, w)| (w, f.clone())),
            ),
            _ => Err(refuse()),
        },
        MonadTag::Dist => {
            let terms: Vec<(Weight, M)> =
                m.hom().terms().into_iter().map(|(f, w)| (w, f.clone())).collect();
            let total: Weight = terms.iter().map(|(w, _)| w.clone()).sum();
            let ok = match from {
                MonadTag::Lift => !m.is_bottom(),
                MonadTag::SubDist => total == Weight::from_integer(1.into()),
                _ => false,
            };
            if !ok {
                return Err(refuse());
            }
            Em::from_sum(target, src, tgt, terms)
        }
        MonadTag::Lift => {
            let terms = m.hom().terms();
            match terms.as_slice() {
                [] => Em::bottom(target, src, tgt),
                [(f, w)] if *w == Weight::from_integer(1.into()) => {
                    Ok(Em::lift_base((*f).clone(), target))
                }
                _ => Err(refuse()),
            }
        }
    }
}

/// A lexicon over either base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyLexicon {
    Rel(Lexicon<RelMorphism>),
    Mat(Lexicon<MatMorphism>),
}

impl AnyLexicon {
    pub fn tag(&self) -> MonadTag {
        match self {
            AnyLexicon::Rel(l) => l.tag(),
            AnyLexicon::Mat(l) => l.tag(),
        }
    }

    pub fn base_name(&self) -> &'static str {
        match self {
            AnyLexicon::Rel(_) => "rel",
            AnyLexicon::Mat(_) => "mat",
        }
    }

    pub fn len(&self) -> usize {
        match self {
            AnyLexicon::Rel(l) => l.len(),
            AnyLexicon::Mat(l) => l.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn convert(&self, tag: MonadTag) -> Result<AnyLexicon, PregroupError> {
        Ok(match self {
            AnyLexicon::Rel(l) => AnyLexicon::Rel(l.convert(tag)?),
            AnyLexicon::Mat(l) => AnyLexicon::Mat(l.convert(tag)?),
        })
    }

    /// The serialized meaning and its JSON form.
    pub fn meaning(
        &self,
        words: &[&str],
        target: &PregroupType,
    ) -> Result<(String, Value), PregroupError> {
        Ok(match self {
            AnyLexicon::Rel(l) => {
                let m = l.meaning(words, target)?;
                (m.serialize(), m.to_json())
            }
            AnyLexicon::Mat(l) => {
                let m = l.meaning(words, target)?;
                (m.serialize(), m.to_json())
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexiconError {
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for LexiconError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(n) => write!(f, "line {n}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for LexiconError {}

/// Locates `"key"` in the source, starting the search after `after`.
fn line_of(text: &str, key: &str, after: Option<&str>) -> Option<usize> {
    let start = after
        .and_then(|a| text.find(&format!("\"{a}\"")))
        .unwrap_or(0);
    let pos = text[start..].find(&format!("\"{key}\""))? + start;
    Some(text[..pos].matches('\n').count() + 1)
}

struct Ctx<'t> {
    text: &'t str,
}

impl Ctx<'_> {
    fn err(&self, key: &str, after: Option<&str>, message: impl Into<String>) -> LexiconError {
        LexiconError {
            line: line_of(self.text, key, after),
            message: message.into(),
        }
    }
}

/// Parses and validates a lexicon. Every top-level field is optional:
/// `model` defaults to `dist`, `base` to `rel`, and an empty document is
/// an empty lexicon.
pub fn load_lexicon(text: &str) -> Result<AnyLexicon, LexiconError> {
    let ctx = Ctx { text };
    let root: Value = if text.trim().is_empty() {
        Value::Object(Map::new())
    } else {
        serde_json::from_str(text).map_err(|e| LexiconError {
            line: Some(e.line()),
            message: format!("malformed JSON: {e}"),
        })?
    };
    let root = root
        .as_object()
        .ok_or_else(|| LexiconError { line: Some(1), message: "expected a JSON object".into() })?;
    for key in root.keys() {
        if !["model", "base", "objects", "words"].contains(&key.as_str()) {
            return Err(ctx.err(key, None, format!("unknown field `{key}`")));
        }
    }

    let tag: MonadTag = match root.get("model") {
        None => MonadTag::Dist,
        Some(Value::String(s)) => s
            .parse()
            .map_err(|_| ctx.err("model", None, format!("unknown model `{s}`")))?,
        Some(_) => return Err(ctx.err("model", None, "`model` must be a string")),
    };
    let empty = Map::new();
    let objects = match root.get("objects") {
        None => &empty,
        Some(Value::Object(o)) => o,
        Some(_) => return Err(ctx.err("objects", None, "`objects` must be an object")),
    };
    let words = match root.get("words") {
        None => &empty,
        Some(Value::Object(o)) => o,
        Some(_) => return Err(ctx.err("words", None, "`words` must be an object")),
    };

    match root.get("base").map(|v| v.as_str()) {
        None | Some(Some("rel")) => {
            let mut asg = TypeAssignment::new();
            for (basic, v) in objects {
                let set = match v {
                    Value::Array(items) => {
                        let labels: Option<Vec<&str>> = items.iter().map(Value::as_str).collect();
                        let labels = labels.ok_or_else(|| {
                            ctx.err(basic, Some("objects"), "element labels must be strings")
                        })?;
                        FinSet::new(basic.as_str(), labels)
                            .map_err(|e| ctx.err(basic, Some("objects"), e.to_string()))?
                    }
                    Value::Number(n) => {
                        let size = n.as_u64().ok_or_else(|| {
                            ctx.err(basic, Some("objects"), "size must be a non-negative integer")
                        })?;
                        FinSet::numbered(basic, size as usize)
                    }
                    _ => {
                        return Err(ctx.err(
                            basic,
                            Some("objects"),
                            "a FinRel object is a list of element labels or a size",
                        ))
                    }
                };
                asg.insert(basic.clone(), set);
            }
            let lex = build_words(&ctx, tag, asg, words, |tgt: &FinSet, col: Vec<Value>| {
                let rows = col
                    .iter()
                    .map(|v| match v {
                        Value::Bool(b) => Ok(vec![*b]),
                        Value::Number(n) if n.as_u64() == Some(0) => Ok(vec![false]),
                        Value::Number(n) if n.as_u64() == Some(1) => Ok(vec![true]),
                        other => Err(format!("relation entries are 0/1, found {other}")),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                RelMorphism::from_matrix(FinSet::unit(), tgt.clone(), &rows).map_err(|e| e.to_string())
            })?;
            Ok(AnyLexicon::Rel(lex))
        }
        Some(Some("mat")) => {
            let mut asg = TypeAssignment::new();
            for (basic, v) in objects {
                let dim = match v {
                    Value::Number(n) => n.as_u64().map(|d| d as usize),
                    Value::Array(items) => Some(items.len()),
                    _ => None,
                }
                .ok_or_else(|| {
                    ctx.err(basic, Some("objects"), "a FinMat object is a dimension")
                })?;
                asg.insert(basic.clone(), MatObj::new(basic.as_str(), dim));
            }
            let lex = build_words(&ctx, tag, asg, words, |tgt: &MatObj, col: Vec<Value>| {
                let rows = col
                    .iter()
                    .map(|v| json_weight(v).map(|w| vec![w]))
                    .collect::<Result<Vec<_>, _>>()?;
                MatMorphism::from_rows(MatObj::unit(), tgt.clone(), rows).map_err(|e| e.to_string())
            })?;
            Ok(AnyLexicon::Mat(lex))
        }
        _ => Err(ctx.err("base", None, "`base` must be \"rel\" or \"mat\"")),
    }
}

fn json_weight(v: &Value) -> Result<Weight, String> {
    match v {
        Value::String(s) => parse_weight(s).map_err(|e| e.to_string()),
        Value::Number(n) => parse_weight(&n.to_string()).map_err(|e| e.to_string()),
        other => Err(format!("expected a number or \"p/q\", found {other}")),
    }
}

/// A state's matrix: a flat column, or rows of one entry each.
fn column(v: &Value) -> Result<Vec<Value>, String> {
    let items = v.as_array().ok_or("`matrix` must be an array")?;
    items
        .iter()
        .map(|item| match item {
            Value::Array(row) if row.len() == 1 => Ok(row[0].clone()),
            Value::Array(row) => Err(format!(
                "a state has one column, found a row of length {}",
                row.len()
            )),
            other => Ok(other.clone()),
        })
        .collect()
}

fn build_words<M: Morphism>(
    ctx: &Ctx<'_>,
    tag: MonadTag,
    assignment: TypeAssignment<M::Object>,
    words: &Map<String, Value>,
    build: impl Fn(&M::Object, Vec<Value>) -> Result<M, String>,
) -> Result<Lexicon<M>, LexiconError> {
    let mut lex = Lexicon::new(tag, assignment);
    for (word, fields) in words {
        let err = |message: String| ctx.err(word, Some("words"), format!("word `{word}`: {message}"));
        let fields = fields.as_object().ok_or_else(|| err("entry must be an object".into()))?;
        for key in fields.keys() {
            if !["type", "terms", "bottom"].contains(&key.as_str()) {
                return Err(err(format!("unknown field `{key}`")));
            }
        }
        let ty: PregroupType = fields
            .get("type")
            .and_then(Value::as_str)
            .ok_or_else(|| err("missing string field `type`".into()))?
            .parse()
            .map_err(|e: PregroupError| err(e.to_string()))?;
        let obj = lex.semantic_object(&ty).map_err(|e| err(e.to_string()))?;
        let unit = M::unit_object();
        let bottom = fields.get("bottom").and_then(Value::as_bool).unwrap_or(false);
        let terms = match fields.get("terms") {
            None => Vec::new(),
            Some(Value::Array(t)) => t.clone(),
            Some(_) => return Err(err("`terms` must be an array".into())),
        };

        let state = if bottom {
            if !terms.is_empty() {
                return Err(err("a bottom entry has no terms".into()));
            }
            Em::bottom(tag, unit, obj).map_err(|e| err(e.to_string()))?
        } else {
            let mut parsed: Vec<(Option<Weight>, M)> = Vec::new();
            for (i, t) in terms.iter().enumerate() {
                let t = t
                    .as_object()
                    .ok_or_else(|| err(format!("term {i} must be an object")))?;
                let weight = t
                    .get("weight")
                    .map(json_weight)
                    .transpose()
                    .map_err(|e| err(format!("term {i}: {e}")))?;
                let matrix = t
                    .get("matrix")
                    .ok_or_else(|| err(format!("term {i}: missing `matrix`")))?;
                let col = column(matrix).map_err(|e| err(format!("term {i}: {e}")))?;
                let f = build(&obj, col).map_err(|e| err(format!("term {i}: {e}")))?;
                parsed.push((weight, f));
            }
            let arrows = parsed.iter().map(|(_, f)| f.clone());
            match tag {
                MonadTag::Lift => match parsed.as_slice() {
                    [(_, f)] => Em::lift_base(f.clone(), tag),
                    _ => {
                        return Err(err(format!(
                            "a lift entry has exactly one term or \"bottom\": true, found {} terms",
                            parsed.len()
                        )))
                    }
                },
                MonadTag::PPlus | MonadTag::POmega => {
                    Em::from_set(tag, unit, obj, arrows).map_err(|e| err(e.to_string()))?
                }
                MonadTag::Dist | MonadTag::SubDist => {
                    let weighted = parsed
                        .iter()
                        .enumerate()
                        .map(|(i, (w, f))| {
                            w.clone()
                                .map(|w| (w, f.clone()))
                                .ok_or_else(|| err(format!("term {i}: missing `weight`")))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    let total: Weight = weighted.iter().map(|(w, _)| w.clone()).sum();
                    Em::from_sum(tag, unit, obj, weighted).map_err(|e| match e {
                        EnrichError::Weight(_) => err(format!(
                            "weights total {} which is invalid for {tag}",
                            format_weight(&total)
                        )),
                        other => err(other.to_string()),
                    })?
                }
            }
        };
        lex.insert(word.clone(), ty, state)
            .map_err(|e| err(e.to_string()))?;
    }
    Ok(lex)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::ratio;

    const BANK: &str = r#"{
  "model": "dist",
  "base": "rel",
  "objects": { "n": ["finance", "river"] },
  "words": {
    "bank": {
      "type": "n",
      "terms": [
        { "weight": "9/10", "matrix": [1, 0] },
        { "weight": "1/10", "matrix": [[0], [1]] }
      ]
    }
  }
}"#;

    #[test]
    fn bank_demo_loads() {
        let AnyLexicon::Rel(lex) = load_lexicon(BANK).unwrap() else {
            panic!("rel lexicon expected")
        };
        let state = &lex.entry("bank").unwrap().state;
        let n = lex.assignment().get("n").unwrap().clone();
        let finance = RelMorphism::from_pairs(FinSet::unit(), n.clone(), [(0, 0)]).unwrap();
        let river = RelMorphism::from_pairs(FinSet::unit(), n.clone(), [(0, 1)]).unwrap();
        let expected = Em::from_sum(
            MonadTag::Dist,
            FinSet::unit(),
            n,
            [(ratio(9, 10), finance), (ratio(1, 10), river)],
        )
        .unwrap();
        assert_eq!(state, &expected);
    }

    #[test]
    fn empty_text_is_empty_lexicon() {
        assert!(load_lexicon("").unwrap().is_empty());
        assert!(load_lexicon("  {}\n").unwrap().is_empty());
    }

    #[test]
    fn weight_violation_reports_line() {
        let bad = BANK.replace("\"1/10\"", "\"3/10\"");
        let e = load_lexicon(&bad).unwrap_err();
        assert_eq!(e.line, Some(6));
        assert!(e.message.contains("6/5"), "{e}");
    }

    #[test]
    fn other_validation_errors() {
        let e = load_lexicon("{\n  \"model\": \"bogus\"\n}").unwrap_err();
        assert_eq!(e.line, Some(2));
        let e = load_lexicon(&BANK.replace("\"type\": \"n\"", "\"type\": \"q\"")).unwrap_err();
        assert!(e.message.contains("`q`"), "{e}");
        let e = load_lexicon(&BANK.replace("[1, 0]", "[1, 0, 1]")).unwrap_err();
        assert!(e.message.contains("term 0"), "{e}");
        let e = load_lexicon("{ \"words\": [ }").unwrap_err();
        assert_eq!(e.line, Some(1));
    }

    #[test]
    fn bottom_entries() {
        let text = r#"{ "model": "lift", "objects": {"n": 2}, "words": {"x": {"type": "n", "bottom": true}} }"#;
        let AnyLexicon::Rel(lex) = load_lexicon(text).unwrap() else { panic!() };
        assert!(lex.entry("x").unwrap().state.is_bottom());
        let text = text.replace("lift", "dist");
        assert!(load_lexicon(&text).is_err());
    }

    #[test]
    fn mat_lexicon() {
        let text = r#"{ "model": "subdist", "base": "mat", "objects": {"n": 2},
            "words": {"v": {"type": "n", "terms": [{"weight": 0.5, "matrix": ["1/3", 2]}]}} }"#;
        let AnyLexicon::Mat(lex) = load_lexicon(text).unwrap() else { panic!() };
        let s = &lex.entry("v").unwrap().state;
        assert_eq!(s.hom().terms()[0].1, ratio(1, 2));
    }

    #[test]
    fn conversions() {
        let lex = load_lexicon(BANK).unwrap();
        let set = lex.convert(MonadTag::POmega).unwrap();
        let AnyLexicon::Rel(l) = &set else { panic!() };
        assert_eq!(l.entry("bank").unwrap().state.support().len(), 2);
        assert!(lex.convert(MonadTag::Lift).is_err());
        let sub = lex.convert(MonadTag::SubDist).unwrap();
        assert_eq!(sub.convert(MonadTag::Dist).unwrap(), lex);
    }
}
