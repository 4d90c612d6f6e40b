use std::path::PathBuf;

use ambiguity_core::base::{Arrow, FinSet, Morphism, RelMorphism};
use ambiguity_core::enrich::EnrichedMorphism;
use ambiguity_core::monads::MonadTag;
use ambiguity_core::pregroup::{
    load_lexicon, parse, semantics_wiring, AnyLexicon, Lexicon, PregroupType, TypeAssignment,
};
use ambiguity_core::relate::{embed, EmbeddingTag};
use ambiguity_core::sample::Sampler;
use ambiguity_core::weight::ratio;

fn data(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    std::fs::read_to_string(path).unwrap()
}

fn rel(lex: AnyLexicon) -> Lexicon<RelMorphism> {
    match lex {
        AnyLexicon::Rel(l) => l,
        AnyLexicon::Mat(_) => panic!("expected a FinRel lexicon"),
    }
}

fn ty(s: &str) -> PregroupType {
    s.parse().unwrap()
}

#[test]
fn bank_demo() {
    let lex = rel(load_lexicon(&data("bank.json")).unwrap());
    let meaning = lex.meaning(&["bank"], &ty("n")).unwrap();
    let n = lex.assignment().get("n").unwrap().clone();
    let unit = FinSet::unit();
    let finance = RelMorphism::from_pairs(unit.clone(), n.clone(), [(0, 0)]).unwrap();
    let river = RelMorphism::from_pairs(unit.clone(), n.clone(), [(0, 1)]).unwrap();
    let expected = EnrichedMorphism::from_sum(
        MonadTag::Dist,
        unit,
        n,
        [(ratio(9, 10), finance), (ratio(1, 10), river)],
    )
    .unwrap();
    assert_eq!(meaning, expected);
    assert_eq!(meaning.serialize(), "dist I -> n : 1/10*<I|n|01> + 9/10*<I|n|10>");
}

#[test]
fn transitive_sentences_collect_terms() {
    let lex = rel(load_lexicon(&data("grammar.json")).unwrap());
    let agree = lex.meaning(&["alice", "sees", "bob"], &ty("s")).unwrap();
    assert_eq!(agree.serialize(), "dist I -> s : 1/1*<I|s|10>");
    let split = lex.meaning(&["bob", "sees", "alice"], &ty("s")).unwrap();
    assert_eq!(split.serialize(), "dist I -> s : 3/4*<I|s|01> + 1/4*<I|s|10>");
    assert!(lex.meaning(&["alice", "bob"], &ty("s")).is_err());
}

#[test]
fn bottom_word_gives_bottom_sentence() {
    let lex = rel(load_lexicon(&data("bottom.json")).unwrap());
    assert!(lex.meaning(&["alice", "sees", "bob"], &ty("s")).unwrap().is_bottom());
    assert!(!lex.meaning(&["alice", "sees", "alice"], &ty("s")).unwrap().is_bottom());
}

/// The plain FinRel meaning: wiring after the tensor of the word states.
fn plain_meaning(
    states: &[RelMorphism],
    types: &[PregroupType],
    target: &PregroupType,
    asg: &TypeAssignment<FinSet>,
) -> RelMorphism {
    let r = parse(types, target).unwrap();
    let wiring: RelMorphism = semantics_wiring(&r, types, asg).unwrap();
    let tensor = states[1..].iter().fold(states[0].clone(), |acc, s| acc.tensor(s));
    let into = RelMorphism::coherence(&FinSet::unit(), tensor.src()).unwrap();
    let onto = RelMorphism::coherence(tensor.tgt(), wiring.src()).unwrap();
    wiring.after(&onto.after(&tensor.after(&into).unwrap()).unwrap()).unwrap()
}

#[test]
fn singleton_pomega_lexicons_reproduce_plain_meanings() {
    let n = FinSet::new("n", ["x", "y"]).unwrap();
    let s = FinSet::new("s", ["t", "f"]).unwrap();
    let mut asg = TypeAssignment::new();
    asg.insert("n", n.clone());
    asg.insert("s", s.clone());
    let verb_obj = RelMorphism::tensor_all(&[n.clone(), s.clone(), n.clone()]);
    let types = [ty("n"), ty("n^r s n^l"), ty("n")];
    let mut sampler = Sampler::<RelMorphism>::new(17);
    for _ in 0..50 {
        let states = [
            sampler.base(&FinSet::unit(), &n),
            sampler.base(&FinSet::unit(), &verb_obj),
            sampler.base(&FinSet::unit(), &n),
        ];
        let mut lex = Lexicon::new(MonadTag::POmega, asg.clone());
        for (w, (t, st)) in ["subj", "verb", "obj"].iter().zip(types.iter().zip(&states)) {
            lex.insert(*w, t.clone(), EnrichedMorphism::lift_base(st.clone(), MonadTag::POmega))
                .unwrap();
        }
        let meaning = lex.meaning(&["subj", "verb", "obj"], &ty("s")).unwrap();
        let plain = plain_meaning(&states, &types, &ty("s"), &asg);
        assert_eq!(meaning, EnrichedMorphism::lift_base(plain, MonadTag::POmega));
    }
}

#[test]
fn meanings_commute_with_embeddings() {
    for (file, embedding) in [
        ("bottom.json", EmbeddingTag::BotToPOmega),
        ("bottom.json", EmbeddingTag::BotToSubDist),
        ("grammar.json", EmbeddingTag::DistToSubDist),
    ] {
        let lex = rel(load_lexicon(&data(file)).unwrap());
        let lifted = lex.map_states(embedding.target(), |m| embed(embedding, m)).unwrap();
        for sentence in [["alice", "sees", "bob"], ["alice", "sees", "alice"]] {
            let direct = lex.meaning(&sentence, &ty("s")).unwrap();
            let via = lifted.meaning(&sentence, &ty("s")).unwrap();
            assert_eq!(embed(embedding, &direct).unwrap(), via, "{file} {sentence:?}");
        }
    }
}

#[test]
fn model_conversion_matches_embedding() {
    let lex = load_lexicon(&data("grammar.json")).unwrap();
    let set = rel(lex.convert(MonadTag::POmega).unwrap());
    let meaning = set.meaning(&["bob", "sees", "alice"], &ty("s")).unwrap();
    assert_eq!(meaning.serialize(), "pomega I -> s : {I|s|01, I|s|10}");
}

#[test]
fn repeated_runs_are_byte_identical() {
    let run = || {
        let lex = load_lexicon(&data("grammar.json")).unwrap();
        let (text, json) = lex.meaning(&["bob", "sees", "alice"], &ty("s")).unwrap();
        format!("{text}\n{}", serde_json::to_string(&json).unwrap())
    };
    assert_eq!(run(), run());
}
