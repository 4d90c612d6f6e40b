//! Ready-made law suites, shared by the command line and the acceptance tests.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::base::{FinSet, MatMorphism, RelMorphism};
use crate::enrich::{
    check_dagger_compact, enumerate_homset, probability_of_scalar, scalar_from_probability,
};
use crate::monads::{
    check_commutativity, check_monad_laws, check_pomega_iso, check_relevant, check_subdist_iso,
    is_affine, MonadTag,
};
use crate::relate::{
    check_embedding_functorial, check_embedding_square, check_enrichment_conditions,
    check_free_model_conditions, check_support_enrichment, check_uniform_functor,
    mat_zero_algebra, random_condition_samples, rel_exhaustive_samples, rel_intersection_algebra,
    rel_union_algebra, search_counterexample, EmbeddingTag, EnrichmentKind,
};
use crate::report::{Check, Report, Witness};
use crate::weight::{format_weight, ratio};

/// The base category underneath the enrichments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Base {
    #[default]
    Rel,
    Mat,
}

impl FromStr for Base {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rel" => Ok(Base::Rel),
            "mat" => Ok(Base::Mat),
            other => Err(format!("unknown base `{other}` (expected rel or mat)")),
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Base::Rel => "rel",
            Base::Mat => "mat",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Monads,
    Enrich,
    Relate,
    All,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "monads" => Ok(Suite::Monads),
            "enrich" => Ok(Suite::Enrich),
            "relate" => Ok(Suite::Relate),
            "all" => Ok(Suite::All),
            other => Err(format!(
                "unknown suite `{other}` (expected monads, enrich, relate or all)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    pub models: Vec<MonadTag>,
    pub base: Base,
    pub seed: u64,
    pub samples: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            models: MonadTag::ALL.to_vec(),
            base: Base::Rel,
            seed: 1,
            samples: 200,
        }
    }
}

pub fn run(suite: Suite, config: &SuiteConfig) -> Vec<Report> {
    let SuiteConfig { models, base, seed, samples } = config;
    let (seed, samples) = (*seed, *samples);
    let mut out = Vec::new();
    if matches!(suite, Suite::Monads | Suite::All) {
        out.extend(monad_laws(models, samples, seed));
        out.extend(commutativity(models, samples, seed));
        out.extend(isomorphisms(samples, seed));
        out.push(affine_relevant(samples, seed));
    }
    if matches!(suite, Suite::Enrich | Suite::All) {
        out.extend(dagger_compact(models, *base, samples, seed));
        out.push(scalars(samples, seed));
    }
    if matches!(suite, Suite::Relate | Suite::All) {
        out.extend(embeddings(*base, samples, seed));
        out.extend(conditions(models, *base, samples, seed));
        out.extend(support(*base, samples, seed));
        out.push(negative_control(&check_uniform_functor(samples, seed)));
        out.push(search_counterexample(4));
    }
    out
}

/// Unit and associativity laws on carriers of size 0 to 3.
pub fn monad_laws(models: &[MonadTag], samples: usize, seed: u64) -> Vec<Report> {
    models
        .iter()
        .flat_map(|&tag| (0..=3).map(move |n| check_monad_laws(tag, n, samples, seed)))
        .collect()
}

/// Double-strength agreement on carriers of size 0 to 2.
pub fn commutativity(models: &[MonadTag], samples: usize, seed: u64) -> Vec<Report> {
    let mut out = Vec::new();
    for &tag in models {
        for a in 0..=2 {
            for b in 0..=2 {
                out.push(check_commutativity(tag, a, b, samples, seed));
            }
        }
    }
    out
}

pub fn isomorphisms(samples: usize, seed: u64) -> Vec<Report> {
    let mut out: Vec<Report> = (0..=3).map(check_pomega_iso).collect();
    out.extend((0..=3).map(|n| check_subdist_iso(n, samples, seed)));
    out
}

/// Affinity of every monad against the expected set `{pplus, dist}`,
/// and relevance of `lift` on carriers of size 0 to 3.
pub fn affine_relevant(samples: usize, seed: u64) -> Report {
    let mut report = Report::new("affine and relevant monads");
    let mut affine = Check::new("affine exactly for pplus and dist");
    for tag in MonadTag::ALL {
        let expected = matches!(tag, MonadTag::PPlus | MonadTag::Dist);
        affine.expect(is_affine(tag) == expected, || Witness {
            input: tag.to_string(),
            lhs: format!("affine = {}", is_affine(tag)),
            rhs: format!("expected {expected}"),
        });
    }
    report.push(affine);
    let affine_tags: Vec<&str> = MonadTag::ALL
        .iter()
        .filter(|t| is_affine(**t))
        .map(|t| t.name())
        .collect();
    report.note(format!("affine: {{{}}}", affine_tags.join(", ")));

    for n in 0..=3 {
        let mut r = check_relevant(MonadTag::Lift, n, samples, seed);
        for mut c in r.checks.drain(..) {
            c.name = format!("lift relevant on |X|={n}: {}", c.name);
            report.push(c);
        }
    }
    for tag in MonadTag::ALL.into_iter().filter(|t| *t != MonadTag::Lift) {
        let relevant = check_relevant(tag, 2, samples, seed).passed();
        report.note(format!("{tag} relevant on |X|=2: {relevant}"));
    }
    report
}

pub fn dagger_compact(models: &[MonadTag], base: Base, samples: usize, seed: u64) -> Vec<Report> {
    models
        .iter()
        .map(|&tag| match base {
            Base::Rel => check_dagger_compact::<RelMorphism>(tag, samples, seed),
            Base::Mat => check_dagger_compact::<MatMorphism>(tag, samples, seed),
        })
        .collect()
}

/// Scalars of the enrichments over FinRel: the size of each enumerable
/// scalar homset, and `(p, q) ↦ pq` for `samples` seeded rational pairs
/// in the distribution model.
pub fn scalars(samples: usize, seed: u64) -> Report {
    let mut report = Report::new("scalars over FinRel");
    let unit = FinSet::unit();
    let mut lift = Check::new("lift scalars: exactly 3");
    let count = enumerate_homset(MonadTag::Lift, &unit, &unit)
        .expect("enumerable")
        .len();
    lift.expect(count == 3, || Witness {
        input: "C_⊥(I, I)".into(),
        lhs: count.to_string(),
        rhs: "3".into(),
    });
    report.push(lift);
    for tag in [MonadTag::Lift, MonadTag::PPlus, MonadTag::POmega] {
        let homset = enumerate_homset(tag, &unit, &unit).expect("enumerable");
        let members: Vec<String> = homset.iter().map(|m| m.serialize()).collect();
        report.note(format!("{tag} scalars ({}): {}", members.len(), members.join("; ")));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut product = Check::new("dist scalars compose as (p, q) ↦ pq");
    for _ in 0..samples {
        let mut draw = || {
            let den = rng.gen_range(1..=12i64);
            ratio(rng.gen_range(0..=den), den)
        };
        let (p, q) = (draw(), draw());
        let composite = scalar_from_probability(&q)
            .compose_after(&scalar_from_probability(&p))
            .ok()
            .and_then(|s| probability_of_scalar(&s));
        let expected = &p * &q;
        product.expect(composite.as_ref() == Some(&expected), || Witness {
            input: format!("p = {}, q = {}", format_weight(&p), format_weight(&q)),
            lhs: composite.map_or("error".into(), |w| format_weight(&w)),
            rhs: format_weight(&expected),
        });
    }
    report.push(product);
    report
}

pub fn embeddings(base: Base, samples: usize, seed: u64) -> Vec<Report> {
    let mut out: Vec<Report> = EmbeddingTag::ALL
        .into_iter()
        .map(|tag| match base {
            Base::Rel => check_embedding_functorial::<RelMorphism>(tag, samples, seed),
            Base::Mat => check_embedding_functorial::<MatMorphism>(tag, samples, seed),
        })
        .collect();
    out.push(match base {
        Base::Rel => check_embedding_square::<RelMorphism>(samples, seed),
        Base::Mat => check_embedding_square::<MatMorphism>(samples, seed),
    });
    out
}

/// Enrichment conditions in each free model, FinRel under union (every
/// configuration on two-element sets plus seeded larger ones), FinMat
/// pointed by its zero morphisms, and FinRel under intersection as a
/// negative control.
pub fn conditions(models: &[MonadTag], base: Base, samples: usize, seed: u64) -> Vec<Report> {
    let mut out: Vec<Report> = models
        .iter()
        .map(|&tag| match base {
            Base::Rel => check_free_model_conditions::<RelMorphism>(tag, samples, seed),
            Base::Mat => check_free_model_conditions::<MatMorphism>(tag, samples, seed),
        })
        .collect();

    let mut rel_samples = rel_exhaustive_samples(2);
    rel_samples.extend(random_condition_samples::<RelMorphism>(samples, seed));
    let mut union = check_enrichment_conditions(
        EnrichmentKind::AffineJoin,
        &rel_union_algebra(),
        &rel_samples,
        seed,
    )
    .expect("union provides joins");
    union.title = "FinRel under union is join-semilattice enriched".into();
    out.push(union);

    let mat_samples = random_condition_samples::<MatMorphism>(samples, seed);
    let mut zero = check_enrichment_conditions(
        EnrichmentKind::Pointed,
        &mat_zero_algebra(),
        &mat_samples,
        seed,
    )
    .expect("zero provides bottoms");
    zero.title = "FinMat with zero morphisms is pointed-set enriched".into();
    out.push(zero);

    let mut meet = check_enrichment_conditions(
        EnrichmentKind::AffineJoin,
        &rel_intersection_algebra(),
        &rel_exhaustive_samples(2),
        seed,
    )
    .expect("intersection provides joins");
    meet.title = "FinRel under intersection".into();
    out.push(negative_control(&meet));
    out
}

pub fn support(base: Base, samples: usize, seed: u64) -> Vec<Report> {
    [MonadTag::PPlus, MonadTag::POmega]
        .into_iter()
        .map(|tag| match base {
            Base::Rel => check_support_enrichment::<RelMorphism>(tag, samples, seed),
            Base::Mat => check_support_enrichment::<MatMorphism>(tag, samples, seed),
        })
        .collect()
}

/// Wraps a report that is expected to fail. The wrapper passes when the
/// inner report has at least one failure and prints its first witness.
pub fn negative_control(inner: &Report) -> Report {
    let mut report = Report::new(format!("negative control: {}", inner.title));
    let mut check = Check::new("the checks detect a violation");
    check.expect(!inner.passed(), || Witness {
        input: inner.title.clone(),
        lhs: "every check passed".into(),
        rhs: String::new(),
    });
    report.push(check);
    if let Some(failed) = inner.checks.iter().find(|c| !c.passed()) {
        report.note(format!(
            "{}: {} of {} instances fail",
            failed.name, failed.failures, failed.instances
        ));
        if let Some(w) = failed.witnesses.first() {
            report.note(format!("input: {}", w.input));
            report.note(format!("lhs:   {}", w.lhs));
            if !w.rhs.is_empty() {
                report.note(format!("rhs:   {}", w.rhs));
            }
        }
    }
    report
}

/// One line per report plus a final tally, followed by the full reports
/// of everything that failed.
pub fn summarize(reports: &[Report]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&r.to_string());
        out.push('\n');
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    let checks: usize = reports.iter().map(|r| r.checks.len()).sum();
    out.push_str(&format!(
        "{} reports, {checks} checks, {failed} failing reports\n",
        reports.len()
    ));
    out
}
