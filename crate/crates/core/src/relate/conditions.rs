//! Checking that composition respects a supplied homset algebra.
//!
//! A category is enriched in pointed sets, join semilattices or
//! (sub)convex algebras when composition preserves the algebra in each
//! argument: `⊥ ∘ f = ⊥ = f ∘ ⊥`, `(f ∨ g) ∘ h = (f ∘ h) ∨ (g ∘ h)`, and
//! `(Σ pᵢ fᵢ) ∘ g = Σ pᵢ (fᵢ ∘ g)`, together with their mirror images.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::Em;
use crate::base::{Arrow, FinSet, MatMorphism, Morphism, RelMorphism};
use crate::enrich::{enr_mix, EnrichError};
use crate::monads::{random_weights, MonadTag};
use crate::report::{Check, Render, Report};
use crate::sample::{RandomArrow, Sampler};
use crate::weight::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EnrichmentKind {
    /// pointed sets
    Pointed,
    /// join semilattices without bottom
    AffineJoin,
    /// join semilattices with bottom
    Join,
    Convex,
    Subconvex,
}

impl EnrichmentKind {
    /// The homset structure of the free model `C_T`.
    pub fn for_tag(tag: MonadTag) -> Self {
        match tag {
            MonadTag::Lift => EnrichmentKind::Pointed,
            MonadTag::PPlus => EnrichmentKind::AffineJoin,
            MonadTag::POmega => EnrichmentKind::Join,
            MonadTag::Dist => EnrichmentKind::Convex,
            MonadTag::SubDist => EnrichmentKind::Subconvex,
        }
    }

    fn needs_bottom(self) -> bool {
        matches!(
            self,
            EnrichmentKind::Pointed | EnrichmentKind::Join | EnrichmentKind::Subconvex
        )
    }

    fn needs_join(self) -> bool {
        matches!(self, EnrichmentKind::AffineJoin | EnrichmentKind::Join)
    }

    fn needs_convex(self) -> bool {
        matches!(self, EnrichmentKind::Convex | EnrichmentKind::Subconvex)
    }
}

impl fmt::Display for EnrichmentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EnrichmentKind::Pointed => "pointed",
            EnrichmentKind::AffineJoin => "affine join",
            EnrichmentKind::Join => "join",
            EnrichmentKind::Convex => "convex",
            EnrichmentKind::Subconvex => "subconvex",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelateError {
    #[error("specification error: {kind} enrichment needs a {operation} operation")]
    MissingOperation {
        kind: EnrichmentKind,
        operation: &'static str,
    },
    #[error(transparent)]
    Enrich(#[from] EnrichError),
}

type BottomFn<'a, A> = dyn Fn(&<A as Arrow>::Object, &<A as Arrow>::Object) -> Result<A, String> + 'a;
type JoinFn<'a, A> = dyn Fn(&A, &A) -> Result<A, String> + 'a;
type ConvexFn<'a, A> =
    dyn Fn(&<A as Arrow>::Object, &<A as Arrow>::Object, &[(Weight, A)]) -> Result<A, String> + 'a;

/// The operations a homset algebra provides; absent ones are `None`.
pub struct HomsetAlgebra<'a, A: Arrow> {
    pub bottom: Option<Box<BottomFn<'a, A>>>,
    pub join: Option<Box<JoinFn<'a, A>>>,
    pub convex: Option<Box<ConvexFn<'a, A>>>,
}

impl<'a, A: Arrow> HomsetAlgebra<'a, A> {
    pub fn empty() -> Self {
        HomsetAlgebra {
            bottom: None,
            join: None,
            convex: None,
        }
    }
}

/// `pre : C → A`, parallel arrows `A → B` and `post : B → D`.
#[derive(Debug, Clone)]
pub struct ConditionSample<A> {
    pub pre: A,
    pub parallel: Vec<A>,
    pub post: A,
}

fn fmt_sample<A: Render>(s: &ConditionSample<A>) -> String {
    let ps: Vec<String> = s.parallel.iter().map(Render::render).collect();
    format!("pre={} parallel=[{}] post={}", s.pre.render(), ps.join(", "), s.post.render())
}

fn compare<A: Arrow + Render>(
    check: &mut Check,
    input: impl FnOnce() -> String,
    lhs: Result<A, String>,
    rhs: Result<A, String>,
) {
    match (lhs, rhs) {
        (Ok(l), Ok(r)) => {
            check.expect_eq(input, &l, &r);
        }
        (l, r) => check.fail(input(), format!("{:?} / {:?}", l.err(), r.err())),
    }
}

fn after<A: Arrow>(g: &A, f: &A) -> Result<A, String> {
    g.after(f).map_err(|e| e.to_string())
}

/// Verifies the equations that `kind` requires on every sample.
/// Convex weights are drawn from `seed`: they total `1` for convex and at
/// most `1` for subconvex algebras.
pub fn check_enrichment_conditions<A: Arrow + Render>(
    kind: EnrichmentKind,
    algebra: &HomsetAlgebra<'_, A>,
    samples: &[ConditionSample<A>],
    seed: u64,
) -> Result<Report, RelateError> {
    let missing = |operation| RelateError::MissingOperation { kind, operation };
    let bottom = match (&algebra.bottom, kind.needs_bottom()) {
        (Some(b), true) => Some(b),
        (None, true) => return Err(missing("bottom")),
        _ => None,
    };
    let join = match (&algebra.join, kind.needs_join()) {
        (Some(j), true) => Some(j),
        (None, true) => return Err(missing("join")),
        _ => None,
    };
    let convex = match (&algebra.convex, kind.needs_convex()) {
        (Some(c), true) => Some(c),
        (None, true) => return Err(missing("convex combination")),
        _ => None,
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks: Vec<Check> = Vec::new();
    let mut bot_left = Check::new("⊥ ∘ f = ⊥");
    let mut bot_right = Check::new("f ∘ ⊥ = ⊥");
    let mut join_pre = Check::new("(f ∨ g) ∘ h = (f ∘ h) ∨ (g ∘ h)");
    let mut join_post = Check::new("k ∘ (f ∨ g) = (k ∘ f) ∨ (k ∘ g)");
    let mut convex_pre = Check::new("(Σ pᵢ fᵢ) ∘ h = Σ pᵢ (fᵢ ∘ h)");
    let mut convex_post = Check::new("k ∘ (Σ pᵢ fᵢ) = Σ pᵢ (k ∘ fᵢ)");

    for s in samples {
        let f = &s.parallel[0];
        let g = s.parallel.get(1).unwrap_or(f);
        let (h, k) = (&s.pre, &s.post);
        let (a, b) = (f.src(), f.tgt());
        let input = || fmt_sample(s);

        if let Some(bot) = bottom {
            compare(
                &mut bot_left,
                input,
                bot(b, k.tgt()).and_then(|z| after(&z, f)),
                bot(a, k.tgt()),
            );
            compare(
                &mut bot_right,
                input,
                bot(h.src(), a).and_then(|z| after(f, &z)),
                bot(h.src(), b),
            );
        }
        if let Some(join) = join {
            compare(
                &mut join_pre,
                input,
                join(f, g).and_then(|fg| after(&fg, h)),
                after(f, h).and_then(|fh| after(g, h).and_then(|gh| join(&fh, &gh))),
            );
            compare(
                &mut join_post,
                input,
                join(f, g).and_then(|fg| after(k, &fg)),
                after(k, f).and_then(|kf| after(k, g).and_then(|kg| join(&kf, &kg))),
            );
        }
        if let Some(convex) = convex {
            let ws = random_weights(s.parallel.len(), kind == EnrichmentKind::Subconvex, &mut rng);
            let parts: Vec<(Weight, A)> = ws.into_iter().zip(s.parallel.iter().cloned()).collect();
            let mapped = |op: &dyn Fn(&A) -> Result<A, String>| {
                parts
                    .iter()
                    .map(|(w, x)| op(x).map(|y| (w.clone(), y)))
                    .collect::<Result<Vec<_>, String>>()
            };
            compare(
                &mut convex_pre,
                input,
                convex(a, b, &parts).and_then(|m| after(&m, h)),
                mapped(&|x| after(x, h)).and_then(|ps| convex(h.src(), b, &ps)),
            );
            compare(
                &mut convex_post,
                input,
                convex(a, b, &parts).and_then(|m| after(k, &m)),
                mapped(&|x| after(k, x)).and_then(|ps| convex(a, k.tgt(), &ps)),
            );
        }
    }

    if bottom.is_some() {
        checks.extend([bot_left, bot_right]);
    }
    if join.is_some() {
        checks.extend([join_pre, join_post]);
    }
    if convex.is_some() {
        checks.extend([convex_pre, convex_post]);
    }
    let mut report = Report::new(format!("{kind} enrichment conditions"));
    for c in checks {
        report.push(c);
    }
    Ok(report)
}

/// Seeded samples with two or three parallel arrows.
pub fn random_condition_samples<M: RandomArrow>(count: usize, seed: u64) -> Vec<ConditionSample<M>> {
    let mut s = Sampler::<M>::new(seed);
    (0..count)
        .map(|_| {
            let (c, a, b, d) = (s.object(), s.object(), s.object(), s.object());
            let k = 2 + usize::from(rand::Rng::gen_bool(s.rng(), 0.5));
            ConditionSample {
                pre: s.base(&c, &a),
                parallel: (0..k).map(|_| s.base(&a, &b)).collect(),
                post: s.base(&b, &d),
            }
        })
        .collect()
}

/// Every `(h, [f, g], k)` of relations on one `n`-element set.
pub fn rel_exhaustive_samples(n: usize) -> Vec<ConditionSample<RelMorphism>> {
    let x = FinSet::numbered("A", n);
    let cells = n * n;
    let all: Vec<RelMorphism> = (0u64..1 << cells)
        .map(|mask| {
            let bits = (0..cells).map(|i| mask >> i & 1 == 1).collect();
            RelMorphism::from_bits(x.clone(), x.clone(), bits).expect("sized to fit")
        })
        .collect();
    let mut out = Vec::with_capacity(all.len().pow(4));
    for h in &all {
        for f in &all {
            for g in &all {
                for k in &all {
                    out.push(ConditionSample {
                        pre: h.clone(),
                        parallel: vec![f.clone(), g.clone()],
                        post: k.clone(),
                    });
                }
            }
        }
    }
    out
}

/// FinRel with union as join and the empty relation as bottom.
pub fn rel_union_algebra() -> HomsetAlgebra<'static, RelMorphism> {
    HomsetAlgebra {
        bottom: Some(Box::new(|a: &FinSet, b: &FinSet| {
            Ok(RelMorphism::empty(a.clone(), b.clone()))
        })),
        join: Some(Box::new(|f: &RelMorphism, g: &RelMorphism| {
            f.union(g).map_err(|e| e.to_string())
        })),
        convex: None,
    }
}

/// FinRel with intersection offered as the join; composition does not
/// distribute over it.
pub fn rel_intersection_algebra() -> HomsetAlgebra<'static, RelMorphism> {
    HomsetAlgebra {
        bottom: None,
        join: Some(Box::new(|f: &RelMorphism, g: &RelMorphism| {
            f.intersection(g).map_err(|e| e.to_string())
        })),
        convex: None,
    }
}

/// FinMat pointed by its zero morphisms.
pub fn mat_zero_algebra() -> HomsetAlgebra<'static, MatMorphism> {
    HomsetAlgebra {
        bottom: Some(Box::new(|a, b| Ok(MatMorphism::zero(a.clone(), b.clone())))),
        join: None,
        convex: None,
    }
}

/// The homset algebra of the free model `C_T`, built from [`enr_mix`].
pub fn free_model_algebra<M: Morphism>(tag: MonadTag) -> HomsetAlgebra<'static, Em<M>> {
    let kind = EnrichmentKind::for_tag(tag);
    let mut alg = HomsetAlgebra::empty();
    if kind.needs_bottom() {
        alg.bottom = Some(Box::new(move |a: &M::Object, b: &M::Object| {
            Em::bottom(tag, a.clone(), b.clone()).map_err(|e| e.to_string())
        }));
    }
    if kind.needs_join() {
        alg.join = Some(Box::new(move |f: &Em<M>, g: &Em<M>| {
            let one = Weight::from_integer(1.into());
            enr_mix(tag, f.src(), f.tgt(), &[(one.clone(), f.clone()), (one, g.clone())])
                .map_err(|e| e.to_string())
        }));
    }
    if kind.needs_convex() {
        alg.convex = Some(Box::new(move |a: &M::Object, b: &M::Object, parts: &[(Weight, Em<M>)]| {
            enr_mix(tag, a, b, parts).map_err(|e| e.to_string())
        }));
    }
    alg
}

/// The enrichment conditions of `C_T` on seeded enriched samples.
pub fn check_free_model_conditions<M: RandomArrow>(tag: MonadTag, count: usize, seed: u64) -> Report {
    let mut s = Sampler::<M>::new(seed);
    let samples: Vec<ConditionSample<Em<M>>> = (0..count)
        .map(|_| {
            let (c, a, b, d) = (s.object(), s.object(), s.object(), s.object());
            let k = 2 + usize::from(rand::Rng::gen_bool(s.rng(), 0.5));
            ConditionSample {
                pre: s.enriched(tag, &c, &a),
                parallel: (0..k).map(|_| s.enriched(tag, &a, &b)).collect(),
                post: s.enriched(tag, &b, &d),
            }
        })
        .collect();
    let mut report = check_enrichment_conditions(
        EnrichmentKind::for_tag(tag),
        &free_model_algebra::<M>(tag),
        &samples,
        seed,
    )
    .expect("free model algebras provide every operation their kind needs");
    report.title = format!("{} in the free model {tag}", report.title);
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finrel_union_is_join_enriched() {
        let samples = random_condition_samples::<RelMorphism>(150, 3);
        let r = check_enrichment_conditions(EnrichmentKind::Join, &rel_union_algebra(), &samples, 0)
            .unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.checks.len(), 4);
    }

    #[test]
    fn finrel_intersection_fails_on_two_elements() {
        let samples = rel_exhaustive_samples(2);
        assert_eq!(samples.len(), 65536);
        let r = check_enrichment_conditions(
            EnrichmentKind::AffineJoin,
            &rel_intersection_algebra(),
            &samples,
            0,
        )
        .unwrap();
        assert!(!r.passed());
        assert!(!r.checks[0].witnesses.is_empty());
    }

    #[test]
    fn finmat_zero_object_is_pointed() {
        let samples = random_condition_samples::<MatMorphism>(100, 5);
        let r = check_enrichment_conditions(EnrichmentKind::Pointed, &mat_zero_algebra(), &samples, 0)
            .unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn free_models_satisfy_their_conditions() {
        for tag in MonadTag::ALL {
            let r = check_free_model_conditions::<RelMorphism>(tag, 40, 6);
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn missing_operation_is_a_specification_error() {
        let r = check_enrichment_conditions::<RelMorphism>(
            EnrichmentKind::Convex,
            &rel_union_algebra(),
            &[],
            0,
        );
        assert!(matches!(
            r,
            Err(RelateError::MissingOperation { operation: "convex combination", .. })
        ));
    }
}
