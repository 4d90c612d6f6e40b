//! Seeded dagger compact closed law suite for one free enrichment.

use super::{EnrichError, EnrichedMorphism};
use crate::base::Morphism;
use crate::monads::MonadTag;
use crate::report::{Check, Render, Report};
use crate::sample::{RandomArrow, Sampler};

type Em<M> = EnrichedMorphism<M>;

fn chain<M: Morphism>(first: Em<M>, rest: &[Em<M>]) -> Result<Em<M>, EnrichError> {
    rest.iter().try_fold(first, |acc, m| m.compose_after(&acc))
}

/// `ρ ∘ (id ⊗ cap) ∘ α ∘ (cup ⊗ id) ∘ λ⁻¹`, computed in `C_T`.
pub fn enriched_snake_left<M: Morphism>(tag: MonadTag, a: &M::Object) -> Result<Em<M>, EnrichError> {
    let id = Em::identity(tag, a);
    chain(
        Em::lift_base(M::left_unitor(a).dagger(), tag),
        &[
            Em::cup(tag, a).tensor(&id)?,
            Em::lift_base(M::associator(a, a, a), tag),
            id.tensor(&Em::cap(tag, a))?,
            Em::lift_base(M::right_unitor(a), tag),
        ],
    )
}

/// `λ ∘ (cap ⊗ id) ∘ α⁻¹ ∘ (id ⊗ cup) ∘ ρ⁻¹`, computed in `C_T`.
pub fn enriched_snake_right<M: Morphism>(tag: MonadTag, a: &M::Object) -> Result<Em<M>, EnrichError> {
    let id = Em::identity(tag, a);
    chain(
        Em::lift_base(M::right_unitor(a).dagger(), tag),
        &[
            id.tensor(&Em::cup(tag, a))?,
            Em::lift_base(M::associator(a, a, a).dagger(), tag),
            Em::cap(tag, a).tensor(&id)?,
            Em::lift_base(M::left_unitor(a), tag),
        ],
    )
}

fn record<M: Morphism>(
    check: &mut Check,
    input: impl FnOnce() -> String,
    lhs: Result<Em<M>, EnrichError>,
    rhs: Result<Em<M>, EnrichError>,
) {
    match (lhs, rhs) {
        (Ok(l), Ok(r)) => {
            check.expect_eq(input, &l, &r);
        }
        (l, r) => check.fail(input(), format!("{:?} / {:?}", l.err(), r.err())),
    }
}

fn inputs<M: Morphism>(ms: &[&Em<M>]) -> String {
    ms.iter().map(|m| m.render()).collect::<Vec<_>>().join(" ; ")
}

/// Runs every dagger compact closed law of `C_T` on `instances` seeded
/// inputs each. Objects come from the base's sample pool.
pub fn check_dagger_compact<M: RandomArrow>(tag: MonadTag, instances: usize, seed: u64) -> Report {
    let mut s = Sampler::<M>::new(seed);
    let mut report = Report::new(format!("dagger compact laws: {tag}"));
    let names = [
        "associativity h∘(g∘f) = (h∘g)∘f",
        "identity id∘f = f = f∘id",
        "bifunctoriality (g∘f)⊗(k∘h) = (g⊗k)∘(f⊗h)",
        "tensor of identities id⊗id = id",
        "dagger involution f†† = f",
        "dagger contravariance (g∘f)† = f†∘g†",
        "dagger on identities id† = id",
        "dagger-tensor (f⊗g)† = f†⊗g†",
        "cap = cup†",
        "snake (id⊗cap)∘α∘(cup⊗id) = id",
        "snake (cap⊗id)∘α⁻¹∘(id⊗cup) = id",
        "associator naturality",
        "unitor naturality",
    ];
    let mut checks: Vec<Check> = names.iter().map(|n| Check::new(*n)).collect();

    let pool = M::object_pool();
    type Snake<M> = Result<Em<M>, EnrichError>;
    let snakes: Vec<(Snake<M>, Snake<M>)> = pool
        .iter()
        .map(|a| (enriched_snake_left::<M>(tag, a), enriched_snake_right::<M>(tag, a)))
        .collect();

    for _ in 0..instances {
        let (a, b, c, d) = (s.object(), s.object(), s.object(), s.object());
        let f = s.enriched(tag, &a, &b);
        let g = s.enriched(tag, &b, &c);
        let h = s.enriched(tag, &c, &d);

        record(
            &mut checks[0],
            || inputs(&[&f, &g, &h]),
            g.compose_after(&f).and_then(|gf| h.compose_after(&gf)),
            h.compose_after(&g).and_then(|hg| hg.compose_after(&f)),
        );

        let id_a = Em::identity(tag, &a);
        let id_b = Em::identity(tag, &b);
        let left = id_b.compose_after(&f);
        let right = f.compose_after(&id_a);
        let ok = matches!((&left, &right), (Ok(l), Ok(r)) if *l == f && *r == f);
        checks[1].expect(ok, || crate::report::Witness {
            input: f.render(),
            lhs: format!("{left:?}"),
            rhs: format!("{right:?}"),
        });

        // second pair for the tensor checks: k ∘ h' with h': c → d, k: d → a
        let h2 = s.enriched(tag, &c, &d);
        let k = s.enriched(tag, &d, &a);
        record(
            &mut checks[2],
            || inputs(&[&f, &g, &h2, &k]),
            g.compose_after(&f)
                .and_then(|gf| k.compose_after(&h2).and_then(|kh| gf.tensor(&kh))),
            g.tensor(&k)
                .and_then(|gk| f.tensor(&h2).and_then(|fh| gk.compose_after(&fh))),
        );

        record(
            &mut checks[3],
            || format!("{a:?} ; {b:?}"),
            id_a.tensor(&id_b),
            Ok(Em::identity(tag, &M::tensor_objects(&a, &b))),
        );

        checks[4].expect_eq(|| f.render(), &f.dagger().dagger(), &f);

        record(
            &mut checks[5],
            || inputs(&[&f, &g]),
            g.compose_after(&f).map(|gf| gf.dagger()),
            f.dagger().compose_after(&g.dagger()),
        );

        checks[6].expect_eq(|| format!("{a:?}"), &id_a.dagger(), &id_a);

        record(
            &mut checks[7],
            || inputs(&[&f, &g]),
            f.tensor(&g).map(|t| t.dagger()),
            f.dagger().tensor(&g.dagger()),
        );

        checks[8].expect_eq(
            || format!("{a:?}"),
            &Em::<M>::cap(tag, &a),
            &Em::<M>::cup(tag, &a).dagger(),
        );

        // yank a random state of `a` through each snake
        let idx = pool.iter().position(|o| o == &a).expect("pool object");
        let unit = M::unit_object();
        let state = s.enriched(tag, &unit, &a);
        for (slot, snake) in [(9, &snakes[idx].0), (10, &snakes[idx].1)] {
            match snake {
                Ok(sn) => {
                    let yanked = sn.compose_after(&state);
                    let ok = *sn == id_a && yanked.as_ref() == Ok(&state);
                    checks[slot].expect(ok, || crate::report::Witness {
                        input: state.render(),
                        lhs: sn.render(),
                        rhs: format!("{yanked:?}"),
                    });
                }
                Err(e) => checks[slot].fail(format!("{a:?}"), e.to_string()),
            }
        }

        let assoc = |x: &M::Object, y: &M::Object, z: &M::Object| {
            Em::lift_base(M::associator(x, y, z), tag)
        };
        let h3 = s.enriched(tag, &a, &c);
        record(
            &mut checks[11],
            || inputs(&[&f, &g, &h3]),
            f.tensor(&g)
                .and_then(|fg| fg.tensor(&h3))
                .and_then(|t| assoc(&b, &c, &c).compose_after(&t)),
            g.tensor(&h3)
                .and_then(|gh| f.tensor(&gh))
                .and_then(|t| t.compose_after(&assoc(&a, &b, &a))),
        );

        let lam = |x: &M::Object| Em::lift_base(M::left_unitor(x), tag);
        let id_unit = Em::identity(tag, &unit);
        record(
            &mut checks[12],
            || f.render(),
            id_unit
                .tensor(&f)
                .and_then(|t| lam(&b).compose_after(&t)),
            f.compose_after(&lam(&a)),
        );
    }

    for c in checks {
        report.push(c);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::{FinSet, MatMorphism, RelMorphism};

    #[test]
    fn snakes_are_identities() {
        for tag in MonadTag::ALL {
            for n in 0..=3 {
                let a = FinSet::numbered("A", n);
                let id = Em::<RelMorphism>::identity(tag, &a);
                assert_eq!(enriched_snake_left::<RelMorphism>(tag, &a).unwrap(), id);
                assert_eq!(enriched_snake_right::<RelMorphism>(tag, &a).unwrap(), id);
            }
        }
    }

    #[test]
    fn small_suite_passes_on_both_bases() {
        for tag in MonadTag::ALL {
            let r = check_dagger_compact::<RelMorphism>(tag, 20, 5);
            assert!(r.passed(), "{r}");
            let r = check_dagger_compact::<MatMorphism>(tag, 10, 5);
            assert!(r.passed(), "{r}");
        }
    }
}
