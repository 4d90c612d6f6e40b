//! Sums given by supports: the (sub)convex structure on set-valued homsets.

use num::{One, Signed, Zero};
use rand::Rng;

use super::{check_functor, counterexample::successor_with_absorber, Em};
use crate::base::{Arrow, RelMorphism};
use crate::enrich::EnrichError;
use crate::monads::MonadTag;
use crate::report::{Check, Render, Report};
use crate::sample::{RandomArrow, Sampler};
use crate::weight::{format_weight, integer, Weight};

/// `Σ pᵢ Uᵢ = ⋃ {Uᵢ | pᵢ > 0}`: a convex combination in `C_{P⁺}` (weights
/// total `1`) or a subconvex one in `C_{Pω}` (weights total `≤ 1`).
pub fn support_mix<M: crate::base::Morphism>(
    tag: MonadTag,
    src: &M::Object,
    tgt: &M::Object,
    parts: &[(Weight, Em<M>)],
) -> Result<Em<M>, EnrichError> {
    let total: Weight = parts.iter().map(|(w, _)| w.clone()).sum();
    if parts.iter().any(|(w, _)| w.is_negative()) {
        return Err(EnrichError::Weight("negative weight".into()));
    }
    let ok = match tag {
        MonadTag::PPlus => total.is_one(),
        MonadTag::POmega => total <= Weight::one(),
        other => {
            return Err(EnrichError::Unsupported(format!(
                "support sums are defined on pplus and pomega, not {other}"
            )))
        }
    };
    if !ok {
        return Err(EnrichError::Weight(format!(
            "weights total {} in a {tag} homset",
            format_weight(&total)
        )));
    }
    for (_, m) in parts {
        if m.tag() != tag {
            return Err(EnrichError::TagMismatch {
                left: tag,
                right: m.tag(),
            });
        }
    }
    let members = parts
        .iter()
        .filter(|(w, _)| !w.is_zero())
        .flat_map(|(_, m)| m.support().into_iter().cloned());
    Em::from_set(tag, src.clone(), tgt.clone(), members)
}

fn weights_for(tag: MonadTag, k: usize, s: &mut Sampler<impl RandomArrow>) -> Vec<Weight> {
    crate::monads::random_weights(k, tag == MonadTag::POmega, s.rng())
}

/// Projection, barycenter and both sides of the convex-preservation
/// equation for [`support_mix`], on `samples` seeded instances each.
pub fn check_support_enrichment<M: RandomArrow>(tag: MonadTag, samples: usize, seed: u64) -> Report {
    let mut s = Sampler::<M>::new(seed);
    let mut projection = Check::new("projection Σ δᵢⱼ xⱼ = xᵢ");
    let mut barycenter = Check::new("barycenter Σᵢ pᵢ Σⱼ qᵢⱼ yⱼ = Σⱼ (Σᵢ pᵢqᵢⱼ) yⱼ");
    let mut pre = Check::new("(Σ pᵢ fᵢ) ∘ g = Σ pᵢ (fᵢ ∘ g)");
    let mut post = Check::new("h ∘ (Σ pᵢ fᵢ) = Σ pᵢ (h ∘ fᵢ)");

    let fmt_parts = |parts: &[(Weight, Em<M>)]| {
        parts
            .iter()
            .map(|(w, m)| format!("{}·{}", format_weight(w), m.render()))
            .collect::<Vec<_>>()
            .join(" + ")
    };

    for _ in 0..samples {
        let (a, b, c, d) = (s.object(), s.object(), s.object(), s.object());
        let k = s.rng().gen_range(1..=3);
        let xs: Vec<Em<M>> = (0..k).map(|_| s.enriched(tag, &a, &b)).collect();

        let i = s.rng().gen_range(0..k);
        let delta: Vec<(Weight, Em<M>)> = xs
            .iter()
            .enumerate()
            .map(|(j, x)| (if i == j { integer(1) } else { integer(0) }, x.clone()))
            .collect();
        match support_mix(tag, &a, &b, &delta) {
            Ok(v) => {
                projection.expect_eq(|| fmt_parts(&delta), &v, &xs[i]);
            }
            Err(e) => projection.fail(fmt_parts(&delta), e.to_string()),
        }

        let p = weights_for(tag, k, &mut s);
        let q: Vec<Vec<Weight>> = (0..k).map(|_| weights_for(tag, k, &mut s)).collect();
        let inner: Result<Vec<(Weight, Em<M>)>, EnrichError> = (0..k)
            .map(|r| {
                let row: Vec<(Weight, Em<M>)> =
                    q[r].iter().cloned().zip(xs.iter().cloned()).collect();
                support_mix(tag, &a, &b, &row).map(|m| (p[r].clone(), m))
            })
            .collect();
        let lhs = inner.and_then(|parts| support_mix(tag, &a, &b, &parts));
        let collapsed: Vec<(Weight, Em<M>)> = (0..k)
            .map(|j| {
                let w: Weight = (0..k).map(|r| &p[r] * &q[r][j]).sum();
                (w, xs[j].clone())
            })
            .collect();
        let rhs = support_mix(tag, &a, &b, &collapsed);
        let input = || format!("p={p:?} q={q:?} y={}", fmt_parts(&collapsed));
        match (lhs, rhs) {
            (Ok(l), Ok(r)) => {
                barycenter.expect_eq(input, &l, &r);
            }
            (l, r) => barycenter.fail(input(), format!("{:?} / {:?}", l.err(), r.err())),
        }

        let parts: Vec<(Weight, Em<M>)> = p.iter().cloned().zip(xs.iter().cloned()).collect();
        let g = s.enriched(tag, &c, &a);
        let lhs = support_mix(tag, &a, &b, &parts).and_then(|m| m.compose_after(&g));
        let rhs = parts
            .iter()
            .map(|(w, f)| f.compose_after(&g).map(|fg| (w.clone(), fg)))
            .collect::<Result<Vec<_>, _>>()
            .and_then(|ps| support_mix(tag, &c, &b, &ps));
        record(&mut pre, || format!("{} ∘ {}", fmt_parts(&parts), g.render()), lhs, rhs);

        let h = s.enriched(tag, &b, &d);
        let lhs = support_mix(tag, &a, &b, &parts).and_then(|m| h.compose_after(&m));
        let rhs = parts
            .iter()
            .map(|(w, f)| h.compose_after(f).map(|hf| (w.clone(), hf)))
            .collect::<Result<Vec<_>, _>>()
            .and_then(|ps| support_mix(tag, &a, &d, &ps));
        record(&mut post, || format!("{} ∘ {}", h.render(), fmt_parts(&parts)), lhs, rhs);
    }

    let mut report = Report::new(format!("support enrichment: {tag}"));
    for c in [projection, barycenter, pre, post] {
        report.push(c);
    }
    report
}

fn record<M: crate::base::Morphism>(
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

/// The candidate functor `C_{P⁺} → C_D` sending `U` to the uniform
/// distribution on `U`.
pub fn uniform_distribution<M: crate::base::Morphism>(m: &Em<M>) -> Result<Em<M>, EnrichError> {
    if m.tag() != MonadTag::PPlus {
        return Err(EnrichError::TagMismatch {
            left: MonadTag::PPlus,
            right: m.tag(),
        });
    }
    let members = m.support();
    let w = Weight::one() / integer(members.len() as i64);
    Em::from_sum(
        MonadTag::Dist,
        m.src().clone(),
        m.tgt().clone(),
        members.into_iter().map(|f| (w.clone(), f.clone())),
    )
}

/// Runs the functor checks on [`uniform_distribution`], starting from
/// `U = {f, f∘f}` for the successor-with-absorber `f` on four elements.
pub fn check_uniform_functor(samples: usize, seed: u64) -> Report {
    let f = successor_with_absorber(4);
    let ff = f.after(&f).expect("endomorphism");
    let u = Em::from_set(MonadTag::PPlus, f.src().clone(), f.tgt().clone(), [f.clone(), ff])
        .expect("non-empty");
    check_functor::<RelMorphism>(
        "uniform distribution as a functor pplus -> dist",
        MonadTag::PPlus,
        MonadTag::Dist,
        uniform_distribution,
        &[(u.clone(), u)],
        samples,
        seed,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::{FinSet, Morphism};
    use crate::weight::ratio;

    #[test]
    fn support_mix_examples() {
        let a = FinSet::numbered("A", 2);
        let u = RelMorphism::identity(&a);
        let v = RelMorphism::full(a.clone(), a.clone());
        let su = Em::lift_base(u.clone(), MonadTag::PPlus);
        let sv = Em::lift_base(v.clone(), MonadTag::PPlus);
        let both = Em::from_set(MonadTag::PPlus, a.clone(), a.clone(), [u.clone(), v.clone()]).unwrap();
        let half = ratio(1, 2);
        assert_eq!(
            support_mix(MonadTag::PPlus, &a, &a, &[(half.clone(), su), (half, sv)]).unwrap(),
            both
        );
        assert_eq!(
            support_mix(MonadTag::PPlus, &a, &a, &[(integer(1), both.clone())]).unwrap(),
            both
        );
        let ou = Em::lift_base(u, MonadTag::POmega);
        assert_eq!(
            support_mix(MonadTag::POmega, &a, &a, &[(ratio(3, 10), ou.clone())]).unwrap(),
            ou
        );
        assert!(matches!(
            support_mix(MonadTag::PPlus, &a, &a, &[(ratio(3, 10), both)]),
            Err(EnrichError::Weight(_))
        ));
    }

    #[test]
    fn support_enrichment_holds() {
        for tag in [MonadTag::PPlus, MonadTag::POmega] {
            let r = check_support_enrichment::<RelMorphism>(tag, 40, 8);
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn uniform_functor_fails_on_the_witness() {
        let r = check_uniform_functor(20, 1);
        let comp = r.check("E(g∘f) = E(g)∘E(f)").unwrap();
        assert!(!comp.passed());
        assert!(comp.witnesses[0].lhs.contains("1/2*"));
        assert!(comp.witnesses[0].rhs.contains("3/4*"));
        assert!(r.check("E(id) = id").unwrap().passed());
    }
}
