//! Unramified twisted generalized Levis: the elliptic-triple pipeline run
//! over quasi-closed spans, the set difference against ordinary twisted
//! Levis, and the rational containment test between classes.

use crate::engine::Engine;
use crate::error::EngineError;
use crate::roots::{enumerate_quasi_closed, Span};
use crate::tori::{enumerate_elliptic, EllipticClass, Pair};
use std::collections::{BTreeSet, HashMap};

/// Quasi-closed spans for the spec's characteristic, sorted; a superset of
/// the Θ spans.
pub fn quasi_closed_spans(engine: &Engine) -> Result<Vec<Span>, EngineError> {
    let subs = enumerate_quasi_closed(&engine.rs, engine.spec.residue_char.as_u32())?;
    let mut spans: Vec<Span> = subs.into_iter().map(|s| s.members).collect();
    spans.sort();
    spans.dedup();
    for theta in &engine.theta_spans {
        debug_assert!(
            spans.binary_search(theta).is_ok(),
            "Θ spans must be quasi-closed"
        );
    }
    Ok(spans)
}

/// Elliptic classes of triples (F, Ξ, w) over the quasi-closed spans.
pub fn enumerate_gen_elliptic(
    engine: &Engine,
    parallel: bool,
) -> Result<(Vec<Span>, Vec<EllipticClass>), EngineError> {
    let spans = quasi_closed_spans(engine)?;
    let classes = enumerate_elliptic(engine, &spans, parallel);
    Ok((spans, classes))
}

/// Classes whose span is not a Θ span: generalized but not ordinary.
pub fn gen_minus_tori(
    engine: &Engine,
    spans: &[Span],
    classes: &[EllipticClass],
) -> Vec<EllipticClass> {
    classes
        .iter()
        .filter(|c| engine.theta_spans.binary_search(&spans[c.rep.0]).is_err())
        .cloned()
        .collect()
}

/// Does some rational conjugate of the group of class `a` embed into the
/// group of class `b`? Implements the representative-and-witness search:
/// facets `F_a ⊆ closure(F_b)` (after aligning both classes across their
/// facet orbits), a span `Ξ'` with `Φ_{Ξ_a} ⊆ Φ_{Ξ'}`, and
/// `(Ξ', w_a) ∼_{F_a} (Ξ_b, w_b)`.
pub fn contains(
    engine: &Engine,
    spans: &[Span],
    a: &EllipticClass,
    b: &EllipticClass,
) -> bool {
    let mut caps: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (&fa, members_a) in &a.members_by_facet {
        for (&fb, members_b) in &b.members_by_facet {
            // F_a in the closure of F_b: more walls vanish on F_a.
            let na: BTreeSet<usize> = engine.facet(fa).nodes.clone();
            let nb: BTreeSet<usize> = engine.facet(fb).nodes.clone();
            if !nb.is_subset(&na) {
                continue;
            }
            let facet_a = engine.facet(fa);
            for &(sa, wa) in members_a {
                for &(sb, wb) in members_b {
                    // w_b ∈ W_{F_b} ⊆ W_{F_a} automatically.
                    debug_assert!(facet_a.w_f.binary_search(&wb).is_ok());
                    // candidates Ξ' ⊇ Φ_{Ξ_a}
                    for (sp, span_p) in spans.iter().enumerate() {
                        if !is_subset(&spans[sa], span_p) {
                            continue;
                        }
                        // (Ξ', w_a) ∼_{F_a} (Ξ_b, w_b)
                        if similar_at(engine, spans, &mut caps, fa, (sp, wa), (sb, wb)) {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

fn is_subset(small: &Span, big: &Span) -> bool {
    small.iter().all(|x| big.binary_search(x).is_ok())
}

/// The single-facet relation: ∃ n ∈ W_F with n Φ_p = Φ_q and
/// Fr(n) w_p n⁻¹ ∈ w_q (W_F ∩ W_{Ξ_q}).
fn similar_at(
    engine: &Engine,
    spans: &[Span],
    caps: &mut HashMap<(usize, usize), Vec<usize>>,
    facet_idx: usize,
    p: Pair,
    q: Pair,
) -> bool {
    let facet = engine.facet(facet_idx);
    let cap = caps.entry((facet_idx, q.0)).or_insert_with(|| {
        let g = engine.span_group(&spans[q.0]);
        facet
            .w_f
            .iter()
            .copied()
            .filter(|x| g.binary_search(x).is_ok())
            .collect()
    });
    facet.w_f.iter().any(|&n| {
        engine.w.apply_span(n, &spans[p.0]) == spans[q.0] && {
            let moved = engine
                .w
                .mul(engine.w.mul(engine.fr_w(n), p.1), engine.w.inv(n));
            let shift = engine.w.mul(engine.w.inv(q.1), moved);
            cap.binary_search(&shift).is_ok()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{preset, CharTag};
    use crate::engine::Engine;
    use crate::tori::enumerate_elliptic;

    #[test]
    fn sp4_extras() {
        let e = Engine::new(preset("Sp4").unwrap(), 4).unwrap();
        let (spans, classes) = enumerate_gen_elliptic(&e, false).unwrap();
        let extras = gen_minus_tori(&e, &spans, &classes);
        assert_eq!(extras.len(), 2);

        let e2 = Engine::new(preset("Sp4").unwrap().with_char(CharTag::Two), 4).unwrap();
        let (spans2, classes2) = enumerate_gen_elliptic(&e2, false).unwrap();
        let extras2 = gen_minus_tori(&e2, &spans2, &classes2);
        assert_eq!(extras2.len(), 5);
    }

    #[test]
    fn g2_extras() {
        let e = Engine::new(preset("G2").unwrap(), 4).unwrap();
        let (spans, classes) = enumerate_gen_elliptic(&e, false).unwrap();
        assert_eq!(gen_minus_tori(&e, &spans, &classes).len(), 3);

        let e3 = Engine::new(preset("G2").unwrap().with_char(CharTag::Three), 4).unwrap();
        let (spans3, classes3) = enumerate_gen_elliptic(&e3, false).unwrap();
        assert_eq!(gen_minus_tori(&e3, &spans3, &classes3).len(), 5);
    }

    #[test]
    fn ordinary_classes_embed() {
        // Ĩᵉ/≈ ⊆ 𝓘ᵉ/≈ representative by representative.
        for name in ["Sp4", "G2", "SU3q"] {
            let e = Engine::new(preset(name).unwrap(), 4).unwrap();
            let tori = enumerate_elliptic(&e, &e.theta_spans, false);
            let (spans, gen) = enumerate_gen_elliptic(&e, false).unwrap();
            for t in &tori {
                let span = &e.theta_spans[t.rep.0];
                let sid = spans.binary_search(span).unwrap();
                let hit = gen
                    .iter()
                    .filter(|g| {
                        g.facet == t.facet
                            && g.members_by_facet
                                .get(&t.facet)
                                .is_some_and(|m| m.contains(&(sid, t.rep.1)))
                    })
                    .count();
                assert_eq!(hit, 1, "{name}: class not found among generalized");
            }
            assert!(gen.len() >= tori.len());
        }
    }

    #[test]
    fn alcove_full_class_contains_everything() {
        let e = Engine::new(preset("Sp4").unwrap(), 4).unwrap();
        let (spans, classes) = enumerate_gen_elliptic(&e, false).unwrap();
        let full = classes
            .iter()
            .find(|c| spans[c.rep.0].len() == e.rs.roots.len())
            .unwrap();
        for c in &classes {
            assert!(contains(&e, &spans, c, full));
        }
    }
}
