//! Stable conjugacy: the reduction of span-level pairs to simple-subset
//! pairs, stable-class assignment for elliptic triples, and rational
//! embedding counts.

use crate::engine::Engine;
use crate::error::EngineError;
use crate::finite::UnionFind;
use crate::roots::{base_of_subsystem, Span};
use crate::tori::EllipticClass;
use crate::weyl::{normalizer_of_subsystem, twisted_subgroup};
use std::collections::{BTreeSet, HashMap, VecDeque};

/// A stable class: pairs (θ ⊆ Δ, w) with Fr(θ) = w θ, up to θ' = nθ,
/// w' = Fr(n) w n⁻¹.
#[derive(Debug, Clone)]
pub struct StableClass {
    /// Lexicographically minimal representative.
    pub rep: (BTreeSet<usize>, usize),
    /// All members with θ ⊆ Δ.
    pub members: Vec<(BTreeSet<usize>, usize)>,
}

/// The full stable classification, together with a lookup from span-level
/// states to class ids.
pub struct StableIndex {
    pub classes: Vec<StableClass>,
    /// (span id, coset-canonical w) → class id.
    state_class: HashMap<(usize, usize), usize>,
    /// span id → W ∩ W_span, sorted.
    span_groups: HashMap<usize, Vec<usize>>,
}

fn simple_root_indices(engine: &Engine) -> Vec<usize> {
    let rank = engine.rs.rank();
    (0..rank)
        .map(|i| {
            let mut e = vec![0i64; rank];
            e[i] = 1;
            engine.rs.root_index(&e).unwrap()
        })
        .collect()
}

impl StableIndex {
    /// Canonical coset representative of w · W_span.
    fn canon(&self, engine: &Engine, sid: usize, w: usize) -> usize {
        self.span_groups[&sid]
            .iter()
            .map(|&y| engine.w.mul(w, y))
            .min()
            .unwrap()
    }

    pub fn class_of_state(&self, engine: &Engine, sid: usize, w: usize) -> usize {
        let c = self.canon(engine, sid, w);
        self.state_class[&(sid, c)]
    }
}

/// Build the stable classification via the span-level relation
/// (states are pairs (Φ_θ, w·W_θ)) and collect the Δ-subset members of
/// each class.
pub fn enumerate_stable(engine: &Engine) -> StableIndex {
    let spans = &engine.theta_spans;
    let mut span_groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for (sid, span) in spans.iter().enumerate() {
        span_groups.insert(sid, engine.span_group(span));
    }
    let canon = |sid: usize, w: usize| -> usize {
        span_groups[&sid]
            .iter()
            .map(|&y| engine.w.mul(w, y))
            .min()
            .unwrap()
    };

    // States: (sid, canonical coset rep) with Fr(Φ) = w Φ.
    let mut states: Vec<(usize, usize)> = Vec::new();
    let mut state_ids: HashMap<(usize, usize), usize> = HashMap::new();
    for (sid, span) in spans.iter().enumerate() {
        let fr_span = engine.fr.apply_span(span);
        let mut seen_cosets: BTreeSet<usize> = BTreeSet::new();
        for w in 0..engine.w.len() {
            if engine.w.apply_span(w, span) != fr_span {
                continue;
            }
            let c = canon(sid, w);
            if seen_cosets.insert(c) {
                let id = states.len();
                states.push((sid, c));
                state_ids.insert((sid, c), id);
            }
        }
    }

    // Orbit closure under n ↦ (nΦ, Fr(n) w n⁻¹) for simple reflections n.
    let mut uf = UnionFind::new(states.len());
    let mut queue: VecDeque<usize> = (0..states.len()).collect();
    while let Some(i) = queue.pop_front() {
        let (sid, w) = states[i];
        for g in 0..engine.rs.rank() {
            let n = engine.w.simple_reflection_index(g);
            let image = engine.w.apply_span(n, &spans[sid]);
            let tid = spans.binary_search(&image).expect("spans closed under W");
            let moved = engine
                .w
                .mul(engine.w.mul(engine.fr_w(n), w), engine.w.inv(n));
            let c = canon(tid, moved);
            let j = state_ids[&(tid, c)];
            uf.union(i, j);
        }
    }

    // Collect Δ-subset members per class.
    let simples = simple_root_indices(engine);
    let mut class_of_root: HashMap<usize, usize> = HashMap::new();
    let groups = uf.groups();
    for (cid, group) in groups.iter().enumerate() {
        for &s in group {
            class_of_root.insert(s, cid);
        }
    }
    let mut members: Vec<Vec<(BTreeSet<usize>, usize)>> = vec![Vec::new(); groups.len()];
    for mask in 0..(1u32 << simples.len()) {
        let theta: BTreeSet<usize> = simples
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &r)| r)
            .collect();
        let base: Vec<usize> = theta.iter().copied().collect();
        let span = crate::roots::span_of_base(&engine.rs, &base);
        let sid = spans.binary_search(&span).unwrap();
        let fr_theta: BTreeSet<usize> = theta.iter().map(|&r| engine.fr.root_perm[r]).collect();
        for w in 0..engine.w.len() {
            let image: BTreeSet<usize> = theta.iter().map(|&r| engine.w.apply(w, r)).collect();
            if image != fr_theta {
                continue;
            }
            let c = canon(sid, w);
            let cid = class_of_root[&state_ids[&(sid, c)]];
            members[cid].push((theta.clone(), w));
        }
    }

    // Every state class contains a Δ-subset member (the base-change
    // reduction is surjective).
    let mut old_classes: Vec<StableClass> = members
        .into_iter()
        .map(|mut m| {
            assert!(!m.is_empty(), "state class without simple-subset member");
            m.sort();
            m.dedup();
            let rep = m
                .iter()
                .min_by_key(|(t, w)| (t.len(), t.clone(), *w))
                .unwrap()
                .clone();
            StableClass { rep, members: m }
        })
        .collect();
    let mut order: Vec<usize> = (0..old_classes.len()).collect();
    order.sort_by_key(|&i| {
        (
            old_classes[i].rep.0.len(),
            old_classes[i].rep.0.clone(),
            old_classes[i].rep.1,
        )
    });
    let mut old_to_new = vec![0usize; old_classes.len()];
    for (new, &old) in order.iter().enumerate() {
        old_to_new[old] = new;
    }
    let mut classes: Vec<Option<StableClass>> = old_classes.drain(..).map(Some).collect();
    let classes: Vec<StableClass> = order
        .iter()
        .map(|&old| classes[old].take().unwrap())
        .collect();

    let mut state_class: HashMap<(usize, usize), usize> = HashMap::new();
    for (old_cid, group) in groups.iter().enumerate() {
        for &s in group {
            state_class.insert(states[s], old_to_new[old_cid]);
        }
    }

    StableIndex {
        classes,
        state_class,
        span_groups,
    }
}

/// Reduce a span-level pair to its I-representative per the base-change
/// construction: pick n with n⁻¹·(base of Φ_θ) ⊆ Δ, transport w, and fix
/// the base mismatch with the unique y ∈ W_θ₀.
pub fn reduce_to_i(
    engine: &Engine,
    span: &Span,
    w: usize,
) -> Result<(BTreeSet<usize>, usize), EngineError> {
    let fr_span = engine.fr.apply_span(span);
    if engine.w.apply_span(w, span) != fr_span {
        return Err(EngineError::Precondition(
            "Fr(Φ_θ) = w Φ_θ fails".to_string(),
        ));
    }
    let simples: BTreeSet<usize> = simple_root_indices(engine).into_iter().collect();
    let base = base_of_subsystem(&engine.rs, span)?;
    let n = (0..engine.w.len())
        .find(|&n| {
            let inv = engine.w.inv(n);
            base.iter().all(|&g| simples.contains(&engine.w.apply(inv, g)))
        })
        .expect("every base is W-conjugate into Δ");
    let inv = engine.w.inv(n);
    let theta0: BTreeSet<usize> = base.iter().map(|&g| engine.w.apply(inv, g)).collect();
    let w0 = engine
        .w
        .mul(engine.w.mul(engine.w.inv(engine.fr_w(n)), w), n);
    // unique y ∈ W_θ₀ with Fr(θ₀) = w₀ y θ₀
    let base0: Vec<usize> = theta0.iter().copied().collect();
    let span0 = crate::roots::span_of_base(&engine.rs, &base0);
    let group0 = engine.span_group(&span0);
    let fr_theta0: BTreeSet<usize> = theta0.iter().map(|&r| engine.fr.root_perm[r]).collect();
    let ys: Vec<usize> = group0
        .iter()
        .copied()
        .filter(|&y| {
            let image: BTreeSet<usize> = theta0
                .iter()
                .map(|&r| engine.w.apply(engine.w.mul(w0, y), r))
                .collect();
            image == fr_theta0
        })
        .collect();
    assert_eq!(
        ys.len(),
        1,
        "internal error: the base-correcting element y must be unique"
    );
    Ok((theta0, engine.w.mul(w0, ys[0])))
}

/// Stable class id of an elliptic triple.
pub fn stable_class_of(
    engine: &Engine,
    index: &StableIndex,
    spans: &[Span],
    class: &EllipticClass,
) -> usize {
    let (sid, w) = class.rep;
    let span = &spans[sid];
    let theta_sid = engine
        .theta_spans
        .binary_search(span)
        .expect("triple span lies in Θ");
    let via_lookup = index.class_of_state(engine, theta_sid, w);
    // cross-check through the explicit reduction
    let (theta0, w0y) = reduce_to_i(engine, span, w).expect("İ condition holds");
    let members_have = index.classes[via_lookup]
        .members
        .contains(&(theta0.clone(), w0y));
    assert!(
        members_have,
        "reduction and coset lookup disagree on the stable class"
    );
    via_lookup
}

/// The embedding-count datum of a class.
#[derive(Debug, Clone)]
pub struct EmbeddingCount {
    pub count: usize,
    pub twisted_order: usize,
    pub stabilizer_product_order: usize,
    pub w_theta_order: usize,
}

/// `|W_{w∘Fr,θ}| / |W(F,θ,w) · W_θ|` with
/// `W(F,θ,w) = W(F) ∩ N_W(W_θ) ∩ W_{w∘Fr,∅}`.
pub fn embedding_count(
    engine: &Engine,
    spans: &[Span],
    class: &EllipticClass,
) -> Result<EmbeddingCount, EngineError> {
    if !engine.spec.simply_connected {
        return Err(EngineError::NotSimplyConnected);
    }
    let (sid, w0) = class.rep;
    let span = &spans[sid];
    let w_theta = engine.span_group(span);
    let fr = |x: usize| engine.fr_w(x);
    let twisted = twisted_subgroup(&engine.w, span, &w_theta, w0, &fr);
    let w_f_span = engine.span_stabilizer(class.facet);
    let normalizer = normalizer_of_subsystem(&engine.w, span);
    // W_{w∘Fr,∅}: Fr(w') = w w' w⁻¹
    let twisted_empty: Vec<usize> = (0..engine.w.len())
        .filter(|&x| engine.fr_w(x) == engine.w.conj(w0, x))
        .collect();
    let stab: Vec<usize> = w_f_span
        .iter()
        .copied()
        .filter(|x| normalizer.binary_search(x).is_ok())
        .filter(|x| twisted_empty.binary_search(x).is_ok())
        .collect();
    // product set W(F,θ,w) · W_θ
    let mut product: BTreeSet<usize> = BTreeSet::new();
    for &a in &stab {
        for &b in &w_theta {
            product.insert(engine.w.mul(a, b));
        }
    }
    // the stabilizer group sits inside the twisted subgroup
    for &a in &product {
        assert!(
            twisted.binary_search(&a).is_ok(),
            "W(F,θ,w)·W_θ must sit inside W_{{w∘Fr,θ}}"
        );
    }
    assert_eq!(
        twisted.len() % product.len(),
        0,
        "the product is a subgroup; Lagrange must hold"
    );
    Ok(EmbeddingCount {
        count: twisted.len() / product.len(),
        twisted_order: twisted.len(),
        stabilizer_product_order: product.len(),
        w_theta_order: w_theta.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::preset;
    use crate::engine::Engine;

    #[test]
    fn sp4_ten_stable_classes() {
        let e = Engine::new(preset("Sp4").unwrap(), 4).unwrap();
        let idx = enumerate_stable(&e);
        assert_eq!(idx.classes.len(), 10);
        let total: usize = idx.classes.iter().map(|c| c.members.len()).sum();
        let pairs = crate::finite::ig_pairs_public(&e).len();
        assert_eq!(total, pairs);
    }

    #[test]
    fn g2_eleven_stable_classes() {
        let e = Engine::new(preset("G2").unwrap(), 4).unwrap();
        assert_eq!(enumerate_stable(&e).classes.len(), 11);
    }

    #[test]
    fn a1_three_stable_classes() {
        let e = Engine::new(preset("A1").unwrap(), 4).unwrap();
        assert_eq!(enumerate_stable(&e).classes.len(), 3);
    }

    #[test]
    fn reduction_examples() {
        let e = Engine::new(preset("Sp4").unwrap(), 4).unwrap();
        // ({α+β}, w_α) reduces into the same class as ({α}, c²).
        let ab = e.rs.root_index(&[1, 1]).unwrap();
        let span_ab = crate::roots::span_of_base(&e.rs, &[ab]);
        let wa = crate::notation::parse_word(&e.rs, &e.w, "wa").unwrap();
        let (theta0, w0) = reduce_to_i(&e, &span_ab, wa).unwrap();
        let idx = enumerate_stable(&e);
        let sid_ab = e.theta_spans.binary_search(&span_ab).unwrap();
        let class_a = idx.class_of_state(&e, sid_ab, wa);
        assert!(idx.classes[class_a].members.contains(&(theta0, w0)));

        let alpha = e.rs.root_index(&[1, 0]).unwrap();
        let span_a = crate::roots::span_of_base(&e.rs, &[alpha]);
        let c2 = crate::notation::parse_word(&e.rs, &e.w, "wa wb wa wb").unwrap();
        let sid_a = e.theta_spans.binary_search(&span_a).unwrap();
        let class_b = idx.class_of_state(&e, sid_a, c2);
        assert_eq!(class_a, class_b);
    }

    #[test]
    fn reduction_is_identity_on_simple_pairs() {
        let e = Engine::new(preset("SU3q").unwrap(), 4).unwrap();
        let alpha = e.rs.root_index(&[1, 0]).unwrap();
        let span = crate::roots::span_of_base(&e.rs, &[alpha]);
        // ({α}, w_α w_β) is a valid pair (Fr(α) = β = w_α w_β · α).
        let w = crate::notation::parse_word(&e.rs, &e.w, "wa wb").unwrap();
        let (theta0, w0) = reduce_to_i(&e, &span, w).unwrap();
        let idx = enumerate_stable(&e);
        let cid = idx.class_of_state(&e, e.theta_spans.binary_search(&span).unwrap(), w);
        assert!(idx.classes[cid].members.contains(&(theta0, w0)));
    }
}
