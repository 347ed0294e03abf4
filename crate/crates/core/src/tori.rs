//! The p-adic core: per-facet pairs (θ, w), the facet equivalence
//! reduction, ellipticity, and the global enumeration of elliptic triples.
//! The same pipeline classifies unramified tori (Θ spans) and unramified
//! twisted generalized Levis (quasi-closed spans).

use crate::affine::boundary_parabolic_elements;
use crate::engine::Engine;
use crate::finite::UnionFind;
use crate::roots::Span;
use rayon::prelude::*;
use std::collections::{BTreeMap, HashMap};

/// A pair at span granularity: (index into the span list, Weyl element).
pub type Pair = (usize, usize);

/// All pairs (θ, w) with w ∈ W_F and Fr(Φ_θ) = w Φ_θ, θ drawn from the
/// given span list.
pub fn dot_i_pairs(engine: &Engine, facet_idx: usize, spans: &[Span]) -> Vec<Pair> {
    let facet = engine.facet(facet_idx);
    let mut out = Vec::new();
    for (sid, span) in spans.iter().enumerate() {
        let fr_span = engine.fr.apply_span(span);
        for &w in &facet.w_f {
            if engine.w.apply_span(w, span) == fr_span {
                out.push((sid, w));
            }
        }
    }
    out
}

/// `W_F ∩ W_span` per span id, computed on demand.
fn cap_for<'a>(
    engine: &Engine,
    facet_idx: usize,
    spans: &[Span],
    cache: &'a mut HashMap<usize, Vec<usize>>,
    sid: usize,
) -> &'a [usize] {
    cache.entry(sid).or_insert_with(|| {
        let group = engine.span_group(&spans[sid]);
        engine
            .facet(facet_idx)
            .w_f
            .iter()
            .copied()
            .filter(|x| group.binary_search(x).is_ok())
            .collect()
    })
}

/// Partition pairs under the facet equivalence: ∃ n ∈ W_F with
/// Φ_θ' = n Φ_θ and Fr(n) w n⁻¹ ∈ w' (W_F ∩ W_θ').
pub fn reduce_f(engine: &Engine, facet_idx: usize, spans: &[Span], pairs: &[Pair]) -> Vec<Vec<Pair>> {
    let facet = engine.facet(facet_idx);
    let index: HashMap<Pair, usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut caps: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut uf = UnionFind::new(pairs.len());
    for (i, &(sid, wv)) in pairs.iter().enumerate() {
        for &n in &facet.w_f {
            let image_span = engine.w.apply_span(n, &spans[sid]);
            let Ok(tid) = spans.binary_search(&image_span) else {
                continue;
            };
            let moved = engine
                .w
                .mul(engine.w.mul(engine.fr_w(n), wv), engine.w.inv(n));
            // all w' with moved ∈ w' (W_F ∩ W_θ'): w' = moved · y⁻¹
            let cap = cap_for(engine, facet_idx, spans, &mut caps, tid).to_vec();
            for y in cap {
                let wp = engine.w.mul(moved, engine.w.inv(y));
                if let Some(&j) = index.get(&(tid, wp)) {
                    uf.union(i, j);
                }
            }
        }
    }
    let groups = uf.groups();
    groups
        .into_iter()
        .map(|g| g.into_iter().map(|i| pairs[i]).collect())
        .collect()
}

/// Quadratic pairwise oracle for the same partition.
pub fn reduce_f_oracle(
    engine: &Engine,
    facet_idx: usize,
    spans: &[Span],
    pairs: &[Pair],
) -> Vec<Vec<Pair>> {
    let facet = engine.facet(facet_idx);
    let caps: HashMap<usize, Vec<usize>> = pairs
        .iter()
        .map(|&(sid, _)| sid)
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .map(|sid| {
            let group = engine.span_group(&spans[sid]);
            (
                sid,
                facet
                    .w_f
                    .iter()
                    .copied()
                    .filter(|x| group.binary_search(x).is_ok())
                    .collect::<Vec<usize>>(),
            )
        })
        .collect();
    let equivalent = |p: &Pair, q: &Pair| -> bool {
        facet.w_f.iter().any(|&n| {
            engine.w.apply_span(n, &spans[p.0]) == spans[q.0] && {
                let moved = engine
                    .w
                    .mul(engine.w.mul(engine.fr_w(n), p.1), engine.w.inv(n));
                // moved ∈ q.1 (W_F ∩ W_{q.0})
                let shift = engine.w.mul(engine.w.inv(q.1), moved);
                caps[&q.0].binary_search(&shift).is_ok()
            }
        })
    };
    let mut groups: Vec<Vec<Pair>> = Vec::new();
    let mut assigned = vec![false; pairs.len()];
    for i in 0..pairs.len() {
        if assigned[i] {
            continue;
        }
        // BFS over the symmetric closure of the witness relation.
        let mut group = vec![i];
        assigned[i] = true;
        let mut frontier = vec![i];
        while let Some(k) = frontier.pop() {
            for j in 0..pairs.len() {
                if !assigned[j]
                    && (equivalent(&pairs[k], &pairs[j]) || equivalent(&pairs[j], &pairs[k]))
                {
                    assigned[j] = true;
                    group.push(j);
                    frontier.push(j);
                }
            }
        }
        group.sort_unstable();
        groups.push(group.into_iter().map(|k| pairs[k]).collect());
    }
    groups
}

/// Is the ∼_F-class containing this pair elliptic?
pub fn is_elliptic(engine: &Engine, facet_idx: usize, spans: &[Span], pair: Pair) -> bool {
    let pairs = dot_i_pairs(engine, facet_idx, spans);
    let classes = reduce_f(engine, facet_idx, spans, &pairs);
    let class = classes
        .iter()
        .find(|c| c.contains(&pair))
        .expect("pair belongs to İ(F)");
    class_is_elliptic(engine, facet_idx, class)
}

pub fn class_is_elliptic(engine: &Engine, facet_idx: usize, class: &[Pair]) -> bool {
    let bad = boundary_parabolic_elements(&engine.rs, &engine.w, &engine.fr, engine.facet(facet_idx));
    class.iter().all(|&(_, w)| bad.binary_search(&w).is_err())
}

/// One global equivalence class of elliptic triples.
#[derive(Debug, Clone)]
pub struct EllipticClass {
    /// Representative facet (the smallest in its facet-equivalence class).
    pub facet: usize,
    /// Canonical representative pair at the representative facet.
    pub rep: Pair,
    /// All member pairs per facet of the facet-equivalence class.
    pub members_by_facet: BTreeMap<usize, Vec<Pair>>,
}

impl EllipticClass {
    pub fn orbit_size(&self) -> usize {
        self.members_by_facet.values().map(Vec::len).sum()
    }
}

/// Enumerate the elliptic classes over all facets: per representative
/// facet, reduce by ∼_F, filter elliptic, then quotient by the extended
/// action of `N_{W^Fr}(W_F) · W_F`; finally glue equivalent facets via the
/// stored witnesses.
pub fn enumerate_elliptic(engine: &Engine, spans: &[Span], parallel: bool) -> Vec<EllipticClass> {
    // Per-facet elliptic ∼_F classes.
    let facet_ids: Vec<usize> = (0..engine.facets.len()).collect();
    let per_facet: Vec<(usize, Vec<Vec<Pair>>)> = if parallel {
        facet_ids
            .par_iter()
            .map(|&f| (f, elliptic_classes_at(engine, f, spans)))
            .collect()
    } else {
        facet_ids
            .iter()
            .map(|&f| (f, elliptic_classes_at(engine, f, spans)))
            .collect()
    };

    // Global ids: (facet, class index at facet).
    let mut offsets: HashMap<usize, usize> = HashMap::new();
    let mut total = 0usize;
    for (f, classes) in &per_facet {
        offsets.insert(*f, total);
        total += classes.len();
    }
    let mut uf = UnionFind::new(total);
    // Pair-to-class lookup per facet.
    let lookup: HashMap<usize, HashMap<Pair, usize>> = per_facet
        .iter()
        .map(|(f, classes)| {
            let mut m = HashMap::new();
            for (ci, class) in classes.iter().enumerate() {
                for &p in class {
                    m.insert(p, ci);
                }
            }
            (*f, m)
        })
        .collect();

    // Glue each facet to its class representative via the witness linear
    // part: pairs transport as (m·θ, m w m⁻¹).
    let fc = engine.facet_classes();
    for (f, classes) in &per_facet {
        let rep_facet = fc.reps[fc.class_of[*f]];
        if rep_facet == *f {
            continue;
        }
        let m = fc.witness_to_rep[*f];
        for (ci, class) in classes.iter().enumerate() {
            let (sid, wv) = class[0];
            let image_span = engine.w.apply_span(m, &spans[sid]);
            let tid = spans
                .binary_search(&image_span)
                .expect("span list closed under W");
            let moved = engine.w.conj(m, wv);
            // locate the image inside the rep facet's classes; the image
            // satisfies the İ(rep) condition because m is Fr-fixed.
            let target = lookup[&rep_facet]
                .get(&(tid, moved))
                .copied()
                .unwrap_or_else(|| {
                    panic!(
                        "transported pair not found at representative facet {rep_facet}"
                    )
                });
            uf.union(offsets[f] + ci, offsets[&rep_facet] + target);
        }
    }

    // Assemble global classes.
    let flat: Vec<(usize, usize)> = per_facet
        .iter()
        .flat_map(|(f, classes)| (0..classes.len()).map(move |ci| (*f, ci)))
        .collect();
    let classes_by_facet: HashMap<usize, &Vec<Vec<Pair>>> =
        per_facet.iter().map(|(f, c)| (*f, c)).collect();
    let groups = uf.groups();
    let mut out = Vec::new();
    for group in groups {
        let mut members_by_facet: BTreeMap<usize, Vec<Pair>> = BTreeMap::new();
        for gid in group {
            let (f, ci) = flat[gid];
            let mut pairs = classes_by_facet[&f][ci].clone();
            members_by_facet.entry(f).or_default().append(&mut pairs);
        }
        for pairs in members_by_facet.values_mut() {
            pairs.sort_unstable();
            pairs.dedup();
        }
        let facet = *members_by_facet.keys().next().unwrap();
        let rep = rep_of(engine, spans, &members_by_facet[&facet]);
        out.push(EllipticClass {
            facet,
            rep,
            members_by_facet,
        });
    }
    out.sort_by(|a, b| {
        let fa = fc.class_of[a.facet];
        let fb = fc.class_of[b.facet];
        (fa, spans[a.rep.0].len(), &spans[a.rep.0], a.rep.1).cmp(&(
            fb,
            spans[b.rep.0].len(),
            &spans[b.rep.0],
            b.rep.1,
        ))
    });
    out
}

fn rep_of(_engine: &Engine, spans: &[Span], pairs: &[Pair]) -> Pair {
    *pairs
        .iter()
        .min_by_key(|(sid, w)| (spans[*sid].len(), spans[*sid].clone(), *w))
        .unwrap()
}

/// The per-facet elliptic classes after the extended action.
pub fn elliptic_classes_at(engine: &Engine, facet_idx: usize, spans: &[Span]) -> Vec<Vec<Pair>> {
    let pairs = dot_i_pairs(engine, facet_idx, spans);
    let classes = reduce_f(engine, facet_idx, spans, &pairs);
    let elliptic: Vec<Vec<Pair>> = classes
        .into_iter()
        .filter(|c| class_is_elliptic(engine, facet_idx, c))
        .collect();
    merge_under_extended_action(engine, facet_idx, spans, elliptic)
}

/// Quotient ∼_F-classes by `m ∈ N_{W^Fr}(W_F) · W_F` with
/// m Φ_θ = Φ_θ' and Fr(m) w m⁻¹ ∈ w'(W_F ∩ W_θ').
pub fn merge_under_extended_action(
    engine: &Engine,
    facet_idx: usize,
    spans: &[Span],
    classes: Vec<Vec<Pair>>,
) -> Vec<Vec<Pair>> {
    if classes.is_empty() {
        return classes;
    }
    let group = engine.extended_action_group(facet_idx);
    let mut pair_class: HashMap<Pair, usize> = HashMap::new();
    for (ci, class) in classes.iter().enumerate() {
        for &p in class {
            pair_class.insert(p, ci);
        }
    }
    let facet = engine.facet(facet_idx);
    let mut caps: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut uf = UnionFind::new(classes.len());
    for (ci, class) in classes.iter().enumerate() {
        let (sid, wv) = class[0];
        for &m in &group {
            let image_span = engine.w.apply_span(m, &spans[sid]);
            let Ok(tid) = spans.binary_search(&image_span) else {
                continue;
            };
            let moved = engine
                .w
                .mul(engine.w.mul(engine.fr_w(m), wv), engine.w.inv(m));
            let cap = caps.entry(tid).or_insert_with(|| {
                let g = engine.span_group(&spans[tid]);
                facet
                    .w_f
                    .iter()
                    .copied()
                    .filter(|x| g.binary_search(x).is_ok())
                    .collect()
            });
            for &y in cap.iter() {
                let wp = engine.w.mul(moved, engine.w.inv(y));
                if let Some(&cj) = pair_class.get(&(tid, wp)) {
                    uf.union(ci, cj);
                }
            }
        }
    }
    uf.groups()
        .into_iter()
        .map(|g| {
            let mut merged: Vec<Pair> = g.into_iter().flat_map(|ci| classes[ci].clone()).collect();
            merged.sort_unstable();
            merged.dedup();
            merged
        })
        .collect()
}

/// Restriction of the elliptic classes to θ = ∅: the maximal unramified
/// tori.
pub fn maximal_tori(_engine: &Engine, classes: &[EllipticClass], spans: &[Span]) -> Vec<EllipticClass> {
    classes
        .iter()
        .filter(|c| spans[c.rep.0].is_empty())
        .cloned()
        .collect()
}

/// Facet-star oracle for ellipticity, independent of
/// `boundary_parabolic_elements`: enumerate the hyperplane-arrangement
/// strata of the Frobenius-fixed direction space. Each stratum whose
/// directions leave the span of F is the direction of a facet H with
/// F ⊂ H̄ and yields the parabolic W_{Φ_F ∩ μ⊥}; the class is elliptic iff
/// no member's Weyl part lies in any of these.
pub fn is_elliptic_oracle(engine: &Engine, facet_idx: usize, class: &[Pair]) -> bool {
    use crate::linalg::{in_span, kernel_basis, pair as pair_root, Rat};
    use num::Zero;
    let facet = engine.facet(facet_idx);
    let fixed = crate::linalg::fixed_space(&engine.fr.linear);
    if fixed.is_empty() {
        return true;
    }
    let positives: Vec<usize> = facet
        .phi_f
        .iter()
        .copied()
        .filter(|&g| engine.rs.is_positive(g))
        .collect();
    for mask in 0..(1u32 << positives.len()) {
        let subset: Vec<usize> = positives
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &g)| g)
            .collect();
        // E = V^Fr ∩ ⋂_{γ ∈ subset} γ⊥, parameterized in fixed-space
        // coordinates c: constraints Σ_j c_j <γ, u_j> = 0.
        let constraints: Vec<Vec<Rat>> = subset
            .iter()
            .map(|&g| {
                fixed
                    .iter()
                    .map(|u| pair_root(&engine.rs.roots[g], u))
                    .collect()
            })
            .collect();
        let coeffs = if constraints.is_empty() {
            (0..fixed.len())
                .map(|i| {
                    let mut e = vec![Rat::zero(); fixed.len()];
                    e[i] = num::One::one();
                    e
                })
                .collect::<Vec<_>>()
        } else {
            kernel_basis(&constraints, fixed.len())
        };
        let e_basis: Vec<Vec<Rat>> = coeffs
            .iter()
            .map(|c| {
                (0..fixed[0].len())
                    .map(|r| {
                        c.iter()
                            .zip(&fixed)
                            .map(|(x, u)| *x * u[r])
                            .fold(Rat::zero(), |a, b| a + b)
                    })
                    .collect()
            })
            .collect();
        // valid stratum: some direction leaves the span of F
        if e_basis.iter().all(|u| in_span(&facet.fr_dirs, u)) {
            continue;
        }
        // roots vanishing on the whole stratum
        let vanishing: Vec<usize> = facet
            .phi_f
            .iter()
            .copied()
            .filter(|&g| {
                engine.rs.is_positive(g)
                    && e_basis
                        .iter()
                        .all(|u| pair_root(&engine.rs.roots[g], u).is_zero())
            })
            .collect();
        let w_h = crate::weyl::reflection_subgroup(&engine.rs, &engine.w, &vanishing);
        if class.iter().any(|&(_, w)| w_h.binary_search(&w).is_ok()) {
            return false;
        }
    }
    true
}
