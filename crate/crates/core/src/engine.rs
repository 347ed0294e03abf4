//! Per-group context: root system, Weyl group, affine data, Frobenius,
//! facets and their equivalence classes, and the Θ spans. Built once per
//! `GroupSpec` and shared by every classifier.

use crate::affine::{
    build_affine, enumerate_facets, facet_span_witness, span_stabilizer_linear_parts, AffineData,
    Facet, FrobeniusAction,
};
use crate::catalog::GroupSpec;
use crate::error::EngineError;
use crate::roots::{build_root_system, RootSystem, Span};
use crate::weyl::{enumerate_weyl, WeylGroup};
use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::OnceLock;

/// Partition of the fundamental facets under span equivalence.
#[derive(Debug, Clone)]
pub struct FacetClasses {
    /// Class id of each facet (id = position in `reps`).
    pub class_of: Vec<usize>,
    /// One representative facet index per class, in facet order.
    pub reps: Vec<usize>,
    /// Linear part of a witness carrying span(facet) onto span(rep).
    pub witness_to_rep: Vec<usize>,
}

pub struct Engine {
    pub spec: GroupSpec,
    pub rs: RootSystem,
    pub w: WeylGroup,
    pub affine: AffineData,
    pub fr: FrobeniusAction,
    pub facets: Vec<Facet>,
    facet_classes: OnceLock<FacetClasses>,
    /// Frobenius action on W, tabulated.
    pub fr_on_w: Vec<usize>,
    /// Fr-fixed elements of W, sorted.
    pub w_fr: Vec<usize>,
    /// Distinct spans `Φ_θ`, θ ∈ Θ, sorted.
    pub theta_spans: Vec<Span>,
    pub theta_span_index: HashMap<Span, usize>,
    pub radius: i64,
}

impl Engine {
    pub fn new(spec: GroupSpec, radius: i64) -> Result<Self, EngineError> {
        let rs = build_root_system(spec.label);
        let w = enumerate_weyl(&rs);
        let affine = build_affine(&rs)?;
        let fr = FrobeniusAction::from_node_perm(&rs, &affine, spec.node_perm())?;
        let facets = enumerate_facets(&rs, &w, &affine, &fr);

        let identity_fr = fr.root_perm.iter().enumerate().all(|(i, &v)| i == v);
        let fr_on_w: Vec<usize> = if identity_fr {
            (0..w.len()).collect()
        } else {
            (0..w.len()).map(|i| fr.on_weyl(&w, i)).collect()
        };
        let w_fr: Vec<usize> = (0..w.len()).filter(|&i| fr_on_w[i] == i).collect();

        let theta_spans = enumerate_theta_spans(&rs, &w);
        let theta_span_index = theta_spans
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();

        Ok(Engine {
            spec,
            rs,
            w,
            affine,
            fr,
            facets,
            facet_classes: OnceLock::new(),
            fr_on_w,
            w_fr,
            theta_spans,
            theta_span_index,
            radius,
        })
    }

    /// Facet-equivalence classes (computed on first use; greedy against
    /// earlier facets).
    pub fn facet_classes(&self) -> &FacetClasses {
        self.facet_classes.get_or_init(|| {
            let facets = &self.facets;
            let mut class_of = vec![usize::MAX; facets.len()];
            let mut reps: Vec<usize> = Vec::new();
            let mut witness_to_rep = vec![0usize; facets.len()];
            for i in 0..facets.len() {
                let mut assigned = false;
                for (cid, &rep) in reps.iter().enumerate() {
                    if facets[i].fr_fixed_dim != facets[rep].fr_fixed_dim {
                        continue;
                    }
                    if let Some(m) = facet_span_witness(
                        &self.rs,
                        &self.w,
                        &self.affine,
                        &self.fr,
                        &facets[i],
                        &facets[rep],
                        self.radius,
                    ) {
                        class_of[i] = cid;
                        witness_to_rep[i] = m;
                        assigned = true;
                        break;
                    }
                }
                if !assigned {
                    class_of[i] = reps.len();
                    reps.push(i);
                    witness_to_rep[i] = self.w.identity();
                }
            }
            FacetClasses {
                class_of,
                reps,
                witness_to_rep,
            }
        })
    }

    pub fn fr_w(&self, idx: usize) -> usize {
        self.fr_on_w[idx]
    }

    /// Reflection subgroup of a span, sorted element indices.
    pub fn span_group(&self, span: &Span) -> Vec<usize> {
        let base: Vec<usize> = span
            .iter()
            .copied()
            .filter(|&g| self.rs.is_positive(g) || self.rs.height(g) == 0)
            .collect();
        crate::weyl::reflection_subgroup(&self.rs, &self.w, &base)
    }

    /// `W(F)` for a facet, at the engine's radius.
    pub fn span_stabilizer(&self, facet_idx: usize) -> Vec<usize> {
        span_stabilizer_linear_parts(
            &self.rs,
            &self.w,
            &self.affine,
            &self.facets[facet_idx],
            self.radius,
        )
    }

    /// `N_{W^Fr}(W_F) · W_F` — the group acting on İ(F)/∼_F in the
    /// concrete realization.
    pub fn extended_action_group(&self, facet_idx: usize) -> Vec<usize> {
        let w_f = &self.facets[facet_idx].w_f;
        let w_f_set: HashSet<usize> = w_f.iter().copied().collect();
        let normalizer: Vec<usize> = self
            .w_fr
            .iter()
            .copied()
            .filter(|&m| {
                w_f.iter()
                    .all(|&x| w_f_set.contains(&self.w.conj(m, x)))
            })
            .collect();
        let mut out: HashSet<usize> = HashSet::new();
        for &a in &normalizer {
            for &b in w_f {
                out.insert(self.w.mul(a, b));
            }
        }
        let mut out: Vec<usize> = out.into_iter().collect();
        out.sort_unstable();
        out
    }

    /// Generator names for printing words: a/b at rank ≤ 2, numbered above.
    pub fn gen_names(&self) -> Vec<String> {
        let rank = self.rs.rank();
        if rank <= 2 {
            ["wa", "wb"].iter().take(rank).map(|s| s.to_string()).collect()
        } else {
            (1..=rank).map(|i| format!("w{i}")).collect()
        }
    }

    /// Human-readable root name: integer combination of simple letters.
    pub fn root_name(&self, root: usize) -> String {
        crate::notation::root_name(&self.rs, root)
    }

    pub fn word(&self, idx: usize) -> String {
        self.w.word_string(idx, &self.gen_names())
    }

    /// Sorted member pairs of İ(F) at span granularity.
    pub fn facet(&self, idx: usize) -> &Facet {
        &self.facets[idx]
    }
}

/// Distinct spans `Φ_θ` for θ ∈ Θ, via orbit closure of the Levi spans of
/// simple subsets.
fn enumerate_theta_spans(rs: &RootSystem, w: &WeylGroup) -> Vec<Span> {
    let rank = rs.rank();
    let mut seeds: Vec<Span> = Vec::new();
    for mask in 0..(1u32 << rank) {
        let base: Vec<usize> = (0..rank)
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| {
                let mut e = vec![0i64; rank];
                e[i] = 1;
                rs.root_index(&e).unwrap()
            })
            .collect();
        seeds.push(crate::roots::span_of_base(rs, &base));
    }
    let mut seen: HashSet<Span> = HashSet::new();
    let mut queue: VecDeque<Span> = VecDeque::new();
    for s in seeds {
        if seen.insert(s.clone()) {
            queue.push_back(s);
        }
    }
    while let Some(s) = queue.pop_front() {
        for g in 0..rank {
            let gen = w.simple_reflection_index(g);
            let image = w.apply_span(gen, &s);
            if seen.insert(image.clone()) {
                queue.push_back(image);
            }
        }
    }
    let mut out: Vec<Span> = seen.into_iter().collect();
    out.sort();
    out
}

/// Elements of Θ proper — the bases w·ρ themselves, materialized. Spans may
/// repeat across bases; each base is a set.
pub fn enumerate_theta_bases(rs: &RootSystem, w: &WeylGroup) -> Vec<Vec<usize>> {
    let rank = rs.rank();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    for mask in 0..(1u32 << rank) {
        let rho: Vec<usize> = (0..rank)
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| {
                let mut e = vec![0i64; rank];
                e[i] = 1;
                rs.root_index(&e).unwrap()
            })
            .collect();
        for idx in 0..w.len() {
            let mut image: Vec<usize> = rho.iter().map(|&r| w.apply(idx, r)).collect();
            image.sort_unstable();
            seen.insert(image);
        }
    }
    let mut out: Vec<Vec<usize>> = seen.into_iter().collect();
    out.sort();
    out
}
