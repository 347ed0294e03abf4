//! Weyl groups as exact permutation groups on the root list, with the
//! subgroup, normalizer, parabolic, and twisted-conjugacy machinery built
//! on top of them.
//!
//! Elements are canonicalized by their root permutation; every catalog
//! group is small enough that sets of element indices are cheap currency.

use crate::linalg::{identity_i64, mat_mul_i64};
use crate::roots::{base_of_subsystem, RootSystem, Span};
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

/// The full Weyl group, enumerated once per root system.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    /// Root-index permutation of each element; index 0 is the identity.
    pub perms: Vec<Vec<u16>>,
    index: HashMap<Vec<u16>, usize>,
    /// Shortest word in simple reflections (BFS order, lexicographic-first).
    pub words: Vec<Vec<u8>>,
    pub inverse: Vec<usize>,
    pub rank: usize,
    /// Element index of each simple reflection.
    pub gen_index: Vec<usize>,
}

/// A Weyl element view carrying its matrices, for callers that need the
/// lattice action. `root_mat` acts on simple-root coordinates; `ap_mat`
/// acts on apartment coordinates (values of simple roots at a point) and
/// is the inverse transpose of `root_mat`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    pub perm: Vec<u16>,
    pub root_mat: Vec<Vec<i64>>,
    pub ap_mat: Vec<Vec<i64>>,
}

pub fn enumerate_weyl(rs: &RootSystem) -> WeylGroup {
    let n = rs.roots.len();
    let id: Vec<u16> = (0..n as u16).collect();
    let gen_perms: Vec<Vec<u16>> = rs
        .simple_perms
        .iter()
        .map(|p| p.iter().map(|&x| x as u16).collect())
        .collect();

    let mut perms: Vec<Vec<u16>> = vec![id.clone()];
    let mut words: Vec<Vec<u8>> = vec![vec![]];
    let mut index: HashMap<Vec<u16>, usize> = HashMap::new();
    index.insert(id, 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(cur) = queue.pop_front() {
        for (g, gp) in gen_perms.iter().enumerate() {
            // left-multiply: s_g ∘ w
            let w = &perms[cur];
            let new: Vec<u16> = w.iter().map(|&i| gp[i as usize]).collect();
            if !index.contains_key(&new) {
                let idx = perms.len();
                index.insert(new.clone(), idx);
                perms.push(new);
                let mut word = vec![g as u8];
                word.extend_from_slice(&words[cur]);
                words.push(word);
                queue.push_back(idx);
            }
        }
    }

    let inverse: Vec<usize> = perms
        .iter()
        .map(|p| {
            let mut inv = vec![0u16; p.len()];
            for (i, &v) in p.iter().enumerate() {
                inv[v as usize] = i as u16;
            }
            index[&inv]
        })
        .collect();

    let gen_index: Vec<usize> = gen_perms.iter().map(|p| index[p]).collect();

    WeylGroup {
        perms,
        index,
        words,
        inverse,
        rank: rs.rank(),
        gen_index,
    }
}

impl WeylGroup {
    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Index of `a ∘ b` (apply b first).
    pub fn mul(&self, a: usize, b: usize) -> usize {
        let pa = &self.perms[a];
        let pb = &self.perms[b];
        let composed: Vec<u16> = pb.iter().map(|&i| pa[i as usize]).collect();
        self.index[&composed]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn conj(&self, n: usize, w: usize) -> usize {
        self.mul(self.mul(n, w), self.inv(n))
    }

    pub fn apply(&self, w: usize, root: usize) -> usize {
        self.perms[w][root] as usize
    }

    pub fn apply_span(&self, w: usize, span: &Span) -> Span {
        let mut out: Span = span.iter().map(|&r| self.apply(w, r)).collect();
        out.sort_unstable();
        out
    }

    pub fn element_by_perm(&self, perm: &[u16]) -> Option<usize> {
        self.index.get(perm).copied()
    }

    /// Index of the reflection in a root.
    pub fn reflection(&self, rs: &RootSystem, gamma: usize) -> usize {
        let p: Vec<u16> = rs.reflection_perm(gamma).iter().map(|&x| x as u16).collect();
        self.index[&p]
    }

    /// Materialize the matrices of an element from its word.
    pub fn element(&self, rs: &RootSystem, w: usize) -> WeylElement {
        let rank = rs.rank();
        let mut root_mat = identity_i64(rank);
        let mut ap_mat = identity_i64(rank);
        // словo is s_{g1} s_{g2} ... applied right-to-left on coordinates;
        // composing matrices in word order gives the product.
        for &g in &self.words[w] {
            let g = g as usize;
            // Simple reflection on root coordinates: v -= <v, a_g^vee> e_g.
            let mut rm = identity_i64(rank);
            for j in 0..rank {
                rm[g][j] -= rs.cartan[g][j];
            }
            // On apartment coordinates: x_j -= c[g][j] x_g.
            let mut am = identity_i64(rank);
            for j in 0..rank {
                am[j][g] -= rs.cartan[g][j];
            }
            root_mat = mat_mul_i64(&root_mat, &rm);
            ap_mat = mat_mul_i64(&ap_mat, &am);
        }
        WeylElement {
            perm: self.perms[w].clone(),
            root_mat,
            ap_mat,
        }
    }

    /// Shortest word rendered with the given generator names.
    pub fn word_string(&self, w: usize, names: &[String]) -> String {
        if self.words[w].is_empty() {
            return "1".to_string();
        }
        self.words[w]
            .iter()
            .map(|&g| names[g as usize].clone())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Evaluate a word (sequence of generator indices) to an element.
    pub fn eval_word(&self, gens: &[usize]) -> usize {
        let mut acc = self.identity();
        for &g in gens {
            acc = self.mul(acc, self.gen_index[g]);
        }
        acc
    }

    /// Index of the i-th simple reflection.
    pub fn simple_reflection_index(&self, i: usize) -> usize {
        self.gen_index[i]
    }
}

/// Subgroup generated by reflections in the given roots, as a sorted set
/// of element indices.
pub fn reflection_subgroup(rs: &RootSystem, w: &WeylGroup, roots: &[usize]) -> Vec<usize> {
    let gens: Vec<usize> = roots.iter().map(|&g| w.reflection(rs, g)).collect();
    subgroup_closure(w, &gens)
}

/// Closure of a generating set, sorted.
pub fn subgroup_closure(w: &WeylGroup, gens: &[usize]) -> Vec<usize> {
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    seen.insert(w.identity());
    let mut queue: VecDeque<usize> = VecDeque::from([w.identity()]);
    while let Some(cur) = queue.pop_front() {
        for &g in gens {
            let nxt = w.mul(g, cur);
            if seen.insert(nxt) {
                queue.push_back(nxt);
            }
        }
    }
    seen.into_iter().collect()
}

/// `{ n in W : n · members = members }`.
pub fn normalizer_of_subsystem(w: &WeylGroup, members: &Span) -> Vec<usize> {
    (0..w.len())
        .filter(|&n| w.apply_span(n, members) == *members)
        .collect()
}

/// `W_{w∘Fr,θ} = { w' in N_W(W_θ) : w⁻¹ Fr(w')⁻¹ w w' in W_θ }`, where
/// `fr` gives the Frobenius action on W by index.
pub fn twisted_subgroup(
    w: &WeylGroup,
    theta_span: &Span,
    theta_group: &[usize],
    w0: usize,
    fr: &dyn Fn(usize) -> usize,
) -> Vec<usize> {
    let normalizer = normalizer_of_subsystem(w, theta_span);
    normalizer
        .into_iter()
        .filter(|&wp| {
            let t = w.mul(
                w.mul(w.inv(w0), w.inv(fr(wp))),
                w.mul(w0, wp),
            );
            theta_group.binary_search(&t).is_ok()
        })
        .collect()
}

/// A parabolic subgroup of a reflection subgroup, tagged per the contract.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedParabolic {
    pub elements: Vec<usize>,
    pub fr_stable: bool,
    pub proper: bool,
}

/// All conjugates (within `w_f`) of the standard parabolic subgroups of the
/// reflection group on `phi_f`, tagged Fr-stable iff setwise fixed and
/// proper iff not the whole group.
pub fn parabolic_subgroups(
    rs: &RootSystem,
    w: &WeylGroup,
    w_f: &[usize],
    phi_f: &Span,
    fr: &dyn Fn(usize) -> usize,
) -> Vec<TaggedParabolic> {
    let base = base_of_subsystem(rs, phi_f).expect("facet root set is symmetric");
    let mut subgroups: BTreeSet<Vec<usize>> = BTreeSet::new();
    for mask in 0..(1u32 << base.len()) {
        let gens: Vec<usize> = base
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &g)| g)
            .collect();
        let standard = reflection_subgroup(rs, w, &gens);
        for &c in w_f {
            let conj: BTreeSet<usize> = standard.iter().map(|&x| w.conj(c, x)).collect();
            subgroups.insert(conj.into_iter().collect());
        }
    }
    subgroups
        .into_iter()
        .map(|elements| {
            let image: BTreeSet<usize> = elements.iter().map(|&x| fr(x)).collect();
            let fr_stable = image.iter().copied().eq(elements.iter().copied());
            let proper = elements.len() != w_f.len();
            TaggedParabolic {
                elements,
                fr_stable,
                proper,
            }
        })
        .collect()
}

/// Orbits of `w ↦ Fr(n) w n⁻¹` over n in W (Frobenius-conjugacy classes),
/// each sorted, listed by minimal representative.
pub fn twisted_classes(w: &WeylGroup, fr: &dyn Fn(usize) -> usize) -> Vec<Vec<usize>> {
    let mut seen: HashSet<usize> = HashSet::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for start in 0..w.len() {
        if seen.contains(&start) {
            continue;
        }
        let mut orbit: BTreeSet<usize> = BTreeSet::new();
        let mut queue = VecDeque::from([start]);
        orbit.insert(start);
        while let Some(cur) = queue.pop_front() {
            // generator moves suffice: Fr(n) w n⁻¹ for n a simple reflection
            for g in 0..w.rank {
                let n = w.simple_reflection_index(g);
                let nxt = w.mul(w.mul(fr(n), cur), w.inv(n));
                if orbit.insert(nxt) {
                    queue.push_back(nxt);
                }
            }
        }
        seen.extend(orbit.iter().copied());
        classes.push(orbit.into_iter().collect());
    }
    classes.sort_by_key(|c| c[0]);
    classes
}
