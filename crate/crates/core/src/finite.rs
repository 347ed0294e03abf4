//! Classification for groups over quasi-finite fields: twisted Levi
//! classes (pairs (θ, w) with θ inside the simple system) and twisted
//! generalized Levi classes (Ξ a positive base of a quasi-closed
//! subsystem).

use crate::engine::Engine;
use crate::error::EngineError;
use crate::records::{describe, Descriptor};
use crate::roots::{enumerate_quasi_closed, span_of_base};
use std::collections::{BTreeSet, HashMap};

/// A pair (θ, w) with θ a set of root indices and w a Weyl element index.
pub type FinitePair = (BTreeSet<usize>, usize);

#[derive(Debug, Clone)]
pub struct FiniteClass {
    pub rep: FinitePair,
    pub members: Vec<FinitePair>,
    pub descriptor: Descriptor,
}

/// Valid pairs for I_G: θ ⊆ Δ and Fr(θ) = w θ as root sets.
fn ig_pairs(engine: &Engine) -> Vec<FinitePair> {
    let rank = engine.rs.rank();
    let simple_roots: Vec<usize> = (0..rank)
        .map(|i| {
            let mut e = vec![0i64; rank];
            e[i] = 1;
            engine.rs.root_index(&e).unwrap()
        })
        .collect();
    let mut out = Vec::new();
    for mask in 0..(1u32 << rank) {
        let theta: BTreeSet<usize> = (0..rank)
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| simple_roots[i])
            .collect();
        let fr_theta: BTreeSet<usize> = theta.iter().map(|&r| engine.fr.root_perm[r]).collect();
        for w in 0..engine.w.len() {
            let image: BTreeSet<usize> = theta.iter().map(|&r| engine.w.apply(w, r)).collect();
            if image == fr_theta {
                out.push((theta.clone(), w));
            }
        }
    }
    out
}

/// Valid pairs for I'_G: Ξ ranges over the positive bases of quasi-closed
/// subsystems in the spec's characteristic.
fn igprime_pairs(engine: &Engine) -> Result<Vec<FinitePair>, EngineError> {
    let subs = enumerate_quasi_closed(&engine.rs, engine.spec.residue_char.as_u32())?;
    let mut out = Vec::new();
    for sub in subs {
        let xi: BTreeSet<usize> = sub.base.iter().copied().collect();
        let fr_xi: BTreeSet<usize> = xi.iter().map(|&r| engine.fr.root_perm[r]).collect();
        for w in 0..engine.w.len() {
            let image: BTreeSet<usize> = xi.iter().map(|&r| engine.w.apply(w, r)).collect();
            if image == fr_xi {
                out.push((xi.clone(), w));
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Partition pairs under θ = n θ', w = Fr(n) w' n⁻¹ over n ∈ W, restricted
/// to the given state set.
fn partition(engine: &Engine, pairs: &[FinitePair]) -> Vec<Vec<usize>> {
    let index: HashMap<FinitePair, usize> = pairs
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    let mut uf = UnionFind::new(pairs.len());
    // Group state indices by θ so each (n, θ) image is computed once.
    let mut by_theta: HashMap<&BTreeSet<usize>, Vec<usize>> = HashMap::new();
    for (i, (t, _)) in pairs.iter().enumerate() {
        by_theta.entry(t).or_default().push(i);
    }
    let theta_set: BTreeSet<&BTreeSet<usize>> = by_theta.keys().copied().collect();
    for n in 0..engine.w.len() {
        let fr_n = engine.fr_w(n);
        let n_inv = engine.w.inv(n);
        for &theta in &theta_set {
            let image: BTreeSet<usize> = theta.iter().map(|&r| engine.w.apply(n, r)).collect();
            if !theta_set.contains(&image) {
                continue;
            }
            for &i in &by_theta[theta] {
                let new_w = engine.w.mul(engine.w.mul(fr_n, pairs[i].1), n_inv);
                if let Some(&j) = index.get(&(image.clone(), new_w)) {
                    uf.union(i, j);
                }
            }
        }
    }
    uf.groups()
}

fn make_classes(engine: &Engine, pairs: Vec<FinitePair>, groups: Vec<Vec<usize>>) -> Vec<FiniteClass> {
    let mut classes: Vec<FiniteClass> = groups
        .into_iter()
        .map(|idxs| {
            let mut members: Vec<FinitePair> =
                idxs.into_iter().map(|i| pairs[i].clone()).collect();
            members.sort();
            let rep = members
                .iter()
                .min_by_key(|(t, w)| (t.len(), t.clone(), *w))
                .unwrap()
                .clone();
            let base: Vec<usize> = rep.0.iter().copied().collect();
            let span = span_of_base(&engine.rs, &base);
            let descriptor = describe(engine, &span, rep.1);
            FiniteClass {
                rep,
                members,
                descriptor,
            }
        })
        .collect();
    classes.sort_by_key(|c| (c.rep.0.len(), c.rep.0.clone(), c.rep.1));
    classes
}

/// Twisted Levi classes I_G/∼.
pub fn enumerate_ig(engine: &Engine) -> Vec<FiniteClass> {
    let pairs = ig_pairs(engine);
    let groups = partition(engine, &pairs);
    make_classes(engine, pairs, groups)
}

/// Twisted generalized Levi classes I'_G/∼ (characteristic-aware).
pub fn enumerate_ig_prime(engine: &Engine) -> Result<Vec<FiniteClass>, EngineError> {
    let pairs = igprime_pairs(engine)?;
    let groups = partition(engine, &pairs);
    Ok(make_classes(engine, pairs, groups))
}

/// Classes of I'_G that contain no I_G pair.
pub fn ig_prime_minus_ig(engine: &Engine) -> Result<Vec<FiniteClass>, EngineError> {
    let rank = engine.rs.rank();
    let simple: BTreeSet<usize> = (0..rank)
        .map(|i| {
            let mut e = vec![0i64; rank];
            e[i] = 1;
            engine.rs.root_index(&e).unwrap()
        })
        .collect();
    Ok(enumerate_ig_prime(engine)?
        .into_iter()
        .filter(|c| {
            !c.members
                .iter()
                .any(|(t, _)| t.iter().all(|r| simple.contains(r)))
        })
        .collect())
}

/// Naive quadratic oracle: pairwise equivalence test by scanning all n.
pub fn partition_oracle(engine: &Engine, pairs: &[FinitePair]) -> Vec<Vec<usize>> {
    let equivalent = |p: &FinitePair, q: &FinitePair| -> bool {
        (0..engine.w.len()).any(|n| {
            let image: BTreeSet<usize> = q.0.iter().map(|&r| engine.w.apply(n, r)).collect();
            image == p.0 && engine.w.mul(engine.w.mul(engine.fr_w(n), q.1), engine.w.inv(n)) == p.1
        })
    };
    let mut assigned = vec![usize::MAX; pairs.len()];
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in 0..pairs.len() {
        if assigned[i] != usize::MAX {
            continue;
        }
        let gid = groups.len();
        let mut group = vec![i];
        assigned[i] = gid;
        for j in (i + 1)..pairs.len() {
            if assigned[j] == usize::MAX && equivalent(&pairs[i], &pairs[j]) {
                assigned[j] = gid;
                group.push(j);
            }
        }
        groups.push(group);
    }
    groups
}

pub fn ig_pairs_public(engine: &Engine) -> Vec<FinitePair> {
    ig_pairs(engine)
}

pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    /// Groups listed by smallest member.
    pub fn groups(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut map: HashMap<usize, Vec<usize>> = HashMap::new();
        for i in 0..n {
            let r = self.find(i);
            map.entry(r).or_default().push(i);
        }
        let mut out: Vec<Vec<usize>> = map.into_values().collect();
        out.sort_by_key(|g| g[0]);
        out
    }
}
