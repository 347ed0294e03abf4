//! Finite root systems with exact integer coordinates, the lattice Θ of
//! Weyl-transformed simple subsets, and closed / quasi-closed subsystems.
//!
//! Roots are stored as integer vectors in simple-root coordinates and are
//! globally ordered by (height, lexicographic coordinates), so every
//! downstream representative is canonical.

use crate::error::EngineError;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

/// Supported Cartan types. `A(n)` covers ranks 1..=8.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CartanLabel {
    A(usize),
    C2,
    G2,
}

impl CartanLabel {
    pub fn rank(self) -> usize {
        match self {
            CartanLabel::A(n) => n,
            CartanLabel::C2 | CartanLabel::G2 => 2,
        }
    }

    /// Cartan matrix with entries `c[i][j] = <alpha_j, alpha_i^vee>`.
    pub fn cartan_matrix(self) -> Vec<Vec<i64>> {
        match self {
            CartanLabel::A(n) => (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i == j {
                                2
                            } else if i.abs_diff(j) == 1 {
                                -1
                            } else {
                                0
                            }
                        })
                        .collect()
                })
                .collect(),
            // alpha (index 0) short, beta (index 1) long in both cases.
            CartanLabel::C2 => vec![vec![2, -2], vec![-1, 2]],
            CartanLabel::G2 => vec![vec![2, -3], vec![-1, 2]],
        }
    }

    pub fn parse(s: &str) -> Result<Self, EngineError> {
        let t = s.trim();
        let norm = t.to_ascii_uppercase().replace('_', "");
        match norm.as_str() {
            "C2" | "B2" => Ok(CartanLabel::C2),
            "G2" => Ok(CartanLabel::G2),
            _ => {
                if let Some(n) = norm.strip_prefix('A') {
                    let n: usize = n
                        .parse()
                        .map_err(|_| EngineError::UnsupportedLabel(s.to_string()))?;
                    if (1..=8).contains(&n) {
                        return Ok(CartanLabel::A(n));
                    }
                }
                Err(EngineError::UnsupportedLabel(s.to_string()))
            }
        }
    }
}

impl fmt::Display for CartanLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanLabel::A(n) => write!(f, "A{n}"),
            CartanLabel::C2 => write!(f, "C2"),
            CartanLabel::G2 => write!(f, "G2"),
        }
    }
}

/// A finite reduced root system in simple-root coordinates.
#[derive(Debug, Clone)]
pub struct RootSystem {
    pub label: CartanLabel,
    /// `cartan[i][j] = <alpha_j, alpha_i^vee>`
    pub cartan: Vec<Vec<i64>>,
    /// All roots, sorted by (height, lexicographic coordinates).
    pub roots: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    pub n_positive: usize,
    pub highest: usize,
    /// Root-index permutation of each simple reflection.
    pub simple_perms: Vec<Vec<usize>>,
    /// Index of -root for each root.
    pub negation: Vec<usize>,
    /// Squared lengths under the W-invariant form, normalized so short = 2.
    pub norms: Vec<i64>,
    /// Symmetrized form on simple roots: `form[i][j] = (alpha_i, alpha_j)`.
    pub form: Vec<Vec<i64>>,
}

/// Sorted, negation-symmetric set of root indices (a subsystem's members).
pub type Span = Vec<usize>;

/// A root subsystem with a distinguished simple system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSubsystem {
    /// Sorted member indices, closed under negation.
    pub members: Span,
    /// Simple system extracted with the canonical positivity order.
    pub base: Vec<usize>,
    pub closed: bool,
    /// Characteristics in which the set is quasi-closed; `None` = all.
    pub quasi_closed_chars: Option<Vec<u32>>,
}

pub fn build_root_system(label: CartanLabel) -> RootSystem {
    let rank = label.rank();
    let cartan = label.cartan_matrix();

    // Symmetrize the Cartan matrix: d[i] * c[i][j] = d[j] * c[j][i].
    let mut d = vec![0i64; rank];
    d[0] = 1;
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for j in 0..rank {
            if i != j && cartan[i][j] != 0 && d[j] == 0 {
                // d[j] = d[i] * c[i][j] / c[j][i], kept integral by scaling.
                let num = d[i] * cartan[i][j];
                let den = cartan[j][i];
                if num % den != 0 {
                    for v in d.iter_mut() {
                        *v *= den.abs();
                    }
                }
                d[j] = d[i] * cartan[i][j] / cartan[j][i];
                queue.push_back(j);
            }
        }
    }
    let g = d.iter().fold(0, |a, &b| num::integer::gcd(a, b.abs()));
    let d: Vec<i64> = d.iter().map(|&x| x / g).collect();
    // (alpha_i, alpha_j) with (alpha_i, alpha_i) = 2 d[i].
    let form: Vec<Vec<i64>> = (0..rank)
        .map(|i| (0..rank).map(|j| d[i] * cartan[i][j]).collect())
        .collect();

    // Close the simple roots under simple reflections.
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    for i in 0..rank {
        let mut e = vec![0i64; rank];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(v) = queue.pop_front() {
        for i in 0..rank {
            let pairing: i64 = (0..rank).map(|j| cartan[i][j] * v[j]).sum();
            let mut w = v.clone();
            w[i] -= pairing;
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    let mut roots: Vec<Vec<i64>> = seen.into_iter().collect();
    roots.sort_by_key(|v| (v.iter().sum::<i64>(), v.clone()));

    let index: HashMap<Vec<i64>, usize> = roots
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), i))
        .collect();
    let n_positive = roots.len() / 2;
    let highest = roots.len() - 1;

    let simple_perms: Vec<Vec<usize>> = (0..rank)
        .map(|i| {
            roots
                .iter()
                .map(|v| {
                    let pairing: i64 = (0..rank).map(|j| cartan[i][j] * v[j]).sum();
                    let mut w = v.clone();
                    w[i] -= pairing;
                    index[&w]
                })
                .collect()
        })
        .collect();

    let negation: Vec<usize> = roots
        .iter()
        .map(|v| {
            let neg: Vec<i64> = v.iter().map(|&c| -c).collect();
            index[&neg]
        })
        .collect();

    let norms: Vec<i64> = roots
        .iter()
        .map(|v| {
            (0..rank)
                .map(|i| (0..rank).map(|j| v[i] * form[i][j] * v[j]).sum::<i64>())
                .sum()
        })
        .collect();

    RootSystem {
        label,
        cartan,
        roots,
        index,
        n_positive,
        highest,
        simple_perms,
        negation,
        norms,
        form,
    }
}

impl RootSystem {
    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn root_index(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    pub fn height(&self, idx: usize) -> i64 {
        self.roots[idx].iter().sum()
    }

    pub fn is_positive(&self, idx: usize) -> bool {
        self.height(idx) > 0
    }

    /// `<v, gamma^vee> = 2 (v, gamma) / (gamma, gamma)` for roots by index.
    pub fn pairing_with_coroot(&self, v: usize, gamma: usize) -> i64 {
        let num = 2 * self.inner(v, gamma);
        debug_assert_eq!(num % self.norms[gamma], 0);
        num / self.norms[gamma]
    }

    pub fn inner(&self, a: usize, b: usize) -> i64 {
        let (va, vb) = (&self.roots[a], &self.roots[b]);
        (0..self.rank())
            .map(|i| {
                (0..self.rank())
                    .map(|j| va[i] * self.form[i][j] * vb[j])
                    .sum::<i64>()
            })
            .sum()
    }

    /// The reflection in an arbitrary root, as a root-index permutation.
    pub fn reflection_perm(&self, gamma: usize) -> Vec<usize> {
        (0..self.roots.len())
            .map(|v| {
                let c = self.pairing_with_coroot(v, gamma);
                let coords: Vec<i64> = (0..self.rank())
                    .map(|k| self.roots[v][k] - c * self.roots[gamma][k])
                    .collect();
                self.index[&coords]
            })
            .collect()
    }

    /// Marks of the highest root (coefficients on simple roots).
    pub fn marks(&self) -> Vec<i64> {
        self.roots[self.highest].clone()
    }

    /// There are exactly two length classes at most in the supported types.
    pub fn is_long(&self, idx: usize) -> bool {
        let max = self.norms.iter().max().copied().unwrap_or(2);
        self.norms[idx] == max
    }

    pub fn has_two_lengths(&self) -> bool {
        let max = self.norms.iter().max().copied().unwrap_or(2);
        let min = self.norms.iter().min().copied().unwrap_or(2);
        max != min
    }
}

/// Versioned JSON document for fixture comparison.
#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RootSystemDoc {
    pub version: u32,
    pub cartan_label: String,
    pub cartan_matrix: Vec<Vec<i64>>,
    pub roots: Vec<Vec<i64>>,
}

impl RootSystem {
    pub fn to_doc(&self) -> RootSystemDoc {
        RootSystemDoc {
            version: 1,
            cartan_label: self.label.to_string(),
            cartan_matrix: self.cartan.clone(),
            roots: self.roots.clone(),
        }
    }
}

/// Canonical positivity: a root is counted positive when its coordinate
/// vector is lexicographically positive after the height comparison. This
/// coincides with ordinary positivity for the ambient system and picks a
/// deterministic simple system inside any subsystem.
fn canonically_positive(rs: &RootSystem, idx: usize) -> bool {
    let h = rs.height(idx);
    if h != 0 {
        return h > 0;
    }
    rs.roots[idx].iter().find(|&&c| c != 0).map(|&c| c > 0) == Some(true)
}

/// Extract the simple system of a symmetric member set with respect to the
/// canonical positivity order.
pub fn base_of_subsystem(rs: &RootSystem, members: &Span) -> Result<Vec<usize>, EngineError> {
    let set: BTreeSet<usize> = members.iter().copied().collect();
    for &m in members {
        if !set.contains(&rs.negation[m]) {
            return Err(EngineError::NotSymmetric);
        }
    }
    let positives: Vec<usize> = members
        .iter()
        .copied()
        .filter(|&m| canonically_positive(rs, m))
        .collect();
    let mut base: Vec<usize> = positives
        .iter()
        .copied()
        .filter(|&g| {
            // Indecomposable: not the sum of two members of the positive part.
            !positives.iter().any(|&a| {
                positives.iter().any(|&b| {
                    a != g
                        && b != g
                        && (0..rs.rank())
                            .all(|k| rs.roots[a][k] + rs.roots[b][k] == rs.roots[g][k])
                })
            })
        })
        .collect();
    base.sort_unstable();
    Ok(base)
}

/// All roots expressible from a base by repeated reflections in the base.
pub fn span_of_base(rs: &RootSystem, base: &[usize]) -> Span {
    let perms: Vec<Vec<usize>> = base.iter().map(|&g| rs.reflection_perm(g)).collect();
    let mut seen: BTreeSet<usize> = base.iter().copied().collect();
    for &g in base {
        seen.insert(rs.negation[g]);
    }
    let mut queue: VecDeque<usize> = seen.iter().copied().collect();
    while let Some(v) = queue.pop_front() {
        for p in &perms {
            let w = p[v];
            if seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    seen.into_iter().collect()
}

/// Is the symmetric member set closed (`a + b` a root implies `a + b` in
/// the set)?
pub fn is_closed(rs: &RootSystem, members: &Span) -> bool {
    let set: BTreeSet<usize> = members.iter().copied().collect();
    for &a in members {
        for &b in members {
            let sum: Vec<i64> = (0..rs.rank())
                .map(|k| rs.roots[a][k] + rs.roots[b][k])
                .collect();
            if let Some(idx) = rs.root_index(&sum) {
                if !set.contains(&idx) {
                    return false;
                }
            }
        }
    }
    true
}

/// All closed symmetric subsets, plus the exceptional quasi-closed families
/// in bad characteristic (short roots of C2 in characteristic 2 and of G2 in
/// characteristic 3). `char_tag` of 0 means characteristic zero or generic.
pub fn enumerate_quasi_closed(
    rs: &RootSystem,
    char_tag: u32,
) -> Result<Vec<RootSubsystem>, EngineError> {
    let mut out: Vec<RootSubsystem> = Vec::new();

    match rs.label {
        CartanLabel::A(n) if n > 3 => {
            // In type A every closed subsystem is a Levi subsystem and
            // quasi-closed = closed in all characteristics; reuse the
            // Levi-span enumeration instead of the 2^|Φ⁺| sweep.
            for span in levi_spans_type_a(rs) {
                let base = base_of_subsystem(rs, &span)?;
                out.push(RootSubsystem {
                    members: span,
                    base,
                    closed: true,
                    quasi_closed_chars: None,
                });
            }
        }
        _ => {
            if rs.rank() > 3 {
                return Err(EngineError::UnsupportedRank(rs.rank()));
            }
            let positives: Vec<usize> =
                (rs.n_positive..rs.roots.len()).collect();
            for mask in 0..(1u32 << positives.len()) {
                let mut members: Span = Vec::new();
                for (bit, &p) in positives.iter().enumerate() {
                    if mask & (1 << bit) != 0 {
                        members.push(rs.negation[p]);
                        members.push(p);
                    }
                }
                members.sort_unstable();
                if !is_closed(rs, &members) {
                    continue;
                }
                // Keep only genuine subsystems: reflection-stable sets.
                if span_of_base(rs, &base_of_subsystem(rs, &members)?) != members {
                    continue;
                }
                let base = base_of_subsystem(rs, &members)?;
                out.push(RootSubsystem {
                    members,
                    base,
                    closed: true,
                    quasi_closed_chars: None,
                });
            }
        }
    }

    let exceptional = match (rs.label, char_tag) {
        (CartanLabel::C2, 2) | (CartanLabel::G2, 3) => {
            let short: Span = (0..rs.roots.len()).filter(|&i| !rs.is_long(i)).collect();
            Some(short)
        }
        _ => None,
    };
    if let Some(members) = exceptional {
        let base = base_of_subsystem(rs, &members)?;
        out.push(RootSubsystem {
            members,
            base,
            closed: false,
            quasi_closed_chars: Some(vec![char_tag]),
        });
    }

    out.sort_by(|a, b| a.members.cmp(&b.members));
    out.dedup_by(|a, b| a.members == b.members);
    Ok(out)
}

/// Levi subsystems of A_{n}: unions of blocks of consecutive support in the
/// e_i - e_j realization, i.e. graph components over {1..n+1}. Enumerated as
/// spans of set partitions.
fn levi_spans_type_a(rs: &RootSystem) -> Vec<Span> {
    let n = rs.rank() + 1;
    // Roots of A_{n-1} are e_i - e_j; in simple-root coordinates the root
    // sum_{k=i..j-1} alpha_k corresponds to (i, j). Recover that map.
    let pair_of_root: Vec<(usize, usize)> = rs
        .roots
        .iter()
        .map(|v| {
            // With alpha_k = e_k - e_{k+1}, the e_m coefficient of v is
            // v[m] - v[m-1]; a root has exactly one +1 and one -1.
            let coeff = |m: usize| -> i64 {
                let cur = if m < rs.rank() { v[m] } else { 0 };
                let prev = if m > 0 { v[m - 1] } else { 0 };
                cur - prev
            };
            let i = (0..n).find(|&m| coeff(m) == 1).unwrap();
            let j = (0..n).find(|&m| coeff(m) == -1).unwrap();
            (i, j)
        })
        .collect();
    let mut spans: HashSet<Span> = HashSet::new();
    for partition in set_partitions(n) {
        let mut members: Span = Vec::new();
        for (idx, &(a, b)) in pair_of_root.iter().enumerate() {
            if partition[a] == partition[b] {
                members.push(idx);
            }
        }
        members.sort_unstable();
        spans.insert(members);
    }
    let mut out: Vec<Span> = spans.into_iter().collect();
    out.sort();
    out
}

/// All set partitions of {0..n-1}, encoded as block ids in restricted
/// growth form.
fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = vec![0usize; n];
    fn rec(current: &mut Vec<usize>, pos: usize, max_used: usize, out: &mut Vec<Vec<usize>>) {
        let n = current.len();
        if pos == n {
            out.push(current.clone());
            return;
        }
        for b in 0..=max_used + 1 {
            current[pos] = b;
            rec(current, pos + 1, max_used.max(b), out);
        }
    }
    if n == 0 {
        return vec![vec![]];
    }
    current[0] = 0;
    rec(&mut current, 1, 0, &mut out);
    out
}
