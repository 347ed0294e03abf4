//! The affine apartment: extended diagram, fundamental alcove, facets and
//! their reductive-quotient Weyl groups, Frobenius actions, facet
//! equivalence, and affine-span stabilizers.
//!
//! Points of the apartment are recorded by the values of the simple roots,
//! so a root vector pairs with a point by a plain dot product and all
//! vanishing tests stay in exact rational arithmetic. Translations of the
//! affine Weyl group live in the coroot lattice (the catalog groups are
//! simply connected).

use crate::error::EngineError;
use crate::linalg::{
    self, clear_denoms, fixed_space, in_span, i64_to_rat_vec, kernel_basis, mat_vec_rat, pair,
    rat, solve_square, span_dim, sub_vec_rat, Rat,
};
use crate::roots::{RootSystem, Span};
use crate::weyl::WeylGroup;
use num::{One, Zero};
use std::collections::BTreeSet;

/// An affine root `gradient + level`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AffineRoot {
    pub gradient: usize,
    pub level: i64,
}

/// Extended-diagram and alcove data for an irreducible system.
#[derive(Debug, Clone)]
pub struct AffineData {
    /// Gradient root index and level of each affine simple root; node 0 is
    /// the affine node `1 - (highest root)`.
    pub node_roots: Vec<AffineRoot>,
    /// Vertex opposite wall i of the fundamental alcove, in apartment
    /// coordinates; vertex 0 is the origin.
    pub vertices: Vec<Vec<Rat>>,
    /// Marks of the highest root.
    pub marks: Vec<i64>,
    /// Coroot vectors in apartment coordinates (rows).
    pub coroots: Vec<Vec<i64>>,
}

pub fn build_affine(rs: &RootSystem) -> Result<AffineData, EngineError> {
    if !is_irreducible(rs) {
        return Err(EngineError::Precondition("reducible root system".into()));
    }
    let rank = rs.rank();
    let lowest = rs.negation[rs.highest];
    let mut node_roots = vec![AffineRoot {
        gradient: lowest,
        level: 1,
    }];
    for i in 0..rank {
        let mut e = vec![0i64; rank];
        e[i] = 1;
        node_roots.push(AffineRoot {
            gradient: rs.root_index(&e).unwrap(),
            level: 0,
        });
    }
    let marks = rs.marks();
    let mut vertices = vec![vec![Rat::zero(); rank]];
    for i in 0..rank {
        let mut v = vec![Rat::zero(); rank];
        v[i] = Rat::one() / rat(marks[i]);
        vertices.push(v);
    }
    // Coroot alpha_j^vee has apartment coordinates <alpha_i, alpha_j^vee>,
    // i.e. column j of the Cartan matrix convention used here is row j
    // transposed; marshal explicitly.
    let coroots: Vec<Vec<i64>> = (0..rank)
        .map(|j| (0..rank).map(|i| rs.cartan[j][i]).collect())
        .collect();
    Ok(AffineData {
        node_roots,
        vertices,
        marks,
        coroots,
    })
}

fn is_irreducible(rs: &RootSystem) -> bool {
    let rank = rs.rank();
    let mut seen = vec![false; rank];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..rank {
            if !seen[j] && rs.cartan[i][j] != 0 {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|x| x)
}

/// The Frobenius as an automorphism of the extended diagram together with
/// its affine action on the apartment and its permutation of the roots.
#[derive(Debug, Clone)]
pub struct FrobeniusAction {
    pub node_perm: Vec<usize>,
    /// Linear part on apartment coordinates.
    pub linear: Vec<Vec<Rat>>,
    /// Affine displacement: the action is `x ↦ linear·x + shift`.
    pub shift: Vec<Rat>,
    /// Induced permutation of the (finite) roots.
    pub root_perm: Vec<usize>,
    pub order: usize,
}

impl FrobeniusAction {
    /// Construct from a node permutation by solving for the unique affine
    /// map carrying each alcove vertex to its image.
    pub fn from_node_perm(
        rs: &RootSystem,
        affine: &AffineData,
        node_perm: Vec<usize>,
    ) -> Result<Self, EngineError> {
        let rank = rs.rank();
        if node_perm.len() != rank + 1 {
            return Err(EngineError::IncompatibleFrobenius(
                "node permutation has wrong length".into(),
            ));
        }
        let mut check: Vec<usize> = node_perm.clone();
        check.sort_unstable();
        if check != (0..=rank).collect::<Vec<_>>() {
            return Err(EngineError::IncompatibleFrobenius(
                "not a permutation of the extended diagram".into(),
            ));
        }
        let shift = affine.vertices[node_perm[0]].clone();
        // linear · v_i = image_i - shift for the basis v_1..v_rank.
        // Solve column by column: linear = M · V⁻¹ where V has columns v_i.
        let v_cols: Vec<Vec<Rat>> = (1..=rank).map(|i| affine.vertices[i].clone()).collect();
        let m_cols: Vec<Vec<Rat>> = (1..=rank)
            .map(|i| sub_vec_rat(&affine.vertices[node_perm[i]], &shift))
            .collect();
        // rows of V as a system: for each output coordinate r, solve
        // Vᵀ · lrow = m-row entries.
        let vt: Vec<Vec<Rat>> = (0..rank)
            .map(|r| (0..rank).map(|c| v_cols[c][r]).collect())
            .collect();
        // linear[r][c]: row r of linear satisfies for each basis vector k:
        // sum_c linear[r][c] * v_k[c] = m_k[r]
        let mut linear = vec![vec![Rat::zero(); rank]; rank];
        for r in 0..rank {
            let rhs: Vec<Rat> = (0..rank).map(|k| m_cols[k][r]).collect();
            // system: for each k: sum_c v_k[c] * x_c = rhs[k]
            let a: Vec<Vec<Rat>> = (0..rank).map(|k| v_cols[k].clone()).collect();
            let row = solve_square(&a, &rhs).ok_or_else(|| {
                EngineError::IncompatibleFrobenius("vertex images do not span".into())
            })?;
            linear[r] = row;
        }
        let _ = vt;

        // Induced root action: gradients transform by the inverse
        // transpose, which here is pairing-preservation: find, for each
        // root, the root pairing with transformed points identically.
        let inv_linear = invert_rat(&linear).ok_or_else(|| {
            EngineError::IncompatibleFrobenius("linear part not invertible".into())
        })?;
        let mut root_perm = Vec::with_capacity(rs.roots.len());
        for r in 0..rs.roots.len() {
            // new gradient g satisfies <g, x> = <r, L⁻¹ x>; in coordinates
            // g = (L⁻¹)ᵀ r.
            let coords: Vec<Rat> = {
                let rv = i64_to_rat_vec(&rs.roots[r]);
                (0..rank)
                    .map(|c| {
                        (0..rank)
                            .map(|k| inv_linear[k][c] * rv[k])
                            .fold(Rat::zero(), |a, b| a + b)
                    })
                    .collect()
            };
            let int_coords: Option<Vec<i64>> = coords
                .iter()
                .map(|x| if x.is_integer() { Some(x.to_integer()) } else { None })
                .collect();
            let idx = int_coords
                .and_then(|c| rs.root_index(&c))
                .ok_or_else(|| {
                    EngineError::IncompatibleFrobenius("linear part does not permute roots".into())
                })?;
            root_perm.push(idx);
        }

        // Verify the wall permutation matches the node permutation.
        let me = FrobeniusAction {
            node_perm: node_perm.clone(),
            linear,
            shift,
            root_perm,
            order: 0,
        };
        for (i, ar) in affine.node_roots.iter().enumerate() {
            let img = me.apply_affine_root(rs, *ar);
            let expected = affine.node_roots[node_perm[i]];
            if img != expected {
                return Err(EngineError::IncompatibleFrobenius(format!(
                    "wall {i} maps to {img:?}, expected {expected:?}"
                )));
            }
        }
        // Finite order.
        let mut order = 1;
        let mut p = me.root_perm.clone();
        let id: Vec<usize> = (0..rs.roots.len()).collect();
        let mut shift_acc = me.shift.clone();
        while p != id || shift_acc.iter().any(|x| !x.is_zero()) {
            shift_acc = linalg::add_vec_rat(&mat_vec_rat(&me.linear, &shift_acc), &me.shift);
            p = p.iter().map(|&i| me.root_perm[i]).collect();
            order += 1;
            if order > 64 {
                return Err(EngineError::IncompatibleFrobenius(
                    "node permutation does not have finite affine order".into(),
                ));
            }
        }
        Ok(FrobeniusAction { order, ..me })
    }

    pub fn apply_point(&self, x: &[Rat]) -> Vec<Rat> {
        linalg::add_vec_rat(&mat_vec_rat(&self.linear, x), &self.shift)
    }

    /// Action on affine roots: `ψ ↦ ψ ∘ Fr⁻¹`.
    pub fn apply_affine_root(&self, rs: &RootSystem, ar: AffineRoot) -> AffineRoot {
        let g = self.root_perm[ar.gradient];
        // level' = level - <g, shift>
        let drop = pair(&rs.roots[g], &self.shift);
        debug_assert!(drop.is_integer());
        AffineRoot {
            gradient: g,
            level: ar.level - drop.to_integer(),
        }
    }

    pub fn apply_span(&self, span: &Span) -> Span {
        let mut out: Span = span.iter().map(|&r| self.root_perm[r]).collect();
        out.sort_unstable();
        out
    }

    /// Conjugation action on the Weyl group.
    pub fn on_weyl(&self, w: &WeylGroup, idx: usize) -> usize {
        let p = &w.perms[idx];
        let mut inv_fr = vec![0usize; self.root_perm.len()];
        for (i, &v) in self.root_perm.iter().enumerate() {
            inv_fr[v] = i;
        }
        let composed: Vec<u16> = (0..p.len())
            .map(|i| self.root_perm[p[inv_fr[i]] as usize] as u16)
            .collect();
        w.element_by_perm(&composed).expect("Fr normalizes W")
    }

    pub fn is_split(&self) -> bool {
        self.order == 1
    }
}

fn invert_rat(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[j] = Rat::one();
        cols.push(solve_square(m, &e)?);
    }
    // cols[j] is column j of the inverse.
    Some((0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect())
}

/// A face of the closed fundamental alcove, restricted to its Frobenius
/// fixed locus.
#[derive(Debug, Clone)]
pub struct Facet {
    /// Nodes of the extended diagram whose walls contain the face.
    pub nodes: BTreeSet<usize>,
    /// Barycenter of the face (it is Frobenius-fixed).
    pub barycenter: Vec<Rat>,
    /// Dimension of the face of the alcove.
    pub dim: usize,
    /// Dimension of the Frobenius-fixed part.
    pub fr_fixed_dim: usize,
    /// Directions of the face.
    pub dirs: Vec<Vec<Rat>>,
    /// Directions of the Frobenius-fixed part.
    pub fr_dirs: Vec<Vec<Rat>>,
    /// Affine roots vanishing on the fixed part.
    pub psi_f: Vec<AffineRoot>,
    /// Their gradients, sorted and symmetric.
    pub phi_f: Span,
    /// W_F as a sorted set of Weyl element indices.
    pub w_f: Vec<usize>,
}

/// All faces of the closed fundamental alcove with Frobenius-stable wall
/// set; every such face has a nonempty fixed locus (its barycenter).
pub fn enumerate_facets(
    rs: &RootSystem,
    w: &WeylGroup,
    affine: &AffineData,
    fr: &FrobeniusAction,
) -> Vec<Facet> {
    let rank = rs.rank();
    let n_nodes = rank + 1;
    let mut facets = Vec::new();
    for mask in 0..(1u32 << n_nodes) {
        let nodes: BTreeSet<usize> = (0..n_nodes).filter(|&i| mask & (1 << i) != 0).collect();
        if nodes.len() == n_nodes {
            continue; // not a face
        }
        let stable = nodes
            .iter()
            .all(|&i| nodes.contains(&fr.node_perm[i]));
        if !stable {
            continue;
        }
        facets.push(build_facet(rs, w, affine, fr, nodes));
    }
    // vertices first, then by wall set
    facets.sort_by(|a, b| {
        (a.fr_fixed_dim, a.nodes.clone()).cmp(&(b.fr_fixed_dim, b.nodes.clone()))
    });
    facets
}

fn build_facet(
    rs: &RootSystem,
    w: &WeylGroup,
    affine: &AffineData,
    fr: &FrobeniusAction,
    nodes: BTreeSet<usize>,
) -> Facet {
    let rank = rs.rank();
    let verts: Vec<&Vec<Rat>> = (0..=rank)
        .filter(|i| !nodes.contains(i))
        .map(|i| &affine.vertices[i])
        .collect();
    let k = rat(verts.len() as i64);
    let mut barycenter = vec![Rat::zero(); rank];
    for v in &verts {
        for (i, x) in v.iter().enumerate() {
            barycenter[i] = barycenter[i] + *x / k;
        }
    }
    let dirs: Vec<Vec<Rat>> = verts
        .iter()
        .skip(1)
        .map(|v| sub_vec_rat(v, verts[0]))
        .collect();
    let dim = span_dim(&dirs);

    // Fixed directions: u in span(dirs) with linear·u = u.
    let fixed = fixed_space(&fr.linear);
    let fr_dirs = intersect_spans(&dirs, &fixed);
    let fr_fixed_dim = fr_dirs.len();

    // Affine roots vanishing on the fixed part: gradient kills all fixed
    // directions and the level matches the barycenter value.
    let mut psi_f = Vec::new();
    let mut phi_set: BTreeSet<usize> = BTreeSet::new();
    for g in 0..rs.roots.len() {
        let val = pair(&rs.roots[g], &barycenter);
        if !val.is_integer() {
            continue;
        }
        let on_dirs = fr_dirs
            .iter()
            .all(|u| pair_rat(&rs.roots[g], u).is_zero());
        if on_dirs {
            psi_f.push(AffineRoot {
                gradient: g,
                level: -val.to_integer(),
            });
            phi_set.insert(g);
        }
    }
    let phi_f: Span = phi_set.into_iter().collect();
    let w_f = if phi_f.len() == rs.roots.len() {
        (0..w.len()).collect()
    } else {
        crate::weyl::reflection_subgroup(rs, w, &phi_f)
    };

    Facet {
        nodes,
        barycenter,
        dim,
        fr_fixed_dim,
        dirs,
        fr_dirs,
        psi_f,
        phi_f,
        w_f,
    }
}

fn pair_rat(root: &[i64], v: &[Rat]) -> Rat {
    root.iter()
        .zip(v)
        .map(|(&c, x)| rat(c) * *x)
        .fold(Rat::zero(), |a, b| a + b)
}

/// Basis of span(a) ∩ span(b).
fn intersect_spans(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let n = a[0].len();
    // Solve sum x_i a_i - sum y_j b_j = 0.
    let cols = a.len() + b.len();
    let m: Vec<Vec<Rat>> = (0..n)
        .map(|r| {
            let mut row: Vec<Rat> = a.iter().map(|v| v[r]).collect();
            row.extend(b.iter().map(|v| -v[r]));
            row
        })
        .collect();
    let null = kernel_basis(&m, cols);
    let mut vecs: Vec<Vec<Rat>> = null
        .iter()
        .map(|sol| {
            let mut v = vec![Rat::zero(); n];
            for (i, av) in a.iter().enumerate() {
                for r in 0..n {
                    v[r] = v[r] + sol[i] * av[r];
                }
            }
            v
        })
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect();
    // Reduce to an independent set.
    let mut basis: Vec<Vec<Rat>> = Vec::new();
    for v in vecs.drain(..) {
        if !in_span(&basis, &v) {
            basis.push(v);
        }
    }
    basis
}

/// An element of the affine Weyl group `W ⋉ Q∨`, acting as
/// `x ↦ w(x) + translation`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineElement {
    pub linear: usize,
    /// Translation in apartment coordinates (values of simple roots).
    pub translation: Vec<i64>,
}

/// Apply a linear Weyl element to a rational point (apartment side).
pub fn weyl_apply_point(rs: &RootSystem, w: &WeylGroup, idx: usize, x: &[Rat]) -> Vec<Rat> {
    let el = w.element(rs, idx);
    let m: Vec<Vec<Rat>> = el
        .ap_mat
        .iter()
        .map(|row| row.iter().map(|&c| rat(c)).collect())
        .collect();
    mat_vec_rat(&m, x)
}

/// Is an integer apartment vector in the coroot lattice?
pub fn in_coroot_lattice(affine: &AffineData, t: &[Rat]) -> bool {
    coroot_coordinates(affine, t).is_some()
}

/// Express an apartment vector in coroot coordinates if possible (integer
/// coefficients).
pub fn coroot_coordinates(affine: &AffineData, t: &[Rat]) -> Option<Vec<i64>> {
    let n = t.len();
    let a: Vec<Vec<Rat>> = (0..n)
        .map(|r| (0..n).map(|c| rat(affine.coroots[c][r])).collect())
        .collect();
    let x = solve_square(&a, t)?;
    if x.iter().all(Rat::is_integer) {
        Some(x.iter().map(Rat::to_integer).collect())
    } else {
        None
    }
}

/// Constraint describing the translations valid for carrying one affine
/// span to another with a fixed linear part.
struct TranslationProblem<'a> {
    affine: &'a AffineData,
    /// t must satisfy `t - offset ∈ span(dirs)`.
    offset: Vec<Rat>,
    dirs: &'a [Vec<Rat>],
    /// Additional exact linear constraints rows·t = rhs (Fr-fixedness).
    rows: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
}

impl<'a> TranslationProblem<'a> {
    fn admits_solution_within(&self, radius: i64) -> bool {
        let n = self.offset.len();
        let dim = self.dirs.len();
        if dim == 0 {
            // t is forced to equal offset exactly.
            if let Some(coords) = coroot_coordinates(self.affine, &self.offset) {
                if coords.iter().any(|c| c.abs() > radius) {
                    return false;
                }
                return self.check_extra(&self.offset);
            }
            return false;
        }
        if dim == n && self.rows.is_empty() {
            return true; // t = 0 works
        }
        if n <= 3 {
            // Bounded box enumeration in coroot coordinates.
            let mut coords = vec![-radius; n];
            loop {
                let t: Vec<Rat> = (0..n)
                    .map(|r| {
                        (0..n)
                            .map(|c| rat(coords[c] * self.affine.coroots[c][r]))
                            .fold(Rat::zero(), |a, b| a + b)
                    })
                    .collect();
                let diff = sub_vec_rat(&t, &self.offset);
                if in_span(self.dirs, &diff) && self.check_extra(&t) {
                    return true;
                }
                // advance odometer
                let mut i = 0;
                loop {
                    if i == n {
                        return false;
                    }
                    coords[i] += 1;
                    if coords[i] <= radius {
                        break;
                    }
                    coords[i] = -radius;
                    i += 1;
                }
            }
        }
        // Exact integer solve for higher rank: t = C∨·z with
        // P·t = P·offset for a projection P annihilating span(dirs), plus
        // the extra rows. Assemble rational rows then clear denominators.
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        let mut rhs: Vec<Rat> = Vec::new();
        // Functionals annihilating dirs: kernel of dirsᵀ as row space.
        let dir_matrix: Vec<Vec<Rat>> = self.dirs.to_vec();
        let ann = annihilator(&dir_matrix, n);
        for f in ann {
            rhs.push(dot(&f, &self.offset));
            rows.push(f);
        }
        for (r, v) in self.rows.iter().zip(&self.rhs) {
            rows.push(r.clone());
            rhs.push(*v);
        }
        if rows.is_empty() {
            return true;
        }
        // Unknowns are coroot coefficients z.
        let mut int_rows: Vec<Vec<i128>> = Vec::new();
        let mut int_rhs: Vec<i128> = Vec::new();
        for (row, b) in rows.iter().zip(&rhs) {
            let mut full = row.clone();
            full.push(*b);
            let cleared = clear_denoms(&full);
            let (val, coef) = cleared.split_last().unwrap();
            // coefficient on z_c: sum_r row[r]*coroot_c[r]
            let z_row: Vec<i128> = (0..n)
                .map(|c| {
                    (0..n)
                        .map(|r| coef[r] * i128::from(self.affine.coroots[c][r]))
                        .sum()
                })
                .collect();
            int_rows.push(z_row);
            int_rhs.push(*val);
        }
        linalg::integer_solve(&int_rows, &int_rhs).is_some()
    }

    fn check_extra(&self, t: &[Rat]) -> bool {
        self.rows
            .iter()
            .zip(&self.rhs)
            .all(|(row, b)| dot(row, t) == *b)
    }
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter()
        .zip(b)
        .map(|(x, y)| *x * *y)
        .fold(Rat::zero(), |s, v| s + v)
}

/// Row space of functionals vanishing on the span of `vs`.
fn annihilator(vs: &[Vec<Rat>], n: usize) -> Vec<Vec<Rat>> {
    if vs.is_empty() {
        // all coordinate functionals
        return (0..n)
            .map(|i| {
                let mut e = vec![Rat::zero(); n];
                e[i] = Rat::one();
                e
            })
            .collect();
    }
    let m: Vec<Vec<Rat>> = vs.to_vec();
    kernel_basis(&m, n)
}

/// Linear parts of affine Weyl elements that stabilize the Fr-fixed affine
/// span of a facet: `W(F)`. Translation witnesses are searched within the
/// radius box for rank ≤ 3 and found exactly above that.
pub fn span_stabilizer_linear_parts(
    rs: &RootSystem,
    w: &WeylGroup,
    affine: &AffineData,
    facet: &Facet,
    radius: i64,
) -> Vec<usize> {
    let mut out = Vec::new();
    for cand in 0..w.len() {
        // the walls through the span must be permuted among themselves
        if w.apply_span(cand, &facet.phi_f) != facet.phi_f {
            continue;
        }
        let el = w.element(rs, cand);
        let m: Vec<Vec<Rat>> = el
            .ap_mat
            .iter()
            .map(|row| row.iter().map(|&c| rat(c)).collect())
            .collect();
        // direction space must be preserved
        let image_dirs: Vec<Vec<Rat>> = facet.fr_dirs.iter().map(|u| mat_vec_rat(&m, u)).collect();
        if !linalg::same_span(&image_dirs, &facet.fr_dirs) {
            continue;
        }
        let wb = mat_vec_rat(&m, &facet.barycenter);
        let offset = sub_vec_rat(&facet.barycenter, &wb);
        let problem = TranslationProblem {
            affine,
            offset,
            dirs: &facet.fr_dirs,
            rows: vec![],
            rhs: vec![],
        };
        if problem.admits_solution_within(radius) {
            out.push(cand);
        }
    }
    // sanity: W(F) is a subgroup
    debug_assert!(out.binary_search(&w.identity()).is_ok());
    debug_assert!({
        let set: BTreeSet<usize> = out.iter().copied().collect();
        out.iter()
            .all(|&a| out.iter().all(|&b| set.contains(&w.mul(a, b))))
    });
    out
}

/// Can some Frobenius-fixed affine Weyl element carry the fixed span of
/// facet `a` onto the fixed span of facet `b`? Returns the linear part of
/// one witness.
pub fn facet_span_witness(
    rs: &RootSystem,
    w: &WeylGroup,
    affine: &AffineData,
    fr: &FrobeniusAction,
    a: &Facet,
    b: &Facet,
    radius: i64,
) -> Option<usize> {
    if a.fr_fixed_dim != b.fr_fixed_dim {
        return None;
    }
    for cand in 0..w.len() {
        // Fr-fixed linear part.
        if fr.on_weyl(w, cand) != cand {
            continue;
        }
        // gradients of walls through the spans must correspond
        if w.apply_span(cand, &a.phi_f) != b.phi_f {
            continue;
        }
        let el = w.element(rs, cand);
        let m: Vec<Vec<Rat>> = el
            .ap_mat
            .iter()
            .map(|row| row.iter().map(|&c| rat(c)).collect())
            .collect();
        let image_dirs: Vec<Vec<Rat>> = a.fr_dirs.iter().map(|u| mat_vec_rat(&m, u)).collect();
        if !linalg::same_span(&image_dirs, &b.fr_dirs) {
            continue;
        }
        let wb = mat_vec_rat(&m, &a.barycenter);
        let offset = sub_vec_rat(&b.barycenter, &wb);
        // Fr-fixedness of (w,t): (L - 1) t = (w - 1) shift.
        let n = rs.rank();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        let wd = mat_vec_rat(&m, &fr.shift);
        let target = sub_vec_rat(&wd, &fr.shift);
        for r in 0..n {
            let row: Vec<Rat> = (0..n)
                .map(|c| fr.linear[r][c] - if r == c { Rat::one() } else { Rat::zero() })
                .collect();
            if row.iter().any(|x| !x.is_zero()) || !target[r].is_zero() {
                rows.push(row);
                rhs.push(target[r]);
            }
        }
        let problem = TranslationProblem {
            affine,
            offset,
            dirs: &b.fr_dirs,
            rows,
            rhs,
        };
        if problem.admits_solution_within(radius) {
            return Some(cand);
        }
    }
    None
}

/// Elements of W_F that lie in `W_H` for some bigger facet `H ⊋ F` with
/// nonempty Frobenius-fixed locus: exactly those fixing a Frobenius-fixed
/// direction that leaves the span of F. A pair is elliptic exactly when no
/// equivalent Weyl part lies in this set.
pub fn boundary_parabolic_elements(
    rs: &RootSystem,
    w: &WeylGroup,
    fr: &FrobeniusAction,
    facet: &Facet,
) -> Vec<usize> {
    let fixed = fixed_space(&fr.linear);
    facet
        .w_f
        .iter()
        .copied()
        .filter(|&x| {
            let el = w.element(rs, x);
            let m: Vec<Vec<Rat>> = el
                .ap_mat
                .iter()
                .map(|row| row.iter().map(|&c| rat(c)).collect())
                .collect();
            let fix_w = fixed_space(&m);
            let inter = intersect_spans(&fix_w, &fixed);
            // Moving from the barycenter along such a direction lands in a
            // facet H with F in its closure and W_H ∋ x.
            inter.iter().any(|u| !in_span(&facet.fr_dirs, u))
        })
        .collect()
}
