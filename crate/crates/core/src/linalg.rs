//! Exact rational and integer linear algebra helpers.
//!
//! Everything downstream depends on these being exact: vanishing tests,
//! lattice membership, and fixed-space computations admit no tolerance.

use num::rational::Ratio;
use num::{One, Zero};

pub type Rat = Ratio<i64>;

pub fn rat(n: i64) -> Rat {
    Ratio::from_integer(n)
}

/// Dot product of an integer (root-coordinate) vector with a rational
/// (apartment-coordinate) vector. With roots written in the simple-root
/// basis and points recorded by their simple-root values, the natural
/// pairing is exactly this sum.
pub fn pair(root: &[i64], point: &[Rat]) -> Rat {
    root.iter()
        .zip(point)
        .map(|(&c, x)| rat(c) * x)
        .fold(Rat::zero(), |a, b| a + b)
}

pub fn mat_vec_i64(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(&a, &b)| a * b).sum())
        .collect()
}

pub fn mat_vec_rat(m: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .map(|(a, b)| *a * *b)
                .fold(Rat::zero(), |x, y| x + y)
        })
        .collect()
}

pub fn mat_mul_i64(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    let mut out = vec![vec![0i64; m]; n];
    for i in 0..n {
        for t in 0..k {
            let av = a[i][t];
            if av == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] += av * b[t][j];
            }
        }
    }
    out
}

pub fn identity_i64(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn add_vec_rat(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| *x + *y).collect()
}

pub fn sub_vec_rat(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| *x - *y).collect()
}

pub fn i64_to_rat_vec(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&c| rat(c)).collect()
}

/// Row-reduce a rational matrix in place; returns the pivot columns.
fn row_reduce(m: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        if let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) {
            m.swap(r, p);
            let inv = m[r][c];
            for j in 0..cols {
                m[r][j] = m[r][j] / inv;
            }
            for i in 0..rows {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c];
                    for j in 0..cols {
                        let s = m[r][j];
                        m[i][j] = m[i][j] - f * s;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
    }
    pivots
}

/// Basis of the solution space of `m · x = 0` over the rationals.
pub fn kernel_basis(m: &[Vec<Rat>], cols: usize) -> Vec<Vec<Rat>> {
    let mut red: Vec<Vec<Rat>> = m.to_vec();
    let pivots = row_reduce(&mut red);
    let mut basis = Vec::new();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    for &f in &free {
        let mut v = vec![Rat::zero(); cols];
        v[f] = Rat::one();
        for (ri, &pc) in pivots.iter().enumerate() {
            v[pc] = -red[ri][f];
        }
        basis.push(v);
    }
    basis
}

/// Does `target` lie in the span of `basis`?
pub fn in_span(basis: &[Vec<Rat>], target: &[Rat]) -> bool {
    if target.iter().all(Rat::is_zero) {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    let n = target.len();
    // Solve basisᵀ · c = target.
    let mut aug: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rat> = basis.iter().map(|b| b[i]).collect();
            row.push(target[i]);
            row
        })
        .collect();
    let pivots = row_reduce(&mut aug);
    // Inconsistent iff some pivot lands in the augmented column.
    !pivots.contains(&basis.len())
}

/// Do two lists of vectors span the same subspace?
pub fn same_span(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> bool {
    a.iter().all(|v| in_span(b, v)) && b.iter().all(|v| in_span(a, v))
}

/// Basis of the intersection of a span with the kernel of a set of
/// functionals given as rows (only functionals with nonzero action kept).
pub fn span_dim(vs: &[Vec<Rat>]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    let mut m = vs.to_vec();
    row_reduce(&mut m).len()
}

/// Basis of the fixed space ker(L - I) of a rational square matrix.
pub fn fixed_space(l: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = l.len();
    let m: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| l[i][j] - if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect();
    kernel_basis(&m, n)
}

/// Solve the square rational system `a · x = b`; `None` if singular or
/// inconsistent.
pub fn solve_square(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    let mut aug: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut row = a[i].clone();
            row.push(b[i]);
            row
        })
        .collect();
    let pivots = row_reduce(&mut aug);
    if pivots.len() != n || pivots.contains(&n) {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for (ri, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[ri][n];
    }
    Some(x)
}

/// Smith-normal-form based solver: does `a · x = b` admit an integer
/// solution, and if so return one. Entries are kept in i128 to avoid
/// overflow during the reduction.
pub fn integer_solve(a: &[Vec<i128>], b: &[i128]) -> Option<Vec<i128>> {
    let rows = a.len();
    if rows == 0 {
        return Some(vec![]);
    }
    let cols = a[0].len();
    let mut m: Vec<Vec<i128>> = a.to_vec();
    let mut rhs: Vec<i128> = b.to_vec();
    // Column operations are accumulated in `q` so x = q · y.
    let mut q: Vec<Vec<i128>> = (0..cols)
        .map(|i| (0..cols).map(|j| i128::from(i == j)).collect())
        .collect();

    let mut r = 0;
    let mut c = 0;
    while r < rows && c < cols {
        // Find a nonzero pivot in the remaining block.
        let mut piv = None;
        'outer: for i in r..rows {
            for j in c..cols {
                if m[i][j] != 0 {
                    piv = Some((i, j));
                    break 'outer;
                }
            }
        }
        let Some((pi, pj)) = piv else { break };
        m.swap(r, pi);
        rhs.swap(r, pi);
        for row in m.iter_mut() {
            row.swap(c, pj);
        }
        q.iter_mut().for_each(|row| row.swap(c, pj));

        // Euclidean elimination below and to the right of the pivot.
        loop {
            let mut clean = true;
            for i in (r + 1)..rows {
                if m[i][c] != 0 {
                    let f = m[i][c] / m[r][c];
                    for j in c..cols {
                        m[i][j] -= f * m[r][j];
                    }
                    rhs[i] -= f * rhs[r];
                    if m[i][c] != 0 {
                        m.swap(r, i);
                        rhs.swap(r, i);
                        clean = false;
                    }
                }
            }
            for j in (c + 1)..cols {
                if m[r][j] != 0 {
                    let f = m[r][j] / m[r][c];
                    for i in r..rows {
                        m[i][j] -= f * m[i][c];
                    }
                    for row in q.iter_mut() {
                        let s = row[c];
                        row[j] -= f * s;
                    }
                    if m[r][j] != 0 {
                        for i in r..rows {
                            m[i].swap(c, j);
                        }
                        q.iter_mut().for_each(|row| row.swap(c, j));
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        r += 1;
        c += 1;
    }

    // m is now upper-left triangular with zero block elsewhere; solve.
    let rank = r;
    let mut y = vec![0i128; cols];
    for i in 0..rank {
        if rhs[i] % m[i][i] != 0 {
            return None;
        }
        y[i] = rhs[i] / m[i][i];
    }
    for i in rank..rows {
        if rhs[i] != 0 {
            return None;
        }
    }
    let x: Vec<i128> = (0..cols)
        .map(|i| (0..cols).map(|j| q[i][j] * y[j]).sum())
        .collect();
    debug_assert!(a
        .iter()
        .zip(b)
        .all(|(row, &bv)| row.iter().zip(&x).map(|(&m, &v)| m * v).sum::<i128>() == bv));
    Some(x)
}

/// Clears denominators of a rational row, returning integer entries.
pub fn clear_denoms(row: &[Rat]) -> Vec<i128> {
    let lcm = row
        .iter()
        .fold(1i64, |acc, r| num::integer::lcm(acc, *r.denom()));
    row.iter()
        .map(|r| i128::from(r.numer() * (lcm / r.denom())))
        .collect()
}
