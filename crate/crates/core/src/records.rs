//! Class records and structural descriptors shared by the classifiers.
//! Human group names (GL₂, U(2), ...) never appear here; fixtures carry
//! them.

use crate::engine::Engine;
use crate::roots::{base_of_subsystem, Span};
use serde::Serialize;

/// Structural tag of a class: the Cartan type of the span with length
/// markings, the order of w∘Fr on the span and on all of Φ, and the
/// characteristic polynomial of w∘Fr on the root lattice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Descriptor {
    pub span_type: String,
    pub twist_order_on_span: usize,
    pub twist_order_on_phi: usize,
    pub char_poly: String,
}

/// Compose w with the Frobenius as a root permutation.
fn w_fr_perm(engine: &Engine, w_idx: usize) -> Vec<usize> {
    (0..engine.rs.roots.len())
        .map(|r| engine.w.apply(w_idx, engine.fr.root_perm[r]))
        .collect()
}

fn perm_order_on(perm: &[usize], domain: &[usize]) -> usize {
    let mut order = 1usize;
    for &start in domain {
        let mut len = 1usize;
        let mut cur = perm[start];
        while cur != start {
            cur = perm[cur];
            len += 1;
        }
        order = num::integer::lcm(order, len);
    }
    order.max(1)
}

/// Cartan type of a span, e.g. `A1(short)xA1(long)`, `A2(long)`, `C2`.
pub fn span_type(engine: &Engine, span: &Span) -> String {
    if span.is_empty() {
        return "-".to_string();
    }
    let rs = &engine.rs;
    let base = base_of_subsystem(rs, span).expect("span symmetric");
    // connected components of the base under non-orthogonality
    let mut comp_id: Vec<Option<usize>> = vec![None; base.len()];
    let mut next = 0usize;
    for i in 0..base.len() {
        if comp_id[i].is_some() {
            continue;
        }
        let mut stack = vec![i];
        comp_id[i] = Some(next);
        while let Some(k) = stack.pop() {
            for j in 0..base.len() {
                if comp_id[j].is_none() && rs.inner(base[k], base[j]) != 0 {
                    comp_id[j] = Some(next);
                    stack.push(j);
                }
            }
        }
        next += 1;
    }
    let mut names: Vec<String> = Vec::new();
    for c in 0..next {
        let comp: Vec<usize> = base
            .iter()
            .enumerate()
            .filter(|(i, _)| comp_id[*i] == Some(c))
            .map(|(_, &g)| g)
            .collect();
        let members = crate::roots::span_of_base(rs, &comp);
        let rank = comp.len();
        let count = members.len();
        let name = match (rank, count) {
            (r, c) if c == r * (r + 1) => format!("A{r}"),
            (2, 8) => "C2".to_string(),
            (2, 12) => "G2".to_string(),
            _ => format!("R{rank}.{count}"),
        };
        let marking = if rs.has_two_lengths() {
            let longs = comp.iter().filter(|&&g| rs.is_long(g)).count();
            if longs == comp.len() {
                "(long)"
            } else if longs == 0 {
                "(short)"
            } else {
                ""
            }
        } else {
            ""
        };
        names.push(format!("{name}{marking}"));
    }
    names.sort();
    names.join("x")
}

/// Characteristic polynomial of an integer matrix, printed as
/// `x^2-x+1`-style text. Exact expansion via Leverrier–Faddeev would be
/// overkill at rank ≤ 8; use the permanent-free cofactor expansion on
/// `xI - M` with polynomial entries.
fn char_poly(m: &[Vec<i64>]) -> Vec<i64> {
    // polynomial arithmetic over i64 coefficient vectors (low degree first)
    fn pmul(a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }
    fn padd(a: &[i64], b: &[i64], sign: i64) -> Vec<i64> {
        let n = a.len().max(b.len());
        (0..n)
            .map(|i| {
                a.get(i).copied().unwrap_or(0) + sign * b.get(i).copied().unwrap_or(0)
            })
            .collect()
    }
    fn det(m: &[Vec<Vec<i64>>]) -> Vec<i64> {
        let n = m.len();
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = vec![0i64];
        for j in 0..n {
            let minor: Vec<Vec<Vec<i64>>> = (1..n)
                .map(|r| {
                    (0..n)
                        .filter(|&c| c != j)
                        .map(|c| m[r][c].clone())
                        .collect()
                })
                .collect();
            let term = pmul(&m[0][j], &det(&minor));
            acc = padd(&acc, &term, if j % 2 == 0 { 1 } else { -1 });
        }
        acc
    }
    let n = m.len();
    let entries: Vec<Vec<Vec<i64>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        vec![-m[i][j], 1] // x - m_ii
                    } else {
                        vec![-m[i][j]]
                    }
                })
                .collect()
        })
        .collect();
    det(&entries)
}

fn poly_string(coeffs: &[i64]) -> String {
    let mut terms: Vec<String> = Vec::new();
    for (deg, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mag = c.abs();
        let body = match deg {
            0 => mag.to_string(),
            1 => {
                if mag == 1 {
                    "x".to_string()
                } else {
                    format!("{mag}x")
                }
            }
            _ => {
                if mag == 1 {
                    format!("x^{deg}")
                } else {
                    format!("{mag}x^{deg}")
                }
            }
        };
        if terms.is_empty() {
            terms.push(if c < 0 { format!("-{body}") } else { body });
        } else {
            terms.push(format!("{}{}", if c < 0 { "-" } else { "+" }, body));
        }
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.concat()
    }
}

pub fn describe(engine: &Engine, span: &Span, w_idx: usize) -> Descriptor {
    let perm = w_fr_perm(engine, w_idx);
    let all: Vec<usize> = (0..engine.rs.roots.len()).collect();
    let twist_order_on_phi = perm_order_on(&perm, &all);
    let twist_order_on_span = if span.is_empty() {
        1
    } else {
        perm_order_on(&perm, span)
    };
    // matrix of w∘Fr on root coordinates
    let el = engine.w.element(&engine.rs, w_idx);
    let rank = engine.rs.rank();
    // columns: image of each simple root under w∘Fr
    let mut m = vec![vec![0i64; rank]; rank];
    for j in 0..rank {
        let mut e = vec![0i64; rank];
        e[j] = 1;
        let r = engine.rs.root_index(&e).unwrap();
        let img = engine.w.apply(w_idx, engine.fr.root_perm[r]);
        for i in 0..rank {
            m[i][j] = engine.rs.roots[img][i];
        }
    }
    let _ = el;
    Descriptor {
        span_type: span_type(engine, span),
        twist_order_on_span,
        twist_order_on_phi,
        char_poly: poly_string(&char_poly(&m)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::preset;
    use crate::engine::Engine;

    #[test]
    fn descriptor_examples_g2() {
        let e = Engine::new(preset("G2").unwrap(), 4).unwrap();
        let alpha = e.rs.root_index(&[1, 0]).unwrap();
        let span = crate::roots::span_of_base(&e.rs, &[alpha]);
        // ({α},1): type A1 short, split twist
        let d = describe(&e, &span, e.w.identity());
        assert_eq!(d.span_type, "A1(short)");
        assert_eq!(d.twist_order_on_phi, 1);
        assert_eq!(d.twist_order_on_span, 1);
        // ({α}, w_β w_α w_β w_α w_β): the reflection fixing α; ambient
        // order 2.
        let w_idx = crate::notation::parse_word(&e.rs, &e.w, "wb wa wb wa wb").unwrap();
        let d = describe(&e, &span, w_idx);
        assert_eq!(d.span_type, "A1(short)");
        assert_eq!(d.twist_order_on_span, 1);
        assert_eq!(d.twist_order_on_phi, 2);
        // (Δ,1)
        let full: Vec<usize> = (0..12).collect();
        let d = describe(&e, &full, e.w.identity());
        assert_eq!(d.span_type, "G2");
        assert_eq!(d.twist_order_on_phi, 1);
    }

    #[test]
    fn char_poly_of_coxeter() {
        let e = Engine::new(preset("Sp4").unwrap(), 4).unwrap();
        let c = crate::notation::parse_word(&e.rs, &e.w, "wa wb").unwrap();
        let d = describe(&e, &vec![], c);
        // rotation by 90°: x^2 + 1
        assert_eq!(d.char_poly, "x^2+1");
        let c2 = e.w.mul(c, c);
        let d = describe(&e, &vec![], c2);
        // -1: (x+1)^2
        assert_eq!(d.char_poly, "x^2+2x+1");
    }
}
