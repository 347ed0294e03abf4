//! Shared helpers for the integration suites: fixture parsing and class
//! lookup by paper label.

use alcove_core::engine::Engine;
use alcove_core::notation::{parse_root, parse_word};
use alcove_core::roots::{span_of_base, Span};
use alcove_core::tori::EllipticClass;
use std::path::PathBuf;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

/// Parse a CSV line with double-quote quoting.
pub fn split_csv(line: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    let mut chars = line.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '"' if quoted && chars.peek() == Some(&'"') => {
                cur.push('"');
                chars.next();
            }
            '"' => quoted = !quoted,
            ',' if !quoted => {
                out.push(std::mem::take(&mut cur));
            }
            _ => cur.push(c),
        }
    }
    out.push(cur);
    out
}

pub fn read_rows(name: &str) -> Vec<Vec<String>> {
    let text = std::fs::read_to_string(fixture_path(name))
        .unwrap_or_else(|e| panic!("fixture {name}: {e}"));
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(split_csv)
        .collect()
}

/// Facet index from a key like `S{0,2}`.
pub fn facet_by_key(engine: &Engine, key: &str) -> usize {
    let inner = key
        .trim()
        .strip_prefix("S{")
        .and_then(|s| s.strip_suffix('}'))
        .unwrap_or_else(|| panic!("bad facet key {key}"));
    let nodes: std::collections::BTreeSet<usize> = if inner.is_empty() {
        Default::default()
    } else {
        inner.split(',').map(|x| x.trim().parse().unwrap()).collect()
    };
    (0..engine.facets.len())
        .find(|&i| engine.facet(i).nodes == nodes)
        .unwrap_or_else(|| panic!("no facet {key}"))
}

/// Parse a θ label like `{a+b,2a+b}` (or `{}`) into a sorted base.
pub fn parse_theta(engine: &Engine, text: &str) -> Vec<usize> {
    let inner = text
        .trim()
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .unwrap_or_else(|| panic!("bad theta {text}"));
    let mut base: Vec<usize> = if inner.is_empty() {
        vec![]
    } else {
        inner
            .split(',')
            .map(|r| parse_root(&engine.rs, r).unwrap())
            .collect()
    };
    base.sort_unstable();
    base
}

/// The span of a θ label, as a member set.
pub fn parse_theta_span(engine: &Engine, text: &str) -> Span {
    span_of_base(&engine.rs, &parse_theta(engine, text))
}

pub fn parse_w(engine: &Engine, text: &str) -> usize {
    parse_word(&engine.rs, &engine.w, text).unwrap()
}

/// Locate the unique class whose members at the given facet contain the
/// labeled pair.
pub fn locate_class(
    engine: &Engine,
    spans: &[Span],
    classes: &[EllipticClass],
    facet_idx: usize,
    span: &Span,
    w: usize,
) -> usize {
    let sid = spans
        .binary_search(span)
        .unwrap_or_else(|_| panic!("labeled span missing from span list"));
    let hits: Vec<usize> = classes
        .iter()
        .enumerate()
        .filter(|(_, c)| {
            c.members_by_facet
                .get(&facet_idx)
                .is_some_and(|m| m.contains(&(sid, w)))
        })
        .map(|(i, _)| i)
        .collect();
    assert_eq!(
        hits.len(),
        1,
        "label (facet {facet_idx}, span {span:?}, w {w}) matched {} classes",
        hits.len()
    );
    hits[0]
}
