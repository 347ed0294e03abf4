//! Deterministic table rows for the CLI and the fixture files.

use crate::engine::Engine;
use crate::error::EngineError;
use crate::finite::FiniteClass;
use crate::records::describe;
use crate::roots::{base_of_subsystem, Span};
use crate::stable::{embedding_count, enumerate_stable, stable_class_of, StableIndex};
use crate::tori::{enumerate_elliptic, maximal_tori, EllipticClass};
use serde::Serialize;

#[derive(Debug, Clone)]
pub struct Table {
    pub header: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.header);
        out.push('\n');
        out.push_str(&self.columns.join("\t"));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join("\t"));
            out.push('\n');
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut wtr = csv_writer();
        push_record(&mut wtr, self.columns.iter().map(|s| s.to_string()));
        for row in &self.rows {
            push_record(&mut wtr, row.iter().cloned());
        }
        format!("{}\n{}", self.header, wtr)
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Doc<'a> {
            header: &'a str,
            columns: &'a [&'static str],
            rows: &'a [Vec<String>],
        }
        serde_json::to_string(&Doc {
            header: &self.header,
            columns: &self.columns,
            rows: &self.rows,
        })
        .expect("serialization cannot fail")
    }
}

/// Minimal RFC-4180 quoting.
fn csv_writer() -> String {
    String::new()
}

fn push_record(buf: &mut String, cells: impl Iterator<Item = String>) {
    let quoted: Vec<String> = cells
        .map(|c| {
            if c.contains(',') || c.contains('"') || c.contains('\n') {
                format!("\"{}\"", c.replace('"', "\"\""))
            } else {
                c
            }
        })
        .collect();
    buf.push_str(&quoted.join(","));
    buf.push_str("\r\n");
}

fn header(engine: &Engine, mode: &str) -> String {
    format!(
        "# alcove v{} mode={} group={} char={} radius={}",
        env!("CARGO_PKG_VERSION"),
        mode,
        engine.spec.name,
        engine.spec.residue_char,
        engine.radius
    )
}

fn facet_key(engine: &Engine, facet_idx: usize) -> String {
    let nodes: Vec<String> = engine
        .facet(facet_idx)
        .nodes
        .iter()
        .map(|n| n.to_string())
        .collect();
    format!("S{{{}}}", nodes.join(","))
}

fn span_base_name(engine: &Engine, span: &Span) -> String {
    let base = base_of_subsystem(&engine.rs, span).expect("span symmetric");
    crate::notation::base_set_name(&engine.rs, &base)
}

pub fn finite_table(engine: &Engine, classes: &[FiniteClass], mode: &str) -> Table {
    let rows = classes
        .iter()
        .map(|c| {
            let base: Vec<usize> = c.rep.0.iter().copied().collect();
            vec![
                crate::notation::base_set_name(&engine.rs, &base),
                engine.word(c.rep.1),
                c.members.len().to_string(),
                c.descriptor.span_type.clone(),
                c.descriptor.twist_order_on_span.to_string(),
                c.descriptor.twist_order_on_phi.to_string(),
                c.descriptor.char_poly.clone(),
            ]
        })
        .collect();
    Table {
        header: header(engine, mode),
        columns: vec![
            "theta",
            "w",
            "orbit_size",
            "type",
            "twist_on_theta",
            "twist_on_phi",
            "char_poly",
        ],
        rows,
    }
}

fn letter(i: usize) -> String {
    // a..z, then aa, ab, ...
    let mut out = String::new();
    let mut n = i;
    loop {
        out.insert(0, (b'a' + (n % 26) as u8) as char);
        if n < 26 {
            break;
        }
        n = n / 26 - 1;
    }
    out
}

/// Rows for elliptic-triple classes; `with_stable`/`with_counts` add the
/// stable letter and the embedding count.
pub fn triples_table(
    engine: &Engine,
    spans: &[Span],
    classes: &[EllipticClass],
    mode: &str,
    stable: Option<&StableIndex>,
    with_counts: bool,
) -> Result<Table, EngineError> {
    let mut columns = vec!["facet", "fr_dim", "theta", "w", "orbit_size", "type"];
    if stable.is_some() {
        columns.push("stable");
    }
    if with_counts {
        columns.push("embeddings");
    }
    let mut rows = Vec::new();
    for c in classes {
        let span = &spans[c.rep.0];
        let mut row = vec![
            facet_key(engine, c.facet),
            engine.facet(c.facet).fr_fixed_dim.to_string(),
            span_base_name(engine, span),
            engine.word(c.rep.1),
            c.orbit_size().to_string(),
            describe(engine, span, c.rep.1).span_type,
        ];
        if let Some(index) = stable {
            let sid = stable_class_of(engine, index, spans, c);
            row.push(letter(sid));
        }
        if with_counts {
            row.push(embedding_count(engine, spans, c)?.count.to_string());
        }
        rows.push(row);
    }
    Ok(Table {
        header: header(engine, mode),
        columns,
        rows,
    })
}

pub fn stable_table(engine: &Engine, index: &StableIndex) -> Table {
    let rows = index
        .classes
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let base: Vec<usize> = c.rep.0.iter().copied().collect();
            vec![
                letter(i),
                crate::notation::base_set_name(&engine.rs, &base),
                engine.word(c.rep.1),
                c.members.len().to_string(),
            ]
        })
        .collect();
    Table {
        header: header(engine, "stable"),
        columns: vec!["id", "theta", "w", "orbit_size"],
        rows,
    }
}

/// Containment edges between generalized classes, as ordered index pairs.
pub fn contains_table(
    engine: &Engine,
    spans: &[Span],
    classes: &[EllipticClass],
) -> Table {
    let mut rows = Vec::new();
    for (i, a) in classes.iter().enumerate() {
        for (j, b) in classes.iter().enumerate() {
            if i != j && crate::genlevi::contains(engine, spans, a, b) {
                rows.push(vec![
                    i.to_string(),
                    j.to_string(),
                    span_base_name(engine, &spans[a.rep.0]),
                    span_base_name(engine, &spans[b.rep.0]),
                ]);
            }
        }
    }
    Table {
        header: header(engine, "contains"),
        columns: vec!["a", "b", "a_theta", "b_theta"],
        rows,
    }
}

/// Convenience: run a full mode end to end.
pub fn run_mode(engine: &Engine, mode: &str, parallel: bool) -> Result<Table, EngineError> {
    match mode {
        "finite" => Ok(finite_table(
            engine,
            &crate::finite::enumerate_ig(engine),
            mode,
        )),
        "finite-gen" => Ok(finite_table(
            engine,
            &crate::finite::enumerate_ig_prime(engine)?,
            mode,
        )),
        "tori" => {
            let classes = enumerate_elliptic(engine, &engine.theta_spans, parallel);
            triples_table(engine, &engine.theta_spans, &classes, mode, None, false)
        }
        "maximal-tori" => {
            let classes = enumerate_elliptic(engine, &engine.theta_spans, parallel);
            let maximal = maximal_tori(engine, &classes, &engine.theta_spans);
            triples_table(engine, &engine.theta_spans, &maximal, mode, None, false)
        }
        "stable" => Ok(stable_table(engine, &enumerate_stable(engine))),
        "embeddings" => {
            let classes = enumerate_elliptic(engine, &engine.theta_spans, parallel);
            let index = enumerate_stable(engine);
            triples_table(
                engine,
                &engine.theta_spans,
                &classes,
                mode,
                Some(&index),
                true,
            )
        }
        "genlevi" => {
            let (spans, classes) = crate::genlevi::enumerate_gen_elliptic(engine, parallel)?;
            triples_table(engine, &spans, &classes, mode, None, false)
        }
        "contains" => {
            let (spans, classes) = crate::genlevi::enumerate_gen_elliptic(engine, parallel)?;
            Ok(contains_table(engine, &spans, &classes))
        }
        other => Err(EngineError::InvalidConfig(format!("unknown mode: {other}"))),
    }
}
