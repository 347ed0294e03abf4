//! Text forms for roots, Weyl words, and pair labels — used by the CLI
//! tables and by fixture files.

use crate::error::EngineError;
use crate::roots::RootSystem;
use crate::weyl::WeylGroup;

fn letters(rank: usize) -> Vec<String> {
    if rank <= 2 {
        ["a", "b"].iter().take(rank).map(|s| s.to_string()).collect()
    } else {
        (1..=rank).map(|i| format!("a{i}")).collect()
    }
}

/// `2a+b`, `-a-b`, `a1+a2`, ... Zero coordinates are omitted.
pub fn root_name(rs: &RootSystem, root: usize) -> String {
    let names = letters(rs.rank());
    let mut out = String::new();
    for (i, &c) in rs.roots[root].iter().enumerate() {
        if c == 0 {
            continue;
        }
        if c > 0 && !out.is_empty() {
            out.push('+');
        }
        if c == -1 {
            out.push('-');
        } else if c != 1 {
            out.push_str(&c.to_string());
        }
        out.push_str(&names[i]);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Parse a root expressed as a combination of simple-root letters.
pub fn parse_root(rs: &RootSystem, text: &str) -> Result<usize, EngineError> {
    let names = letters(rs.rank());
    let mut coords = vec![0i64; rs.rank()];
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut rest = cleaned.as_str();
    while !rest.is_empty() {
        let sign = if let Some(r) = rest.strip_prefix('-') {
            rest = r;
            -1
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r;
            1
        } else {
            1
        };
        let digits_end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        let coeff: i64 = if digits_end == 0 {
            1
        } else {
            rest[..digits_end]
                .parse()
                .map_err(|_| EngineError::InvalidConfig(format!("bad root: {text}")))?
        };
        rest = &rest[digits_end..];
        let name = names
            .iter()
            .enumerate()
            .filter(|(_, n)| rest.starts_with(n.as_str()))
            .max_by_key(|(_, n)| n.len());
        let Some((idx, name)) = name else {
            return Err(EngineError::InvalidConfig(format!("bad root: {text}")));
        };
        coords[idx] += sign * coeff;
        rest = &rest[name.len()..];
    }
    rs.root_index(&coords)
        .ok_or_else(|| EngineError::InvalidConfig(format!("not a root: {text}")))
}

/// Parse a word like `wa wb wa` (or `1`) with the generator names used by
/// `Engine::gen_names`.
pub fn parse_word(
    rs: &RootSystem,
    w: &WeylGroup,
    text: &str,
) -> Result<usize, EngineError> {
    let trimmed = text.trim();
    if trimmed == "1" || trimmed.is_empty() {
        return Ok(w.identity());
    }
    let names = {
        let rank = rs.rank();
        if rank <= 2 {
            ["wa", "wb"].iter().take(rank).map(|s| s.to_string()).collect::<Vec<_>>()
        } else {
            (1..=rank).map(|i| format!("w{i}")).collect()
        }
    };
    let mut gens = Vec::new();
    for token in trimmed.split_whitespace() {
        let idx = names
            .iter()
            .position(|n| n == token)
            .ok_or_else(|| EngineError::InvalidConfig(format!("bad word token: {token}")))?;
        gens.push(idx);
    }
    Ok(w.eval_word(&gens))
}

/// `{a, a+b}` sorted by root index; empty set prints as `{}`.
pub fn base_set_name(rs: &RootSystem, base: &[usize]) -> String {
    let mut items: Vec<usize> = base.to_vec();
    items.sort_unstable();
    let names: Vec<String> = items.iter().map(|&r| root_name(rs, r)).collect();
    format!("{{{}}}", names.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::{build_root_system, CartanLabel};
    use crate::weyl::enumerate_weyl;

    #[test]
    fn root_round_trip() {
        let rs = build_root_system(CartanLabel::G2);
        for r in 0..rs.roots.len() {
            let name = root_name(&rs, r);
            assert_eq!(parse_root(&rs, &name).unwrap(), r, "{name}");
        }
        assert_eq!(
            parse_root(&rs, "2b+3a").unwrap(),
            rs.root_index(&[3, 2]).unwrap()
        );
        let a3 = build_root_system(CartanLabel::A(3));
        for r in 0..a3.roots.len() {
            let name = root_name(&a3, r);
            assert_eq!(parse_root(&a3, &name).unwrap(), r, "{name}");
        }
    }

    #[test]
    fn word_round_trip() {
        let rs = build_root_system(CartanLabel::C2);
        let w = enumerate_weyl(&rs);
        let names = vec!["wa".to_string(), "wb".to_string()];
        for idx in 0..w.len() {
            let text = w.word_string(idx, &names);
            assert_eq!(parse_word(&rs, &w, &text).unwrap(), idx, "{text}");
        }
        assert_eq!(parse_word(&rs, &w, "1").unwrap(), w.identity());
    }
}
