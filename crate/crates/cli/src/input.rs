//! Input grammars.
//!
//! # Group files
//!
//! Blank lines and anything after `#` are ignored. The first remaining line
//! is a header, either `cayley` or `perm`, optionally followed on the same
//! line by the size; otherwise the size is the next line.
//!
//! ```text
//! cayley 2        # n, then n·n entries, row-major, entry (a, b) = a·b
//! 0 1
//! 1 0
//! ```
//!
//! Cayley entries may be spread over lines freely. Elements are numbered
//! `0..n` by their rows.
//!
//! ```text
//! perm 4          # number of points, then one generator per line
//! 1 0 2 3         # image notation: point i goes to the i-th entry
//! 1 2 3 0
//! ```
//!
//! Permutations compose as functions. Elements are numbered in the order
//! the closure discovers them, identity first; `info` lists them.
//!
//! # Subgroup lists
//!
//! Used by `--collection @file` and `--eab @file`: one subgroup per line,
//! given by generators as element indices of `G`. Every listed subgroup
//! must lie in the Sylow subgroup `S` reported by `info`; the collection is
//! the closure of the list under `F`-conjugacy.
//!
//! ```text
//! 1 3
//! 5
//! ```

use normdec_core::fusion::{FusionSystem, SubgroupId};
use normdec_core::group::{Elem, FiniteGroup, Validation, DEFAULT_ORDER_CAP};
use normdec_core::Error;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect()
}

fn parse_u32(line: usize, tok: &str, what: &str) -> Result<u32, ParseError> {
    tok.parse().map_err(|_| err(line, format!("{what} `{tok}` is not a non-negative integer")))
}

pub fn parse_group(text: &str, validation: Validation) -> Result<FiniteGroup, ParseError> {
    let lines = content_lines(text);
    let Some(&(hline, header)) = lines.first() else {
        return Err(err(1, "empty group file; expected a `cayley` or `perm` header"));
    };
    let mut words = header.split_whitespace();
    let kind = words.next().unwrap_or("");
    let mut rest = lines[1..].iter().copied();
    let size_tok = match words.next() {
        Some(t) => (hline, t.to_string()),
        None => {
            let (l, s) = rest.next().ok_or_else(|| err(hline, "missing size after header"))?;
            let mut w = s.split_whitespace();
            let t = w.next().unwrap_or("").to_string();
            if w.next().is_some() {
                return Err(err(l, "expected a single size"));
            }
            (l, t)
        }
    };
    if words.next().is_some() {
        return Err(err(hline, "unexpected tokens after the size"));
    }
    let size = parse_u32(size_tok.0, &size_tok.1, "size")? as usize;
    let body: Vec<(usize, &str)> = rest.collect();
    match kind {
        "cayley" => parse_cayley(size, size_tok.0, &body, validation),
        "perm" => parse_perm(size, size_tok.0, &body),
        other => Err(err(hline, format!("unknown header `{other}`; expected `cayley` or `perm`"))),
    }
}

fn parse_cayley(n: usize, size_line: usize, body: &[(usize, &str)], validation: Validation) -> Result<FiniteGroup, ParseError> {
    if n == 0 {
        return Err(err(size_line, "a group has at least one element"));
    }
    if n > DEFAULT_ORDER_CAP {
        return Err(err(size_line, format!("order {n} exceeds the cap of {DEFAULT_ORDER_CAP}")));
    }
    let mut table = Vec::with_capacity(n * n);
    let mut at = Vec::with_capacity(n * n);
    for &(line, l) in body {
        for tok in l.split_whitespace() {
            let i = table.len();
            if i == n * n {
                return Err(err(line, format!("more than {} table entries", n * n)));
            }
            let v = parse_u32(line, tok, &format!("entry ({}, {})", i / n, i % n))?;
            if v as usize >= n {
                return Err(err(line, format!("entry ({}, {}) = {v} is out of range 0..{n}", i / n, i % n)));
            }
            table.push(v as Elem);
            at.push(line);
        }
    }
    if table.len() < n * n {
        let line = body.last().map_or(size_line, |b| b.0);
        let i = table.len();
        return Err(err(line, format!("table ends before entry ({}, {}); expected {} entries", i / n, i % n, n * n)));
    }
    FiniteGroup::from_cayley_table(n, table, validation).map_err(|e| {
        let line = match &e {
            Error::InvalidCayleyTable { row, col, .. } => at[row * n + col],
            Error::NotAssociative { a, b, .. } => at[a * n + b],
            _ => size_line,
        };
        err(line, e.to_string())
    })
}

fn parse_perm(points: usize, size_line: usize, body: &[(usize, &str)]) -> Result<FiniteGroup, ParseError> {
    let mut gens = Vec::with_capacity(body.len());
    for &(line, l) in body {
        let g: Vec<u32> = l.split_whitespace().map(|t| parse_u32(line, t, "point")).collect::<Result<_, _>>()?;
        if g.len() != points {
            return Err(err(line, format!("permutation has {} entries, expected {points}", g.len())));
        }
        gens.push(g);
    }
    FiniteGroup::from_permutations(points, &gens, DEFAULT_ORDER_CAP).map_err(|e| {
        let line = match &e {
            Error::InvalidPermutation { index, .. } => body[*index].0,
            _ => size_line,
        };
        err(line, e.to_string())
    })
}

/// Parses a subgroup list into ids of subgroups of `S`.
pub fn parse_subgroup_list(text: &str, fusion: &FusionSystem) -> Result<Vec<SubgroupId>, ParseError> {
    let grp = fusion.group();
    let mut out = Vec::new();
    for (line, l) in content_lines(text) {
        let gens: Vec<Elem> = l
            .split_whitespace()
            .map(|t| {
                let g = parse_u32(line, t, "element")?;
                if g as usize >= grp.order() {
                    return Err(err(line, format!("element {g} is out of range 0..{}", grp.order())));
                }
                Ok(g)
            })
            .collect::<Result<_, _>>()?;
        let h = grp.generate(&gens);
        let id = fusion
            .id_of(&h)
            .ok_or_else(|| err(line, format!("the subgroup {h} is not contained in the Sylow subgroup {}", fusion.sylow())))?;
        out.push(id);
    }
    Ok(out)
}
