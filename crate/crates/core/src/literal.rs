//! Group and set literals.
//!
//! ```text
//! group   := "Z" N ( "x" "Z" N )*          case-insensitive
//! set     := [ elem ( "," elem )* ] "@" target
//! target  := group | "Z"                    bare "Z" selects integer mode
//! ```
//!
//! Elements are canonical indices in group mode and arbitrary integers in
//! integer mode. Whitespace around tokens is ignored.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::set::GSet;

/// A parsed set literal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetLiteral {
    Group(GSet),
    /// Sorted, deduplicated integers; embedding is deferred to the caller,
    /// which knows how many sums and differences it needs.
    Integers(Vec<i64>),
}

fn parse_err(input: &str, position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        input: input.to_string(),
        position,
        message: message.into(),
    }
}

/// Parses a group literal such as `Z12` or `z2xZ3xZ5`.
pub fn parse_group(input: &str) -> Result<GroupSpec> {
    parse_group_at(input, input, 0)
}

fn parse_group_at(full: &str, text: &str, base: usize) -> Result<GroupSpec> {
    let mut moduli = Vec::new();
    let mut pos = 0;
    for (k, part) in text.split(['x', 'X']).enumerate() {
        let lead = part.len() - part.trim_start().len();
        let p = part.trim();
        let at = base + pos + lead;
        let digits = p
            .strip_prefix(['Z', 'z'])
            .ok_or_else(|| parse_err(full, at, format!("expected 'Z<n>' in factor {}", k + 1)))?;
        if digits.is_empty() {
            return Err(parse_err(full, at + 1, "missing modulus after 'Z'"));
        }
        let m: u64 = digits
            .parse()
            .map_err(|_| parse_err(full, at + 1, format!("invalid modulus {digits:?}")))?;
        if m == 0 {
            return Err(parse_err(full, at + 1, "modulus must be at least 1"));
        }
        moduli.push(m);
        pos += part.len() + 1;
    }
    GroupSpec::new(&moduli).map_err(|e| parse_err(full, base, e.to_string()))
}

/// Parses a full set literal such as `0,1,3@Z8` or `0,2,3,14@Z`.
pub fn parse_set(input: &str) -> Result<SetLiteral> {
    let at = input
        .rfind('@')
        .ok_or_else(|| parse_err(input, input.len(), "missing '@<group>' suffix"))?;
    let target = &input[at + 1..];
    if target.trim().eq_ignore_ascii_case("z") {
        let values = parse_ints(input, &input[..at], 0)?;
        if values.is_empty() {
            return Err(parse_err(input, 0, "integer-mode set is empty"));
        }
        let uniq: BTreeSet<i64> = values.into_iter().map(|(_, v)| v).collect();
        return Ok(SetLiteral::Integers(uniq.into_iter().collect()));
    }
    let group = parse_group_at(input, target, at + 1)?;
    parse_elements(input, &input[..at], 0, &group).map(SetLiteral::Group)
}

/// Parses a group-mode literal. A bare element list such as `0,1` is taken
/// to live in `default_group`; an explicit `@` suffix must name the same group.
pub fn parse_set_in(input: &str, default_group: &GroupSpec) -> Result<GSet> {
    match input.rfind('@') {
        None => parse_elements(input, input, 0, default_group),
        Some(_) => match parse_set(input)? {
            SetLiteral::Group(s) if s.group() == default_group => Ok(s),
            SetLiteral::Group(s) => Err(Error::GroupMismatch {
                left: default_group.to_string(),
                right: s.group().to_string(),
            }),
            SetLiteral::Integers(_) => Err(parse_err(input, input.len(), "expected a group-mode literal")),
        },
    }
}

/// Parses a comma-separated integer list; used for integer-mode companions
/// of an integer-mode set.
pub fn parse_integers(input: &str) -> Result<Vec<i64>> {
    let body = match input.rfind('@') {
        Some(at) if input[at + 1..].trim().eq_ignore_ascii_case("z") => &input[..at],
        Some(at) => return Err(parse_err(input, at + 1, "expected integer mode '@Z'")),
        None => input,
    };
    let uniq: BTreeSet<i64> = parse_ints(input, body, 0)?.into_iter().map(|(_, v)| v).collect();
    Ok(uniq.into_iter().collect())
}

fn parse_ints(full: &str, body: &str, base: usize) -> Result<Vec<(usize, i64)>> {
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut pos = base;
    for tok in body.split(',') {
        let lead = tok.len() - tok.trim_start().len();
        let t = tok.trim();
        if t.is_empty() {
            return Err(parse_err(full, pos + lead, "empty element"));
        }
        let v: i64 = t
            .parse()
            .map_err(|_| parse_err(full, pos + lead, format!("invalid element {t:?}")))?;
        out.push((pos + lead, v));
        pos += tok.len() + 1;
    }
    Ok(out)
}

fn parse_elements(full: &str, body: &str, base: usize, group: &GroupSpec) -> Result<GSet> {
    let mut s = GSet::empty(group);
    for (pos, v) in parse_ints(full, body, base)? {
        let idx = usize::try_from(v)
            .ok()
            .filter(|&i| i < group.order())
            .ok_or_else(|| parse_err(full, pos, format!("element {v} is not an index of {group}")))?;
        s.insert_idx(idx);
    }
    Ok(s)
}

/// Renders integers as an integer-mode literal.
pub fn integer_literal(values: &[i64]) -> String {
    let body: Vec<String> = values.iter().map(i64::to_string).collect();
    format!("{}@Z", body.join(","))
}
