//! File formats: the text grammar for single patterns, the JSON layout for
//! families, and the content hash that keys the result cache.
//!
//! Text grammar: `dims: <int>+\nones:\n(<int>{d}\n)*`, whitespace-separated
//! 1-based integers. Serialization is canonical (ones in lexicographic
//! order), so parse then serialize normalizes any valid input.

use anyhow::{bail, Context};
use mpat_core::{Family, Tensor01};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fmt;
use std::path::Path;

/// Parse failure with a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, col: usize, msg: impl Into<String>) -> ParseError {
    ParseError { line, col, msg: msg.into() }
}

// Whitespace-separated integers with the 1-based column each starts at.
// col_base is the column of the first byte of `text` within its line.
fn int_tokens(
    text: &str,
    line: usize,
    col_base: usize,
) -> Result<Vec<(usize, usize)>, ParseError> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    let bytes = text.as_bytes();
    for i in 0..=bytes.len() {
        let boundary = i == bytes.len() || bytes[i].is_ascii_whitespace();
        match (start, boundary) {
            (None, false) => start = Some(i),
            (Some(s), true) => {
                let col = col_base + s;
                let tok = &text[s..i];
                let v = tok
                    .parse::<usize>()
                    .map_err(|_| err(line, col, format!("expected an integer, found `{tok}`")))?;
                out.push((v, col));
                start = None;
            }
            _ => {}
        }
    }
    Ok(out)
}

/// Parse the text pattern format. Blank lines after `ones:` are ignored.
pub fn parse_pattern(text: &str) -> Result<Tensor01, ParseError> {
    let lines: Vec<&str> = text.lines().map(|l| l.strip_suffix('\r').unwrap_or(l)).collect();
    let header = *lines.first().ok_or_else(|| err(1, 1, "missing `dims:` header"))?;
    let Some(rest) = header.strip_prefix("dims:") else {
        return Err(err(1, 1, "expected `dims:` header"));
    };
    let dims_toks = int_tokens(rest, 1, 6)?;
    if dims_toks.is_empty() {
        return Err(err(1, 6, "expected at least one dimension length"));
    }
    for &(v, col) in &dims_toks {
        if v == 0 {
            return Err(err(1, col, "dimension length must be at least 1"));
        }
    }
    let dims: Vec<usize> = dims_toks.iter().map(|&(v, _)| v).collect();
    let d = dims.len();

    match lines.get(1) {
        Some(l) if l.trim() == "ones:" => {}
        Some(_) | None => return Err(err(2, 1, "expected `ones:`")),
    }

    let mut ones: Vec<Vec<usize>> = Vec::new();
    for (idx, raw) in lines.iter().enumerate().skip(2) {
        let lineno = idx + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let toks = int_tokens(raw, lineno, 1)?;
        if toks.len() != d {
            let col = toks.get(d).map_or(raw.len() + 1, |&(_, c)| c);
            return Err(err(
                lineno,
                col,
                format!("expected {d} coordinates, found {}", toks.len()),
            ));
        }
        for (i, &(v, col)) in toks.iter().enumerate() {
            if v < 1 || v > dims[i] {
                return Err(err(
                    lineno,
                    col,
                    format!("coordinate {v} out of range 1..={} in dimension {}", dims[i], i + 1),
                ));
            }
        }
        let coord: Vec<usize> = toks.iter().map(|&(v, _)| v).collect();
        if ones.contains(&coord) {
            return Err(err(lineno, 1, format!("duplicate coordinate {coord:?}")));
        }
        ones.push(coord);
    }

    Tensor01::from_ones(dims, &ones).map_err(|e| err(1, 1, e.to_string()))
}

/// Canonical text form: header, `ones:`, then coordinates in lexicographic
/// order, one per line.
pub fn serialize_pattern(t: &Tensor01) -> String {
    let mut s = String::from("dims:");
    for k in t.dims() {
        s.push(' ');
        s.push_str(&k.to_string());
    }
    s.push_str("\nones:\n");
    for o in t.iter_ones() {
        let words: Vec<String> = o.iter().map(|c| c.to_string()).collect();
        s.push_str(&words.join(" "));
        s.push('\n');
    }
    s
}

/// JSON form of one pattern; `ones` is kept in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternJson {
    pub dims: Vec<usize>,
    pub ones: Vec<Vec<usize>>,
}

/// JSON form of a pattern family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub d: usize,
    pub patterns: Vec<PatternJson>,
}

pub fn pattern_to_json(t: &Tensor01) -> PatternJson {
    PatternJson { dims: t.dims().to_vec(), ones: t.ones() }
}

pub fn pattern_from_json(pj: &PatternJson) -> anyhow::Result<Tensor01> {
    Tensor01::from_ones(pj.dims.clone(), &pj.ones).context("invalid pattern")
}

pub fn family_to_json(fam: &Family) -> FamilyJson {
    FamilyJson { d: fam.d(), patterns: fam.patterns().iter().map(pattern_to_json).collect() }
}

pub fn family_from_json(fj: &FamilyJson) -> anyhow::Result<Family> {
    for (i, pj) in fj.patterns.iter().enumerate() {
        if pj.dims.len() != fj.d {
            bail!("pattern {i} has {} dimensions, family header says {}", pj.dims.len(), fj.d);
        }
    }
    let patterns: Vec<Tensor01> = fj
        .patterns
        .iter()
        .enumerate()
        .map(|(i, pj)| pattern_from_json(pj).with_context(|| format!("pattern {i}")))
        .collect::<anyhow::Result<_>>()?;
    Family::new(patterns).context("invalid family")
}

/// Canonical JSON for a family: patterns in file order, ones normalized to
/// lexicographic order. This is the byte string the cache hash covers.
pub fn canonical_family_json(fam: &Family) -> String {
    serde_json::to_string(&family_to_json(fam)).expect("family serializes")
}

/// Content hash of a family (sha256 of the canonical JSON, hex-encoded), so
/// renamed or reformatted files key the same cache entries.
pub fn family_hash(fam: &Family) -> String {
    hex::encode(Sha256::digest(canonical_family_json(fam).as_bytes()))
}

/// Load a family file: JSON (first non-blank byte `{`) or a single text
/// pattern, which becomes a one-member family.
pub fn load_family(path: &Path) -> anyhow::Result<Family> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    if text.trim_start().starts_with('{') {
        let fj: FamilyJson = serde_json::from_str(&text)
            .with_context(|| format!("{}: invalid family JSON", path.display()))?;
        family_from_json(&fj).with_context(|| path.display().to_string())
    } else {
        let p = parse_pattern(&text).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?;
        Ok(Family::single(p))
    }
}

/// Load a single pattern: text format, or JSON carrying one PatternJson.
pub fn load_pattern(path: &Path) -> anyhow::Result<Tensor01> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    if text.trim_start().starts_with('{') {
        let pj: PatternJson = serde_json::from_str(&text)
            .with_context(|| format!("{}: invalid pattern JSON", path.display()))?;
        pattern_from_json(&pj)
    } else {
        parse_pattern(&text).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))
    }
}
