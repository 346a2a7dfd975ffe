//! Reading and writing σ tables.
//!
//! Two formats are supported and auto-detected:
//!
//! * JSON: `{"n":3,"l":2,"map":{"11":"23","12":"31",…}}` with words in the
//!   text form of the words module.
//! * Compact: one `input->image` pair per line, `#` starts a comment, blank
//!   lines are ignored. Alphabet size and block length are inferred (the
//!   alphabet is the largest letter mentioned; a valid table always mentions
//!   its largest letter).
//!
//! Serialization is deterministic: JSON maps are key-sorted, compact lines
//! are emitted in rank order.

use crate::perm::{unrank, MultiIndexPermutation, PermError};
use crate::word::Word;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SigmaIoError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("line {line}: {reason}")]
    Line { line: usize, reason: String },
    #[error("entry {key:?} -> {value:?}: {reason}")]
    Entry {
        key: String,
        value: String,
        reason: String,
    },
    #[error("no pairs found")]
    Empty,
    #[error(transparent)]
    Invalid(#[from] PermError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaFormat {
    Json,
    Compact,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SigmaJson {
    n: u32,
    l: u32,
    map: BTreeMap<String, String>,
}

/// Parses either format, deciding by the leading character.
pub fn parse(text: &str) -> Result<(MultiIndexPermutation, SigmaFormat), SigmaIoError> {
    if text.trim_start().starts_with('{') {
        Ok((from_json(text)?, SigmaFormat::Json))
    } else {
        Ok((from_compact(text)?, SigmaFormat::Compact))
    }
}

pub fn from_json(text: &str) -> Result<MultiIndexPermutation, SigmaIoError> {
    let raw: SigmaJson =
        serde_json::from_str(text).map_err(|e| SigmaIoError::Json(e.to_string()))?;
    if raw.map.is_empty() {
        return Err(SigmaIoError::Empty);
    }
    let mut pairs = Vec::with_capacity(raw.map.len());
    for (key, value) in &raw.map {
        let entry_err = |reason: String| SigmaIoError::Entry {
            key: key.clone(),
            value: value.clone(),
            reason,
        };
        let input = Word::parse(key, raw.n).map_err(|e| entry_err(e.to_string()))?;
        let image = Word::parse(value, raw.n).map_err(|e| entry_err(e.to_string()))?;
        pairs.push((input, image));
    }
    Ok(MultiIndexPermutation::from_pairs(raw.n, raw.l, &pairs)?)
}

pub fn to_json(sigma: &MultiIndexPermutation) -> String {
    let n = sigma.alphabet_size();
    let l = sigma.block_length();
    let map: BTreeMap<String, String> = sigma
        .table()
        .iter()
        .enumerate()
        .map(|(r, &image)| {
            (
                Word::from_valid(n, unrank(n, l, r)).to_string(),
                Word::from_valid(n, unrank(n, l, image)).to_string(),
            )
        })
        .collect();
    serde_json::to_string(&SigmaJson { n, l, map }).expect("serialization cannot fail")
}

/// Letters of one side of a compact pair, parsed without knowing the
/// alphabet yet. Returns the letters and whether the digit form was used.
fn raw_letters(token: &str) -> Result<(Vec<u32>, bool), String> {
    let token = token.trim();
    if token.is_empty() {
        return Err("empty word".to_string());
    }
    if token.contains(',') {
        let letters = token
            .split(',')
            .map(|part| {
                let part = part.trim();
                match part.parse::<u32>() {
                    Ok(0) => Err("letter 0 is not valid".to_string()),
                    Ok(letter) => Ok(letter),
                    Err(_) => Err(format!("bad letter {part:?}")),
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok((letters, false))
    } else {
        let letters = token
            .chars()
            .map(|c| match c.to_digit(10) {
                Some(0) => Err("letter 0 is not valid".to_string()),
                Some(d) => Ok(d),
                None => Err(format!("bad character {c:?}")),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok((letters, true))
    }
}

pub fn from_compact(text: &str) -> Result<MultiIndexPermutation, SigmaIoError> {
    struct RawPair {
        line: usize,
        input: Vec<u32>,
        image: Vec<u32>,
        digit_form: bool,
    }
    let mut raw_pairs: Vec<RawPair> = Vec::new();
    for (index, full_line) in text.lines().enumerate() {
        let line = index + 1;
        let data = full_line.split('#').next().unwrap_or("").trim();
        if data.is_empty() {
            continue;
        }
        let line_err = |reason: String| SigmaIoError::Line { line, reason };
        let (left, right) = data
            .split_once("->")
            .ok_or_else(|| line_err("expected input->image".to_string()))?;
        let (input, digit_left) = raw_letters(left).map_err(line_err)?;
        let (image, digit_right) = raw_letters(right).map_err(line_err)?;
        raw_pairs.push(RawPair {
            line,
            input,
            image,
            digit_form: digit_left || digit_right,
        });
    }
    if raw_pairs.is_empty() {
        return Err(SigmaIoError::Empty);
    }
    let n = raw_pairs
        .iter()
        .flat_map(|p| p.input.iter().chain(p.image.iter()))
        .copied()
        .max()
        .unwrap()
        .max(2);
    let l = raw_pairs[0].input.len() as u32;
    let mut pairs = Vec::with_capacity(raw_pairs.len());
    for raw in &raw_pairs {
        let line_err = |reason: String| SigmaIoError::Line {
            line: raw.line,
            reason,
        };
        if n > 9 && raw.digit_form {
            return Err(line_err(format!(
                "digit form is ambiguous for alphabet size {n}; use the comma form"
            )));
        }
        if raw.input.len() != l as usize || raw.image.len() != l as usize {
            return Err(line_err(format!(
                "expected words of length {l} on both sides"
            )));
        }
        pairs.push((
            Word::new(n, raw.input.clone()).map_err(|e| line_err(e.to_string()))?,
            Word::new(n, raw.image.clone()).map_err(|e| line_err(e.to_string()))?,
        ));
    }
    Ok(MultiIndexPermutation::from_pairs(n, l, &pairs)?)
}

pub fn to_compact(sigma: &MultiIndexPermutation) -> String {
    let n = sigma.alphabet_size();
    let l = sigma.block_length();
    let mut out = String::new();
    for (r, &image) in sigma.table().iter().enumerate() {
        out.push_str(&Word::from_valid(n, unrank(n, l, r)).to_string());
        out.push_str("->");
        out.push_str(&Word::from_valid(n, unrank(n, l, image)).to_string());
        out.push('\n');
    }
    out
}

/// Single-line rendering (`11->12 12->11 …`), used by classification reports.
pub fn to_compact_inline(sigma: &MultiIndexPermutation) -> String {
    to_compact(sigma).trim_end().replace('\n', " ")
}

/// True once `text` names the same σ again after a round trip (test helper
/// left public for callers that want to validate files they emit).
pub fn round_trips(sigma: &MultiIndexPermutation) -> bool {
    from_json(&to_json(sigma)).map(|s| s == *sigma).unwrap_or(false)
        && from_compact(&to_compact(sigma)).map(|s| s == *sigma).unwrap_or(false)
}
