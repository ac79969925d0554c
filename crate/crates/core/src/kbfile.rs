//! The text format for knowledge bases.
//!
//! One formula per line; `#` starts a comment. A flat base has no headers.
//! A stratified base groups its formulas under `[layer <weight>]` headers,
//! most certain layer first:
//!
//! ```text
//! [layer 1]
//! A
//! !A | B
//! [layer 0.6]
//! !B
//! ```

use crate::error::{Error, ParseError, Result};
use crate::logic::parser::parse_formula_at;
use crate::logic::Formula;
use crate::stratified::{Layer, StratifiedKb};
use crate::subsets::FlatKb;
use crate::weight::Weight;

/// A parsed file of either kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KbFile {
    Flat(FlatKb),
    Stratified(StratifiedKb),
}

impl KbFile {
    /// The base as layers; a flat base becomes one layer at weight 1.
    pub fn into_stratified(self) -> StratifiedKb {
        match self {
            KbFile::Flat(kb) => StratifiedKb::from_flat(&kb),
            KbFile::Stratified(skb) => skb,
        }
    }

    pub fn formulas(&self) -> &[Formula] {
        match self {
            KbFile::Flat(kb) => kb.formulas(),
            KbFile::Stratified(skb) => skb.formulas(),
        }
    }
}

enum Line {
    Header(Weight),
    Formula(Formula),
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse(ParseError {
        line,
        column,
        message: message.into(),
    })
}

fn parse_header(raw: &str, line: usize) -> Result<Weight> {
    let column = raw.len() - raw.trim_start().len() + 1;
    let body = raw.trim();
    let inner = body
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| {
            syntax(
                line,
                column,
                "malformed layer header, expected `[layer <weight>]`",
            )
        })?;
    let mut words = inner.split_whitespace();
    match (words.next(), words.next(), words.next()) {
        (Some("layer"), Some(w), None) => w
            .parse::<Weight>()
            .map_err(|e| syntax(line, column, e.to_string())),
        _ => Err(syntax(
            line,
            column,
            "malformed layer header, expected `[layer <weight>]`",
        )),
    }
}

fn lines(text: &str) -> Result<Vec<(usize, Line)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = strip_comment(raw);
        if content.trim().is_empty() {
            continue;
        }
        if content.trim_start().starts_with('[') {
            out.push((line, Line::Header(parse_header(content, line)?)));
        } else {
            out.push((line, Line::Formula(parse_formula_at(raw, line)?)));
        }
    }
    Ok(out)
}

/// Whether the text uses layer headers.
pub fn is_stratified(text: &str) -> bool {
    text.lines()
        .any(|l| strip_comment(l).trim_start().starts_with('['))
}

pub fn parse_flat(text: &str) -> Result<FlatKb> {
    let mut formulas = Vec::new();
    for (line, l) in lines(text)? {
        match l {
            Line::Formula(f) => formulas.push(f),
            Line::Header(_) => return Err(syntax(line, 1, "layer header in a flat base")),
        }
    }
    FlatKb::new(formulas)
}

fn parse_layers(text: &str) -> Result<Vec<Layer>> {
    let mut layers: Vec<Layer> = Vec::new();
    for (line, l) in lines(text)? {
        match l {
            Line::Header(weight) => layers.push(Layer {
                weight,
                formulas: Vec::new(),
            }),
            Line::Formula(f) => match layers.last_mut() {
                Some(layer) => layer.formulas.push(f),
                None => return Err(syntax(line, 1, "formula before the first layer header")),
            },
        }
    }
    Ok(layers)
}

/// A stratified base whose first layer has weight 1.
pub fn parse_stratified(text: &str) -> Result<StratifiedKb> {
    StratifiedKb::new(parse_layers(text)?)
}

/// A stratified base whose top weight may be below 1, as used for merge
/// sources.
pub fn parse_source(text: &str) -> Result<StratifiedKb> {
    StratifiedKb::new_source(parse_layers(text)?)
}

/// A flat or stratified base, depending on whether the text has headers.
pub fn parse(text: &str) -> Result<KbFile> {
    if is_stratified(text) {
        parse_stratified(text).map(KbFile::Stratified)
    } else {
        parse_flat(text).map(KbFile::Flat)
    }
}

/// Writes a stratified base in the file format.
pub fn write_stratified(skb: &StratifiedKb) -> String {
    let mut out = String::new();
    for layer in skb.layers() {
        out.push_str(&format!("[layer {}]\n", layer.weight));
        for f in &layer.formulas {
            out.push_str(&format!("{f}\n"));
        }
    }
    out
}
