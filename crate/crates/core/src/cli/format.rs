//! Plain-text element format.
//!
//! A portrait is a `root:` line followed by one `<word>: <cycles>` line per
//! stored local; a line translation uses `line:`, `shift:` and `perm[i]:`
//! lines instead. An optional `degree:` line fixes the degree, `#` starts a
//! comment and blank lines are ignored.
//!
//! ```text
//! root: 12
//! degree: 3
//! -: (2 3)
//! 1: (2 3)
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use crate::element::{ElementError, LineElement, Portrait};
use crate::permgroup::{Perm, PermError};
use crate::tree::{format_word, parse_word, TreeError, VertexAddr};
use crate::{Color, MAX_DEGREE};

/// A diagnostic pointing at a 1-based line and column of the input.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{line}:{column}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// Either element model, as read from a file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Element {
    Portrait(Portrait),
    Line(LineElement),
}

struct Field<'a> {
    line: usize,
    key: &'a str,
    value: &'a str,
    /// Column of the first character of `value`.
    column: usize,
}

impl Field<'_> {
    fn error(&self, offset: usize, message: impl Into<String>) -> FormatError {
        FormatError {
            line: self.line,
            column: self.column + offset,
            message: message.into(),
        }
    }

    fn word(&self, degree: u8) -> Result<VertexAddr, FormatError> {
        let letters = parse_word(self.value).map_err(|e| self.error(0, e.to_string()))?;
        VertexAddr::new(letters, Some(degree)).map_err(|e| match e {
            TreeError::NotReduced(pos) if !self.value.contains(',') => self.error(pos, "word not reduced"),
            TreeError::NotReduced(_) => self.error(0, "word not reduced"),
            other => self.error(0, other.to_string()),
        })
    }

    fn perm(&self, degree: u8) -> Result<Perm, FormatError> {
        Perm::parse_cycles(degree, self.value).map_err(|e| match e {
            PermError::Parse { column, message } => self.error(column - 1, message),
            other => self.error(0, other.to_string()),
        })
    }
}

fn fields(text: &str) -> Result<Vec<Field<'_>>, FormatError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some(colon) = content.find(':') else {
            let indent = content.len() - content.trim_start().len();
            return Err(FormatError {
                line: i + 1,
                column: indent + 1,
                message: "expected '<key>: <value>'".into(),
            });
        };
        let value_raw = &content[colon + 1..];
        let lead = value_raw.len() - value_raw.trim_start().len();
        out.push(Field {
            line: i + 1,
            key: content[..colon].trim(),
            value: value_raw.trim(),
            column: colon + 2 + lead,
        });
    }
    Ok(out)
}

/// Degree read from a `degree:` field, else `fallback`, else the largest
/// color mentioned (at least 3).
fn resolve_degree(fields: &[Field], fallback: Option<u8>) -> Result<u8, FormatError> {
    if let Some(f) = fields.iter().find(|f| f.key == "degree") {
        let d: u8 = f.value.parse().map_err(|_| f.error(0, "degree must be an integer"))?;
        if !(3..=MAX_DEGREE).contains(&d) {
            return Err(f.error(0, format!("degree {d} out of supported range 3..={MAX_DEGREE}")));
        }
        return Ok(d);
    }
    if let Some(d) = fallback {
        return Ok(d);
    }
    let word_max = |text: &str| parse_word(text).ok().and_then(|w| w.into_iter().max()).unwrap_or(0);
    let cycle_max = |text: &str| {
        text.split(|c: char| !c.is_ascii_digit())
            .filter_map(|t| t.parse::<Color>().ok())
            .max()
            .unwrap_or(0)
    };
    let mut max: Color = 3;
    for f in fields {
        let m = match f.key {
            "root" | "line" => word_max(f.value),
            "shift" => 0,
            key if key.starts_with("perm[") => cycle_max(f.value),
            key => word_max(key).max(cycle_max(f.value)),
        };
        max = max.max(m);
    }
    Ok(max.min(MAX_DEGREE))
}

/// Parses a portrait or a line translation. `degree` is used when the text
/// has no `degree:` line; otherwise the degree is inferred from the colors.
pub fn parse_element(text: &str, degree: Option<u8>) -> Result<Element, FormatError> {
    let fields = fields(text)?;
    if fields.iter().any(|f| f.key == "line") {
        parse_line_fields(&fields, degree).map(Element::Line)
    } else {
        parse_portrait_fields(&fields, degree).map(Element::Portrait)
    }
}

pub fn parse_portrait(text: &str, degree: Option<u8>) -> Result<Portrait, FormatError> {
    let fields = fields(text)?;
    parse_portrait_fields(&fields, degree)
}

fn element_error(fields: &[Field], e: ElementError) -> FormatError {
    let line = fields.first().map_or(1, |f| f.line);
    FormatError {
        line,
        column: 1,
        message: e.to_string(),
    }
}

fn parse_portrait_fields(fields: &[Field], degree: Option<u8>) -> Result<Portrait, FormatError> {
    let d = resolve_degree(fields, degree)?;
    let mut root = None;
    let mut locals: Vec<(VertexAddr, Perm)> = Vec::new();
    for f in fields {
        match f.key {
            "degree" => {}
            "root" => {
                if root.is_some() {
                    return Err(f.error(0, "duplicate root"));
                }
                root = Some(f.word(d)?);
            }
            key => {
                let key_field = Field {
                    line: f.line,
                    key,
                    value: key,
                    column: 1,
                };
                let v = key_field.word(d)?;
                if locals.iter().any(|(w, _)| *w == v) {
                    return Err(f.error(0, format!("duplicate local at {v}")));
                }
                let p = f.perm(d)?;
                if let Some(b) = v.last() {
                    if !p.fixes(b) {
                        return Err(f.error(0, format!("local at {v} must fix the backward color {b}")));
                    }
                }
                locals.push((v, p));
            }
        }
    }
    let root = root.ok_or(FormatError {
        line: 1,
        column: 1,
        message: "missing 'root:' line".into(),
    })?;
    Portrait::new(d, root, locals).map_err(|e| element_error(fields, e))
}

fn parse_line_fields(fields: &[Field], degree: Option<u8>) -> Result<LineElement, FormatError> {
    let d = resolve_degree(fields, degree)?;
    let mut colors = None;
    let mut shift = None;
    let mut perms: Vec<Option<Perm>> = Vec::new();
    for f in fields {
        match f.key {
            "degree" => {}
            "line" => {
                colors = Some(parse_word(f.value).map_err(|e| f.error(0, e.to_string()))?);
            }
            "shift" => {
                shift = Some(
                    f.value
                        .parse::<usize>()
                        .map_err(|_| f.error(0, "shift must be an integer"))?,
                );
            }
            key if key.starts_with("perm[") && key.ends_with(']') => {
                let i: usize = key[5..key.len() - 1]
                    .parse()
                    .map_err(|_| f.error(0, "bad perm index"))?;
                if perms.len() <= i {
                    perms.resize(i + 1, None);
                }
                if perms[i].is_some() {
                    return Err(f.error(0, format!("duplicate perm[{i}]")));
                }
                perms[i] = Some(f.perm(d)?);
            }
            other => return Err(f.error(0, format!("unknown key '{other}' in a line element"))),
        }
    }
    let missing = |what: &str| FormatError {
        line: 1,
        column: 1,
        message: format!("missing '{what}:' line"),
    };
    let colors = colors.ok_or_else(|| missing("line"))?;
    let shift = shift.ok_or_else(|| missing("shift"))?;
    let perms = perms
        .into_iter()
        .enumerate()
        .map(|(i, p)| p.ok_or_else(|| missing(&format!("perm[{i}]"))))
        .collect::<Result<Vec<_>, _>>()?;
    LineElement::new(d, colors, perms, shift).map_err(|e| element_error(fields, e))
}

/// Canonical text of a portrait; `parse_portrait(print_portrait(g)) == g`.
pub fn print_portrait(g: &Portrait) -> String {
    let mut out = format!("root: {}\ndegree: {}\n", g.root_image(), g.degree());
    for (v, p) in g.locals() {
        writeln!(out, "{v}: {p}").expect("write to string");
    }
    out
}

pub fn print_line(l: &LineElement) -> String {
    let mut out = format!(
        "line: {}\nshift: {}\ndegree: {}\n",
        format_word(l.period_colors()),
        l.shift(),
        l.degree()
    );
    for (i, p) in l.period_perms().iter().enumerate() {
        writeln!(out, "perm[{i}]: {p}").expect("write to string");
    }
    out
}

pub fn print_element(e: &Element) -> String {
    match e {
        Element::Portrait(p) => print_portrait(p),
        Element::Line(l) => print_line(l),
    }
}
