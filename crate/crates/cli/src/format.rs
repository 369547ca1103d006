//! The `.isg` table format.
//!
//! ```text
//! # comment
//! isg size=4 zero=0 name=szendrei
//! labels 0 i 1 s
//! 0 0 0 0
//! 0 1 1 1
//! 0 1 2 3
//! 0 1 3 2
//! ```
//!
//! `zero` may be omitted, in which case the absorbing element is searched
//! for. `name` and the `labels` line are optional; labels are whitespace-free.

use std::fmt::Write as _;

use isg_core::semigroup::{AlgebraError, CayleyTable, InverseSemigroup};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("ParseError line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupFile {
    pub size: usize,
    pub zero: Option<usize>,
    pub name: Option<String>,
    pub labels: Option<Vec<String>>,
    pub rows: Vec<Vec<usize>>,
}

struct Token<'a> {
    line: usize,
    col: usize,
    text: &'a str,
}

fn tokens(line_no: usize, line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Token {
                    line: line_no,
                    col: line[..s].chars().count() + 1,
                    text: &line[s..i],
                });
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn err(line: usize, col: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        col,
        message: message.into(),
    }
}

fn number(tok: &Token<'_>, what: &str) -> Result<usize, ParseError> {
    tok.text
        .parse()
        .map_err(|_| err(tok.line, tok.col, format!("expected {what}, found `{}`", tok.text)))
}

pub fn parse(text: &str) -> Result<SemigroupFile, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .peekable();

    let last_line = text.lines().count().max(1);
    let (header_no, header) = lines.next().ok_or_else(|| err(1, 1, "missing header `isg size=N zero=Z`"))?;
    let toks = tokens(header_no, header);
    if toks[0].text != "isg" {
        return Err(err(header_no, toks[0].col, format!("expected `isg`, found `{}`", toks[0].text)));
    }
    let (mut size, mut zero, mut name) = (None, None, None);
    for tok in &toks[1..] {
        let Some((key, value)) = tok.text.split_once('=') else {
            return Err(err(tok.line, tok.col, format!("expected key=value, found `{}`", tok.text)));
        };
        let value_tok = Token {
            line: tok.line,
            col: tok.col + key.chars().count() + 1,
            text: value,
        };
        let slot_taken = match key {
            "size" => size.replace(number(&value_tok, "a size")?).is_some(),
            "zero" => zero.replace(number(&value_tok, "a zero index")?).is_some(),
            "name" if !value.is_empty() => name.replace(value.to_string()).is_some(),
            _ => return Err(err(tok.line, tok.col, format!("unknown header field `{}`", tok.text))),
        };
        if slot_taken {
            return Err(err(tok.line, tok.col, format!("duplicate header field `{key}`")));
        }
    }
    let size = size.ok_or_else(|| err(header_no, header.len() + 1, "header lacks size=N"))?;
    if size == 0 {
        return Err(err(header_no, 1, "size must be positive"));
    }

    let mut labels = None;
    if let Some((no, line)) = lines.peek().copied() {
        let toks = tokens(no, line);
        if toks[0].text == "labels" {
            lines.next();
            if toks.len() - 1 != size {
                let col = toks.get(size + 1).map_or(line.len() + 1, |t| t.col);
                return Err(err(no, col, format!("expected {size} labels, found {}", toks.len() - 1)));
            }
            labels = Some(toks[1..].iter().map(|t| t.text.to_string()).collect());
        }
    }

    let mut rows = Vec::with_capacity(size);
    for r in 0..size {
        let (no, line) = lines
            .next()
            .ok_or_else(|| err(last_line + 1, 1, format!("expected {size} rows, found {r}")))?;
        let toks = tokens(no, line);
        if toks.len() != size {
            let col = toks.get(size).map_or(line.len() + 1, |t| t.col);
            return Err(err(no, col, format!("row {r} has {} entries, expected {size}", toks.len())));
        }
        rows.push(toks.iter().map(|t| number(t, "an element index")).collect::<Result<_, _>>()?);
    }
    if let Some((no, line)) = lines.next() {
        let col = tokens(no, line)[0].col;
        return Err(err(no, col, "unexpected content after the table"));
    }
    Ok(SemigroupFile {
        size,
        zero,
        name,
        labels,
        rows,
    })
}

impl SemigroupFile {
    pub fn from_semigroup(s: &InverseSemigroup) -> Self {
        SemigroupFile {
            size: s.len(),
            zero: Some(s.zero()),
            name: s.name().map(|n| n.split_whitespace().collect::<Vec<_>>().join("_")),
            labels: s.labels().map(<[String]>::to_vec),
            rows: s.table().rows(),
        }
    }

    pub fn table(&self) -> Result<CayleyTable, AlgebraError> {
        CayleyTable::new(self.rows.clone())
    }

    /// Validate as an inverse semigroup with zero.
    pub fn semigroup(&self) -> Result<InverseSemigroup, AlgebraError> {
        let table = self.table()?;
        let mut s = match self.zero {
            Some(z) if z >= table.len() => return Err(AlgebraError::ZeroOutOfRange { zero: z, n: table.len() }),
            Some(z) => InverseSemigroup::from_table(table, z)?,
            None => InverseSemigroup::from_table_detect_zero(table)?,
        };
        if let Some(labels) = &self.labels {
            s = s.with_labels(labels.clone())?;
        }
        if let Some(name) = &self.name {
            s = s.with_name(name.clone());
        }
        Ok(s)
    }

    pub fn write(&self) -> String {
        let mut out = format!("isg size={}", self.size);
        if let Some(z) = self.zero {
            write!(out, " zero={z}").unwrap();
        }
        if let Some(name) = &self.name {
            write!(out, " name={name}").unwrap();
        }
        out.push('\n');
        if let Some(labels) = &self.labels {
            writeln!(out, "labels {}", labels.join(" ")).unwrap();
        }
        let width = self.size.saturating_sub(1).to_string().len();
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>width$}")).collect();
            writeln!(out, "{}", cells.join(" ")).unwrap();
        }
        out
    }
}
