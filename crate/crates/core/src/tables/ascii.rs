//! The dot display: rows `n` down to `0` with `i:` prefixes, zeros as `.`,
//! and a final line of display-column indices. Columns are right-aligned to
//! their widest cell, which reproduces the usual hand-typeset layout.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{CohomologyTable, ColRange};
use crate::error::{Error, Result};
use crate::parallel::Execution;

fn format_entry(v: &BigRational) -> String {
    if v.is_zero() {
        ".".to_string()
    } else {
        v.to_string()
    }
}

impl CohomologyTable {
    pub fn render_ascii(&self, range: ColRange) -> Result<String> {
        let rows = self.materialize(range, Execution::default())?;
        let cells: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(format_entry).collect()).collect();
        let labels: Vec<String> = range.columns().map(|c| c.to_string()).collect();
        let widths: Vec<usize> = (0..labels.len())
            .map(|c| cells.iter().map(|r| r[c].len()).chain([labels[c].len()]).max().unwrap())
            .collect();
        let prefix = format!("{}:", self.n).len();
        let mut out = String::new();
        for i in (0..=self.n).rev() {
            let label = format!("{i}:");
            out.push_str(&format!("{label:>prefix$}"));
            for (c, w) in widths.iter().enumerate() {
                out.push_str(&format!(" {:>w$}", cells[i][c]));
            }
            out.push('\n');
        }
        out.push_str(&" ".repeat(prefix));
        for (label, w) in labels.iter().zip(&widths) {
            out.push_str(&format!(" {label:>w$}"));
        }
        out.push('\n');
        Ok(out)
    }

    /// Parses the dot display into a literal table. Only whitespace width may
    /// vary; ragged rows, negative entries and a missing index line are
    /// rejected.
    pub fn parse_ascii(text: &str) -> Result<CohomologyTable> {
        let lines: Vec<(usize, &str)> =
            text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()).map(|(i, l)| (i + 1, l)).collect();
        let Some((&(index_line, index_text), row_lines)) = lines.split_last() else {
            return Err(parse_err(1, 1, "empty table"));
        };
        if index_text.contains(':') {
            return Err(parse_err(index_line, 1, "missing index line"));
        }
        let mut columns = Vec::new();
        for (col, tok) in tokens(index_text) {
            let v: i64 = tok.parse().map_err(|_| parse_err(index_line, col, &format!("bad column index {tok:?}")))?;
            if let Some(&prev) = columns.last() {
                if v != prev + 1 {
                    return Err(parse_err(index_line, col, "column indices must be consecutive"));
                }
            }
            columns.push(v);
        }
        if columns.is_empty() || row_lines.is_empty() {
            return Err(parse_err(index_line, 1, "table needs rows and column indices"));
        }
        let window = ColRange::new(columns[0], *columns.last().unwrap());
        let n = row_lines.len() - 1;
        let mut rows = vec![Vec::new(); n + 1];
        for (pos, &(line, text)) in row_lines.iter().enumerate() {
            let expected = n - pos;
            let colon = text.find(':').ok_or_else(|| parse_err(line, 1, "row is missing its `i:` label"))?;
            let label = text[..colon].trim();
            if label.parse::<usize>().ok() != Some(expected) {
                return Err(parse_err(line, 1, &format!("expected row label {expected}:, found {label:?}")));
            }
            let body = &text[colon + 1..];
            let entries: Vec<(usize, &str)> = tokens(body).into_iter().map(|(c, t)| (c + colon + 1, t)).collect();
            if entries.len() != columns.len() {
                return Err(parse_err(
                    line,
                    colon + 2,
                    &format!("row {expected} has {} entries, index line has {}", entries.len(), columns.len()),
                ));
            }
            rows[expected] = entries
                .into_iter()
                .map(|(c, t)| parse_entry(t).ok_or_else(|| parse_err(line, c, &format!("bad entry {t:?}"))))
                .collect::<Result<_>>()?;
        }
        CohomologyTable::literal(n, window, rows)
    }
}

fn parse_err(line: usize, column: usize, message: &str) -> Error {
    Error::Parse { line, column, message: message.to_string() }
}

/// Whitespace-separated tokens with their 1-based starting column.
fn tokens(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in s.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(st)) => {
                out.push((st + 1, &s[st..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(st) = start {
        out.push((st + 1, &s[st..]));
    }
    out
}

/// `.`, a nonnegative integer, or a nonnegative fraction `p/q`.
pub(super) fn parse_entry(tok: &str) -> Option<BigRational> {
    if tok == "." {
        return Some(BigRational::zero());
    }
    if tok.starts_with('-') || tok.starts_with('+') {
        return None;
    }
    let v = match tok.split_once('/') {
        Some((p, q)) => {
            let q: BigInt = q.parse().ok()?;
            if q.is_zero() || q.is_negative() {
                return None;
            }
            BigRational::new(p.parse().ok()?, q)
        }
        None => BigRational::from_integer(tok.parse().ok()?),
    };
    Some(v)
}

/// Collapses whitespace runs, strips alignment and blank lines, so that
/// differently aligned renderings of the same table compare equal.
pub fn normalize_ascii(text: &str) -> String {
    text.lines()
        .map(|l| l.split_whitespace().collect::<Vec<_>>().join(" "))
        .filter(|l| !l.is_empty())
        .collect::<Vec<_>>()
        .join("\n")
}
