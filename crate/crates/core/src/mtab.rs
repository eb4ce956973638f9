//! The `mtab v1` text format for multiplication tables.
//!
//! ```text
//! mtab v1
//! # comments start with '#'
//! n=3
//! id=0
//! labels=1,e,t
//! 0 1 2
//! 1 1 2
//! 2 2 1
//! inv=0,1,2
//! ```
//!
//! `labels` is one CSV record (quote labels containing commas). The `inv`
//! line is optional; when present it must match the computed inverses.

use std::fmt::Write as _;

use thiserror::Error;

use crate::error::Error;
use crate::inverse::InverseMonoid;
use crate::monoid::FiniteMonoid;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MtabError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("invalid monoid: {0}")]
    Validation(#[from] Error),
    #[error("inv row does not match the computed inverses at element {0}")]
    InverseMismatch(usize),
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> MtabError {
    MtabError::Syntax { line, column, message: message.into() }
}

/// Lines with comments removed, keeping 1-based line numbers. The labels
/// line is kept verbatim apart from leading whitespace.
fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let trimmed = raw.trim_start();
            let line = if trimmed.starts_with("labels=") {
                trimmed.trim_end_matches('\r')
            } else {
                raw.split('#').next().unwrap_or("").trim()
            };
            (!line.is_empty()).then_some((i + 1, line))
        })
        .collect()
}

fn parse_int(line: usize, column: usize, tok: &str) -> Result<usize, MtabError> {
    tok.parse::<usize>()
        .map_err(|_| syntax(line, column, format!("expected a non-negative integer, found {tok:?}")))
}

fn key_value<'a>(line: usize, text: &'a str, key: &str) -> Result<&'a str, MtabError> {
    text.strip_prefix(key)
        .and_then(|rest| rest.strip_prefix('='))
        .ok_or_else(|| syntax(line, 1, format!("expected `{key}=`")))
}

fn parse_csv_record(line: usize, column: usize, text: &str) -> Result<Vec<String>, MtabError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut record = csv::StringRecord::new();
    match reader.read_record(&mut record) {
        Ok(true) => Ok(record.iter().map(str::to_string).collect()),
        Ok(false) => Ok(Vec::new()),
        Err(e) => Err(syntax(line, column, format!("bad labels record: {e}"))),
    }
}

fn split_csv_ints(line: usize, column: usize, text: &str) -> Result<Vec<usize>, MtabError> {
    let mut col = column;
    let mut out = Vec::new();
    for tok in text.split(',') {
        out.push(parse_int(line, col, tok.trim())?);
        col += tok.len() + 1;
    }
    Ok(out)
}

/// Parses one document.
pub fn parse_mtab(text: &str) -> Result<FiniteMonoid, MtabError> {
    let lines = content_lines(text);
    let eof = text.lines().count() + 1;
    let mut it = lines.into_iter().peekable();
    let (l, header) = it.next().ok_or_else(|| syntax(1, 1, "empty document"))?;
    if header.split_whitespace().collect::<Vec<_>>() != ["mtab", "v1"] {
        return Err(syntax(l, 1, "expected header `mtab v1`"));
    }
    let (l, nline) = it.next().ok_or_else(|| syntax(eof, 1, "missing `n=`"))?;
    let n = parse_int(l, 3, key_value(l, nline, "n")?.trim())?;
    if n == 0 {
        return Err(syntax(l, 3, "n must be positive"));
    }
    let (l, idline) = it.next().ok_or_else(|| syntax(eof, 1, "missing `id=`"))?;
    let id = parse_int(l, 4, key_value(l, idline, "id")?.trim())?;

    let mut labels = None;
    if let Some(&(l, text)) = it.peek() {
        if let Some(rest) = text.strip_prefix("labels=") {
            let record = parse_csv_record(l, 8, rest)?;
            if record.len() != n {
                return Err(syntax(l, 8, format!("expected {n} labels, found {}", record.len())));
            }
            labels = Some(record);
            it.next();
        }
    }

    let mut rows = Vec::with_capacity(n);
    for r in 0..n {
        let (l, text) = it.next().ok_or_else(|| syntax(eof, 1, format!("missing table row {r}")))?;
        let mut row = Vec::with_capacity(n);
        let mut col = 1;
        for tok in text.split_whitespace() {
            let offset = text[col - 1..].find(tok).map_or(col, |p| col + p);
            row.push(parse_int(l, offset, tok)?);
            col = offset + tok.len();
        }
        if row.len() != n {
            return Err(syntax(l, 1, format!("row {r} has {} entries, expected {n}", row.len())));
        }
        rows.push(row);
    }

    let mut inv = None;
    if let Some((l, text)) = it.next() {
        let value = key_value(l, text, "inv")?;
        let values = split_csv_ints(l, 5, value)?;
        if values.len() != n {
            return Err(syntax(l, 5, format!("expected {n} inverses, found {}", values.len())));
        }
        inv = Some(values);
    }
    if let Some((l, _)) = it.next() {
        return Err(syntax(l, 1, "unexpected content after the table"));
    }

    let mut m = FiniteMonoid::new(rows, id)?;
    if let Some(l) = labels {
        m = m.with_labels(l)?;
    }
    if let Some(expected) = inv {
        let computed = InverseMonoid::new(m.clone())?;
        if let Some(x) = (0..n).find(|&x| computed.inv(x) != expected[x]) {
            return Err(MtabError::InverseMismatch(x));
        }
    }
    Ok(m)
}

/// Splits a stream of concatenated documents at each `mtab v1` header and
/// parses every document.
pub fn parse_mtab_stream(text: &str) -> Result<Vec<FiniteMonoid>, MtabError> {
    let mut docs: Vec<String> = Vec::new();
    for line in text.lines() {
        if line.trim() == "mtab v1" || docs.is_empty() {
            docs.push(String::new());
        }
        let doc = docs.last_mut().unwrap();
        doc.push_str(line);
        doc.push('\n');
    }
    docs.iter()
        .filter(|d| !content_lines(d).is_empty())
        .map(|d| parse_mtab(d))
        .collect()
}

fn csv_record(fields: &[String]) -> String {
    let style = if fields.iter().any(|f| f.is_empty() || f.trim() != f) {
        csv::QuoteStyle::Always
    } else {
        csv::QuoteStyle::Necessary
    };
    let mut writer = csv::WriterBuilder::new()
        .has_headers(false)
        .quote_style(style)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    writer.write_record(fields).expect("in-memory write");
    let bytes = writer.into_inner().expect("in-memory flush");
    String::from_utf8(bytes).expect("utf-8 labels").trim_end_matches('\n').to_string()
}

/// Serializes `m`, adding an `inv` line when `m` is an inverse monoid.
pub fn write_mtab(m: &FiniteMonoid) -> String {
    let mut out = String::new();
    out.push_str("mtab v1\n");
    writeln!(out, "n={}", m.len()).unwrap();
    writeln!(out, "id={}", m.identity()).unwrap();
    if let Some(labels) = m.labels() {
        writeln!(out, "labels={}", csv_record(labels)).unwrap();
    }
    for x in m.elements() {
        let row: Vec<String> = m.row(x).iter().map(usize::to_string).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    if let Ok(inv) = InverseMonoid::new(m.clone()) {
        let row: Vec<String> = inv.inverses().iter().map(usize::to_string).collect();
        writeln!(out, "inv={}", row.join(",")).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_document() {
        let m = parse_mtab("mtab v1\nn=1\nid=0\n0\n").unwrap();
        assert_eq!(m.len(), 1);
    }

    #[test]
    fn m3_document_with_comments() {
        let text = "# M3\nmtab v1\nn=3\nid=0  # identity\nlabels=1,e,t\n0 1 2\n1 1 2\n\n2 2 1\ninv=0,1,2\n";
        let m = parse_mtab(text).unwrap();
        assert_eq!(m.rows(), vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 2, 1]]);
        assert_eq!(m.label(2), "t");
        assert_eq!(write_mtab(&m), "mtab v1\nn=3\nid=0\nlabels=1,e,t\n0 1 2\n1 1 2\n2 2 1\ninv=0,1,2\n");
    }

    #[test]
    fn wrong_arity_is_a_syntax_error() {
        let err = parse_mtab("mtab v1\nn=2\nid=0\n0 1\n1\n").unwrap_err();
        assert!(matches!(err, MtabError::Syntax { line: 5, .. }), "{err:?}");
    }

    #[test]
    fn bad_token_reports_column() {
        let err = parse_mtab("mtab v1\nn=2\nid=0\n0 1\n1 x\n").unwrap_err();
        assert_eq!(err, MtabError::Syntax { line: 5, column: 3, message: "expected a non-negative integer, found \"x\"".into() });
    }

    #[test]
    fn missing_row_reports_end_of_input() {
        let err = parse_mtab("mtab v1\nn=2\nid=0\n0 1\n").unwrap_err();
        assert!(matches!(err, MtabError::Syntax { line: 5, .. }), "{err:?}");
    }

    #[test]
    fn floats_are_rejected() {
        assert!(matches!(parse_mtab("mtab v1\nn=1\nid=0\n0.0\n"), Err(MtabError::Syntax { .. })));
    }

    #[test]
    fn validation_errors_are_delegated() {
        let err = parse_mtab("mtab v1\nn=2\nid=0\n0 0\n1 1\n").unwrap_err();
        assert!(matches!(err, MtabError::Validation(Error::NotIdentity(_))));
    }

    #[test]
    fn inverse_row_must_match() {
        let err = parse_mtab("mtab v1\nn=2\nid=0\n0 1\n1 0\ninv=0,0\n").unwrap_err();
        assert_eq!(err, MtabError::InverseMismatch(1));
    }

    #[test]
    fn labels_with_commas_round_trip() {
        let m = FiniteMonoid::new(vec![vec![0, 1], vec![1, 0]], 0)
            .unwrap()
            .with_labels(vec!["(1,1)".into(), "(1,g)".into()])
            .unwrap();
        let text = write_mtab(&m);
        assert!(text.contains("labels=\"(1,1)\",\"(1,g)\""));
        assert_eq!(parse_mtab(&text).unwrap(), m);
    }

    #[test]
    fn stream_of_documents() {
        let a = "mtab v1\nn=1\nid=0\n0\n";
        let b = "mtab v1\nn=2\nid=0\n0 1\n1 0\n";
        let all = parse_mtab_stream(&format!("{a}\n{b}")).unwrap();
        assert_eq!(all.len(), 2);
    }
}
