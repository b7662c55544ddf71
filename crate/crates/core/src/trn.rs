//! TRN v1 text records and TRNSET v1 streams.
//!
//! A TRN record is two newline-terminated lines: the order `n`, then the
//! `C(n,2)` pair bits in row-major order `(0,1), (0,2), .., (n-2,n-1)`, where
//! `1` means the lower index dominates the higher one.
//!
//! A TRNSET stream is a header `TRNSET v1 n=<n> filter=<spec>` followed by
//! one pair-bit line per tournament.

use crate::bits::MAX_ORDER;
use crate::error::{Error, Result};
use crate::tournament::Tournament;

/// The pair-bit line (without newline).
pub fn pair_bits(t: &Tournament) -> String {
    let n = t.order();
    let mut s = String::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            s.push(if t.has_arc(i, j) { '1' } else { '0' });
        }
    }
    s
}

/// Full TRN v1 record including the trailing newline.
pub fn to_trn(t: &Tournament) -> String {
    format!("{}\n{}\n", t.order(), pair_bits(t))
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parses a pair-bit line for order `n`; `line` is used for diagnostics.
pub fn parse_pair_bits(n: usize, body: &str, line: usize) -> Result<Tournament> {
    if n == 0 || n > MAX_ORDER {
        return Err(parse_err(line, 1, format!("order {n} outside 1..={MAX_ORDER}")));
    }
    let expected = n * (n - 1) / 2;
    let bytes = body.as_bytes();
    for (k, &b) in bytes.iter().enumerate() {
        if b != b'0' && b != b'1' {
            return Err(parse_err(
                line,
                k + 1,
                format!("expected '0' or '1', found {:?}", b as char),
            ));
        }
    }
    if bytes.len() != expected {
        return Err(parse_err(
            line,
            bytes.len().min(expected) + 1,
            format!("expected {expected} pair bits for n={n}, found {}", bytes.len()),
        ));
    }
    let mut k = 0;
    Tournament::from_pairs(n, |_, _| {
        let one = bytes[k] == b'1';
        k += 1;
        one
    })
}

/// Parses a complete TRN v1 record.
///
/// The input must be exactly two lines, each terminated by `\n`.
pub fn parse_trn(text: &str) -> Result<Tournament> {
    let (first, rest) = text
        .split_once('\n')
        .ok_or_else(|| parse_err(1, text.len() + 1, "missing newline after order line"))?;
    if first.is_empty() {
        return Err(parse_err(1, 1, "empty order line"));
    }
    if let Some(pos) = first.bytes().position(|b| !b.is_ascii_digit()) {
        return Err(parse_err(1, pos + 1, "order must be a decimal integer"));
    }
    let n: usize = first
        .parse()
        .map_err(|_| parse_err(1, 1, "order does not fit an integer"))?;
    if n == 0 || n > MAX_ORDER {
        return Err(parse_err(1, 1, format!("order {n} outside 1..={MAX_ORDER}")));
    }
    let (body, tail) = rest
        .split_once('\n')
        .ok_or_else(|| parse_err(2, rest.len() + 1, "missing trailing newline"))?;
    let t = parse_pair_bits(n, body, 2)?;
    if !tail.is_empty() {
        return Err(parse_err(3, 1, "unexpected data after record"));
    }
    Ok(t)
}

/// Writes a TRNSET v1 header line (with newline).
pub fn trnset_header(n: usize, filter: &str) -> String {
    format!("TRNSET v1 n={n} filter={filter}\n")
}

/// Parses a TRNSET v1 document into its filter spec and tournaments.
pub fn parse_trnset(text: &str) -> Result<(usize, String, Vec<Tournament>)> {
    let mut lines = text.split_inclusive('\n');
    let header = lines
        .next()
        .ok_or_else(|| parse_err(1, 1, "empty TRNSET document"))?;
    let header = header
        .strip_suffix('\n')
        .ok_or_else(|| parse_err(1, header.len() + 1, "missing newline after header"))?;
    let rest = header
        .strip_prefix("TRNSET v1 n=")
        .ok_or_else(|| parse_err(1, 1, "expected `TRNSET v1 n=<n> filter=<spec>`"))?;
    let (n_text, filter) = rest
        .split_once(" filter=")
        .ok_or_else(|| parse_err(1, 13, "expected ` filter=<spec>` after order"))?;
    let n: usize = n_text
        .parse()
        .map_err(|_| parse_err(1, 13, "order must be a decimal integer"))?;
    let mut out = Vec::new();
    for (idx, raw) in lines.enumerate() {
        let line_no = idx + 2;
        let body = raw
            .strip_suffix('\n')
            .ok_or_else(|| parse_err(line_no, raw.len() + 1, "missing trailing newline"))?;
        out.push(parse_pair_bits(n, body, line_no)?);
    }
    Ok((n, filter.to_string(), out))
}
