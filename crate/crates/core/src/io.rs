//! Plain-text code files.
//!
//! ```text
//! # comment
//! p n k
//! <n-k stabilizer rows, 2n integers each, a-part then b-part>
//! ---
//! <2k extension rows>          (optional section)
//! ```
//!
//! When the extension section is absent the extension rows are computed.

use std::fmt::Write as _;

use crate::code::StabilizerCode;
use crate::error::{Error, Result};
use crate::gfp::{FpMatrix, PrimeField};

fn parse_err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

/// Splits a line into (1-based column, token) pairs.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn parse_row(lineno: usize, line: &str, width: usize, p: u32) -> Result<Vec<u64>> {
    let toks = tokens(line);
    if toks.len() != width {
        return Err(parse_err(
            lineno,
            1,
            format!("expected {width} entries, found {}", toks.len()),
        ));
    }
    toks.into_iter()
        .map(|(col, t)| {
            let v: u64 = t
                .parse()
                .map_err(|_| parse_err(lineno, col, format!("'{t}' is not a non-negative integer")))?;
            if v >= p as u64 {
                return Err(parse_err(lineno, col, format!("entry {v} is not a residue mod {p}")));
            }
            Ok(v)
        })
        .collect()
}

/// Parses a code file; see the module docs for the format.
pub fn parse_code(text: &str) -> Result<StabilizerCode> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));

    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, 1, "missing header line 'p n k'"))?;
    let htoks = tokens(header);
    if htoks.len() != 3 {
        return Err(parse_err(hline, 1, "header must be three integers 'p n k'"));
    }
    let mut nums = [0u64; 3];
    for (slot, (col, t)) in nums.iter_mut().zip(&htoks) {
        *slot = t
            .parse()
            .map_err(|_| parse_err(hline, *col, format!("'{t}' is not a non-negative integer")))?;
    }
    let [p, n, k] = nums;
    let field = PrimeField::try_from(u32::try_from(p).unwrap_or(u32::MAX))
        .map_err(|e| parse_err(hline, htoks[0].0, e.to_string()))?;
    let (n, k) = (n as usize, k as usize);
    if n == 0 || k > n {
        return Err(parse_err(
            hline,
            htoks[1].0,
            format!("need 1 <= n and k <= n, got n={n} k={k}"),
        ));
    }

    let mut stab_rows = Vec::new();
    let mut ext_rows = Vec::new();
    let mut in_ext = false;
    let mut last_line = hline;
    for (lineno, line) in lines {
        last_line = lineno;
        if line.trim() == "---" {
            if in_ext {
                return Err(parse_err(lineno, 1, "duplicate '---' separator"));
            }
            in_ext = true;
            continue;
        }
        let row = parse_row(lineno, line, 2 * n, field.modulus())?;
        if in_ext {
            ext_rows.push(row);
        } else {
            stab_rows.push(row);
        }
    }
    if stab_rows.len() != n - k {
        return Err(parse_err(
            last_line,
            1,
            format!("header promises {} stabilizer rows, found {}", n - k, stab_rows.len()),
        ));
    }
    if in_ext && ext_rows.len() != 2 * k {
        return Err(parse_err(
            last_line,
            1,
            format!(
                "expected {} extension rows after '---', found {}",
                2 * k,
                ext_rows.len()
            ),
        ));
    }

    let stab = FpMatrix::from_rows(field, 2 * n, &stab_rows)?;
    if in_ext {
        let ext = FpMatrix::from_rows(field, 2 * n, &ext_rows)?;
        StabilizerCode::from_full_matrix(field, n, k, stab, ext)
    } else {
        let code = StabilizerCode::from_stabilizer_matrix(stab)?;
        if code.k() != k {
            return Err(parse_err(
                hline,
                1,
                format!("rows imply k = {}, header says {k}", code.k()),
            ));
        }
        Ok(code)
    }
}

/// Writes a code in the file format, always including the extension section when `k > 0`.
pub fn write_code(code: &StabilizerCode) -> String {
    let mut s = String::new();
    writeln!(s, "{} {} {}", code.p(), code.n(), code.k()).unwrap();
    let emit = |s: &mut String, m: &FpMatrix| {
        for r in m.row_iter() {
            let line: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(s, "{}", line.join(" ")).unwrap();
        }
    };
    emit(&mut s, code.stab());
    if code.k() > 0 {
        s.push_str("---\n");
        emit(&mut s, code.ext());
    }
    s
}
