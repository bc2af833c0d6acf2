use super::{at_line, IoError};
use crate::msa::SubstitutionMatrix;

/// Parses a square substitution matrix: a header line of symbols, then one
/// row per symbol in header order, each starting with its symbol. Lines
/// starting with `#` and blank lines are skipped.
pub fn parse_matrix(text: &str) -> Result<SubstitutionMatrix, IoError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (header_line, header) = lines.next().ok_or_else(|| at_line(1, "empty matrix file"))?;
    let symbols: Vec<u8> = header
        .split_whitespace()
        .map(|t| match t.as_bytes() {
            [c] => Ok(c.to_ascii_uppercase()),
            _ => Err(at_line(header_line, format!("`{t}` is not a single symbol"))),
        })
        .collect::<Result<_, _>>()?;
    let n = symbols.len();
    let mut scores = Vec::with_capacity(n * n);
    let mut rows = 0;
    for (lineno, line) in lines {
        let mut tokens = line.split_whitespace();
        let sym = tokens.next().unwrap_or("");
        if rows == n {
            return Err(at_line(lineno, "more rows than header symbols"));
        }
        if sym.len() != 1 || sym.as_bytes()[0].to_ascii_uppercase() != symbols[rows] {
            return Err(at_line(
                lineno,
                format!("row starts with `{sym}`, expected `{}`", symbols[rows] as char),
            ));
        }
        let row: Vec<i32> = tokens
            .map(|t| t.parse().map_err(|_| at_line(lineno, format!("`{t}` is not an integer"))))
            .collect::<Result<_, _>>()?;
        if row.len() != n {
            return Err(at_line(lineno, format!("expected {n} scores, found {}", row.len())));
        }
        scores.extend(row);
        rows += 1;
    }
    if rows != n {
        return Err(at_line(header_line, format!("{n} header symbols but {rows} rows")));
    }
    SubstitutionMatrix::from_table(symbols, scores).map_err(|e| at_line(header_line, e.to_string()))
}

/// The square text layout read by [`parse_matrix`].
pub fn write_matrix(m: &SubstitutionMatrix) -> String {
    let syms = m.symbols();
    let mut out = String::from(" ");
    for &s in syms {
        out.push_str(&format!("{:>3}", s as char));
    }
    out.push('\n');
    for (i, &a) in syms.iter().enumerate() {
        out.push(a as char);
        for j in 0..syms.len() {
            out.push_str(&format!("{:>3}", m.table_score(i, j)));
        }
        out.push('\n');
    }
    out
}
