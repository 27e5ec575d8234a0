//! Sparse text format: a `rows cols` header, then one `i j v` line per
//! nonzero entry (0-based indices). Lines starting with `#` are comments.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;

use super::matrix::IntMatrix;
use super::ZmatError;

pub fn write_matrix(m: &IntMatrix) -> String {
    write_matrix_with_comments(m, &[])
}

/// Like [`write_matrix`], with `# ...` comment lines before the header.
pub fn write_matrix_with_comments(m: &IntMatrix, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        for line in c.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
    let _ = writeln!(out, "{} {}", m.rows(), m.cols());
    for (i, j, v) in m.nonzeros() {
        let _ = writeln!(out, "{i} {j} {v}");
    }
    out
}

pub fn read_matrix(text: &str) -> Result<IntMatrix, ZmatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(n, l)| (n + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let err = |line: usize, message: String| ZmatError::Parse { line, message };
    let (hline, header) = lines
        .next()
        .ok_or_else(|| err(0, "missing `rows cols` header".into()))?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    let [r, c] = dims[..] else {
        return Err(err(hline, format!("expected `rows cols`, got `{header}`")));
    };
    let rows: usize = r
        .parse()
        .map_err(|_| err(hline, format!("bad row count `{r}`")))?;
    let cols: usize = c
        .parse()
        .map_err(|_| err(hline, format!("bad column count `{c}`")))?;
    let mut m = IntMatrix::zeros(rows, cols);
    let mut seen = std::collections::HashSet::new();
    for (n, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [i, j, v] = fields[..] else {
            return Err(err(n, format!("expected `i j v`, got `{line}`")));
        };
        let i: usize = i
            .parse()
            .map_err(|_| err(n, format!("bad row index `{i}`")))?;
        let j: usize = j
            .parse()
            .map_err(|_| err(n, format!("bad column index `{j}`")))?;
        let v: BigInt = v
            .parse()
            .map_err(|_| err(n, format!("bad integer `{v}`")))?;
        if i >= rows || j >= cols {
            return Err(err(n, format!("entry ({i}, {j}) outside {rows}x{cols}")));
        }
        if !seen.insert((i, j)) {
            return Err(err(n, format!("duplicate entry ({i}, {j})")));
        }
        if !v.is_zero() {
            m.set(i, j, v);
        }
    }
    Ok(m)
}
