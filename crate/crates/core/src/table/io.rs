use std::fs;
use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum TableIoError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("index {value} at line {line}, column {column} is out of range for order {n}")]
    IndexOutOfRange { line: usize, column: usize, value: usize, n: usize },
}

/// Parses the text table format.
///
/// ```text
/// # comment lines start with '#'
/// 4
/// 0 1 2 3
/// 1 2 3 0
/// 2 3 0 1
/// 3 0 1 2
/// ```
///
/// Blank lines are skipped. Lines and columns in errors are 1-based.
pub fn parse_table(text: &str) -> Result<Vec<Vec<usize>>, TableIoError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim_start();
            !t.is_empty() && !t.starts_with('#')
        });

    let (header_line, header) = lines.next().ok_or(TableIoError::Parse {
        line: 1,
        column: 1,
        message: "missing order line".into(),
    })?;
    let mut header_tokens = tokens(header);
    let (col, tok) = header_tokens.next().unwrap();
    let n: usize = tok.parse().map_err(|_| TableIoError::Parse {
        line: header_line,
        column: col,
        message: format!("expected the table order, found {tok:?}"),
    })?;
    if let Some((col, tok)) = header_tokens.next() {
        return Err(TableIoError::Parse {
            line: header_line,
            column: col,
            message: format!("unexpected {tok:?} after the table order"),
        });
    }
    if n == 0 {
        return Err(TableIoError::Parse {
            line: header_line,
            column: col,
            message: "table order must be positive".into(),
        });
    }

    let mut rows = Vec::with_capacity(n);
    let mut last_line = header_line;
    for (line, text) in lines {
        last_line = line;
        if rows.len() == n {
            return Err(TableIoError::Parse {
                line,
                column: 1,
                message: format!("more than {n} rows"),
            });
        }
        let mut row = Vec::with_capacity(n);
        let mut end_col = 1;
        for (column, tok) in tokens(text) {
            let value: usize = tok.parse().map_err(|_| TableIoError::Parse {
                line,
                column,
                message: format!("expected an element index, found {tok:?}"),
            })?;
            if value >= n {
                return Err(TableIoError::IndexOutOfRange { line, column, value, n });
            }
            if row.len() == n {
                return Err(TableIoError::Parse {
                    line,
                    column,
                    message: format!("row has more than {n} entries"),
                });
            }
            row.push(value);
            end_col = column + tok.len();
        }
        if row.len() < n {
            return Err(TableIoError::Parse {
                line,
                column: end_col,
                message: format!("row has {} entries, expected {n}", row.len()),
            });
        }
        rows.push(row);
    }
    if rows.len() < n {
        return Err(TableIoError::Parse {
            line: last_line + 1,
            column: 1,
            message: format!("expected {n} rows, found {}", rows.len()),
        });
    }
    Ok(rows)
}

/// Whitespace-separated tokens with their 1-based starting columns.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    line.split_whitespace().map(move |tok| {
        let offset = tok.as_ptr() as usize - line.as_ptr() as usize;
        (line[..offset].chars().count() + 1, tok)
    })
}

pub fn format_table(rows: &[Vec<usize>]) -> String {
    let mut out = format!("{}\n", rows.len());
    for row in rows {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

pub fn read_table(path: impl AsRef<Path>) -> Result<Vec<Vec<usize>>, TableIoError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| TableIoError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_table(&text)
}

pub fn write_table(rows: &[Vec<usize>], path: impl AsRef<Path>) -> Result<(), TableIoError> {
    let path = path.as_ref();
    fs::write(path, format_table(rows)).map_err(|source| TableIoError::Io {
        path: path.display().to_string(),
        source,
    })
}
