//! Matrix input formats: a plain-text layout and a JSON object, both exact
//! (arbitrary-precision entries, decimal strings welcome in JSON).

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::Int;

/// Plain text: a header line `m n`, then `m` lines of `n` whitespace-
/// separated integers. Blank lines are ignored; anything else is an error.
pub fn parse_matrix_text(input: &str) -> Result<Matrix<Int>> {
    let mut lines = input.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty input".into()))?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    let [m, n] = dims[..] else {
        return Err(Error::Parse(format!(
            "header must be `m n`, got {header:?}"
        )));
    };
    let (m, n) = (parse_dim(m)?, parse_dim(n)?);
    let mut rows = Vec::with_capacity(m);
    for line in lines {
        if rows.len() == m {
            return Err(Error::Parse(format!("more than {m} rows of data")));
        }
        let row: Result<Vec<Int>> = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<Int>()
                    .map_err(|_| Error::Parse(format!("bad integer {tok:?}")))
            })
            .collect();
        let row = row?;
        if row.len() != n {
            return Err(Error::Parse(format!(
                "row {} has {} entries, expected {n}",
                rows.len() + 1,
                row.len()
            )));
        }
        rows.push(row);
    }
    if rows.len() != m {
        return Err(Error::Parse(format!(
            "got {} rows of data, expected {m}",
            rows.len()
        )));
    }
    Matrix::from_rows(rows)
}

fn parse_dim(tok: &str) -> Result<usize> {
    let v: usize = tok
        .parse()
        .map_err(|_| Error::Parse(format!("bad dimension {tok:?}")))?;
    if v == 0 {
        return Err(Error::Parse("zero dimension".into()));
    }
    Ok(v)
}

#[derive(Deserialize)]
struct MatrixFile {
    matrix: Vec<Vec<Int>>,
}

/// JSON: an object `{"matrix": [[…], …]}` whose entries are numbers or
/// decimal strings (use strings beyond 64 bits).
pub fn parse_matrix_json(input: &str) -> Result<Matrix<Int>> {
    let file: MatrixFile =
        serde_json::from_str(input).map_err(|e| Error::Parse(e.to_string()))?;
    if file.matrix.is_empty() || file.matrix[0].is_empty() {
        return Err(Error::Parse("empty matrix".into()));
    }
    Matrix::from_rows(file.matrix)
}

/// Auto-detect: leading `{` means JSON, anything else the text format.
pub fn parse_matrix(input: &str) -> Result<Matrix<Int>> {
    if input.trim_start().starts_with('{') {
        parse_matrix_json(input)
    } else {
        parse_matrix_text(input)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let m = parse_matrix_text("2 4\n2 3 5 4\n3 -5 2 -7\n").unwrap();
        assert_eq!(m, Matrix::from_i64_rows(&[&[2, 3, 5, 4], &[3, -5, 2, -7]]));
    }

    #[test]
    fn text_tolerates_blank_lines_and_padding() {
        let m = parse_matrix_text("\n 1 2 \n\n  7 -9 \n\n").unwrap();
        assert_eq!(m, Matrix::from_i64_rows(&[&[7, -9]]));
    }

    #[test]
    fn text_rejects_malformed_input() {
        assert!(parse_matrix_text("").is_err());
        assert!(parse_matrix_text("2\n1 2\n3 4\n").is_err());
        assert!(parse_matrix_text("0 2\n").is_err());
        assert!(parse_matrix_text("2 2\n1 2\n3\n").is_err()); // ragged
        assert!(parse_matrix_text("1 2\n1 2\n3 4\n").is_err()); // extra row
        assert!(parse_matrix_text("2 2\n1 2\n").is_err()); // missing row
        assert!(parse_matrix_text("1 2\n1 x\n").is_err());
    }

    #[test]
    fn json_accepts_numbers_and_decimal_strings() {
        let m = parse_matrix_json(
            r#"{"matrix": [[1, "2"], ["-170141183460469231731687303715884105727", 4]]}"#,
        )
        .unwrap();
        assert_eq!(m.rows(), 2);
        assert_eq!(m[(0, 1)], Int::from(2));
        assert_eq!(
            m[(1, 0)].to_string(),
            "-170141183460469231731687303715884105727"
        );
    }

    #[test]
    fn json_rejects_malformed_input() {
        assert!(parse_matrix_json(r#"{"matrix": []}"#).is_err());
        assert!(parse_matrix_json(r#"{"matrix": [[1, 2], [3]]}"#).is_err());
        assert!(parse_matrix_json(r#"{"rows": [[1]]}"#).is_err());
        assert!(parse_matrix_json(r#"{"matrix": [["1.5"]]}"#).is_err());
    }

    #[test]
    fn auto_detection_picks_the_right_format() {
        let text = parse_matrix("1 2\n5 6\n").unwrap();
        let json = parse_matrix(r#" {"matrix": [[5, 6]]}"#).unwrap();
        assert_eq!(text, json);
    }
}
