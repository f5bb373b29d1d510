//! Matrix sources: JSON files (or stdin) and the inline `a,b;c,d` shorthand.

use std::fs;
use std::io::Read;
use std::path::Path;

use ncsphere_core::{parse_rational, AlgebraKind, Rational, SkewRationalMatrix};
use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

/// On-disk input format. Entries are strings so that rationals stay exact;
/// plain JSON integers are accepted too, floats are not.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub n: usize,
    pub entries: Vec<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_tensor: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
}

/// A parsed and validated deformation matrix with its descriptor data.
#[derive(Clone, Debug)]
pub struct Input {
    pub theta: SkewRationalMatrix,
    pub n_tensor: BigUint,
    pub kind: AlgebraKind,
}

pub fn kind_name(kind: AlgebraKind) -> &'static str {
    match kind {
        AlgebraKind::Sphere => "sphere",
        AlgebraKind::Torus => "torus",
    }
}

pub fn parse_kind(s: &str) -> Result<AlgebraKind, CliError> {
    match s.trim().to_ascii_lowercase().as_str() {
        "sphere" => Ok(AlgebraKind::Sphere),
        "torus" => Ok(AlgebraKind::Torus),
        other => Err(CliError::Parse(format!(
            "unknown kind \"{other}\" (expected sphere or torus)"
        ))),
    }
}

pub fn parse_positive(s: &str, what: &str) -> Result<BigUint, CliError> {
    let v: BigUint = s
        .trim()
        .parse()
        .map_err(|_| CliError::Parse(format!("{what} \"{s}\" is not a positive integer")))?;
    if v.is_zero() {
        return Err(CliError::Parse(format!("{what} must be positive")));
    }
    Ok(v)
}

fn rational_at(text: &str, row: usize, col: usize) -> Result<Rational, CliError> {
    parse_rational(text)
        .map_err(|e| CliError::Parse(format!("entry ({}, {}): {e}: \"{text}\"", row + 1, col + 1)))
}

fn value_entry(v: &Value, row: usize, col: usize) -> Result<Rational, CliError> {
    match v {
        Value::String(s) => rational_at(s, row, col),
        Value::Number(x) if x.is_i64() || x.is_u64() => rational_at(&x.to_string(), row, col),
        other => Err(CliError::Parse(format!(
            "entry ({}, {}): expected a string like \"-3/7\" or an integer, found {other}",
            row + 1,
            col + 1
        ))),
    }
}

fn build_theta(n: usize, rows: Vec<Vec<Rational>>) -> Result<SkewRationalMatrix, CliError> {
    if n == 0 {
        return Err(CliError::Parse("matrix must have at least one row".into()));
    }
    if rows.len() != n {
        return Err(CliError::Parse(format!(
            "expected {n} rows, found {}",
            rows.len()
        )));
    }
    if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(CliError::Parse(format!(
            "row {} has {} entries, expected {n}",
            i + 1,
            row.len()
        )));
    }
    Ok(SkewRationalMatrix::new(
        n,
        rows.into_iter().flatten().collect(),
    )?)
}

impl MatrixFile {
    pub fn from_input(input: &Input) -> Self {
        let n = input.theta.n();
        MatrixFile {
            n,
            entries: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| Value::String(input.theta.get(i, j).to_string()))
                        .collect()
                })
                .collect(),
            n_tensor: Some(Value::String(input.n_tensor.to_string())),
            kind: Some(kind_name(input.kind).to_string()),
        }
    }

    pub fn into_input(self) -> Result<Input, CliError> {
        let rows = self
            .entries
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, v)| value_entry(v, i, j))
                    .collect()
            })
            .collect::<Result<Vec<Vec<Rational>>, CliError>>()?;
        let theta = build_theta(self.n, rows)?;
        let n_tensor = match &self.n_tensor {
            None => BigUint::from(1u32),
            Some(Value::String(s)) => parse_positive(s, "n_tensor")?,
            Some(Value::Number(x)) => parse_positive(&x.to_string(), "n_tensor")?,
            Some(other) => {
                return Err(CliError::Parse(format!(
                    "n_tensor must be an integer, found {other}"
                )))
            }
        };
        let kind = match &self.kind {
            None => AlgebraKind::Sphere,
            Some(k) => parse_kind(k)?,
        };
        Ok(Input {
            theta,
            n_tensor,
            kind,
        })
    }
}

/// Parses `"0,1/2;-1/2,0"`: rows split on `;`, entries on `,`.
pub fn parse_inline(text: &str) -> Result<SkewRationalMatrix, CliError> {
    let rows = text
        .split(';')
        .enumerate()
        .map(|(i, row)| {
            row.split(',')
                .enumerate()
                .map(|(j, e)| rational_at(e, i, j))
                .collect()
        })
        .collect::<Result<Vec<Vec<Rational>>, CliError>>()?;
    build_theta(rows.len(), rows)
}

pub fn parse_file_text(text: &str) -> Result<Input, CliError> {
    let file: MatrixFile =
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("input file: {e}")))?;
    file.into_input()
}

/// Reads a JSON matrix file; `-` means stdin.
pub fn read_source(path: &Path) -> Result<Input, CliError> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Io(format!("stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?
    };
    parse_file_text(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_and_file_agree() {
        let a = parse_inline("0,1/2;-1/2,0").unwrap();
        let b = parse_file_text(r#"{"n":2,"entries":[["0","1/2"],["-1/2",0]]}"#).unwrap();
        assert_eq!(a, b.theta);
        assert_eq!(b.kind, AlgebraKind::Sphere);
        assert_eq!(b.n_tensor, BigUint::from(1u32));
    }

    #[test]
    fn diagnostics_name_the_problem() {
        let msg = |r: Result<SkewRationalMatrix, CliError>| r.unwrap_err().to_string();
        assert!(msg(parse_inline("0,1/2;1/2,0")).contains("not skew-symmetric at entry (1, 2)"));
        assert!(msg(parse_inline("1,1/2;-1/2,0")).contains("diagonal entry (1, 1)"));
        assert!(msg(parse_inline("0,x;-1/2,0")).contains("entry (1, 2)"));
        assert!(msg(parse_inline("0,1/2;-1/2")).contains("row 2"));
        let floats = parse_file_text(r#"{"n":2,"entries":[["0",0.5],["-1/2","0"]]}"#);
        assert!(floats.unwrap_err().to_string().contains("entry (1, 2)"));
    }

    #[test]
    fn echo_round_trips() {
        let input = parse_file_text(
            r#"{"n":2,"entries":[["0","2/4"],["-1/2","0"]],"n_tensor":3,"kind":"torus"}"#,
        )
        .unwrap();
        let again = MatrixFile::from_input(&input).into_input().unwrap();
        assert_eq!(again.theta, input.theta);
        assert_eq!(again.n_tensor, BigUint::from(3u32));
        assert_eq!(again.kind, AlgebraKind::Torus);
    }
}
