//! Problem files: a symmetric circulant matrix and a right-hand side.
//!
//! Two encodings are accepted.
//!
//! Structured text (TOML), the canonical form:
//!
//! ```text
//! n = 4
//! first_row = [4.0, 1.0, 0.0, 1.0]
//! rhs = [1.0, 2.0, 3.0, 4.0]      # or: rhs = { constant = 6.0 }
//! ```
//!
//! Flat CSV: the first line is the first row, the second line is either the
//! `n` right-hand-side values or `constant,<beta>`. Lines starting with `#`
//! are ignored.
//!
//! Floats are written in shortest round-trip form, so parsing a written file
//! reproduces every value bit for bit.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use circsym_core::{CirculantSpec, RealVector};

#[derive(Debug, Error)]
pub enum ProblemError {
    #[error("cannot parse {format} input: {message}")]
    Parse {
        format: &'static str,
        message: String,
    },

    #[error("invalid {field}: {message}")]
    Field {
        field: &'static str,
        message: String,
    },
}

fn field(field: &'static str, message: impl ToString) -> ProblemError {
    ProblemError::Field {
        field,
        message: message.to_string(),
    }
}

/// Right-hand side of a problem file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Rhs {
    Values(Vec<f64>),
    Constant { constant: f64 },
}

/// Serialized form of `(A, b)`. `rhs` may be absent for inputs that only
/// describe a matrix, such as `spectrum` inputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub n: usize,
    pub first_row: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<Rhs>,
}

/// Input encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Toml,
    Csv,
}

impl FromStr for InputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "toml" => Ok(InputFormat::Toml),
            "csv" => Ok(InputFormat::Csv),
            other => Err(format!("unknown input format '{other}'")),
        }
    }
}

impl InputFormat {
    /// Guesses from the file name, falling back to content: a document with
    /// a `key = value` line is structured text, anything else is CSV.
    pub fn detect(path: Option<&str>, content: &str) -> Self {
        if let Some(ext) = path.and_then(|p| p.rsplit_once('.')).map(|(_, e)| e) {
            match ext.to_ascii_lowercase().as_str() {
                "csv" => return InputFormat::Csv,
                "toml" => return InputFormat::Toml,
                _ => {}
            }
        }
        let looks_structured = content
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('#'))
            .is_some_and(|l| l.contains('='));
        if looks_structured {
            InputFormat::Toml
        } else {
            InputFormat::Csv
        }
    }
}

impl ProblemFile {
    pub fn new(first_row: Vec<f64>, rhs: Option<Rhs>) -> Self {
        Self {
            n: first_row.len(),
            first_row,
            rhs,
        }
    }

    pub fn parse(content: &str, format: InputFormat) -> Result<Self, ProblemError> {
        match format {
            InputFormat::Toml => Self::parse_toml(content),
            InputFormat::Csv => Self::parse_csv(content),
        }
    }

    pub fn parse_toml(content: &str) -> Result<Self, ProblemError> {
        toml::from_str(content).map_err(|e| ProblemError::Parse {
            format: "structured-text",
            message: e.to_string().trim_end().to_string(),
        })
    }

    pub fn parse_csv(content: &str) -> Result<Self, ProblemError> {
        let mut lines = content
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let first = lines.next().ok_or_else(|| ProblemError::Parse {
            format: "csv",
            message: "empty input".into(),
        })?;
        let first_row = parse_floats(first.split(','), "first_row")?;
        let rhs = match lines.next() {
            None => None,
            Some(line) => {
                let cells: Vec<&str> = line.split(',').map(str::trim).collect();
                if cells.first() == Some(&"constant") {
                    if cells.len() != 2 {
                        return Err(field("rhs", "expected 'constant,<value>'"));
                    }
                    let constant = parse_float(cells[1], "rhs", 0)?;
                    Some(Rhs::Constant { constant })
                } else {
                    Some(Rhs::Values(parse_floats(cells.into_iter(), "rhs")?))
                }
            }
        };
        if let Some(extra) = lines.next() {
            return Err(ProblemError::Parse {
                format: "csv",
                message: format!("unexpected third line '{extra}'"),
            });
        }
        Ok(Self::new(first_row, rhs))
    }

    /// Validated coefficient matrix.
    pub fn spec(&self) -> Result<CirculantSpec, ProblemError> {
        if self.first_row.len() != self.n {
            return Err(field(
                "first_row",
                format!("has {} entries but n = {}", self.first_row.len(), self.n),
            ));
        }
        CirculantSpec::new(self.first_row.clone()).map_err(|e| field("first_row", e))
    }

    /// Validated right-hand side, expanded to `n` entries.
    pub fn rhs_vector(&self) -> Result<RealVector, ProblemError> {
        match &self.rhs {
            None => Err(field("rhs", "missing")),
            Some(Rhs::Values(values)) => {
                if values.len() != self.n {
                    return Err(field(
                        "rhs",
                        format!("has {} entries but n = {}", values.len(), self.n),
                    ));
                }
                RealVector::new(values.clone()).map_err(|e| field("rhs", e))
            }
            Some(Rhs::Constant { constant }) => {
                RealVector::constant(self.n, *constant).map_err(|e| field("rhs", e))
            }
        }
    }

    /// Canonical structured-text encoding.
    pub fn to_toml(&self) -> String {
        let mut out = String::new();
        writeln!(out, "n = {}", self.n).unwrap();
        writeln!(out, "first_row = {}", float_array(&self.first_row)).unwrap();
        match &self.rhs {
            Some(Rhs::Values(v)) => writeln!(out, "rhs = {}", float_array(v)).unwrap(),
            Some(Rhs::Constant { constant }) => {
                writeln!(out, "rhs = {{ constant = {} }}", fmt_float(*constant)).unwrap()
            }
            None => {}
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = float_list(&self.first_row);
        out.push('\n');
        match &self.rhs {
            Some(Rhs::Values(v)) => {
                out.push_str(&float_list(v));
                out.push('\n');
            }
            Some(Rhs::Constant { constant }) => {
                writeln!(out, "constant,{}", fmt_float(*constant)).unwrap();
            }
            None => {}
        }
        out
    }
}

/// Shortest decimal that parses back to the same `f64`.
pub fn fmt_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:?}")
    } else if v.is_nan() {
        "nan".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

pub fn float_array(values: &[f64]) -> String {
    let inner: Vec<String> = values.iter().map(|&v| fmt_float(v)).collect();
    format!("[{}]", inner.join(", "))
}

pub fn float_list(values: &[f64]) -> String {
    values
        .iter()
        .map(|&v| fmt_float(v))
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_float(cell: &str, name: &'static str, index: usize) -> Result<f64, ProblemError> {
    cell.trim().parse::<f64>().map_err(|_| {
        field(
            name,
            format!("entry {index} ('{}') is not a number", cell.trim()),
        )
    })
}

fn parse_floats<'a>(
    cells: impl Iterator<Item = &'a str>,
    name: &'static str,
) -> Result<Vec<f64>, ProblemError> {
    cells
        .enumerate()
        .map(|(i, c)| parse_float(c, name, i))
        .collect()
}
