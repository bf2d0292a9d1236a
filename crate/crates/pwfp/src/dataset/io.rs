//! CSV and libsvm readers plus a CSV writer.
//!
//! The CSV dialect is deliberately small: comma separated, optional single
//! header row, `.` decimal point, no quoting. Rows are samples; one column
//! holds the class token and every other column is a numeric feature.

use std::fs;
use std::path::Path;

use crate::dataset::{DataMatrix, LabelVector};
use crate::error::{Error, Result};

/// How to locate the label column of a CSV file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelColumn {
    /// 0-based column index.
    Index(usize),
    /// Header name; requires a header row.
    Name(String),
    /// The last column.
    Last,
}

impl std::str::FromStr for LabelColumn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("last") {
            Ok(LabelColumn::Last)
        } else if let Ok(idx) = s.parse::<usize>() {
            Ok(LabelColumn::Index(idx))
        } else if s.is_empty() {
            Err(Error::InvalidArgument("empty label column".into()))
        } else {
            Ok(LabelColumn::Name(s.to_string()))
        }
    }
}

/// Reads a labeled dataset from a CSV file.
pub fn load_csv(
    path: impl AsRef<Path>,
    label: &LabelColumn,
    has_header: bool,
) -> Result<(DataMatrix, LabelVector)> {
    let text = fs::read_to_string(path)?;
    parse_csv(&text, label, has_header)
}

/// Parses CSV text. Row numbers in errors are 1-based physical lines,
/// column numbers are 1-based.
pub fn parse_csv(
    text: &str,
    label: &LabelColumn,
    has_header: bool,
) -> Result<(DataMatrix, LabelVector)> {
    let mut lines = text.lines().enumerate();

    let header: Option<Vec<&str>> = if has_header {
        match lines.next() {
            Some((_, line)) => Some(line.split(',').map(str::trim).collect()),
            None => return Err(Error::Validation("file is empty".into())),
        }
    } else {
        None
    };

    let mut field_count: Option<usize> = header.as_ref().map(|h| h.len());
    let mut columns: Vec<Vec<f64>> = Vec::new();
    let mut tokens: Vec<String> = Vec::new();

    let mut label_idx: Option<usize> = match label {
        LabelColumn::Index(i) => Some(*i),
        LabelColumn::Name(name) => {
            let header = header.as_ref().ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "label column `{}` addressed by name but the file has no header",
                    name
                ))
            })?;
            Some(header.iter().position(|h| h == name).ok_or_else(|| {
                Error::Validation(format!("label column `{}` not found in header", name))
            })?)
        }
        LabelColumn::Last => None,
    };

    for (line_no, line) in lines {
        let row = line_no + 1; // 1-based physical line
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        match field_count {
            None => field_count = Some(fields.len()),
            Some(expected) if fields.len() != expected => {
                return Err(Error::parse(
                    format!("row {}", row),
                    format!("ragged row: {} fields, expected {}", fields.len(), expected),
                ));
            }
            _ => {}
        }
        let expected = field_count.unwrap();
        if expected < 2 {
            return Err(Error::Validation(
                "need at least one feature column and one label column".into(),
            ));
        }
        let lcol = *label_idx.get_or_insert(expected - 1);
        if lcol >= expected {
            return Err(Error::InvalidArgument(format!(
                "label column index {} out of range for {} columns",
                lcol, expected
            )));
        }

        let mut sample = Vec::with_capacity(expected - 1);
        for (col, field) in fields.iter().enumerate() {
            if col == lcol {
                tokens.push((*field).to_string());
                continue;
            }
            let value: f64 = field.parse().map_err(|_| {
                Error::parse(
                    format!("row {}, column {}", row, col + 1),
                    format!("non-numeric feature cell `{}`", field),
                )
            })?;
            if !value.is_finite() {
                return Err(Error::parse(
                    format!("row {}, column {}", row, col + 1),
                    "non-finite feature value".to_string(),
                ));
            }
            sample.push(value);
        }
        columns.push(sample);
    }

    finish_dataset(columns, tokens)
}

/// Reads a dataset in the sparse `label index:value` line format.
///
/// Indices are 1-based and must be strictly ascending within a line; absent
/// indices load as zero and the feature count is the largest index seen.
pub fn load_libsvm(path: impl AsRef<Path>) -> Result<(DataMatrix, LabelVector)> {
    let text = fs::read_to_string(path)?;
    parse_libsvm(&text)
}

/// Parses libsvm-format text. Line numbers in errors are 1-based.
pub fn parse_libsvm(text: &str) -> Result<(DataMatrix, LabelVector)> {
    let mut rows: Vec<Vec<(usize, f64)>> = Vec::new();
    let mut tokens: Vec<String> = Vec::new();
    let mut max_index = 0usize;

    for (line_no, line) in text.lines().enumerate() {
        let row = line_no + 1;
        let mut parts = line.split_whitespace();
        let label = match parts.next() {
            Some(tok) => tok,
            None => continue, // blank line
        };
        tokens.push(label.to_string());

        let mut entries: Vec<(usize, f64)> = Vec::new();
        let mut last_index = 0usize;
        for part in parts {
            let (idx_str, val_str) = part.split_once(':').ok_or_else(|| {
                Error::parse(
                    format!("line {}", row),
                    format!("expected index:value, got `{}`", part),
                )
            })?;
            let idx: usize = idx_str.parse().map_err(|_| {
                Error::parse(
                    format!("line {}", row),
                    format!("bad feature index `{}`", idx_str),
                )
            })?;
            if idx == 0 {
                return Err(Error::parse(
                    format!("line {}", row),
                    "feature indices are 1-based; found index 0".to_string(),
                ));
            }
            if idx <= last_index {
                return Err(Error::parse(
                    format!("line {}", row),
                    format!("non-ascending feature index {} after {}", idx, last_index),
                ));
            }
            let value: f64 = val_str.parse().map_err(|_| {
                Error::parse(
                    format!("line {}", row),
                    format!("bad feature value `{}`", val_str),
                )
            })?;
            if !value.is_finite() {
                return Err(Error::parse(
                    format!("line {}", row),
                    "non-finite feature value".to_string(),
                ));
            }
            last_index = idx;
            entries.push((idx, value));
        }
        max_index = max_index.max(last_index);
        rows.push(entries);
    }

    if rows.is_empty() {
        return Err(Error::Validation("fewer than 2 samples (file is empty)".into()));
    }
    if max_index == 0 {
        return Err(Error::Validation("no feature indices present".into()));
    }

    let columns: Vec<Vec<f64>> = rows
        .into_iter()
        .map(|entries| {
            let mut col = vec![0.0; max_index];
            for (idx, value) in entries {
                col[idx - 1] = value;
            }
            col
        })
        .collect();

    finish_dataset(columns, tokens)
}

fn finish_dataset(columns: Vec<Vec<f64>>, tokens: Vec<String>) -> Result<(DataMatrix, LabelVector)> {
    if columns.len() < 2 {
        return Err(Error::Validation(format!(
            "fewer than 2 samples (got {})",
            columns.len()
        )));
    }
    let matrix = DataMatrix::from_columns(&columns)?;
    let labels = LabelVector::from_tokens(&tokens)?;
    if labels.class_count() < 2 {
        return Err(Error::Validation(format!(
            "fewer than 2 classes (got {})",
            labels.class_count()
        )));
    }
    Ok((matrix, labels))
}

/// Writes a dataset as headerless CSV, features first and the raw label
/// token last. Floats use shortest round-trip formatting, so reloading with
/// [`load_csv`] reproduces the matrix exactly.
pub fn save_csv(path: impl AsRef<Path>, x: &DataMatrix, y: &LabelVector) -> Result<()> {
    if x.samples() != y.len() {
        return Err(Error::InvalidArgument(format!(
            "matrix has {} samples but label vector has {}",
            x.samples(),
            y.len()
        )));
    }
    let mut out = String::new();
    for j in 0..x.samples() {
        for v in x.column(j) {
            out.push_str(&format!("{},", v));
        }
        out.push_str(y.token(y.ids()[j]));
        out.push('\n');
    }
    crate::output::write_atomic(path, out.as_bytes())
}
