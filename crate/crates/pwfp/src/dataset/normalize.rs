//! Z-score normalization with train-time statistics.
//!
//! Variances use the population convention (divide by n) throughout the
//! crate. Constant features are kept as all-zero rows rather than dropped
//! so feature indices stay stable across the pipeline.

use std::path::Path;

use crate::dataset::DataMatrix;
use crate::error::{Error, Result};

/// A feature whose variance is at or below this is treated as constant.
pub const CONSTANT_VARIANCE_TOL: f64 = 1e-12;

/// Per-feature means and population standard deviations fitted on one
/// matrix, applicable to another (typically: fit on train, apply to test).
#[derive(Debug, Clone, PartialEq)]
pub struct Normalization {
    means: Vec<f64>,
    stds: Vec<f64>,
}

impl Normalization {
    /// Fits means and population standard deviations; requires n >= 2.
    pub fn fit(x: &DataMatrix) -> Result<Self> {
        if x.samples() < 2 {
            return Err(Error::Validation(
                "normalization needs at least 2 samples".into(),
            ));
        }
        let d = x.features();
        let n = x.samples() as f64;
        let mut means = vec![0.0; d];
        let mut stds = vec![0.0; d];
        for i in 0..d {
            let sum: f64 = x.feature_iter(i).sum();
            let mean = sum / n;
            let var: f64 = x.feature_iter(i).map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
            means[i] = mean;
            stds[i] = var.sqrt();
        }
        Ok(Normalization { means, stds })
    }

    pub fn means(&self) -> &[f64] {
        &self.means
    }

    pub fn stds(&self) -> &[f64] {
        &self.stds
    }

    /// Whether feature `i` was constant (variance within tolerance) at fit time.
    pub fn is_constant(&self, i: usize) -> bool {
        self.stds[i] * self.stds[i] <= CONSTANT_VARIANCE_TOL
    }

    /// Indices of features flagged constant at fit time.
    pub fn constant_features(&self) -> Vec<usize> {
        (0..self.stds.len()).filter(|&i| self.is_constant(i)).collect()
    }

    /// Applies the fitted transform: `(v - mean) / std`, with constant
    /// features mapped to zero.
    pub fn apply(&self, x: &DataMatrix) -> Result<DataMatrix> {
        let d = self.means.len();
        if x.features() != d {
            return Err(Error::InvalidArgument(format!(
                "normalization fitted on {} features, input has {}",
                d,
                x.features()
            )));
        }
        let mut values = Vec::with_capacity(d * x.samples());
        for j in 0..x.samples() {
            let col = x.column(j);
            for i in 0..d {
                if self.is_constant(i) {
                    values.push(0.0);
                } else {
                    values.push((col[i] - self.means[i]) / self.stds[i]);
                }
            }
        }
        DataMatrix::from_column_major(values, d, x.samples())
    }

    /// Two-row CSV: means on the first line, stds on the second.
    pub fn to_csv_string(&self) -> String {
        let join = |v: &[f64]| {
            v.iter()
                .map(|x| format!("{}", x))
                .collect::<Vec<_>>()
                .join(",")
        };
        format!("{}\n{}\n", join(&self.means), join(&self.stds))
    }

    pub fn from_csv_str(text: &str) -> Result<Self> {
        let mut rows = text.lines();
        let parse_row = |line: Option<&str>, what: &str| -> Result<Vec<f64>> {
            let line = line.ok_or_else(|| {
                Error::parse("normalization csv".to_string(), format!("missing {} row", what))
            })?;
            line.split(',')
                .map(|f| {
                    f.trim().parse::<f64>().map_err(|_| {
                        Error::parse(
                            "normalization csv".to_string(),
                            format!("bad value `{}` in {} row", f, what),
                        )
                    })
                })
                .collect()
        };
        let means = parse_row(rows.next(), "means")?;
        let stds = parse_row(rows.next(), "stds")?;
        if means.len() != stds.len() {
            return Err(Error::Validation(
                "means and stds rows have different lengths".into(),
            ));
        }
        Ok(Normalization { means, stds })
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        crate::output::write_atomic(path, self.to_csv_string().as_bytes())
    }

    pub fn read_csv(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_csv_str(&std::fs::read_to_string(path)?)
    }
}

/// Normalizes every feature to zero mean and unit population variance,
/// returning the transformed matrix and the fitted statistics.
pub fn zscore_normalize(x: &DataMatrix) -> Result<(DataMatrix, Normalization)> {
    let norm = Normalization::fit(x)?;
    let out = norm.apply(x)?;
    Ok((out, norm))
}
