//! Labeled tabular datasets: loading, validation, normalization and splits.
//!
//! A dataset is a [`DataMatrix`] (features by samples, column-major so each
//! sample is a contiguous slice) plus a [`LabelVector`] whose class ids are
//! canonicalized to `1..=c` in first-appearance order. Everything downstream
//! consumes these two types and treats them as immutable.

mod io;
mod normalize;
mod split;

pub use io::{load_csv, load_libsvm, parse_csv, parse_libsvm, save_csv, LabelColumn};
pub use normalize::{zscore_normalize, Normalization, CONSTANT_VARIANCE_TOL};
pub use split::{stratified_split, SplitMode, SplitSpec};

use crate::error::{Error, Result};

/// Dense feature matrix with `features` rows and `samples` columns.
///
/// Storage is column-major: `column(j)` returns the j-th sample as a
/// contiguous slice, which is the access pattern of every pairwise kernel.
/// All entries are finite; constructors reject NaN and infinities.
#[derive(Debug, Clone, PartialEq)]
pub struct DataMatrix {
    values: Vec<f64>,
    features: usize,
    samples: usize,
}

impl DataMatrix {
    /// Builds a matrix from sample columns (each of length `features`).
    pub fn from_columns(columns: &[Vec<f64>]) -> Result<Self> {
        if columns.is_empty() {
            return Err(Error::Validation("dataset has no samples".into()));
        }
        let features = columns[0].len();
        if features == 0 {
            return Err(Error::Validation("dataset has no features".into()));
        }
        let mut values = Vec::with_capacity(features * columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != features {
                return Err(Error::Validation(format!(
                    "sample {} has {} features, expected {}",
                    j + 1,
                    col.len(),
                    features
                )));
            }
            values.extend_from_slice(col);
        }
        Self::from_column_major(values, features, columns.len())
    }

    /// Builds a matrix from feature rows (each of length `samples`).
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Validation("dataset has no features".into()));
        }
        let samples = rows[0].len();
        let columns: Vec<Vec<f64>> = (0..samples)
            .map(|j| {
                rows.iter()
                    .map(|r| r.get(j).copied().unwrap_or(f64::NAN))
                    .collect()
            })
            .collect();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != samples {
                return Err(Error::Validation(format!(
                    "feature row {} has {} samples, expected {}",
                    i + 1,
                    row.len(),
                    samples
                )));
            }
        }
        Self::from_columns(&columns)
    }

    /// Takes ownership of column-major storage.
    pub fn from_column_major(values: Vec<f64>, features: usize, samples: usize) -> Result<Self> {
        if features == 0 || samples == 0 {
            return Err(Error::Validation("matrix dimensions must be nonzero".into()));
        }
        if values.len() != features * samples {
            return Err(Error::InvalidArgument(format!(
                "storage length {} does not match {}x{}",
                values.len(),
                features,
                samples
            )));
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Validation(format!(
                "non-finite value at feature {}, sample {}",
                pos % features + 1,
                pos / features + 1
            )));
        }
        Ok(DataMatrix {
            values,
            features,
            samples,
        })
    }

    /// Feature count (rows).
    pub fn features(&self) -> usize {
        self.features
    }

    /// Sample count (columns).
    pub fn samples(&self) -> usize {
        self.samples
    }

    /// The j-th sample as a contiguous slice of length `features()`.
    pub fn column(&self, j: usize) -> &[f64] {
        let start = j * self.features;
        &self.values[start..start + self.features]
    }

    /// Value of feature `i` in sample `j`.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.features + i]
    }

    /// Iterates the values of feature `i` across all samples (strided).
    pub fn feature_iter(&self, i: usize) -> impl Iterator<Item = f64> + '_ {
        self.values.iter().skip(i).step_by(self.features).copied()
    }

    /// Copies feature `i` into a vector.
    pub fn feature(&self, i: usize) -> Vec<f64> {
        self.feature_iter(i).collect()
    }

    /// New matrix keeping only the given sample columns, in the given order.
    pub fn select_columns(&self, indices: &[usize]) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::InvalidArgument("empty column selection".into()));
        }
        let mut values = Vec::with_capacity(self.features * indices.len());
        for &j in indices {
            if j >= self.samples {
                return Err(Error::InvalidArgument(format!(
                    "sample index {} out of range for {} samples",
                    j, self.samples
                )));
            }
            values.extend_from_slice(self.column(j));
        }
        Ok(DataMatrix {
            values,
            features: self.features,
            samples: indices.len(),
        })
    }

    /// New matrix keeping only the given feature rows, in the given order.
    pub fn select_features(&self, indices: &[usize]) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::InvalidArgument("empty feature selection".into()));
        }
        for &i in indices {
            if i >= self.features {
                return Err(Error::InvalidArgument(format!(
                    "feature index {} out of range for {} features",
                    i, self.features
                )));
            }
        }
        let mut values = Vec::with_capacity(indices.len() * self.samples);
        for j in 0..self.samples {
            let col = self.column(j);
            values.extend(indices.iter().map(|&i| col[i]));
        }
        Ok(DataMatrix {
            values,
            features: indices.len(),
            samples: self.samples,
        })
    }
}

/// Per-sample class labels, canonicalized to contiguous ids `1..=c`.
///
/// Canonicalization assigns ids in first-appearance order of the raw tokens,
/// so two samples share an id exactly when they shared a raw token. The raw
/// tokens are kept for error messages and for writing datasets back out.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelVector {
    ids: Vec<usize>,
    class_count: usize,
    tokens: Vec<String>,
}

impl LabelVector {
    /// Canonicalizes raw class tokens in first-appearance order.
    pub fn from_tokens<S: AsRef<str>>(raw: &[S]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::Validation("label vector is empty".into()));
        }
        let mut tokens: Vec<String> = Vec::new();
        let mut ids = Vec::with_capacity(raw.len());
        for tok in raw {
            let tok = tok.as_ref();
            let id = match tokens.iter().position(|t| t == tok) {
                Some(pos) => pos + 1,
                None => {
                    tokens.push(tok.to_string());
                    tokens.len()
                }
            };
            ids.push(id);
        }
        let class_count = tokens.len();
        Ok(LabelVector {
            ids,
            class_count,
            tokens,
        })
    }

    /// Builds from already-canonical ids; every id in `1..=max` must occur.
    pub fn from_ids(ids: Vec<usize>) -> Result<Self> {
        if ids.is_empty() {
            return Err(Error::Validation("label vector is empty".into()));
        }
        let c = *ids.iter().max().unwrap();
        if ids.iter().any(|&id| id == 0) {
            return Err(Error::Validation("class ids must start at 1".into()));
        }
        for k in 1..=c {
            if !ids.contains(&k) {
                return Err(Error::Validation(format!(
                    "class ids are not contiguous: {} is missing",
                    k
                )));
            }
        }
        let tokens = (1..=c).map(|k| k.to_string()).collect();
        Ok(LabelVector {
            ids,
            class_count: c,
            tokens,
        })
    }

    pub fn ids(&self) -> &[usize] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Number of distinct classes `c`.
    pub fn class_count(&self) -> usize {
        self.class_count
    }

    /// Raw token for class id `k` (1-based).
    pub fn token(&self, k: usize) -> &str {
        &self.tokens[k - 1]
    }

    /// Sample count per class id, indexed by `k - 1`.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.class_count];
        for &id in &self.ids {
            sizes[id - 1] += 1;
        }
        sizes
    }

    /// Positions of the samples belonging to class `k`, ascending.
    pub fn class_indices(&self, k: usize) -> Vec<usize> {
        self.ids
            .iter()
            .enumerate()
            .filter(|(_, &id)| id == k)
            .map(|(j, _)| j)
            .collect()
    }

    /// Subset of labels at `indices`, keeping ids, class count and tokens.
    ///
    /// Ids stay stable so train/test subsets of one dataset agree on what
    /// each class id means, even if a subset misses a class entirely.
    pub fn select(&self, indices: &[usize]) -> Result<Self> {
        let mut ids = Vec::with_capacity(indices.len());
        for &j in indices {
            match self.ids.get(j) {
                Some(&id) => ids.push(id),
                None => {
                    return Err(Error::InvalidArgument(format!(
                        "sample index {} out of range for {} labels",
                        j,
                        self.ids.len()
                    )))
                }
            }
        }
        Ok(LabelVector {
            ids,
            class_count: self.class_count,
            tokens: self.tokens.clone(),
        })
    }
}
