//! Minimal classifiers for the evaluation harness.
//!
//! The linear SVM trains one-vs-rest hinge-loss models by stochastic
//! subgradient descent with step 1/(lambda t) and returns the averaged
//! iterate; it is deterministic given its seed. The nearest-centroid model
//! is a noise-free fallback for property tests.

use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::dataset::{DataMatrix, LabelVector};
use crate::error::{Error, Result};

/// Linear SVM hyperparameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvmParams {
    /// Regularization strength.
    pub lambda: f64,
    /// Passes over the training set.
    pub epochs: usize,
    /// Seed for the sampling order.
    pub seed: u64,
}

impl Default for SvmParams {
    fn default() -> Self {
        SvmParams {
            lambda: 0.01,
            epochs: 200,
            seed: 0,
        }
    }
}

/// One-vs-rest linear model: one weight vector and bias per training class.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearModel {
    class_ids: Vec<usize>,
    weights: Vec<Vec<f64>>,
    biases: Vec<f64>,
}

/// Per-class mean vectors over the selected features.
#[derive(Debug, Clone, PartialEq)]
pub struct CentroidModel {
    class_ids: Vec<usize>,
    centroids: Vec<Vec<f64>>,
}

/// Anything that can label a batch of samples.
pub trait Predictor {
    /// Feature count expected by the model.
    fn feature_count(&self) -> usize;

    /// Class id for one sample.
    fn predict_one(&self, sample: &[f64]) -> usize;

    /// Class ids for every column of `x`.
    fn predict(&self, x: &DataMatrix) -> Result<Vec<usize>> {
        if x.features() != self.feature_count() {
            return Err(Error::InvalidArgument(format!(
                "model expects {} features, input has {}",
                self.feature_count(),
                x.features()
            )));
        }
        Ok((0..x.samples()).map(|j| self.predict_one(x.column(j))).collect())
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn train_binary(
    x: &DataMatrix,
    targets: &[f64],
    params: &SvmParams,
    stream: u64,
) -> (Vec<f64>, f64) {
    // the bias is treated as the weight of an implicit constant-1 feature,
    // so it shrinks with the rest of the vector and the averaged iterate
    // is not polluted by the large first steps
    let d = x.features();
    let n = x.samples();
    let mut w = vec![0.0; d];
    let mut b = 0.0;
    let mut avg_w = vec![0.0; d];
    let mut avg_b = 0.0;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    rng.set_stream(stream);
    let mut order: Vec<usize> = (0..n).collect();
    let mut t = 0.0f64;

    for _ in 0..params.epochs {
        order.shuffle(&mut rng);
        for &j in &order {
            t += 1.0;
            let eta = 1.0 / (params.lambda * t);
            let target = targets[j];
            let col = x.column(j);
            let margin = target * (dot(&w, col) + b);
            let shrink = 1.0 - 1.0 / t; // (1 - eta * lambda)
            for wi in &mut w {
                *wi *= shrink;
            }
            b *= shrink;
            if margin < 1.0 {
                let step = eta * target;
                for (wi, &xi) in w.iter_mut().zip(col) {
                    *wi += step * xi;
                }
                b += step;
            }
            // running average of the iterates
            let inv_t = 1.0 / t;
            for (ai, &wi) in avg_w.iter_mut().zip(&w) {
                *ai += (wi - *ai) * inv_t;
            }
            avg_b += (b - avg_b) * inv_t;
        }
    }
    (avg_w, avg_b)
}

/// Trains one-vs-rest hinge-loss linear models.
///
/// Each class trains independently (and in parallel) on its own seeded
/// sampling stream, so results do not depend on thread scheduling.
pub fn fit_linear_svm(x: &DataMatrix, y: &LabelVector, params: &SvmParams) -> Result<LinearModel> {
    if x.samples() != y.len() {
        return Err(Error::InvalidArgument(format!(
            "matrix has {} samples but label vector has {}",
            x.samples(),
            y.len()
        )));
    }
    if params.lambda <= 0.0 || params.epochs == 0 {
        return Err(Error::InvalidArgument(
            "lambda must be positive and epochs nonzero".into(),
        ));
    }
    let mut class_ids: Vec<usize> = y.ids().to_vec();
    class_ids.sort_unstable();
    class_ids.dedup();
    if class_ids.len() < 2 {
        return Err(Error::Validation(
            "training data contains a single class".into(),
        ));
    }

    let trained: Vec<(Vec<f64>, f64)> = class_ids
        .par_iter()
        .map(|&k| {
            let targets: Vec<f64> = y
                .ids()
                .iter()
                .map(|&id| if id == k { 1.0 } else { -1.0 })
                .collect();
            train_binary(x, &targets, params, k as u64)
        })
        .collect();

    let (weights, biases) = trained.into_iter().unzip();
    Ok(LinearModel {
        class_ids,
        weights,
        biases,
    })
}

impl LinearModel {
    pub fn class_ids(&self) -> &[usize] {
        &self.class_ids
    }

    pub fn weights(&self, class_index: usize) -> &[f64] {
        &self.weights[class_index]
    }

    pub fn bias(&self, class_index: usize) -> f64 {
        self.biases[class_index]
    }

    /// Uniformly rescales all weights and biases (predictions are unchanged
    /// for positive factors).
    pub fn scaled(&self, factor: f64) -> LinearModel {
        LinearModel {
            class_ids: self.class_ids.clone(),
            weights: self
                .weights
                .iter()
                .map(|w| w.iter().map(|v| v * factor).collect())
                .collect(),
            biases: self.biases.iter().map(|b| b * factor).collect(),
        }
    }

    /// CSV rows `class,bias,w1,...,wm`.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::new();
        for (idx, &k) in self.class_ids.iter().enumerate() {
            out.push_str(&format!("{},{}", k, self.biases[idx]));
            for w in &self.weights[idx] {
                out.push_str(&format!(",{}", w));
            }
            out.push('\n');
        }
        out
    }

    pub fn from_csv_str(text: &str) -> Result<Self> {
        let mut class_ids = Vec::new();
        let mut weights = Vec::new();
        let mut biases = Vec::new();
        for (line_no, line) in text.lines().enumerate() {
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() < 3 {
                return Err(Error::parse(
                    format!("model csv line {}", line_no + 1),
                    "expected class,bias,weights...".to_string(),
                ));
            }
            let parse = |s: &str| -> Result<f64> {
                s.trim().parse().map_err(|_| {
                    Error::parse(
                        format!("model csv line {}", line_no + 1),
                        format!("bad number `{}`", s),
                    )
                })
            };
            class_ids.push(fields[0].trim().parse::<usize>().map_err(|_| {
                Error::parse(
                    format!("model csv line {}", line_no + 1),
                    format!("bad class id `{}`", fields[0]),
                )
            })?);
            biases.push(parse(fields[1])?);
            weights.push(fields[2..].iter().map(|f| parse(f)).collect::<Result<Vec<f64>>>()?);
        }
        if class_ids.is_empty() {
            return Err(Error::Validation("model csv is empty".into()));
        }
        Ok(LinearModel {
            class_ids,
            weights,
            biases,
        })
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        crate::output::write_atomic(path, self.to_csv_string().as_bytes())
    }
}

impl Predictor for LinearModel {
    fn feature_count(&self) -> usize {
        self.weights.first().map_or(0, Vec::len)
    }

    fn predict_one(&self, sample: &[f64]) -> usize {
        let mut best = 0usize;
        let mut best_score = f64::NEG_INFINITY;
        for (idx, &k) in self.class_ids.iter().enumerate() {
            let score = dot(&self.weights[idx], sample) + self.biases[idx];
            // strict comparison keeps the lower class id on ties
            if score > best_score {
                best_score = score;
                best = k;
            }
        }
        best
    }
}

/// Computes per-class mean vectors.
pub fn fit_nearest_centroid(x: &DataMatrix, y: &LabelVector) -> Result<CentroidModel> {
    if x.samples() != y.len() {
        return Err(Error::InvalidArgument(format!(
            "matrix has {} samples but label vector has {}",
            x.samples(),
            y.len()
        )));
    }
    let mut class_ids: Vec<usize> = y.ids().to_vec();
    class_ids.sort_unstable();
    class_ids.dedup();
    let centroids = class_ids
        .iter()
        .map(|&k| {
            let members = y.class_indices(k);
            let mut mean = vec![0.0; x.features()];
            for &j in &members {
                for (m, &v) in mean.iter_mut().zip(x.column(j)) {
                    *m += v;
                }
            }
            for m in &mut mean {
                *m /= members.len() as f64;
            }
            mean
        })
        .collect();
    Ok(CentroidModel {
        class_ids,
        centroids,
    })
}

impl CentroidModel {
    pub fn class_ids(&self) -> &[usize] {
        &self.class_ids
    }

    pub fn centroid(&self, class_index: usize) -> &[f64] {
        &self.centroids[class_index]
    }
}

impl Predictor for CentroidModel {
    fn feature_count(&self) -> usize {
        self.centroids.first().map_or(0, Vec::len)
    }

    fn predict_one(&self, sample: &[f64]) -> usize {
        let mut best = 0usize;
        let mut best_dist = f64::INFINITY;
        for (idx, &k) in self.class_ids.iter().enumerate() {
            let dist: f64 = self.centroids[idx]
                .iter()
                .zip(sample)
                .map(|(c, s)| (c - s) * (c - s))
                .sum();
            if dist < best_dist {
                best_dist = dist;
                best = k;
            }
        }
        best
    }
}

/// Fraction of positions where the two label sequences agree.
pub fn accuracy(predicted: &[usize], truth: &[usize]) -> Result<f64> {
    if predicted.len() != truth.len() {
        return Err(Error::InvalidArgument(format!(
            "length mismatch: {} predictions vs {} labels",
            predicted.len(),
            truth.len()
        )));
    }
    if predicted.is_empty() {
        return Err(Error::InvalidArgument("empty label vectors".into()));
    }
    let hits = predicted.iter().zip(truth).filter(|(a, b)| a == b).count();
    Ok(hits as f64 / predicted.len() as f64)
}

/// Regularized hinge objective of a binary model on +/-1 targets (the bias
/// counts toward the norm, matching the trainer); used by tests to check
/// that training makes progress.
pub fn binary_hinge_objective(
    w: &[f64],
    b: f64,
    lambda: f64,
    x: &DataMatrix,
    targets: &[f64],
) -> f64 {
    let norm_sq: f64 = w.iter().map(|v| v * v).sum::<f64>() + b * b;
    let hinge: f64 = (0..x.samples())
        .map(|j| (1.0 - targets[j] * (dot(w, x.column(j)) + b)).max(0.0))
        .sum::<f64>()
        / x.samples() as f64;
    0.5 * lambda * norm_sq + hinge
}
