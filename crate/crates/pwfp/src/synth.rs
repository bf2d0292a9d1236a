//! Synthetic dataset generators used by the examples and the test suites.
//!
//! The main generator plants a handful of informative features inside pure
//! noise: planted features are tightly clustered within each class with a
//! fixed between-class mean gap, every other feature is standard normal
//! regardless of class. Recovering the planted indices is then a ground
//! truth task for a feature selector.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::dataset::{DataMatrix, LabelVector};
use crate::error::{Error, Result};

/// Recipe for a planted-feature dataset.
#[derive(Debug, Clone)]
pub struct PlantedConfig {
    /// Total feature count d.
    pub features: usize,
    /// Samples in class 1 and class 2.
    pub class_sizes: (usize, usize),
    /// Number of informative features to plant.
    pub planted: usize,
    /// Between-class mean gap of planted features, in noise standard
    /// deviations (noise features are N(0, 1)).
    pub gap: f64,
    /// Within-class standard deviation of planted features.
    pub within_std: f64,
    /// Planted indices are drawn at or above this index, which keeps the
    /// degenerate beta = d selection (plain index order) free of planted
    /// features.
    pub min_index: usize,
    pub seed: u64,
}

impl Default for PlantedConfig {
    fn default() -> Self {
        PlantedConfig {
            features: 1000,
            class_sizes: (9, 11),
            planted: 10,
            gap: 3.0,
            within_std: 0.01,
            min_index: 10,
            seed: 0,
        }
    }
}

/// Generates a two-class dataset with planted informative features.
///
/// Returns the matrix, labels, and the sorted planted feature indices.
pub fn planted_dataset(cfg: &PlantedConfig) -> Result<(DataMatrix, LabelVector, Vec<usize>)> {
    let d = cfg.features;
    let (n1, n2) = cfg.class_sizes;
    let n = n1 + n2;
    if cfg.planted > d || cfg.min_index.saturating_add(cfg.planted) > d {
        return Err(Error::InvalidArgument(
            "not enough features to place the planted indices".into(),
        ));
    }
    if n1 == 0 || n2 == 0 {
        return Err(Error::InvalidArgument("both classes need samples".into()));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let noise = Normal::new(0.0, 1.0).unwrap();
    let within = Normal::new(0.0, cfg.within_std.max(0.0)).unwrap();

    let mut candidates: Vec<usize> = (cfg.min_index..d).collect();
    candidates.shuffle(&mut rng);
    let mut planted: Vec<usize> = candidates[..cfg.planted].to_vec();
    planted.sort_unstable();

    let mut ids = vec![1usize; n1];
    ids.extend(std::iter::repeat(2).take(n2));

    let mut columns = Vec::with_capacity(n);
    for &id in &ids {
        let mut col: Vec<f64> = (0..d).map(|_| noise.sample(&mut rng)).collect();
        let center = if id == 1 { 0.0 } else { cfg.gap };
        for &i in &planted {
            col[i] = center + within.sample(&mut rng);
        }
        columns.push(col);
    }

    let x = DataMatrix::from_columns(&columns)?;
    let y = LabelVector::from_ids(ids)?;
    Ok((x, y, planted))
}

/// Two Gaussian blobs in `d` dimensions with the given center separation.
/// Handy for quick classifier checks.
pub fn gaussian_blobs(
    per_class: usize,
    features: usize,
    separation: f64,
    std: f64,
    seed: u64,
) -> Result<(DataMatrix, LabelVector)> {
    if per_class == 0 || features == 0 {
        return Err(Error::InvalidArgument("empty blob configuration".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let jitter = Normal::new(0.0, std).unwrap();
    let mut columns = Vec::with_capacity(2 * per_class);
    let mut ids = Vec::with_capacity(2 * per_class);
    for class in 0..2usize {
        let center = if class == 0 { -separation / 2.0 } else { separation / 2.0 };
        for _ in 0..per_class {
            let col: Vec<f64> = (0..features)
                .map(|i| if i == 0 { center } else { 0.0 } + jitter.sample(&mut rng))
                .collect();
            columns.push(col);
            ids.push(class + 1);
        }
    }
    Ok((DataMatrix::from_columns(&columns)?, LabelVector::from_ids(ids)?))
}
