//! Feature selection for high-dimensional low-sample-size data based on
//! pair-wise feature proximity, with Fisher and Laplacian score baselines,
//! a minimal linear SVM, and an experiment harness.
//!
//! When samples are scarce and dimensions are plentiful, whole-vector
//! distances concentrate and per-feature variances are estimated from a
//! handful of points, which undermines the classic filter scores. The
//! selector in [`proximity`] sidesteps both problems: it inspects one pair
//! of samples at a time, marks the few feature dimensions along which the
//! pair is closest (same class) or farthest (different classes), and ranks
//! features by how evenly they contribute to both roles.
//!
//! # Quick start
//!
//! ```
//! use pwfp::synth::{planted_dataset, PlantedConfig};
//!
//! let (x, y, planted) = planted_dataset(&PlantedConfig {
//!     features: 200,
//!     class_sizes: (9, 11),
//!     planted: 5,
//!     gap: 4.0,
//!     within_std: 0.01,
//!     min_index: 10,
//!     seed: 1,
//! })
//! .unwrap();
//!
//! // rank all features and keep the best five
//! let (selected, ranking) = pwfp::pwfp_select(&x, &y, 5, None).unwrap();
//! assert_eq!(selected.len(), 5);
//! assert!(ranking.scores()[selected[0]] <= ranking.scores()[selected[4]]);
//! let hits = selected.iter().filter(|i| planted.contains(i)).count();
//! assert!(hits >= 4);
//! ```
//!
//! The `examples/` directory exercises every major capability end to end;
//! `cargo run --example` with no name lists them.

pub mod baselines;
pub mod classify;
pub mod dataset;
mod error;
pub mod harness;
pub mod output;
pub mod proximity;
pub mod synth;

#[doc(hidden)]
pub mod cli;

pub use dataset::{
    load_csv, load_libsvm, save_csv, stratified_split, zscore_normalize, DataMatrix, LabelColumn,
    LabelVector, Normalization, SplitMode, SplitSpec,
};
pub use error::{Error, Result};
pub use proximity::{
    aggregate_histograms, between_pair_mask, default_beta, pwfp_select, rank_and_select,
    score_features, within_pair_mask, FeatureHistogram, FeatureRanking, PairMask,
};
