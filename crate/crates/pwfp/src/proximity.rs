//! Pair-wise feature proximity selection.
//!
//! Instead of scoring each feature from whole-sample statistics, this method
//! looks at one pair of samples at a time. For a same-class pair it marks
//! the `beta` features along which the two samples are closest; for a
//! different-class pair, the `beta` features along which they are farthest.
//! Marks are accumulated over all pairs into two normalized histograms:
//!
//! * `within[i]`  - fraction of same-class pairs whose closest-feature mask
//!   includes feature i,
//! * `between[i]` - fraction of different-class pairs whose
//!   farthest-feature mask includes feature i.
//!
//! A feature that shows up in both histograms keeps same-class samples close
//! while separating different-class samples, so the score
//!
//! ```text
//! S(i) = |within[i] - between[i]| / (within[i] + between[i])
//! ```
//!
//! is minimized by useful features. Features never selected by any pair
//! (`within[i] = between[i] = 0`) have no evidence of utility and rank
//! strictly last. All ties break toward the lower feature index, which makes
//! every operation here deterministic.
//!
//! Because distances are compared one feature dimension at a time, the
//! method avoids the distance concentration that makes whole-vector
//! similarity unreliable when the dimension far exceeds the sample count.

use rayon::prelude::*;

use crate::dataset::{DataMatrix, LabelVector};
use crate::error::{Error, Result};

/// Score value used for features selected by no pair at all.
///
/// Sorts after every defined score (defined scores lie in `[0, 1]`).
pub const UNDEFINED_SCORE: f64 = f64::INFINITY;

/// Binary feature mask with exactly `beta` ones, produced for one sample pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairMask {
    indicator: Vec<bool>,
    beta: usize,
}

impl PairMask {
    fn from_indices(len: usize, selected: &[usize]) -> Self {
        let mut indicator = vec![false; len];
        for &i in selected {
            indicator[i] = true;
        }
        PairMask {
            indicator,
            beta: selected.len(),
        }
    }

    /// Length-d indicator vector.
    pub fn indicator(&self) -> &[bool] {
        &self.indicator
    }

    /// Number of ones in the mask.
    pub fn beta(&self) -> usize {
        self.beta
    }

    pub fn len(&self) -> usize {
        self.indicator.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indicator.is_empty()
    }

    /// Indices of the selected features, ascending.
    pub fn selected_indices(&self) -> Vec<usize> {
        self.indicator
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Normalized per-feature histogram of pair-mask hits.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureHistogram {
    weights: Vec<f64>,
    pair_count: usize,
}

impl FeatureHistogram {
    /// Per-feature weights in `[0, 1]`; they sum to `beta`.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Number of pairs aggregated (the normalization denominator).
    pub fn pair_count(&self) -> usize {
        self.pair_count
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Per-feature scores plus the induced ranking.
///
/// `order` is the permutation of `0..d` sorted by ascending score with ties
/// broken by lower index; entries with [`UNDEFINED_SCORE`] sort last.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureRanking {
    scores: Vec<f64>,
    order: Vec<usize>,
}

impl FeatureRanking {
    /// Builds a ranking from raw scores (ascending order, index tie-break).
    pub fn from_scores(scores: Vec<f64>) -> Self {
        let order = sorted_indices_ascending(&scores);
        FeatureRanking { scores, order }
    }

    /// Score of feature `i` ([`UNDEFINED_SCORE`] if no pair selected it).
    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    /// Feature indices from best (lowest score) to worst.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Whether feature `i` has a defined score.
    pub fn is_defined(&self, i: usize) -> bool {
        self.scores[i].is_finite()
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }
}

fn sorted_indices_ascending(scores: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_unstable_by(|&a, &b| scores[a].total_cmp(&scores[b]).then(a.cmp(&b)));
    order
}

/// Leaves the `beta` indices with the smallest `(value, index)` pairs in
/// `indices[..beta]`. Expected O(d) via partial selection; including the
/// index in the comparator enforces the lower-index tie rule directly.
fn partial_select(values: &[f64], indices: &mut [u32], beta: usize, largest: bool) {
    debug_assert!(beta >= 1 && beta <= indices.len());
    if beta == indices.len() {
        return;
    }
    if largest {
        indices.select_nth_unstable_by(beta - 1, |&a, &b| {
            values[b as usize]
                .total_cmp(&values[a as usize])
                .then(a.cmp(&b))
        });
    } else {
        indices.select_nth_unstable_by(beta - 1, |&a, &b| {
            values[a as usize]
                .total_cmp(&values[b as usize])
                .then(a.cmp(&b))
        });
    }
}

fn validate_pair(a: &[f64], b: &[f64], beta: usize) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::InvalidArgument(format!(
            "sample columns have different lengths ({} vs {})",
            a.len(),
            b.len()
        )));
    }
    if beta < 1 || beta > a.len() {
        return Err(Error::InvalidArgument(format!(
            "beta must be in [1, {}], got {}",
            a.len(),
            beta
        )));
    }
    Ok(())
}

fn pair_mask(a: &[f64], b: &[f64], beta: usize, largest: bool) -> Result<PairMask> {
    validate_pair(a, b, beta)?;
    let diffs: Vec<f64> = a.iter().zip(b).map(|(x, y)| (x - y).abs()).collect();
    let mut indices: Vec<u32> = (0..a.len() as u32).collect();
    partial_select(&diffs, &mut indices, beta, largest);
    let selected: Vec<usize> = indices[..beta].iter().map(|&i| i as usize).collect();
    Ok(PairMask::from_indices(a.len(), &selected))
}

/// Mask of the `beta` features along which two (same-class) samples are
/// closest, i.e. the smallest entries of `|a - b|`. Ties at the cutoff go to
/// the lower feature index. Symmetric in its arguments.
pub fn within_pair_mask(a: &[f64], b: &[f64], beta: usize) -> Result<PairMask> {
    pair_mask(a, b, beta, false)
}

/// Mask of the `beta` features along which two (different-class) samples are
/// farthest, i.e. the largest entries of `|a - b|`. Ties at the cutoff go to
/// the lower feature index. Symmetric in its arguments.
pub fn between_pair_mask(a: &[f64], b: &[f64], beta: usize) -> Result<PairMask> {
    pair_mask(a, b, beta, true)
}

struct PairAccumulator {
    within: Vec<u32>,
    between: Vec<u32>,
    diffs: Vec<f64>,
    indices: Vec<u32>,
}

impl PairAccumulator {
    fn new(d: usize) -> Self {
        PairAccumulator {
            within: vec![0; d],
            between: vec![0; d],
            diffs: vec![0.0; d],
            indices: Vec::with_capacity(d),
        }
    }

    fn record(&mut self, a: &[f64], b: &[f64], beta: usize, same_class: bool) {
        for (slot, (x, y)) in self.diffs.iter_mut().zip(a.iter().zip(b)) {
            *slot = (x - y).abs();
        }
        self.indices.clear();
        self.indices.extend(0..a.len() as u32);
        partial_select(&self.diffs, &mut self.indices, beta, !same_class);
        let counts = if same_class {
            &mut self.within
        } else {
            &mut self.between
        };
        for &i in &self.indices[..beta] {
            counts[i as usize] += 1;
        }
    }

    fn merge(mut self, other: PairAccumulator) -> PairAccumulator {
        for (a, b) in self.within.iter_mut().zip(&other.within) {
            *a += b;
        }
        for (a, b) in self.between.iter_mut().zip(&other.between) {
            *a += b;
        }
        self
    }
}

/// Aggregates per-pair masks over every unordered sample pair.
///
/// Returns the within-class histogram (normalized by the number of
/// same-class pairs) and the between-class histogram (normalized by the
/// number of different-class pairs). Each unordered pair is visited exactly
/// once, so the result does not depend on sample order.
///
/// Pairs may be processed by multiple workers; every worker accumulates
/// integer hit counts, and integer merges commute exactly, so parallel runs
/// are bitwise identical to sequential ones.
pub fn aggregate_histograms(
    x: &DataMatrix,
    y: &LabelVector,
    beta: usize,
) -> Result<(FeatureHistogram, FeatureHistogram)> {
    let d = x.features();
    let n = x.samples();
    if y.len() != n {
        return Err(Error::InvalidArgument(format!(
            "matrix has {} samples but label vector has {}",
            n,
            y.len()
        )));
    }
    if beta < 1 || beta > d {
        return Err(Error::InvalidArgument(format!(
            "beta must be in [1, {}], got {}",
            d, beta
        )));
    }
    if n < 2 {
        return Err(Error::Validation("need at least 2 samples".into()));
    }

    let sizes = y.class_sizes();
    let same_pairs: usize = sizes.iter().map(|&nk| nk * (nk - 1) / 2).sum();
    let total_pairs = n * (n - 1) / 2;
    let diff_pairs = total_pairs - same_pairs;
    if same_pairs == 0 {
        return Err(Error::Validation(
            "no same-class pair exists (every class is a singleton)".into(),
        ));
    }
    if diff_pairs == 0 {
        return Err(Error::Validation(
            "no different-class pair exists (only one class present)".into(),
        ));
    }

    let ids = y.ids();
    let acc = (0..n)
        .into_par_iter()
        .fold(
            || PairAccumulator::new(d),
            |mut acc, j| {
                let col_j = x.column(j);
                for k in (j + 1)..n {
                    acc.record(col_j, x.column(k), beta, ids[j] == ids[k]);
                }
                acc
            },
        )
        .reduce(|| PairAccumulator::new(d), PairAccumulator::merge);

    let normalize = |counts: Vec<u32>, pairs: usize| FeatureHistogram {
        weights: counts
            .into_iter()
            .map(|c| c as f64 / pairs as f64)
            .collect(),
        pair_count: pairs,
    };
    Ok((
        normalize(acc.within, same_pairs),
        normalize(acc.between, diff_pairs),
    ))
}

/// Scores every feature from the two histograms.
///
/// `S(i) = |within[i] - between[i]| / (within[i] + between[i])` where the
/// denominator is positive; features absent from both histograms get
/// [`UNDEFINED_SCORE`] and rank last. Defined scores lie in `[0, 1]`:
/// 0 means the feature contributes equally to cohesion and separation,
/// 1 means it only ever appears on one side.
pub fn score_features(
    within: &FeatureHistogram,
    between: &FeatureHistogram,
) -> Result<FeatureRanking> {
    if within.len() != between.len() {
        return Err(Error::InvalidArgument(format!(
            "histogram lengths differ ({} vs {})",
            within.len(),
            between.len()
        )));
    }
    let scores: Vec<f64> = within
        .weights()
        .iter()
        .zip(between.weights())
        .map(|(&p, &q)| {
            let denom = p + q;
            if denom > 0.0 {
                (p - q).abs() / denom
            } else {
                UNDEFINED_SCORE
            }
        })
        .collect();
    Ok(FeatureRanking::from_scores(scores))
}

/// First `m` feature indices of the ranking (lowest scores first).
pub fn rank_and_select(ranking: &FeatureRanking, m: usize) -> Result<Vec<usize>> {
    if m < 1 || m > ranking.len() {
        return Err(Error::InvalidArgument(format!(
            "m must be in [1, {}], got {}",
            ranking.len(),
            m
        )));
    }
    Ok(ranking.order()[..m].to_vec())
}

/// Default mask cardinality: 10% of the feature count, rounded half up and
/// clamped to `[1, d]`.
pub fn default_beta(d: usize) -> usize {
    let raw = (0.10 * d as f64).round() as usize;
    raw.clamp(1, d)
}

/// The full selection pipeline: aggregate pair masks, score, rank, and take
/// the `m` best features.
///
/// `beta` defaults to [`default_beta`]. The selected indices are invariant
/// under any permutation of the samples (with matching label permutation).
pub fn pwfp_select(
    x: &DataMatrix,
    y: &LabelVector,
    m: usize,
    beta: Option<usize>,
) -> Result<(Vec<usize>, FeatureRanking)> {
    let beta = beta.unwrap_or_else(|| default_beta(x.features()));
    let (within, between) = aggregate_histograms(x, y, beta)?;
    let ranking = score_features(&within, &between)?;
    let selected = rank_and_select(&ranking, m)?;
    Ok((selected, ranking))
}
