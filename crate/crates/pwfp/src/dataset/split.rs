//! Reproducible stratified train/test splits.
//!
//! Splits are keyed by `(seed, trial_index)` through independent ChaCha
//! streams, so trial t is reproducible without replaying trials 0..t-1.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dataset::LabelVector;
use crate::error::{Error, Result};

/// How many training samples each class contributes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SplitMode {
    /// Exactly this many training samples per class.
    PerClassCount(usize),
    /// This fraction of each class (rounded half up, floored at 1).
    Fraction(f64),
}

/// A reproducible split policy: mode, RNG seed and trial count.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitSpec {
    pub mode: SplitMode,
    pub seed: u64,
    pub trials: usize,
}

impl SplitSpec {
    pub fn per_class(count: usize, seed: u64, trials: usize) -> Self {
        SplitSpec {
            mode: SplitMode::PerClassCount(count),
            seed,
            trials,
        }
    }

    pub fn fraction(fraction: f64, seed: u64, trials: usize) -> Self {
        SplitSpec {
            mode: SplitMode::Fraction(fraction),
            seed,
            trials,
        }
    }

    /// Checks this split policy against concrete labels.
    pub fn validate(&self, y: &LabelVector) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidArgument("trials must be positive".into()));
        }
        match self.mode {
            SplitMode::PerClassCount(count) => {
                if count == 0 {
                    return Err(Error::InvalidArgument(
                        "per-class count must be positive".into(),
                    ));
                }
                for (k, &size) in y.class_sizes().iter().enumerate() {
                    // leave at least one test sample per class
                    if count + 1 > size {
                        return Err(Error::Validation(format!(
                            "class `{}` has {} samples; cannot draw {} for training and keep a test sample",
                            y.token(k + 1),
                            size,
                            count
                        )));
                    }
                }
            }
            SplitMode::Fraction(f) => {
                if !(f > 0.0 && f < 1.0) {
                    return Err(Error::InvalidArgument(format!(
                        "fraction must be in (0,1), got {}",
                        f
                    )));
                }
            }
        }
        Ok(())
    }
}

fn train_count(mode: SplitMode, class_size: usize) -> usize {
    match mode {
        SplitMode::PerClassCount(count) => count,
        SplitMode::Fraction(f) => {
            let raw = (f * class_size as f64 + 0.5).floor() as usize; // round half up
            raw.max(1)
        }
    }
}

/// Draws a stratified train/test partition for one trial.
///
/// Per class, exactly `count` (or `round(fraction * n_k)`, minimum 1)
/// training indices are drawn without replacement; the remainder is the
/// test set. Both index lists come back sorted ascending, and the result
/// is a pure function of `(spec.seed, trial)`.
pub fn stratified_split(
    y: &LabelVector,
    spec: &SplitSpec,
    trial: usize,
) -> Result<(Vec<usize>, Vec<usize>)> {
    spec.validate(y)?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    rng.set_stream(trial as u64);

    let mut train = Vec::new();
    for k in 1..=y.class_count() {
        let mut members = y.class_indices(k);
        let take = train_count(spec.mode, members.len()).min(members.len());
        members.shuffle(&mut rng);
        train.extend_from_slice(&members[..take]);
    }
    train.sort_unstable();

    let in_train: std::collections::HashSet<usize> = train.iter().copied().collect();
    let test: Vec<usize> = (0..y.len()).filter(|j| !in_train.contains(j)).collect();
    if test.is_empty() {
        return Err(Error::Validation(
            "split leaves no test samples; lower the training fraction".into(),
        ));
    }
    Ok((train, test))
}
