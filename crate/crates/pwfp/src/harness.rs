//! Experiment harness: repeated stratified splits, leakage-free evaluation,
//! feature-count and beta sweeps, and result aggregation.
//!
//! Per trial the pipeline is: split, fit normalization on the training
//! partition and apply it to both partitions, rank features on the training
//! partition only, then for each requested subset size restrict both
//! partitions, fit the classifier and score the test partition.
//! Normalization statistics and feature selection never see test data.
//! Everything is a pure function of the configuration, seed included.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::baselines;
use crate::classify::{self, Predictor, SvmParams};
use crate::dataset::{
    load_csv, load_libsvm, stratified_split, DataMatrix, LabelColumn, LabelVector, Normalization,
    SplitMode, SplitSpec,
};
use crate::error::{Error, Result};
use crate::proximity;

/// Mask cardinality given either as an absolute count or a fraction of d.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BetaSpec {
    Count(usize),
    Fraction(f64),
}

impl BetaSpec {
    /// Resolves to an absolute count for a d-dimensional dataset
    /// (fractions round half up and clamp to `[1, d]`).
    pub fn resolve(&self, d: usize) -> Result<usize> {
        match *self {
            BetaSpec::Count(c) => {
                if c < 1 || c > d {
                    Err(Error::InvalidArgument(format!(
                        "beta {} out of range [1, {}]",
                        c, d
                    )))
                } else {
                    Ok(c)
                }
            }
            BetaSpec::Fraction(f) => {
                if !(f > 0.0 && f <= 1.0) {
                    return Err(Error::InvalidArgument(format!(
                        "beta fraction must be in (0, 1], got {}",
                        f
                    )));
                }
                Ok(((f * d as f64).round() as usize).clamp(1, d))
            }
        }
    }

    /// Parses `25`, `0.1`, or `10%`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(pct) = s.strip_suffix('%') {
            let value: f64 = pct.trim().parse().map_err(|_| {
                Error::InvalidArgument(format!("bad percentage `{}`", s))
            })?;
            return Ok(BetaSpec::Fraction(value / 100.0));
        }
        if let Ok(count) = s.parse::<usize>() {
            return Ok(BetaSpec::Count(count));
        }
        let value: f64 = s
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad beta `{}`", s)))?;
        Ok(BetaSpec::Fraction(value))
    }
}

/// Which ranking method drives the selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectorKind {
    Pwfp,
    Fisher,
    Laplacian,
    /// Seeded random permutation; the control arm for comparisons.
    Random,
}

impl SelectorKind {
    pub fn name(&self) -> &'static str {
        match self {
            SelectorKind::Pwfp => "pwfp",
            SelectorKind::Fisher => "fisher",
            SelectorKind::Laplacian => "laplacian",
            SelectorKind::Random => "random",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "pwfp" => Ok(SelectorKind::Pwfp),
            "fisher" => Ok(SelectorKind::Fisher),
            "laplacian" => Ok(SelectorKind::Laplacian),
            "random" => Ok(SelectorKind::Random),
            other => Err(Error::InvalidArgument(format!(
                "unknown selector `{}` (expected pwfp, fisher, laplacian or random)",
                other
            ))),
        }
    }
}

/// Selector plus its parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectorConfig {
    pub kind: SelectorKind,
    /// Mask cardinality for pwfp.
    pub beta: BetaSpec,
    /// Neighbor count for the laplacian similarity graph (clamped to n-1).
    pub knn: usize,
    /// Heat-kernel bandwidth; `None` picks the mean squared distance.
    pub bandwidth: Option<f64>,
}

impl Default for SelectorConfig {
    fn default() -> Self {
        SelectorConfig {
            kind: SelectorKind::Pwfp,
            beta: BetaSpec::Fraction(0.10),
            knn: 5,
            bandwidth: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassifierKind {
    LinearSvm,
    NearestCentroid,
}

impl ClassifierKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "svm" | "linear-svm" | "linear_svm" => Ok(ClassifierKind::LinearSvm),
            "centroid" | "nearest-centroid" | "nearest_centroid" => {
                Ok(ClassifierKind::NearestCentroid)
            }
            other => Err(Error::InvalidArgument(format!(
                "unknown classifier `{}` (expected svm or centroid)",
                other
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifierConfig {
    pub kind: ClassifierKind,
    pub lambda: f64,
    pub epochs: usize,
}

impl Default for ClassifierConfig {
    fn default() -> Self {
        ClassifierConfig {
            kind: ClassifierKind::LinearSvm,
            lambda: 0.01,
            epochs: 200,
        }
    }
}

/// Full in-memory experiment description.
#[derive(Debug, Clone, PartialEq)]
pub struct Protocol {
    pub split: SplitSpec,
    /// Z-score on the training partition, applied to both partitions,
    /// before selection and classification.
    pub normalize: bool,
    pub selector: SelectorConfig,
    pub classifier: ClassifierConfig,
    /// Feature-subset sizes to evaluate.
    pub m_values: Vec<usize>,
    /// Beta values for [`beta_sweep_on`]; ignored by plain runs.
    pub beta_values: Vec<BetaSpec>,
}

impl Default for Protocol {
    fn default() -> Self {
        Protocol {
            split: SplitSpec::fraction(0.1, 0, 5),
            normalize: true,
            selector: SelectorConfig::default(),
            classifier: ClassifierConfig::default(),
            m_values: Vec::new(),
            beta_values: Vec::new(),
        }
    }
}

/// One (selector, m, beta, trial) measurement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultRow {
    pub selector: String,
    pub m: usize,
    pub beta: usize,
    pub trial: usize,
    pub accuracy: f64,
}

/// Mean and std over trials for one (selector, beta, m) cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AggregateRow {
    pub selector: String,
    pub beta: usize,
    pub m: usize,
    pub mean: f64,
    pub std: f64,
    pub trials: usize,
}

/// Aggregated view of a [`ResultTable`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub aggregates: Vec<AggregateRow>,
}

/// Raw per-trial results, sorted by (selector, beta, m, trial).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ResultTable {
    rows: Vec<ResultRow>,
}

impl ResultTable {
    pub fn rows(&self) -> &[ResultRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Appends another table's rows, restoring the canonical order.
    pub fn extend(&mut self, other: ResultTable) {
        self.rows.extend(other.rows);
        sort_rows(&mut self.rows);
    }

    /// CSV `selector,m,beta,trial,accuracy` in canonical row order.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("selector,m,beta,trial,accuracy\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                row.selector, row.m, row.beta, row.trial, row.accuracy
            ));
        }
        out
    }

    /// Accuracy-vs-m series for one (selector, beta) pair, ascending m.
    pub fn series(&self, selector: &str, beta: usize) -> Vec<(usize, f64, f64)> {
        summarize(self)
            .aggregates
            .into_iter()
            .filter(|a| a.selector == selector && a.beta == beta)
            .map(|a| (a.m, a.mean, a.std))
            .collect()
    }

    /// Distinct (selector, beta) pairs present, in canonical order.
    pub fn selector_betas(&self) -> Vec<(String, usize)> {
        let mut keys: Vec<(String, usize)> = Vec::new();
        for row in &self.rows {
            let key = (row.selector.clone(), row.beta);
            if !keys.contains(&key) {
                keys.push(key);
            }
        }
        keys
    }
}

fn sort_rows(rows: &mut [ResultRow]) {
    rows.sort_by(|a, b| {
        (&a.selector, a.beta, a.m, a.trial).cmp(&(&b.selector, b.beta, b.m, b.trial))
    });
}

/// Mean and population std per (selector, beta, m) cell.
pub fn summarize(table: &ResultTable) -> Summary {
    let mut cells: BTreeMap<(String, usize, usize), Vec<f64>> = BTreeMap::new();
    for row in table.rows() {
        cells
            .entry((row.selector.clone(), row.beta, row.m))
            .or_default()
            .push(row.accuracy);
    }
    let aggregates = cells
        .into_iter()
        .map(|((selector, beta, m), accs)| {
            let n = accs.len() as f64;
            let mean = accs.iter().sum::<f64>() / n;
            let var = accs.iter().map(|a| (a - mean) * (a - mean)).sum::<f64>() / n;
            AggregateRow {
                selector,
                beta,
                m,
                mean,
                std: var.sqrt(),
                trials: accs.len(),
            }
        })
        .collect();
    Summary { aggregates }
}

impl Summary {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serialization cannot fail")
    }

    /// CSV `selector,beta,m,mean,std,trials`.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("selector,beta,m,mean,std,trials\n");
        for a in &self.aggregates {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                a.selector, a.beta, a.m, a.mean, a.std, a.trials
            ));
        }
        out
    }
}

fn mix_seed(seed: u64, salt: u64) -> u64 {
    let mut z = seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Ranks all features of a training partition, best first.
pub fn feature_order(
    x_train: &DataMatrix,
    y_train: &LabelVector,
    selector: &SelectorConfig,
    seed: u64,
    trial: usize,
) -> Result<Vec<usize>> {
    let d = x_train.features();
    match selector.kind {
        SelectorKind::Pwfp => {
            let beta = selector.beta.resolve(d)?;
            let (_, ranking) = proximity::pwfp_select(x_train, y_train, d, Some(beta))?;
            Ok(ranking.order().to_vec())
        }
        SelectorKind::Fisher => {
            let scores = baselines::fisher_score(x_train, y_train)?;
            Ok(baselines::rank_descending(&scores))
        }
        SelectorKind::Laplacian => {
            let knn = selector.knn.min(x_train.samples() - 1).max(1);
            let graph = baselines::build_similarity_graph(x_train, knn, selector.bandwidth)?;
            let scores = baselines::laplacian_score(x_train, &graph)?;
            Ok(baselines::rank_ascending(&scores))
        }
        SelectorKind::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, 0x52414e44));
            rng.set_stream(trial as u64);
            let mut order: Vec<usize> = (0..d).collect();
            order.shuffle(&mut rng);
            Ok(order)
        }
    }
}

struct TrialData {
    x_train: DataMatrix,
    y_train: LabelVector,
    x_test: DataMatrix,
    y_test: LabelVector,
    order: Vec<usize>,
}

fn prepare_trial(
    x: &DataMatrix,
    y: &LabelVector,
    protocol: &Protocol,
    trial: usize,
) -> Result<TrialData> {
    let (train_idx, test_idx) = stratified_split(y, &protocol.split, trial)?;
    let x_train = x.select_columns(&train_idx)?;
    let y_train = y.select(&train_idx)?;
    let x_test = x.select_columns(&test_idx)?;
    let y_test = y.select(&test_idx)?;

    let (x_train, x_test) = if protocol.normalize {
        let norm = Normalization::fit(&x_train)?;
        (norm.apply(&x_train)?, norm.apply(&x_test)?)
    } else {
        (x_train, x_test)
    };

    let order = feature_order(&x_train, &y_train, &protocol.selector, protocol.split.seed, trial)?;
    Ok(TrialData {
        x_train,
        y_train,
        x_test,
        y_test,
        order,
    })
}

/// The feature subset a given trial would select, for inspection and
/// leakage tests. Same split, normalization and ranking path as
/// [`run_experiment_on`].
pub fn trial_selection(
    x: &DataMatrix,
    y: &LabelVector,
    protocol: &Protocol,
    trial: usize,
    m: usize,
) -> Result<Vec<usize>> {
    let data = prepare_trial(x, y, protocol, trial)?;
    if m < 1 || m > data.order.len() {
        return Err(Error::InvalidArgument(format!(
            "m must be in [1, {}], got {}",
            data.order.len(),
            m
        )));
    }
    Ok(data.order[..m].to_vec())
}

fn validated_m_values(protocol: &Protocol, d: usize) -> Result<Vec<usize>> {
    if protocol.m_values.is_empty() {
        return Err(Error::InvalidArgument("m_values must not be empty".into()));
    }
    let mut m_values = protocol.m_values.clone();
    m_values.sort_unstable();
    m_values.dedup();
    for &m in &m_values {
        if m < 1 || m > d {
            return Err(Error::InvalidArgument(format!(
                "m value {} out of range [1, {}]",
                m, d
            )));
        }
    }
    Ok(m_values)
}

fn run_single_trial(
    x: &DataMatrix,
    y: &LabelVector,
    protocol: &Protocol,
    m_values: &[usize],
    beta: usize,
    trial: usize,
) -> Result<Vec<ResultRow>> {
    let data = prepare_trial(x, y, protocol, trial)?;
    let selector_name = protocol.selector.kind.name().to_string();
    let mut rows = Vec::with_capacity(m_values.len());
    for &m in m_values {
        let selected = &data.order[..m];
        let xtr = data.x_train.select_features(selected)?;
        let xte = data.x_test.select_features(selected)?;
        let predicted = match protocol.classifier.kind {
            ClassifierKind::LinearSvm => {
                let params = SvmParams {
                    lambda: protocol.classifier.lambda,
                    epochs: protocol.classifier.epochs,
                    seed: mix_seed(protocol.split.seed, trial as u64),
                };
                classify::fit_linear_svm(&xtr, &data.y_train, &params)?.predict(&xte)?
            }
            ClassifierKind::NearestCentroid => {
                classify::fit_nearest_centroid(&xtr, &data.y_train)?.predict(&xte)?
            }
        };
        let accuracy = classify::accuracy(&predicted, data.y_test.ids())?;
        rows.push(ResultRow {
            selector: selector_name.clone(),
            m,
            beta,
            trial,
            accuracy,
        });
    }
    Ok(rows)
}

/// Runs an arbitrary subset of trials; trial t is independent of every
/// other trial, so re-running one trial reproduces its rows exactly.
pub fn run_trials_on(
    x: &DataMatrix,
    y: &LabelVector,
    protocol: &Protocol,
    trials: &[usize],
) -> Result<ResultTable> {
    let m_values = validated_m_values(protocol, x.features())?;
    let beta = protocol.selector.beta.resolve(x.features())?;
    let nested: Vec<Vec<ResultRow>> = trials
        .par_iter()
        .map(|&trial| {
            run_single_trial(x, y, protocol, &m_values, beta, trial)
                .map_err(|e| e.with_context(&format!("trial {}", trial)))
        })
        .collect::<Result<_>>()?;
    let mut rows: Vec<ResultRow> = nested.into_iter().flatten().collect();
    sort_rows(&mut rows);
    Ok(ResultTable { rows })
}

/// Runs all configured trials on an in-memory dataset.
pub fn run_experiment_on(x: &DataMatrix, y: &LabelVector, protocol: &Protocol) -> Result<ResultTable> {
    let trials: Vec<usize> = (0..protocol.split.trials).collect();
    run_trials_on(x, y, protocol, &trials)
}

/// Repeats the experiment once per configured beta value.
///
/// Splits are keyed by (seed, trial) and the seed is shared, so every beta
/// sees identical partitions and beta is the only varying factor.
pub fn beta_sweep_on(x: &DataMatrix, y: &LabelVector, protocol: &Protocol) -> Result<ResultTable> {
    if protocol.beta_values.is_empty() {
        return Err(Error::InvalidArgument("beta_values must not be empty".into()));
    }
    let mut table = ResultTable::default();
    for &beta in &protocol.beta_values {
        let mut run = protocol.clone();
        run.selector.beta = beta;
        table.extend(run_experiment_on(x, y, &run)?);
    }
    Ok(table)
}

/// Dataset file format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DataFormat {
    Csv,
    Libsvm,
}

impl DataFormat {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(DataFormat::Csv),
            "libsvm" | "svmlight" => Ok(DataFormat::Libsvm),
            other => Err(Error::InvalidArgument(format!(
                "unknown format `{}` (expected csv or libsvm)",
                other
            ))),
        }
    }
}

/// File-level experiment description: where the data lives plus a
/// [`Protocol`]. Parsed from flat `key = value` text.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub data: PathBuf,
    pub format: DataFormat,
    pub label_col: LabelColumn,
    pub has_header: bool,
    pub protocol: Protocol,
    pub output: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(data: impl Into<PathBuf>) -> Self {
        ExperimentConfig {
            data: data.into(),
            format: DataFormat::Csv,
            label_col: LabelColumn::Last,
            has_header: false,
            protocol: Protocol::default(),
            output: None,
        }
    }

    /// Parses the flat key-value config format (`key = value`, `#` comments).
    ///
    /// Recognized keys: `data`, `format`, `label_col`, `has_header`,
    /// `selector`, `beta`, `knn`, `bandwidth`, `classifier`, `lambda`,
    /// `epochs`, `m_values`, `beta_values`, `split`, `split_value`,
    /// `trials`, `seed`, `normalize`, `output`.
    pub fn parse_str(text: &str) -> Result<Self> {
        let mut cfg = ExperimentConfig::new("");
        let mut saw_data = false;
        let mut trials: Option<usize> = None;
        let mut per_class_split = false;
        let mut split_value: Option<String> = None;
        let mut seed = 0u64;

        for raw_line in text.lines() {
            let line = raw_line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::config(line.to_string(), "expected `key = value`")
            })?;
            let key = key.trim();
            let value = value.trim();
            let bad = |msg: String| Error::config(key, msg);
            match key {
                "data" => {
                    cfg.data = PathBuf::from(value);
                    saw_data = true;
                }
                "format" => cfg.format = DataFormat::parse(value).map_err(|e| bad(e.to_string()))?,
                "label_col" => {
                    cfg.label_col = value.parse().map_err(|e: Error| bad(e.to_string()))?
                }
                "has_header" => cfg.has_header = parse_bool(value).map_err(bad)?,
                "selector" => {
                    cfg.protocol.selector.kind =
                        SelectorKind::parse(value).map_err(|e| bad(e.to_string()))?
                }
                "beta" => {
                    cfg.protocol.selector.beta =
                        BetaSpec::parse(value).map_err(|e| bad(e.to_string()))?
                }
                "knn" => cfg.protocol.selector.knn = parse_num(value).map_err(bad)?,
                "bandwidth" => {
                    cfg.protocol.selector.bandwidth = if value.eq_ignore_ascii_case("auto") {
                        None
                    } else {
                        Some(parse_num(value).map_err(bad)?)
                    }
                }
                "classifier" => {
                    cfg.protocol.classifier.kind =
                        ClassifierKind::parse(value).map_err(|e| bad(e.to_string()))?
                }
                "lambda" => cfg.protocol.classifier.lambda = parse_num(value).map_err(bad)?,
                "epochs" => cfg.protocol.classifier.epochs = parse_num(value).map_err(bad)?,
                "m_values" => {
                    cfg.protocol.m_values = value
                        .split(',')
                        .map(|v| v.trim().parse::<usize>())
                        .collect::<std::result::Result<_, _>>()
                        .map_err(|_| bad(format!("bad m list `{}`", value)))?
                }
                "beta_values" => {
                    cfg.protocol.beta_values = value
                        .split(',')
                        .map(BetaSpec::parse)
                        .collect::<Result<_>>()
                        .map_err(|e| bad(e.to_string()))?
                }
                "split" => {
                    per_class_split = match value.to_ascii_lowercase().as_str() {
                        "per-class" | "per_class" => true,
                        "fraction" => false,
                        other => return Err(bad(format!("unknown split mode `{}`", other))),
                    }
                }
                "split_value" => split_value = Some(value.to_string()),
                "trials" => trials = Some(parse_num(value).map_err(bad)?),
                "seed" => seed = parse_num(value).map_err(bad)?,
                "normalize" => cfg.protocol.normalize = parse_bool(value).map_err(bad)?,
                "output" => cfg.output = Some(PathBuf::from(value)),
                other => {
                    return Err(Error::config(
                        other,
                        "unknown configuration key".to_string(),
                    ))
                }
            }
        }

        if !saw_data {
            return Err(Error::config("data", "required key is missing"));
        }
        // mode and value may appear in either order; resolve once both are in
        let split_mode = if per_class_split {
            let count = match &split_value {
                Some(v) => parse_num(v).map_err(|m| Error::config("split_value", m))?,
                None => return Err(Error::config("split_value", "required for per-class splits")),
            };
            SplitMode::PerClassCount(count)
        } else {
            let fraction = match &split_value {
                Some(v) => parse_num(v).map_err(|m| Error::config("split_value", m))?,
                None => 0.1,
            };
            SplitMode::Fraction(fraction)
        };
        // per-class protocols default to 10 trials, fraction protocols to 5
        let trials = trials.unwrap_or(if per_class_split { 10 } else { 5 });
        cfg.protocol.split = SplitSpec {
            mode: split_mode,
            seed,
            trials,
        };
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse_str(&std::fs::read_to_string(path)?)
    }

    pub fn load_dataset(&self) -> Result<(DataMatrix, LabelVector)> {
        match self.format {
            DataFormat::Csv => load_csv(&self.data, &self.label_col, self.has_header),
            DataFormat::Libsvm => load_libsvm(&self.data),
        }
    }
}

fn parse_bool(s: &str) -> std::result::Result<bool, String> {
    match s.to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        other => Err(format!("expected true or false, got `{}`", other)),
    }
}

fn parse_num<T: std::str::FromStr>(s: &str) -> std::result::Result<T, String> {
    s.parse::<T>()
        .map_err(|_| format!("bad numeric value `{}`", s))
}

/// Loads the configured dataset and runs all trials.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ResultTable> {
    let (x, y) = cfg.load_dataset()?;
    run_experiment_on(&x, &y, &cfg.protocol)
}

/// Loads the configured dataset and runs the beta sweep.
pub fn beta_sweep(cfg: &ExperimentConfig) -> Result<ResultTable> {
    let (x, y) = cfg.load_dataset()?;
    beta_sweep_on(&x, &y, &cfg.protocol)
}

impl Error {
    fn with_context(self, ctx: &str) -> Error {
        match self {
            Error::Validation(msg) => Error::Validation(format!("{}: {}", ctx, msg)),
            Error::InvalidArgument(msg) => Error::InvalidArgument(format!("{}: {}", ctx, msg)),
            Error::Parse { location, message } => Error::Parse {
                location: format!("{}: {}", ctx, location),
                message,
            },
            other => other,
        }
    }
}
