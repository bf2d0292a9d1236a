//! Command-line front end: `select`, `eval`, and `bench`.
//!
//! Exit codes: 0 on success, 1 on any dataset/config/validation error
//! (single `error:`-prefixed line on stderr), 2 on bad flags.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use crate::baselines;
use crate::dataset::{zscore_normalize, DataMatrix, LabelColumn, LabelVector};
use crate::error::{Error, Result};
use crate::harness::{
    beta_sweep_on, run_experiment_on, summarize, BetaSpec, ClassifierKind, DataFormat,
    ExperimentConfig, ResultTable, SelectorKind,
};
use crate::output;
use crate::proximity;

#[derive(Parser, Debug)]
#[command(
    name = "pwfp",
    version,
    about = "Pair-wise feature proximity selection and evaluation",
    disable_help_subcommand = true
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Worker threads (overrides the PWFP_THREADS environment variable).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Echo the resolved configuration before running.
    #[arg(short, long, global = true)]
    verbose: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank the features of a dataset and write the selected subset.
    Select(SelectArgs),
    /// Run one experiment configuration (splits, selection, classification).
    Eval(EvalArgs),
    /// Compare several selectors over shared splits, optionally sweeping beta.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
struct DataArgs {
    /// Dataset path.
    #[arg(long)]
    data: PathBuf,

    /// Dataset format.
    #[arg(long, default_value = "csv", value_parser = ["csv", "libsvm"])]
    format: String,

    /// Label column: `last`, a 0-based index, or a header name.
    #[arg(long, default_value = "last")]
    label_col: String,

    /// Treat the first row as a header.
    #[arg(long)]
    header: bool,
}

impl DataArgs {
    fn load(&self) -> Result<(DataMatrix, LabelVector)> {
        let format = DataFormat::parse(&self.format)?;
        match format {
            DataFormat::Csv => {
                let label: LabelColumn = self.label_col.parse()?;
                crate::dataset::load_csv(&self.data, &label, self.header)
            }
            DataFormat::Libsvm => crate::dataset::load_libsvm(&self.data),
        }
    }
}

#[derive(Args, Debug)]
struct SelectArgs {
    #[command(flatten)]
    data: DataArgs,

    /// Ranking method.
    #[arg(long, default_value = "pwfp", value_parser = ["pwfp", "fisher", "laplacian", "random"])]
    method: String,

    /// Number of features to keep.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    m: u64,

    /// Mask cardinality: absolute count or percentage of d (e.g. `10%`).
    #[arg(long, default_value = "10%")]
    beta: String,

    /// Neighbor count for the laplacian similarity graph.
    #[arg(long, default_value_t = 5)]
    knn: usize,

    /// Heat-kernel bandwidth (`auto` or a positive number).
    #[arg(long, default_value = "auto")]
    bandwidth: String,

    /// Rank on the raw values instead of z-scored ones.
    #[arg(long)]
    raw: bool,

    /// Seed (used by the random method).
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Output file prefix (default: dataset stem plus the method name).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct ProtocolArgs {
    /// Mask cardinality for pwfp (count or percentage).
    #[arg(long)]
    beta: Option<String>,

    /// Neighbor count for the laplacian similarity graph.
    #[arg(long)]
    knn: Option<usize>,

    /// Heat-kernel bandwidth (`auto` or a positive number).
    #[arg(long)]
    bandwidth: Option<String>,

    /// Classifier: `svm` or `centroid`.
    #[arg(long)]
    classifier: Option<String>,

    /// SVM regularization strength.
    #[arg(long)]
    lambda: Option<f64>,

    /// SVM training epochs.
    #[arg(long)]
    epochs: Option<usize>,

    /// Comma-separated feature-subset sizes, e.g. `5,10,20`.
    #[arg(long, value_delimiter = ',')]
    m_values: Option<Vec<usize>>,

    /// Training samples drawn per class.
    #[arg(long, conflicts_with = "fraction")]
    per_class: Option<usize>,

    /// Training fraction per class, in (0,1).
    #[arg(long)]
    fraction: Option<f64>,

    /// Number of trials.
    #[arg(long)]
    trials: Option<usize>,

    /// Master seed for splits, sampling and the random selector.
    #[arg(long)]
    seed: Option<u64>,

    /// Enable or disable z-score normalization (`true`/`false`).
    #[arg(long)]
    normalize: Option<String>,

    /// Output file prefix.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EvalArgs {
    /// Flat key-value configuration file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Dataset path (required unless the config file provides one).
    #[arg(long)]
    data: Option<PathBuf>,

    #[arg(long, value_parser = ["csv", "libsvm"])]
    format: Option<String>,

    #[arg(long)]
    label_col: Option<String>,

    #[arg(long)]
    header: bool,

    /// Selector to evaluate.
    #[arg(long)]
    selector: Option<String>,

    #[command(flatten)]
    protocol: ProtocolArgs,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long)]
    config: Option<PathBuf>,

    #[arg(long)]
    data: Option<PathBuf>,

    #[arg(long, value_parser = ["csv", "libsvm"])]
    format: Option<String>,

    #[arg(long)]
    label_col: Option<String>,

    #[arg(long)]
    header: bool,

    /// Comma-separated selectors to compare.
    #[arg(long, value_delimiter = ',', required = true)]
    selectors: Vec<String>,

    /// Comma-separated beta values for a pwfp sweep (counts, fractions or
    /// percentages).
    #[arg(long, value_delimiter = ',')]
    beta_sweep: Option<Vec<String>>,

    #[command(flatten)]
    protocol: ProtocolArgs,
}

/// Parses arguments and runs; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    configure_threads(cli.threads);
    let verbose = cli.verbose;
    let outcome = match cli.command {
        Command::Select(args) => run_select(args, verbose),
        Command::Eval(args) => run_eval(args, verbose),
        Command::Bench(args) => run_bench(args, verbose),
    };
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}", e);
            1
        }
    }
}

fn configure_threads(requested: Option<usize>) {
    let threads = requested.or_else(|| {
        std::env::var("PWFP_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(t) = threads.filter(|&t| t > 0) {
        // ignore failure: the global pool can only be sized once
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
}

fn parse_bandwidth(s: &str) -> Result<Option<f64>> {
    if s.eq_ignore_ascii_case("auto") {
        return Ok(None);
    }
    let value: f64 = s
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("bad bandwidth `{}`", s)))?;
    Ok(Some(value))
}

fn run_select(args: SelectArgs, verbose: bool) -> Result<()> {
    let (x, y) = args.data.load()?;
    let d = x.features();
    let m = args.m as usize;
    if m > d {
        return Err(Error::InvalidArgument(format!(
            "m {} exceeds the feature count {}",
            m, d
        )));
    }
    let beta = BetaSpec::parse(&args.beta)?.resolve(d)?;
    let kind = SelectorKind::parse(&args.method)?;

    let x_ranked = if args.raw {
        x.clone()
    } else {
        zscore_normalize(&x)?.0
    };

    if verbose {
        println!(
            "# data={} d={} n={} classes={} normalize={}",
            args.data.data.display(),
            d,
            x.samples(),
            y.class_count(),
            !args.raw
        );
    }

    let prefix = args.out.unwrap_or_else(|| {
        let stem = args
            .data
            .data
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "dataset".to_string());
        PathBuf::from(format!("{}.{}", stem, kind.name()))
    });
    let ranking_path = with_suffix(&prefix, "ranking.csv");
    let selected_path = with_suffix(&prefix, "selected.txt");

    let selected = match kind {
        SelectorKind::Pwfp => {
            let (selected, ranking) = proximity::pwfp_select(&x_ranked, &y, m, Some(beta))?;
            output::write_ranking_csv(&ranking_path, &ranking)?;
            selected
        }
        SelectorKind::Fisher => {
            let scores = baselines::fisher_score(&x_ranked, &y)?;
            let order = baselines::rank_descending(&scores);
            output::write_atomic(
                &ranking_path,
                output::ranking_csv_with_method(&scores, &order, kind.name()).as_bytes(),
            )?;
            order[..m].to_vec()
        }
        SelectorKind::Laplacian => {
            let knn = args.knn.min(x.samples() - 1).max(1);
            let graph =
                baselines::build_similarity_graph(&x_ranked, knn, parse_bandwidth(&args.bandwidth)?)?;
            let scores = baselines::laplacian_score(&x_ranked, &graph)?;
            let order = baselines::rank_ascending(&scores);
            output::write_atomic(
                &ranking_path,
                output::ranking_csv_with_method(&scores, &order, kind.name()).as_bytes(),
            )?;
            order[..m].to_vec()
        }
        SelectorKind::Random => {
            let cfg = crate::harness::SelectorConfig {
                kind,
                ..Default::default()
            };
            let order = crate::harness::feature_order(&x_ranked, &y, &cfg, args.seed, 0)?;
            let scores = vec![f64::NAN; d];
            output::write_atomic(
                &ranking_path,
                output::ranking_csv_with_method(&scores, &order, kind.name()).as_bytes(),
            )?;
            order[..m].to_vec()
        }
    };

    output::write_selected_indices(&selected_path, &selected)?;
    println!("method={} beta={} m={} d={} n={}", kind.name(), beta, m, d, x.samples());
    let printable: Vec<String> = selected.iter().map(|i| (i + 1).to_string()).collect();
    println!("selected features (1-based): {}", printable.join(" "));
    println!("wrote {}", ranking_path.display());
    println!("wrote {}", selected_path.display());
    Ok(())
}

fn with_suffix(prefix: &PathBuf, suffix: &str) -> PathBuf {
    let mut name = prefix.as_os_str().to_os_string();
    name.push(".");
    name.push(suffix);
    PathBuf::from(name)
}

fn build_config(
    config: &Option<PathBuf>,
    data: &Option<PathBuf>,
    format: &Option<String>,
    label_col: &Option<String>,
    header: bool,
    selector: Option<&str>,
    protocol: &ProtocolArgs,
) -> Result<ExperimentConfig> {
    let mut cfg = match config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::new(""),
    };
    if let Some(d) = data {
        cfg.data = d.clone();
    }
    if cfg.data.as_os_str().is_empty() {
        return Err(Error::config("data", "required key is missing"));
    }
    if let Some(f) = format {
        cfg.format = DataFormat::parse(f)?;
    }
    if let Some(lc) = label_col {
        cfg.label_col = lc.parse()?;
    }
    if header {
        cfg.has_header = true;
    }
    if let Some(s) = selector {
        cfg.protocol.selector.kind = SelectorKind::parse(s)?;
    }
    if let Some(beta) = &protocol.beta {
        cfg.protocol.selector.beta = BetaSpec::parse(beta)?;
    }
    if let Some(knn) = protocol.knn {
        cfg.protocol.selector.knn = knn;
    }
    if let Some(bw) = &protocol.bandwidth {
        cfg.protocol.selector.bandwidth = parse_bandwidth(bw)?;
    }
    if let Some(c) = &protocol.classifier {
        cfg.protocol.classifier.kind = ClassifierKind::parse(c)?;
    }
    if let Some(lambda) = protocol.lambda {
        cfg.protocol.classifier.lambda = lambda;
    }
    if let Some(epochs) = protocol.epochs {
        cfg.protocol.classifier.epochs = epochs;
    }
    if let Some(m_values) = &protocol.m_values {
        cfg.protocol.m_values = m_values.clone();
    }
    if let Some(count) = protocol.per_class {
        cfg.protocol.split.mode = crate::dataset::SplitMode::PerClassCount(count);
        if protocol.trials.is_none() && config.is_none() {
            cfg.protocol.split.trials = 10;
        }
    }
    if let Some(fraction) = protocol.fraction {
        cfg.protocol.split.mode = crate::dataset::SplitMode::Fraction(fraction);
    }
    if let Some(trials) = protocol.trials {
        cfg.protocol.split.trials = trials;
    }
    if let Some(seed) = protocol.seed {
        cfg.protocol.split.seed = seed;
    }
    if let Some(norm) = &protocol.normalize {
        cfg.protocol.normalize = match norm.to_ascii_lowercase().as_str() {
            "true" | "yes" | "1" => true,
            "false" | "no" | "0" => false,
            other => {
                return Err(Error::config(
                    "normalize",
                    format!("expected true or false, got `{}`", other),
                ))
            }
        };
    }
    if let Some(out) = &protocol.out {
        cfg.output = Some(out.clone());
    }
    Ok(cfg)
}

fn output_prefix(cfg: &ExperimentConfig, default_tag: &str) -> PathBuf {
    cfg.output.clone().unwrap_or_else(|| {
        let stem = cfg
            .data
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "dataset".to_string());
        PathBuf::from(format!("{}.{}", stem, default_tag))
    })
}

fn write_result_files(prefix: &PathBuf, table: &ResultTable) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    let results_path = with_suffix(prefix, "results.csv");
    output::write_atomic(&results_path, table.to_csv_string().as_bytes())?;
    written.push(results_path);

    let summary = summarize(table);
    let summary_path = with_suffix(prefix, "summary.json");
    output::write_atomic(&summary_path, summary.to_json_string().as_bytes())?;
    written.push(summary_path);

    for (selector, beta) in table.selector_betas() {
        let series = table.series(&selector, beta);
        let mut csv = String::from("m,mean,std\n");
        for (m, mean, std) in series {
            csv.push_str(&format!("{},{},{}\n", m, mean, std));
        }
        let series_path = with_suffix(prefix, &format!("series.{}.csv", selector));
        output::write_atomic(&series_path, csv.as_bytes())?;
        written.push(series_path);
    }
    Ok(written)
}

fn print_summary(table: &ResultTable) {
    let summary = summarize(table);
    println!("{:<10} {:>6} {:>6} {:>8} {:>8} {:>7}", "selector", "beta", "m", "mean", "std", "trials");
    for a in &summary.aggregates {
        println!(
            "{:<10} {:>6} {:>6} {:>8.4} {:>8.4} {:>7}",
            a.selector, a.beta, a.m, a.mean, a.std, a.trials
        );
    }
}

fn run_eval(args: EvalArgs, verbose: bool) -> Result<()> {
    let cfg = build_config(
        &args.config,
        &args.data,
        &args.format,
        &args.label_col,
        args.header,
        args.selector.as_deref(),
        &args.protocol,
    )?;
    let (x, y) = cfg.load_dataset()?;
    if cfg.protocol.m_values.is_empty() {
        return Err(Error::config("m_values", "required key is missing"));
    }
    if verbose {
        println!(
            "# data={} d={} n={} classes={} selector={} trials={}",
            cfg.data.display(),
            x.features(),
            x.samples(),
            y.class_count(),
            cfg.protocol.selector.kind.name(),
            cfg.protocol.split.trials
        );
    }
    let table = run_experiment_on(&x, &y, &cfg.protocol)?;
    let prefix = output_prefix(&cfg, "eval");
    let written = write_result_files(&prefix, &table)?;
    print_summary(&table);
    for path in written {
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn run_bench(args: BenchArgs, verbose: bool) -> Result<()> {
    let cfg = build_config(
        &args.config,
        &args.data,
        &args.format,
        &args.label_col,
        args.header,
        None,
        &args.protocol,
    )?;
    if cfg.protocol.m_values.is_empty() {
        return Err(Error::config("m_values", "required key is missing"));
    }
    let selectors: Vec<SelectorKind> = args
        .selectors
        .iter()
        .map(|s| SelectorKind::parse(s))
        .collect::<Result<_>>()?;
    let (x, y) = cfg.load_dataset()?;
    if verbose {
        println!(
            "# data={} d={} n={} classes={} selectors={:?}",
            cfg.data.display(),
            x.features(),
            x.samples(),
            y.class_count(),
            args.selectors
        );
    }

    // all selectors share the same split sequence (same seed, same trials)
    let mut combined = ResultTable::default();
    for kind in &selectors {
        let mut run = cfg.protocol.clone();
        run.selector.kind = *kind;
        combined.extend(run_experiment_on(&x, &y, &run)?);
    }

    let prefix = output_prefix(&cfg, "bench");
    let mut written = write_result_files(&prefix, &combined)?;

    if let Some(beta_list) = &args.beta_sweep {
        let mut sweep_protocol = cfg.protocol.clone();
        sweep_protocol.selector.kind = SelectorKind::Pwfp;
        sweep_protocol.beta_values = beta_list
            .iter()
            .map(|s| BetaSpec::parse(s))
            .collect::<Result<_>>()?;
        let sweep = beta_sweep_on(&x, &y, &sweep_protocol)?;
        let sweep_path = with_suffix(&prefix, "sweep.csv");
        output::write_atomic(&sweep_path, summarize(&sweep).to_csv_string().as_bytes())?;
        written.push(sweep_path);
        print_summary(&sweep);
    }

    print_summary(&combined);
    for path in written {
        println!("wrote {}", path.display());
    }
    Ok(())
}
