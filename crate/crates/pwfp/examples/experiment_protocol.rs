//! The full evaluation protocol on one dataset: repeated stratified
//! splits, train-only normalization and selection, a linear SVM per
//! feature-count, and aggregated accuracy.
//!
//! Run: cargo run --example experiment_protocol

use pwfp::dataset::SplitSpec;
use pwfp::harness::{
    run_experiment_on, summarize, ClassifierConfig, Protocol, SelectorConfig, SelectorKind,
};
use pwfp::synth::{planted_dataset, PlantedConfig};

fn main() {
    let (x, y, _) = planted_dataset(&PlantedConfig {
        features: 400,
        class_sizes: (20, 24),
        planted: 12,
        gap: 2.5,
        within_std: 0.4,
        min_index: 10,
        seed: 11,
    })
    .expect("generate dataset");

    let base = Protocol {
        split: SplitSpec::per_class(10, 99, 10),
        normalize: false,
        selector: SelectorConfig::default(),
        classifier: ClassifierConfig::default(),
        m_values: vec![2, 5, 10, 20, 50, 100],
        beta_values: vec![],
    };

    println!(
        "dataset: d={} n={}; 10 samples/class train, {} trials, linear SVM\n",
        x.features(),
        x.samples(),
        base.split.trials
    );
    println!("{:<10} {:>5} {:>9} {:>8}", "selector", "m", "mean acc", "std");
    println!("{}", "-".repeat(36));
    for kind in [SelectorKind::Pwfp, SelectorKind::Fisher, SelectorKind::Random] {
        let mut protocol = base.clone();
        protocol.selector.kind = kind;
        let table = run_experiment_on(&x, &y, &protocol).expect("experiment");
        for a in &summarize(&table).aggregates {
            println!(
                "{:<10} {:>5} {:>9.3} {:>8.3}",
                a.selector, a.m, a.mean, a.std
            );
        }
        println!();
    }
    println!("the random selector is the control arm; selection never sees test data.");
}
