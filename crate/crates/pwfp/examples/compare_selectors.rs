//! Rank the same dataset with all three filter methods and compare what
//! they recover.
//!
//! Run: cargo run --example compare_selectors

use pwfp::baselines::{
    build_similarity_graph, fisher_score, laplacian_score, rank_ascending, rank_descending,
};
use pwfp::pwfp_select;
use pwfp::synth::{planted_dataset, PlantedConfig};

fn main() {
    let (x, y, planted) = planted_dataset(&PlantedConfig {
        features: 300,
        class_sizes: (9, 11),
        planted: 8,
        gap: 3.0,
        within_std: 0.01,
        min_index: 10,
        seed: 3,
    })
    .expect("generate dataset");
    let m = 8;

    let (pwfp_top, _) = pwfp_select(&x, &y, m, None).expect("pwfp");

    let fisher = fisher_score(&x, &y).expect("fisher");
    let fisher_top = rank_descending(&fisher)[..m].to_vec();

    let graph = build_similarity_graph(&x, 5, None).expect("graph");
    let laplacian = laplacian_score(&x, &graph).expect("laplacian");
    let laplacian_top = rank_ascending(&laplacian)[..m].to_vec();

    let hits = |top: &[usize]| top.iter().filter(|i| planted.contains(i)).count();
    println!(
        "dataset: d={} n={}, {} planted features, selecting m={}",
        x.features(),
        x.samples(),
        planted.len(),
        m
    );
    println!();
    println!("{:<10}  {:>7}  top picks (1-based)", "method", "planted");
    println!("{}", "-".repeat(60));
    for (name, top) in [
        ("pwfp", &pwfp_top),
        ("fisher", &fisher_top),
        ("laplacian", &laplacian_top),
    ] {
        let picks: Vec<usize> = top.iter().map(|i| i + 1).collect();
        println!("{:<10}  {:>4}/{}  {:?}", name, hits(top), m, picks);
    }
    println!();
    println!(
        "note: fisher sorts descending (higher is better), laplacian and pwfp sort ascending."
    );
}
