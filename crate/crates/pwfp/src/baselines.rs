//! Reference filter methods: Fisher score and Laplacian score, plus the
//! distance and similarity-graph utilities the latter needs.
//!
//! Fisher score (higher is better):
//!
//! ```text
//! F(i) = sum_k n_k (mu_k[i] - mu[i])^2 / sum_k n_k var_k[i]
//! ```
//!
//! Laplacian score (lower is better), given a similarity graph S:
//!
//! ```text
//! L(i) = sum_{j,k} (x[i,j] - x[i,k])^2 S[j,k] / Var(feature i)
//! ```
//!
//! Class and feature variances use the population convention, consistent
//! with the dataset module.

use crate::dataset::{DataMatrix, LabelVector};
use crate::error::{Error, Result};

/// Per-class, per-feature first and second moments.
#[derive(Debug, Clone)]
pub struct ClassStatistics {
    /// `means[k-1][i]`: mean of feature i within class k.
    pub means: Vec<Vec<f64>>,
    /// `vars[k-1][i]`: population variance of feature i within class k.
    pub vars: Vec<Vec<f64>>,
    /// Global per-feature means.
    pub global_means: Vec<f64>,
    /// Samples per class.
    pub sizes: Vec<usize>,
}

/// Computes per-class means/variances and the global mean in one pass.
pub fn class_statistics(x: &DataMatrix, y: &LabelVector) -> Result<ClassStatistics> {
    if x.samples() != y.len() {
        return Err(Error::InvalidArgument(format!(
            "matrix has {} samples but label vector has {}",
            x.samples(),
            y.len()
        )));
    }
    let d = x.features();
    let c = y.class_count();
    let sizes = y.class_sizes();
    let mut sums = vec![vec![0.0; d]; c];
    let mut sq_sums = vec![vec![0.0; d]; c];
    for j in 0..x.samples() {
        let k = y.ids()[j] - 1;
        let col = x.column(j);
        for i in 0..d {
            sums[k][i] += col[i];
            sq_sums[k][i] += col[i] * col[i];
        }
    }
    let mut means = vec![vec![0.0; d]; c];
    let mut vars = vec![vec![0.0; d]; c];
    let mut global_means = vec![0.0; d];
    let n = x.samples() as f64;
    for k in 0..c {
        let nk = sizes[k] as f64;
        for i in 0..d {
            if sizes[k] > 0 {
                let mean = sums[k][i] / nk;
                means[k][i] = mean;
                vars[k][i] = (sq_sums[k][i] / nk - mean * mean).max(0.0);
            }
            global_means[i] += sums[k][i];
        }
    }
    for g in &mut global_means {
        *g /= n;
    }
    Ok(ClassStatistics {
        means,
        vars,
        global_means,
        sizes,
    })
}

/// Fisher score per feature; higher is better, rank with [`rank_descending`].
///
/// Degenerate features resolve explicitly instead of propagating NaN:
/// zero within-class scatter with nonzero between-class scatter scores
/// `+inf` (a perfect separator), zero over zero scores `-inf` (no signal).
pub fn fisher_score(x: &DataMatrix, y: &LabelVector) -> Result<Vec<f64>> {
    if y.class_count() < 2 {
        return Err(Error::Validation(
            "fisher score needs at least 2 classes".into(),
        ));
    }
    // Class variances are recomputed against the exact class mean here
    // (two-pass) so that a feature constant within every class yields an
    // exactly zero denominator.
    let d = x.features();
    let c = y.class_count();
    let sizes = y.class_sizes();
    let per_class: Vec<Vec<usize>> = (1..=c).map(|k| y.class_indices(k)).collect();

    let mut scores = vec![0.0; d];
    for i in 0..d {
        let feature = x.feature(i);
        let global_mean: f64 = feature.iter().sum::<f64>() / feature.len() as f64;
        let mut numerator = 0.0;
        let mut denominator = 0.0;
        for k in 0..c {
            let members = &per_class[k];
            if members.is_empty() {
                continue;
            }
            let nk = sizes[k] as f64;
            let mean: f64 = members.iter().map(|&j| feature[j]).sum::<f64>() / nk;
            let var: f64 = members
                .iter()
                .map(|&j| (feature[j] - mean) * (feature[j] - mean))
                .sum::<f64>()
                / nk;
            numerator += nk * (mean - global_mean) * (mean - global_mean);
            denominator += nk * var;
        }
        scores[i] = if denominator > 0.0 {
            numerator / denominator
        } else if numerator > 0.0 {
            f64::INFINITY
        } else {
            f64::NEG_INFINITY
        };
    }
    Ok(scores)
}

/// Symmetric pairwise Euclidean distance matrix with a zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    values: Vec<f64>,
    n: usize,
}

impl DistanceMatrix {
    pub fn get(&self, j: usize, k: usize) -> f64 {
        self.values[j * self.n + k]
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// All-pairs Euclidean distances between sample columns.
pub fn euclidean_distance_matrix(x: &DataMatrix) -> DistanceMatrix {
    let n = x.samples();
    let mut values = vec![0.0; n * n];
    for j in 0..n {
        let col_j = x.column(j);
        for k in (j + 1)..n {
            let dist = euclidean_distance(col_j, x.column(k));
            values[j * n + k] = dist;
            values[k * n + j] = dist;
        }
    }
    DistanceMatrix { values, n }
}

fn euclidean_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Heat-kernel similarity over an OR-symmetrized k-nearest-neighbor graph.
#[derive(Debug, Clone)]
pub struct SimilarityGraph {
    weights: Vec<f64>,
    n: usize,
    k_nn: usize,
    bandwidth: f64,
}

impl SimilarityGraph {
    pub fn weight(&self, j: usize, k: usize) -> f64 {
        self.weights[j * self.n + k]
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k_nn(&self) -> usize {
        self.k_nn
    }

    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }
}

/// Builds the similarity graph used by the Laplacian score.
///
/// `S[j,k] = exp(-dist^2(j,k) / bandwidth)` when k is among the `k_nn`
/// nearest neighbors of j or vice versa, 0 otherwise (and on the diagonal).
/// `bandwidth = None` picks the mean squared pairwise distance; neighbor
/// ties break toward the lower sample index.
pub fn build_similarity_graph(
    x: &DataMatrix,
    k_nn: usize,
    bandwidth: Option<f64>,
) -> Result<SimilarityGraph> {
    let n = x.samples();
    if k_nn == 0 || k_nn >= n {
        return Err(Error::InvalidArgument(format!(
            "k_nn must be in [1, {}), got {}",
            n, k_nn
        )));
    }
    if let Some(b) = bandwidth {
        if !(b > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "bandwidth must be positive, got {}",
                b
            )));
        }
    }
    let dist = euclidean_distance_matrix(x);

    let bandwidth = bandwidth.unwrap_or_else(|| {
        let mut sum = 0.0;
        let mut pairs = 0usize;
        for j in 0..n {
            for k in (j + 1)..n {
                let d = dist.get(j, k);
                sum += d * d;
                pairs += 1;
            }
        }
        let mean = sum / pairs as f64;
        if mean > 0.0 {
            mean
        } else {
            1.0 // all points coincide; any positive value gives weight 1
        }
    });

    // OR-symmetrized kNN adjacency
    let mut adjacent = vec![false; n * n];
    for j in 0..n {
        let mut order: Vec<usize> = (0..n).filter(|&k| k != j).collect();
        order.sort_by(|&a, &b| dist.get(j, a).total_cmp(&dist.get(j, b)).then(a.cmp(&b)));
        for &k in &order[..k_nn] {
            adjacent[j * n + k] = true;
            adjacent[k * n + j] = true;
        }
    }

    let mut weights = vec![0.0; n * n];
    for j in 0..n {
        for k in 0..n {
            if j != k && adjacent[j * n + k] {
                let d = dist.get(j, k);
                weights[j * n + k] = (-(d * d) / bandwidth).exp();
            }
        }
    }
    Ok(SimilarityGraph {
        weights,
        n,
        k_nn,
        bandwidth,
    })
}

/// Laplacian score per feature; lower is better, rank with [`rank_ascending`].
///
/// The numerator sums `(x[i,j] - x[i,k])^2 S[j,k]` over all ordered pairs;
/// features with zero variance score `+inf` (worst).
pub fn laplacian_score(x: &DataMatrix, graph: &SimilarityGraph) -> Result<Vec<f64>> {
    let n = x.samples();
    if graph.n() != n {
        return Err(Error::InvalidArgument(format!(
            "graph has {} nodes but matrix has {} samples",
            graph.n(),
            n
        )));
    }
    let d = x.features();
    let mut scores = vec![0.0; d];
    for i in 0..d {
        let feature = x.feature(i);
        let mean: f64 = feature.iter().sum::<f64>() / n as f64;
        let var: f64 = feature.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n as f64;
        if var <= 0.0 {
            scores[i] = f64::INFINITY;
            continue;
        }
        let mut numerator = 0.0;
        for j in 0..n {
            for k in 0..n {
                let w = graph.weight(j, k);
                if w != 0.0 {
                    let diff = feature[j] - feature[k];
                    numerator += diff * diff * w;
                }
            }
        }
        scores[i] = numerator / var;
    }
    Ok(scores)
}

/// Indices sorted by descending score, ties toward the lower index.
pub fn rank_descending(scores: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
    order
}

/// Indices sorted by ascending score, ties toward the lower index.
pub fn rank_ascending(scores: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]).then(a.cmp(&b)));
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_dataset(
        rng: &mut ChaCha8Rng,
        d: usize,
        n: usize,
        classes: usize,
    ) -> (DataMatrix, LabelVector) {
        let cols: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..d).map(|_| rng.random_range(-3.0..3.0)).collect())
            .collect();
        let ids: Vec<usize> = (0..n).map(|j| 1 + j % classes).collect();
        (
            DataMatrix::from_columns(&cols).unwrap(),
            LabelVector::from_ids(ids).unwrap(),
        )
    }

    #[test]
    fn fisher_perfect_separator_ranks_first() {
        let x = DataMatrix::from_rows(&[
            vec![0.0, 0.0, 1.0, 1.0],
            vec![0.3, -0.1, 0.2, 0.0],
        ])
        .unwrap();
        let y = LabelVector::from_ids(vec![1, 1, 2, 2]).unwrap();
        let scores = fisher_score(&x, &y).unwrap();
        assert!(scores[0].is_infinite() && scores[0] > 0.0);
        assert_eq!(rank_descending(&scores)[0], 0);
    }

    #[test]
    fn fisher_constant_feature_ranks_last() {
        let x = DataMatrix::from_rows(&[
            vec![2.0, 2.0, 2.0, 2.0],
            vec![0.0, 1.0, 4.0, 5.0],
        ])
        .unwrap();
        let y = LabelVector::from_ids(vec![1, 1, 2, 2]).unwrap();
        let scores = fisher_score(&x, &y).unwrap();
        assert_eq!(scores[0], f64::NEG_INFINITY);
        assert_eq!(*rank_descending(&scores).last().unwrap(), 0);
    }

    #[test]
    fn fisher_single_class_rejected() {
        let x = DataMatrix::from_rows(&[vec![1.0, 2.0]]).unwrap();
        let y = LabelVector::from_ids(vec![1, 1]).unwrap();
        assert!(fisher_score(&x, &y).is_err());
    }

    /// Naive direct evaluation of the score formula.
    fn fisher_naive(x: &DataMatrix, y: &LabelVector) -> Vec<f64> {
        let d = x.features();
        let mut out = vec![0.0; d];
        for i in 0..d {
            let f = x.feature(i);
            let mu = f.iter().sum::<f64>() / f.len() as f64;
            let mut num = 0.0;
            let mut den = 0.0;
            for k in 1..=y.class_count() {
                let members = y.class_indices(k);
                let nk = members.len() as f64;
                let mk = members.iter().map(|&j| f[j]).sum::<f64>() / nk;
                let vk = members.iter().map(|&j| (f[j] - mk) * (f[j] - mk)).sum::<f64>() / nk;
                num += nk * (mk - mu) * (mk - mu);
                den += nk * vk;
            }
            out[i] = if den > 0.0 {
                num / den
            } else if num > 0.0 {
                f64::INFINITY
            } else {
                f64::NEG_INFINITY
            };
        }
        out
    }

    #[test]
    fn fisher_matches_naive_recomputation() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..10 {
            let (x, y) = random_dataset(&mut rng, 7, 6, 2);
            let fast = fisher_score(&x, &y).unwrap();
            let slow = fisher_naive(&x, &y);
            for (a, b) in fast.iter().zip(&slow) {
                assert!((a - b).abs() <= 1e-9, "{} vs {}", a, b);
            }
        }
    }

    #[test]
    fn fisher_affine_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let (x, y) = random_dataset(&mut rng, 5, 8, 2);
        let scores = fisher_score(&x, &y).unwrap();
        let rows: Vec<Vec<f64>> = (0..x.features())
            .map(|i| {
                let a = if i % 2 == 0 { -3.5 } else { 0.25 };
                let b = 1.75 * i as f64 - 2.0;
                x.feature_iter(i).map(|v| a * v + b).collect()
            })
            .collect();
        let xt = DataMatrix::from_rows(&rows).unwrap();
        let scores_t = fisher_score(&xt, &y).unwrap();
        for (s, t) in scores.iter().zip(&scores_t) {
            assert!((s - t).abs() <= 1e-9, "{} vs {}", s, t);
        }
    }

    #[test]
    fn distance_three_four_five() {
        let x = DataMatrix::from_columns(&[vec![0.0, 0.0], vec![3.0, 4.0]]).unwrap();
        let dist = euclidean_distance_matrix(&x);
        assert_eq!(dist.get(0, 1), 5.0);
        assert_eq!(dist.get(1, 0), 5.0);
        assert_eq!(dist.get(0, 0), 0.0);
    }

    #[test]
    fn distance_identical_columns_and_symmetry() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let cols: Vec<Vec<f64>> = (0..4)
            .map(|_| (0..4).map(|_| rng.random_range(-1.0..1.0)).collect())
            .collect();
        let mut cols = cols;
        cols[3] = cols[1].clone();
        let x = DataMatrix::from_columns(&cols).unwrap();
        let dist = euclidean_distance_matrix(&x);
        assert_eq!(dist.get(1, 3), 0.0);
        for j in 0..4 {
            for k in 0..4 {
                assert!((dist.get(j, k) - dist.get(k, j)).abs() <= 1e-12);
                let naive = euclidean_distance(x.column(j), x.column(k));
                assert!((dist.get(j, k) - naive).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn distance_triangle_inequality() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let cols: Vec<Vec<f64>> = (0..6)
            .map(|_| (0..10).map(|_| rng.random_range(-5.0..5.0)).collect())
            .collect();
        let x = DataMatrix::from_columns(&cols).unwrap();
        let dist = euclidean_distance_matrix(&x);
        for a in 0..6 {
            for b in 0..6 {
                for c in 0..6 {
                    assert!(dist.get(a, c) <= dist.get(a, b) + dist.get(b, c) + 1e-9);
                }
            }
        }
    }

    #[test]
    fn coincident_points_get_unit_similarity() {
        let x = DataMatrix::from_columns(&[vec![1.0, 2.0], vec![1.0, 2.0]]).unwrap();
        let g = build_similarity_graph(&x, 1, None).unwrap();
        assert_eq!(g.weight(0, 1), 1.0);
        assert_eq!(g.weight(0, 0), 0.0);
    }

    #[test]
    fn graph_is_symmetric_with_zero_diagonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let cols: Vec<Vec<f64>> = (0..7)
            .map(|_| (0..3).map(|_| rng.random_range(-2.0..2.0)).collect())
            .collect();
        let x = DataMatrix::from_columns(&cols).unwrap();
        let g = build_similarity_graph(&x, 2, None).unwrap();
        for j in 0..7 {
            assert_eq!(g.weight(j, j), 0.0);
            for k in 0..7 {
                assert_eq!(g.weight(j, k), g.weight(k, j));
                let w = g.weight(j, k);
                assert!(w == 0.0 || (w > 0.0 && w <= 1.0));
            }
        }
    }

    #[test]
    fn graph_nonzero_pattern_matches_naive_knn() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let cols: Vec<Vec<f64>> = (0..5)
            .map(|_| (0..4).map(|_| rng.random_range(-1.0..1.0)).collect())
            .collect();
        let x = DataMatrix::from_columns(&cols).unwrap();
        let k_nn = 2;
        let g = build_similarity_graph(&x, k_nn, None).unwrap();
        let dist = euclidean_distance_matrix(&x);
        // naive OR-symmetrized kNN adjacency from a full sort
        let n = 5;
        let mut adj = vec![false; n * n];
        for j in 0..n {
            let mut others: Vec<usize> = (0..n).filter(|&k| k != j).collect();
            others.sort_by(|&a, &b| dist.get(j, a).total_cmp(&dist.get(j, b)).then(a.cmp(&b)));
            for &k in &others[..k_nn] {
                adj[j * n + k] = true;
                adj[k * n + j] = true;
            }
        }
        for j in 0..n {
            for k in 0..n {
                assert_eq!(g.weight(j, k) != 0.0, j != k && adj[j * n + k]);
            }
        }
    }

    #[test]
    fn knn_bounds_checked() {
        let x = DataMatrix::from_columns(&[vec![0.0], vec![1.0], vec![2.0]]).unwrap();
        assert!(build_similarity_graph(&x, 3, None).is_err());
        assert!(build_similarity_graph(&x, 0, None).is_err());
        assert!(build_similarity_graph(&x, 1, Some(-1.0)).is_err());
    }

    #[test]
    fn laplacian_constant_feature_is_worst() {
        let x = DataMatrix::from_rows(&[
            vec![3.0, 3.0, 3.0, 3.0],
            vec![0.0, 1.0, 2.0, 3.0],
        ])
        .unwrap();
        let g = build_similarity_graph(&x, 1, None).unwrap();
        let scores = laplacian_score(&x, &g).unwrap();
        assert_eq!(scores[0], f64::INFINITY);
        assert_eq!(*rank_ascending(&scores).last().unwrap(), 0);
    }

    #[test]
    fn laplacian_graph_aligned_feature_is_best() {
        // two tight spatial clusters; feature 0 is constant within each
        // cluster and differs across them, feature 1 varies inside clusters
        let cols = [
            vec![1.0, 0.00],
            vec![1.0, 0.30],
            vec![1.0, -0.25],
            vec![9.0, 0.10],
            vec![9.0, -0.20],
            vec![9.0, 0.25],
        ];
        let x = DataMatrix::from_columns(&cols).unwrap();
        let g = build_similarity_graph(&x, 2, Some(1.0)).unwrap();
        let scores = laplacian_score(&x, &g).unwrap();
        assert_eq!(scores[0], 0.0);
        assert!(scores[1] > 0.0);
        assert_eq!(rank_ascending(&scores)[0], 0);
    }

    /// Literal double-loop evaluation.
    fn laplacian_naive(x: &DataMatrix, g: &SimilarityGraph) -> Vec<f64> {
        let n = x.samples();
        (0..x.features())
            .map(|i| {
                let f = x.feature(i);
                let mean = f.iter().sum::<f64>() / n as f64;
                let var = f.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n as f64;
                if var <= 0.0 {
                    return f64::INFINITY;
                }
                let mut num = 0.0;
                for j in 0..n {
                    for k in 0..n {
                        num += (f[j] - f[k]) * (f[j] - f[k]) * g.weight(j, k);
                    }
                }
                num / var
            })
            .collect()
    }

    #[test]
    fn laplacian_matches_double_loop() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let cols: Vec<Vec<f64>> = (0..6)
            .map(|_| (0..6).map(|_| rng.random_range(-2.0..2.0)).collect())
            .collect();
        let x = DataMatrix::from_columns(&cols).unwrap();
        let g = build_similarity_graph(&x, 3, None).unwrap();
        let fast = laplacian_score(&x, &g).unwrap();
        let slow = laplacian_naive(&x, &g);
        for (a, b) in fast.iter().zip(&slow) {
            assert!((a - b).abs() <= 1e-9);
        }
    }

    #[test]
    fn laplacian_numerator_equals_quadratic_form() {
        // sum_{j,k} (f_j - f_k)^2 S_jk == 2 f^T (D - S) f
        let mut rng = ChaCha8Rng::seed_from_u64(44);
        let cols: Vec<Vec<f64>> = (0..6)
            .map(|_| (0..4).map(|_| rng.random_range(-2.0..2.0)).collect())
            .collect();
        let x = DataMatrix::from_columns(&cols).unwrap();
        let g = build_similarity_graph(&x, 2, None).unwrap();
        let n = x.samples();
        for i in 0..x.features() {
            let f = x.feature(i);
            let mut pairwise = 0.0;
            for j in 0..n {
                for k in 0..n {
                    pairwise += (f[j] - f[k]) * (f[j] - f[k]) * g.weight(j, k);
                }
            }
            let mut quad = 0.0;
            for j in 0..n {
                let degree: f64 = (0..n).map(|k| g.weight(j, k)).sum();
                quad += degree * f[j] * f[j];
                for k in 0..n {
                    quad -= g.weight(j, k) * f[j] * f[k];
                }
            }
            assert!((pairwise - 2.0 * quad).abs() <= 1e-9);
        }
    }

    #[test]
    fn laplacian_dimension_mismatch() {
        let x = DataMatrix::from_columns(&[vec![0.0], vec![1.0], vec![2.0]]).unwrap();
        let g = build_similarity_graph(&x, 1, None).unwrap();
        let x2 = DataMatrix::from_columns(&[vec![0.0], vec![1.0]]).unwrap();
        assert!(laplacian_score(&x2, &g).is_err());
    }

    #[test]
    fn class_statistics_reconstruct_global_mean() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        let (x, y) = random_dataset(&mut rng, 4, 9, 3);
        let stats = class_statistics(&x, &y).unwrap();
        assert_eq!(stats.sizes.iter().sum::<usize>(), x.samples());
        let n = x.samples() as f64;
        for i in 0..x.features() {
            let weighted: f64 = (0..y.class_count())
                .map(|k| stats.sizes[k] as f64 * stats.means[k][i])
                .sum::<f64>()
                / n;
            assert!((weighted - stats.global_means[i]).abs() <= 1e-9);
        }
    }
}
