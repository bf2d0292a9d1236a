//! File emitters shared by the CLI and the harness.
//!
//! Every writer goes through [`write_atomic`] (temp file in the target
//! directory, then rename), so an interrupted run never leaves a truncated
//! file behind. Feature indices are 1-based in all emitted files; scores
//! that are not finite are emitted as an empty field.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::Result;
use crate::proximity::FeatureRanking;

/// Writes `bytes` to `path` via a temporary sibling file and an atomic rename.
pub fn write_atomic(path: impl AsRef<Path>, bytes: &[u8]) -> Result<()> {
    let path = path.as_ref();
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let mut tmp = match dir {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            tempfile_in(dir)?
        }
        None => tempfile_in(Path::new("."))?,
    };
    tmp.1.write_all(bytes)?;
    tmp.1.sync_all()?;
    drop(tmp.1);
    fs::rename(&tmp.0, path)?;
    Ok(())
}

fn tempfile_in(dir: &Path) -> Result<(std::path::PathBuf, fs::File)> {
    // unique-ish name: pid + a monotonically bumped counter
    use std::sync::atomic::{AtomicU64, Ordering};
    static COUNTER: AtomicU64 = AtomicU64::new(0);
    let name = format!(
        ".tmp-{}-{}",
        std::process::id(),
        COUNTER.fetch_add(1, Ordering::Relaxed)
    );
    let path = dir.join(name);
    let file = fs::File::create(&path)?;
    Ok((path, file))
}

fn format_score(score: f64) -> String {
    if score.is_finite() {
        format!("{}", score)
    } else {
        String::new()
    }
}

/// Ranking CSV `feature_index,score,rank`, one row per feature in rank
/// order. Feature indices are 1-based; undefined scores are empty fields.
pub fn ranking_csv(ranking: &FeatureRanking) -> String {
    let mut out = String::from("feature_index,score,rank\n");
    for (rank, &i) in ranking.order().iter().enumerate() {
        out.push_str(&format!(
            "{},{},{}\n",
            i + 1,
            format_score(ranking.scores()[i]),
            rank + 1
        ));
    }
    out
}

/// Ranking CSV for arbitrary score vectors, with a trailing `method` column:
/// `feature_index,score,rank,method`. `order` is best-first.
pub fn ranking_csv_with_method(scores: &[f64], order: &[usize], method: &str) -> String {
    let mut out = String::from("feature_index,score,rank,method\n");
    for (rank, &i) in order.iter().enumerate() {
        out.push_str(&format!(
            "{},{},{},{}\n",
            i + 1,
            format_score(scores[i]),
            rank + 1,
            method
        ));
    }
    out
}

/// Selected-subset file: one 1-based feature index per line.
pub fn selected_indices_text(selected: &[usize]) -> String {
    let mut out = String::new();
    for &i in selected {
        out.push_str(&format!("{}\n", i + 1));
    }
    out
}

pub fn write_ranking_csv(path: impl AsRef<Path>, ranking: &FeatureRanking) -> Result<()> {
    write_atomic(path, ranking_csv(ranking).as_bytes())
}

pub fn write_selected_indices(path: impl AsRef<Path>, selected: &[usize]) -> Result<()> {
    write_atomic(path, selected_indices_text(selected).as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranking_csv_formats_sentinel_as_empty() {
        let ranking = FeatureRanking::from_scores(vec![0.5, f64::INFINITY, 0.25]);
        let csv = ranking_csv(&ranking);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "feature_index,score,rank");
        assert_eq!(lines[1], "3,0.25,1");
        assert_eq!(lines[2], "1,0.5,2");
        assert_eq!(lines[3], "2,,3");
    }

    #[test]
    fn selected_indices_are_one_based() {
        assert_eq!(selected_indices_text(&[0, 4, 2]), "1\n5\n3\n");
    }

    #[test]
    fn atomic_write_replaces_existing_content() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.txt");
        write_atomic(&path, b"first").unwrap();
        write_atomic(&path, b"second").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "second");
        // no temp files left behind
        let leftovers: Vec<_> = std::fs::read_dir(dir.path())
            .unwrap()
            .filter_map(|e| e.ok())
            .filter(|e| e.file_name().to_string_lossy().starts_with(".tmp-"))
            .collect();
        assert!(leftovers.is_empty());
    }

    #[test]
    fn method_column_appended() {
        let csv = ranking_csv_with_method(&[0.9, 0.1], &[1, 0], "fisher");
        assert!(csv.starts_with("feature_index,score,rank,method\n"));
        assert!(csv.contains("2,0.1,1,fisher"));
    }
}
