//! Dataset ingestion end to end: parse CSV and libsvm text, z-score with
//! train statistics, split reproducibly, and write the artifacts back out.
//!
//! Run: cargo run --example dataset_pipeline

use pwfp::dataset::{
    parse_csv, parse_libsvm, save_csv, stratified_split, zscore_normalize, LabelColumn, SplitSpec,
};

fn main() -> pwfp::Result<()> {
    // the same four samples in both supported formats
    let csv_text = "\
5.1,3.5,1.4,setosa
4.9,3.0,1.3,setosa
6.2,2.9,4.3,versicolor
5.9,3.2,4.8,versicolor
";
    let libsvm_text = "\
setosa 1:5.1 2:3.5 3:1.4
setosa 1:4.9 2:3.0 3:1.3
versicolor 1:6.2 2:2.9 3:4.3
versicolor 1:5.9 2:3.2 3:4.8
";

    let (x_csv, y_csv) = parse_csv(csv_text, &LabelColumn::Last, false)?;
    let (x_svm, y_svm) = parse_libsvm(libsvm_text)?;
    assert_eq!(x_csv, x_svm);
    assert_eq!(y_csv.ids(), y_svm.ids());
    println!(
        "loaded d={} n={} classes={:?} (identical from both formats)",
        x_csv.features(),
        x_csv.samples(),
        (1..=y_csv.class_count()).map(|k| y_csv.token(k)).collect::<Vec<_>>()
    );

    // reproducible stratified split: one training sample per class
    let spec = SplitSpec::per_class(1, 2024, 1);
    let (train_idx, test_idx) = stratified_split(&y_csv, &spec, 0)?;
    println!("train samples: {:?}, test samples: {:?}", train_idx, test_idx);

    // normalization is fitted on train and applied to both partitions
    let x_train = x_csv.select_columns(&train_idx)?;
    let x_test = x_csv.select_columns(&test_idx)?;
    let (z_train, norm) = zscore_normalize(&x_train)?;
    let z_test = norm.apply(&x_test)?;
    println!("\ntrain means: {:?}", norm.means());
    println!("train stds:  {:?}", norm.stds());
    println!("z-scored train column 0: {:?}", z_train.column(0));
    println!("z-scored test column 0:  {:?}", z_test.column(0));

    // artifacts round-trip through files
    let dir = std::env::temp_dir().join("pwfp_dataset_pipeline");
    std::fs::create_dir_all(&dir)?;
    let data_path = dir.join("iris_mini.csv");
    save_csv(&data_path, &x_csv, &y_csv)?;
    let norm_path = dir.join("normalization.csv");
    norm.write_csv(&norm_path)?;
    println!("\nwrote {}", data_path.display());
    println!("wrote {} (means row, stds row)", norm_path.display());
    Ok(())
}
