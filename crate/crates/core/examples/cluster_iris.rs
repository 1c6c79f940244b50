// Load the bundled Iris file and cluster it.

use std::path::Path;

use qwc::dataset::KnownDataset;
use qwc::engine::run;
use qwc::eval::accuracy;
use qwc::AlgoConfig;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let data = KnownDataset::Iris.load(&dir, 0)?;
    let truth = data.labels.as_deref().expect("iris is labelled");
    println!(
        "{} instances, {} features, classes {:?}",
        data.len(),
        data.features.dims(),
        data.class_names
    );

    let cfg = AlgoConfig {
        seed: 1,
        target_clusters: Some(data.class_count()),
        ..AlgoConfig::default()
    };
    let result = run(&data.features, &cfg)?;
    println!(
        "mcms k={} r={}: {} iterations, accuracy {:.4}",
        cfg.k,
        cfg.r,
        result.iterations,
        accuracy(&result.labels, truth)?
    );
    println!("displacement trace (first 5): {:.3?}", &result.omega_trace[..5.min(result.omega_trace.len())]);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
