// Cluster well-separated synthetic blobs with both walk variants.

use qwc::dataset::synth_blobs;
use qwc::engine::run;
use qwc::eval::accuracy;
use qwc::{AlgoConfig, Variant};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let centers = vec![vec![0.0, 0.0], vec![10.0, 0.0], vec![0.0, 10.0], vec![10.0, 10.0]];
    let data = synth_blobs(&centers, 30, 0.6, 7)?;
    let truth = data.labels.as_deref().expect("blobs are labelled");

    for variant in [Variant::Scms, Variant::Mcms] {
        let cfg = AlgoConfig {
            variant,
            k: 8,
            seed: 1,
            target_clusters: Some(4),
            ..AlgoConfig::default()
        };
        let result = run(&data.features, &cfg)?;
        println!(
            "{variant}: {} clusters after {} iterations (converged={}), accuracy {:.3}",
            result.cluster_count,
            result.iterations,
            result.converged,
            accuracy(&result.labels, truth)?
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
