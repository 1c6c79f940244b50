// Sweep k, r and seed on synthetic data and print the report.

use qwc::dataset::synth_blobs;
use qwc::eval::{sweep, SweepGrid};
use qwc::{AlgoConfig, Variant};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let centers = vec![vec![0.0, 0.0, 0.0], vec![6.0, 0.0, 0.0], vec![0.0, 6.0, 0.0]];
    let data = synth_blobs(&centers, 25, 0.8, 3)?;
    let grid = SweepGrid {
        ks: vec![4, 8, 12],
        rs: vec![5, 6],
        seeds: vec![1, 2],
    };
    let report = sweep("blobs", &data, Variant::Mcms, &grid, &AlgoConfig::default())?;
    print!("{}", report.to_text());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
