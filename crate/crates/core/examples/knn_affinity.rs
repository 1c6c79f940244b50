// k-NN graph, in-degrees, and the transition row driving each coin.

use qwc::affinity::{
    bias_map, degrees, knn_neighbor_sets, pairwise_distances, transition_row, AffinityInputs,
};
use qwc::PointCloud;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cloud = PointCloud::new(vec![
        vec![0.0, 0.0],
        vec![0.2, 0.1],
        vec![0.1, 0.3],
        vec![3.0, 3.0],
        vec![3.2, 2.9],
    ])?;
    let d = pairwise_distances(&cloud)?;
    let nbrs = knn_neighbor_sets(&d, 2)?;
    let deg = degrees(&nbrs);
    println!("in-degrees: {:?}", deg.0);

    let inputs = AffinityInputs {
        current: &d,
        initial: &d,
        current_degrees: &deg,
        initial_degrees: &deg,
        neighbors: &nbrs,
        distance_floor: 1e-12 * d.mean_pairwise(),
    };
    for i in 0..cloud.len() {
        let row = transition_row(i, &inputs);
        let ranked: Vec<String> = row
            .ranked()
            .iter()
            .map(|(j, p)| format!("{j}:{p:.3}"))
            .collect();
        println!(
            "point {i}: moves toward {}  rho={:.3}  row=[{}]",
            row.chosen,
            bias_map(row.max_prob())?,
            ranked.join(", ")
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
