// Exact position distribution of an unbiased Hadamard walk.

use qwc::walk::hadamard_walk;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for steps in [1, 2, 3, 10, 100] {
        let dist = hadamard_walk(steps)?;
        println!(
            "T={steps:>3}  positions={:>3}  total={:.15}  mean={:+.4}  std={:.4}",
            dist.len(),
            dist.total(),
            dist.mean(),
            dist.std_dev()
        );
    }
    // The walk spreads ballistically: the spread grows linearly in T,
    // far beyond the sqrt(T) of a classical random walk.
    let dist = hadamard_walk(100)?;
    assert!(dist.std_dev() > 30.0);

    let mut csv = Vec::new();
    hadamard_walk(3)?.write_csv(&mut csv)?;
    print!("{}", String::from_utf8(csv)?);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
