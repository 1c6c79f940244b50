// Biased single-coin and multi-coin walks toward a neighbour.

use qwc::walk::{mcms_walk, scms_walk, CoinOperator, LatticeWalk, StepSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // Two steps of a rho=0.8 coin toward a neighbour at distance 1.
    let state = scms_walk(0.8, 1.0, 2)?;
    println!("single coin, rho=0.8, r=2:");
    for &(x, p) in state.distribution().points() {
        println!("  x={x:+.3}  p={p:.4}");
    }

    // One step per neighbour, biases from the two strongest affinities.
    let state = mcms_walk(&[0.8, 0.6], 1.0)?;
    println!("multi coin, etas=[0.8, 0.6]:");
    for (x, coin, amp) in state.components() {
        println!("  x={x:+.3}  coin={coin:?}  amplitude={amp:+.4}");
    }

    // With unit steps the peak drifts right as T grows.
    let coin = CoinOperator::biased(0.8)?;
    let mut walk = LatticeWalk::new();
    for t in 1..=100 {
        walk.step(&coin, &StepSpec::unit())?;
        if t == 30 || t == 100 {
            let (x, p) = walk.state().distribution().argmax().expect("non-empty");
            println!("unit steps, T={t}: peak at {x:+} (p={p:.4})");
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
