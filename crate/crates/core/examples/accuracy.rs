// Accuracy under the best one-to-one cluster/class matching.

use qwc::eval::{accuracy, ContingencyTable};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let truth = [0, 0, 0, 1, 1, 1];
    let pred = [2, 2, 0, 0, 0, 1];
    let table = ContingencyTable::new(&pred, &truth)?;
    println!("contingency (rows = predicted): {:?}", table.counts);
    println!("best matching covers {} of {}", table.best_matching(), table.total());
    println!("accuracy = {:.4}", accuracy(&pred, &truth)?);

    // Label names are irrelevant: a renamed perfect clustering scores 1.
    assert_eq!(accuracy(&[5, 5, 5, 9, 9, 9], &truth)?, 1.0);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
