// Parse delimited data with missing cells, normalise, and write it back.

use qwc::dataset::{normalize_minmax, parse_csv, write_csv, CsvSchema};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let raw = "\
101,5,1,?,benign
102,3,?,4,malignant
103,8,2,6,benign
104,1,9,2,malignant
";
    let schema = CsvSchema {
        ignore_columns: vec![0],
        ..CsvSchema::default()
    };
    let data = parse_csv(raw.as_bytes(), &schema, 42, "inline")?;
    println!("{:?}", data.provenance);
    println!("labels {:?} names {:?}", data.labels, data.class_names);

    let mut out = Vec::new();
    write_csv(&normalize_minmax(&data), &mut out, b',')?;
    print!("{}", String::from_utf8(out)?);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
