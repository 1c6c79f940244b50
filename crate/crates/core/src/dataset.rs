//! Loading labelled data from delimited text, and generating synthetic blobs.

use std::fs::File;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::Serialize;

use crate::engine::PointCloud;
use crate::error::{domain, Error, Result};
use crate::fmt::g17;
use crate::rng::tagged_stream;

const IMPUTE_TAG: u64 = 0x1a7e;
const BLOB_TAG: u64 = 0xb10b;

/// Layout of a delimited text file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CsvSchema {
    pub delimiter: u8,
    pub has_header: bool,
    /// Label column; negative values count from the end (`-1` is the last).
    pub label_column: Option<i64>,
    /// Columns dropped entirely (e.g. record ids), same indexing as labels.
    pub ignore_columns: Vec<i64>,
    pub missing_token: String,
}

impl Default for CsvSchema {
    fn default() -> Self {
        Self {
            delimiter: b',',
            has_header: false,
            label_column: Some(-1),
            ignore_columns: Vec::new(),
            missing_token: "?".into(),
        }
    }
}

impl CsvSchema {
    fn resolve(index: i64, width: usize) -> Option<usize> {
        let idx = if index < 0 { width as i64 + index } else { index };
        (0..width as i64).contains(&idx).then_some(idx as usize)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub source: String,
    pub instances: usize,
    pub features: usize,
    pub classes: usize,
    pub imputed_cells: usize,
    pub normalized: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    pub features: PointCloud,
    /// Class codes `0..C` in order of first appearance; `None` when the file
    /// carries no label column.
    pub labels: Option<Vec<usize>>,
    /// Original class names, indexed by code.
    pub class_names: Vec<String>,
    pub provenance: Provenance,
}

impl LabeledDataset {
    pub fn class_count(&self) -> usize {
        self.class_names.len()
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }
}

/// Reads `path`; see [`parse_csv`].
pub fn load_csv(path: impl AsRef<Path>, schema: &CsvSchema, seed: u64) -> Result<LabeledDataset> {
    let path = path.as_ref();
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut bytes = Vec::new();
    File::open(path)
        .and_then(|mut f| f.read_to_end(&mut bytes))
        .map_err(io_err)?;
    parse_csv(&bytes[..], schema, seed, &path.display().to_string())
}

/// Parses numeric features and an optional label column.
///
/// Cells equal to the missing token are replaced by seeded uniform draws
/// over the observed range of their column, in row-major order. Labels are
/// coded by first appearance.
pub fn parse_csv<R: Read>(
    input: R,
    schema: &CsvSchema,
    seed: u64,
    source: &str,
) -> Result<LabeledDataset> {
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(schema.delimiter)
        .has_headers(schema.has_header)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(input);

    let mut width = None;
    let mut label_idx = None;
    let mut keep: Vec<usize> = Vec::new();
    let mut cells: Vec<Option<f64>> = Vec::new();
    let mut class_names: Vec<String> = Vec::new();
    let mut labels = Vec::new();
    let mut rows = 0;

    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(rows + 1, |p| p.line() as usize);
        if record.iter().all(str::is_empty) {
            continue;
        }
        let w = *width.get_or_insert_with(|| record.len());
        if record.len() != w {
            return Err(Error::Parse {
                row: line,
                column: record.len().min(w) + 1,
                message: format!("expected {w} fields, found {}", record.len()),
            });
        }
        if rows == 0 {
            label_idx = match schema.label_column {
                Some(c) => Some(CsvSchema::resolve(c, w).ok_or_else(|| {
                    domain(format!("label column {c} outside {w} columns"))
                })?),
                None => None,
            };
            let ignored = schema
                .ignore_columns
                .iter()
                .map(|&c| {
                    CsvSchema::resolve(c, w)
                        .ok_or_else(|| domain(format!("ignored column {c} outside {w} columns")))
                })
                .collect::<Result<Vec<_>>>()?;
            keep = (0..w)
                .filter(|c| Some(*c) != label_idx && !ignored.contains(c))
                .collect();
        }
        for &c in &keep {
            let cell = &record[c];
            if cell == schema.missing_token {
                cells.push(None);
                continue;
            }
            let value: f64 = cell.parse().map_err(|_| Error::Parse {
                row: line,
                column: c + 1,
                message: format!("non-numeric value {cell:?}"),
            })?;
            if !value.is_finite() {
                return Err(Error::Parse {
                    row: line,
                    column: c + 1,
                    message: format!("non-finite value {cell:?}"),
                });
            }
            cells.push(Some(value));
        }
        if let Some(l) = label_idx {
            let name = &record[l];
            let code = match class_names.iter().position(|n| n == name) {
                Some(code) => code,
                None => {
                    class_names.push(name.to_string());
                    class_names.len() - 1
                }
            };
            labels.push(code);
        }
        rows += 1;
    }

    if rows == 0 {
        return Err(domain(format!("{source}: no data rows")));
    }
    let m = keep.len();
    let (data, imputed) = impute(cells, rows, m, seed)?;
    let features = PointCloud::from_flat(rows, m, data)?;
    Ok(LabeledDataset {
        provenance: Provenance {
            source: source.to_string(),
            instances: rows,
            features: m,
            classes: class_names.len(),
            imputed_cells: imputed,
            normalized: false,
        },
        features,
        labels: label_idx.map(|_| labels),
        class_names,
    })
}

fn impute(cells: Vec<Option<f64>>, rows: usize, m: usize, seed: u64) -> Result<(Vec<f64>, usize)> {
    let mut ranges = vec![(f64::INFINITY, f64::NEG_INFINITY); m];
    for (idx, v) in cells.iter().enumerate() {
        if let Some(v) = v {
            let r = &mut ranges[idx % m];
            r.0 = r.0.min(*v);
            r.1 = r.1.max(*v);
        }
    }
    let mut rng = tagged_stream(seed, IMPUTE_TAG);
    let mut imputed = 0;
    let mut data = Vec::with_capacity(rows * m);
    for (idx, v) in cells.into_iter().enumerate() {
        let value = match v {
            Some(v) => v,
            None => {
                let (lo, hi) = ranges[idx % m];
                if lo > hi {
                    return Err(domain(format!("column {} has no observed values", idx % m)));
                }
                imputed += 1;
                if lo == hi {
                    lo
                } else {
                    rng.gen_range(lo..=hi)
                }
            }
        };
        data.push(value);
    }
    Ok((data, imputed))
}

/// Writes features at 17 significant digits followed by the class name.
pub fn write_csv<W: Write>(data: &LabeledDataset, out: W, delimiter: u8) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .delimiter(delimiter)
        .has_headers(false)
        .from_writer(out);
    for (i, row) in data.features.rows().enumerate() {
        let mut fields: Vec<String> = row.iter().map(|x| g17(*x)).collect();
        if let Some(labels) = &data.labels {
            fields.push(data.class_names[labels[i]].clone());
        }
        w.write_record(&fields)?;
    }
    w.flush().map_err(|source| Error::Io {
        path: PathBuf::from("<output>"),
        source,
    })?;
    Ok(())
}

/// Maps each feature affinely onto `[0, 1]`; constant columns become 0.
pub fn normalize_minmax(data: &LabeledDataset) -> LabeledDataset {
    let f = &data.features;
    let m = f.dims();
    let mut lo = vec![f64::INFINITY; m];
    let mut hi = vec![f64::NEG_INFINITY; m];
    for row in f.rows() {
        for (j, &x) in row.iter().enumerate() {
            lo[j] = lo[j].min(x);
            hi[j] = hi[j].max(x);
        }
    }
    let scaled: Vec<f64> = f
        .rows()
        .flat_map(|row| {
            row.iter()
                .enumerate()
                .map(|(j, &x)| if hi[j] > lo[j] { (x - lo[j]) / (hi[j] - lo[j]) } else { 0.0 })
                .collect::<Vec<_>>()
        })
        .collect();
    let mut out = data.clone();
    out.features = PointCloud::from_flat(f.len(), m, scaled).expect("same shape");
    out.provenance.normalized = true;
    out
}

/// Isotropic Gaussian blobs (standard deviation `radius`) around `centers`,
/// labelled by blob index.
pub fn synth_blobs(
    centers: &[Vec<f64>],
    points_per_blob: usize,
    radius: f64,
    seed: u64,
) -> Result<LabeledDataset> {
    if centers.is_empty() {
        return Err(domain("at least one blob center is required"));
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(domain(format!("blob radius must be positive, got {radius}")));
    }
    let m = centers[0].len();
    if centers.iter().any(|c| c.len() != m) {
        return Err(domain("blob centers differ in dimension"));
    }
    let normal = Normal::new(0.0, radius).map_err(|e| domain(e.to_string()))?;
    let mut rng = tagged_stream(seed, BLOB_TAG);
    let mut data = Vec::with_capacity(centers.len() * points_per_blob * m);
    let mut labels = Vec::with_capacity(centers.len() * points_per_blob);
    for (b, c) in centers.iter().enumerate() {
        for _ in 0..points_per_blob {
            data.extend(c.iter().map(|x| x + normal.sample(&mut rng)));
            labels.push(b);
        }
    }
    let n = labels.len();
    Ok(LabeledDataset {
        features: PointCloud::from_flat(n, m, data)?,
        labels: Some(labels),
        class_names: (0..centers.len()).map(|b| format!("blob{b}")).collect(),
        provenance: Provenance {
            source: format!("synthetic blobs (seed {seed}, radius {radius})"),
            instances: n,
            features: m,
            classes: centers.len(),
            imputed_cells: 0,
            normalized: false,
        },
    })
}

/// The six UCI benchmark sets, with their conventional file names and layouts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KnownDataset {
    Soybean,
    Iris,
    Sonar,
    Glass,
    Ionosphere,
    Breast,
}

impl KnownDataset {
    pub const ALL: [KnownDataset; 6] = [
        KnownDataset::Soybean,
        KnownDataset::Iris,
        KnownDataset::Sonar,
        KnownDataset::Glass,
        KnownDataset::Ionosphere,
        KnownDataset::Breast,
    ];

    pub fn name(self) -> &'static str {
        match self {
            KnownDataset::Soybean => "soybean",
            KnownDataset::Iris => "iris",
            KnownDataset::Sonar => "sonar",
            KnownDataset::Glass => "glass",
            KnownDataset::Ionosphere => "ionosphere",
            KnownDataset::Breast => "breast",
        }
    }

    pub fn file_name(self) -> &'static str {
        match self {
            KnownDataset::Soybean => "soybean-small.data",
            KnownDataset::Iris => "iris.data",
            KnownDataset::Sonar => "sonar.all-data",
            KnownDataset::Glass => "glass.data",
            KnownDataset::Ionosphere => "ionosphere.data",
            KnownDataset::Breast => "breast-cancer-wisconsin.data",
        }
    }

    pub fn schema(self) -> CsvSchema {
        let ignore_columns = match self {
            // record id in the first column
            KnownDataset::Glass | KnownDataset::Breast => vec![0],
            _ => Vec::new(),
        };
        CsvSchema {
            ignore_columns,
            ..CsvSchema::default()
        }
    }

    /// Instances and classes as published for the UCI files.
    pub fn expected_shape(self) -> (usize, usize) {
        match self {
            KnownDataset::Soybean => (47, 4),
            KnownDataset::Iris => (150, 3),
            KnownDataset::Sonar => (208, 2),
            KnownDataset::Glass => (214, 6),
            KnownDataset::Ionosphere => (351, 2),
            KnownDataset::Breast => (699, 2),
        }
    }

    pub fn load(self, dir: impl AsRef<Path>, seed: u64) -> Result<LabeledDataset> {
        load_csv(dir.as_ref().join(self.file_name()), &self.schema(), seed)
    }
}

impl std::str::FromStr for KnownDataset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        KnownDataset::ALL
            .into_iter()
            .find(|d| d.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| domain(format!("unknown dataset {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str, schema: &CsvSchema, seed: u64) -> Result<LabeledDataset> {
        parse_csv(text.as_bytes(), schema, seed, "inline")
    }

    #[test]
    fn labels_by_first_appearance() {
        let d = parse("1,2,b\n3,4,a\n5,6,b\n", &CsvSchema::default(), 0).unwrap();
        assert_eq!(d.labels, Some(vec![0, 1, 0]));
        assert_eq!(d.class_names, vec!["b", "a"]);
        assert_eq!(d.features.row(1), &[3.0, 4.0]);
    }

    #[test]
    fn text_in_feature_names_the_cell() {
        let err = parse("1,2,a\n3,oops,b\n", &CsvSchema::default(), 0).unwrap_err();
        match err {
            Error::Parse { row, column, message } => {
                assert_eq!((row, column), (2, 2));
                assert!(message.contains("oops"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn ragged_rows_rejected() {
        let err = parse("1,2,a\n3,b\n", &CsvSchema::default(), 0).unwrap_err();
        assert!(matches!(err, Error::Parse { row: 2, .. }));
    }

    #[test]
    fn missing_cells_imputed_within_range() {
        let text = "1,10,a\n?,20,a\n3,?,b\n2,15,b\n";
        let a = parse(text, &CsvSchema::default(), 9).unwrap();
        let b = parse(text, &CsvSchema::default(), 9).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.provenance.imputed_cells, 2);
        assert!((1.0..=3.0).contains(&a.features.get(1, 0)));
        assert!((10.0..=20.0).contains(&a.features.get(2, 1)));
    }

    #[test]
    fn header_ignored_columns_and_no_labels() {
        let schema = CsvSchema {
            delimiter: b';',
            has_header: true,
            label_column: None,
            ignore_columns: vec![0],
            ..Default::default()
        };
        let d = parse("id;x;y\n7;1.5;2\n8;3;4\n", &schema, 0).unwrap();
        assert_eq!(d.labels, None);
        assert_eq!(d.features.to_rows(), vec![vec![1.5, 2.0], vec![3.0, 4.0]]);
    }

    #[test]
    fn fully_missing_column_is_an_error() {
        assert!(parse("?,1,a\n?,2,b\n", &CsvSchema::default(), 0).is_err());
    }

    #[test]
    fn minmax_examples() {
        let d = parse("2,7,a\n4,7,a\n6,7,a\n", &CsvSchema::default(), 0).unwrap();
        let n = normalize_minmax(&d);
        assert_eq!(n.features.to_rows(), vec![vec![0.0, 0.0], vec![0.5, 0.0], vec![1.0, 0.0]]);
        assert_eq!(normalize_minmax(&n).features, n.features);
    }

    #[test]
    fn blobs_are_seeded() {
        let c = vec![vec![0.0, 0.0]];
        let a = synth_blobs(&c, 10, 1.0, 4).unwrap();
        assert_eq!(a.len(), 10);
        assert_eq!(a.labels, Some(vec![0; 10]));
        assert_eq!(a, synth_blobs(&c, 10, 1.0, 4).unwrap());
        assert!(synth_blobs(&[], 10, 1.0, 4).is_err());
        assert!(synth_blobs(&c, 10, 0.0, 4).is_err());
    }

    #[test]
    fn round_trip() {
        let d = parse("1.25,0.1,x\n?,2,y\n3,1e-7,x\n", &CsvSchema::default(), 3).unwrap();
        let mut buf = Vec::new();
        write_csv(&d, &mut buf, b',').unwrap();
        let back = parse(std::str::from_utf8(&buf).unwrap(), &CsvSchema::default(), 0).unwrap();
        assert_eq!(back.features, d.features);
        assert_eq!(back.labels, d.labels);
    }
}
