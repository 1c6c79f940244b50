//! Clustering accuracy under the best one-to-one label mapping, parameter
//! sweeps, and the benchmark comparison table.

use std::fmt::Write as _;
use std::time::Instant;

use pathfinding::prelude::{kuhn_munkres, Matrix};
use rayon::prelude::*;
use serde::Serialize;

use crate::dataset::{KnownDataset, LabeledDataset};
use crate::engine::{run, AlgoConfig, Variant};
use crate::error::{domain, Result};

/// Counts of (predicted cluster, true class) pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContingencyTable {
    pub predicted: Vec<usize>,
    pub actual: Vec<usize>,
    /// `counts[p][a]`, indexed by position in `predicted` / `actual`.
    pub counts: Vec<Vec<u64>>,
}

impl ContingencyTable {
    pub fn new(pred: &[usize], truth: &[usize]) -> Result<Self> {
        if pred.len() != truth.len() {
            return Err(domain(format!(
                "{} predicted labels for {} true labels",
                pred.len(),
                truth.len()
            )));
        }
        let distinct = |xs: &[usize]| {
            let mut v = xs.to_vec();
            v.sort_unstable();
            v.dedup();
            v
        };
        let predicted = distinct(pred);
        let actual = distinct(truth);
        let mut counts = vec![vec![0u64; actual.len()]; predicted.len()];
        for (p, a) in pred.iter().zip(truth) {
            let pi = predicted.binary_search(p).expect("present");
            let ai = actual.binary_search(a).expect("present");
            counts[pi][ai] += 1;
        }
        Ok(Self {
            predicted,
            actual,
            counts,
        })
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    /// Largest number of points matched by a one-to-one mapping.
    pub fn best_matching(&self) -> u64 {
        let (rows, cols) = (self.predicted.len(), self.actual.len());
        if rows == 0 || cols == 0 {
            return 0;
        }
        // kuhn_munkres wants no more rows than columns
        let weights = if rows <= cols {
            Matrix::from_fn(rows, cols, |(p, a)| self.counts[p][a] as i64)
        } else {
            Matrix::from_fn(cols, rows, |(a, p)| self.counts[p][a] as i64)
        };
        let (total, _) = kuhn_munkres(&weights);
        total as u64
    }
}

/// Fraction of points whose predicted cluster maps to their true class under
/// the best one-to-one mapping. Surplus clusters map to nothing.
pub fn accuracy(pred: &[usize], truth: &[usize]) -> Result<f64> {
    if pred.is_empty() {
        return Err(domain("accuracy of an empty labelling"));
    }
    let table = ContingencyTable::new(pred, truth)?;
    Ok(table.best_matching() as f64 / pred.len() as f64)
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub dataset: String,
    pub variant: Variant,
    pub k: usize,
    pub r: u32,
    pub seed: u64,
    pub accuracy: f64,
    pub iterations: usize,
    pub clusters: usize,
    pub converged: bool,
    pub wall_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct KAggregate {
    pub k: usize,
    pub runs: usize,
    pub mean_accuracy: f64,
    /// Population variance over all seeds and `r` values at this `k`.
    pub accuracy_variance: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub dataset: String,
    pub variant: Variant,
    pub rows: Vec<SweepRow>,
    pub per_k: Vec<KAggregate>,
    pub best: Option<SweepRow>,
}

/// Grid of runs: every combination of `ks × rs × seeds`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepGrid {
    pub ks: Vec<usize>,
    pub rs: Vec<u32>,
    pub seeds: Vec<u64>,
}

impl SweepGrid {
    fn validate(&self) -> Result<()> {
        if self.ks.is_empty() || self.rs.is_empty() || self.seeds.is_empty() {
            return Err(domain("sweep lists for k, r and seed must be non-empty"));
        }
        Ok(())
    }
}

/// One full run per grid point, `target_clusters` taken from `base` (and
/// defaulting to the number of true classes).
pub fn sweep(
    name: &str,
    data: &LabeledDataset,
    variant: Variant,
    grid: &SweepGrid,
    base: &AlgoConfig,
) -> Result<SweepReport> {
    grid.validate()?;
    let truth = data
        .labels
        .as_ref()
        .ok_or_else(|| domain(format!("{name}: sweep needs ground-truth labels")))?;
    let target = base.target_clusters.or(Some(data.class_count()));

    let combos: Vec<(usize, u32, u64)> = grid
        .ks
        .iter()
        .flat_map(|&k| {
            grid.rs
                .iter()
                .flat_map(move |&r| grid.seeds.iter().map(move |&s| (k, r, s)))
        })
        .collect();

    let rows = combos
        .par_iter()
        .map(|&(k, r, seed)| {
            let cfg = AlgoConfig {
                variant,
                k,
                r,
                seed,
                target_clusters: target,
                ..*base
            };
            let start = Instant::now();
            let res = run(&data.features, &cfg)?;
            let wall_ms = start.elapsed().as_secs_f64() * 1e3;
            Ok(SweepRow {
                dataset: name.to_string(),
                variant,
                k,
                r,
                seed,
                accuracy: accuracy(&res.labels, truth)?,
                iterations: res.iterations,
                clusters: res.cluster_count,
                converged: res.converged,
                wall_ms,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let per_k = aggregate_by_k(&grid.ks, &rows);
    let best = best_row(&rows);
    Ok(SweepReport {
        dataset: name.to_string(),
        variant,
        rows,
        per_k,
        best,
    })
}

fn aggregate_by_k(ks: &[usize], rows: &[SweepRow]) -> Vec<KAggregate> {
    let mut seen = Vec::new();
    for &k in ks {
        if seen.contains(&k) {
            continue;
        }
        seen.push(k);
    }
    seen.into_iter()
        .map(|k| {
            let accs: Vec<f64> = rows.iter().filter(|r| r.k == k).map(|r| r.accuracy).collect();
            let n = accs.len() as f64;
            let mean = accs.iter().sum::<f64>() / n;
            let var = accs.iter().map(|a| (a - mean).powi(2)).sum::<f64>() / n;
            KAggregate {
                k,
                runs: accs.len(),
                mean_accuracy: mean,
                accuracy_variance: var,
            }
        })
        .collect()
}

/// Highest accuracy; the earliest row wins ties.
fn best_row(rows: &[SweepRow]) -> Option<SweepRow> {
    rows.iter()
        .fold(None, |best: Option<&SweepRow>, r| match best {
            Some(b) if b.accuracy >= r.accuracy => Some(b),
            _ => Some(r),
        })
        .cloned()
}

/// Published accuracies (percent) per algorithm and dataset, in the order of
/// [`KnownDataset::ALL`]. `None` where no figure was reported.
pub const REFERENCE_ACCURACY: [(&str, [Option<f64>; 6]); 5] = [
    (
        "1D-scms",
        [Some(91.49), Some(90.0), Some(62.02), Some(64.49), Some(71.51), Some(95.42)],
    ),
    (
        "1D-mcms",
        [Some(97.87), Some(96.67), Some(62.02), Some(64.02), Some(75.21), Some(95.42)],
    ),
    ("Kmeans", [Some(68.1), Some(89.3), None, Some(47.2), Some(71.0), None]),
    ("PCA-Kmeans", [Some(72.3), Some(88.7), None, Some(45.3), Some(71.0), None]),
    ("LDA-Km", [Some(76.6), Some(98.0), None, Some(51.0), Some(71.2), None]),
];

/// Published accuracy of `algorithm` on `dataset`, as a fraction.
pub fn reference_accuracy(algorithm: &str, dataset: KnownDataset) -> Option<f64> {
    let col = KnownDataset::ALL.iter().position(|d| *d == dataset)?;
    REFERENCE_ACCURACY
        .iter()
        .find(|(name, _)| name.eq_ignore_ascii_case(algorithm))
        .and_then(|(_, row)| row[col])
        .map(|pct| pct / 100.0)
}

fn variant_label(v: Variant) -> &'static str {
    match v {
        Variant::Scms => "1D-scms",
        Variant::Mcms => "1D-mcms",
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchEntry {
    pub variant: Variant,
    /// Best accuracy over the sweep grid.
    pub best_accuracy: f64,
    pub best_k: usize,
    pub best_r: u32,
    pub best_seed: u64,
    pub reference_accuracy: Option<f64>,
    /// `best_accuracy − reference_accuracy`; negative is a shortfall.
    pub gap: Option<f64>,
    pub sweep: SweepReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchBlock {
    pub dataset: KnownDataset,
    pub instances: usize,
    pub features: usize,
    pub classes: usize,
    pub entries: Vec<BenchEntry>,
    /// Published accuracies of the comparison algorithms, as fractions.
    pub baselines: Vec<(String, Option<f64>)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub grid: SweepGrid,
    pub blocks: Vec<BenchBlock>,
}

/// Best-over-sweep accuracy per dataset and variant, next to the published
/// figures.
pub fn benchmark_table(
    datasets: &[(KnownDataset, LabeledDataset)],
    variants: &[Variant],
    grid: &SweepGrid,
    base: &AlgoConfig,
) -> Result<BenchReport> {
    let mut blocks = Vec::with_capacity(datasets.len());
    for (which, data) in datasets {
        let mut entries = Vec::with_capacity(variants.len());
        for &variant in variants {
            let report = sweep(which.name(), data, variant, grid, base)?;
            let best = report.best.clone().expect("non-empty grid");
            let reference = reference_accuracy(variant_label(variant), *which);
            entries.push(BenchEntry {
                variant,
                best_accuracy: best.accuracy,
                best_k: best.k,
                best_r: best.r,
                best_seed: best.seed,
                reference_accuracy: reference,
                gap: reference.map(|r| best.accuracy - r),
                sweep: report,
            });
        }
        blocks.push(BenchBlock {
            dataset: *which,
            instances: data.len(),
            features: data.features.dims(),
            classes: data.class_count(),
            entries,
            baselines: ["Kmeans", "PCA-Kmeans", "LDA-Km"]
                .iter()
                .map(|a| (a.to_string(), reference_accuracy(a, *which)))
                .collect(),
        });
    }
    Ok(BenchReport {
        grid: grid.clone(),
        blocks,
    })
}

impl BenchReport {
    /// Aligned-column text rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<12} {:<8} {:>9} {:>9} {:>8} {:>4} {:>3} {:>6}",
            "dataset", "variant", "best", "published", "gap", "k", "r", "seed"
        );
        let pct = |x: Option<f64>| x.map_or("-".to_string(), |v| format!("{:.2}%", 100.0 * v));
        for b in &self.blocks {
            for e in &b.entries {
                let _ = writeln!(
                    out,
                    "{:<12} {:<8} {:>9} {:>9} {:>8} {:>4} {:>3} {:>6}",
                    b.dataset.name(),
                    e.variant.to_string(),
                    pct(Some(e.best_accuracy)),
                    pct(e.reference_accuracy),
                    e.gap.map_or("-".to_string(), |g| format!("{:+.2}", 100.0 * g)),
                    e.best_k,
                    e.best_r,
                    e.best_seed
                );
            }
        }
        out
    }
}

impl SweepReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:>4} {:>3} {:>6} {:>9} {:>6} {:>8} {:>10}",
            "k", "r", "seed", "accuracy", "iters", "clusters", "wall_ms"
        );
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:>4} {:>3} {:>6} {:>9.4} {:>6} {:>8} {:>10.1}",
                r.k, r.r, r.seed, r.accuracy, r.iterations, r.clusters, r.wall_ms
            );
        }
        out
    }
}
