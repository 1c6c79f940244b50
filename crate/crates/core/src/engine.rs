//! The clustering loop.
//!
//! Each iteration reads one immutable snapshot of all positions (distances,
//! neighbour sets, in-degrees) and writes every point's new position into a
//! fresh cloud, so points update synchronously. For every point and every
//! coordinate a one-dimensional walk toward the chosen neighbour is built,
//! measured, and the measured displacement applied. The loop stops once the
//! summed displacement of an iteration falls below `epsilon`, then points
//! within `theta` of each other are linked into clusters.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::affinity::{
    degrees, knn_neighbor_sets, pairwise_distances, transition_row, AffinityInputs, BiasMap,
    DegreeVector, DistanceMatrix, NeighborSets,
};
use crate::error::{domain, Error, Result};
use crate::rng::measurement_stream;
use crate::walk::{mcms_walk, scms_walk};

/// `n` points with `m` coordinates each, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    n: usize,
    m: usize,
    data: Vec<f64>,
}

impl PointCloud {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(n * m);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != m {
                return Err(domain(format!(
                    "row {i} has {} coordinates, expected {m}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Self::from_flat(n, m, data)
    }

    pub fn from_flat(n: usize, m: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * m {
            return Err(domain(format!(
                "{} values cannot fill {n} rows of {m}",
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|x| !x.is_finite()) {
            return Err(domain(format!(
                "coordinate ({}, {}) is not finite",
                pos / m.max(1),
                pos % m.max(1)
            )));
        }
        Ok(Self { n, m, data })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dims(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.m..(i + 1) * self.m]
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.m + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks(self.m.max(1)).take(self.n)
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.rows().map(<[f64]>::to_vec).collect()
    }

    /// Multiplies every coordinate by `c`.
    pub fn scaled(&self, c: f64) -> Self {
        Self {
            n: self.n,
            m: self.m,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }
}

impl Serialize for PointCloud {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.rows())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// One coin from the largest transition probability, applied `r` times.
    Scms,
    /// One coin per top-`r` neighbour, applied in sequence.
    #[default]
    Mcms,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Scms => "scms",
            Variant::Mcms => "mcms",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "scms" | "1d-scms" => Ok(Variant::Scms),
            "mcms" | "1d-mcms" => Ok(Variant::Mcms),
            _ => Err(domain(format!("unknown variant {s:?} (expected scms or mcms)"))),
        }
    }
}

/// Run parameters. `epsilon` and `theta` default to multiples of the mean
/// initial pairwise distance when left unset.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct AlgoConfig {
    pub variant: Variant,
    /// Nearest neighbours per point.
    pub k: usize,
    /// Walk steps (scms) or coins (mcms).
    pub r: u32,
    pub epsilon: Option<f64>,
    pub theta: Option<f64>,
    pub seed: u64,
    pub max_iter: usize,
    pub target_clusters: Option<usize>,
    pub bias_map: BiasMap,
}

impl Default for AlgoConfig {
    fn default() -> Self {
        Self {
            variant: Variant::Mcms,
            k: 14,
            r: 6,
            epsilon: None,
            theta: None,
            seed: 0,
            max_iter: 500,
            target_clusters: None,
            bias_map: BiasMap::Affine,
        }
    }
}

/// `epsilon = EPSILON_SCALE · n · mean initial distance` when unset.
pub const EPSILON_SCALE: f64 = 1e-3;
/// `theta = THETA_SCALE · mean initial distance` when unset.
pub const THETA_SCALE: f64 = 0.05;
/// Distance floor in the transition weights, relative to the mean initial
/// distance.
pub const DISTANCE_FLOOR_SCALE: f64 = 1e-12;

impl AlgoConfig {
    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(domain("k must be at least 1"));
        }
        if self.r == 0 {
            return Err(domain("r must be at least 1"));
        }
        if self.max_iter == 0 {
            return Err(domain("max_iter must be at least 1"));
        }
        if let Some(e) = self.epsilon {
            if !(e > 0.0 && e.is_finite()) {
                return Err(domain(format!("epsilon must be positive, got {e}")));
            }
        }
        if let Some(t) = self.theta {
            if !(t > 0.0 && t.is_finite()) {
                return Err(domain(format!("theta must be positive, got {t}")));
            }
        }
        if self.target_clusters == Some(0) {
            return Err(domain("target cluster count must be at least 1"));
        }
        Ok(())
    }

    /// Materialises the data-dependent defaults.
    pub fn resolve(&self, n: usize, mean_distance: f64) -> ResolvedConfig {
        let positive = |x: f64| if x > 0.0 { x } else { f64::MIN_POSITIVE };
        ResolvedConfig {
            variant: self.variant,
            k: self.k,
            r: self.r,
            epsilon: self
                .epsilon
                .unwrap_or_else(|| positive(EPSILON_SCALE * n as f64 * mean_distance)),
            theta: self
                .theta
                .unwrap_or_else(|| positive(THETA_SCALE * mean_distance)),
            seed: self.seed,
            max_iter: self.max_iter,
            target_clusters: self.target_clusters,
            bias_map: self.bias_map,
            distance_floor: positive(DISTANCE_FLOOR_SCALE * mean_distance),
        }
    }
}

/// [`AlgoConfig`] with every default filled in.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ResolvedConfig {
    pub variant: Variant,
    pub k: usize,
    pub r: u32,
    pub epsilon: f64,
    pub theta: f64,
    pub seed: u64,
    pub max_iter: usize,
    pub target_clusters: Option<usize>,
    pub bias_map: BiasMap,
    pub distance_floor: f64,
}

/// Quantities fixed at `t = 0`.
#[derive(Debug, Clone)]
pub struct InitialState {
    pub positions: PointCloud,
    pub distances: DistanceMatrix,
    pub degrees: DegreeVector,
    pub mean_distance: f64,
}

impl InitialState {
    pub fn new(positions: &PointCloud, k: usize) -> Result<Self> {
        let distances = pairwise_distances(positions)?;
        let degrees = degrees(&knn_neighbor_sets(&distances, k)?);
        let mean_distance = distances.mean_pairwise();
        Ok(Self {
            positions: positions.clone(),
            distances,
            degrees,
            mean_distance,
        })
    }
}

/// Everything one iteration reads.
#[derive(Debug, Clone)]
pub struct Snapshot {
    pub positions: PointCloud,
    pub distances: DistanceMatrix,
    pub neighbors: NeighborSets,
    pub degrees: DegreeVector,
}

impl Snapshot {
    pub fn new(positions: &PointCloud, k: usize) -> Result<Self> {
        let distances = pairwise_distances(positions)?;
        let neighbors = knn_neighbor_sets(&distances, k)?;
        let degrees = degrees(&neighbors);
        Ok(Self {
            positions: positions.clone(),
            distances,
            neighbors,
            degrees,
        })
    }
}

/// New coordinates of point `i` and its total displacement `ω_i`.
pub fn update_point(
    i: usize,
    snap: &Snapshot,
    init: &InitialState,
    cfg: &ResolvedConfig,
    iteration: usize,
) -> Result<(Vec<f64>, f64)> {
    let inputs = AffinityInputs {
        current: &snap.distances,
        initial: &init.distances,
        current_degrees: &snap.degrees,
        initial_degrees: &init.degrees,
        neighbors: &snap.neighbors,
        distance_floor: cfg.distance_floor,
    };
    let row = transition_row(i, &inputs);
    let here = snap.positions.row(i);
    let target = snap.positions.row(row.chosen);

    let biases = match cfg.variant {
        Variant::Scms => vec![cfg.bias_map.apply(row.max_prob())?],
        Variant::Mcms => row
            .ranked()
            .into_iter()
            .take(cfg.r as usize)
            .map(|(_, p)| cfg.bias_map.apply(p))
            .collect::<Result<Vec<_>>>()?,
    };

    let mut next = here.to_vec();
    let mut omega = 0.0;
    for (j, (x, x_h)) in here.iter().zip(target).enumerate() {
        let delta = x_h - x;
        if delta == 0.0 {
            continue;
        }
        let state = match cfg.variant {
            Variant::Scms => scms_walk(biases[0], delta, cfg.r)?,
            Variant::Mcms => mcms_walk(&biases, delta)?,
        };
        let mut rng = measurement_stream(cfg.seed, i, iteration, j);
        let moved = state.measure(&mut rng)?;
        let updated = x + moved;
        if !updated.is_finite() {
            return Err(Error::Consistency(format!(
                "point {i}, dimension {j}: update produced {updated}"
            )));
        }
        next[j] = updated;
        omega += moved.abs();
    }
    Ok((next, omega))
}

/// Result of one synchronous iteration.
#[derive(Debug, Clone)]
pub struct StepOutcome {
    pub positions: PointCloud,
    pub omegas: Vec<f64>,
}

impl StepOutcome {
    pub fn total_displacement(&self) -> f64 {
        self.omegas.iter().sum()
    }
}

/// Moves every point once, all reads from the time-`iteration` snapshot.
pub fn step(
    positions: &PointCloud,
    init: &InitialState,
    cfg: &ResolvedConfig,
    iteration: usize,
) -> Result<StepOutcome> {
    let snap = Snapshot::new(positions, cfg.k)?;
    let updates = (0..positions.len())
        .into_par_iter()
        .map(|i| update_point(i, &snap, init, cfg, iteration))
        .collect::<Result<Vec<_>>>()?;
    let mut data = Vec::with_capacity(positions.len() * positions.dims());
    let mut omegas = Vec::with_capacity(positions.len());
    for (row, omega) in updates {
        data.extend(row);
        omegas.push(omega);
    }
    Ok(StepOutcome {
        positions: PointCloud::from_flat(positions.len(), positions.dims(), data)?,
        omegas,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ClusterResult {
    pub positions: PointCloud,
    pub labels: Vec<usize>,
    pub cluster_count: usize,
    pub iterations: usize,
    /// `Σ ω_i` of each executed iteration.
    pub omega_trace: Vec<f64>,
    pub converged: bool,
    pub config: ResolvedConfig,
    pub seed: u64,
}

/// Runs the loop to convergence (or `max_iter`) and extracts clusters.
pub fn run(data: &PointCloud, cfg: &AlgoConfig) -> Result<ClusterResult> {
    cfg.validate()?;
    if data.len() < 2 {
        return Err(domain("clustering needs at least two points"));
    }
    let init = InitialState::new(data, cfg.k)?;
    let resolved = cfg.resolve(data.len(), init.mean_distance);

    let mut positions = data.clone();
    let mut trace = Vec::new();
    let mut converged = false;
    for t in 0..resolved.max_iter {
        let outcome = step(&positions, &init, &resolved, t)?;
        let total = outcome.total_displacement();
        trace.push(total);
        positions = outcome.positions;
        if total < resolved.epsilon {
            converged = true;
            break;
        }
    }

    let mut labels = extract_clusters(&positions, resolved.theta)?;
    if let Some(target) = resolved.target_clusters {
        if cluster_count(&labels) > target {
            labels = compact_labels(&merge_clusters(&labels, &positions, target)?);
        }
    }
    Ok(ClusterResult {
        cluster_count: cluster_count(&labels),
        positions,
        labels,
        iterations: trace.len(),
        omega_trace: trace,
        converged,
        config: resolved,
        seed: cfg.seed,
    })
}

/// Connected components of the graph linking points within `theta`,
/// numbered by their lowest member index.
pub fn extract_clusters(positions: &PointCloud, theta: f64) -> Result<Vec<usize>> {
    if theta.is_nan() || theta <= 0.0 {
        return Err(domain(format!("theta must be positive, got {theta}")));
    }
    let n = positions.len();
    let mut sets = DisjointSet::new(n);
    let theta_sq = theta * theta;
    for i in 0..n {
        let a = positions.row(i);
        for j in i + 1..n {
            let d_sq: f64 = a
                .iter()
                .zip(positions.row(j))
                .map(|(x, y)| (x - y) * (x - y))
                .sum();
            if d_sq <= theta_sq {
                sets.union(i, j);
            }
        }
    }
    let roots: Vec<usize> = (0..n).map(|i| sets.find(i)).collect();
    Ok(compact_labels(&roots))
}

/// Renames labels to `0..C` in order of first appearance.
pub fn compact_labels(labels: &[usize]) -> Vec<usize> {
    let mut map = std::collections::HashMap::new();
    labels
        .iter()
        .map(|&l| {
            let next = map.len();
            *map.entry(l).or_insert(next)
        })
        .collect()
}

/// Number of distinct labels.
pub fn cluster_count(labels: &[usize]) -> usize {
    let mut seen: Vec<usize> = labels.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

/// Folds the smallest cluster into the one with the nearest centroid until
/// `target` clusters remain.
///
/// Size ties merge the lower id first; centroid-distance ties go to the
/// lower id. Surviving clusters keep their ids, so the output may have gaps.
pub fn merge_clusters(labels: &[usize], positions: &PointCloud, target: usize) -> Result<Vec<usize>> {
    if labels.len() != positions.len() {
        return Err(domain("labels and positions differ in length"));
    }
    let current = cluster_count(labels);
    if target == 0 || target > current {
        return Err(domain(format!(
            "cannot merge {current} clusters down to {target}"
        )));
    }
    let mut labels = labels.to_vec();
    let m = positions.dims();
    let mut alive = current;
    while alive > target {
        let ids = {
            let mut ids = labels.clone();
            ids.sort_unstable();
            ids.dedup();
            ids
        };
        let mut sizes = vec![0usize; ids.len()];
        let mut centroids = vec![vec![0.0; m]; ids.len()];
        for (i, l) in labels.iter().enumerate() {
            let slot = ids.binary_search(l).expect("label present");
            sizes[slot] += 1;
            for (c, x) in centroids[slot].iter_mut().zip(positions.row(i)) {
                *c += x;
            }
        }
        for (c, &s) in centroids.iter_mut().zip(&sizes) {
            c.iter_mut().for_each(|x| *x /= s as f64);
        }

        // ids are ascending, so strict comparisons keep the lower id on ties
        let smallest = (0..ids.len())
            .min_by(|&a, &b| sizes[a].cmp(&sizes[b]).then(a.cmp(&b)))
            .expect("at least two clusters");
        let nearest = (0..ids.len())
            .filter(|&s| s != smallest)
            .map(|s| {
                let d: f64 = centroids[s]
                    .iter()
                    .zip(&centroids[smallest])
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum();
                (s, d)
            })
            .fold(None, |best: Option<(usize, f64)>, (s, d)| match best {
                Some((_, bd)) if bd <= d => best,
                _ => Some((s, d)),
            })
            .map(|(s, _)| s)
            .expect("at least two clusters");

        let (from, into) = (ids[smallest], ids[nearest]);
        labels.iter_mut().filter(|l| **l == from).for_each(|l| *l = into);
        alive -= 1;
    }
    Ok(labels)
}

struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        match self.rank[a].cmp(&self.rank[b]) {
            std::cmp::Ordering::Less => self.parent[a] = b,
            std::cmp::Ordering::Greater => self.parent[b] = a,
            std::cmp::Ordering::Equal => {
                self.parent[b] = a;
                self.rank[a] += 1;
            }
        }
    }
}
