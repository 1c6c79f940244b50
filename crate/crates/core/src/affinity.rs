//! Distance matrices, k-nearest-neighbour sets, in-degrees and the
//! transition probabilities that orient each point toward a neighbour.

use serde::{Deserialize, Serialize};

use crate::engine::PointCloud;
use crate::error::{domain, Result};

/// Symmetric `n × n` Euclidean distance matrix with a zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DistanceMatrix {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// Mean over all unordered pairs `i < j`; zero for a single point.
    pub fn mean_pairwise(&self) -> f64 {
        if self.n < 2 {
            return 0.0;
        }
        let mut sum = 0.0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                sum += self.get(i, j);
            }
        }
        sum / (self.n * (self.n - 1) / 2) as f64
    }

    pub fn max(&self) -> f64 {
        self.data.iter().copied().fold(0.0, f64::max)
    }
}

/// Euclidean distances between all rows of `points`.
pub fn pairwise_distances(points: &PointCloud) -> Result<DistanceMatrix> {
    let n = points.len();
    if n == 0 {
        return Err(domain("cannot measure distances in an empty point cloud"));
    }
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        let a = points.row(i);
        for j in i + 1..n {
            let b = points.row(j);
            let d = a
                .iter()
                .zip(b)
                .map(|(x, y)| (x - y) * (x - y))
                .sum::<f64>()
                .sqrt();
            data[i * n + j] = d;
            data[j * n + i] = d;
        }
    }
    Ok(DistanceMatrix { n, data })
}

/// For each point, its `min(k, n-1)` nearest other points in ascending
/// distance, ties broken by lower index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborSets {
    sets: Vec<Vec<usize>>,
}

impl NeighborSets {
    pub fn of(&self, i: usize) -> &[usize] {
        &self.sets[i]
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[usize]> {
        self.sets.iter().map(Vec::as_slice)
    }
}

pub fn knn_neighbor_sets(d: &DistanceMatrix, k: usize) -> Result<NeighborSets> {
    if k == 0 {
        return Err(domain("k must be at least 1"));
    }
    let n = d.len();
    let take = k.min(n.saturating_sub(1));
    let sets = (0..n)
        .map(|i| {
            let row = d.row(i);
            let mut others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
            let by_distance =
                |a: &usize, b: &usize| row[*a].total_cmp(&row[*b]).then(a.cmp(b));
            if take < others.len() {
                others.select_nth_unstable_by(take, by_distance);
                others.truncate(take);
            }
            others.sort_unstable_by(by_distance);
            others
        })
        .collect();
    Ok(NeighborSets { sets })
}

/// In-degree of every point in the directed k-NN graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeVector(pub Vec<usize>);

impl DegreeVector {
    pub fn get(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

pub fn degrees(nbrs: &NeighborSets) -> DegreeVector {
    let mut deg = vec![0; nbrs.len()];
    for set in nbrs.iter() {
        for &j in set {
            deg[j] += 1;
        }
    }
    DegreeVector(deg)
}

/// Transition probabilities of one point over its neighbour set.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionRow {
    pub point: usize,
    pub neighbors: Vec<usize>,
    pub probs: Vec<f64>,
    /// Neighbour with the largest probability (lowest index on ties).
    pub chosen: usize,
}

impl TransitionRow {
    pub fn max_prob(&self) -> f64 {
        self.probs.iter().copied().fold(0.0, f64::max)
    }

    /// Probabilities in descending order, ties by lower neighbour index.
    pub fn ranked(&self) -> Vec<(usize, f64)> {
        let mut pairs: Vec<(usize, f64)> = self
            .neighbors
            .iter()
            .copied()
            .zip(self.probs.iter().copied())
            .collect();
        pairs.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        pairs
    }
}

/// The time-`t` and time-`0` quantities a transition row depends on.
#[derive(Debug, Clone, Copy)]
pub struct AffinityInputs<'a> {
    pub current: &'a DistanceMatrix,
    pub initial: &'a DistanceMatrix,
    pub current_degrees: &'a DegreeVector,
    pub initial_degrees: &'a DegreeVector,
    pub neighbors: &'a NeighborSets,
    /// Distances below this floor are raised to it before dividing.
    pub distance_floor: f64,
}

/// Degree- and distance-weighted transition probabilities of point `i`:
///
/// `a(i,j) = (Deg_t(j)/ΣDeg_t) · (Deg_0(j)/ΣDeg_0) / (d_t(i,j) · d_0(i,j))`,
/// both sums running over the current neighbour set, then normalised over
/// the row. A row whose affinities all vanish falls back to uniform.
pub fn transition_row(i: usize, inputs: &AffinityInputs<'_>) -> TransitionRow {
    let neighbors = inputs.neighbors.of(i).to_vec();
    let floor = inputs.distance_floor;
    let deg_now: f64 = neighbors
        .iter()
        .map(|&j| inputs.current_degrees.get(j) as f64)
        .sum();
    let deg_init: f64 = neighbors
        .iter()
        .map(|&j| inputs.initial_degrees.get(j) as f64)
        .sum();

    let affinities: Vec<f64> = neighbors
        .iter()
        .map(|&j| {
            if deg_now == 0.0 || deg_init == 0.0 {
                return 0.0;
            }
            let weight = (inputs.current_degrees.get(j) as f64 / deg_now)
                * (inputs.initial_degrees.get(j) as f64 / deg_init);
            let dist = inputs.current.get(i, j).max(floor) * inputs.initial.get(i, j).max(floor);
            weight / dist
        })
        .collect();

    let total: f64 = affinities.iter().sum();
    let probs: Vec<f64> = if total > 0.0 && total.is_finite() {
        affinities.iter().map(|a| a / total).collect()
    } else {
        vec![1.0 / neighbors.len().max(1) as f64; neighbors.len()]
    };

    let chosen = argmax_lowest_index(&neighbors, &probs).unwrap_or(i);
    TransitionRow {
        point: i,
        neighbors,
        probs,
        chosen,
    }
}

fn argmax_lowest_index(ids: &[usize], values: &[f64]) -> Option<usize> {
    ids.iter()
        .zip(values)
        .fold(None, |best: Option<(usize, f64)>, (&id, &v)| match best {
            Some((bid, bv)) if bv > v || (bv == v && bid < id) => Some((bid, bv)),
            _ => Some((id, v)),
        })
        .map(|(id, _)| id)
}

/// Maps a transition probability in `[0, 1]` to a coin bias in `[0.5, 1]`.
#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BiasMap {
    /// `ρ = (1 + p) / 2`.
    #[default]
    Affine,
    /// Any other monotone map; must send `[0, 1]` into `[0.5, 1]`.
    #[serde(skip)]
    Custom(fn(f64) -> f64),
}

impl BiasMap {
    pub fn apply(&self, p: f64) -> Result<f64> {
        const SLACK: f64 = 1e-12;
        if !(-SLACK..=1.0 + SLACK).contains(&p) {
            return Err(domain(format!("probability {p} outside [0, 1]")));
        }
        let p = p.clamp(0.0, 1.0);
        let rho = match self {
            BiasMap::Affine => 0.5 * (1.0 + p),
            BiasMap::Custom(f) => f(p),
        };
        if !(0.5..=1.0).contains(&rho) {
            return Err(domain(format!("bias map sent {p} to {rho}, outside [0.5, 1]")));
        }
        Ok(rho)
    }
}

/// The default affine bias map.
pub fn bias_map(p: f64) -> Result<f64> {
    BiasMap::Affine.apply(p)
}
