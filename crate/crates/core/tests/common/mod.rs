//! Slow, obviously-correct reference implementations.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeSet;

/// Sums amplitudes over all `2^t` coin histories. Each step is a coin matrix
/// and `(right_len, left_len)`. Returns `(position, probability)` sorted by
/// position, with positions within `tol` pooled.
pub fn enumerate_paths(coins: &[[[f64; 2]; 2]], steps: &[(f64, f64)], tol: f64) -> Vec<(f64, f64)> {
    assert_eq!(coins.len(), steps.len());
    let t = coins.len();
    assert!(t <= 20, "path enumeration is exponential");
    // (position, final coin, amplitude) of every history
    let mut leaves: Vec<(f64, usize, f64)> = Vec::with_capacity(1 << t);
    for mask in 0u32..(1 << t) {
        let mut coin = 0usize; // start in Up
        let mut amp = 1.0;
        let mut pos = 0.0;
        for s in 0..t {
            let next = ((mask >> s) & 1) as usize; // 0 = Up, 1 = Down
            amp *= coins[s][next][coin];
            pos += if next == 0 { steps[s].0 } else { -steps[s].1 };
            coin = next;
        }
        leaves.push((pos, coin, amp));
    }
    leaves.sort_by(|a, b| a.0.total_cmp(&b.0));

    // pool equal positions, keeping the two coin components apart
    let mut out: Vec<(f64, [f64; 2])> = Vec::new();
    for (pos, coin, amp) in leaves {
        match out.last_mut() {
            Some((p, a)) if (pos - *p).abs() < tol => a[coin] += amp,
            _ => {
                let mut a = [0.0; 2];
                a[coin] = amp;
                out.push((pos, a));
            }
        }
    }
    out.into_iter()
        .map(|(p, a)| (p, a[0] * a[0] + a[1] * a[1]))
        .filter(|&(_, pr)| pr > 0.0)
        .collect()
}

pub fn coin(rho: f64) -> [[f64; 2]; 2] {
    let (a, b) = (rho.sqrt(), (1.0 - rho).sqrt());
    [[a, b], [b, -a]]
}

/// Accuracy by trying every injective assignment of the smaller label set
/// into the larger one.
pub fn brute_accuracy(pred: &[usize], truth: &[usize]) -> f64 {
    assert_eq!(pred.len(), truth.len());
    let ps: Vec<usize> = pred.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let ts: Vec<usize> = truth.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let mut counts = vec![vec![0usize; ts.len()]; ps.len()];
    for (p, t) in pred.iter().zip(truth) {
        let i = ps.binary_search(p).unwrap();
        let j = ts.binary_search(t).unwrap();
        counts[i][j] += 1;
    }
    let (rows, cols) = (ps.len(), ts.len());
    let get = |small: usize, large: usize| {
        if rows <= cols {
            counts[small][large]
        } else {
            counts[large][small]
        }
    };
    let (n_small, n_large) = (rows.min(cols), rows.max(cols));

    fn best(
        i: usize,
        n_small: usize,
        used: &mut Vec<bool>,
        get: &dyn Fn(usize, usize) -> usize,
    ) -> usize {
        if i == n_small {
            return 0;
        }
        let mut top = 0;
        for j in 0..used.len() {
            if !used[j] {
                used[j] = true;
                top = top.max(get(i, j) + best(i + 1, n_small, used, get));
                used[j] = false;
            }
        }
        top
    }
    let mut used = vec![false; n_large];
    best(0, n_small, &mut used, &get) as f64 / pred.len() as f64
}

pub fn naive_distances(rows: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = rows.len();
    let mut d = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut s = 0.0;
            for c in 0..rows[i].len() {
                let diff = rows[i][c] - rows[j][c];
                s += diff * diff;
            }
            d[i][j] = s.sqrt();
        }
    }
    d
}

/// k nearest neighbours by full sort, ties to the lower index.
pub fn naive_knn(d: &[Vec<f64>], k: usize) -> Vec<Vec<usize>> {
    let n = d.len();
    (0..n)
        .map(|i| {
            let mut others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
            others.sort_by(|&a, &b| d[i][a].total_cmp(&d[i][b]).then(a.cmp(&b)));
            others.truncate(k);
            others
        })
        .collect()
}

pub fn naive_in_degrees(nbrs: &[Vec<usize>]) -> Vec<usize> {
    let n = nbrs.len();
    let mut deg = vec![0; n];
    for target in 0..n {
        for list in nbrs {
            for &j in list {
                if j == target {
                    deg[target] += 1;
                }
            }
        }
    }
    deg
}

/// One transition row evaluated term by term, returned in neighbour order.
pub fn naive_row(
    i: usize,
    nbrs: &[Vec<usize>],
    d_now: &[Vec<f64>],
    d_init: &[Vec<f64>],
    deg_now: &[usize],
    deg_init: &[usize],
    floor: f64,
) -> Vec<f64> {
    let list = &nbrs[i];
    let mut sum_now = 0.0;
    let mut sum_init = 0.0;
    for &j in list {
        sum_now += deg_now[j] as f64;
        sum_init += deg_init[j] as f64;
    }
    let mut raw = Vec::new();
    for &j in list {
        let share_now = if sum_now > 0.0 { deg_now[j] as f64 / sum_now } else { 0.0 };
        let share_init = if sum_init > 0.0 { deg_init[j] as f64 / sum_init } else { 0.0 };
        let dn = d_now[i][j].max(floor);
        let di = d_init[i][j].max(floor);
        raw.push(share_now * share_init / (dn * di));
    }
    let total: f64 = raw.iter().sum();
    if total > 0.0 && total.is_finite() {
        raw.iter().map(|a| a / total).collect()
    } else {
        vec![1.0 / list.len() as f64; list.len()]
    }
}
