//! Discrete-time coined quantum walks on the line.
//!
//! A walker carries a two-level coin (`Up`, `Down`) and a real-valued
//! position. One step applies a coin operator to every coin state and then
//! shifts the `Up` component by `right_len` and the `Down` component by
//! `-left_len`. All coins used here are real orthogonal matrices, so amplitudes
//! are stored as signed `f64`.
//!
//! Walks whose steps all share the same span `right_len + left_len` live on a
//! lattice indexed by the number of `Up` moves taken; [`LatticeWalk`] uses that
//! index so coincident positions interfere exactly. [`WalkState::apply`] is the
//! general step for arbitrary step lengths and merges positions by tolerance.

use std::io::Write;

use rand::Rng;

use crate::error::{domain, Error, Result};
use crate::fmt::g17;

/// Relative tolerance under which two walk positions are the same position.
pub const MERGE_TOLERANCE: f64 = 1e-9;

/// Allowed drift of the total probability before sampling refuses a state.
pub const MEASURE_TOLERANCE: f64 = 1e-6;

/// Biased coin `[[√ρ, √(1−ρ)], [√(1−ρ), −√ρ]]` for `ρ ∈ [0.5, 1]`.
///
/// `ρ = 0.5` is the Hadamard coin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinOperator {
    rho: f64,
    matrix: [[f64; 2]; 2],
}

impl CoinOperator {
    pub fn biased(rho: f64) -> Result<Self> {
        if !(0.5..=1.0).contains(&rho) {
            return Err(domain(format!("coin bias {rho} outside [0.5, 1]")));
        }
        let stay = rho.sqrt();
        let flip = (1.0 - rho).sqrt();
        Ok(Self {
            rho,
            matrix: [[stay, flip], [flip, -stay]],
        })
    }

    pub fn hadamard() -> Self {
        Self::biased(0.5).expect("0.5 is a valid bias")
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn matrix(&self) -> [[f64; 2]; 2] {
        self.matrix
    }

    #[inline]
    fn rotate(&self, up: f64, down: f64) -> (f64, f64) {
        let m = &self.matrix;
        (m[0][0] * up + m[0][1] * down, m[1][0] * up + m[1][1] * down)
    }
}

/// Builds the biased coin for `rho`; see [`CoinOperator::biased`].
pub fn biased_coin(rho: f64) -> Result<CoinOperator> {
    CoinOperator::biased(rho)
}

/// Displacements of one conditional shift.
///
/// `right_len` is added on `Up`, `left_len` subtracted on `Down`. Both are
/// already divided by `divisor`, which is kept for the merge tolerance and
/// for reporting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepSpec {
    pub right_len: f64,
    pub left_len: f64,
    pub divisor: u32,
}

impl StepSpec {
    /// Step toward a neighbour at signed offset `delta`: `Up` covers the
    /// fraction `bias` of it, `Down` retreats by the fraction `1 - bias`.
    pub fn toward(delta: f64, bias: f64, divisor: u32) -> Self {
        let d = f64::from(divisor);
        Self {
            right_len: bias * delta / d,
            left_len: (1.0 - bias) * delta / d,
            divisor,
        }
    }

    /// Unit steps `±1`, as in the textbook Hadamard walk.
    pub fn unit() -> Self {
        Self {
            right_len: 1.0,
            left_len: 1.0,
            divisor: 1,
        }
    }

    /// Distance between the `Up` and `Down` landing points.
    pub fn span(&self) -> f64 {
        self.right_len + self.left_len
    }

    fn validate(&self) -> Result<()> {
        if self.divisor == 0 {
            return Err(domain("step divisor must be at least 1"));
        }
        if !self.right_len.is_finite() || !self.left_len.is_finite() {
            return Err(domain("step lengths must be finite"));
        }
        if self.right_len * self.left_len < 0.0 {
            return Err(domain("step lengths must share a sign"));
        }
        Ok(())
    }

    fn merge_tolerance(&self) -> f64 {
        let delta = self.span() * f64::from(self.divisor);
        MERGE_TOLERANCE * delta.abs().max(1.0)
    }
}

/// Coin basis state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coin {
    Up,
    Down,
}

/// Amplitudes of both coin states at one position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Amplitude {
    pub position: f64,
    pub up: f64,
    pub down: f64,
}

impl Amplitude {
    pub fn probability(&self) -> f64 {
        self.up * self.up + self.down * self.down
    }
}

/// Superposition over (position, coin), positions sorted ascending and
/// pairwise distinct.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkState {
    entries: Vec<Amplitude>,
}

impl WalkState {
    /// `|↑⟩ ⊗ |0⟩`.
    pub fn initial() -> Self {
        Self {
            entries: vec![Amplitude {
                position: 0.0,
                up: 1.0,
                down: 0.0,
            }],
        }
    }

    /// Builds a state from raw entries, sorting them by position. Entries must
    /// not repeat a position.
    pub fn from_entries(mut entries: Vec<Amplitude>) -> Result<Self> {
        if entries.iter().any(|e| !e.position.is_finite()) {
            return Err(domain("walk positions must be finite"));
        }
        entries.sort_by(|a, b| a.position.total_cmp(&b.position));
        if entries.windows(2).any(|w| w[0].position == w[1].position) {
            return Err(domain("walk positions must be distinct"));
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[Amplitude] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_probability(&self) -> f64 {
        self.entries.iter().map(Amplitude::probability).sum()
    }

    /// Every non-zero (position, coin, amplitude) component.
    pub fn components(&self) -> Vec<(f64, Coin, f64)> {
        let mut out = Vec::with_capacity(2 * self.entries.len());
        for e in &self.entries {
            if e.up != 0.0 {
                out.push((e.position, Coin::Up, e.up));
            }
            if e.down != 0.0 {
                out.push((e.position, Coin::Down, e.down));
            }
        }
        out
    }

    /// One general walk step `S·(C⊗I)`. Positions closer than
    /// `1e-9 · max(1, |Δ|)` after the shift are merged by adding amplitudes.
    pub fn apply(&mut self, coin: &CoinOperator, step: &StepSpec) -> Result<()> {
        step.validate()?;
        let tol = step.merge_tolerance();
        let mut ups = Vec::with_capacity(self.entries.len());
        let mut downs = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            let (up, down) = coin.rotate(e.up, e.down);
            ups.push((e.position + step.right_len, up));
            downs.push((e.position - step.left_len, down));
        }

        // both lists are sorted because each shift is uniform
        let mut merged: Vec<Amplitude> = Vec::with_capacity(ups.len() + downs.len());
        let (mut i, mut j) = (0, 0);
        while i < ups.len() || j < downs.len() {
            let take_up = j == downs.len() || (i < ups.len() && ups[i].0 <= downs[j].0);
            let (position, up, down) = if take_up {
                i += 1;
                (ups[i - 1].0, ups[i - 1].1, 0.0)
            } else {
                j += 1;
                (downs[j - 1].0, 0.0, downs[j - 1].1)
            };
            match merged.last_mut() {
                Some(last) if (position - last.position).abs() < tol => {
                    last.up += up;
                    last.down += down;
                }
                _ => merged.push(Amplitude { position, up, down }),
            }
        }
        merged.retain(|e| e.up != 0.0 || e.down != 0.0);
        self.entries = merged;
        Ok(())
    }

    /// Exact measurement distribution.
    pub fn distribution(&self) -> PositionDistribution {
        PositionDistribution {
            points: self
                .entries
                .iter()
                .map(|e| (e.position, e.probability()))
                .collect(),
        }
    }

    /// Collapses the state to one position. Consumes exactly one uniform draw.
    pub fn measure<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<f64> {
        let total = self.total_probability();
        if (total - 1.0).abs() > MEASURE_TOLERANCE {
            return Err(Error::Consistency(format!(
                "walk state not normalized (total probability {total})"
            )));
        }
        let u: f64 = rng.gen();
        let mut cumulative = 0.0;
        let mut last = None;
        for e in &self.entries {
            let p = e.probability();
            if p == 0.0 {
                continue;
            }
            cumulative += p;
            last = Some(e.position);
            if u < cumulative {
                return Ok(e.position);
            }
        }
        // rounding left `cumulative` just under `u`
        last.ok_or_else(|| Error::Consistency("walk state has no support".into()))
    }
}

/// Walk whose steps share one span, tracked by the number of `Up` moves.
///
/// Position of index `n` is `offset + n · span`, where `offset` accumulates
/// `-left_len` over all steps.
#[derive(Debug, Clone)]
pub struct LatticeWalk {
    offset: f64,
    span: Option<f64>,
    amps: Vec<[f64; 2]>,
    tolerance: f64,
}

impl Default for LatticeWalk {
    fn default() -> Self {
        Self::new()
    }
}

impl LatticeWalk {
    /// Starts from `|↑⟩ ⊗ |0⟩`.
    pub fn new() -> Self {
        Self {
            offset: 0.0,
            span: None,
            amps: vec![[1.0, 0.0]],
            tolerance: 0.0,
        }
    }

    pub fn steps_taken(&self) -> usize {
        self.amps.len() - 1
    }

    pub fn step(&mut self, coin: &CoinOperator, step: &StepSpec) -> Result<()> {
        step.validate()?;
        match self.span {
            None => {
                self.tolerance = step.merge_tolerance();
                self.span = Some(step.span());
            }
            Some(s) if (s - step.span()).abs() <= self.tolerance => {}
            Some(s) => {
                return Err(domain(format!(
                    "step span {} does not match lattice span {s}",
                    step.span()
                )))
            }
        }
        let mut next = vec![[0.0; 2]; self.amps.len() + 1];
        for (n, &[up, down]) in self.amps.iter().enumerate() {
            let (up, down) = coin.rotate(up, down);
            next[n + 1][0] += up;
            next[n][1] += down;
        }
        self.amps = next;
        self.offset -= step.left_len;
        Ok(())
    }

    pub fn state(&self) -> WalkState {
        let span = self.span.unwrap_or(0.0);
        let mut entries: Vec<Amplitude> = self
            .amps
            .iter()
            .enumerate()
            .filter(|(_, a)| a[0] != 0.0 || a[1] != 0.0)
            .map(|(n, a)| Amplitude {
                position: self.offset + n as f64 * span,
                up: a[0],
                down: a[1],
            })
            .collect();
        // a zero or negative span collapses or reverses the lattice
        if span == 0.0 {
            let (up, down) = entries
                .iter()
                .fold((0.0, 0.0), |(u, d), e| (u + e.up, d + e.down));
            entries = vec![Amplitude {
                position: self.offset,
                up,
                down,
            }];
        } else if span < 0.0 {
            entries.reverse();
        }
        WalkState { entries }
    }
}

/// Single-coin multi-step walk: the coin of bias `rho` applied `r` times with
/// steps `+ρΔ/r` on `Up` and `−(1−ρ)Δ/r` on `Down`.
pub fn scms_walk(rho: f64, delta: f64, r: u32) -> Result<WalkState> {
    if r == 0 {
        return Err(domain("step count r must be at least 1"));
    }
    if !delta.is_finite() {
        return Err(domain(format!("displacement {delta} is not finite")));
    }
    let coin = CoinOperator::biased(rho)?;
    let step = StepSpec::toward(delta, rho, r);
    let mut walk = LatticeWalk::new();
    for _ in 0..r {
        walk.step(&coin, &step)?;
    }
    Ok(walk.state())
}

/// Multi-coin walk: coins `U_1 … U_k` applied in order, one per bias in
/// `etas`, each stepping `+η_jΔ/k` on `Up` and `−(1−η_j)Δ/k` on `Down`.
pub fn mcms_walk(etas: &[f64], delta: f64) -> Result<WalkState> {
    if etas.is_empty() {
        return Err(domain("multi-coin walk needs at least one coin"));
    }
    if !delta.is_finite() {
        return Err(domain(format!("displacement {delta} is not finite")));
    }
    let k = u32::try_from(etas.len()).map_err(|_| domain("too many coins"))?;
    let mut walk = LatticeWalk::new();
    for &eta in etas {
        let coin = CoinOperator::biased(eta)?;
        walk.step(&coin, &StepSpec::toward(delta, eta, k))?;
    }
    Ok(walk.state())
}

/// Exact Hadamard walk over `steps` unit steps.
pub fn hadamard_state(steps: u32) -> WalkState {
    let coin = CoinOperator::hadamard();
    let step = StepSpec::unit();
    let mut walk = LatticeWalk::new();
    for _ in 0..steps {
        walk.step(&coin, &step).expect("unit step is valid");
    }
    walk.state()
}

/// Exact Hadamard walk distribution after `steps` unit steps.
///
/// Amplitudes are tracked as integers times `2^{-steps/2}`, so probabilities
/// are exact up to one rounding per position.
pub fn hadamard_walk(steps: u32) -> Result<PositionDistribution> {
    if steps == 0 {
        return Err(domain("Hadamard walk needs at least one step"));
    }
    if steps > 120 {
        // beyond this the squared integer amplitudes overflow i128
        return Ok(hadamard_state(steps).distribution());
    }
    let mut amps: Vec<[i128; 2]> = vec![[1, 0]];
    for _ in 0..steps {
        let mut next = vec![[0i128; 2]; amps.len() + 1];
        for (n, &[up, down]) in amps.iter().enumerate() {
            next[n + 1][0] += up + down;
            next[n][1] += up - down;
        }
        amps = next;
    }
    let scale = 0.5f64.powi(steps as i32);
    let t = i64::from(steps);
    let points = amps
        .iter()
        .enumerate()
        .filter(|(_, a)| a[0] != 0 || a[1] != 0)
        .map(|(n, a)| {
            let norm = a[0] * a[0] + a[1] * a[1];
            ((2 * n as i64 - t) as f64, norm as f64 * scale)
        })
        .collect();
    Ok(PositionDistribution { points })
}

/// Position → probability, positions ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct PositionDistribution {
    points: Vec<(f64, f64)>,
}

impl PositionDistribution {
    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.points.iter().map(|p| p.1).sum()
    }

    /// Probability at `position`, matched within `tol`.
    pub fn probability_at(&self, position: f64, tol: f64) -> f64 {
        self.points
            .iter()
            .filter(|p| (p.0 - position).abs() <= tol)
            .map(|p| p.1)
            .sum()
    }

    /// Most likely position; ties go to the lower position.
    pub fn argmax(&self) -> Option<(f64, f64)> {
        self.points
            .iter()
            .copied()
            .fold(None, |best: Option<(f64, f64)>, p| match best {
                Some(b) if b.1 >= p.1 => Some(b),
                _ => Some(p),
            })
    }

    pub fn mean(&self) -> f64 {
        self.points.iter().map(|(x, p)| x * p).sum()
    }

    pub fn std_dev(&self) -> f64 {
        let mean = self.mean();
        self.points
            .iter()
            .map(|(x, p)| p * (x - mean).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    /// Writes `position,probability` rows with a header line.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "position,probability")?;
        for (x, p) in &self.points {
            writeln!(out, "{},{}", g17(*x), g17(*p))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn half_bias_is_hadamard() {
        let m = biased_coin(0.5).unwrap().matrix();
        for (got, want) in m.iter().flatten().zip([
            FRAC_1_SQRT_2,
            FRAC_1_SQRT_2,
            FRAC_1_SQRT_2,
            -FRAC_1_SQRT_2,
        ]) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn full_bias_is_diagonal() {
        assert_eq!(biased_coin(1.0).unwrap().matrix(), [[1.0, 0.0], [0.0, -1.0]]);
    }

    #[test]
    fn coin_point_eight_is_orthogonal() {
        let m = biased_coin(0.8).unwrap().matrix();
        for i in 0..2 {
            for j in 0..2 {
                let dot = m[0][i] * m[0][j] + m[1][i] * m[1][j];
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((dot - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn coin_rejects_out_of_range_bias() {
        assert!(biased_coin(0.49).is_err());
        assert!(biased_coin(1.01).is_err());
        assert!(biased_coin(f64::NAN).is_err());
    }

    #[test]
    fn scms_two_steps() {
        let d = scms_walk(0.8, 1.0, 2).unwrap().distribution();
        let pts = d.points();
        assert_eq!(pts.len(), 3);
        let want = [(-0.2, 0.16), (0.3, 0.20), (0.8, 0.64)];
        for ((x, p), (wx, wp)) in pts.iter().zip(want) {
            assert!((x - wx).abs() < 1e-12, "{x} vs {wx}");
            assert!((p - wp).abs() < 1e-12, "{p} vs {wp}");
        }
    }

    #[test]
    fn scms_zero_displacement_stays_put() {
        for r in 1..6 {
            let d = scms_walk(0.5, 0.0, r).unwrap().distribution();
            assert_eq!(d.len(), 1);
            assert_eq!(d.points()[0].0, 0.0);
            assert!((d.points()[0].1 - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn scms_balanced_two_steps() {
        let d = scms_walk(0.5, 2.0, 2).unwrap().distribution();
        assert!((d.probability_at(1.0, 1e-12) - 0.25).abs() < 1e-12);
        assert!((d.probability_at(0.0, 1e-12) - 0.50).abs() < 1e-12);
        assert!((d.probability_at(-1.0, 1e-12) - 0.25).abs() < 1e-12);
    }

    #[test]
    fn scms_negative_displacement_sorted() {
        let d = scms_walk(0.8, -1.0, 2).unwrap().distribution();
        let xs: Vec<f64> = d.points().iter().map(|p| p.0).collect();
        assert!(xs.windows(2).all(|w| w[0] < w[1]));
        assert!((d.probability_at(-0.8, 1e-12) - 0.64).abs() < 1e-12);
    }

    #[test]
    fn scms_domain_errors() {
        assert!(scms_walk(0.8, 1.0, 0).is_err());
        assert!(scms_walk(0.8, f64::INFINITY, 2).is_err());
        assert!(scms_walk(0.2, 1.0, 2).is_err());
    }

    #[test]
    fn mcms_single_coin_matches_scms() {
        for eta in [0.5, 0.7, 0.93, 1.0] {
            assert_eq!(
                mcms_walk(&[eta], 1.7).unwrap(),
                scms_walk(eta, 1.7, 1).unwrap()
            );
        }
    }

    #[test]
    fn mcms_deterministic_coins() {
        let d = mcms_walk(&[1.0, 1.0], 1.0).unwrap().distribution();
        assert_eq!(d.len(), 1);
        assert!((d.points()[0].0 - 1.0).abs() < 1e-15);
        assert!((d.points()[0].1 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn mcms_two_coins() {
        let (e1, e2, k) = (0.8, 0.6, 2.0);
        let s = mcms_walk(&[e1, e2], 1.0).unwrap();
        let c = s.components();
        assert_eq!(c.len(), 4);
        let find = |pos: f64, coin: Coin| {
            c.iter()
                .find(|x| (x.0 - pos).abs() < 1e-12 && x.1 == coin)
                .map(|x| x.2)
                .unwrap()
        };
        let a_uu = find((e1 + e2) / k, Coin::Up);
        let a_ud = find((e1 - (1.0 - e2)) / k, Coin::Down);
        let a_du = find((e2 - (1.0 - e1)) / k, Coin::Up);
        let a_dd = find(-((1.0 - e1) + (1.0 - e2)) / k, Coin::Down);
        assert!((a_uu * a_uu - 0.48).abs() < 1e-12);
        assert!((a_ud * a_ud - 0.32).abs() < 1e-12);
        assert!((a_du * a_du - 0.08).abs() < 1e-12);
        assert!((a_dd * a_dd - 0.12).abs() < 1e-12);
        assert!(a_dd < 0.0);
    }

    #[test]
    fn mcms_domain_errors() {
        assert!(mcms_walk(&[], 1.0).is_err());
        assert!(mcms_walk(&[0.8, 0.4], 1.0).is_err());
    }

    #[test]
    fn hadamard_small() {
        let d = hadamard_walk(1).unwrap();
        assert_eq!(d.points(), &[(-1.0, 0.5), (1.0, 0.5)]);
        let d = hadamard_walk(2).unwrap();
        assert!((d.probability_at(2.0, 0.0) - 0.25).abs() < 1e-15);
        assert!((d.probability_at(0.0, 0.0) - 0.5).abs() < 1e-15);
        assert!((d.probability_at(-2.0, 0.0) - 0.25).abs() < 1e-15);
        assert!(hadamard_walk(0).is_err());
    }

    #[test]
    fn hadamard_hundred_is_asymmetric() {
        let d = hadamard_walk(100).unwrap();
        assert!((d.total() - 1.0).abs() < 1e-9);
        for &(x, p) in d.points() {
            assert!((-100.0..=100.0).contains(&x));
            if (x as i64) % 2 != 0 {
                assert_eq!(p, 0.0);
            }
        }
        assert!(d.mean().abs() > 1.0);
    }

    #[test]
    fn general_apply_matches_lattice() {
        let coin = biased_coin(0.8).unwrap();
        let step = StepSpec::toward(1.0, 0.8, 2);
        let mut s = WalkState::initial();
        s.apply(&coin, &step).unwrap();
        s.apply(&coin, &step).unwrap();
        let lattice = scms_walk(0.8, 1.0, 2).unwrap();
        assert_eq!(s.len(), lattice.len());
        for (a, b) in s.entries().iter().zip(lattice.entries()) {
            assert!((a.position - b.position).abs() < 1e-12);
            assert!((a.up - b.up).abs() < 1e-12);
            assert!((a.down - b.down).abs() < 1e-12);
        }
    }

    #[test]
    fn lattice_rejects_mismatched_span() {
        let coin = CoinOperator::hadamard();
        let mut w = LatticeWalk::new();
        w.step(&coin, &StepSpec::unit()).unwrap();
        let wide = StepSpec {
            right_len: 2.0,
            left_len: 2.0,
            divisor: 1,
        };
        assert!(w.step(&coin, &wide).is_err());
    }

    #[test]
    fn measure_single_position() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = WalkState::initial();
        for _ in 0..20 {
            assert_eq!(s.measure(&mut rng).unwrap(), 0.0);
        }
    }

    #[test]
    fn measure_is_seeded() {
        let s = scms_walk(0.8, 1.0, 2).unwrap();
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..50).map(|_| s.measure(&mut rng).unwrap()).collect::<Vec<_>>()
        };
        assert_eq!(draw(11), draw(11));
    }

    #[test]
    fn measure_rejects_unnormalized() {
        let s = WalkState::from_entries(vec![Amplitude {
            position: 0.0,
            up: 0.9,
            down: 0.0,
        }])
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(matches!(s.measure(&mut rng), Err(Error::Consistency(_))));
    }

    #[test]
    fn csv_rendering() {
        let mut buf = Vec::new();
        hadamard_walk(1).unwrap().write_csv(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "position,probability\n-1,0.5\n1,0.5\n"
        );
    }
}
