//! Classical and quantum transition probabilities built from one spectrum.
//!
//! With `Q` the eigenvector matrix and `E` the eigenvalues, everything here is
//! a sum over modes weighted by `Q[k, n] · Q[j, n]`:
//!
//! ```text
//! classical  p(k <- j, t) = Σ_n exp(-t·E_n) Q[k,n] Q[j,n]
//! quantum    α(k <- j, t) = Σ_n exp(-i·t·E_n) Q[k,n] Q[j,n],   π = |α|²
//! limiting   χ(k, j)      = Σ_groups (Σ_{n in group} Q[k,n] Q[j,n])²
//! ```

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::spectral::{EigenspaceGrouping, Spectrum};

/// Default sample count for revival searches.
pub const DEFAULT_REVIVAL_POINTS: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WalkKind {
    Classical,
    Quantum,
}

impl WalkKind {
    pub fn as_str(self) -> &'static str {
        match self {
            WalkKind::Classical => "classical",
            WalkKind::Quantum => "quantum",
        }
    }
}

/// Distribution over nodes at one time from a fixed source.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransitionSnapshot {
    pub source: usize,
    pub time: f64,
    pub kind: WalkKind,
    /// Entry `k - 1` is the probability of being at node `k`.
    pub values: Vec<f64>,
}

impl TransitionSnapshot {
    /// Probability at a 1-based node.
    pub fn at(&self, node: usize) -> f64 {
        self.values[node - 1]
    }

    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Logarithmic,
    Explicit,
}

/// Strictly increasing, non-negative sample times.
#[derive(Clone, Debug, PartialEq)]
pub struct TimeGrid {
    times: Vec<f64>,
    spacing: Spacing,
}

impl TimeGrid {
    /// `steps` evenly spaced points from `start` to `end` inclusive.
    pub fn linear(start: f64, end: f64, steps: usize) -> Result<Self> {
        Self::check_bounds(start, end, steps)?;
        let h = (end - start) / (steps - 1) as f64;
        let mut times: Vec<f64> = (0..steps).map(|i| start + h * i as f64).collect();
        times[steps - 1] = end;
        Ok(Self {
            times,
            spacing: Spacing::Linear,
        })
    }

    /// `steps` geometrically spaced points; requires `start > 0`.
    pub fn logarithmic(start: f64, end: f64, steps: usize) -> Result<Self> {
        Self::check_bounds(start, end, steps)?;
        if start <= 0.0 {
            return domain("logarithmic time grid needs a positive start");
        }
        let (l0, l1) = (start.ln(), end.ln());
        let h = (l1 - l0) / (steps - 1) as f64;
        let mut times: Vec<f64> = (0..steps).map(|i| (l0 + h * i as f64).exp()).collect();
        times[0] = start;
        times[steps - 1] = end;
        Ok(Self {
            times,
            spacing: Spacing::Logarithmic,
        })
    }

    /// Arbitrary sample times, e.g. a single point at `t = 0`.
    pub fn from_times(times: Vec<f64>) -> Result<Self> {
        if times.is_empty() {
            return domain("time grid needs at least one point");
        }
        if times.iter().any(|t| !t.is_finite() || *t < 0.0) {
            return domain("time grid points must be finite and non-negative");
        }
        if times.windows(2).any(|w| w[0] >= w[1]) {
            return domain("time grid points must be strictly increasing");
        }
        Ok(Self {
            times,
            spacing: Spacing::Explicit,
        })
    }

    fn check_bounds(start: f64, end: f64, steps: usize) -> Result<()> {
        if !(start.is_finite() && end.is_finite()) || start < 0.0 {
            return domain(format!("time grid bounds must be finite with start >= 0, got [{start}, {end}]"));
        }
        if end <= start {
            return domain(format!("time grid end {end} must exceed start {start}"));
        }
        if steps < 2 {
            return domain(format!("time grid needs at least 2 steps, got {steps}"));
        }
        Ok(())
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn spacing(&self) -> Spacing {
        self.spacing
    }

    pub fn start(&self) -> f64 {
        self.times[0]
    }

    pub fn end(&self) -> f64 {
        self.times[self.times.len() - 1]
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Largest gap between consecutive samples.
    pub fn resolution(&self) -> f64 {
        self.times.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max)
    }
}

fn check_time(t: f64) -> Result<()> {
    if !(t >= 0.0 && t.is_finite()) {
        return domain(format!("time must be finite and non-negative, got {t}"));
    }
    Ok(())
}

/// Row `j` of the eigenvector matrix, i.e. `⟨q_n|j⟩` for every mode.
fn source_weights(s: &Spectrum, j: usize) -> Result<DVector<f64>> {
    s.check_node(j)?;
    Ok(s.eigenvectors().row(j - 1).transpose())
}

pub fn classical_probability(s: &Spectrum, j: usize, t: f64) -> Result<TransitionSnapshot> {
    check_time(t)?;
    let w = source_weights(s, j)?;
    Ok(classical_from_weights(s, &w, j, t))
}

fn classical_from_weights(s: &Spectrum, w: &DVector<f64>, j: usize, t: f64) -> TransitionSnapshot {
    let decay = DVector::from_iterator(
        w.len(),
        w.iter().zip(s.eigenvalues()).map(|(x, e)| x * (-t * e).exp()),
    );
    let values = (s.eigenvectors() * decay).as_slice().to_vec();
    TransitionSnapshot {
        source: j,
        time: t,
        kind: WalkKind::Classical,
        values,
    }
}

/// `⟨k| exp(-iHt) |j⟩`.
pub fn quantum_amplitude(s: &Spectrum, j: usize, k: usize, t: f64) -> Result<Complex64> {
    check_time(t)?;
    s.check_node(j)?;
    s.check_node(k)?;
    Ok(s
        .eigenvalues()
        .iter()
        .enumerate()
        .map(|(n, &e)| Complex64::from_polar(s.component(k, n) * s.component(j, n), -t * e))
        .sum())
}

pub fn quantum_probability(s: &Spectrum, j: usize, t: f64) -> Result<TransitionSnapshot> {
    check_time(t)?;
    let w = source_weights(s, j)?;
    Ok(quantum_from_weights(s, &w, j, t))
}

fn quantum_from_weights(s: &Spectrum, w: &DVector<f64>, j: usize, t: f64) -> TransitionSnapshot {
    let n = w.len();
    let (mut c, mut sn) = (DVector::zeros(n), DVector::zeros(n));
    for (m, (&x, &e)) in w.iter().zip(s.eigenvalues()).enumerate() {
        let (sin, cos) = (t * e).sin_cos();
        c[m] = x * cos;
        sn[m] = x * sin;
    }
    let q = s.eigenvectors();
    let re = q * c;
    let im = q * sn;
    let values = re.iter().zip(im.iter()).map(|(a, b)| a * a + b * b).collect();
    TransitionSnapshot {
        source: j,
        time: t,
        kind: WalkKind::Quantum,
        values,
    }
}

/// Return probability `π(j <- j, t)` without forming the full snapshot.
pub fn return_probability(s: &Spectrum, j: usize, t: f64) -> Result<f64> {
    check_time(t)?;
    let w = source_weights(s, j)?;
    Ok(return_from_weights(s.eigenvalues(), &w, t))
}

fn return_from_weights(eigenvalues: &[f64], w: &DVector<f64>, t: f64) -> f64 {
    let (mut re, mut im) = (0.0, 0.0);
    for (&x, &e) in w.iter().zip(eigenvalues) {
        let (sin, cos) = (t * e).sin_cos();
        let x2 = x * x;
        re += x2 * cos;
        im += x2 * sin;
    }
    re * re + im * im
}

/// One snapshot per grid time, in grid order.
pub fn evolve_series(
    s: &Spectrum,
    j: usize,
    kind: WalkKind,
    grid: &TimeGrid,
) -> Result<Vec<TransitionSnapshot>> {
    let w = source_weights(s, j)?;
    Ok(grid
        .times()
        .par_iter()
        .map(|&t| match kind {
            WalkKind::Classical => classical_from_weights(s, &w, j, t),
            WalkKind::Quantum => quantum_from_weights(s, &w, j, t),
        })
        .collect())
}

/// Largest sampled return probability inside a window that excludes `t = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Revival {
    pub time: f64,
    pub probability: f64,
    /// Largest spacing of the searched grid.
    pub resolution: f64,
}

pub fn max_return_probability(s: &Spectrum, j: usize, window: &TimeGrid) -> Result<Revival> {
    if window.start() <= 0.0 {
        return domain("revival window must start after t = 0");
    }
    let w = source_weights(s, j)?;
    let e = s.eigenvalues();
    let (time, probability) = window
        .times()
        .par_iter()
        .map(|&t| (t, return_from_weights(e, &w, t)))
        .reduce(
            || (f64::NAN, f64::NEG_INFINITY),
            |a, b| if b.1 > a.1 || (b.1 == a.1 && b.0 < a.0) { b } else { a },
        );
    Ok(Revival {
        time,
        probability,
        resolution: window.resolution(),
    })
}

/// Long-time averages `χ(k, j)`; symmetric, columns sum to one.
#[derive(Clone, Debug, PartialEq)]
pub struct LimitingMatrix {
    entries: DMatrix<f64>,
}

impl LimitingMatrix {
    pub fn from_entries(entries: DMatrix<f64>) -> Result<Self> {
        if !entries.is_square() {
            return domain("limiting matrix must be square");
        }
        Ok(Self { entries })
    }

    pub fn order(&self) -> usize {
        self.entries.nrows()
    }

    /// `χ(k, j)`, 1-based.
    pub fn get(&self, k: usize, j: usize) -> f64 {
        self.entries[(k - 1, j - 1)]
    }

    /// Column for source `j`, entry `k - 1` is `χ(k, j)`.
    pub fn column(&self, j: usize) -> Vec<f64> {
        self.entries.column(j - 1).iter().copied().collect()
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn asymmetry(&self) -> f64 {
        (&self.entries - self.entries.transpose()).abs().max()
    }
}

fn check_grouping(s: &Spectrum, grouping: &EigenspaceGrouping) -> Result<()> {
    if grouping.order() != s.order() {
        return domain(format!(
            "grouping covers {} modes but the spectrum has {}",
            grouping.order(),
            s.order()
        ));
    }
    Ok(())
}

pub fn limiting_probability(
    s: &Spectrum,
    grouping: &EigenspaceGrouping,
    j: usize,
) -> Result<Vec<f64>> {
    check_grouping(s, grouping)?;
    s.check_node(j)?;
    let q = s.eigenvectors();
    let n = s.order();
    let mut column = vec![0.0; n];
    for g in grouping.groups() {
        for (k, slot) in column.iter_mut().enumerate() {
            let overlap: f64 = g.clone().map(|m| q[(k, m)] * q[(j - 1, m)]).sum();
            *slot += overlap * overlap;
        }
    }
    Ok(column)
}

/// All sources at once: `χ = Σ_g P_g ∘ P_g` with `P_g` the projector onto
/// the degenerate group `g`.
pub fn limiting_matrix(s: &Spectrum, grouping: &EigenspaceGrouping) -> Result<LimitingMatrix> {
    check_grouping(s, grouping)?;
    let n = s.order();
    let q = s.eigenvectors();
    let mut chi = DMatrix::<f64>::zeros(n, n);
    for g in grouping.groups() {
        let block = q.columns(g.start, g.len());
        let projector = block * block.transpose();
        chi += projector.component_mul(&projector);
    }
    // exact symmetry; the projector product is symmetric only up to rounding
    let chi = (&chi + chi.transpose()) * 0.5;
    Ok(LimitingMatrix { entries: chi })
}

/// Exact mean of `π(k <- j, t)` over `[0, horizon]`:
/// `Σ_{n,l} c_n c_l sinc((E_n - E_l)·T)` with `c_n = Q[k,n] Q[j,n]`.
pub fn time_averaged_probability(s: &Spectrum, j: usize, k: usize, horizon: f64) -> Result<f64> {
    s.check_node(j)?;
    s.check_node(k)?;
    if !(horizon > 0.0 && horizon.is_finite()) {
        return domain(format!("averaging horizon must be positive, got {horizon}"));
    }
    let e = s.eigenvalues();
    let c: Vec<f64> = (0..s.order())
        .map(|n| s.component(k, n) * s.component(j, n))
        .collect();
    let mut total = 0.0;
    for n in 0..c.len() {
        for l in 0..c.len() {
            let x = (e[n] - e[l]) * horizon;
            let sinc = if x.abs() < 1e-8 { 1.0 - x * x / 6.0 } else { x.sin() / x };
            total += c[n] * c[l] * sinc;
        }
    }
    Ok(total)
}
