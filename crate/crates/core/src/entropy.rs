//! Walk entropy `S(G, beta)` of the distribution proportional to subgraph
//! centrality, and the maximality predicate.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{self, Parallelism};
use crate::spectral::{centrality_diagonal, CentralityDiagonal, SpectralDecomposition};

/// Relative diagonal spread at or below which the entropy counts as maximal.
pub const DEFAULT_MAX_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyReport {
    pub beta: f64,
    /// Natural-log units.
    pub entropy: f64,
    /// `ln n`.
    pub max_entropy: f64,
    pub deficit: f64,
    /// `(max f - min f) / mean f`.
    pub spread: f64,
    pub probabilities: Vec<f64>,
    pub diagonal: Vec<f64>,
    pub is_maximal: bool,
}

/// Entropy of the distribution proportional to `values`.
///
/// With `q_i = f_i / mean f` the deficit `ln n - S` equals
/// `(1/n) sum_i (q_i ln q_i - q_i + 1)`, a sum of non-negative terms that
/// keeps full relative precision near the maximum.
pub fn entropy_of(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let deficit = values
        .iter()
        .map(|&f| {
            let d = f / mean - 1.0;
            if d <= -1.0 {
                // q = 0: 0 ln 0 = 0
                1.0
            } else {
                (1.0 + d) * d.ln_1p() - d
            }
        })
        .sum::<f64>()
        / n;
    (n.ln() - deficit, deficit)
}

pub fn report_from_diagonal(f: &CentralityDiagonal, tol: f64) -> EntropyReport {
    let (entropy, deficit) = entropy_of(&f.values);
    let spread = f.relative_spread();
    EntropyReport {
        beta: f.beta,
        entropy,
        max_entropy: (f.values.len() as f64).ln(),
        deficit,
        spread,
        probabilities: f.values.iter().map(|v| v / f.trace).collect(),
        diagonal: f.values.clone(),
        is_maximal: spread <= tol,
    }
}

pub fn walk_entropy(d: &SpectralDecomposition, beta: f64) -> Result<EntropyReport> {
    walk_entropy_with_tol(d, beta, DEFAULT_MAX_TOL)
}

pub fn walk_entropy_with_tol(d: &SpectralDecomposition, beta: f64, tol: f64) -> Result<EntropyReport> {
    Ok(report_from_diagonal(&centrality_diagonal(d, beta)?, tol))
}

/// Maximal entropy iff all diagonal entries of `exp(beta A)` coincide,
/// judged on their relative spread rather than on `ln n - S`, which is
/// quadratic in the spread.
pub fn is_entropy_maximal(d: &SpectralDecomposition, beta: f64, tol: f64) -> Result<bool> {
    Ok(centrality_diagonal(d, beta)?.relative_spread() <= tol)
}

/// Grid `beta_min, beta_min + step, ...` up to `beta_max`.
#[allow(clippy::neg_cmp_op_on_partial_ord)] // negated so NaN is rejected too
pub fn beta_grid(beta_min: f64, beta_max: f64, step: f64) -> Result<Vec<f64>> {
    if !(beta_min >= 0.0) || !(beta_max >= beta_min) || !(step > 0.0) || !beta_max.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "scan needs 0 <= beta_min <= beta_max and step > 0 (got {beta_min}, {beta_max}, {step})"
        )));
    }
    let count = ((beta_max - beta_min) / step + 1e-9).floor() as usize;
    Ok((0..=count).map(|k| beta_min + k as f64 * step).collect())
}

pub fn entropy_scan(
    d: &SpectralDecomposition,
    beta_min: f64,
    beta_max: f64,
    step: f64,
) -> Result<Vec<EntropyReport>> {
    entropy_scan_with(d, beta_min, beta_max, step, DEFAULT_MAX_TOL, Parallelism::default())
}

pub fn entropy_scan_with(
    d: &SpectralDecomposition,
    beta_min: f64,
    beta_max: f64,
    step: f64,
    tol: f64,
    par: Parallelism,
) -> Result<Vec<EntropyReport>> {
    let grid = beta_grid(beta_min, beta_max, step)?;
    exec::try_map(par, grid.len(), |k| walk_entropy_with_tol(d, grid[k], tol))
}
