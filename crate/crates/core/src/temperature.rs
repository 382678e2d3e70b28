//! Temperatures at which every vertex has the same subgraph centrality, and
//! the large-beta ordering of the vertex classes.
//!
//! For a graph that is not walk-regular each class difference `f_i - f_j` is
//! a non-trivial exponential sum with finitely many zeros. The zeros are
//! bracketed on a grid and bisected; a zero is a maximal-entropy temperature
//! only when every class pair vanishes there at once.

use serde::Serialize;

use crate::entropy::DEFAULT_MAX_TOL;
use crate::error::{Error, Result};
use crate::exec::{self, Parallelism};
use crate::graph::{degree_summary, Graph};
use crate::spectral::{centrality_diagonal, eigendecompose, relative_spread, SpectralDecomposition};
use crate::walks::{is_walk_regular, WalkRegularityVerdict};

/// Target bracket width for bisected roots.
pub const BRACKET_WIDTH: f64 = 1e-12;
/// Roots closer than this are merged.
pub const DEDUP_TOL: f64 = 1e-9;
/// Relative size below which a grid value is too small to carry a reliable sign.
const SIGN_NOISE: f64 = 1e-12;
/// Relative `|f_i - f_j|` local minima below this trigger a finer re-scan.
const REFINE_TRIGGER: f64 = 1e-6;
const REFINE_FACTOR: usize = 100;
/// Grouped weights closer than this are treated as equal.
pub const WEIGHT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossingOptions {
    pub beta_max: f64,
    pub grid_step: f64,
    /// Maximality tolerance on the relative spread of the diagonal.
    pub tol: f64,
    pub parallelism: Parallelism,
}

impl Default for CrossingOptions {
    fn default() -> Self {
        CrossingOptions {
            beta_max: 10.0,
            grid_step: 0.01,
            tol: DEFAULT_MAX_TOL,
            parallelism: Parallelism::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassValue {
    pub class: usize,
    pub representative: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossingReport {
    pub beta_star: f64,
    pub bracket_lo: f64,
    pub bracket_hi: f64,
    /// Relative spread of the whole diagonal at `beta_star`.
    pub spread: f64,
    pub classes: Vec<ClassValue>,
    /// Class indices whose difference was bisected.
    pub pair: (usize, usize),
}

impl CrossingReport {
    pub fn bracket(&self) -> (f64, f64) {
        (self.bracket_lo, self.bracket_hi)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossingScan {
    pub classes: Vec<Vec<usize>>,
    /// Maximal-entropy temperatures, sorted and deduplicated.
    pub crossings: Vec<CrossingReport>,
    /// Zeros of one class difference where other classes still disagree.
    pub pairwise_only: Vec<CrossingReport>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Crossings {
    /// Walk-regular: entropy is maximal at every temperature.
    AllBeta,
    Finite(CrossingScan),
}

impl Crossings {
    pub fn roots(&self) -> Option<Vec<f64>> {
        match self {
            Crossings::AllBeta => None,
            Crossings::Finite(scan) => Some(scan.crossings.iter().map(|c| c.beta_star).collect()),
        }
    }
}

/// `f_i(beta) - f_j(beta)`.
pub fn class_difference(d: &SpectralDecomposition, i: usize, j: usize, beta: f64) -> Result<f64> {
    d.difference(i, j, beta)
}

pub fn find_crossings(g: &Graph, beta_max: f64, grid_step: f64) -> Result<Crossings> {
    let opts = CrossingOptions {
        beta_max,
        grid_step,
        ..CrossingOptions::default()
    };
    find_crossings_with(g, &opts)
}

pub fn find_crossings_with(g: &Graph, opts: &CrossingOptions) -> Result<Crossings> {
    let verdict = is_walk_regular(g);
    if verdict.is_walk_regular {
        return Ok(Crossings::AllBeta);
    }
    let d = eigendecompose(g)?;
    scan_classes(&d, &verdict.classes, opts).map(Crossings::Finite)
}

/// Crossing search over a known class partition.
pub fn scan_classes(
    d: &SpectralDecomposition,
    classes: &[Vec<usize>],
    opts: &CrossingOptions,
) -> Result<CrossingScan> {
    #[allow(clippy::neg_cmp_op_on_partial_ord)] // negated so NaN is rejected too
    if !(opts.beta_max > 0.0) || !(opts.grid_step > 0.0) || !opts.beta_max.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "crossing search needs beta_max > 0 and step > 0 (got {}, {})",
            opts.beta_max, opts.grid_step
        )));
    }
    let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
    let pairs: Vec<(usize, usize)> = (0..reps.len())
        .flat_map(|a| (a + 1..reps.len()).map(move |b| (a, b)))
        .collect();

    let grid = ScanGrid::new(d, opts);
    let per_pair = exec::map(opts.parallelism, pairs.len(), |p| {
        let (a, b) = pairs[p];
        pair_roots(d, &grid, reps[a], reps[b], opts)
    });

    let mut candidates = Vec::new();
    let mut warnings = Vec::new();
    for (&(a, b), (roots, notes)) in pairs.iter().zip(per_pair) {
        candidates.extend(roots.into_iter().map(|r| ((a, b), r)));
        warnings.extend(notes.into_iter().map(|w| format!("classes {a}/{b}: {w}")));
    }
    candidates.sort_by(|x, y| x.1 .0.total_cmp(&y.1 .0));

    let mut crossings: Vec<CrossingReport> = Vec::new();
    let mut pairwise_only: Vec<CrossingReport> = Vec::new();
    for (pair, (beta_star, lo, hi)) in candidates {
        let report = crossing_report(d, &reps, pair, beta_star, lo, hi)?;
        if report.spread > opts.tol {
            // already deduplicated per pair
            pairwise_only.push(report);
        } else if crossings
            .last()
            .is_none_or(|r| (beta_star - r.beta_star).abs() > DEDUP_TOL)
        {
            crossings.push(report);
        }
    }
    Ok(CrossingScan {
        classes: classes.to_vec(),
        crossings,
        pairwise_only,
        warnings,
    })
}

fn crossing_report(
    d: &SpectralDecomposition,
    reps: &[usize],
    pair: (usize, usize),
    beta_star: f64,
    lo: f64,
    hi: f64,
) -> Result<CrossingReport> {
    let scaled: Vec<f64> = reps.iter().map(|&r| d.scaled_value(r, beta_star)).collect();
    let spread = relative_spread(&scaled);
    let classes = reps
        .iter()
        .enumerate()
        .map(|(class, &representative)| {
            Ok(ClassValue {
                class,
                representative,
                value: d.value(representative, beta_star)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(CrossingReport {
        beta_star,
        bracket_lo: lo,
        bracket_hi: hi,
        spread,
        classes,
        pair,
    })
}

type Root = (f64, f64, f64);

/// Coarse scan points with `exp(beta (lambda_j - lambda_max))` precomputed,
/// shared by every class pair.
struct ScanGrid {
    betas: Vec<f64>,
    exps: Vec<f64>,
    width: usize,
}

impl ScanGrid {
    fn new(d: &SpectralDecomposition, opts: &CrossingOptions) -> Self {
        let step = opts.grid_step;
        let count = (opts.beta_max / step + 1e-9).floor() as usize;
        // the first cell is sampled finely: nothing below it carries a sign
        let fine_step = step / REFINE_FACTOR as f64;
        let betas: Vec<f64> = (1..REFINE_FACTOR)
            .map(|m| m as f64 * fine_step)
            .chain((1..=count).map(|k| k as f64 * step))
            .collect();
        let lambdas = d.distinct_eigenvalues();
        let top = lambdas[0];
        let rows = exec::map(opts.parallelism, betas.len(), |k| {
            lambdas
                .iter()
                .map(|l| (betas[k] * (l - top)).exp())
                .collect::<Vec<f64>>()
        });
        ScanGrid {
            betas,
            exps: rows.concat(),
            width: lambdas.len(),
        }
    }

    fn sign(&self, d: &SpectralDecomposition, i: usize, j: usize, k: usize) -> (f64, i8) {
        let exps = &self.exps[k * self.width..(k + 1) * self.width];
        let (mut diff, mut size) = (0.0, 0.0);
        for ((a, b), e) in d.grouped_row(i).iter().zip(d.grouped_row(j)).zip(exps) {
            diff += (a - b) * e;
            size += 0.5 * (a + b) * e;
        }
        classify(diff / size)
    }
}

fn classify(rel: f64) -> (f64, i8) {
    let sign = if rel.abs() <= SIGN_NOISE {
        0
    } else if rel > 0.0 {
        1
    } else {
        -1
    };
    (rel, sign)
}

/// Sign of the scaled difference, or 0 when it is lost in rounding noise.
fn significant_sign(d: &SpectralDecomposition, i: usize, j: usize, beta: f64) -> (f64, i8) {
    let diff = d.scaled_difference(i, j, beta);
    let size = 0.5 * (d.scaled_value(i, beta) + d.scaled_value(j, beta));
    classify(diff / size)
}

/// Brackets sign changes of `f_i - f_j` along `grid` (first point excluded
/// from being a root) and bisects each.
fn bracket_and_bisect(d: &SpectralDecomposition, i: usize, j: usize, grid: &[f64], signs: &[(f64, i8)]) -> Vec<Root> {
    let mut roots = Vec::new();
    let mut last: Option<(f64, i8)> = None;
    for (&beta, &(_, s)) in grid.iter().zip(signs) {
        if s == 0 {
            continue;
        }
        if let Some((prev, ps)) = last {
            if ps != s {
                roots.push(bisect(d, i, j, prev, beta, ps));
            }
        }
        last = Some((beta, s));
    }
    roots
}

fn bisect(d: &SpectralDecomposition, i: usize, j: usize, mut lo: f64, mut hi: f64, lo_sign: i8) -> Root {
    while hi - lo > BRACKET_WIDTH {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let diff = d.scaled_difference(i, j, mid);
        if diff == 0.0 {
            return (mid, mid, mid);
        }
        if (diff > 0.0) == (lo_sign > 0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (0.5 * (lo + hi), lo, hi)
}

/// Roots of one class difference on `(0, beta_max]`, with refinement around
/// near-zero local minima that the coarse grid could not bracket.
fn pair_roots(
    d: &SpectralDecomposition,
    scan: &ScanGrid,
    i: usize,
    j: usize,
    opts: &CrossingOptions,
) -> (Vec<Root>, Vec<String>) {
    let step = opts.grid_step;
    let fine_step = step / REFINE_FACTOR as f64;
    let grid = &scan.betas;
    let signs: Vec<(f64, i8)> = (0..grid.len()).map(|k| scan.sign(d, i, j, k)).collect();
    let mut roots = bracket_and_bisect(d, i, j, grid, &signs);
    let mut warnings = Vec::new();

    for k in REFINE_FACTOR..grid.len().saturating_sub(1) {
        let (prev, here, next) = (signs[k - 1].0.abs(), signs[k].0.abs(), signs[k + 1].0.abs());
        if !(here <= prev && here <= next && here < REFINE_TRIGGER) {
            continue;
        }
        let (lo, hi) = (grid[k - 1], grid[k + 1]);
        if roots.iter().any(|r| r.0 >= lo && r.0 <= hi) {
            continue;
        }
        let fine: Vec<f64> = (0..=2 * REFINE_FACTOR).map(|m| lo + m as f64 * fine_step).collect();
        let fine_signs: Vec<(f64, i8)> = fine.iter().map(|&b| significant_sign(d, i, j, b)).collect();
        let found = bracket_and_bisect(d, i, j, &fine, &fine_signs);
        if found.is_empty() {
            warnings.push(format!(
                "|f_i - f_j| / mean dips to {here:.3e} near beta = {:.6} without a sign change; \
                 a root of even multiplicity cannot be excluded",
                grid[k]
            ));
        } else {
            warnings.push(format!(
                "grid step {step} too coarse: refinement found {} root(s) in [{lo:.6}, {hi:.6}]",
                found.len()
            ));
            roots.extend(found);
        }
    }
    roots.sort_by(|a, b| a.0.total_cmp(&b.0));
    roots.dedup_by(|a, b| (a.0 - b.0).abs() <= DEDUP_TOL);
    (roots, warnings)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DominanceReport {
    pub leading_class: usize,
    pub representative: usize,
    /// Beyond this temperature the leading class has strictly the largest
    /// subgraph centrality.
    pub beta_horizon: f64,
}

/// The class that wins as `beta -> infinity`: lexicographically largest
/// grouped weights in descending eigenvalue order.
pub fn dominance(d: &SpectralDecomposition, classes: &[Vec<usize>]) -> Result<DominanceReport> {
    if classes.is_empty() {
        return Err(Error::InvalidArgument("dominance needs at least one vertex class".into()));
    }
    let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
    let mut leader = 0;
    for c in 1..reps.len() {
        match first_difference(d, reps[c], reps[leader]) {
            Some((_, delta)) if delta > 0.0 => leader = c,
            Some(_) => {}
            None => {
                return Err(Error::Indistinguishable {
                    first: leader.min(c),
                    second: leader.max(c),
                    tol: WEIGHT_TOL,
                })
            }
        }
    }
    let mut horizon: f64 = 0.0;
    for c in (0..reps.len()).filter(|&c| c != leader) {
        horizon = horizon.max(pair_horizon(d, reps[leader], reps[c])?);
    }
    Ok(DominanceReport {
        leading_class: leader,
        representative: reps[leader],
        beta_horizon: horizon,
    })
}

/// First eigenspace where the grouped weights of `i` and `j` differ, with `a_i - a_j` there.
fn first_difference(d: &SpectralDecomposition, i: usize, j: usize) -> Option<(usize, f64)> {
    d.grouped_row(i)
        .iter()
        .zip(d.grouped_row(j))
        .map(|(a, b)| a - b)
        .enumerate()
        .find(|(_, delta)| delta.abs() > WEIGHT_TOL)
}

/// Smallest certified `beta` past which `f_leader > f_other` for good.
///
/// With `j*` the first differing eigenspace and `gap = a_{leader,j*} - a_{other,j*}`,
/// `(f_leader - f_other) e^{-beta lambda_j*} >= gap - sum_{j > j*} |delta_j| e^{-beta (lambda_j* - lambda_j)}`,
/// and the right side is increasing in `beta`.
fn pair_horizon(d: &SpectralDecomposition, leader: usize, other: usize) -> Result<f64> {
    let (start, gap) = first_difference(d, leader, other).expect("leader differs from every class");
    let lambdas = d.distinct_eigenvalues();
    let deltas: Vec<f64> = d
        .grouped_row(leader)
        .iter()
        .zip(d.grouped_row(other))
        .map(|(a, b)| (a - b).abs())
        .collect();
    let certificate = |beta: f64| -> f64 {
        gap - (start + 1..lambdas.len())
            .map(|j| deltas[j] * (-beta * (lambdas[start] - lambdas[j])).exp())
            .sum::<f64>()
    };
    if certificate(0.0) > 0.0 {
        return Ok(0.0);
    }
    let mut hi = 1.0 / 64.0;
    while certificate(hi) <= 0.0 {
        hi *= 2.0;
        if hi > 1e12 {
            return Err(Error::Indistinguishable {
                first: leader,
                second: other,
                tol: WEIGHT_TOL,
            });
        }
    }
    let mut lo = hi / 2.0;
    while hi - lo > 1e-9 * hi {
        let mid = 0.5 * (lo + hi);
        if certificate(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Everything needed to judge whether a graph is a non-walk-regular graph
/// that still reaches maximal walk entropy at some positive temperature.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CounterexampleReport {
    pub vertices: usize,
    pub edges: usize,
    pub walk_regularity: WalkRegularityVerdict,
    pub degree_regular: bool,
    pub degree_histogram: std::collections::BTreeMap<usize, usize>,
    /// True for walk-regular graphs, whose entropy is maximal at every beta.
    pub maximal_at_all_beta: bool,
    pub crossings: Vec<CrossingReport>,
    pub pairwise_only: Vec<CrossingReport>,
    pub crossing_count: usize,
    /// Not walk-regular, yet maximal at some beta > 0.
    pub counterexample: bool,
    pub maximal_at_beta_one: bool,
    pub crossing_bound: usize,
    pub within_crossing_bound: bool,
    pub scan_beta_max: f64,
    pub scan_step: f64,
    /// Empirical conjecture violations worth a closer look.
    pub findings: Vec<String>,
    pub warnings: Vec<String>,
}

pub fn verify_counterexample(g: &Graph) -> Result<CounterexampleReport> {
    verify_counterexample_with(g, &CrossingOptions::default())
}

pub fn verify_counterexample_with(g: &Graph, opts: &CrossingOptions) -> Result<CounterexampleReport> {
    let n = g.vertex_count();
    let verdict = is_walk_regular(g);
    let degrees = degree_summary(g);
    let d = eigendecompose(g)?;
    let beta_one_spread = centrality_diagonal(&d, 1.0)?.relative_spread();

    let scan = if verdict.is_walk_regular {
        None
    } else {
        Some(scan_classes(&d, &verdict.classes, opts)?)
    };
    let (crossings, pairwise_only, warnings) = match scan {
        Some(s) => (s.crossings, s.pairwise_only, s.warnings),
        None => (Vec::new(), Vec::new(), Vec::new()),
    };
    let crossing_count = crossings.len();
    let crossing_bound = n.saturating_sub(1);
    let maximal_at_beta_one = beta_one_spread <= opts.tol;

    let mut findings = Vec::new();
    if !verdict.is_walk_regular {
        if crossing_count > crossing_bound {
            findings.push(format!(
                "{crossing_count} maximal-entropy temperatures exceed n - 1 = {crossing_bound}"
            ));
        }
        if maximal_at_beta_one {
            findings.push(format!(
                "entropy is maximal at beta = 1 (relative spread {beta_one_spread:e}) on a non-walk-regular graph"
            ));
        }
    }

    Ok(CounterexampleReport {
        vertices: n,
        edges: g.edge_count(),
        counterexample: !verdict.is_walk_regular && crossing_count > 0,
        maximal_at_all_beta: verdict.is_walk_regular,
        walk_regularity: verdict,
        degree_regular: degrees.is_regular(),
        degree_histogram: degrees.histogram,
        crossings,
        pairwise_only,
        crossing_count,
        maximal_at_beta_one,
        crossing_bound,
        within_crossing_bound: crossing_count <= crossing_bound,
        scan_beta_max: opts.beta_max,
        scan_step: opts.grid_step,
        findings,
        warnings,
    })
}
