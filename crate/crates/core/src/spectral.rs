//! Symmetric eigendecomposition of the adjacency matrix and the diagonal of
//! `exp(beta * A)` as an exponential sum over the spectrum.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::walks::closed_walk_table;

/// Absolute gap below which two eigenvalues are treated as one.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-8;

/// Largest exponent whose `exp` is finite in `f64`.
pub const EXP_LIMIT: f64 = 709.782_712_893_384;

const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    n: usize,
    /// Descending.
    eigenvalues: Vec<f64>,
    /// Row-major, `vectors[i * n + k]` is component `i` of eigenvector `k`.
    vectors: Vec<f64>,
    /// `weights[i * n + k] = vectors[i * n + k]^2`.
    weights: Vec<f64>,
    distinct: Vec<f64>,
    multiplicities: Vec<usize>,
    /// `grouped[i * distinct.len() + j]`: weight of vertex `i` on eigenspace `j`.
    grouped: Vec<f64>,
}

impl SpectralDecomposition {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvector(&self, k: usize) -> Vec<f64> {
        (0..self.n).map(|i| self.vectors[i * self.n + k]).collect()
    }

    /// Squared component of eigenvector `k` at vertex `i`.
    pub fn weight(&self, i: usize, k: usize) -> f64 {
        self.weights[i * self.n + k]
    }

    pub fn weight_row(&self, i: usize) -> &[f64] {
        &self.weights[i * self.n..(i + 1) * self.n]
    }

    /// Distinct eigenvalues, descending.
    pub fn distinct_eigenvalues(&self) -> &[f64] {
        &self.distinct
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    /// Weights of vertex `i` on each eigenspace, in descending eigenvalue order.
    pub fn grouped_row(&self, i: usize) -> &[f64] {
        let k = self.distinct.len();
        &self.grouped[i * k..(i + 1) * k]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// Largest `||A u_k - lambda_k u_k||_2` over all eigenpairs.
    pub fn max_residual(&self, g: &Graph) -> f64 {
        let n = self.n;
        (0..n)
            .map(|k| {
                (0..n)
                    .map(|i| {
                        let au: f64 = g.neighbors(i).iter().map(|&j| self.vectors[j * n + k]).sum();
                        let r = au - self.eigenvalues[k] * self.vectors[i * n + k];
                        r * r
                    })
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max)
    }

    /// `exp(beta * lambda)` for every eigenvalue, or the overflow error.
    fn exponentials(&self, values: &[f64], beta: f64) -> Result<Vec<f64>> {
        let worst = values
            .iter()
            .map(|&l| beta * l)
            .fold(f64::NEG_INFINITY, f64::max);
        if worst > EXP_LIMIT {
            return Err(Error::Overflow {
                beta,
                exponent: worst,
                limit: EXP_LIMIT,
            });
        }
        Ok(values.iter().map(|&l| (beta * l).exp()).collect())
    }

    /// `f_i(beta) / exp(beta * lambda_max)` through the grouped weights. Finite
    /// for any `beta >= 0`.
    pub(crate) fn scaled_value(&self, i: usize, beta: f64) -> f64 {
        let top = self.distinct[0];
        self.grouped_row(i)
            .iter()
            .zip(&self.distinct)
            .map(|(a, l)| a * (beta * (l - top)).exp())
            .sum()
    }

    /// A decomposition given directly by its eigenspaces and grouped weights.
    #[cfg(test)]
    pub(crate) fn from_grouped(distinct: Vec<f64>, rows: Vec<Vec<f64>>) -> Self {
        SpectralDecomposition {
            n: rows.len(),
            eigenvalues: distinct.clone(),
            vectors: Vec::new(),
            weights: Vec::new(),
            multiplicities: vec![1; distinct.len()],
            distinct,
            grouped: rows.concat(),
        }
    }

    /// `(f_i - f_j)(beta) / exp(beta * lambda_max)`.
    pub(crate) fn scaled_difference(&self, i: usize, j: usize, beta: f64) -> f64 {
        let top = self.distinct[0];
        self.grouped_row(i)
            .iter()
            .zip(self.grouped_row(j))
            .zip(&self.distinct)
            .map(|((a, b), l)| (a - b) * (beta * (l - top)).exp())
            .sum()
    }

    /// `f_i(beta)` through the grouped weights.
    pub(crate) fn value(&self, i: usize, beta: f64) -> Result<f64> {
        let exps = self.exponentials(&self.distinct, beta)?;
        Ok(self.grouped_row(i).iter().zip(&exps).map(|(a, e)| a * e).sum())
    }

    /// `f_i(beta) - f_j(beta)`.
    pub(crate) fn difference(&self, i: usize, j: usize, beta: f64) -> Result<f64> {
        let exps = self.exponentials(&self.distinct, beta)?;
        Ok(self
            .grouped_row(i)
            .iter()
            .zip(self.grouped_row(j))
            .zip(&exps)
            .map(|((a, b), e)| (a - b) * e)
            .sum())
    }
}

/// `[exp(beta A)]_{ii}` for every vertex, plus the trace.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CentralityDiagonal {
    pub beta: f64,
    pub values: Vec<f64>,
    pub trace: f64,
}

impl CentralityDiagonal {
    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// `(max f - min f) / mean f`.
    pub fn relative_spread(&self) -> f64 {
        relative_spread(&self.values)
    }
}

pub(crate) fn relative_spread(values: &[f64]) -> f64 {
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    (hi - lo) / mean
}

pub fn eigendecompose(g: &Graph) -> Result<SpectralDecomposition> {
    eigendecompose_with_tol(g, DEFAULT_CLUSTER_TOL)
}

pub fn eigendecompose_with_tol(g: &Graph, cluster_tol: f64) -> Result<SpectralDecomposition> {
    let n = g.vertex_count();
    let (values, vectors) = jacobi_eigen(g.adjacency(), n)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| values[k]).collect();
    let mut sorted = vec![0.0; n * n];
    for i in 0..n {
        for (dst, &src) in order.iter().enumerate() {
            sorted[i * n + dst] = vectors[i * n + src];
        }
    }
    let weights: Vec<f64> = sorted.iter().map(|u| u * u).collect();

    // clusters of consecutive eigenvalues within the gap tolerance
    let mut bounds = vec![0];
    for k in 1..n {
        if eigenvalues[k - 1] - eigenvalues[k] > cluster_tol {
            bounds.push(k);
        }
    }
    bounds.push(n);
    let clusters: Vec<(usize, usize)> = bounds.windows(2).map(|w| (w[0], w[1])).collect();
    let distinct: Vec<f64> = clusters
        .iter()
        .map(|&(s, e)| eigenvalues[s..e].iter().sum::<f64>() / (e - s) as f64)
        .collect();
    let multiplicities = clusters.iter().map(|&(s, e)| e - s).collect();
    let mut grouped = Vec::with_capacity(n * clusters.len());
    for i in 0..n {
        let row = &weights[i * n..(i + 1) * n];
        grouped.extend(clusters.iter().map(|&(s, e)| row[s..e].iter().sum::<f64>()));
    }

    Ok(SpectralDecomposition {
        n,
        eigenvalues,
        vectors: sorted,
        weights,
        distinct,
        multiplicities,
        grouped,
    })
}

/// Cyclic Jacobi rotations on a dense symmetric matrix. Returns unsorted
/// eigenvalues and the row-major matrix whose columns are the eigenvectors.
fn jacobi_eigen(mut a: Vec<f64>, n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let scale = a.iter().map(|x| x * x).sum::<f64>().sqrt().max(1.0);
    let target = f64::EPSILON * scale;

    let off_norm = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                s += a[p * n + q] * a[p * n + q];
            }
        }
        (2.0 * s).sqrt()
    };

    let mut sweeps = 0;
    loop {
        let off = off_norm(&a);
        if off <= target {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[r * n + p];
                    let arq = a[r * n + q];
                    let new_rp = c * arp - s * arq;
                    let new_rq = s * arp + c * arq;
                    a[r * n + p] = new_rp;
                    a[p * n + r] = new_rp;
                    a[r * n + q] = new_rq;
                    a[q * n + r] = new_rq;
                }
                for r in 0..n {
                    let vrp = v[r * n + p];
                    let vrq = v[r * n + q];
                    v[r * n + p] = c * vrp - s * vrq;
                    v[r * n + q] = s * vrp + c * vrq;
                }
            }
        }
    }
    let values = (0..n).map(|i| a[i * n + i]).collect();
    Ok((values, v))
}

/// `f_i(beta) = sum_k u_{k,i}^2 exp(beta lambda_k)`.
pub fn centrality_diagonal(d: &SpectralDecomposition, beta: f64) -> Result<CentralityDiagonal> {
    let exps = d.exponentials(&d.eigenvalues, beta)?;
    let values = (0..d.n)
        .map(|i| d.weight_row(i).iter().zip(&exps).map(|(w, e)| w * e).sum())
        .collect();
    Ok(CentralityDiagonal {
        beta,
        values,
        trace: exps.iter().sum(),
    })
}

/// Smallest number of Taylor terms whose tail bound `x^T / T!` (with
/// `x = |beta| * ||A||_1`) is below `1e-12`.
pub fn taylor_terms_for(g: &Graph, beta: f64) -> usize {
    let x = beta.abs() * g.max_degree() as f64;
    let mut terms = 1;
    while tail_bound(x, terms) >= 1e-12 {
        terms += 1;
    }
    terms
}

/// `x^T / T!`; the Taylor tail `sum_{l >= T} x^l / l!` is at most this times `e^x`.
fn tail_bound(x: f64, terms: usize) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let t = terms as f64;
    let log_fact: f64 = (1..=terms).map(|k| (k as f64).ln()).sum();
    (t * x.ln() - log_fact).exp()
}

/// Partial sums of `sum_l beta^l [A^l]_{ii} / l!` from exact walk counts.
///
/// Independent of the eigensolver; `terms` must push the relative tail
/// bound below `1e-12`.
pub fn taylor_diagonal_oracle(g: &Graph, beta: f64, terms: usize) -> Result<CentralityDiagonal> {
    let x = beta.abs() * g.max_degree() as f64;
    let bound = tail_bound(x, terms);
    if terms == 0 || bound >= 1e-12 {
        return Err(Error::InsufficientTerms {
            beta,
            terms,
            bound,
            needed: taylor_terms_for(g, beta),
        });
    }
    if x > EXP_LIMIT {
        return Err(Error::Overflow {
            beta,
            exponent: x,
            limit: EXP_LIMIT,
        });
    }
    let table = closed_walk_table(g, terms - 1);
    let mut coefficients = Vec::with_capacity(terms);
    let mut c = 1.0;
    for l in 0..terms {
        if l > 0 {
            c *= beta / l as f64;
        }
        coefficients.push(c);
    }
    let values: Vec<f64> = (0..g.vertex_count())
        .map(|i| {
            table
                .profile(i)
                .iter()
                .zip(&coefficients)
                .map(|(count, c)| big_to_f64(count) * c)
                .sum()
        })
        .collect();
    let trace = values.iter().sum();
    Ok(CentralityDiagonal {
        beta,
        values,
        trace,
    })
}

fn big_to_f64(v: &num_bigint::BigUint) -> f64 {
    num_traits::ToPrimitive::to_f64(v).unwrap_or(f64::INFINITY)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::construct_hm;
    use approx::assert_relative_eq;

    #[test]
    fn k2_spectrum_and_weights() {
        let d = eigendecompose(&Graph::complete(2).unwrap()).unwrap();
        assert_relative_eq!(d.eigenvalues()[0], 1.0, epsilon = 1e-14);
        assert_relative_eq!(d.eigenvalues()[1], -1.0, epsilon = 1e-14);
        for i in 0..2 {
            for k in 0..2 {
                assert_relative_eq!(d.weight(i, k), 0.5, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn p3_spectrum() {
        // characteristic polynomial l^3 - 2l
        let d = eigendecompose(&Graph::path(3).unwrap()).unwrap();
        let s = 2f64.sqrt();
        for (got, want) in d.eigenvalues().iter().zip([s, 0.0, -s]) {
            assert!((got - want).abs() < 1e-13, "{got} vs {want}");
        }
    }

    #[test]
    fn h4_distinct_spectrum() {
        let g = construct_hm(4).unwrap();
        let d = eigendecompose(&g).unwrap();
        let r29 = 29f64.sqrt();
        let r21 = 21f64.sqrt();
        let expected = [
            ((3.0 + r29) / 2.0, 1),
            (3.0, 4),
            ((-1.0 + r21) / 2.0, 3),
            (-1.0, 12),
            ((3.0 - r29) / 2.0, 1),
            ((-1.0 - r21) / 2.0, 3),
        ];
        assert_eq!(d.distinct_eigenvalues().len(), 6);
        for (j, (value, mult)) in expected.iter().enumerate() {
            assert!((d.distinct_eigenvalues()[j] - value).abs() < 1e-9);
            assert_eq!(d.multiplicities()[j], *mult);
        }
        assert!(d.max_residual(&g) < 1e-10 * d.max_eigenvalue());
    }

    #[test]
    fn h4_hub_has_larger_perron_weight() {
        let d = eigendecompose(&construct_hm(4).unwrap()).unwrap();
        assert!(d.weight(0, 0) > d.weight(4, 0));
    }

    #[test]
    fn h4_values_at_one() {
        let d = eigendecompose(&construct_hm(4).unwrap()).unwrap();
        let f = centrality_diagonal(&d, 1.0).unwrap();
        assert!((f.values[0] - 6.481).abs() < 5e-3);
        assert!((f.values[4] - 7.175).abs() < 5e-3);
    }

    #[test]
    fn beta_zero_is_identity() {
        let d = eigendecompose(&Graph::petersen()).unwrap();
        let f = centrality_diagonal(&d, 0.0).unwrap();
        for v in &f.values {
            assert_relative_eq!(*v, 1.0, epsilon = 1e-12);
        }
        assert_relative_eq!(f.trace, 10.0, epsilon = 1e-12);
    }

    #[test]
    fn triangle_closed_form() {
        let e = std::f64::consts::E;
        let expected = (e * e + 2.0 / e) / 3.0;
        let g = Graph::complete(3).unwrap();
        let d = eigendecompose(&g).unwrap();
        let f = centrality_diagonal(&d, 1.0).unwrap();
        let oracle = taylor_diagonal_oracle(&g, 1.0, taylor_terms_for(&g, 1.0)).unwrap();
        for i in 0..3 {
            assert_relative_eq!(f.values[i], expected, max_relative = 1e-13);
            assert_relative_eq!(oracle.values[i], expected, max_relative = 1e-13);
        }
    }

    #[test]
    fn oracle_on_edgeless_graphs() {
        let k1 = Graph::new(1, []).unwrap();
        assert_eq!(taylor_diagonal_oracle(&k1, 3.0, 1).unwrap().values, vec![1.0]);
        let e3 = Graph::new(3, []).unwrap();
        assert_eq!(
            taylor_diagonal_oracle(&e3, 7.0, 1).unwrap().values,
            vec![1.0, 1.0, 1.0]
        );
    }

    #[test]
    fn oracle_matches_spectral_on_h4() {
        let g = construct_hm(4).unwrap();
        let d = eigendecompose(&g).unwrap();
        let f = centrality_diagonal(&d, 0.5).unwrap();
        let o = taylor_diagonal_oracle(&g, 0.5, taylor_terms_for(&g, 0.5)).unwrap();
        for i in 0..24 {
            assert!((f.values[i] - o.values[i]).abs() < 1e-8);
        }
    }

    #[test]
    fn oracle_rejects_too_few_terms() {
        let g = construct_hm(4).unwrap();
        match taylor_diagonal_oracle(&g, 1.0, 5) {
            Err(Error::InsufficientTerms { needed, bound, .. }) => {
                assert!(bound >= 1e-12);
                assert_eq!(needed, taylor_terms_for(&g, 1.0));
            }
            other => panic!("expected InsufficientTerms, got {other:?}"),
        }
    }

    #[test]
    fn overflow_is_reported() {
        let d = eigendecompose(&Graph::complete(5).unwrap()).unwrap();
        match centrality_diagonal(&d, 200.0) {
            Err(Error::Overflow { beta, exponent, .. }) => {
                assert_eq!(beta, 200.0);
                assert!((exponent - 800.0).abs() < 1e-9);
            }
            other => panic!("expected overflow, got {other:?}"),
        }
        assert!(centrality_diagonal(&d, 150.0).is_ok());
    }

    #[test]
    fn grouped_weights_reproduce_diagonal() {
        let g = construct_hm(3).unwrap();
        let d = eigendecompose(&g).unwrap();
        for beta in [0.1, 1.0, 2.5] {
            let f = centrality_diagonal(&d, beta).unwrap();
            for i in 0..g.vertex_count() {
                let via_groups: f64 = d
                    .grouped_row(i)
                    .iter()
                    .zip(d.distinct_eigenvalues())
                    .map(|(a, l)| a * (beta * l).exp())
                    .sum();
                assert_relative_eq!(via_groups, f.values[i], max_relative = 1e-9);
                let scaled = d.scaled_value(i, beta) * (beta * d.max_eigenvalue()).exp();
                assert_relative_eq!(scaled, f.values[i], max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn hm_has_six_distinct_eigenvalues() {
        for m in 2..=6 {
            let d = eigendecompose(&construct_hm(m).unwrap()).unwrap();
            assert_eq!(d.distinct_eigenvalues().len(), 6, "m = {m}");
        }
    }
}
