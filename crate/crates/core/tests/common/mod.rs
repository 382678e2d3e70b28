#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use walk_entropy::Graph;

pub const CORPUS_SEED: u64 = 0x005e_ed0f_2024;
pub const CORPUS_SIZE: usize = 200;

/// Random connected graph: a random recursive tree plus extra edges with
/// probability `p`.
pub fn random_connected(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

/// 200 random connected graphs with 2 to 12 vertices.
pub fn random_corpus() -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    (0..CORPUS_SIZE)
        .map(|_| {
            let n = rng.gen_range(2..=12);
            let p = rng.gen_range(0.05..0.7);
            random_connected(&mut rng, n, p)
        })
        .collect()
}

pub fn cube() -> Graph {
    let edges = (0..8usize).flat_map(|v| (0..3).map(move |b| (v, v ^ (1 << b))));
    Graph::new(8, edges.filter(|(u, v)| u < v)).unwrap()
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    Graph::new(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)))).unwrap()
}

/// Walk-regular graphs added so flatness checks are never vacuous.
pub fn walk_regular_family() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in 1..=8 {
        out.push((format!("K{n}"), Graph::complete(n).unwrap()));
    }
    for n in 3..=10 {
        out.push((format!("C{n}"), Graph::cycle(n).unwrap()));
    }
    out.push(("Petersen".into(), Graph::petersen()));
    out.push(("Q3".into(), cube()));
    out.push(("K3,3".into(), complete_bipartite(3, 3)));
    out
}

/// Random graphs followed by the walk-regular family.
pub fn full_corpus() -> Vec<Graph> {
    let mut corpus = random_corpus();
    corpus.extend(walk_regular_family().into_iter().map(|(_, g)| g));
    corpus
}

/// `|a - b| <= tol * max(1, |b|)`.
pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}
