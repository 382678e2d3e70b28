//! Simple undirected graphs, the edge-list text format and the `H_m` family.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};

/// An undirected simple graph on vertices `0..n`.
///
/// Edges are stored normalized (`u < v`) and sorted, so two graphs with the
/// same vertex count and edge set compare equal regardless of input order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, identifying `(u, v)` with `(v, u)` and dropping duplicates.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v || u >= n || v >= n {
                return Err(Error::InvalidEdge { u, v, n });
            }
            set.insert((u.min(v), u.max(v)));
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut neighbors = vec![Vec::new(); n];
        for &(u, v) in &edges {
            neighbors[u].push(v);
            neighbors[v].push(u);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges,
            neighbors,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sorted edges with `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.neighbors.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.neighbors[u].binary_search(&v).is_ok()
    }

    /// Dense row-major 0/1 adjacency matrix.
    pub fn adjacency(&self) -> Vec<f64> {
        let n = self.n;
        let mut a = vec![0.0; n * n];
        for &(u, v) in &self.edges {
            a[u * n + v] = 1.0;
            a[v * n + u] = 1.0;
        }
        a
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.neighbors[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Serializes to the edge-list format: an `n <count>` header followed by
    /// one sorted `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "n {}", self.n);
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    // Small named graphs used by tests, benches and the CLI docs.

    pub fn complete(n: usize) -> Result<Self> {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!("cycle needs n >= 3, got {n}")));
        }
        Graph::new(n, (0..n).map(|u| (u, (u + 1) % n)))
    }

    pub fn path(n: usize) -> Result<Self> {
        Graph::new(n, (1..n).map(|u| (u - 1, u)))
    }

    /// `K_{1,leaves}` with the center at vertex 0.
    pub fn star(leaves: usize) -> Result<Self> {
        Graph::new(leaves + 1, (1..=leaves).map(|v| (0, v)))
    }

    pub fn petersen() -> Self {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::new(10, outer.chain(spokes).chain(inner)).expect("static edge set")
    }
}

/// Parses the edge-list text format.
///
/// Blank lines and lines starting with `#` are skipped. The first remaining
/// line may be `n <count>` to declare the vertex count (and with it any
/// isolated vertices); otherwise `n` is one more than the largest vertex id.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    let mut max_id: Option<usize> = None;
    let mut first = true;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::MalformedLine {
                line,
                found: tokens.len(),
            });
        }
        if first && tokens[0] == "n" {
            first = false;
            let count = parse_id(tokens[1], line)?;
            if count == 0 {
                return Err(Error::EmptyGraph);
            }
            declared = Some(count);
            continue;
        }
        first = false;
        let u = parse_id(tokens[0], line)?;
        let v = parse_id(tokens[1], line)?;
        if u == v {
            return Err(Error::SelfLoop { line, vertex: u });
        }
        if let Some(n) = declared {
            for vertex in [u, v] {
                if vertex >= n {
                    return Err(Error::VertexOutOfRange { line, vertex, n });
                }
            }
        }
        max_id = Some(max_id.unwrap_or(0).max(u).max(v));
        edges.push((u, v));
    }

    let n = match (declared, max_id) {
        (Some(n), _) => n,
        (None, Some(m)) => m + 1,
        (None, None) => return Err(Error::EmptyGraph),
    };
    Graph::new(n, edges)
}

fn parse_id(token: &str, line: usize) -> Result<usize> {
    token.parse::<usize>().map_err(|_| Error::InvalidToken {
        line,
        token: token.to_string(),
    })
}

/// Builds `H_m`: `m` hub vertices and `m + 1` disjoint cliques `K_m`, with hub
/// `i` joined to the `i`-th vertex of every clique.
///
/// Hubs are vertices `0..m`; clique `c` occupies `m + c*m .. m + (c+1)*m`.
pub fn construct_hm(m: usize) -> Result<Graph> {
    if m == 0 {
        return Err(Error::InvalidHmOrder);
    }
    let n = m * m + 2 * m;
    let mut edges = Vec::with_capacity(m * (m + 1) * (m + 1) / 2 + m * (m + 1));
    for c in 0..=m {
        let base = m + c * m;
        for i in 0..m {
            edges.push((i, base + i));
            for j in i + 1..m {
                edges.push((base + i, base + j));
            }
        }
    }
    Graph::new(n, edges)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeSummary {
    pub degrees: Vec<usize>,
    /// degree -> number of vertices with that degree
    pub histogram: BTreeMap<usize, usize>,
}

impl DegreeSummary {
    pub fn is_regular(&self) -> bool {
        self.histogram.len() <= 1
    }
}

pub fn degree_summary(g: &Graph) -> DegreeSummary {
    let degrees: Vec<usize> = (0..g.vertex_count()).map(|v| g.degree(v)).collect();
    let mut histogram = BTreeMap::new();
    for &d in &degrees {
        *histogram.entry(d).or_insert(0) += 1;
    }
    DegreeSummary { degrees, histogram }
}
