//! Exact closed-walk counts and the walk-regularity decision.
//!
//! Everything here is arbitrary-precision integer arithmetic; no floating
//! point enters the verdict.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::exec::{self, Parallelism};
use crate::graph::Graph;

/// `diag[i][l] = [A^l]_{ii}` for `l = 0..=max_len`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactWalkTable {
    max_len: usize,
    diag: Vec<Vec<BigUint>>,
}

impl ExactWalkTable {
    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn vertex_count(&self) -> usize {
        self.diag.len()
    }

    pub fn get(&self, vertex: usize, len: usize) -> &BigUint {
        &self.diag[vertex][len]
    }

    /// Closed-walk counts of every length at one vertex.
    pub fn profile(&self, vertex: usize) -> &[BigUint] {
        &self.diag[vertex]
    }

    /// `Tr A^len`.
    pub fn trace(&self, len: usize) -> BigUint {
        self.diag.iter().map(|row| &row[len]).sum()
    }
}

/// Exact diagonals of `A^0 ..= A^max_len`.
pub fn closed_walk_table(g: &Graph, max_len: usize) -> ExactWalkTable {
    closed_walk_table_with(g, max_len, Parallelism::default())
}

/// Row `i` of `A^(l+1)` is row `i` of `A^l` times `A`; rows evolve
/// independently, so each vertex is one task.
pub fn closed_walk_table_with(g: &Graph, max_len: usize, par: Parallelism) -> ExactWalkTable {
    let n = g.vertex_count();
    let diag = exec::map(par, n, |i| {
        let mut row = vec![BigUint::zero(); n];
        row[i] = BigUint::one();
        let mut next = vec![BigUint::zero(); n];
        let mut counts = Vec::with_capacity(max_len + 1);
        counts.push(BigUint::one());
        for _ in 0..max_len {
            for (j, slot) in next.iter_mut().enumerate() {
                slot.set_zero();
                for &k in g.neighbors(j) {
                    *slot += &row[k];
                }
            }
            std::mem::swap(&mut row, &mut next);
            counts.push(row[i].clone());
        }
        counts
    });
    ExactWalkTable { max_len, diag }
}

/// The first length at which two vertices disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub length: usize,
    pub first: usize,
    pub second: usize,
    #[serde(serialize_with = "decimal")]
    pub first_count: BigUint,
    #[serde(serialize_with = "decimal")]
    pub second_count: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WalkRegularityVerdict {
    pub is_walk_regular: bool,
    pub witness: Option<Witness>,
    pub classes: Vec<Vec<usize>>,
}

fn decimal<S: Serializer>(value: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&value.to_str_radix(10))
}

/// Longest walk length needed to decide walk-regularity: by Cayley-Hamilton
/// `A^n` is a fixed combination of `A^0..A^(n-1)`, so agreement on lengths
/// `0..n` propagates to every length.
pub fn decision_horizon(g: &Graph) -> usize {
    g.vertex_count().saturating_sub(1).max(1)
}

pub fn is_walk_regular(g: &Graph) -> WalkRegularityVerdict {
    verdict_from_table(&closed_walk_table(g, decision_horizon(g)))
}

pub fn verdict_from_table(table: &ExactWalkTable) -> WalkRegularityVerdict {
    let classes = classes_up_to(table, table.max_len());
    let witness = (0..=table.max_len()).find_map(|len| {
        let reference = table.get(0, len);
        (1..table.vertex_count())
            .find(|&j| table.get(j, len) != reference)
            .map(|j| Witness {
                length: len,
                first: 0,
                second: j,
                first_count: reference.clone(),
                second_count: table.get(j, len).clone(),
            })
    });
    WalkRegularityVerdict {
        is_walk_regular: witness.is_none(),
        witness,
        classes,
    }
}

/// Partition of the vertices by identical closed-walk profile over all
/// lengths that can distinguish them. Vertices in one class have identical
/// subgraph centrality at every temperature.
pub fn vertex_classes(g: &Graph) -> Vec<Vec<usize>> {
    classes_up_to(&closed_walk_table(g, decision_horizon(g)), decision_horizon(g))
}

/// Partition by the profile prefix `0..=len`, classes ordered by their
/// smallest vertex.
pub fn classes_up_to(table: &ExactWalkTable, len: usize) -> Vec<Vec<usize>> {
    let mut index: HashMap<&[BigUint], usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for v in 0..table.vertex_count() {
        let key = &table.profile(v)[..=len];
        let next = classes.len();
        let c = *index.entry(key).or_insert(next);
        if c == next {
            classes.push(Vec::new());
        }
        classes[c].push(v);
    }
    classes
}
