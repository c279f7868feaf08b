//! Undirected graphs over component indices `0..p`.

use std::collections::BTreeSet;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An undirected simple graph on `p` nodes.
///
/// Edges are stored once, as `(min, max)`, and iterate in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    p: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn empty(p: usize) -> Self {
        Graph {
            p,
            edges: BTreeSet::new(),
        }
    }

    pub fn from_edges<I>(p: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut graph = Graph::empty(p);
        for (a, b) in edges {
            graph.add_edge(a, b)?;
        }
        Ok(graph)
    }

    /// Inserts `(a, b)`; returns whether the edge was new.
    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<bool> {
        if a == b {
            return Err(Error::InvalidInput(format!("self-loop at node {a}")));
        }
        if a >= self.p || b >= self.p {
            return Err(Error::InvalidInput(format!(
                "edge ({a}, {b}) out of range for p = {}",
                self.p
            )));
        }
        Ok(self.edges.insert((a.min(b), a.max(b))))
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn neighbors(&self, r: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == r {
                    Some(b)
                } else if b == r {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn degree(&self, r: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == r || b == r).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.p];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Relabels nodes: node `r` becomes `perm[r]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.p {
            return Err(Error::DimensionMismatch {
                expected: self.p,
                found: perm.len(),
            });
        }
        Graph::from_edges(self.p, self.edges().map(|(a, b)| (perm[a], perm[b])))
    }

    /// Size of the symmetric difference of the two edge sets.
    pub fn symmetric_difference(&self, other: &Graph) -> usize {
        self.edges.symmetric_difference(&other.edges).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<Graph> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Exact equality of two graphs on the same node set, plus `|E Δ E'|`.
pub fn graph_equal(a: &Graph, b: &Graph) -> Result<(bool, usize)> {
    if a.p != b.p {
        return Err(Error::DimensionMismatch {
            expected: a.p,
            found: b.p,
        });
    }
    let diff = a.symmetric_difference(b);
    Ok((diff == 0, diff))
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    p: usize,
    edges: Vec<[usize; 2]>,
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        GraphRepr {
            p: self.p,
            edges: self.edges().map(|(a, b)| [a, b]).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = GraphRepr::deserialize(deserializer)?;
        Graph::from_edges(repr.p, repr.edges.into_iter().map(|[a, b]| (a, b)))
            .map_err(serde::de::Error::custom)
    }
}
