// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Offline edge colouring of a fully materialised graph.
//!
//! [`color_vizing`] is the `Δ+1` subroutine used on every chunk of the
//! random-order colourer; [`color_greedy`] is the `2Δ-1` baseline and
//! [`chromatic_index_bruteforce`] the exact oracle for tiny graphs.

mod brute;
mod greedy;
mod slots;
mod vizing;

use std::collections::HashMap;

pub use brute::{chromatic_index_bruteforce, BRUTE_FORCE_EDGE_LIMIT};
pub use greedy::color_greedy;
pub use vizing::color_vizing;

use crate::edge::{Edge, VertexId};
use crate::error::{Error, Result};

/// A simple graph on compact local vertex ids `0..vertex_count`.
///
/// Edge slots keep the order of the input edge list, and a [`LocalColouring`]
/// is indexed by the same slots.
#[derive(Debug, Clone)]
pub struct AdjacencyGraph {
    /// `local -> global` vertex ids, in first-appearance order.
    vertices: Vec<VertexId>,
    /// Endpoints per edge slot, as local ids.
    ends: Vec<(u32, u32)>,
    /// `(neighbour, edge slot)` per local vertex.
    adjacency: Vec<Vec<(u32, u32)>>,
    max_degree: u32,
}

impl AdjacencyGraph {
    /// Builds the graph induced by `edges`. Parallel edges are rejected.
    pub fn from_edges(edges: &[Edge]) -> Result<Self> {
        let mut local: HashMap<VertexId, u32> = HashMap::new();
        let mut vertices = Vec::new();
        let mut ends = Vec::with_capacity(edges.len());
        let mut seen = std::collections::HashSet::with_capacity(edges.len());
        for &e in edges {
            if e.u == e.v {
                return Err(Error::validation(format!("self-loop at vertex {}", e.u)));
            }
            if !seen.insert(e.canonical()) {
                return Err(Error::validation(format!("parallel edge {e}")));
            }
            let mut id = |v: VertexId| {
                *local.entry(v).or_insert_with(|| {
                    vertices.push(v);
                    (vertices.len() - 1) as u32
                })
            };
            let (a, b) = (id(e.u), id(e.v));
            ends.push((a, b));
        }
        let mut adjacency = vec![Vec::new(); vertices.len()];
        for (slot, &(a, b)) in ends.iter().enumerate() {
            adjacency[a as usize].push((b, slot as u32));
            adjacency[b as usize].push((a, slot as u32));
        }
        let max_degree = adjacency.iter().map(|a| a.len() as u32).max().unwrap_or(0);
        Ok(AdjacencyGraph {
            vertices,
            ends,
            adjacency,
            max_degree,
        })
    }

    /// Graph on `0..n` given as plain index pairs.
    pub fn from_pairs(pairs: &[(u32, u32)]) -> Result<Self> {
        let edges = pairs
            .iter()
            .map(|&(u, v)| Edge::new(u, v))
            .collect::<Result<Vec<_>>>()?;
        Self::from_edges(&edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn degree(&self, local: u32) -> usize {
        self.adjacency[local as usize].len()
    }

    pub fn global(&self, local: u32) -> VertexId {
        self.vertices[local as usize]
    }

    /// Local endpoints of edge `slot`.
    pub fn ends(&self, slot: usize) -> (u32, u32) {
        self.ends[slot]
    }

    pub fn neighbours(&self, local: u32) -> &[(u32, u32)] {
        &self.adjacency[local as usize]
    }

    /// Original edge for `slot`, in global ids.
    pub fn edge(&self, slot: usize) -> Edge {
        let (a, b) = self.ends[slot];
        Edge {
            u: self.global(a),
            v: self.global(b),
        }
    }
}

/// A colour per edge slot of an [`AdjacencyGraph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalColouring {
    pub colours: Vec<u32>,
}

impl LocalColouring {
    /// Number of distinct colours in use.
    pub fn colour_count(&self) -> usize {
        let mut c = self.colours.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    }

    /// One more than the largest colour, i.e. the palette width actually needed.
    pub fn span(&self) -> u32 {
        self.colours.iter().map(|&c| c + 1).max().unwrap_or(0)
    }

    /// True when no two edges sharing a vertex have the same colour.
    pub fn is_proper(&self, g: &AdjacencyGraph) -> bool {
        if self.colours.len() != g.edge_count() {
            return false;
        }
        (0..g.vertex_count() as u32).all(|v| {
            let mut seen: Vec<u32> = g
                .neighbours(v)
                .iter()
                .map(|&(_, slot)| self.colours[slot as usize])
                .collect();
            seen.sort_unstable();
            seen.windows(2).all(|w| w[0] != w[1])
        })
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::AdjacencyGraph;

    pub fn triangle() -> AdjacencyGraph {
        AdjacencyGraph::from_pairs(&[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    pub fn k4() -> AdjacencyGraph {
        complete(4)
    }

    pub fn complete(n: u32) -> AdjacencyGraph {
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                pairs.push((u, v));
            }
        }
        AdjacencyGraph::from_pairs(&pairs).unwrap()
    }

    pub fn star(t: u32) -> AdjacencyGraph {
        let pairs: Vec<_> = (1..=t).map(|leaf| (0, leaf)).collect();
        AdjacencyGraph::from_pairs(&pairs).unwrap()
    }

    pub fn petersen() -> AdjacencyGraph {
        let mut pairs = Vec::new();
        for i in 0..5u32 {
            pairs.push((i, (i + 1) % 5));
            pairs.push((i, i + 5));
            pairs.push((i + 5, (i + 2) % 5 + 5));
        }
        AdjacencyGraph::from_pairs(&pairs).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn compacts_vertices_in_first_appearance_order() {
        let g = AdjacencyGraph::from_edges(&[Edge::new(10, 3).unwrap(), Edge::new(3, 7).unwrap()])
            .unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.global(0), VertexId(10));
        assert_eq!(g.max_degree(), 2);
        assert_eq!(g.edge(1), Edge::new(3, 7).unwrap());
    }

    #[test]
    fn rejects_parallel_edges() {
        let r = AdjacencyGraph::from_pairs(&[(0, 1), (1, 0)]);
        assert!(matches!(r, Err(Error::Validation(_))));
    }

    #[test]
    fn fixture_degrees() {
        assert_eq!(petersen().edge_count(), 15);
        assert_eq!(petersen().max_degree(), 3);
        assert_eq!(k4().max_degree(), 3);
        assert_eq!(star(5).max_degree(), 5);
        assert_eq!(triangle().max_degree(), 2);
    }

    #[test]
    fn properness_check() {
        let g = triangle();
        assert!(LocalColouring {
            colours: vec![0, 1, 2]
        }
        .is_proper(&g));
        assert!(!LocalColouring {
            colours: vec![0, 0, 1]
        }
        .is_proper(&g));
        assert!(!LocalColouring {
            colours: vec![0, 1]
        }
        .is_proper(&g));
    }
}
