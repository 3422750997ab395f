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

//! Full-memory checks over transcripts.
//!
//! Nothing here is metered: the verifier is the test oracle, not a
//! streaming algorithm.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::colour::{ColourId, PaletteKey};
use crate::edge::{Edge, VertexId};
use crate::error::{Error, Result};
use crate::stream::EdgeStream;
use crate::transcript::{sorted_canonical, Transcript};

/// Two incident edges announced with the same colour.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Conflict {
    pub first: Edge,
    pub second: Edge,
    pub vertex: VertexId,
    pub colour: ColourId,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PaletteStats {
    pub edges: usize,
    pub distinct_colours: usize,
    pub max_degree: u32,
    /// Largest second coordinate seen (bit palettes only).
    pub max_left_counter: Option<u32>,
    /// Largest third coordinate seen (bit palettes only).
    pub max_right_counter: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub proper: bool,
    pub conflicts: Vec<Conflict>,
    pub edges: usize,
    pub distinct_colours: usize,
    pub overflow_colours: usize,
    pub duplicate_edges: usize,
    pub max_degree: u32,
    pub per_palette: BTreeMap<PaletteKey, PaletteStats>,
}

impl VerificationReport {
    /// Distinct `(i, j, k)` colours.
    pub fn triple_colours(&self) -> usize {
        self.per_palette
            .iter()
            .filter(|(k, _)| matches!(k, PaletteKey::Bit(_)))
            .map(|(_, s)| s.distinct_colours)
            .sum()
    }

    /// Largest degree of any single palette's subgraph (chunk or `B_i`).
    pub fn max_palette_degree(&self) -> u32 {
        self.per_palette
            .iter()
            .filter(|(k, _)| !matches!(k, PaletteKey::Overflow))
            .map(|(_, s)| s.max_degree)
            .max()
            .unwrap_or(0)
    }

    pub fn chunk_count(&self) -> usize {
        self.per_palette
            .keys()
            .filter(|k| matches!(k, PaletteKey::Chunk(_)))
            .count()
    }
}

/// Checks every pair of incident edges. Each edge that repeats a colour
/// already present at one of its endpoints yields one conflict against the
/// first edge that used that colour there.
pub fn verify(t: &Transcript) -> VerificationReport {
    let mut first_use: HashMap<(VertexId, ColourId), Edge> = HashMap::with_capacity(2 * t.len());
    let mut conflicts = Vec::new();
    for a in &t.records {
        for x in a.edge.endpoints() {
            match first_use.get(&(x, a.colour)) {
                Some(&first) => conflicts.push(Conflict {
                    first,
                    second: a.edge,
                    vertex: x,
                    colour: a.colour,
                }),
                None => {
                    first_use.insert((x, a.colour), a.edge);
                }
            }
        }
    }

    let mut palette_colours: HashMap<PaletteKey, HashSet<ColourId>> = HashMap::new();
    let mut palette_degrees: HashMap<PaletteKey, HashMap<VertexId, u32>> = HashMap::new();
    let mut per_palette: BTreeMap<PaletteKey, PaletteStats> = BTreeMap::new();
    let mut degree: HashMap<VertexId, u32> = HashMap::new();
    let mut seen_edges = HashSet::with_capacity(t.len());
    let mut duplicate_edges = 0;
    for a in &t.records {
        let key = a.colour.palette();
        palette_colours.entry(key).or_default().insert(a.colour);
        let degrees = palette_degrees.entry(key).or_default();
        let stats = per_palette.entry(key).or_default();
        stats.edges += 1;
        for x in a.edge.endpoints() {
            let d = degrees.entry(x).or_default();
            *d += 1;
            stats.max_degree = stats.max_degree.max(*d);
            *degree.entry(x).or_default() += 1;
        }
        if let ColourId::Triple { j, k, .. } = a.colour {
            stats.max_left_counter = Some(stats.max_left_counter.map_or(j, |m| m.max(j)));
            stats.max_right_counter = Some(stats.max_right_counter.map_or(k, |m| m.max(k)));
        }
        if !seen_edges.insert(a.edge.canonical()) {
            duplicate_edges += 1;
        }
    }
    for (key, colours) in &palette_colours {
        per_palette.get_mut(key).unwrap().distinct_colours = colours.len();
    }

    VerificationReport {
        proper: conflicts.is_empty(),
        conflicts,
        edges: t.len(),
        distinct_colours: palette_colours.values().map(HashSet::len).sum(),
        overflow_colours: palette_colours
            .get(&PaletteKey::Overflow)
            .map_or(0, HashSet::len),
        duplicate_edges,
        max_degree: degree.values().copied().max().unwrap_or(0),
        per_palette,
    }
}

/// Fails unless the transcript announces exactly the edges of `graph`
/// (as a multiset, up to endpoint order).
pub fn check_complete(t: &Transcript, graph: &EdgeStream) -> Result<()> {
    if t.header.n != graph.n() {
        return Err(Error::validation(format!(
            "transcript has n = {}, graph has n = {}",
            t.header.n,
            graph.n()
        )));
    }
    let announced = t.edge_multiset();
    let expected = sorted_canonical(graph.edges.iter().copied());
    if announced != expected {
        return Err(Error::validation(format!(
            "transcript announces {} edges, graph has {}; multisets differ",
            announced.len(),
            expected.len()
        )));
    }
    Ok(())
}

/// Two-colours the subgraph of one palette by parity union-find, without
/// looking at any signatures.
pub fn palette_is_bipartite(t: &Transcript, key: PaletteKey) -> bool {
    let mut index: HashMap<VertexId, usize> = HashMap::new();
    let mut parent: Vec<usize> = Vec::new();
    let mut parity: Vec<bool> = Vec::new();

    // Returns the root of x and x's parity relative to it, compressing the path.
    fn find(parent: &mut [usize], parity: &mut [bool], x: usize) -> (usize, bool) {
        let mut path = Vec::new();
        let mut at = x;
        while parent[at] != at {
            path.push(at);
            at = parent[at];
        }
        let root = at;
        let mut acc = false;
        for &v in path.iter().rev() {
            acc ^= parity[v];
            parity[v] = acc;
            parent[v] = root;
        }
        (root, if x == root { false } else { parity[x] })
    }

    for a in t.records.iter().filter(|a| a.colour.palette() == key) {
        let mut id = |v: VertexId| {
            *index.entry(v).or_insert_with(|| {
                parent.push(parent.len());
                parity.push(false);
                parent.len() - 1
            })
        };
        let (x, y) = (id(a.edge.u), id(a.edge.v));
        let (rx, px) = find(&mut parent, &mut parity, x);
        let (ry, py) = find(&mut parent, &mut parity, y);
        if rx == ry {
            if px == py {
                return false;
            }
        } else {
            parent[rx] = ry;
            parity[rx] = !(px ^ py);
        }
    }
    true
}

/// Degree of one vertex in one chunk, next to what an evenly spread
/// stream would give it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChunkDegree {
    pub chunk: u32,
    pub vertex: VertexId,
    pub degree: u32,
    /// `d(u) · |G_i| / m`, which is `d(u) / N` when every chunk is full.
    pub expected: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChunkConcentration {
    pub rows: Vec<ChunkDegree>,
    pub chunks: usize,
    pub max_degree: u32,
    /// Per chunk: `max_u d_i(u) / (Δ · |G_i| / m)`.
    pub chunk_max_ratio: Vec<f64>,
    /// `max_{u,i} d_i(u) / expected(u, i)`.
    pub max_ratio: f64,
}

impl ChunkConcentration {
    pub fn mean_chunk_max_ratio(&self) -> f64 {
        if self.chunk_max_ratio.is_empty() {
            return 0.0;
        }
        self.chunk_max_ratio.iter().sum::<f64>() / self.chunk_max_ratio.len() as f64
    }
}

/// Per-chunk degrees of a chunked-colourer transcript.
pub fn chunk_concentration(t: &Transcript) -> Result<ChunkConcentration> {
    let mut chunk_edges: BTreeMap<u32, Vec<Edge>> = BTreeMap::new();
    for a in &t.records {
        match a.colour {
            ColourId::Chunk { chunk, .. } => chunk_edges.entry(chunk).or_default().push(a.edge),
            other => {
                return Err(Error::validation(format!(
                    "colour {other} has no chunk structure; not a chunked transcript"
                )))
            }
        }
    }
    let m = t.len() as f64;
    let mut degree: HashMap<VertexId, u32> = HashMap::new();
    for e in t.edges() {
        for x in e.endpoints() {
            *degree.entry(x).or_default() += 1;
        }
    }
    let max_degree = degree.values().copied().max().unwrap_or(0);

    let mut rows = Vec::new();
    let mut chunk_max_ratio = Vec::with_capacity(chunk_edges.len());
    let mut max_ratio = 0.0f64;
    for (&chunk, edges) in &chunk_edges {
        let share = edges.len() as f64 / m;
        let mut local: BTreeMap<VertexId, u32> = BTreeMap::new();
        for e in edges {
            for x in e.endpoints() {
                *local.entry(x).or_default() += 1;
            }
        }
        let mut chunk_max = 0;
        for (&vertex, &d) in &local {
            let expected = degree[&vertex] as f64 * share;
            max_ratio = max_ratio.max(d as f64 / expected);
            chunk_max = chunk_max.max(d);
            rows.push(ChunkDegree {
                chunk,
                vertex,
                degree: d,
                expected,
            });
        }
        chunk_max_ratio.push(chunk_max as f64 / (max_degree as f64 * share));
    }
    Ok(ChunkConcentration {
        rows,
        chunks: chunk_edges.len(),
        max_degree,
        chunk_max_ratio,
        max_ratio,
    })
}

/// Which construction produced a transcript, for [`colour_budget`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BudgetParams {
    /// Chunked colouring with a `Δ+1` subroutine.
    Chunked,
    /// Bit-signature colouring with `s` classes.
    Bipartite { s: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BudgetOutcome {
    pub pass: bool,
    /// Colours the construction is allowed to use on this run.
    pub bound: u64,
    /// Colours counted against `bound`.
    pub colours: u64,
    /// `colours / Δ` (chunked) or `colours / (Δ²/s)` (bipartite).
    pub ratio: f64,
}

/// Checks the exact per-run colour bounds.
///
/// Chunked: `colours ≤ Σ_i (Δ(G_i) + 1)`. Bipartite: the number of triple
/// colours is at most `Σ_i L_i·R_i` (counter ranges reached in `B_i`) and
/// at most `s · (max_i Δ(B_i))²`, and all colours at most that plus the
/// overflow count.
pub fn colour_budget(report: &VerificationReport, params: BudgetParams) -> Result<BudgetOutcome> {
    let delta = report.max_degree as f64;
    match params {
        BudgetParams::Chunked => {
            if let Some(k) = report
                .per_palette
                .keys()
                .find(|k| !matches!(k, PaletteKey::Chunk(_)))
            {
                return Err(Error::validation(format!(
                    "palette {k:?} in a chunked transcript"
                )));
            }
            let bound: u64 = report
                .per_palette
                .values()
                .map(|s| s.max_degree as u64 + 1)
                .sum();
            let colours = report.distinct_colours as u64;
            Ok(BudgetOutcome {
                pass: colours <= bound,
                bound,
                colours,
                ratio: if delta > 0.0 {
                    colours as f64 / delta
                } else {
                    0.0
                },
            })
        }
        BudgetParams::Bipartite { s } => {
            if s == 0 {
                return Err(Error::validation("s must be at least 1"));
            }
            let mut counter_bound = 0u64;
            for (key, stats) in &report.per_palette {
                match *key {
                    PaletteKey::Bit(i) if i < s => {
                        let l = stats.max_left_counter.map_or(0, |j| j as u64 + 1);
                        let r = stats.max_right_counter.map_or(0, |k| k as u64 + 1);
                        counter_bound += l * r;
                    }
                    PaletteKey::Overflow => {}
                    other => {
                        return Err(Error::validation(format!(
                            "palette {other:?} does not belong to a bipartite run with s = {s}"
                        )))
                    }
                }
            }
            let widest = report.max_palette_degree() as u64;
            let square_bound = s as u64 * widest * widest;
            let triples = report.triple_colours() as u64;
            let overflow = report.overflow_colours as u64;
            let colours = report.distinct_colours as u64;
            let bound = square_bound + overflow;
            let target = delta * delta / s as f64;
            Ok(BudgetOutcome {
                pass: triples <= counter_bound && triples <= square_bound && colours <= bound,
                bound,
                colours,
                ratio: if target > 0.0 {
                    colours as f64 / target
                } else {
                    0.0
                },
            })
        }
    }
}
