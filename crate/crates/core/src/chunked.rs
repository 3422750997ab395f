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

//! Chunked colouring for random-order streams.
//!
//! The stream is cut into consecutive chunks of `C = α²n` edges. Each full
//! chunk is coloured offline with a `Δ+1` colouring of the subgraph it
//! induces, using a palette private to that chunk, and all of its edges are
//! announced at once. A partial last chunk is coloured the same way when the
//! stream ends.

use std::collections::{HashMap, HashSet};

use crate::colour::ColourId;
use crate::colourer::StreamColourer;
use crate::edge::{Edge, VertexId};
use crate::error::{Error, Result};
use crate::meter::SpaceMeter;
use crate::offline::{color_greedy, color_vizing, AdjacencyGraph};
use crate::transcript::Announcement;

/// Words per buffered edge (two endpoints).
pub const WORDS_PER_EDGE: u64 = 2;
/// Words for `n`, `α`, `C` and the chunk counter.
const CONFIG_WORDS: u64 = 4;

/// Offline colouring used on each chunk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ChunkSubroutine {
    /// Misra–Gries, at most `Δ_i + 1` colours per chunk.
    #[default]
    Vizing,
    /// First-fit, at most `2Δ_i - 1` colours per chunk.
    Greedy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChunkConfig {
    n: usize,
    alpha: u32,
    capacity: usize,
}

impl ChunkConfig {
    /// Chunk capacity is exactly `alpha² · n` edges.
    pub fn new(n: usize, alpha: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::validation("n must be at least 1"));
        }
        if alpha == 0 {
            return Err(Error::validation("alpha must be at least 1"));
        }
        let capacity = (alpha as usize)
            .checked_mul(alpha as usize)
            .and_then(|a2| a2.checked_mul(n))
            .ok_or_else(|| Error::validation("alpha^2 * n overflows"))?;
        Ok(ChunkConfig { n, alpha, capacity })
    }

    /// `α = ⌈log₂ n⌉` (at least 1).
    pub fn with_default_alpha(n: usize) -> Result<Self> {
        Self::new(n, default_alpha(n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }
}

pub fn default_alpha(n: usize) -> u32 {
    (usize::BITS - n.saturating_sub(1).leading_zeros()).max(1)
}

/// What happened to one flushed chunk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChunkSummary {
    pub index: u32,
    pub edges: usize,
    pub max_degree: u32,
    pub colours: usize,
}

#[derive(Debug)]
pub struct ChunkedColourer {
    config: ChunkConfig,
    subroutine: ChunkSubroutine,
    buffer: Vec<Edge>,
    chunk_index: u32,
    peak_buffered: usize,
    meter: SpaceMeter,
    chunks: Vec<ChunkSummary>,
    finished: bool,
}

impl ChunkedColourer {
    pub fn new(config: ChunkConfig) -> Self {
        Self::with_subroutine(config, ChunkSubroutine::Vizing)
    }

    pub fn with_subroutine(config: ChunkConfig, subroutine: ChunkSubroutine) -> Self {
        let mut meter = SpaceMeter::new();
        meter.charge(CONFIG_WORDS);
        ChunkedColourer {
            config,
            subroutine,
            buffer: Vec::new(),
            chunk_index: 0,
            peak_buffered: 0,
            meter,
            chunks: Vec::new(),
            finished: false,
        }
    }

    pub fn config(&self) -> &ChunkConfig {
        &self.config
    }

    /// Number of chunks flushed so far.
    pub fn chunk_index(&self) -> u32 {
        self.chunk_index
    }

    pub fn buffered(&self) -> usize {
        self.buffer.len()
    }

    /// Largest number of edges ever held in the buffer.
    pub fn peak_buffered(&self) -> usize {
        self.peak_buffered
    }

    pub fn chunks(&self) -> &[ChunkSummary] {
        &self.chunks
    }

    fn flush(&mut self) -> Result<Vec<Announcement>> {
        if self.buffer.is_empty() {
            return Ok(Vec::new());
        }
        let edges = std::mem::take(&mut self.buffer);
        let index = self.chunk_index;

        // Repeated edges inside one chunk are coloured after the simple part.
        let mut seen = HashSet::with_capacity(edges.len());
        let (mut simple, mut repeats) = (Vec::new(), Vec::new());
        for (pos, e) in edges.iter().enumerate() {
            if seen.insert(e.canonical()) {
                simple.push(pos);
            } else {
                repeats.push(pos);
            }
        }
        let simple_edges: Vec<Edge> = simple.iter().map(|&p| edges[p]).collect();
        let g = AdjacencyGraph::from_edges(&simple_edges)?;
        let workspace = 3 * g.vertex_count() as u64 + 7 * g.edge_count() as u64;
        self.meter.charge(workspace);

        let local = match self.subroutine {
            ChunkSubroutine::Vizing => color_vizing(&g),
            ChunkSubroutine::Greedy => color_greedy(&g),
        };
        let mut colour_of = vec![0u32; edges.len()];
        for (slot, &pos) in simple.iter().enumerate() {
            colour_of[pos] = local.colours[slot];
        }
        if !repeats.is_empty() {
            let mut used: HashMap<VertexId, HashSet<u32>> = HashMap::new();
            for &pos in &simple {
                for x in edges[pos].endpoints() {
                    used.entry(x).or_default().insert(colour_of[pos]);
                }
            }
            for &pos in &repeats {
                let [a, b] = edges[pos].endpoints();
                let c = (0..)
                    .find(|c| {
                        !used.get(&a).is_some_and(|s| s.contains(c))
                            && !used.get(&b).is_some_and(|s| s.contains(c))
                    })
                    .unwrap();
                used.entry(a).or_default().insert(c);
                used.entry(b).or_default().insert(c);
                colour_of[pos] = c;
            }
        }

        let mut distinct = colour_of.clone();
        distinct.sort_unstable();
        distinct.dedup();
        self.chunks.push(ChunkSummary {
            index,
            edges: edges.len(),
            max_degree: g.max_degree(),
            colours: distinct.len(),
        });

        self.meter.release(workspace)?;
        self.meter.release(WORDS_PER_EDGE * edges.len() as u64)?;
        self.chunk_index += 1;

        Ok(edges
            .into_iter()
            .zip(colour_of)
            .map(|(e, local)| {
                Announcement::new(
                    e,
                    ColourId::Chunk {
                        chunk: index,
                        local,
                    },
                )
            })
            .collect())
    }
}

impl StreamColourer for ChunkedColourer {
    fn feed(&mut self, e: Edge) -> Result<Vec<Announcement>> {
        if self.finished {
            return Err(Error::contract("feed after finish"));
        }
        e.validate(self.config.n)?;
        self.buffer.push(e);
        self.meter.charge(WORDS_PER_EDGE);
        self.peak_buffered = self.peak_buffered.max(self.buffer.len());
        if self.buffer.len() == self.config.capacity {
            self.flush()
        } else {
            Ok(Vec::new())
        }
    }

    fn finish(&mut self) -> Result<Vec<Announcement>> {
        if self.finished {
            return Err(Error::contract("finish called twice"));
        }
        self.finished = true;
        self.flush()
    }

    fn meter(&self) -> &SpaceMeter {
        &self.meter
    }
}
