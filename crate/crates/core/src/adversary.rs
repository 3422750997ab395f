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

//! Worst-case stream for the bit-signature colourer.
//!
//! With read access to the signatures, colour `(i, j, k)` is forced by
//! building a left star centre whose class-`i` counter has reached `j`, a
//! right star centre whose class-`i` counter has reached `k`, and joining
//! the two centres with an edge that lands in `B_i`. Centres and leaves are
//! always fresh vertices, so the graph stays simple; leaves have degree one
//! and a centre never exceeds `Δ`.
//!
//! Vertices are picked so the wanted index is the only (or a rare)
//! differing bit. When the colourer's coin still sends an edge elsewhere,
//! a leaf is simply replaced; a missed centre connection throws both stars
//! away and starts over with fresh copies.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use crate::bipartite::{BipartiteColourer, SignatureTable};
use crate::colour::ColourId;
use crate::edge::{Edge, VertexId};
use crate::error::{Error, Result};
use crate::stream::{EdgeStream, StreamHeader};
use crate::transcript::Transcript;

/// Candidates examined when no vertex has exactly the wanted signature.
const SEARCH_WINDOW: usize = 512;

#[derive(Debug, Clone)]
pub struct WorstCaseOutcome {
    pub stream: EdgeStream,
    pub transcript: Transcript,
    /// Number of `(i, j, k)` targets that were forced.
    pub targets_hit: usize,
    /// Targets abandoned because the retry budget or the vertex pool ran out.
    pub targets_missed: usize,
    pub vertices_used: usize,
}

impl WorstCaseOutcome {
    pub fn distinct_colours(&self) -> usize {
        self.transcript.distinct_colours()
    }

    pub fn max_degree(&self) -> u32 {
        self.stream.max_degree()
    }
}

/// Unused vertices grouped by signature.
struct Pool {
    table: Arc<SignatureTable>,
    used: Vec<bool>,
    cursor: usize,
    buckets: BTreeMap<Box<[u64]>, Vec<u32>>,
    collisions: bool,
}

impl Pool {
    fn new(table: Arc<SignatureTable>) -> Self {
        let n = table.n();
        let mut buckets: BTreeMap<Box<[u64]>, Vec<u32>> = BTreeMap::new();
        for v in (0..n as u32).rev() {
            buckets
                .entry(table.words(VertexId(v)).into())
                .or_default()
                .push(v);
        }
        let collisions = buckets.len() * 4 <= n;
        Pool {
            table,
            used: vec![false; n],
            cursor: 0,
            buckets,
            collisions,
        }
    }

    fn mark(&mut self, v: u32) -> VertexId {
        self.used[v as usize] = true;
        let key = self.table.words(VertexId(v));
        if let Some(list) = self.buckets.get_mut(key) {
            list.retain(|&x| x != v);
        }
        VertexId(v)
    }

    fn supply(&self, key: &[u64]) -> usize {
        self.buckets.get(key).map_or(0, Vec::len)
    }

    fn take_exact(&mut self, key: &[u64]) -> Option<VertexId> {
        let v = *self.buckets.get(key)?.last()?;
        Some(self.mark(v))
    }

    /// An unused vertex whose bit `i` is `want`, as close to `anchor`'s
    /// signature as possible: `anchor` with bit `i` flipped if available.
    fn take_near(&mut self, anchor: VertexId, i: u32, want: bool) -> Option<VertexId> {
        let mut key: Box<[u64]> = self.table.words(anchor).into();
        if self.table.bit(anchor, i) != want {
            key[(i / 64) as usize] ^= 1 << (i % 64);
        }
        if let Some(v) = self.take_exact(&key) {
            return Some(v);
        }
        let mut best: Option<(u32, u32)> = None;
        let mut seen = 0;
        self.skip_used();
        for v in self.cursor..self.used.len() {
            if self.used[v] || v as u32 == anchor.0 || self.table.bit(VertexId(v as u32), i) != want
            {
                continue;
            }
            let d = self.table.differing_count(anchor, VertexId(v as u32));
            if best.is_none_or(|(bd, _)| d < bd) {
                best = Some((d, v as u32));
            }
            seen += 1;
            if seen == SEARCH_WINDOW {
                break;
            }
        }
        best.map(|(_, v)| self.mark(v))
    }

    /// A fresh left centre (bit `i` clear) with enough leaves of both kinds
    /// in reserve, or failing that any unused vertex with bit `i` clear.
    fn take_centre(&mut self, i: u32, left_leaves: usize, right_leaves: usize) -> Option<VertexId> {
        if self.collisions {
            let word = (i / 64) as usize;
            let pick = self.buckets.iter().find_map(|(key, list)| {
                if list.is_empty() || (key[word] >> (i % 64)) & 1 == 1 {
                    return None;
                }
                let mut partner = key.clone();
                partner[word] ^= 1 << (i % 64);
                (list.len() > right_leaves && self.supply(&partner) > left_leaves)
                    .then(|| *list.last().unwrap())
            });
            if let Some(v) = pick {
                return Some(self.mark(v));
            }
        }
        self.skip_used();
        let v = (self.cursor..self.used.len())
            .find(|&v| !self.used[v] && !self.table.bit(VertexId(v as u32), i))?;
        Some(self.mark(v as u32))
    }

    fn skip_used(&mut self) {
        while self.cursor < self.used.len() && self.used[self.cursor] {
            self.cursor += 1;
        }
    }
}

struct Driver<'c> {
    colourer: &'c mut BipartiteColourer,
    pool: Pool,
    delta: u32,
    degree: Vec<u32>,
    edges: Vec<Edge>,
    transcript: Transcript,
}

impl Driver<'_> {
    /// Streams one edge and reports the class the colourer chose.
    fn emit(&mut self, u: VertexId, v: VertexId) -> Result<Option<(u32, u32, u32)>> {
        let e = Edge::new(u, v)?;
        let a = self.colourer.color_edge(e)?;
        self.degree[u.index()] += 1;
        self.degree[v.index()] += 1;
        self.edges.push(e);
        self.transcript.push(a);
        Ok(match a.colour {
            ColourId::Triple { i, j, k } => Some((i, j, k)),
            _ => None,
        })
    }

    /// Grows a star at `centre` until its class-`i` counter equals `target`.
    /// Leaves get bit `i` opposite to the centre. Keeps one unit of degree
    /// in reserve for the centre connection; `false` if that runs out.
    fn drive(&mut self, centre: VertexId, i: u32, target: u32) -> Result<bool> {
        let leaf_bit = !self.pool.table.bit(centre, i);
        while self.colourer.counter(centre, i) < target {
            if self.degree[centre.index()] + 1 >= self.delta {
                return Ok(false);
            }
            let Some(leaf) = self.pool.take_near(centre, i, leaf_bit) else {
                return Ok(false);
            };
            self.emit(centre, leaf)?;
        }
        Ok(true)
    }

    /// One attempt at colour `(i, j, k)`; `None` if the pool ran dry.
    fn attempt(&mut self, i: u32, j: u32, k: u32) -> Result<Option<bool>> {
        let Some(left) = self.pool.take_centre(i, j as usize, k as usize) else {
            return Ok(None);
        };
        let Some(right) = self.pool.take_near(left, i, true) else {
            return Ok(None);
        };
        if !self.drive(left, i, j)? || !self.drive(right, i, k)? {
            return Ok(Some(false));
        }
        let got = self.emit(left, right)?;
        Ok(Some(got == Some((i, j, k))))
    }
}

/// Streams stars into `colourer` until every colour `(i, j, k)` with
/// `j, k < Δ/s` has been forced, then returns the stream and the transcript
/// it induced.
///
/// The colourer must expose its randomness and must not have seen any
/// edges yet; the stream uses fresh vertices from `0..n` and has maximum
/// degree at most `delta`.
pub fn worst_case_stream(colourer: &mut BipartiteColourer, delta: u32) -> Result<WorstCaseOutcome> {
    let table = colourer.exposed_signatures()?;
    let s = table.s();
    if delta < s {
        return Err(Error::validation(format!(
            "worst case needs Δ >= s, got Δ = {delta}, s = {s}"
        )));
    }
    let per_class = delta / s;
    let max_attempts = 4 * s as usize + 16;
    let config = *colourer.config();
    let n = config.n;

    let mut driver = Driver {
        pool: Pool::new(table),
        colourer,
        delta,
        degree: vec![0; n],
        edges: Vec::new(),
        transcript: Transcript::new(StreamHeader::new(n).with_seed(config.seed)),
    };
    let mut hit = 0;
    'targets: for i in 0..s {
        for j in 0..per_class {
            for k in 0..per_class {
                for _ in 0..max_attempts {
                    match driver.attempt(i, j, k)? {
                        Some(true) => {
                            hit += 1;
                            break;
                        }
                        Some(false) => {}
                        None => break 'targets,
                    }
                }
            }
        }
    }
    let missed = (s * per_class * per_class) as usize - hit;

    let vertices_used = driver.degree.iter().filter(|&&d| d > 0).count();
    debug_assert_eq!(
        driver
            .edges
            .iter()
            .map(|e| e.canonical())
            .collect::<HashSet<_>>()
            .len(),
        driver.edges.len()
    );
    let mut stream = EdgeStream::new(n, driver.edges)?;
    stream.header.seed = Some(config.seed);
    let mut transcript = driver.transcript;
    transcript.header = stream.header;
    Ok(WorstCaseOutcome {
        stream,
        transcript,
        targets_hit: hit,
        targets_missed: missed,
        vertices_used,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipartite::BipartiteConfig;

    fn exposed(n: usize, s: u32, seed: u64) -> BipartiteColourer {
        BipartiteColourer::new(BipartiteConfig::new(n, s, seed).exposed(true)).unwrap()
    }

    #[test]
    fn needs_exposed_randomness() {
        let mut c = BipartiteColourer::new(BipartiteConfig::new(64, 4, 0)).unwrap();
        assert!(matches!(
            worst_case_stream(&mut c, 8),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn needs_delta_at_least_s() {
        let mut c = exposed(64, 4, 0);
        assert!(matches!(
            worst_case_stream(&mut c, 3),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn delta_equal_s_forces_one_colour_per_class() {
        let mut c = exposed(4096, 6, 1);
        let out = worst_case_stream(&mut c, 6).unwrap();
        assert_eq!(out.targets_hit, 6);
        assert!(out.distinct_colours() >= 6);
        assert!(out.max_degree() <= 6);
    }

    #[test]
    fn small_instance_hits_every_target() {
        let mut c = exposed(8192, 4, 2);
        let out = worst_case_stream(&mut c, 16).unwrap();
        assert_eq!(out.targets_hit, 4 * 4 * 4);
        assert_eq!(out.targets_missed, 0);
        assert!(out.distinct_colours() >= 16);
        assert!(out.max_degree() <= 16);
        assert_eq!(out.stream.len(), out.transcript.len());
    }

    #[test]
    fn works_without_signature_collisions() {
        // s = 40 makes signatures unique, exercising the nearest-vertex search.
        let mut c = exposed(3000, 40, 3);
        let out = worst_case_stream(&mut c, 80).unwrap();
        assert!(out.max_degree() <= 80);
        assert!(out.targets_hit > 0);
        assert_eq!(out.targets_hit + out.targets_missed, 40 * 2 * 2);
    }

    #[test]
    fn deterministic() {
        let a = worst_case_stream(&mut exposed(4096, 4, 9), 12).unwrap();
        let b = worst_case_stream(&mut exposed(4096, 4, 9), 12).unwrap();
        assert_eq!(a.stream, b.stream);
        assert_eq!(a.transcript, b.transcript);
    }
}
