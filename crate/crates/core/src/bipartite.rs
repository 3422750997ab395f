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

//! Bit-signature colouring for adversarial-order streams.
//!
//! Every vertex draws an `s`-bit signature up front. An edge `(u, v)` is
//! routed to bipartite class `B_i`, with `i` drawn uniformly from the
//! positions where the two signatures differ, so `B_i` only joins vertices
//! with bit `i` clear (left) to vertices with bit `i` set (right). Each
//! vertex keeps one counter per class; the edge is announced immediately as
//! `(i, C_left, C_right)` and both counters are bumped.
//!
//! Edges between vertices with identical signatures have nowhere to go and
//! get a globally fresh overflow colour instead.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::colour::ColourId;
use crate::colourer::StreamColourer;
use crate::edge::{Edge, VertexId};
use crate::error::{Error, Result};
use crate::meter::SpaceMeter;
use crate::rng::{derive_seed, SplitMix64};
use crate::transcript::{Announcement, Transcript};

/// Sub-seed tag for the per-edge index choices.
const INDEX_STREAM_TAG: u64 = 0x1D_C401CE;
/// Overflow serial, index generator state and `s`.
const FIXED_WORDS: u64 = 3;
/// Key and value of one sparse counter entry.
const WORDS_PER_COUNTER: u64 = 2;

/// `s = ⌈36 ln n⌉`, at least 1.
pub fn default_s(n: usize) -> u32 {
    ((36.0 * (n.max(1) as f64).ln()).ceil() as u32).max(1)
}

/// Per-vertex `s`-bit random strings, fixed at construction.
///
/// Bits of vertex `u` occupy `⌈s/64⌉` consecutive 64-bit words, vertex-major;
/// bit `b` lives in word `b / 64` at position `b % 64` (bit 0 is the least
/// significant), and unused high bits of the last word are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureTable {
    n: usize,
    s: u32,
    stride: usize,
    words: Vec<u64>,
}

impl SignatureTable {
    /// Draws all signatures from `SplitMix64(seed)`, one word at a time in
    /// vertex-major order.
    pub fn generate(n: usize, s: u32, seed: u64) -> Result<Self> {
        if s == 0 {
            return Err(Error::validation("s must be at least 1"));
        }
        let stride = (s as usize).div_ceil(64);
        let mask = last_word_mask(s);
        let mut rng = SplitMix64::new(seed);
        let mut words = Vec::with_capacity(n * stride);
        for _ in 0..n {
            for w in 0..stride {
                let word = rng.next_word();
                words.push(if w + 1 == stride { word & mask } else { word });
            }
        }
        Ok(SignatureTable {
            n,
            s,
            stride,
            words,
        })
    }

    /// Explicit signatures for `s <= 64`, one word per vertex.
    pub fn from_words(s: u32, rows: &[u64]) -> Result<Self> {
        if s == 0 || s > 64 {
            return Err(Error::validation("from_words needs 1 <= s <= 64"));
        }
        let mask = last_word_mask(s);
        Ok(SignatureTable {
            n: rows.len(),
            s,
            stride: 1,
            words: rows.iter().map(|w| w & mask).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// 64-bit words per signature.
    pub fn stride(&self) -> usize {
        self.stride
    }

    pub fn words(&self, u: VertexId) -> &[u64] {
        let at = u.index() * self.stride;
        &self.words[at..at + self.stride]
    }

    pub fn bit(&self, u: VertexId, i: u32) -> bool {
        (self.words(u)[(i / 64) as usize] >> (i % 64)) & 1 == 1
    }

    /// `|𝒟(u, v)|`, the Hamming distance of the two signatures.
    pub fn differing_count(&self, u: VertexId, v: VertexId) -> u32 {
        self.words(u)
            .iter()
            .zip(self.words(v))
            .map(|(a, b)| (a ^ b).count_ones())
            .sum()
    }

    pub fn differing(&self, u: VertexId, v: VertexId) -> DifferingIndexSet {
        let mut indices = Vec::new();
        for (w, (a, b)) in self.words(u).iter().zip(self.words(v)).enumerate() {
            let mut x = a ^ b;
            while x != 0 {
                indices.push(w as u32 * 64 + x.trailing_zeros());
                x &= x - 1;
            }
        }
        DifferingIndexSet { indices }
    }

    /// The `rank`-th smallest differing index; `rank < differing_count`.
    fn nth_differing(&self, u: VertexId, v: VertexId, mut rank: u32) -> u32 {
        for (w, (a, b)) in self.words(u).iter().zip(self.words(v)).enumerate() {
            let mut x = a ^ b;
            let ones = x.count_ones();
            if rank >= ones {
                rank -= ones;
                continue;
            }
            for _ in 0..rank {
                x &= x - 1;
            }
            return w as u32 * 64 + x.trailing_zeros();
        }
        unreachable!("rank beyond differing count")
    }

    /// Smallest Hamming distance over all vertex pairs, and how many pairs
    /// fall strictly below `threshold` differing bits. Exhaustive, `O(n²)`.
    pub fn pair_distance_scan(&self, threshold: f64) -> PairScan {
        (0..self.n)
            .into_par_iter()
            .map(|a| {
                let mut scan = PairScan::default();
                let ua = VertexId(a as u32);
                for b in a + 1..self.n {
                    let d = self.differing_count(ua, VertexId(b as u32));
                    scan.min = Some(scan.min.map_or(d, |m| m.min(d)));
                    if (d as f64) < threshold {
                        scan.below += 1;
                    }
                    scan.pairs += 1;
                }
                scan
            })
            .reduce(PairScan::default, PairScan::merge)
    }
}

fn last_word_mask(s: u32) -> u64 {
    match s % 64 {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PairScan {
    pub pairs: u64,
    pub min: Option<u32>,
    pub below: u64,
}

impl PairScan {
    fn merge(self, other: PairScan) -> PairScan {
        PairScan {
            pairs: self.pairs + other.pairs,
            min: match (self.min, other.min) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            },
            below: self.below + other.below,
        }
    }
}

/// Bit positions where two signatures disagree, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferingIndexSet {
    indices: Vec<u32>,
}

impl DifferingIndexSet {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, i: u32) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.indices
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BipartiteConfig {
    pub n: usize,
    pub s: u32,
    pub seed: u64,
    /// Charge the worst case `n·s` counter words up front instead of
    /// charging counters as they are first touched.
    pub strict_accounting: bool,
    /// Allow [`BipartiteColourer::exposed_signatures`] to hand out the
    /// signature table.
    pub expose_randomness: bool,
}

impl BipartiteConfig {
    pub fn new(n: usize, s: u32, seed: u64) -> Self {
        BipartiteConfig {
            n,
            s,
            seed,
            strict_accounting: false,
            expose_randomness: false,
        }
    }

    pub fn strict(mut self, on: bool) -> Self {
        self.strict_accounting = on;
        self
    }

    pub fn exposed(mut self, on: bool) -> Self {
        self.expose_randomness = on;
        self
    }
}

/// An edge of `B_i` with its endpoints sorted into the two sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LabelledEdge {
    /// Endpoint with bit `i` clear.
    pub left: VertexId,
    /// Endpoint with bit `i` set.
    pub right: VertexId,
    pub colour: ColourId,
}

#[derive(Debug)]
pub struct BipartiteColourer {
    config: BipartiteConfig,
    signatures: Arc<SignatureTable>,
    counters: HashMap<u64, u32>,
    index_rng: SplitMix64,
    overflow_serial: u64,
    last_index: Option<u32>,
    meter: SpaceMeter,
    finished: bool,
}

impl BipartiteColourer {
    /// Draws the signature table from `config.seed`.
    pub fn new(config: BipartiteConfig) -> Result<Self> {
        let table = SignatureTable::generate(config.n, config.s, config.seed)?;
        Self::with_signatures(config, table)
    }

    /// Uses a caller-supplied table; `config.n` and `config.s` must match it.
    pub fn with_signatures(config: BipartiteConfig, table: SignatureTable) -> Result<Self> {
        if config.s == 0 {
            return Err(Error::validation("s must be at least 1"));
        }
        if table.n() != config.n || table.s() != config.s {
            return Err(Error::validation(format!(
                "signature table is {}x{}, config asks for {}x{}",
                table.n(),
                table.s(),
                config.n,
                config.s
            )));
        }
        let mut meter = SpaceMeter::new();
        meter.charge(FIXED_WORDS + (table.n() * table.stride()) as u64);
        if config.strict_accounting {
            meter.charge(config.n as u64 * config.s as u64);
        }
        Ok(BipartiteColourer {
            index_rng: SplitMix64::new(derive_seed(config.seed, INDEX_STREAM_TAG)),
            config,
            signatures: Arc::new(table),
            counters: HashMap::new(),
            overflow_serial: 0,
            last_index: None,
            meter,
            finished: false,
        })
    }

    pub fn config(&self) -> &BipartiteConfig {
        &self.config
    }

    /// Read access to the signatures, for adversaries granted the
    /// algorithm's randomness.
    pub fn exposed_signatures(&self) -> Result<Arc<SignatureTable>> {
        if self.config.expose_randomness {
            Ok(Arc::clone(&self.signatures))
        } else {
            Err(Error::Config(
                "signature access requires expose_randomness".into(),
            ))
        }
    }

    /// Class chosen for the most recent edge, `None` if it overflowed.
    pub fn last_index(&self) -> Option<u32> {
        self.last_index
    }

    /// `C^(i)_u`.
    pub fn counter(&self, u: VertexId, i: u32) -> u32 {
        self.counters.get(&counter_key(u, i)).copied().unwrap_or(0)
    }

    pub fn overflow_count(&self) -> u64 {
        self.overflow_serial
    }

    pub fn signatures(&self) -> &SignatureTable {
        &self.signatures
    }

    /// Colours one edge and announces it.
    pub fn color_edge(&mut self, e: Edge) -> Result<Announcement> {
        if self.finished {
            return Err(Error::contract("feed after finish"));
        }
        e.validate(self.config.n)?;
        let sig = Arc::clone(&self.signatures);
        let differing = sig.differing_count(e.u, e.v);
        if differing == 0 {
            let serial = self.overflow_serial;
            self.overflow_serial += 1;
            self.last_index = None;
            return Ok(Announcement::new(e, ColourId::Overflow { serial }));
        }
        let rank = self.index_rng.below(differing as u64) as u32;
        let i = sig.nth_differing(e.u, e.v, rank);
        let (left, right) = if sig.bit(e.u, i) {
            (e.v, e.u)
        } else {
            (e.u, e.v)
        };
        let j = self.bump(left, i);
        let k = self.bump(right, i);
        self.last_index = Some(i);
        Ok(Announcement::new(e, ColourId::Triple { i, j, k }))
    }

    /// Returns the counter's value before the increment.
    fn bump(&mut self, u: VertexId, i: u32) -> u32 {
        let slot = self.counters.entry(counter_key(u, i)).or_insert_with(|| {
            if !self.config.strict_accounting {
                self.meter.charge(WORDS_PER_COUNTER);
            }
            0
        });
        let before = *slot;
        *slot += 1;
        before
    }

    /// Edges of `B_i` in `transcript`, each split into left and right by
    /// bit `i` of this colourer's signatures.
    pub fn bipartite_subgraph(&self, transcript: &Transcript, i: u32) -> Result<Vec<LabelledEdge>> {
        if i >= self.config.s {
            return Err(Error::validation(format!(
                "class {i} out of range for s = {}",
                self.config.s
            )));
        }
        Ok(transcript
            .records
            .iter()
            .filter(|a| matches!(a.colour, ColourId::Triple { i: ii, .. } if ii == i))
            .map(|a| {
                let (left, right) = if self.signatures.bit(a.edge.u, i) {
                    (a.edge.v, a.edge.u)
                } else {
                    (a.edge.u, a.edge.v)
                };
                LabelledEdge {
                    left,
                    right,
                    colour: a.colour,
                }
            })
            .collect())
    }
}

fn counter_key(u: VertexId, i: u32) -> u64 {
    ((u.0 as u64) << 32) | i as u64
}

impl StreamColourer for BipartiteColourer {
    fn feed(&mut self, e: Edge) -> Result<Vec<Announcement>> {
        self.color_edge(e).map(|a| vec![a])
    }

    fn finish(&mut self) -> Result<Vec<Announcement>> {
        if self.finished {
            return Err(Error::contract("finish called twice"));
        }
        self.finished = true;
        Ok(Vec::new())
    }

    fn meter(&self) -> &SpaceMeter {
        &self.meter
    }
}
