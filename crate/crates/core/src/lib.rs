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

//! One-pass edge colouring in the W-streaming model.
//!
//! Two colourers share one streaming interface ([`StreamColourer`]):
//!
//! * [`ChunkedColourer`] buffers `α²n` edges at a time and colours each
//!   chunk offline with a fresh `Δ+1` palette. On random-order streams the
//!   chunks look alike and the total is close to `Δ`.
//! * [`BipartiteColourer`] routes each edge into one of `s` bipartite
//!   classes using per-vertex random bit signatures and announces a
//!   counter-pair colour at once, using about `Δ²/s` colours on any order.
//!
//! Around them sit stream generators (including a worst-case adversary for
//! the bipartite colourer), a full-memory verifier, space accounting and an
//! experiment runner.

pub mod adversary;
pub mod bipartite;
pub mod chunked;
pub mod colour;
pub mod colourer;
pub mod edge;
pub mod error;
pub mod experiment;
pub mod format;
pub mod generators;
pub mod meter;
pub mod offline;
pub mod rng;
pub mod stream;
pub mod transcript;
pub mod verify;

pub use adversary::{worst_case_stream, WorstCaseOutcome};
pub use bipartite::{
    default_s, BipartiteColourer, BipartiteConfig, DifferingIndexSet, LabelledEdge, SignatureTable,
};
pub use chunked::{default_alpha, ChunkConfig, ChunkSubroutine, ChunkedColourer};
pub use colour::{ColourId, PaletteKey};
pub use colourer::{run_stream, GreedyStreamColourer, StreamColourer};
pub use edge::{canonicalize, Edge, VertexId};
pub use error::{Error, Result};
pub use experiment::{run_colourer, run_experiment, Algo, ExperimentSpec, RunOutcome};
pub use generators::{generate, ArrivalOrder, GraphFamily, OrderKind, SortPolicy};
pub use meter::SpaceMeter;
pub use offline::{
    chromatic_index_bruteforce, color_greedy, color_vizing, AdjacencyGraph, LocalColouring,
};
pub use stream::{EdgeStream, StreamHeader};
pub use transcript::{Announcement, Transcript};
pub use verify::{chunk_concentration, colour_budget, verify, BudgetParams, VerificationReport};
