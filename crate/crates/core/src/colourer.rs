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

use crate::edge::Edge;
use crate::error::Result;
use crate::meter::SpaceMeter;
use crate::stream::EdgeStream;
use crate::transcript::{Announcement, Transcript};

/// A one-pass W-streaming edge colourer.
///
/// Edges are fed in stream order; every call may announce colours for any
/// edges seen so far, and by the time [`finish`](StreamColourer::finish)
/// returns every fed edge has been announced exactly once.
pub trait StreamColourer {
    fn feed(&mut self, e: Edge) -> Result<Vec<Announcement>>;

    fn finish(&mut self) -> Result<Vec<Announcement>>;

    fn meter(&self) -> &SpaceMeter;
}

/// Feeds a whole stream through `colourer` and collects the transcript.
pub fn run_stream<C: StreamColourer + ?Sized>(
    colourer: &mut C,
    stream: &EdgeStream,
) -> Result<Transcript> {
    let mut transcript = Transcript::new(stream.header);
    transcript.records.reserve(stream.len());
    for &e in &stream.edges {
        transcript.extend(colourer.feed(e)?);
    }
    transcript.extend(colourer.finish()?);
    Ok(transcript)
}

/// The classic online greedy colourer: every edge immediately takes the
/// smallest colour free at both endpoints. Needs every vertex's used
/// colours, so space grows like `nΔ`; kept as a baseline.
///
/// Colours are announced in the single palette `Chunk { chunk: 0, .. }`.
#[derive(Debug)]
pub struct GreedyStreamColourer {
    n: usize,
    used: std::collections::HashMap<crate::edge::VertexId, std::collections::BTreeSet<u32>>,
    meter: SpaceMeter,
    finished: bool,
}

impl GreedyStreamColourer {
    pub fn new(n: usize) -> Self {
        GreedyStreamColourer {
            n,
            used: Default::default(),
            meter: SpaceMeter::new(),
            finished: false,
        }
    }
}

impl StreamColourer for GreedyStreamColourer {
    fn feed(&mut self, e: Edge) -> Result<Vec<Announcement>> {
        if self.finished {
            return Err(crate::error::Error::contract("feed after finish"));
        }
        e.validate(self.n)?;
        let empty = std::collections::BTreeSet::new();
        let (a, b) = (
            self.used.get(&e.u).unwrap_or(&empty),
            self.used.get(&e.v).unwrap_or(&empty),
        );
        let c = (0..).find(|c| !a.contains(c) && !b.contains(c)).unwrap();
        for x in e.endpoints() {
            self.used.entry(x).or_default().insert(c);
            self.meter.charge(1);
        }
        Ok(vec![Announcement::new(
            e,
            crate::colour::ColourId::Chunk { chunk: 0, local: c },
        )])
    }

    fn finish(&mut self) -> Result<Vec<Announcement>> {
        if self.finished {
            return Err(crate::error::Error::contract("finish called twice"));
        }
        self.finished = true;
        Ok(Vec::new())
    }

    fn meter(&self) -> &SpaceMeter {
        &self.meter
    }
}
