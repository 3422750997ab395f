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

use std::collections::HashSet;

use crate::colour::ColourId;
use crate::edge::Edge;
use crate::stream::StreamHeader;

/// One `(edge, colour)` pair written to the output stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Announcement {
    pub edge: Edge,
    pub colour: ColourId,
}

impl Announcement {
    pub fn new(edge: Edge, colour: ColourId) -> Self {
        Announcement { edge, colour }
    }
}

/// The recorded output stream of a colourer, in announcement order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    pub header: StreamHeader,
    pub records: Vec<Announcement>,
}

impl Transcript {
    pub fn new(header: StreamHeader) -> Self {
        Transcript {
            header,
            records: Vec::new(),
        }
    }

    pub fn push(&mut self, a: Announcement) {
        self.records.push(a);
    }

    pub fn extend<I: IntoIterator<Item = Announcement>>(&mut self, iter: I) {
        self.records.extend(iter);
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.records.iter().map(|a| a.edge)
    }

    pub fn distinct_colours(&self) -> usize {
        self.records
            .iter()
            .map(|a| a.colour)
            .collect::<HashSet<_>>()
            .len()
    }

    /// Canonical edges, sorted; equal for two transcripts (or a transcript
    /// and a stream) iff their edge multisets agree.
    pub fn edge_multiset(&self) -> Vec<Edge> {
        sorted_canonical(self.edges())
    }
}

pub(crate) fn sorted_canonical(edges: impl Iterator<Item = Edge>) -> Vec<Edge> {
    let mut out: Vec<Edge> = edges.map(Edge::canonical).collect();
    out.sort_unstable();
    out
}
