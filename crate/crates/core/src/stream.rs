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

use std::fmt;

use crate::edge::{Edge, VertexId};
use crate::error::{Error, Result};

/// Metadata that precedes every edge stream and transcript.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StreamHeader {
    pub n: usize,
    pub m: Option<u64>,
    pub seed: Option<u64>,
}

impl StreamHeader {
    pub fn new(n: usize) -> Self {
        StreamHeader {
            n,
            m: None,
            seed: None,
        }
    }

    pub fn with_m(mut self, m: u64) -> Self {
        self.m = Some(m);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::validation("header must have n >= 1"));
        }
        if let Some(m) = self.m {
            let n = self.n as u128;
            if m as u128 > n * (n - 1) / 2 {
                return Err(Error::validation(format!(
                    "m = {m} exceeds n(n-1)/2 for n = {}",
                    self.n
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for StreamHeader {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n {}", self.n)?;
        if let Some(m) = self.m {
            write!(f, " m {m}")?;
        }
        if let Some(seed) = self.seed {
            write!(f, " seed {seed}")?;
        }
        Ok(())
    }
}

/// A finite edge stream: header plus edges in arrival order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeStream {
    pub header: StreamHeader,
    pub edges: Vec<Edge>,
}

impl EdgeStream {
    /// Wraps `edges`, filling in `m` and checking every edge against `n`.
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self> {
        let header = StreamHeader::new(n).with_m(edges.len() as u64);
        header.validate()?;
        for e in &edges {
            e.validate(n)?;
        }
        Ok(EdgeStream { header, edges })
    }

    pub fn n(&self) -> usize {
        self.header.n
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn degrees(&self) -> Vec<u32> {
        degrees(self.n(), &self.edges)
    }

    pub fn max_degree(&self) -> u32 {
        self.degrees().into_iter().max().unwrap_or(0)
    }
}

/// Degree of every vertex in `[0, n)`; parallel edges count separately.
pub fn degrees(n: usize, edges: &[Edge]) -> Vec<u32> {
    let mut deg = vec![0u32; n];
    for e in edges {
        deg[e.u.index()] += 1;
        deg[e.v.index()] += 1;
    }
    deg
}

/// Maximum degree over the vertices actually touched by `edges`.
pub fn max_degree_of(edges: &[Edge]) -> u32 {
    let n = edges
        .iter()
        .map(|e| e.u.max(e.v).index() + 1)
        .max()
        .unwrap_or(0);
    degrees(n, edges).into_iter().max().unwrap_or(0)
}

pub(crate) fn vertex(v: usize) -> VertexId {
    VertexId(u32::try_from(v).expect("vertex id exceeds u32"))
}
