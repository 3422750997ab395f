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

use crate::error::{Error, Result};

/// Index of a vertex in `[0, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<u32> for VertexId {
    fn from(v: u32) -> Self {
        VertexId(v)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// An undirected edge as it appears in a stream. Either endpoint order is
/// allowed; [`Edge::canonical`] gives the `u < v` form used for storage and
/// comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
}

impl Edge {
    /// Builds an edge, rejecting self-loops.
    pub fn new(u: impl Into<VertexId>, v: impl Into<VertexId>) -> Result<Self> {
        let (u, v) = (u.into(), v.into());
        if u == v {
            return Err(Error::validation(format!("self-loop at vertex {u}")));
        }
        Ok(Edge { u, v })
    }

    /// Smaller endpoint first. Idempotent.
    #[inline]
    pub fn canonical(self) -> Edge {
        if self.u <= self.v {
            self
        } else {
            Edge {
                u: self.v,
                v: self.u,
            }
        }
    }

    #[inline]
    pub fn is_canonical(self) -> bool {
        self.u < self.v
    }

    #[inline]
    pub fn endpoints(self) -> [VertexId; 2] {
        [self.u, self.v]
    }

    /// Checks the edge is loop-free and both endpoints are below `n`.
    pub fn validate(self, n: usize) -> Result<()> {
        if self.u == self.v {
            return Err(Error::validation(format!("self-loop at vertex {}", self.u)));
        }
        for x in self.endpoints() {
            if x.index() >= n {
                return Err(Error::validation(format!(
                    "vertex {x} out of range for n = {n}"
                )));
            }
        }
        Ok(())
    }
}

/// Validating canonicalisation: `(5,2) -> (2,5)`, self-loops are rejected.
pub fn canonicalize(e: Edge) -> Result<Edge> {
    if e.u == e.v {
        return Err(Error::validation(format!("self-loop at vertex {}", e.u)));
    }
    Ok(e.canonical())
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.u, self.v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(u: u32, v: u32) -> Edge {
        Edge {
            u: VertexId(u),
            v: VertexId(v),
        }
    }

    #[test]
    fn canonicalize_orders_endpoints() {
        assert_eq!(canonicalize(e(5, 2)).unwrap(), e(2, 5));
        assert_eq!(canonicalize(e(2, 5)).unwrap(), e(2, 5));
        assert_eq!(
            canonicalize(canonicalize(e(9, 1)).unwrap()).unwrap(),
            e(1, 9)
        );
    }

    #[test]
    fn self_loops_rejected() {
        assert!(matches!(canonicalize(e(3, 3)), Err(Error::Validation(_))));
        assert!(Edge::new(3, 3).is_err());
    }

    #[test]
    fn validate_checks_range() {
        assert!(e(0, 4).validate(5).is_ok());
        assert!(e(0, 5).validate(5).is_err());
    }
}
