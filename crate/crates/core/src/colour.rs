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
use std::str::FromStr;

use crate::error::{Error, Result};

/// A colour announced for an edge.
///
/// Each variant, and within a variant each chunk index or bit index, is its
/// own palette: colours from different palettes never compare equal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ColourId {
    /// Colour `local` from the private palette of chunk `chunk`.
    Chunk { chunk: u32, local: u32 },
    /// Colour `(i, j, k)`: bipartite class `i`, left counter `j`, right
    /// counter `k`.
    Triple { i: u32, j: u32, k: u32 },
    /// Fallback colour for an edge whose endpoints share a signature.
    Overflow { serial: u64 },
}

/// Identifies the palette a colour belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PaletteKey {
    Chunk(u32),
    Bit(u32),
    Overflow,
}

impl ColourId {
    pub fn palette(&self) -> PaletteKey {
        match *self {
            ColourId::Chunk { chunk, .. } => PaletteKey::Chunk(chunk),
            ColourId::Triple { i, .. } => PaletteKey::Bit(i),
            ColourId::Overflow { .. } => PaletteKey::Overflow,
        }
    }
}

impl fmt::Display for ColourId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColourId::Chunk { chunk, local } => write!(f, "c:{chunk}:{local}"),
            ColourId::Triple { i, j, k } => write!(f, "t:{i}:{j}:{k}"),
            ColourId::Overflow { serial } => write!(f, "o:{serial}"),
        }
    }
}

impl FromStr for ColourId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::validation(format!("malformed colour `{s}`"));
        let mut parts = s.split(':');
        let tag = parts.next().ok_or_else(bad)?;
        let nums: Vec<u64> = parts
            .map(|p| p.parse::<u64>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        let small = |x: u64| u32::try_from(x).map_err(|_| bad());
        match (tag, nums.as_slice()) {
            ("c", &[chunk, local]) => Ok(ColourId::Chunk {
                chunk: small(chunk)?,
                local: small(local)?,
            }),
            ("t", &[i, j, k]) => Ok(ColourId::Triple {
                i: small(i)?,
                j: small(j)?,
                k: small(k)?,
            }),
            ("o", &[serial]) => Ok(ColourId::Overflow { serial }),
            _ => Err(bad()),
        }
    }
}
