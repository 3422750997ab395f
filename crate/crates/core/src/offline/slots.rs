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

use std::collections::HashMap;

const NONE: u32 = u32::MAX;

/// `(vertex, colour) -> edge slot` lookup used while colouring.
///
/// A dense table when `vertices * width` is small relative to the edge
/// count, otherwise one hash map per vertex.
pub(super) enum ColourSlots {
    Dense { width: usize, table: Vec<u32> },
    Sparse(Vec<HashMap<u32, u32>>),
}

impl ColourSlots {
    pub(super) fn new(vertices: usize, width: usize, edges: usize) -> Self {
        let cells = vertices.saturating_mul(width);
        if cells <= 16 * edges + 4096 {
            ColourSlots::Dense {
                width,
                table: vec![NONE; cells],
            }
        } else {
            ColourSlots::Sparse(vec![HashMap::new(); vertices])
        }
    }

    #[inline]
    pub(super) fn get(&self, v: u32, colour: u32) -> Option<u32> {
        match self {
            ColourSlots::Dense { width, table } => {
                if colour as usize >= *width {
                    return None;
                }
                let slot = table[v as usize * width + colour as usize];
                (slot != NONE).then_some(slot)
            }
            ColourSlots::Sparse(maps) => maps[v as usize].get(&colour).copied(),
        }
    }

    #[inline]
    pub(super) fn is_free(&self, v: u32, colour: u32) -> bool {
        self.get(v, colour).is_none()
    }

    #[inline]
    pub(super) fn set(&mut self, v: u32, colour: u32, edge: u32) {
        match self {
            ColourSlots::Dense { width, table } => {
                table[v as usize * *width + colour as usize] = edge
            }
            ColourSlots::Sparse(maps) => {
                maps[v as usize].insert(colour, edge);
            }
        }
    }

    #[inline]
    pub(super) fn clear(&mut self, v: u32, colour: u32) {
        match self {
            ColourSlots::Dense { width, table } => {
                table[v as usize * *width + colour as usize] = NONE
            }
            ColourSlots::Sparse(maps) => {
                maps[v as usize].remove(&colour);
            }
        }
    }

    /// Smallest colour not used at `v`.
    pub(super) fn first_free(&self, v: u32) -> u32 {
        (0..).find(|&c| self.is_free(v, c)).unwrap()
    }
}
