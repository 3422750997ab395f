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

use super::slots::ColourSlots;
use super::{AdjacencyGraph, LocalColouring};

/// First-fit edge colouring in slot order: each edge takes the smallest
/// colour free at both endpoints. Uses at most `2Δ-1` colours.
pub fn color_greedy(g: &AdjacencyGraph) -> LocalColouring {
    let width = (2 * g.max_degree()).saturating_sub(1).max(1) as usize;
    let mut slots = ColourSlots::new(g.vertex_count(), width, g.edge_count());
    let mut colours = Vec::with_capacity(g.edge_count());
    for slot in 0..g.edge_count() {
        let (a, b) = g.ends(slot);
        let c = (0..)
            .find(|&c| slots.is_free(a, c) && slots.is_free(b, c))
            .unwrap();
        slots.set(a, c, slot as u32);
        slots.set(b, c, slot as u32);
        colours.push(c);
    }
    LocalColouring { colours }
}
