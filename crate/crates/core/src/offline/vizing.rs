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

//! Misra–Gries constructive Vizing colouring.
//!
//! Edges are coloured one at a time in slot order. For an uncoloured edge
//! `(x, f)`: build a maximal fan at `x` starting with `f`, take `c` free at
//! `x` and `d` free at the fan's last vertex, invert the `cd`-path that
//! leaves `x` on a `d` edge, then rotate the fan prefix ending at the first
//! vertex where `d` is free and give the last fan edge colour `d`. Every
//! vertex sees at most `Δ+1` colours, so the palette is `0..=Δ`.

use super::slots::ColourSlots;
use super::{AdjacencyGraph, LocalColouring};

const UNCOLOURED: u32 = u32::MAX;

struct MisraGries<'g> {
    g: &'g AdjacencyGraph,
    width: u32,
    colour: Vec<u32>,
    slots: ColourSlots,
    // fan membership, stamped with the slot being coloured
    fan_mark: Vec<u32>,
}

impl<'g> MisraGries<'g> {
    fn new(g: &'g AdjacencyGraph) -> Self {
        let width = g.max_degree() + 1;
        MisraGries {
            g,
            width,
            colour: vec![UNCOLOURED; g.edge_count()],
            slots: ColourSlots::new(g.vertex_count(), width as usize, g.edge_count()),
            fan_mark: vec![UNCOLOURED; g.vertex_count()],
        }
    }

    fn other(&self, slot: u32, v: u32) -> u32 {
        let (a, b) = self.g.ends(slot as usize);
        if a == v {
            b
        } else {
            a
        }
    }

    /// Applies `(slot, new colour)` pairs as one batch so that colours
    /// swapped between edges of the batch never clobber each other.
    fn recolour(&mut self, changes: &[(u32, u32)]) {
        for &(slot, _) in changes {
            let old = self.colour[slot as usize];
            if old != UNCOLOURED {
                let (a, b) = self.g.ends(slot as usize);
                self.slots.clear(a, old);
                self.slots.clear(b, old);
            }
        }
        for &(slot, new) in changes {
            let (a, b) = self.g.ends(slot as usize);
            self.slots.set(a, new, slot);
            self.slots.set(b, new, slot);
            self.colour[slot as usize] = new;
        }
    }

    /// Shifts colours down the fan prefix `fan[..=last]` and gives the edge
    /// to `fan[last]` colour `fill`.
    fn rotate(&mut self, fan: &[(u32, u32)], last: usize, fill: u32) {
        let mut changes = Vec::with_capacity(last + 1);
        for i in 0..last {
            changes.push((fan[i].1, self.colour[fan[i + 1].1 as usize]));
        }
        changes.push((fan[last].1, fill));
        self.recolour(&changes);
    }

    /// Next fan vertex after `tip`: a neighbour of `x` outside the fan whose
    /// edge to `x` carries a colour free at `tip`.
    fn extend_fan(&self, x: u32, tip: u32, stamp: u32) -> Option<(u32, u32)> {
        (0..self.width).find_map(|col| {
            if !self.slots.is_free(tip, col) {
                return None;
            }
            let slot = self.slots.get(x, col)?;
            let y = self.other(slot, x);
            (self.fan_mark[y as usize] != stamp).then_some((y, slot))
        })
    }

    fn colour_edge(&mut self, slot: u32) {
        let (x, f) = self.g.ends(slot as usize);
        let c = self.slots.first_free(x);
        let mut fan = vec![(f, slot)];
        self.fan_mark[f as usize] = slot;
        loop {
            let tip = fan.last().unwrap().0;
            if self.slots.is_free(tip, c) {
                // c is free at both x and tip: rotate up to tip and use c.
                self.rotate(&fan, fan.len() - 1, c);
                return;
            }
            match self.extend_fan(x, tip, slot) {
                Some(next) => {
                    self.fan_mark[next.0 as usize] = slot;
                    fan.push(next);
                }
                None => break,
            }
        }

        let d = self.slots.first_free(fan.last().unwrap().0);
        debug_assert_ne!(c, d);
        self.invert_path(x, d, c);
        let w = fan
            .iter()
            .position(|&(v, _)| self.slots.is_free(v, d))
            .expect("some fan vertex has d free after the path inversion");
        self.rotate(&fan, w, d);
    }

    /// Swaps `d` and `c` on the maximal path leaving `x` on a `d` edge.
    fn invert_path(&mut self, x: u32, d: u32, c: u32) {
        let mut changes = Vec::new();
        let (mut at, mut want) = (x, d);
        while let Some(slot) = self.slots.get(at, want) {
            let flipped = if want == d { c } else { d };
            changes.push((slot, flipped));
            at = self.other(slot, at);
            want = flipped;
        }
        self.recolour(&changes);
    }

    fn run(mut self) -> LocalColouring {
        for slot in 0..self.g.edge_count() as u32 {
            self.colour_edge(slot);
        }
        debug_assert!(self.colour.iter().all(|&c| c < self.width));
        LocalColouring {
            colours: self.colour,
        }
    }
}

/// Proper edge colouring with at most `Δ+1` colours (colours `0..=Δ`).
///
/// Deterministic: the result depends only on the graph and its edge slot
/// order.
pub fn color_vizing(g: &AdjacencyGraph) -> LocalColouring {
    MisraGries::new(g).run()
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::{chromatic_index_bruteforce, AdjacencyGraph};
    use super::*;
    use proptest::prelude::*;

    fn check(g: &AdjacencyGraph) -> LocalColouring {
        let col = color_vizing(g);
        assert!(col.is_proper(g));
        assert!(col.span() <= g.max_degree() + 1);
        col
    }

    #[test]
    fn triangle_needs_three() {
        assert_eq!(check(&triangle()).colour_count(), 3);
    }

    #[test]
    fn path_uses_two() {
        let g = AdjacencyGraph::from_pairs(&[(0, 1), (1, 2)]).unwrap();
        assert_eq!(check(&g).colour_count(), 2);
    }

    #[test]
    fn petersen_within_four() {
        let g = petersen();
        let col = check(&g);
        assert!(col.colour_count() <= 4);
        // class two: four colours are also necessary
        assert_eq!(col.colour_count(), 4);
    }

    #[test]
    fn complete_graphs() {
        for n in 2..=24 {
            let g = complete(n);
            let col = check(&g);
            assert!(col.colour_count() as u32 >= g.max_degree());
        }
    }

    #[test]
    fn empty_graph() {
        let g = AdjacencyGraph::from_pairs(&[]).unwrap();
        assert!(color_vizing(&g).colours.is_empty());
    }

    fn simple_graph(max_n: u32, max_m: usize) -> impl Strategy<Value = AdjacencyGraph> {
        (2..=max_n).prop_flat_map(move |n| {
            proptest::collection::vec((0..n, 0..n), 0..max_m).prop_map(|pairs| {
                let mut seen = std::collections::HashSet::new();
                let pairs: Vec<_> = pairs
                    .into_iter()
                    .filter(|&(u, v)| u != v && seen.insert((u.min(v), u.max(v))))
                    .collect();
                AdjacencyGraph::from_pairs(&pairs).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(400))]

        #[test]
        fn proper_with_delta_plus_one(g in simple_graph(40, 300)) {
            let col = color_vizing(&g);
            prop_assert!(col.is_proper(&g));
            prop_assert!(col.span() <= g.max_degree() + 1);
        }

        #[test]
        fn never_beats_exact_index(g in simple_graph(8, 12)) {
            prop_assume!(g.edge_count() <= 12);
            let exact = chromatic_index_bruteforce(&g).unwrap();
            let col = color_vizing(&g);
            prop_assert!(col.colour_count() as u32 >= exact);
            prop_assert!(exact >= g.max_degree() && exact <= g.max_degree() + 1);
        }
    }
}
