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

use super::AdjacencyGraph;
use crate::error::{Error, Result};

/// Largest graph, in edges, the exhaustive search will accept.
pub const BRUTE_FORCE_EDGE_LIMIT: usize = 12;

/// Exact chromatic index by backtracking. Only for graphs with at most
/// [`BRUTE_FORCE_EDGE_LIMIT`] edges.
pub fn chromatic_index_bruteforce(g: &AdjacencyGraph) -> Result<u32> {
    let m = g.edge_count();
    if m > BRUTE_FORCE_EDGE_LIMIT {
        return Err(Error::TooLarge(format!(
            "exhaustive chromatic index needs <= {BRUTE_FORCE_EDGE_LIMIT} edges, got {m}"
        )));
    }
    if m == 0 {
        return Ok(0);
    }
    let ends: Vec<(usize, usize)> = (0..m)
        .map(|s| {
            let (a, b) = g.ends(s);
            (a as usize, b as usize)
        })
        .collect();
    let mut k = g.max_degree();
    loop {
        let mut used = vec![0u32; g.vertex_count()];
        if assign(&ends, 0, k, 0, &mut used) {
            return Ok(k);
        }
        k += 1;
    }
}

// `used[v]` is a bitmask of colours present at v. New colours are opened in
// increasing order only, which removes palette-permutation symmetry.
fn assign(ends: &[(usize, usize)], next: usize, k: u32, opened: u32, used: &mut [u32]) -> bool {
    let Some(&(a, b)) = ends.get(next) else {
        return true;
    };
    let limit = (opened + 1).min(k);
    for c in 0..limit {
        let bit = 1u32 << c;
        if (used[a] | used[b]) & bit != 0 {
            continue;
        }
        used[a] |= bit;
        used[b] |= bit;
        if assign(ends, next + 1, k, opened.max(c + 1), used) {
            return true;
        }
        used[a] &= !bit;
        used[b] &= !bit;
    }
    false
}
