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

//! Reproducible edge streams: graph families and arrival orders.

use std::collections::{BinaryHeap, HashSet};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::edge::Edge;
use crate::error::{Error, Result};
use crate::format::load_edge_list;
use crate::rng::{derive_seed, SplitMix64};
use crate::stream::{vertex, EdgeStream};

const GRAPH_TAG: u64 = 0x6A;
const ORDER_TAG: u64 = 0x0D;

#[derive(Debug, Clone, PartialEq)]
pub enum GraphFamily {
    /// `K_n`, edges in lexicographic order.
    Complete(usize),
    /// `K_{a,b}` with left side `0..a` and right side `a..a+b`.
    CompleteBipartite(usize, usize),
    /// Centre `0` joined to leaves `1..=t`.
    Star(usize),
    /// Erdős–Rényi `G(n, p)`.
    Gnp(usize, f64),
    /// Uniform-ish random `d`-regular simple graph (pairing model with
    /// local rejection).
    RandomRegular(usize, usize),
    FromFile(PathBuf),
}

impl GraphFamily {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Validation(m));
        match *self {
            GraphFamily::Complete(0) => bad("complete graph needs n >= 1".into()),
            GraphFamily::CompleteBipartite(a, b) if a + b == 0 => {
                bad("complete bipartite graph needs a + b >= 1".into())
            }
            GraphFamily::Gnp(0, _) => bad("G(n, p) needs n >= 1".into()),
            GraphFamily::Gnp(_, p) if !(0.0..=1.0).contains(&p) => {
                bad(format!("p = {p} outside [0, 1]"))
            }
            GraphFamily::RandomRegular(n, d) if d >= n => {
                bad(format!("regular degree {d} must be < n = {n}"))
            }
            GraphFamily::RandomRegular(n, d) if (n * d) % 2 != 0 => {
                bad(format!("n·d = {} must be even", n * d))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphFamily::Complete(n) => write!(f, "complete:{n}"),
            GraphFamily::CompleteBipartite(a, b) => write!(f, "bipartite:{a}:{b}"),
            GraphFamily::Star(t) => write!(f, "star:{t}"),
            GraphFamily::Gnp(n, p) => write!(f, "gnp:{n}:{p}"),
            GraphFamily::RandomRegular(n, d) => write!(f, "regular:{n}:{d}"),
            GraphFamily::FromFile(path) => write!(f, "file:{}", path.display()),
        }
    }
}

impl FromStr for GraphFamily {
    type Err = Error;

    /// `complete:N`, `bipartite:A:B`, `star:T`, `gnp:N:P`, `regular:N:D`,
    /// `file:PATH`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::validation(format!(
                "unknown family `{s}` (expected complete:N, bipartite:A:B, star:T, gnp:N:P, regular:N:D or file:PATH)"
            ))
        };
        if let Some(path) = s.strip_prefix("file:") {
            return Ok(GraphFamily::FromFile(PathBuf::from(path)));
        }
        let parts: Vec<&str> = s.split(':').collect();
        let int = |t: &str| t.parse::<usize>().map_err(|_| bad());
        let family = match parts.as_slice() {
            ["complete", n] => GraphFamily::Complete(int(n)?),
            ["bipartite", a, b] => GraphFamily::CompleteBipartite(int(a)?, int(b)?),
            ["star", t] => GraphFamily::Star(int(t)?),
            ["gnp", n, p] => GraphFamily::Gnp(int(n)?, p.parse().map_err(|_| bad())?),
            ["regular", n, d] => GraphFamily::RandomRegular(int(n)?, int(d)?),
            _ => return Err(bad()),
        };
        family.validate()?;
        Ok(family)
    }
}

/// Stress orders for colourers whose guarantees must not depend on order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SortPolicy {
    /// Canonical edges in lexicographic order.
    ByEndpoint,
    /// Repeatedly emit every remaining edge of the vertex with the most
    /// remaining edges (ties to the smaller id).
    StarBatched,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArrivalOrder {
    /// Uniformly random permutation drawn from the given seed.
    UniformRandomPermutation(u64),
    AsGiven,
    AdversarialSorted(SortPolicy),
}

/// An arrival order without its seed, as named on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    Random,
    AsGiven,
    Sorted,
    StarBatched,
}

impl OrderKind {
    /// The concrete order for one experiment seed.
    pub fn arrival(self, seed: u64) -> ArrivalOrder {
        match self {
            OrderKind::Random => {
                ArrivalOrder::UniformRandomPermutation(derive_seed(seed, ORDER_TAG))
            }
            OrderKind::AsGiven => ArrivalOrder::AsGiven,
            OrderKind::Sorted => ArrivalOrder::AdversarialSorted(SortPolicy::ByEndpoint),
            OrderKind::StarBatched => ArrivalOrder::AdversarialSorted(SortPolicy::StarBatched),
        }
    }
}

impl FromStr for OrderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(OrderKind::Random),
            "as-given" => Ok(OrderKind::AsGiven),
            "sorted" => Ok(OrderKind::Sorted),
            "star-batched" => Ok(OrderKind::StarBatched),
            _ => Err(Error::validation(format!(
                "unknown order `{s}` (expected random, as-given, sorted or star-batched)"
            ))),
        }
    }
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderKind::Random => "random",
            OrderKind::AsGiven => "as-given",
            OrderKind::Sorted => "sorted",
            OrderKind::StarBatched => "star-batched",
        })
    }
}

impl ArrivalOrder {
    /// Puts `edges` into this order in place.
    pub fn apply(&self, n: usize, edges: &mut Vec<Edge>) {
        match *self {
            ArrivalOrder::AsGiven => {}
            ArrivalOrder::UniformRandomPermutation(seed) => {
                edges.shuffle(&mut SplitMix64::new(seed));
            }
            ArrivalOrder::AdversarialSorted(SortPolicy::ByEndpoint) => {
                for e in edges.iter_mut() {
                    *e = e.canonical();
                }
                edges.sort();
            }
            ArrivalOrder::AdversarialSorted(SortPolicy::StarBatched) => {
                *edges = star_batched(n, edges);
            }
        }
    }
}

fn star_batched(n: usize, edges: &[Edge]) -> Vec<Edge> {
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (idx, e) in edges.iter().enumerate() {
        incident[e.u.index()].push(idx);
        incident[e.v.index()].push(idx);
    }
    let mut remaining: Vec<usize> = incident.iter().map(Vec::len).collect();
    let mut taken = vec![false; edges.len()];
    // (remaining degree, reversed id) so ties pop the smaller id first
    let mut heap: BinaryHeap<(usize, std::cmp::Reverse<usize>)> = (0..n)
        .filter(|&v| remaining[v] > 0)
        .map(|v| (remaining[v], std::cmp::Reverse(v)))
        .collect();
    let mut out = Vec::with_capacity(edges.len());
    while let Some((deg, std::cmp::Reverse(centre))) = heap.pop() {
        if deg != remaining[centre] || deg == 0 {
            continue;
        }
        let mut batch: Vec<usize> = incident[centre]
            .iter()
            .copied()
            .filter(|&i| !taken[i])
            .collect();
        batch.sort_by_key(|&i| {
            let e = edges[i];
            if e.u.index() == centre {
                e.v
            } else {
                e.u
            }
        });
        for i in batch {
            taken[i] = true;
            let e = edges[i];
            let other = if e.u.index() == centre {
                e.v.index()
            } else {
                e.u.index()
            };
            remaining[other] -= 1;
            if remaining[other] > 0 {
                heap.push((remaining[other], std::cmp::Reverse(other)));
            }
            out.push(e);
        }
        remaining[centre] = 0;
    }
    out
}

/// Builds `family` (randomised from `seed` where it is random) and puts the
/// edges in `order`.
pub fn generate(family: &GraphFamily, order: ArrivalOrder, seed: u64) -> Result<EdgeStream> {
    family.validate()?;
    let mut rng = SplitMix64::new(derive_seed(seed, GRAPH_TAG));
    let (n, mut edges) = match *family {
        GraphFamily::Complete(n) => (n, complete(n)),
        GraphFamily::CompleteBipartite(a, b) => (a + b, complete_bipartite(a, b)),
        GraphFamily::Star(t) => (t + 1, (1..=t).map(|l| edge(0, l)).collect()),
        GraphFamily::Gnp(n, p) => (n, gnp(n, p, &mut rng)),
        GraphFamily::RandomRegular(n, d) => (n, random_regular(n, d, &mut rng)?),
        GraphFamily::FromFile(ref path) => {
            let s = load_edge_list(path)?;
            reject_duplicates(&s.edges)?;
            (s.n(), s.edges)
        }
    };
    order.apply(n, &mut edges);
    let mut stream = EdgeStream::new(n, edges)?;
    stream.header.seed = Some(seed);
    Ok(stream)
}

fn edge(u: usize, v: usize) -> Edge {
    Edge {
        u: vertex(u),
        v: vertex(v),
    }
}

fn complete(n: usize) -> Vec<Edge> {
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            out.push(edge(u, v));
        }
    }
    out
}

fn complete_bipartite(a: usize, b: usize) -> Vec<Edge> {
    let mut out = Vec::with_capacity(a * b);
    for u in 0..a {
        for v in a..a + b {
            out.push(edge(u, v));
        }
    }
    out
}

fn gnp(n: usize, p: f64, rng: &mut SplitMix64) -> Vec<Edge> {
    let mut out = Vec::new();
    if p == 0.0 {
        return out;
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                out.push(edge(u, v));
            }
        }
    }
    out
}

/// Pairs up `d` points per vertex one pair at a time, rejecting loops and
/// repeated edges; restarts when no legal pair is left.
fn random_regular(n: usize, d: usize, rng: &mut SplitMix64) -> Result<Vec<Edge>> {
    const RESTARTS: usize = 1000;
    'attempt: for _ in 0..RESTARTS {
        let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
        let mut present: HashSet<(usize, usize)> = HashSet::with_capacity(n * d / 2);
        let mut out = Vec::with_capacity(n * d / 2);
        while !points.is_empty() {
            let mut misses = 0;
            loop {
                let i = rng.random_range(0..points.len());
                let j = rng.random_range(0..points.len());
                let (a, b) = (points[i], points[j]);
                let key = (a.min(b), a.max(b));
                if i != j && a != b && !present.contains(&key) {
                    present.insert(key);
                    out.push(edge(key.0, key.1));
                    let (hi, lo) = (i.max(j), i.min(j));
                    points.swap_remove(hi);
                    points.swap_remove(lo);
                    break;
                }
                misses += 1;
                if misses > 64 && !has_legal_pair(&points, &present) {
                    continue 'attempt;
                }
                if misses > 64 {
                    misses = 0;
                }
            }
        }
        return Ok(out);
    }
    Err(Error::validation(format!(
        "could not build a simple {d}-regular graph on {n} vertices"
    )))
}

fn has_legal_pair(points: &[usize], present: &HashSet<(usize, usize)>) -> bool {
    let distinct: Vec<usize> = {
        let mut v = points.to_vec();
        v.sort_unstable();
        v.dedup();
        v
    };
    distinct.iter().enumerate().any(|(x, &a)| {
        distinct[x + 1..]
            .iter()
            .any(|&b| !present.contains(&(a.min(b), a.max(b))))
    })
}

fn reject_duplicates(edges: &[Edge]) -> Result<()> {
    let mut seen = HashSet::with_capacity(edges.len());
    for e in edges {
        if !seen.insert(e.canonical()) {
            return Err(Error::validation(format!("duplicate edge {e}")));
        }
    }
    Ok(())
}
