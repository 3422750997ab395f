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

//! Acceptance checks. Each criterion prints one PASS/FAIL line with the
//! measured numbers; the process exits non-zero if any criterion fails.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use wstream_core::bipartite::BipartiteConfig;
use wstream_core::verify::{check_complete, palette_is_bipartite};
use wstream_core::{
    chromatic_index_bruteforce, color_vizing, colour_budget, default_s, generate, run_colourer,
    run_stream, verify, worst_case_stream, AdjacencyGraph, Algo, BipartiteColourer, BudgetParams,
    ChunkConfig, ChunkSubroutine, ChunkedColourer, ColourId, EdgeStream, GraphFamily, OrderKind,
    PaletteKey, RunOutcome, StreamColourer,
};

struct Check {
    id: u32,
    name: &'static str,
    pass: bool,
    detail: String,
}

impl Check {
    fn new(id: u32, name: &'static str, pass: bool, detail: String) -> Self {
        Check {
            id,
            name,
            pass,
            detail,
        }
    }
}

fn stream(family: &str, order: OrderKind, seed: u64) -> EdgeStream {
    let family: GraphFamily = family.parse().expect("family");
    generate(&family, order.arrival(seed), seed).expect("generate")
}

fn mean(xs: impl IntoIterator<Item = f64>) -> f64 {
    let (sum, count) = xs
        .into_iter()
        .fold((0.0, 0usize), |(s, c), x| (s + x, c + 1));
    sum / count.max(1) as f64
}

const CHUNK: Algo = Algo::Chunk {
    alpha: None,
    subroutine: ChunkSubroutine::Vizing,
};

fn chunk(alpha: u32) -> Algo {
    Algo::Chunk {
        alpha: Some(alpha),
        subroutine: ChunkSubroutine::Vizing,
    }
}

/// Criterion 1, whose chunked and bipartite runs feed criteria 2 and 4.
fn properness(out: &mut Vec<Check>) -> Vec<RunOutcome> {
    let corpus = [
        "complete:50",
        "bipartite:30:30",
        "star:500",
        "gnp:1000:0.01",
        "regular:1000:3",
    ];
    let orders = [
        OrderKind::Random,
        OrderKind::AsGiven,
        OrderKind::StarBatched,
    ];
    let algos = [
        CHUNK,
        Algo::Bipartite {
            s: None,
            strict: false,
        },
    ];
    let started = Instant::now();
    let mut runs = Vec::new();
    let mut bad = Vec::new();
    for family in corpus {
        for order in orders {
            for seed in 0..5 {
                let s = stream(family, order, seed);
                for algo in algos {
                    let o = run_colourer(&s, algo, seed).expect("run");
                    if !o.report.proper || !o.report.conflicts.is_empty() {
                        bad.push(format!("{family}/{order}/{seed}/{algo}"));
                    }
                    runs.push(o);
                }
            }
        }
    }
    let elapsed = started.elapsed();
    out.push(Check::new(
        1,
        "properness",
        bad.is_empty() && elapsed < Duration::from_secs(60),
        format!(
            "{} runs, {} improper {:?}, {:.2}s (limit 60s)",
            runs.len(),
            bad.len(),
            bad,
            elapsed.as_secs_f64()
        ),
    ));
    runs
}

/// Criteria 2 and 3, plus the chunked half of criterion 7.
fn chunked(out: &mut Vec<Check>, earlier: &[RunOutcome]) -> ChunkSpace {
    let alphas = [4u32, 8, 16];
    let mut means = Vec::new();
    let mut budget_fail = earlier
        .iter()
        .filter(|o| o.algo.name() == "chunk" && !o.budget_ok)
        .count();
    let mut delta = 0;
    let mut ratios = Vec::new();
    let mut runs = 0;
    let mut c7 = Vec::new();
    for &alpha in &alphas {
        let mut colours = Vec::new();
        for seed in 0..10 {
            let s = stream("complete:128", OrderKind::Random, seed);
            let o = run_colourer(&s, chunk(alpha), seed).expect("run");
            runs += 1;
            delta = o.report.max_degree;
            budget_fail += usize::from(!o.budget_ok);
            colours.push(o.report.distinct_colours as f64);
            if alpha == 16 {
                let c = wstream_core::chunk_concentration(&o.transcript).expect("concentration");
                ratios.push(c.mean_chunk_max_ratio());
            }
            c7.push(o);
        }
        means.push(mean(colours));
    }
    let monotone = means.windows(2).all(|w| w[1] <= w[0]);
    let limit = 1.6 * delta as f64;
    out.push(Check::new(
        2,
        "chunked colour bound and trend",
        budget_fail == 0 && monotone && means[2] <= limit,
        format!(
            "Σ(Δ_i+1) violations {budget_fail} over {} runs; K_128 means α=4,8,16: {:.1}, {:.1}, {:.1}; \
             α=16 mean {:.1} vs 1.6Δ = {limit:.1}",
            runs + earlier.iter().filter(|o| o.algo.name() == "chunk").count(),
            means[0],
            means[1],
            means[2],
            means[2]
        ),
    ));
    let in_range = ratios.iter().all(|r| (0.5..=2.0).contains(r));
    let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    out.push(Check::new(
        3,
        "chunk concentration",
        in_range && !ratios.is_empty(),
        format!("α=16 per-run mean chunk ratio in [{lo:.3}, {hi:.3}] (allowed [0.5, 2.0])"),
    ));

    // Extra fills for the buffer identity: small α on K_128 and a sparse graph.
    for (family, alpha) in [
        ("complete:128", 1),
        ("complete:128", 2),
        ("complete:128", 3),
        ("gnp:1000:0.01", 2),
    ] {
        for seed in 0..3 {
            let s = stream(family, OrderKind::Random, seed);
            c7.push(run_colourer(&s, chunk(alpha), seed).expect("run"));
        }
    }
    let mut checked = 0;
    let mut wrong = Vec::new();
    for o in c7
        .iter()
        .chain(earlier.iter().filter(|o| o.algo.name() == "chunk"))
    {
        let capacity = ChunkConfig::new(o.n(), o.param).expect("config").capacity();
        if o.m() >= capacity {
            checked += 1;
            if o.peak_buffered != capacity {
                wrong.push((o.param, o.peak_buffered, capacity));
            }
        }
    }
    // The streaming driver directly, without the experiment wrapper.
    let s = stream("complete:128", OrderKind::Random, 99);
    let mut c = ChunkedColourer::new(ChunkConfig::new(128, 2).expect("config"));
    let t = run_stream(&mut c, &s).expect("run");
    checked += 1;
    if c.peak_buffered() != c.config().capacity() || !verify(&t).proper {
        wrong.push((2, c.peak_buffered(), c.config().capacity()));
    }
    ChunkSpace { checked, wrong }
}

/// Buffer-fill results for criterion 7: runs checked and `(α, peak, C)` mismatches.
struct ChunkSpace {
    checked: usize,
    wrong: Vec<(u32, usize, usize)>,
}

struct BipartiteRun {
    s: u32,
    delta: u32,
    colours: usize,
    overflow: u64,
    peak: u64,
    n: usize,
    stride: usize,
}

/// Criteria 4 and 5, plus the bipartite half of criterion 7.
fn bipartite(out: &mut Vec<Check>, earlier: &[RunOutcome], space: ChunkSpace) {
    let n = 2048;
    let s_default = default_s(n);
    let mut runs = Vec::new();
    let mut budget_fail = earlier
        .iter()
        .filter(|o| o.algo.name() == "bipartite" && !o.budget_ok)
        .count();
    let mut budget_runs = earlier
        .iter()
        .filter(|o| o.algo.name() == "bipartite")
        .count();
    let mut not_bipartite = 0usize;
    let mut coverage_fail = 0usize;
    let mut pair_below = 0u64;
    let mut pair_min = u32::MAX;
    for seed in 0..20u64 {
        let g = stream("gnp:2048:0.05", OrderKind::Random, seed);
        for s in [4u32, 8, 16, s_default] {
            let mut c = BipartiteColourer::new(BipartiteConfig::new(n, s, seed).strict(true))
                .expect("colourer");
            let t = run_stream(&mut c, &g).expect("run");
            check_complete(&t, &g).expect("complete");
            let report = verify(&t);
            assert!(report.proper, "improper bipartite run s={s} seed={seed}");
            let budget = colour_budget(&report, BudgetParams::Bipartite { s }).expect("budget");
            budget_runs += 1;
            budget_fail += usize::from(!budget.pass);

            // Every triple edge crosses bit i, seen three ways.
            let sig = c.signatures();
            for a in &t.records {
                if let ColourId::Triple { i, .. } = a.colour {
                    not_bipartite += usize::from(sig.bit(a.edge.u, i) == sig.bit(a.edge.v, i));
                }
            }
            let classes = if s <= 16 { 0..s } else { 0..0 };
            let mut routed = 0;
            for i in classes.clone() {
                let b = c.bipartite_subgraph(&t, i).expect("subgraph");
                routed += b.len();
                not_bipartite += b
                    .iter()
                    .filter(|e| sig.bit(e.left, i) || !sig.bit(e.right, i))
                    .count();
                not_bipartite += usize::from(!palette_is_bipartite(&t, PaletteKey::Bit(i)));
            }
            if s <= 16 && routed as u64 + c.overflow_count() != t.len() as u64 {
                coverage_fail += 1;
            }
            if s == s_default {
                let scan = sig.pair_distance_scan(s as f64 / 4.0);
                pair_below += scan.below;
                pair_min = pair_min.min(scan.min.unwrap_or(u32::MAX));
            }
            runs.push(BipartiteRun {
                s,
                delta: report.max_degree,
                colours: report.distinct_colours,
                overflow: c.overflow_count(),
                peak: c.meter().peak_words(),
                n,
                stride: sig.stride(),
            });
        }
    }

    let mut trend_ok = true;
    let mut parts = Vec::new();
    for s in [4u32, 8, 16] {
        let rs: Vec<_> = runs.iter().filter(|r| r.s == s).collect();
        let colours = mean(rs.iter().map(|r| r.colours as f64));
        let delta = mean(rs.iter().map(|r| r.delta as f64));
        let limit = 1.5 * delta * delta / s as f64;
        trend_ok &= colours <= limit;
        parts.push(format!(
            "s={s}: mean colours {colours:.0} vs 1.5Δ²/s = {limit:.0} (ratio {:.2})",
            colours / (delta * delta / s as f64)
        ));
    }
    let overflow_default: u64 = runs
        .iter()
        .filter(|r| r.s == s_default)
        .map(|r| r.overflow)
        .sum();
    out.push(Check::new(
        4,
        "bipartite colour bound and trend",
        budget_fail == 0 && trend_ok && overflow_default == 0,
        format!(
            "s·maxdeg² violations {budget_fail} over {budget_runs} runs; {}; overflow at s={s_default}: {overflow_default}",
            parts.join("; ")
        ),
    ));
    out.push(Check::new(
        5,
        "bipartiteness and differing bits",
        not_bipartite == 0 && coverage_fail == 0 && pair_below == 0,
        format!(
            "edges off bit i {not_bipartite}, coverage mismatches {coverage_fail}; s={s_default}: \
             pairs below s/4 across 20 seeds {pair_below}, min differing bits {pair_min}"
        ),
    ));

    let ChunkSpace { checked, wrong } = space;
    let small: Vec<_> = runs.iter().filter(|r| r.s <= 64).collect();
    let over = small
        .iter()
        .filter(|r| r.peak > (r.n as u64) * (r.s as u64 + 1) + 3)
        .count();
    let large = runs.iter().find(|r| r.s > 64).expect("default s run");
    let identity = runs
        .iter()
        .all(|r| r.peak == (r.n as u64) * (r.s as u64 + r.stride as u64) + 3);
    out.push(Check::new(
        7,
        "space accounting",
        wrong.is_empty() && over == 0 && identity,
        format!(
            "chunked: {checked} runs with m ≥ C, peak ≠ C in {:?}; strict bipartite (s ≤ 16): \
             {over} of {} runs above n·s + n + 3; s={}: peak {} = n·s + n·{} + 3",
            wrong,
            small.len(),
            large.s,
            large.peak,
            large.stride
        ),
    ));
}

fn worst_case(out: &mut Vec<Check>) {
    let mut details = Vec::new();
    let mut pass = true;
    for seed in 0..3 {
        let started = Instant::now();
        let config = BipartiteConfig::new(65_536, 8, seed).exposed(true);
        let mut c = BipartiteColourer::new(config).expect("colourer");
        let o = worst_case_stream(&mut c, 64).expect("adversary");
        let elapsed = started.elapsed();
        let report = verify(&o.transcript);
        let colours = o.distinct_colours();
        let ok = colours >= 128
            && o.vertices_used <= 100_000
            && o.max_degree() <= 64
            && report.duplicate_edges == 0
            && report.proper
            && elapsed < Duration::from_secs(10);
        pass &= ok;
        details.push(format!(
            "seed {seed}: {colours} colours, {} vertices, max degree {}, {:.2}s",
            o.vertices_used,
            o.max_degree(),
            elapsed.as_secs_f64()
        ));
    }
    out.push(Check::new(
        6,
        "worst-case adversary",
        pass,
        details.join("; "),
    ));
}

// ---------------------------------------------------------------------------
// Exhaustive small graphs for the offline colourer.

const MAX_V: usize = 9;

fn pair_bit(a: usize, b: usize) -> u64 {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    1 << (b * (b - 1) / 2 + a)
}

/// Smallest edge bitmask over all relabellings that respect a degree-based
/// vertex partition. Connected graphs only, so the vertex count is implied.
fn canonical(n: usize, edges: &[(usize, usize)]) -> u64 {
    let mut adj = [0u16; MAX_V];
    for &(a, b) in edges {
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    let deg = |v: usize| adj[v].count_ones();
    let invariant = |v: usize| {
        let mut nd: Vec<u32> = (0..n).filter(|&w| adj[v] >> w & 1 == 1).map(deg).collect();
        nd.sort_unstable();
        (deg(v), nd)
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| invariant(v));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for v in order {
        match classes.last_mut() {
            Some(c) if invariant(c[0]) == invariant(v) => c.push(v),
            _ => classes.push(vec![v]),
        }
    }
    let mut perm = [usize::MAX; MAX_V];
    let mut best = u64::MAX;
    search(&classes, 0, 0, &mut perm, edges, &mut best);
    best
}

fn search(
    classes: &[Vec<usize>],
    k: usize,
    next: usize,
    perm: &mut [usize; MAX_V],
    edges: &[(usize, usize)],
    best: &mut u64,
) {
    let Some(class) = classes.get(k) else {
        let code = edges
            .iter()
            .fold(0, |acc, &(a, b)| acc | pair_bit(perm[a], perm[b]));
        *best = (*best).min(code);
        return;
    };
    let mut members = class.clone();
    permute(&mut members, 0, &mut |m| {
        for (offset, &v) in m.iter().enumerate() {
            perm[v] = next + offset;
        }
        search(classes, k + 1, next + m.len(), perm, edges, best);
    });
}

fn permute(items: &mut Vec<usize>, at: usize, visit: &mut dyn FnMut(&[usize])) {
    if at == items.len() {
        visit(items);
        return;
    }
    for i in at..items.len() {
        items.swap(at, i);
        permute(items, at + 1, visit);
        items.swap(at, i);
    }
}

fn decode(code: u64) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for b in 1..MAX_V {
        for a in 0..b {
            if code & pair_bit(a, b) != 0 {
                edges.push((a, b));
            }
        }
    }
    edges
}

/// All connected graphs with 1..=max_m edges, one per isomorphism class.
fn connected_graphs(max_m: usize) -> Vec<Vec<Vec<(usize, usize)>>> {
    let mut levels = vec![vec![vec![(0, 1)]]];
    while levels.len() < max_m {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in levels.last().expect("level") {
            let n = g.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
            let mut grow = |extra: (usize, usize), n: usize| {
                let mut h = g.clone();
                h.push(extra);
                let code = canonical(n, &h);
                if seen.insert(code) {
                    next.push(decode(code));
                }
            };
            for b in 1..n {
                for a in 0..b {
                    if !g.contains(&(a, b)) {
                        grow((a, b), n);
                    }
                }
            }
            if n < MAX_V {
                for a in 0..n {
                    grow((a, n), n + 1);
                }
            }
        }
        levels.push(next);
    }
    levels
}

/// Independent check: can the edges be coloured with `k` colours?
fn colourable(edges: &[(u32, u32)], k: u32) -> bool {
    fn go(edges: &[(u32, u32)], at: usize, k: u32, colour: &mut Vec<u32>) -> bool {
        if at == edges.len() {
            return true;
        }
        let (u, v) = edges[at];
        for c in 0..k {
            let clash = edges[..at]
                .iter()
                .zip(colour.iter())
                .any(|(&(a, b), &d)| d == c && (a == u || a == v || b == u || b == v));
            if !clash {
                colour.push(c);
                if go(edges, at + 1, k, colour) {
                    return true;
                }
                colour.pop();
            }
        }
        false
    }
    go(edges, 0, k, &mut Vec::new())
}

fn offline(out: &mut Vec<Check>) {
    let levels = connected_graphs(8);
    let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
    let expected = [1, 1, 3, 5, 12, 30, 79, 227];
    let mut failures = Vec::new();
    let mut tested = 0;
    for g in levels.iter().flatten() {
        let pairs: Vec<(u32, u32)> = g.iter().map(|&(a, b)| (a as u32, b as u32)).collect();
        let graph = AdjacencyGraph::from_pairs(&pairs).expect("graph");
        let col = color_vizing(&graph);
        let optimum = chromatic_index_bruteforce(&graph).expect("brute force");
        tested += 1;
        if !col.is_proper(&graph)
            || col.colour_count() as u32 > graph.max_degree() + 1
            || (col.colour_count() as u32) < optimum
        {
            failures.push(format!("{pairs:?}"));
        }
    }
    let petersen: Vec<(u32, u32)> = (0..5)
        .flat_map(|i| [(i, (i + 1) % 5), (i, i + 5), (i + 5, (i + 2) % 5 + 5)])
        .collect();
    let p = AdjacencyGraph::from_pairs(&petersen).expect("petersen");
    let pc = color_vizing(&p);
    let p_index = if colourable(&petersen, 3) { 3 } else { 4 };
    let p_ok = pc.is_proper(&p) && pc.colour_count() <= 4 && pc.colour_count() >= p_index;
    let k4: Vec<(u32, u32)> = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let k = AdjacencyGraph::from_pairs(&k4).expect("k4");
    let kc = color_vizing(&k);
    let k_index = chromatic_index_bruteforce(&k).expect("k4 index");
    let k_ok = kc.is_proper(&k) && kc.colour_count() <= 4 && kc.colour_count() as u32 >= k_index;
    out.push(Check::new(
        8,
        "offline colourer",
        counts == expected && failures.is_empty() && p_ok && k_ok,
        format!(
            "{tested} connected graphs (per edge count {counts:?}), failures {failures:?}; \
             Petersen {} colours (index {p_index}); K4 {} colours (index {k_index})",
            pc.colour_count(),
            kc.colour_count()
        ),
    ));
}

fn main() -> ExitCode {
    let mut checks = Vec::new();
    let runs = properness(&mut checks);
    let space = chunked(&mut checks, &runs);
    bipartite(&mut checks, &runs, space);
    worst_case(&mut checks);
    offline(&mut checks);
    checks.sort_by_key(|c| c.id);

    let mut failed = 0;
    for c in &checks {
        let verdict = if c.pass { "PASS" } else { "FAIL" };
        println!("criterion {} ({}): {verdict} | {}", c.id, c.name, c.detail);
        failed += usize::from(!c.pass);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        checks.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
