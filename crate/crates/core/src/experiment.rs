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

//! Reproducible generate → colour → verify pipelines and their CSV rows.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::bipartite::{default_s, BipartiteColourer, BipartiteConfig};
use crate::chunked::{ChunkConfig, ChunkSubroutine, ChunkSummary, ChunkedColourer};
use crate::colourer::{run_stream, GreedyStreamColourer, StreamColourer};
use crate::error::{Error, Result};
use crate::format::save_transcript;
use crate::generators::{generate, GraphFamily, OrderKind};
use crate::rng::derive_seed;
use crate::stream::EdgeStream;
use crate::transcript::Transcript;
use crate::verify::{check_complete, colour_budget, verify, BudgetParams, VerificationReport};

const COLOURER_TAG: u64 = 0xC0;

/// First line of every experiment CSV.
pub const EXPERIMENT_CSV_VERSION: &str = "# wstream experiment csv v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algo {
    /// Chunked colouring; `alpha` defaults to `⌈log₂ n⌉`.
    Chunk {
        alpha: Option<u32>,
        subroutine: ChunkSubroutine,
    },
    /// Bit-signature colouring; `s` defaults to `⌈36 ln n⌉`.
    Bipartite {
        s: Option<u32>,
        strict: bool,
    },
    GreedyBaseline,
}

impl Algo {
    pub fn name(&self) -> &'static str {
        match self {
            Algo::Chunk { .. } => "chunk",
            Algo::Bipartite { .. } => "bipartite",
            Algo::GreedyBaseline => "greedy-baseline",
        }
    }

    /// The `α` or `s` this algorithm will use on `n` vertices; 0 for greedy.
    pub fn param(&self, n: usize) -> u32 {
        match *self {
            Algo::Chunk { alpha, .. } => alpha.unwrap_or_else(|| crate::chunked::default_alpha(n)),
            Algo::Bipartite { s, .. } => s.unwrap_or_else(|| default_s(n)),
            Algo::GreedyBaseline => 0,
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Everything measured on one colouring run.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub algo: Algo,
    pub param: u32,
    pub transcript: Transcript,
    pub report: VerificationReport,
    pub budget_ok: bool,
    pub peak_words: u64,
    /// Chunked runs: chunk summaries and the largest buffer fill.
    pub chunks: Vec<ChunkSummary>,
    pub peak_buffered: usize,
    pub overflow: u64,
    pub wall_time: Duration,
}

impl RunOutcome {
    pub fn n(&self) -> usize {
        self.transcript.header.n
    }

    pub fn m(&self) -> usize {
        self.transcript.len()
    }

    /// Header for [`csv_row`](Self::csv_row); depends on the algorithm.
    pub fn csv_header(algo: Algo) -> &'static str {
        match algo {
            Algo::Chunk { .. } => "n,m,max_degree,alpha,chunks,colours,peak_words,wall_time_s",
            Algo::Bipartite { .. } => {
                "n,m,max_degree,s,colours,overflow_count,max_bi_degree,peak_words,wall_time_s"
            }
            Algo::GreedyBaseline => "n,m,max_degree,colours,peak_words,wall_time_s",
        }
    }

    pub fn csv_row(&self) -> String {
        let r = &self.report;
        let wall = self.wall_time.as_secs_f64();
        match self.algo {
            Algo::Chunk { .. } => format!(
                "{},{},{},{},{},{},{},{wall:.6}",
                self.n(),
                self.m(),
                r.max_degree,
                self.param,
                self.chunks.len(),
                r.distinct_colours,
                self.peak_words
            ),
            Algo::Bipartite { .. } => format!(
                "{},{},{},{},{},{},{},{},{wall:.6}",
                self.n(),
                self.m(),
                r.max_degree,
                self.param,
                r.distinct_colours,
                self.overflow,
                r.max_palette_degree(),
                self.peak_words
            ),
            Algo::GreedyBaseline => format!(
                "{},{},{},{},{},{wall:.6}",
                self.n(),
                self.m(),
                r.max_degree,
                r.distinct_colours,
                self.peak_words
            ),
        }
    }
}

/// Colours `stream` with `algo`, drawing colourer randomness from `seed`,
/// then verifies the transcript and checks the exact colour bound.
pub fn run_colourer(stream: &EdgeStream, algo: Algo, seed: u64) -> Result<RunOutcome> {
    let n = stream.n();
    let param = algo.param(n);
    let started = Instant::now();
    let (transcript, peak_words, chunks, peak_buffered, overflow) = match algo {
        Algo::Chunk { subroutine, .. } => {
            let mut c = ChunkedColourer::with_subroutine(ChunkConfig::new(n, param)?, subroutine);
            let t = run_stream(&mut c, stream)?;
            (
                t,
                c.meter().peak_words(),
                c.chunks().to_vec(),
                c.peak_buffered(),
                0,
            )
        }
        Algo::Bipartite { strict, .. } => {
            let config = BipartiteConfig::new(n, param, seed).strict(strict);
            let mut c = BipartiteColourer::new(config)?;
            let t = run_stream(&mut c, stream)?;
            (t, c.meter().peak_words(), Vec::new(), 0, c.overflow_count())
        }
        Algo::GreedyBaseline => {
            let mut c = GreedyStreamColourer::new(n);
            let t = run_stream(&mut c, stream)?;
            (t, c.meter().peak_words(), Vec::new(), 0, 0)
        }
    };
    let wall_time = started.elapsed();
    check_complete(&transcript, stream)?;
    let report = verify(&transcript);
    let budget_ok = match algo {
        Algo::Chunk {
            subroutine: ChunkSubroutine::Vizing,
            ..
        } => colour_budget(&report, BudgetParams::Chunked)?.pass,
        Algo::Bipartite { .. } => {
            colour_budget(&report, BudgetParams::Bipartite { s: param })?.pass
        }
        // greedy has no Δ+1 guarantee to check
        _ => true,
    };
    Ok(RunOutcome {
        algo,
        param,
        transcript,
        report,
        budget_ok,
        peak_words,
        chunks,
        peak_buffered,
        overflow,
        wall_time,
    })
}

/// One sweep: a graph family and order, an algorithm, and the seeds to run.
#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub family: GraphFamily,
    pub order: OrderKind,
    pub algo: Algo,
    pub seeds: Vec<u64>,
    /// Where to write `<algo>-<param>-seed<k>.transcript` files, if anywhere.
    pub transcript_dir: Option<PathBuf>,
    /// Append a wall-clock column (makes output nondeterministic).
    pub timing: bool,
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<()> {
        if self.seeds.is_empty() {
            return Err(Error::validation("experiment needs at least one seed"));
        }
        match self.algo {
            Algo::Chunk { alpha: Some(0), .. } => {
                Err(Error::validation("alpha must be at least 1"))
            }
            Algo::Bipartite { s: Some(0), .. } => Err(Error::validation("s must be at least 1")),
            _ => self.family.validate(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentRow {
    pub seed: u64,
    pub family: String,
    pub order: OrderKind,
    pub algo: Algo,
    pub outcome: std::result::Result<RunOutcome, String>,
}

impl ExperimentRow {
    pub fn csv_header(timing: bool) -> String {
        let mut h = String::from(
            "seed,family,order,algo,param,n,m,max_degree,chunks,colours,overflow,max_palette_degree,peak_words,proper,budget_ok,error",
        );
        if timing {
            h.push_str(",wall_time_s");
        }
        h
    }

    pub fn csv_row(&self, timing: bool) -> String {
        let prefix = format!("{},{},{},{}", self.seed, self.family, self.order, self.algo);
        let mut row = match &self.outcome {
            Ok(o) => format!(
                "{prefix},{},{},{},{},{},{},{},{},{},{},{},",
                o.param,
                o.n(),
                o.m(),
                o.report.max_degree,
                o.report.chunk_count(),
                o.report.distinct_colours,
                o.overflow,
                o.report.max_palette_degree(),
                o.peak_words,
                o.report.proper,
                o.budget_ok
            ),
            Err(e) => format!("{prefix},,,,,,,,,,false,false,\"{}\"", e.replace('"', "'")),
        };
        if timing {
            match &self.outcome {
                Ok(o) => row.push_str(&format!(",{:.6}", o.wall_time.as_secs_f64())),
                Err(_) => row.push(','),
            }
        }
        row
    }
}

fn run_seed(spec: &ExperimentSpec, seed: u64) -> Result<RunOutcome> {
    let stream = generate(&spec.family, spec.order.arrival(seed), seed)?;
    let outcome = run_colourer(&stream, spec.algo, derive_seed(seed, COLOURER_TAG))?;
    if let Some(dir) = &spec.transcript_dir {
        let name = format!("{}-{}-seed{seed}.transcript", spec.algo, outcome.param);
        save_transcript(dir.join(name), &outcome.transcript)?;
    }
    Ok(outcome)
}

/// Runs every seed of `spec` (in parallel; rows come back in seed order).
/// A failing seed produces an error row and does not stop the others.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<Vec<ExperimentRow>> {
    spec.validate()?;
    if let Some(dir) = &spec.transcript_dir {
        std::fs::create_dir_all(dir)?;
    }
    let family = spec.family.to_string();
    Ok(spec
        .seeds
        .par_iter()
        .map(|&seed| ExperimentRow {
            seed,
            family: family.clone(),
            order: spec.order,
            algo: spec.algo,
            outcome: run_seed(spec, seed).map_err(|e| e.to_string()),
        })
        .collect())
}

/// Full CSV text for a set of rows, including the version line.
pub fn experiment_csv(rows: &[ExperimentRow], timing: bool) -> String {
    let mut out = format!(
        "{EXPERIMENT_CSV_VERSION}\n{}\n",
        ExperimentRow::csv_header(timing)
    );
    for r in rows {
        out.push_str(&r.csv_row(timing));
        out.push('\n');
    }
    out
}

impl FromStr for Algo {
    type Err = Error;

    /// `chunk`, `chunk-greedy`, `bipartite` or `greedy-baseline`, with
    /// default parameters.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "chunk" => Ok(Algo::Chunk {
                alpha: None,
                subroutine: ChunkSubroutine::Vizing,
            }),
            "chunk-greedy" => Ok(Algo::Chunk {
                alpha: None,
                subroutine: ChunkSubroutine::Greedy,
            }),
            "bipartite" => Ok(Algo::Bipartite { s: None, strict: false }),
            "greedy-baseline" => Ok(Algo::GreedyBaseline),
            _ => Err(Error::validation(format!(
                "unknown algorithm `{s}` (expected chunk, chunk-greedy, bipartite or greedy-baseline)"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chunk_spec(seeds: Vec<u64>) -> ExperimentSpec {
        ExperimentSpec {
            family: GraphFamily::Complete(8),
            order: OrderKind::Random,
            algo: Algo::Chunk {
                alpha: Some(1),
                subroutine: ChunkSubroutine::Vizing,
            },
            seeds,
            transcript_dir: None,
            timing: false,
        }
    }

    #[test]
    fn one_seed_one_proper_row() {
        let rows = run_experiment(&chunk_spec(vec![3])).unwrap();
        assert_eq!(rows.len(), 1);
        let o = rows[0].outcome.as_ref().unwrap();
        assert!(o.report.proper);
        assert!(o.budget_ok);
        assert_eq!(o.m(), 28);
        // C = 8 edges per chunk, 28 edges -> 4 chunks
        assert_eq!(o.chunks.len(), 4);
    }

    #[test]
    fn identical_seeds_give_identical_rows() {
        let rows = run_experiment(&chunk_spec(vec![5, 5])).unwrap();
        assert_eq!(rows[0].csv_row(false), rows[1].csv_row(false));
        let again = run_experiment(&chunk_spec(vec![5, 5])).unwrap();
        assert_eq!(experiment_csv(&rows, false), experiment_csv(&again, false));
    }

    #[test]
    fn failing_seed_becomes_error_row() {
        let spec = ExperimentSpec {
            family: GraphFamily::FromFile("/nonexistent/graph.txt".into()),
            ..chunk_spec(vec![1, 2])
        };
        let rows = run_experiment(&spec).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows.iter().all(|r| r.outcome.is_err()));
        assert!(rows[0].csv_row(false).contains("false,false,\""));
    }

    #[test]
    fn spec_validation() {
        assert!(run_experiment(&chunk_spec(vec![])).is_err());
        let mut spec = chunk_spec(vec![1]);
        spec.algo = Algo::Bipartite {
            s: Some(0),
            strict: false,
        };
        assert!(run_experiment(&spec).is_err());
    }

    #[test]
    fn writes_transcripts() {
        let dir = tempfile::tempdir().unwrap();
        let mut spec = chunk_spec(vec![0]);
        spec.algo = Algo::Bipartite {
            s: Some(4),
            strict: true,
        };
        spec.transcript_dir = Some(dir.path().to_path_buf());
        let rows = run_experiment(&spec).unwrap();
        assert!(rows[0].outcome.as_ref().unwrap().report.proper);
        let t = crate::format::load_transcript(dir.path().join("bipartite-4-seed0.transcript"))
            .unwrap();
        assert_eq!(t.len(), 28);
    }

    #[test]
    fn algo_names_parse() {
        for name in ["chunk", "chunk-greedy", "bipartite", "greedy-baseline"] {
            assert!(name.parse::<Algo>().is_ok());
        }
        assert!("vizing".parse::<Algo>().is_err());
    }
}
