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

use std::fs::OpenOptions;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use wstream_core::bipartite::BipartiteConfig;
use wstream_core::experiment::{experiment_csv, EXPERIMENT_CSV_VERSION};
use wstream_core::format::{
    load_edge_list, load_transcript, save_edge_list, save_transcript, write_edge_list,
    write_transcript,
};
use wstream_core::verify::{check_complete, chunk_concentration};
use wstream_core::{
    color_greedy, color_vizing, generate, run_colourer, run_experiment, worst_case_stream,
    AdjacencyGraph, Algo, Announcement, BipartiteColourer, ChunkSubroutine, ColourId, Error,
    ExperimentSpec, GraphFamily, OrderKind, RunOutcome, Transcript,
};

/// W-streaming edge colouring: generate streams, colour them, verify the output.
#[derive(Debug, Parser)]
#[command(name = "wstream", version)]
struct Cli {
    /// Directory that relative output paths are written under.
    #[arg(long, global = true, env = "WSTREAM_OUT_DIR")]
    out_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write an edge stream for a graph family and arrival order.
    Generate(GenerateArgs),
    /// Colour an edge-list file with one streaming colourer.
    Run(RunArgs),
    /// Check a transcript for properness and report colour statistics.
    Verify(VerifyArgs),
    /// Colour a whole graph offline (debugging aid).
    ColorOffline(OfflineArgs),
    /// Build the worst-case stream against a bit-signature colourer.
    WorstCase(WorstCaseArgs),
    /// Run generate -> colour -> verify over parameters and seeds, emitting CSV.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
struct GenerateArgs {
    /// complete:N | bipartite:A:B | star:T | gnp:N:P | regular:N:D | file:PATH
    #[arg(long)]
    family: GraphFamily,
    /// random | as-given | sorted | star-batched
    #[arg(long, default_value = "as-given")]
    order: OrderKind,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file (stdout if omitted).
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AlgoName {
    Chunk,
    ChunkGreedy,
    Bipartite,
    GreedyBaseline,
}

#[derive(Debug, Args)]
struct RunArgs {
    #[arg(long, value_enum)]
    algo: AlgoName,
    /// Edge-list file to colour.
    #[arg(long, short)]
    input: PathBuf,
    /// Chunk parameter α (chunk size α²n); defaults to ⌈log₂ n⌉.
    #[arg(long)]
    alpha: Option<u32>,
    /// Signature length s; defaults to ⌈36 ln n⌉.
    #[arg(long)]
    s: Option<u32>,
    /// Charge the worst-case n·s counter words up front.
    #[arg(long)]
    strict: bool,
    /// Seed for the colourer's randomness.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Where to write the transcript.
    #[arg(long, short)]
    transcript: Option<PathBuf>,
    /// Append the metrics row to this CSV file instead of stdout.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    transcript: PathBuf,
    /// The input graph; when given, the transcript must cover it exactly.
    graph: Option<PathBuf>,
    /// Print one machine-readable CSV row instead of the report.
    #[arg(long)]
    csv: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OfflineMethod {
    Vizing,
    Greedy,
}

#[derive(Debug, Args)]
struct OfflineArgs {
    graph: PathBuf,
    #[arg(long, value_enum, default_value = "vizing")]
    method: OfflineMethod,
    /// Transcript output (stdout if omitted).
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct WorstCaseArgs {
    /// Maximum degree Δ of the emitted graph.
    #[arg(long)]
    delta: u32,
    #[arg(long)]
    s: u32,
    /// Vertex pool size.
    #[arg(long, default_value_t = 65_536)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Let the adversary read the colourer's signatures and index choices.
    #[arg(long)]
    expose_randomness: bool,
    #[arg(long, default_value = "worst-case.edges")]
    stream: PathBuf,
    #[arg(long, default_value = "worst-case.transcript")]
    transcript: PathBuf,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long)]
    family: GraphFamily,
    #[arg(long, default_value = "random")]
    order: OrderKind,
    #[arg(long, value_enum)]
    algo: AlgoName,
    /// Comma-separated α values (chunk) or s values (bipartite); default parameter if omitted.
    #[arg(long, value_delimiter = ',')]
    param: Vec<u32>,
    /// Seeds as a list `1,2,5` or a half-open range `0..10`.
    #[arg(long, default_value = "0")]
    seeds: String,
    #[arg(long)]
    strict: bool,
    /// CSV output (stdout if omitted).
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Directory to write every transcript into.
    #[arg(long)]
    transcripts: Option<PathBuf>,
    /// Add a wall-clock column.
    #[arg(long)]
    timing: bool,
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CliResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out_dir = cli.out_dir.clone();
    let resolve = |p: &Path| match &out_dir {
        Some(dir) if p.is_relative() => dir.join(p),
        _ => p.to_path_buf(),
    };
    let result = match cli.command {
        Command::Generate(a) => cmd_generate(a, &resolve),
        Command::Run(a) => cmd_run(a, &resolve),
        Command::Verify(a) => cmd_verify(a),
        Command::ColorOffline(a) => cmd_color_offline(a, &resolve),
        Command::WorstCase(a) => cmd_worst_case(a, &resolve),
        Command::Sweep(a) => cmd_sweep(a, &resolve),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn ensure_parent(path: &Path) -> io::Result<()> {
    match path.parent() {
        Some(dir) if !dir.as_os_str().is_empty() => std::fs::create_dir_all(dir),
        _ => Ok(()),
    }
}

fn cmd_generate(a: GenerateArgs, resolve: &dyn Fn(&Path) -> PathBuf) -> CliResult {
    let stream = generate(&a.family, a.order.arrival(a.seed), a.seed)?;
    match a.out {
        Some(p) => {
            let p = resolve(&p);
            ensure_parent(&p)?;
            save_edge_list(&p, &stream)?;
            eprintln!(
                "wrote {} edges on {} vertices to {}",
                stream.len(),
                stream.n(),
                p.display()
            );
        }
        None => write_edge_list(io::stdout().lock(), &stream)?,
    }
    Ok(())
}

fn algo_for(name: AlgoName, alpha: Option<u32>, s: Option<u32>, strict: bool) -> Algo {
    match name {
        AlgoName::Chunk => Algo::Chunk {
            alpha,
            subroutine: ChunkSubroutine::Vizing,
        },
        AlgoName::ChunkGreedy => Algo::Chunk {
            alpha,
            subroutine: ChunkSubroutine::Greedy,
        },
        AlgoName::Bipartite => Algo::Bipartite { s, strict },
        AlgoName::GreedyBaseline => Algo::GreedyBaseline,
    }
}

fn cmd_run(a: RunArgs, resolve: &dyn Fn(&Path) -> PathBuf) -> CliResult {
    let stream = load_edge_list(&a.input)?;
    let algo = algo_for(a.algo, a.alpha, a.s, a.strict);
    let outcome = run_colourer(&stream, algo, a.seed)?;
    if let Some(p) = &a.transcript {
        let p = resolve(p);
        ensure_parent(&p)?;
        save_transcript(&p, &outcome.transcript)?;
    }
    emit_run_row(&outcome, a.csv.as_deref().map(resolve))?;
    if !outcome.report.proper {
        return Err(Failure::Verification(format!(
            "{} conflicts",
            outcome.report.conflicts.len()
        )));
    }
    if !outcome.budget_ok {
        return Err(Failure::Verification(
            "colour count exceeds the per-run bound".into(),
        ));
    }
    Ok(())
}

fn emit_run_row(outcome: &RunOutcome, csv: Option<PathBuf>) -> io::Result<()> {
    let header = RunOutcome::csv_header(outcome.algo);
    match csv {
        Some(path) => {
            ensure_parent(&path)?;
            let fresh = !path.exists() || std::fs::metadata(&path)?.len() == 0;
            let mut f = OpenOptions::new().create(true).append(true).open(&path)?;
            if fresh {
                writeln!(f, "# wstream run csv v1 ({})", outcome.algo)?;
                writeln!(f, "{header}")?;
            }
            writeln!(f, "{}", outcome.csv_row())
        }
        None => {
            let mut out = io::stdout().lock();
            writeln!(out, "{header}")?;
            writeln!(out, "{}", outcome.csv_row())
        }
    }
}

fn cmd_verify(a: VerifyArgs) -> CliResult {
    let transcript = load_transcript(&a.transcript)?;
    let report = wstream_core::verify(&transcript);
    let complete = match &a.graph {
        Some(g) => check_complete(&transcript, &load_edge_list(g)?).map_err(|e| e.to_string()),
        None => Ok(()),
    };
    if a.csv {
        println!("proper,edges,colours,overflow,duplicates,max_degree,max_palette_degree,palettes,conflicts,complete");
        println!(
            "{},{},{},{},{},{},{},{},{},{}",
            report.proper,
            report.edges,
            report.distinct_colours,
            report.overflow_colours,
            report.duplicate_edges,
            report.max_degree,
            report.max_palette_degree(),
            report.per_palette.len(),
            report.conflicts.len(),
            complete.is_ok()
        );
    } else {
        println!(
            "proper:             {}",
            if report.proper { "yes" } else { "no" }
        );
        println!("edges:              {}", report.edges);
        println!("distinct colours:   {}", report.distinct_colours);
        println!("overflow colours:   {}", report.overflow_colours);
        println!("duplicate edges:    {}", report.duplicate_edges);
        println!("max degree:         {}", report.max_degree);
        println!("palettes:           {}", report.per_palette.len());
        println!("max palette degree: {}", report.max_palette_degree());
        if let Ok(c) = chunk_concentration(&transcript) {
            println!("chunks:             {}", c.chunks);
            println!("mean chunk ratio:   {:.4}", c.mean_chunk_max_ratio());
            println!("max vertex ratio:   {:.4}", c.max_ratio);
        }
        if let Some(g) = &a.graph {
            println!(
                "covers {}: {}",
                g.display(),
                if complete.is_ok() { "yes" } else { "no" }
            );
        }
        for c in report.conflicts.iter().take(20) {
            println!(
                "conflict: ({}) and ({}) share vertex {} with colour {}",
                c.first, c.second, c.vertex, c.colour
            );
        }
        if report.conflicts.len() > 20 {
            println!("... {} more conflicts", report.conflicts.len() - 20);
        }
    }
    if !report.proper {
        return Err(Failure::Verification(format!(
            "{} conflicts",
            report.conflicts.len()
        )));
    }
    complete.map_err(Failure::Verification)
}

fn cmd_color_offline(a: OfflineArgs, resolve: &dyn Fn(&Path) -> PathBuf) -> CliResult {
    let stream = load_edge_list(&a.graph)?;
    let g = AdjacencyGraph::from_edges(&stream.edges)?;
    let colouring = match a.method {
        OfflineMethod::Vizing => color_vizing(&g),
        OfflineMethod::Greedy => color_greedy(&g),
    };
    let mut transcript = Transcript::new(stream.header);
    transcript.extend(
        stream
            .edges
            .iter()
            .zip(&colouring.colours)
            .map(|(&e, &local)| Announcement::new(e, ColourId::Chunk { chunk: 0, local })),
    );
    eprintln!(
        "max degree {}, {} colours, proper: {}",
        g.max_degree(),
        colouring.colour_count(),
        colouring.is_proper(&g)
    );
    match a.out {
        Some(p) => {
            let p = resolve(&p);
            ensure_parent(&p)?;
            save_transcript(p, &transcript)?;
        }
        None => write_transcript(io::stdout().lock(), &transcript)?,
    }
    Ok(())
}

fn cmd_worst_case(a: WorstCaseArgs, resolve: &dyn Fn(&Path) -> PathBuf) -> CliResult {
    let config = BipartiteConfig::new(a.n, a.s, a.seed).exposed(a.expose_randomness);
    let mut colourer = BipartiteColourer::new(config)?;
    let outcome = worst_case_stream(&mut colourer, a.delta)?;
    let (stream_path, transcript_path) = (resolve(&a.stream), resolve(&a.transcript));
    ensure_parent(&stream_path)?;
    ensure_parent(&transcript_path)?;
    save_edge_list(&stream_path, &outcome.stream)?;
    save_transcript(&transcript_path, &outcome.transcript)?;
    let report = wstream_core::verify(&outcome.transcript);
    println!("delta,s,n,edges,vertices_used,max_degree,targets_hit,targets_missed,distinct_colours,proper");
    println!(
        "{},{},{},{},{},{},{},{},{},{}",
        a.delta,
        a.s,
        a.n,
        outcome.stream.len(),
        outcome.vertices_used,
        outcome.max_degree(),
        outcome.targets_hit,
        outcome.targets_missed,
        report.distinct_colours,
        report.proper
    );
    if !report.proper {
        return Err(Failure::Verification(format!(
            "{} conflicts",
            report.conflicts.len()
        )));
    }
    Ok(())
}

fn parse_seeds(spec: &str) -> Result<Vec<u64>, Failure> {
    let bad = || Failure::Usage(format!("bad seed list `{spec}` (use `1,2,3` or `0..10`)"));
    if let Some((lo, hi)) = spec.split_once("..") {
        let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: u64 = hi.trim().parse().map_err(|_| bad())?;
        return Ok((lo..hi).collect());
    }
    spec.split(',')
        .map(|t| t.trim().parse().map_err(|_| bad()))
        .collect()
}

fn cmd_sweep(a: SweepArgs, resolve: &dyn Fn(&Path) -> PathBuf) -> CliResult {
    let seeds = parse_seeds(&a.seeds)?;
    let params: Vec<Option<u32>> = if a.param.is_empty() {
        vec![None]
    } else {
        a.param.iter().copied().map(Some).collect()
    };
    let mut rows = Vec::new();
    for param in params {
        let spec = ExperimentSpec {
            family: a.family.clone(),
            order: a.order,
            algo: algo_for(a.algo, param, param, a.strict),
            seeds: seeds.clone(),
            transcript_dir: a.transcripts.as_deref().map(resolve),
            timing: a.timing,
        };
        rows.extend(run_experiment(&spec)?);
    }
    let csv = experiment_csv(&rows, a.timing);
    debug_assert!(csv.starts_with(EXPERIMENT_CSV_VERSION));
    match a.out {
        Some(p) => {
            let p = resolve(&p);
            ensure_parent(&p)?;
            std::fs::write(&p, csv)?;
        }
        None => io::stdout().lock().write_all(csv.as_bytes())?,
    }
    let improper = rows
        .iter()
        .filter(|r| {
            r.outcome
                .as_ref()
                .is_ok_and(|o| !o.report.proper || !o.budget_ok)
        })
        .count();
    if improper > 0 {
        return Err(Failure::Verification(format!(
            "{improper} runs failed verification"
        )));
    }
    Ok(())
}
