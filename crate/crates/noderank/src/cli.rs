//! Command-line pipeline: ingest, rank, simulate, correlate, rerank, eval.
//!
//! Exit codes: 0 on success, 1 on usage errors (including parameter values
//! that violate their invariants), 2 on data errors. Diagnostics go to
//! stderr; data goes to files or stdout only. Identical invocations on
//! identical inputs produce byte-identical outputs.

use std::collections::HashMap;
use std::ffi::OsString;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::centrality::{
    fatigued_pagerank_with_blocks, hits, indegree_score, pagerank_with_blocks, reverse_pagerank,
    ConvergenceReport, RankingConfig, SinkMode,
};
use crate::correlation::{correlation_at_cuts_named, write_correlation_csv};
use crate::error::{Error, Result};
use crate::graph::SparseGraph;
use crate::ingest::{join_clickstream, read_clickstream_tsv, read_edge_tsv, read_gml, visits, write_gml};
use crate::rerank::{
    evaluate_run, rerank_run, write_effectiveness_csv, Qrels, RunFile, TransformKind,
    TransformParams,
};
use crate::scores::{read_scores_tsv, write_scores_tsv, ScoreVector};
use crate::simulate::{simulate_explorer, simulate_surfer, ExplorerConfig};

#[derive(Debug, Parser)]
#[command(
    name = "noderank",
    version,
    about = "Sparse directed-graph node ranking and evaluation pipeline"
)]
struct Cli {
    /// Worker threads for block-parallel power iteration.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    /// Print extra diagnostics to stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Read a graph file (optionally joining clickstream counts) and write
    /// it out as GML.
    Ingest(IngestArgs),
    /// Compute a node-ranking metric; writes `label<TAB>score` sorted by
    /// descending score.
    Rank(RankArgs),
    /// Monte Carlo random-surfer / random-explorer visit frequencies.
    Simulate(SimulateArgs),
    /// Correlate a score file against ground-truth visits at ranking cuts.
    Correlate(CorrelateArgs),
    /// Add transformed graph evidence to a baseline run file.
    Rerank(RerankArgs),
    /// Score a run file against relevance judgments.
    Eval(EvalArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Tsv,
    Gml,
}

#[derive(Debug, Args)]
struct GraphInput {
    /// Input graph file.
    input: PathBuf,

    /// Input format; inferred from the extension when omitted
    /// (.gml/.gml.gz mean GML, anything else is edge TSV).
    #[arg(long, value_enum)]
    format: Option<GraphFormat>,

    /// Treat the input as gzip-compressed (implied by a .gz extension).
    #[arg(long)]
    gzip: bool,
}

#[derive(Debug, Args)]
struct IngestArgs {
    #[command(flatten)]
    graph: GraphInput,

    /// Clickstream TSV (`prev curr type count`) to join onto the edges.
    #[arg(long)]
    clickstream: Option<PathBuf>,

    /// Keep only clickstream rows of this link type.
    #[arg(long, default_value = "link")]
    link_type_filter: String,

    /// Output path (stdout when omitted); a .gz suffix gzips the output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Metric {
    Indegree,
    Visits,
    Pagerank,
    ReversePagerank,
    FatiguedPagerank,
    HitsAuthority,
    HitsHub,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SinkModeArg {
    Uniform,
    PaperLiteral,
}

#[derive(Debug, Args)]
struct RankArgs {
    #[command(flatten)]
    graph: GraphInput,

    #[arg(long, value_enum)]
    metric: Metric,

    /// Damping factor (0 < alpha < 1).
    #[arg(long, default_value_t = 0.85)]
    alpha: f64,

    /// Fatigue smoothing constant (beta >= 0).
    #[arg(long, default_value_t = 0.1)]
    beta: f64,

    /// Convergence tolerance on the L2 residual (epsilon > 0).
    #[arg(long, default_value_t = 0.001)]
    epsilon: f64,

    #[arg(long, default_value_t = 1000)]
    max_iter: usize,

    /// Sink-column handling for the pagerank family.
    #[arg(long, value_enum, default_value_t = SinkModeArg::Uniform)]
    sink_mode: SinkModeArg,

    /// Output path (stdout when omitted).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WalkMode {
    Surfer,
    Explorer,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[command(flatten)]
    graph: GraphInput,

    #[arg(long, value_enum)]
    mode: WalkMode,

    /// Walk length in steps.
    #[arg(long, default_value_t = 1_000_000)]
    steps: u64,

    /// Fatigue span: how many recent distinct nodes the explorer avoids.
    #[arg(long, default_value_t = 2)]
    span: usize,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Probability of following a link instead of teleporting.
    #[arg(long, default_value_t = 0.85)]
    alpha: f64,

    /// Output path (stdout when omitted).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CorrelateArgs {
    /// Score TSV (`label<TAB>score`), e.g. the output of `rank`.
    #[arg(long)]
    scores: PathBuf,

    /// Ground-truth visits TSV in the same format.
    #[arg(long)]
    visits: PathBuf,

    /// Comma-separated ranking cut sizes, strictly ascending.
    #[arg(long, default_value = "10,25,100,250,500,1000,2500,5000,10000", value_delimiter = ',')]
    cuts: Vec<usize>,

    /// Metric name for the report (default: the scores file stem).
    #[arg(long)]
    metric_name: Option<String>,

    /// Output path (stdout when omitted).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct RerankArgs {
    /// Baseline run file (TREC `topic Q0 docid rank score tag`).
    #[arg(long)]
    run: PathBuf,

    /// Graph score TSV keyed by document id.
    #[arg(long)]
    scores: PathBuf,

    #[arg(long, value_enum, default_value_t = TransformArg::Sigm)]
    transform: TransformArg,

    /// Transform weight (w > 0).
    #[arg(long, default_value_t = 1.8)]
    w: f64,

    /// Transform shape parameter (k > 0; unused by log).
    #[arg(long, default_value_t = 1.0)]
    k: f64,

    /// Sigm exponent (a > 0).
    #[arg(long, default_value_t = 0.6)]
    a: f64,

    /// Multiplier applied to graph scores before the transform.
    #[arg(long, default_value_t = 1.0)]
    scale: f64,

    /// Output run file.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TransformArg {
    Sigm,
    Log,
    Satu,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long)]
    run: PathBuf,

    /// Relevance judgments (`topic 0 docid relevance`).
    #[arg(long)]
    qrels: PathBuf,

    /// Output path (stdout when omitted).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

/// Parse arguments and run; returns the process exit code.
pub fn dispatch<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return 0;
        }
        Err(e) => {
            eprint!("{e}");
            return 1;
        }
    };

    if cli.threads == 0 {
        eprintln!("error: invalid configuration: threads must be at least 1");
        return 1;
    }
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };

    let verbose = cli.verbose;
    match pool.install(|| run(cli)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            if verbose > 0 {
                let mut source = std::error::Error::source(&e);
                while let Some(s) = source {
                    eprintln!("  caused by: {s}");
                    source = s.source();
                }
            }
            match e {
                Error::Config(_) => 1,
                _ => 2,
            }
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Ingest(args) => run_ingest(args, cli.verbose),
        Command::Rank(args) => run_rank(args, cli.threads, cli.verbose),
        Command::Simulate(args) => run_simulate(args),
        Command::Correlate(args) => run_correlate(args),
        Command::Rerank(args) => run_rerank(args),
        Command::Eval(args) => run_eval(args),
    }
}

fn load_graph(input: &GraphInput) -> Result<SparseGraph> {
    let name = input.input.to_string_lossy();
    let gzipped = input.gzip || name.ends_with(".gz");
    let format = input.format.unwrap_or_else(|| {
        if name.ends_with(".gml") || name.ends_with(".gml.gz") {
            GraphFormat::Gml
        } else {
            GraphFormat::Tsv
        }
    });
    match format {
        GraphFormat::Gml => read_gml(&input.input, gzipped),
        GraphFormat::Tsv if gzipped => {
            let file = std::fs::File::open(&input.input).map_err(|e| Error::io(&input.input, e))?;
            let decoder = flate2::read::MultiGzDecoder::new(file);
            crate::ingest::read_edge_tsv_from(std::io::BufReader::new(decoder), &input.input)
        }
        GraphFormat::Tsv => read_edge_tsv(&input.input),
    }
}

/// Run `write` against the output file, or stdout when no path is given.
fn with_output(
    output: Option<&Path>,
    write: impl FnOnce(&mut dyn Write) -> std::io::Result<()>,
) -> Result<()> {
    match output {
        Some(path) => {
            let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
            let mut w = BufWriter::new(file);
            write(&mut w)
                .and_then(|_| w.flush())
                .map_err(|e| Error::io(path, e))
        }
        None => {
            let stdout = std::io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            write(&mut w)
                .and_then(|_| w.flush())
                .map_err(|e| Error::io("<stdout>", e))
        }
    }
}

fn run_ingest(args: IngestArgs, verbose: u8) -> Result<()> {
    let mut graph = load_graph(&args.graph)?;
    if let Some(clickstream) = &args.clickstream {
        let records = read_clickstream_tsv(clickstream)?;
        let (joined, stats) = join_clickstream(&graph, records, Some(&args.link_type_filter))?;
        eprintln!(
            "clickstream: {} matched, {} skipped ({} filtered by type, {} unknown labels, {} missing edges)",
            stats.matched,
            stats.skipped(),
            stats.skipped_type,
            stats.skipped_unknown_label,
            stats.skipped_missing_edge
        );
        graph = joined;
    }
    eprintln!("graph: {} nodes, {} edges", graph.num_nodes(), graph.num_edges());
    match &args.output {
        Some(path) => {
            let gz = path.to_string_lossy().ends_with(".gz");
            write_gml(&graph, path, gz)?;
            if verbose > 0 {
                eprintln!("wrote {}", path.display());
            }
            Ok(())
        }
        None => with_output(None, |w| crate::ingest::write_gml_to(&graph, w)),
    }
}

fn report_convergence(report: &ConvergenceReport) {
    if report.converged {
        eprintln!(
            "converged after {} iteration(s), final residual {:e}",
            report.iterations_used, report.final_residual
        );
    } else {
        eprintln!(
            "did not converge within {} iteration(s), final residual {:e}",
            report.iterations_used, report.final_residual
        );
    }
}

fn run_rank(args: RankArgs, threads: usize, verbose: u8) -> Result<()> {
    let cfg = RankingConfig {
        alpha: args.alpha,
        beta: args.beta,
        epsilon: args.epsilon,
        max_iterations: args.max_iter,
        sink_mode: match args.sink_mode {
            SinkModeArg::Uniform => SinkMode::UniformTeleport,
            SinkModeArg::PaperLiteral => SinkMode::PaperLiteral,
        },
        normalize_each_step: true,
    };
    // Validate every numeric flag before touching any input file.
    cfg.validate()?;

    let graph = load_graph(&args.graph)?;
    let blocks = threads.max(1);
    let scores: ScoreVector = match args.metric {
        Metric::Indegree => indegree_score(&graph),
        Metric::Visits => visits(&graph),
        Metric::Pagerank => {
            let (s, report) = pagerank_with_blocks(&graph, &cfg, blocks)?;
            report_convergence(&report);
            s
        }
        Metric::ReversePagerank => {
            let (s, report) = reverse_pagerank(&graph, &cfg)?;
            report_convergence(&report);
            s
        }
        Metric::FatiguedPagerank => {
            let (s, report) = fatigued_pagerank_with_blocks(&graph, &cfg, blocks)?;
            report_convergence(&report);
            s
        }
        Metric::HitsAuthority | Metric::HitsHub => {
            let (auth, hub, report) = hits(&graph, cfg.epsilon, cfg.max_iterations)?;
            report_convergence(&report);
            if args.metric == Metric::HitsAuthority {
                auth
            } else {
                hub
            }
        }
    };
    if verbose > 0 {
        eprintln!("metric {} over {} nodes", scores.kind().name(), scores.len());
    }
    with_output(args.output.as_deref(), |w| write_scores_tsv(w, &graph, &scores))
}

fn run_simulate(args: SimulateArgs) -> Result<()> {
    let cfg = ExplorerConfig {
        steps: args.steps,
        alpha: args.alpha,
        fatigue_span: args.span,
        rng_seed: args.seed,
    };
    cfg.validate()?;
    let graph = load_graph(&args.graph)?;
    let frequencies = match args.mode {
        WalkMode::Surfer => simulate_surfer(&graph, &cfg)?,
        WalkMode::Explorer => simulate_explorer(&graph, &cfg)?,
    };
    with_output(args.output.as_deref(), |w| {
        write_scores_tsv(w, &graph, &frequencies)
    })
}

fn run_correlate(args: CorrelateArgs) -> Result<()> {
    if args.cuts.is_empty() {
        return Err(Error::Config("at least one cut size is required".into()));
    }
    if args.cuts.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Config("cuts must be strictly ascending".into()));
    }
    let score_rows = read_scores_tsv(&args.scores)?;
    let visit_rows = read_scores_tsv(&args.visits)?;
    let visit_map: HashMap<&str, f64> = visit_rows
        .iter()
        .map(|(label, value)| (label.as_str(), *value))
        .collect();

    // Align by label in scores-file order; labels without ground truth get
    // zero visits (absent information).
    let mut missing = 0usize;
    let scores: Vec<f64> = score_rows.iter().map(|(_, v)| *v).collect();
    let visit_values: Vec<f64> = score_rows
        .iter()
        .map(|(label, _)| {
            visit_map.get(label.as_str()).copied().unwrap_or_else(|| {
                missing += 1;
                0.0
            })
        })
        .collect();
    if missing > 0 {
        eprintln!("{missing} label(s) missing from the visits file; counted as 0 visits");
    }

    let name = match &args.metric_name {
        Some(name) => name.clone(),
        None => args
            .scores
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "scores".to_string()),
    };
    let report = correlation_at_cuts_named(&name, &scores, &visit_values, &args.cuts)?;
    for k in &report.skipped_cuts {
        eprintln!("cut {k} exceeds the number of nodes; skipped");
    }
    with_output(args.output.as_deref(), |w| write_correlation_csv(w, &report))
}

fn run_rerank(args: RerankArgs) -> Result<()> {
    let params = TransformParams {
        kind: match args.transform {
            TransformArg::Sigm => TransformKind::Sigm,
            TransformArg::Log => TransformKind::Log,
            TransformArg::Satu => TransformKind::Satu,
        },
        w: args.w,
        k: args.k,
        a: args.a,
    };
    params.validate()?;
    if !(args.scale > 0.0 && args.scale.is_finite()) {
        return Err(Error::Config(format!(
            "scale must satisfy scale > 0, got {}",
            args.scale
        )));
    }
    let baseline = RunFile::read(&args.run)?;
    let graph_scores: HashMap<String, f64> = read_scores_tsv(&args.scores)?
        .into_iter()
        .map(|(label, value)| (label, value * args.scale))
        .collect();
    let reranked = rerank_run(&baseline, &graph_scores, &params)?;
    with_output(Some(&args.out), |w| reranked.write(w))?;
    eprintln!(
        "reranked {} topic(s), {} entries",
        reranked.num_topics(),
        reranked.entries().len()
    );
    Ok(())
}

fn run_eval(args: EvalArgs) -> Result<()> {
    let run = RunFile::read(&args.run)?;
    let qrels = Qrels::read(&args.qrels)?;
    let report = evaluate_run(&run, &qrels)?;
    for warning in &report.warnings {
        eprintln!("warning: {warning}");
    }
    with_output(args.output.as_deref(), |w| {
        write_effectiveness_csv(w, &report)
    })
}
