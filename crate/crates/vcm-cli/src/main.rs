//! CLI for connectivity scoring over weighted edge lists.
//!
//! Subcommands: `score`, `rank`, `sweep`, `compare`, `ingest`. Output is
//! JSON by default or TSV with `--format tsv`; every record echoes the
//! effective parameters so a run can be reproduced from its output.
//!
//! Exit codes: 0 success, 1 usage error, 2 file or parse error, 3 unknown
//! vertex.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use vcm::analysis::{self, Method, MethodParams, RankEntry};
use vcm::engine::VcmParams;
use vcm::graph::Graph;
use vcm::ingest;

#[derive(Parser)]
#[command(name = "vcm", version, about = "Pairwise vertex connectivity scoring for weighted graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Connectivity score from one source vertex to one target
    Score(ScoreArgs),
    /// Top-k connectivity ranking from a source vertex
    Rank(RankArgs),
    /// Rankings across a list of alpha values
    Sweep(SweepArgs),
    /// Rankings from several proximity methods plus overlap statistics
    Compare(CompareArgs),
    /// Aggregate a (source, destination) event CSV into a weighted edge list
    Ingest(IngestArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Args)]
struct GraphArgs {
    /// Weighted edge list (WEL) file
    #[arg(long)]
    graph: PathBuf,
    /// Treat input edges as undirected (both arc directions, full weight)
    #[arg(long)]
    undirected: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct VcmArgs {
    /// Attenuation factor applied per level
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    /// Exchange scores along intra-level edges before each level propagates
    #[arg(long)]
    level_share: bool,
    /// Combine incoming forward contributions by maximum instead of sum
    #[arg(long)]
    input_max: bool,
}

impl VcmArgs {
    fn params(&self, alpha: f64) -> VcmParams {
        VcmParams {
            alpha,
            level_share: self.level_share,
            input_max: self.input_max,
        }
    }
}

#[derive(Args)]
struct ScoreArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long)]
    source: String,
    #[arg(long)]
    target: String,
    #[command(flatten)]
    vcm: VcmArgs,
}

#[derive(Args)]
struct RankArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long)]
    source: String,
    #[command(flatten)]
    vcm: VcmArgs,
    /// Number of entries to keep
    #[arg(long, default_value_t = 10)]
    top: usize,
    /// Keep only vertices at this BFS level from the source
    #[arg(long)]
    level: Option<i32>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long)]
    source: String,
    /// Comma-separated alpha values, one ranking column each
    #[arg(long)]
    alphas: String,
    #[command(flatten)]
    vcm: VcmArgs,
    #[arg(long, default_value_t = 10)]
    top: usize,
    #[arg(long)]
    level: Option<i32>,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long)]
    source: String,
    /// Comma-separated subset of vcm,katz,communicability,maxflow,escape
    #[arg(long, default_value = "vcm,katz,communicability,maxflow,escape")]
    methods: String,
    #[command(flatten)]
    vcm: VcmArgs,
    #[arg(long, default_value_t = 0.33)]
    katz_alpha: f64,
    /// Continuation probability for the escape-probability walk
    #[arg(long, default_value_t = 0.9)]
    escape_c: f64,
    #[arg(long, default_value_t = 10)]
    top: usize,
}

#[derive(Args)]
struct IngestArgs {
    /// CSV of raw (source, destination) event records
    #[arg(long)]
    pairs: PathBuf,
    /// 0-based column holding the source label
    #[arg(long, default_value_t = 0)]
    src_col: usize,
    /// 0-based column holding the destination label
    #[arg(long, default_value_t = 1)]
    dst_col: usize,
    /// Skip the first row
    #[arg(long)]
    header: bool,
    /// Merge (a,b) with (b,a) before counting
    #[arg(long)]
    undirected: bool,
    /// Output WEL path
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

// ---------------------------------------------------------------------------
// Output records
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct EntryOut {
    rank: usize,
    label: String,
    score: f64,
    level: i32,
}

fn entries_out(entries: &[RankEntry]) -> Vec<EntryOut> {
    entries
        .iter()
        .enumerate()
        .map(|(i, e)| EntryOut {
            rank: i + 1,
            label: e.label.clone(),
            score: e.score,
            level: e.level,
        })
        .collect()
}

#[derive(Serialize)]
struct ParamEcho {
    command: &'static str,
    graph: String,
    undirected: bool,
    source: String,
    alpha: f64,
    level_share: bool,
    input_max: bool,
}

#[derive(Serialize)]
struct ScoreOut {
    #[serde(flatten)]
    params: ParamEcho,
    target: String,
    score: f64,
}

#[derive(Serialize)]
struct RankOut {
    #[serde(flatten)]
    params: ParamEcho,
    top: usize,
    level_filter: Option<i32>,
    entries: Vec<EntryOut>,
}

#[derive(Serialize)]
struct SweepColumnOut {
    alpha: f64,
    entries: Vec<EntryOut>,
}

#[derive(Serialize)]
struct SweepOut {
    #[serde(flatten)]
    params: ParamEcho,
    alphas: Vec<f64>,
    top: usize,
    level_filter: Option<i32>,
    columns: Vec<SweepColumnOut>,
}

#[derive(Serialize)]
struct MethodOut {
    method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    entries: Option<Vec<EntryOut>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

#[derive(Serialize)]
struct OverlapOut {
    first: &'static str,
    second: &'static str,
    shared_top10: usize,
}

#[derive(Serialize)]
struct CompareOut {
    #[serde(flatten)]
    params: ParamEcho,
    methods: Vec<&'static str>,
    katz_alpha: f64,
    escape_c: f64,
    top: usize,
    results: Vec<MethodOut>,
    overlaps: Vec<OverlapOut>,
}

#[derive(Serialize)]
struct IngestOut {
    command: &'static str,
    pairs: String,
    src_col: usize,
    dst_col: usize,
    header: bool,
    undirected: bool,
    out: String,
    events: usize,
    edges: usize,
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

/// Six significant digits, trailing zeros trimmed.
fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

fn echo_comment(p: &ParamEcho) -> String {
    format!(
        "# command={} graph={} undirected={} source={} alpha={} level_share={} input_max={}",
        p.command, p.graph, p.undirected, p.source, p.alpha, p.level_share, p.input_max
    )
}

fn entries_tsv(out: &mut String, entries: &[EntryOut]) {
    out.push_str("rank\tlabel\tscore\tlevel\n");
    for e in entries {
        out.push_str(&format!("{}\t{}\t{}\t{}\n", e.rank, e.label, sig6(e.score), e.level));
    }
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable output"));
}

// ---------------------------------------------------------------------------
// Command execution
// ---------------------------------------------------------------------------

fn exit_code_for(err: &vcm::Error) -> u8 {
    match err {
        vcm::Error::UnknownVertex(_) => 3,
        vcm::Error::Io { .. } | vcm::Error::Parse { .. } => 2,
        _ => 1,
    }
}

fn load(graph_args: &GraphArgs) -> vcm::Result<Graph> {
    ingest::load_edge_list(&graph_args.graph, graph_args.undirected)
}

fn echo(
    command: &'static str,
    graph_args: &GraphArgs,
    source: &str,
    params: &VcmParams,
) -> ParamEcho {
    ParamEcho {
        command,
        graph: graph_args.graph.display().to_string(),
        undirected: graph_args.undirected,
        source: source.to_string(),
        alpha: params.alpha,
        level_share: params.level_share,
        input_max: params.input_max,
    }
}

fn run_score(args: &ScoreArgs) -> vcm::Result<()> {
    let graph = load(&args.graph)?;
    let params = args.vcm.params(args.vcm.alpha);
    params.validate()?;
    let s = graph.resolve_label(&args.source)?;
    let t = graph.resolve_label(&args.target)?;
    let score = vcm::vcm(&graph, s, t, &params)?;
    let out = ScoreOut {
        params: echo("score", &args.graph, &args.source, &params),
        target: args.target.clone(),
        score,
    };
    match args.graph.format {
        Format::Json => print_json(&out),
        Format::Tsv => {
            println!("{} target={}", echo_comment(&out.params), out.target);
            println!("score\t{}", sig6(out.score));
        }
    }
    Ok(())
}

fn run_rank(args: &RankArgs) -> vcm::Result<()> {
    let graph = load(&args.graph)?;
    let params = args.vcm.params(args.vcm.alpha);
    let s = graph.resolve_label(&args.source)?;
    let entries = analysis::rank_from_source(&graph, s, &params, args.top, args.level)?;
    let out = RankOut {
        params: echo("rank", &args.graph, &args.source, &params),
        top: args.top,
        level_filter: args.level,
        entries: entries_out(&entries),
    };
    match args.graph.format {
        Format::Json => print_json(&out),
        Format::Tsv => {
            println!(
                "{} top={} level_filter={}",
                echo_comment(&out.params),
                out.top,
                out.level_filter.map_or("none".into(), |l| l.to_string())
            );
            let mut body = String::new();
            entries_tsv(&mut body, &out.entries);
            print!("{body}");
        }
    }
    Ok(())
}

fn parse_alphas(list: &str) -> vcm::Result<Vec<f64>> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .map_err(|_| vcm::Error::InvalidParameter(format!("bad alpha {s:?}")))
        })
        .collect()
}

fn run_sweep(args: &SweepArgs) -> vcm::Result<()> {
    let graph = load(&args.graph)?;
    let alphas = parse_alphas(&args.alphas)?;
    let base = args.vcm.params(args.vcm.alpha);
    let s = graph.resolve_label(&args.source)?;
    let table = analysis::alpha_sweep(&graph, s, &alphas, &base, args.top, args.level)?;
    let out = SweepOut {
        params: echo("sweep", &args.graph, &args.source, &base),
        alphas: table.alphas.clone(),
        top: args.top,
        level_filter: args.level,
        columns: table
            .alphas
            .iter()
            .zip(&table.columns)
            .map(|(&alpha, column)| SweepColumnOut {
                alpha,
                entries: entries_out(column),
            })
            .collect(),
    };
    match args.graph.format {
        Format::Json => print_json(&out),
        Format::Tsv => {
            println!(
                "{} top={} level_filter={}",
                echo_comment(&out.params),
                out.top,
                out.level_filter.map_or("none".into(), |l| l.to_string())
            );
            // Ranks as rows, alphas as columns.
            let mut header = String::from("rank");
            for alpha in &out.alphas {
                header.push('\t');
                header.push_str(&format!("{alpha}"));
            }
            println!("{header}");
            let depth = out.columns.iter().map(|c| c.entries.len()).max().unwrap_or(0);
            for row in 0..depth {
                let mut line = format!("{}", row + 1);
                for column in &out.columns {
                    line.push('\t');
                    match column.entries.get(row) {
                        Some(e) => line.push_str(&format!("{}:{}", e.label, sig6(e.score))),
                        None => line.push('-'),
                    }
                }
                println!("{line}");
            }
        }
    }
    Ok(())
}

fn parse_methods(list: &str) -> vcm::Result<Vec<Method>> {
    let methods: Vec<Method> = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect::<vcm::Result<_>>()?;
    if methods.is_empty() {
        return Err(vcm::Error::InvalidParameter("no methods requested".into()));
    }
    Ok(methods)
}

fn run_compare(args: &CompareArgs) -> vcm::Result<()> {
    let graph = load(&args.graph)?;
    let methods = parse_methods(&args.methods)?;
    let params = MethodParams {
        vcm: args.vcm.params(args.vcm.alpha),
        katz_alpha: args.katz_alpha,
        katz_max_len: None,
        escape_c: args.escape_c,
    };
    params.vcm.validate()?;
    let s = graph.resolve_label(&args.source)?;
    let report = analysis::compare_methods(&graph, s, &methods, &params, args.top)?;
    let out = CompareOut {
        params: echo("compare", &args.graph, &args.source, &params.vcm),
        methods: methods.iter().map(|m| m.name()).collect(),
        katz_alpha: args.katz_alpha,
        escape_c: args.escape_c,
        top: args.top,
        results: report
            .outcomes
            .iter()
            .map(|o| match &o.outcome {
                Ok(entries) => MethodOut {
                    method: o.method.name(),
                    entries: Some(entries_out(entries)),
                    error: None,
                },
                Err(e) => MethodOut {
                    method: o.method.name(),
                    entries: None,
                    error: Some(e.to_string()),
                },
            })
            .collect(),
        overlaps: report
            .overlaps
            .iter()
            .map(|o| OverlapOut {
                first: o.first.name(),
                second: o.second.name(),
                shared_top10: o.shared,
            })
            .collect(),
    };
    match args.graph.format {
        Format::Json => print_json(&out),
        Format::Tsv => {
            println!(
                "{} methods={} katz_alpha={} escape_c={} top={}",
                echo_comment(&out.params),
                out.methods.join(","),
                out.katz_alpha,
                out.escape_c,
                out.top
            );
            for result in &out.results {
                match (&result.entries, &result.error) {
                    (Some(entries), _) => {
                        println!("# method={}", result.method);
                        let mut body = String::new();
                        entries_tsv(&mut body, entries);
                        print!("{body}");
                    }
                    (None, Some(error)) => {
                        println!("# method={} error={error}", result.method);
                    }
                    (None, None) => unreachable!(),
                }
            }
            for o in &out.overlaps {
                println!("# overlap\t{}\t{}\t{}", o.first, o.second, o.shared_top10);
            }
        }
    }
    Ok(())
}

fn run_ingest(args: &IngestArgs) -> vcm::Result<()> {
    let log = ingest::read_pair_log_csv(&args.pairs, args.src_col, args.dst_col, args.header)?;
    let edges = ingest::aggregate_pairs(&log, args.undirected);
    ingest::write_edge_list(&edges, &args.out)?;
    let out = IngestOut {
        command: "ingest",
        pairs: args.pairs.display().to_string(),
        src_col: args.src_col,
        dst_col: args.dst_col,
        header: args.header,
        undirected: args.undirected,
        out: args.out.display().to_string(),
        events: log.len(),
        edges: edges.len(),
    };
    match args.format {
        Format::Json => print_json(&out),
        Format::Tsv => {
            println!(
                "# command=ingest pairs={} src_col={} dst_col={} header={} undirected={} out={}",
                out.pairs, out.src_col, out.dst_col, out.header, out.undirected, out.out
            );
            println!("events\t{}", out.events);
            println!("edges\t{}", out.edges);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are successful outcomes; anything else is a
            // usage error.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Score(args) => run_score(args),
        Command::Rank(args) => run_rank(args),
        Command::Sweep(args) => run_sweep(args),
        Command::Compare(args) => run_compare(args),
        Command::Ingest(args) => run_ingest(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
