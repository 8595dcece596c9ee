//! Commands behind the `nlasso` binary.
//!
//! Every command writes its artifacts into an output directory. Failures are
//! split into input errors (exit code 2) and runtime failures (exit code 3).

pub mod manifest;

use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use nlasso::baselines::LaplacianMode;
use nlasso::certificates::{extract_cluster, kkt_residuals, prop1_check, DEFAULT_EPS_SAT, DEFAULT_THRESHOLD};
use nlasso::experiments::{chain_experiment, sbm_experiment, segment, ChainParams, SbmParams};
use nlasso::generators::{chain_graph, grid_from_image, sample_seeds, sbm_graph, SbmSpec};
use nlasso::io::{
    format_key_values, format_node_set, format_signal_csv, parse_edge_list, parse_node_set, read_pgm, write_pgm,
};
use nlasso::objectives::{duality_gap, primal_objective};
use nlasso::{Graph, NLassoProblem, NodeSet, SolverConfig};

use manifest::{parse_real, GraphSource, RunManifest, SeedSource};

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Unreadable or invalid input; exit code 2.
    Input(String),
    /// The computation itself failed; exit code 3.
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Runtime(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Runtime(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<nlasso::Error> for CliError {
    fn from(e: nlasso::Error) -> Self {
        use nlasso::Error::*;
        match e {
            IsolatedNode(_) | NoConvergence(_) | Disconnected | DualInfeasible | NotAugmented | RepeatedAugmentation => {
                CliError::Runtime(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "nlasso", version, about = "Local graph clustering with the network Lasso")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one clustering problem from a manifest and/or flags.
    Solve(SolveArgs),
    /// Reproduce the 100-node chain experiment.
    Chain(ChainArgs),
    /// Run the two-block stochastic block model experiment.
    Sbm(SbmArgs),
    /// Segment a greyscale PGM image from seed pixels.
    Segment(SegmentArgs),
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output directory, created if missing.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads for the solver (default: all cores).
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// `key = value` run manifest; flags override its entries.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    /// Edge list with `i j w` lines.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Seed node ids, one per line.
    #[arg(long)]
    pub seeds: Option<PathBuf>,
    #[arg(long, value_parser = parse_real)]
    pub alpha: Option<f64>,
    #[arg(long, value_parser = parse_real)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub iters: Option<usize>,
    #[arg(long, value_parser = parse_real)]
    pub threshold: Option<f64>,
    #[arg(long)]
    pub rng_seed: Option<u64>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FiedlerMode {
    Normalized,
    Unnormalized,
}

#[derive(Debug, Args)]
pub struct ChainArgs {
    #[arg(long, default_value_t = 1000)]
    pub iters: usize,
    /// Laplacian used for the spectral baseline.
    #[arg(long, value_enum, default_value_t = FiedlerMode::Normalized)]
    pub fiedler_mode: FiedlerMode,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct SbmArgs {
    #[arg(long, default_value_t = 1)]
    pub rng_seed: u64,
    #[arg(long, default_value_t = 1000)]
    pub iters: usize,
    /// Cross-block edge probability.
    #[arg(long, value_parser = parse_real, default_value = "1/100")]
    pub p_out: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct SegmentArgs {
    /// Greyscale image (`P2` or `P5`).
    #[arg(long)]
    pub image: PathBuf,
    /// Seed pixel ids (`row·width + col + 1`), one per line.
    #[arg(long)]
    pub seeds: PathBuf,
    #[arg(long, value_parser = parse_real)]
    pub alpha: f64,
    #[arg(long, value_parser = parse_real)]
    pub lambda: f64,
    #[arg(long, default_value_t = 1000)]
    pub iters: usize,
    #[arg(long, value_parser = parse_real, default_value_t = DEFAULT_THRESHOLD)]
    pub threshold: f64,
    #[command(flatten)]
    pub common: Common,
}

/// Runs a parsed command line.
pub fn execute(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Solve(a) => {
            let workers = a.common.workers;
            with_workers(workers, || cmd_solve(a))
        }
        Command::Chain(a) => with_workers(a.common.workers, || cmd_chain(&a)),
        Command::Sbm(a) => with_workers(a.common.workers, || cmd_sbm(&a)),
        Command::Segment(a) => with_workers(a.common.workers, || cmd_segment(&a)),
    }
}

fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> CliResult<T> + Send) -> CliResult<T> {
    match workers {
        None => f(),
        Some(0) => Err(CliError::Input("--workers must be at least 1".into())),
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| CliError::Runtime(format!("thread pool: {e}")))?
            .install(f),
    }
}

fn read_text(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn read_bytes(path: &Path) -> CliResult<Vec<u8>> {
    std::fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn in_file(path: &Path) -> impl Fn(nlasso::Error) -> CliError + '_ {
    move |e| CliError::Input(format!("{}: {e}", path.display()))
}

fn out_dir(out: Option<&PathBuf>) -> CliResult<&Path> {
    let dir = out.ok_or_else(|| CliError::Input("missing --out directory".into()))?;
    std::fs::create_dir_all(dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
    Ok(dir)
}

fn write(dir: &Path, name: &str, bytes: impl AsRef<[u8]>) -> CliResult<()> {
    let path = dir.join(name);
    std::fs::write(&path, bytes).map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))
}

fn kv(key: &str, v: impl ToString) -> (String, String) {
    (key.to_string(), v.to_string())
}

fn with_static(pairs: Vec<(&'static str, String)>) -> impl Iterator<Item = (String, String)> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v))
}

fn cmd_solve(a: SolveArgs) -> CliResult<()> {
    let mut m = match &a.manifest {
        Some(p) => RunManifest::from_file(p)?,
        None => RunManifest::default(),
    };
    if let Some(g) = a.graph {
        m.graph = Some(GraphSource::EdgeList { path: g, n: None });
    }
    if let Some(s) = a.seeds {
        m.seeds = Some(SeedSource::File(s));
    }
    m.alpha = a.alpha.or(m.alpha);
    m.lambda = a.lambda.or(m.lambda);
    m.max_iters = a.iters.or(m.max_iters);
    m.threshold = a.threshold.or(m.threshold);
    m.rng_seed = a.rng_seed.or(m.rng_seed);
    m.out = a.common.out.or(m.out);

    let missing = |what: &str| CliError::Input(format!("missing {what} (flag or manifest)"));
    let rng_seed = m.rng_seed.unwrap_or(1);
    let (graph, blocks) = build_graph(m.graph.as_ref().ok_or_else(|| missing("graph"))?, rng_seed)?;
    let n = graph.node_count();
    let seeds = match m.seeds.as_ref().ok_or_else(|| missing("seeds"))? {
        SeedSource::File(p) => parse_node_set(&read_text(p)?, n).map_err(in_file(p))?,
        SeedSource::Ids(ids) => NodeSet::new(ids.iter().copied(), n)?,
        SeedSource::SampleFirstBlock(count) => {
            let blocks = blocks
                .as_ref()
                .ok_or_else(|| CliError::Input("seed_count needs generator = sbm".into()))?;
            sample_seeds(blocks, *count, rng_seed)?
        }
    };
    let alpha = m.alpha.ok_or_else(|| missing("alpha"))?;
    let lambda = m.lambda.ok_or_else(|| missing("lambda"))?;
    let iters = m.max_iters.ok_or_else(|| missing("max_iters"))?;
    let threshold = m.threshold.unwrap_or(DEFAULT_THRESHOLD);
    let p = NLassoProblem::new(&graph, seeds, alpha, lambda)?;
    let cfg = SolverConfig::new(iters)?;
    let dir = out_dir(m.out.as_ref())?;

    let res = nlasso::run(&p, &cfg)?;
    let cluster = extract_cluster(&res.x, threshold, p.seeds());
    let kkt = kkt_residuals(&p, &res.x, &res.y, DEFAULT_EPS_SAT)?;

    let mut report = vec![
        kv("nodes", n),
        kv("edges", graph.edge_count()),
        kv("iterations", res.iters_run),
        kv("primal_objective", primal_objective(&p, &res.x)?),
        kv("duality_gap", duality_gap(&p, &res.x, &res.y)?),
        kv("cluster.size", cluster.cluster.len()),
        kv("cluster.threshold", threshold),
        kv("cluster.contains_seeds", cluster.contains_seeds),
    ];
    report.extend(with_static(kkt.key_values()));
    if cluster.contains_seeds {
        report.extend(with_static(prop1_check(&p, &cluster, &res.x)?.key_values()));
    } else {
        report.push(kv("prop1.applicable", false));
    }

    write(dir, "signal.csv", format_signal_csv(&res.x, None))?;
    write(dir, "cluster.txt", format_node_set(&cluster.cluster))?;
    write(dir, "certificates.txt", format_key_values(&report))
}

fn build_graph(src: &GraphSource, rng_seed: u64) -> CliResult<(Graph, Option<Vec<NodeSet>>)> {
    Ok(match src {
        GraphSource::EdgeList { path, n } => (parse_edge_list(&read_text(path)?, *n).map_err(in_file(path))?, None),
        GraphSource::Chain { n, weight, overrides } => (chain_graph(*n, *weight, overrides)?, None),
        GraphSource::Sbm { blocks, p_in, p_out } => {
            let sbm = sbm_graph(&SbmSpec::new(blocks.clone(), *p_in, *p_out, rng_seed)?)?;
            (sbm.graph, Some(sbm.blocks))
        }
        GraphSource::Image { path, sigma } => {
            let img = read_pgm(&read_bytes(path)?).map_err(in_file(path))?;
            (grid_from_image(&img, *sigma)?, None)
        }
    })
}

/// Number of nodes written to the chain CSVs.
pub const CHAIN_CSV_ROWS: usize = 20;

fn cmd_chain(a: &ChainArgs) -> CliResult<()> {
    let dir = out_dir(a.common.out.as_ref())?;
    let params = ChainParams {
        iters: a.iters,
        fiedler_mode: match a.fiedler_mode {
            FiedlerMode::Normalized => LaplacianMode::SymmetricNormalized,
            FiedlerMode::Unnormalized => LaplacianMode::Unnormalized,
        },
        ..ChainParams::default()
    };
    let rep = chain_experiment(&params).map_err(|e| CliError::Runtime(e.to_string()))?;
    let boundary_lhs = rep.prop1.as_ref().map(|p| p.lhs);

    let mut report = vec![
        kv("lambda", params.lambda),
        kv("alpha", params.alpha),
        kv("iterations", params.iters),
        kv("cluster", ids_inline(&rep.cluster.cluster)),
        kv("cluster.contains_seeds", rep.cluster.contains_seeds),
    ];
    report.extend(with_static(rep.kkt.key_values()));
    match &rep.prop1 {
        Some(p) => {
            report.extend(with_static(p.key_values()));
            report.push(kv("prop1.slack_injecting", p.slack_injecting()));
            report.push(kv("prop1.slack_absorbing", p.slack_absorbing()));
        }
        None => report.push(kv("prop1.applicable", false)),
    }
    report.push(kv("u_bound.U", params.u_bound));
    if let Some(lhs) = boundary_lhs {
        report.push(kv("u_bound.lhs", lhs));
    }
    report.push(kv("u_bound.rhs", params.u_bound as f64 * params.alpha / 2.0));
    report.push(kv("u_bound.holds", rep.u_bound_holds));
    report.push(kv("fiedler.eigenvalue", rep.fiedler_eigenvalue));
    for (name, e) in [
        ("error.nlasso", rep.nlasso_error),
        ("error.fiedler", rep.fiedler_error),
        ("error.nlasso.first20", rep.nlasso_error_first20),
        ("error.fiedler.first20", rep.fiedler_error_first20),
    ] {
        report.push(kv(&format!("{name}.l2"), e.l2));
        report.push(kv(&format!("{name}.linf"), e.linf));
    }

    write(dir, "nLassoChain.csv", format_signal_csv(&rep.signal, Some(CHAIN_CSV_ROWS)))?;
    write(dir, "FiedlerChain.csv", format_signal_csv(&rep.fiedler, Some(CHAIN_CSV_ROWS)))?;
    write(dir, "cluster.txt", format_node_set(&rep.cluster.cluster))?;
    write(dir, "certificates.txt", format_key_values(&report))
}

fn ids_inline(s: &NodeSet) -> String {
    s.ids().iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

fn cmd_sbm(a: &SbmArgs) -> CliResult<()> {
    let dir = out_dir(a.common.out.as_ref())?;
    let params = SbmParams {
        iters: a.iters,
        p_out: a.p_out,
        ..SbmParams::default()
    };
    let rep = sbm_experiment(&params, a.rng_seed)?;
    let report = vec![
        kv("rng_seed", a.rng_seed),
        kv("p_in", params.p_in),
        kv("p_out", params.p_out),
        kv("alpha", params.alpha),
        kv("lambda", params.lambda),
        kv("iterations", params.iters),
        kv("edges", rep.edge_count),
        kv("cluster.size", rep.cluster.len()),
        kv("accuracy", rep.accuracy),
    ];
    write(dir, "signal.csv", format_signal_csv(&rep.signal, None))?;
    write(dir, "seeds.txt", format_node_set(&rep.seeds))?;
    write(dir, "cluster.txt", format_node_set(&rep.cluster))?;
    write(dir, "report.txt", format_key_values(&report))
}

fn cmd_segment(a: &SegmentArgs) -> CliResult<()> {
    let img = read_pgm(&read_bytes(&a.image)?).map_err(in_file(&a.image))?;
    let seeds = parse_node_set(&read_text(&a.seeds)?, img.width * img.height).map_err(in_file(&a.seeds))?;
    let dir = out_dir(a.common.out.as_ref())?;
    let rep = segment(&img, &seeds, a.alpha, a.lambda, a.iters, a.threshold)?;
    write(dir, "mask.pgm", write_pgm(&rep.mask))?;
    write(dir, "signal.csv", format_signal_csv(&rep.signal, None))
}
