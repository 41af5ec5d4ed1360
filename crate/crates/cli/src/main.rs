use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use rainbow_core::auxiliary::{chromatic_number_exact, lower_bound_from, DEFAULT_CHROMATIC_GUARD};
use rainbow_core::coloring::ColoringFile;
use rainbow_core::generators::{Family, GenSpec};
use rainbow_core::heuristic::{default_max_iter, run_heuristic_with};
use rainbow_core::mip::external::{CBC_TEMPLATE, HIGHS_TEMPLATE};
use rainbow_core::mip::{ExternalSolver, DEFAULT_EXHAUSTIVE_GUARD};
use rainbow_core::model::{instance_stats, solve, Backend};
use rainbow_core::paths::DEFAULT_PATH_BUDGET;
use rainbow_core::report::{REPORT_CSV_HEADER, STATS_CSV_HEADER};
use rainbow_core::{
    parse_edge_list, verify_strong_rainbow, AuxiliaryGraph, Graph, Method, PairTable, SolveOptions,
    SolveReport, Verdict,
};

const EXIT_TIMEOUT: u8 = 2;
const EXIT_INVALID: u8 = 3;

/// Exact strong rainbow connection numbers.
#[derive(Parser)]
#[command(name = "rainbow", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute src(G) for one or more edge-list files.
    Solve(SolveArgs),
    /// Print diam(G), the clique bound and their maximum.
    Bound(BoundArgs),
    /// Print instance statistics (n, m, clique bound, density of H, path counts).
    Stats(StatsArgs),
    /// Run the randomized coloring heuristic.
    Heuristic(HeuristicArgs),
    /// Check a coloring file against a graph. Exit 0 if valid, 3 if not.
    Verify { graph: PathBuf, coloring: PathBuf },
    /// Generate random instances.
    Gen(GenArgs),
}

#[derive(Args)]
struct SolveArgs {
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    /// naive, enhanced or bottom-up.
    #[arg(long, default_value = "bottom-up")]
    method: Method,
    /// Seconds allowed per instance.
    #[arg(long, default_value_t = 3600.0)]
    time_limit: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Heuristic iterations; defaults to ceil(n/5).
    #[arg(long)]
    max_iter: Option<usize>,
    /// Solver command template with {lp}, {sol} and {time}; `cbc` and
    /// `highs` select the bundled templates. Without one, instances with at
    /// most 14 edges are solved by exhaustive search.
    #[arg(long, env = "SRC_SOLVER_CMD")]
    solver_cmd: Option<String>,
    #[arg(long)]
    no_eliminate: bool,
    #[arg(long)]
    no_clique_fix: bool,
    #[arg(long)]
    clique_cuts: bool,
    /// Also report the exact chromatic number of H (small instances only).
    #[arg(long)]
    chi_exact: bool,
    /// Cap on path-edge incidences in the model.
    #[arg(long, default_value_t = DEFAULT_PATH_BUDGET)]
    path_budget: u128,
    /// Coloring output: a file for one input, a directory for several.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Append report rows to this CSV file.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Write full JSON reports into this directory.
    #[arg(long)]
    json_dir: Option<PathBuf>,
    /// Instances solved concurrently.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
struct BoundArgs {
    input: PathBuf,
    #[arg(long)]
    chi_exact: bool,
    /// Seconds allowed for each of the clique and chromatic searches.
    #[arg(long)]
    time_limit: Option<f64>,
}

#[derive(Args)]
struct StatsArgs {
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_PATH_BUDGET)]
    path_budget: u128,
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct HeuristicArgs {
    input: PathBuf,
    #[arg(long)]
    max_iter: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Pre-color a maximum clique of H with distinct colors.
    #[arg(long)]
    seed_clique: bool,
    /// Write the coloring here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    family: GenFamily,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 1)]
    count: u64,
    /// Output directory.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
}

#[derive(Subcommand)]
enum GenFamily {
    /// Erdős–Rényi G(n, p).
    Er { n: usize, p: f64 },
    /// Watts–Strogatz ring of n vertices with k neighbors, rewired with probability p.
    Ws { n: usize, k: usize, p: f64 },
    /// Bipartite G(n1, n2, p).
    Ber { n1: usize, n2: usize, p: f64 },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Bound(args) => cmd_bound(args),
        Command::Stats(args) => cmd_stats(args),
        Command::Heuristic(args) => cmd_heuristic(args),
        Command::Verify { graph, coloring } => cmd_verify(&graph, &coloring),
        Command::Gen(args) => cmd_gen(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let g = parse_edge_list(&text).with_context(|| format!("parsing {}", path.display()))?;
    if g.dropped_vertices() > 0 {
        eprintln!(
            "{}: kept the largest component, dropped {} vertices",
            path.display(),
            g.dropped_vertices()
        );
    }
    Ok(g)
}

fn instance_name(path: &Path) -> String {
    path.file_stem()
        .map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn seconds(s: f64) -> Result<Duration> {
    if !(s.is_finite() && s > 0.0) {
        bail!("time limit must be positive, got {s}");
    }
    Ok(Duration::from_secs_f64(s))
}

fn backend_for(cmd: Option<&str>) -> Result<Backend> {
    match cmd.map(str::trim) {
        None | Some("") => Ok(Backend::Exhaustive {
            guard: DEFAULT_EXHAUSTIVE_GUARD,
        }),
        Some("cbc") => Ok(Backend::External(ExternalSolver::new(CBC_TEMPLATE)?)),
        Some("highs") => Ok(Backend::External(ExternalSolver::new(HIGHS_TEMPLATE)?)),
        Some(template) => Ok(Backend::External(ExternalSolver::new(template)?)),
    }
}

/// Opens `path` for appending, writing `header` first if the file is new.
fn csv_appender(path: &Path, header: &str) -> Result<fs::File> {
    let fresh = fs::metadata(path).map_or(true, |m| m.len() == 0);
    let mut file = fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .with_context(|| format!("opening {}", path.display()))?;
    if fresh {
        writeln!(file, "{header}")?;
    }
    Ok(file)
}

fn coloring_path(args: &SolveArgs, input: &Path) -> Option<PathBuf> {
    let out = args.out.as_ref()?;
    if args.inputs.len() == 1 && !out.is_dir() {
        Some(out.clone())
    } else {
        Some(out.join(format!("{}.coloring.json", instance_name(input))))
    }
}

fn solve_one(args: &SolveArgs, backend: &Backend, opts: &SolveOptions, input: &Path) -> Result<SolveReport> {
    let g = read_graph(input)?;
    let report = solve(&g, backend, opts)
        .with_context(|| format!("solving {}", input.display()))?
        .with_instance(instance_name(input));
    if let (Some(path), Some(coloring)) = (coloring_path(args, input), &report.coloring) {
        if report.solved {
            let file = coloring.to_file(&g, opts.method.as_str());
            fs::write(&path, file.to_json()).with_context(|| format!("writing {}", path.display()))?;
        }
    }
    if let Some(dir) = &args.json_dir {
        fs::create_dir_all(dir)?;
        fs::write(dir.join(format!("{}.json", report.instance)), report.to_json())?;
    }
    if args.chi_exact {
        let h = AuxiliaryGraph::build(&g);
        match chromatic_number_exact(&h, DEFAULT_CHROMATIC_GUARD, Some(opts.time_limit.unwrap_or(Duration::MAX))) {
            Ok(chi) => println!("{}: chi(H) = {chi}", report.instance),
            Err(e) => println!("{}: chi(H) unavailable: {e}", report.instance),
        }
    }
    Ok(report)
}

fn summary(r: &SolveReport) -> String {
    match r.src {
        Some(src) => format!(
            "{}: src = {src} ({}, lb {}, {:.3} s)",
            r.instance, r.method, r.init_lb, r.total_time
        ),
        None => format!(
            "{}: time limit, src in [{}, {}] ({})",
            r.instance,
            r.lower,
            r.upper.map_or("-".into(), |u| u.to_string()),
            r.method
        ),
    }
}

fn cmd_solve(args: SolveArgs) -> Result<ExitCode> {
    let mut opts = SolveOptions::for_method(args.method);
    opts.time_limit = Some(seconds(args.time_limit)?);
    opts.seed = args.seed;
    opts.max_iter = args.max_iter;
    opts.path_budget = args.path_budget;
    opts.clique_cuts = args.clique_cuts;
    if args.no_eliminate {
        opts.eliminate = false;
    }
    if args.no_clique_fix {
        opts.clique_fix = false;
    }
    if args.jobs == 0 {
        bail!("--jobs must be at least 1");
    }
    if let Some(out) = &args.out {
        if args.inputs.len() > 1 {
            fs::create_dir_all(out)?;
        }
    }
    let backend = backend_for(args.solver_cmd.as_deref())?;
    let mut csv = match &args.csv {
        Some(path) => Some(csv_appender(path, REPORT_CSV_HEADER)?),
        None => None,
    };

    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel();
    let mut any_error = false;
    let mut any_timeout = false;
    std::thread::scope(|scope| {
        for _ in 0..args.jobs.min(args.inputs.len()) {
            let tx = tx.clone();
            let (next, args, backend, opts) = (&next, &args, &backend, &opts);
            scope.spawn(move || loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                let Some(input) = args.inputs.get(i) else { break };
                let _ = tx.send((i, solve_one(args, backend, opts, input)));
            });
        }
        drop(tx);
        // emit in input order regardless of completion order
        let mut pending = BTreeMap::new();
        let mut emitted = 0;
        for (i, result) in rx {
            pending.insert(i, result);
            while let Some(result) = pending.remove(&emitted) {
                match result {
                    Ok(report) => {
                        println!("{}", summary(&report));
                        any_timeout |= !report.solved;
                        if let Some(file) = csv.as_mut() {
                            if let Err(e) = writeln!(file, "{}", report.csv_row()) {
                                eprintln!("error: writing csv: {e}");
                                any_error = true;
                            }
                        }
                    }
                    Err(e) => {
                        eprintln!("error: {e:#}");
                        any_error = true;
                    }
                }
                emitted += 1;
            }
        }
    });
    Ok(if any_error {
        ExitCode::FAILURE
    } else if any_timeout {
        ExitCode::from(EXIT_TIMEOUT)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_bound(args: BoundArgs) -> Result<ExitCode> {
    let g = read_graph(&args.input)?;
    let limit = args.time_limit.map(seconds).transpose()?;
    let h = AuxiliaryGraph::build(&g);
    let bound = lower_bound_from(&g, &h, limit);
    println!("diam {}", bound.diameter);
    println!(
        "omega' {}{}",
        bound.omega_prime,
        if bound.clique.exact { "" } else { " (time limit, not proven maximum)" }
    );
    println!("lb {}", bound.value);
    if args.chi_exact {
        let chi = chromatic_number_exact(&h, DEFAULT_CHROMATIC_GUARD, limit)?;
        println!("chi(H) {chi}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_stats(args: StatsArgs) -> Result<ExitCode> {
    let mut csv = match &args.csv {
        Some(path) => Some(csv_appender(path, STATS_CSV_HEADER)?),
        None => None,
    };
    println!("{STATS_CSV_HEADER}");
    for input in &args.inputs {
        let g = read_graph(input)?;
        let row = instance_stats(&g, args.path_budget)?.with_instance(instance_name(input));
        println!("{}", row.csv_row());
        if let Some(file) = csv.as_mut() {
            writeln!(file, "{}", row.csv_row())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_heuristic(args: HeuristicArgs) -> Result<ExitCode> {
    let g = read_graph(&args.input)?;
    let table = PairTable::build(&g);
    let clique = if args.seed_clique {
        let h = AuxiliaryGraph::from_table(&g, &table);
        Some(lower_bound_from(&g, &h, None).clique)
    } else {
        None
    };
    let max_iter = args.max_iter.unwrap_or_else(|| default_max_iter(g.n()));
    let start = Instant::now();
    let result = run_heuristic_with(&g, &table, max_iter, args.seed, clique.as_ref());
    println!(
        "best {} after {} iterations (seed {}, {:.3} s)",
        result.best,
        result.iterations_run,
        result.seed,
        start.elapsed().as_secs_f64()
    );
    if let Some(path) = args.out {
        fs::write(&path, result.coloring.to_file(&g, "heuristic").to_json())?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(graph: &Path, coloring: &Path) -> Result<ExitCode> {
    let g = read_graph(graph)?;
    let text = fs::read_to_string(coloring).with_context(|| format!("reading {}", coloring.display()))?;
    let file = ColoringFile::from_json(&text)?;
    if file.graph_hash != g.canonical_hash() {
        eprintln!("warning: coloring was produced for a different graph hash");
    }
    let c = file.to_coloring(&g)?;
    match verify_strong_rainbow(&g, &c)? {
        Verdict::Valid => {
            println!("valid strong rainbow coloring with {} colors", c.k());
            Ok(ExitCode::SUCCESS)
        }
        Verdict::Invalid { pair: (u, v) } => {
            println!("invalid: no rainbow shortest path between {} and {}", g.label(u), g.label(v));
            Ok(ExitCode::from(EXIT_INVALID))
        }
    }
}

fn cmd_gen(args: GenArgs) -> Result<ExitCode> {
    let family = match args.family {
        GenFamily::Er { n, p } => Family::Er { n, p },
        GenFamily::Ws { n, k, p } => Family::Ws { n, k, p },
        GenFamily::Ber { n1, n2, p } => Family::Ber { n1, n2, p },
    };
    fs::create_dir_all(&args.out)?;
    for index in 0..args.count {
        let spec = GenSpec {
            family,
            seed: args.seed,
            index,
        };
        let g = spec.generate().with_context(|| format!("generating {spec}"))?;
        let path = args.out.join(format!("{spec}.txt"));
        fs::write(&path, g.to_edge_list())?;
        println!("{} n={} m={}", path.display(), g.n(), g.m());
    }
    Ok(ExitCode::SUCCESS)
}
