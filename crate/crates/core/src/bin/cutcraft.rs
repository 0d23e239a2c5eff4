use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use cutcraft::bench::{self, Manifest};
use cutcraft::budget::Deadline;
use cutcraft::cliquewidth::parse_cw;
use cutcraft::driver::{self, SolveOptions};
use cutcraft::generate;
use cutcraft::graph::{parse_gr, write_gr};
use cutcraft::reductions::{self, MonotoneFormula, ReducedInstance};
use cutcraft::report::verify_report;
use cutcraft::treedec::{self, heuristic_decompose, parse_td, write_td, NodeKind};
use cutcraft::{Algorithm, Error, Graph, Problem, Result, SolveReport};

// A closed pipe on stdout is not an error worth reporting.
macro_rules! out {
    ($($arg:tt)*) => {{
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

macro_rules! out_raw {
    ($($arg:tt)*) => {{
        let _ = write!(std::io::stdout(), $($arg)*);
    }};
}

#[derive(Parser)]
#[command(name = "cutcraft", version, about = "Connected and minimal maximum cut solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a cut problem and print the report as JSON.
    Solve(SolveArgs),
    /// Check a report against a graph.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        report: PathBuf,
    },
    /// Generate an instance.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Print a heuristic tree decomposition.
    Decompose {
        #[arg(long)]
        graph: PathBuf,
        /// Print the nice form, one node per line.
        #[arg(long)]
        nice: bool,
        /// Vertices kept in every bag, as `u,v` (1-based).
        #[arg(long, value_parser = parse_pair)]
        anchors: Option<(usize, usize)>,
    },
    /// Run a benchmark manifest.
    Bench {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long, default_value = "bench-out")]
        out: PathBuf,
    },
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    problem: String,
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    td: Option<PathBuf>,
    #[arg(long)]
    cwd: Option<PathBuf>,
    /// Anchors `s,t` (1-based) for the -st problems.
    #[arg(long, value_parser = parse_pair)]
    st: Option<(usize, usize)>,
    #[arg(long, default_value = "auto")]
    algo: String,
    /// Decide whether a cut of at least this size exists.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    repeats: Option<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Wall-clock budget in milliseconds.
    #[arg(long)]
    budget_ms: Option<u64>,
    /// Record elapsed time in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Connected max cut from a planar monotone formula.
    Pm3sat {
        #[arg(long)]
        vars: usize,
        /// Clauses such as `+1 2 3; -2 3 4` (1-based variables).
        #[arg(long)]
        clauses: String,
        /// Pendant parameter; a perfect square, default the first above m².
        #[arg(long = "k")]
        k: Option<u64>,
        #[arg(long)]
        unsound_scale: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Maximum minimal cut by subdividing every edge.
    Subdivision {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Connected max cut on a split graph from exact cover by 3-sets.
    X3c {
        /// Number of elements, a multiple of 3.
        #[arg(long)]
        elements: usize,
        /// Triples such as `1 2 3; 4 5 6` (1-based elements).
        #[arg(long)]
        triples: String,
        #[arg(long)]
        pendants: Option<usize>,
        #[arg(long)]
        unsound_scale: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Maximum minimal cut on a split graph from max cut.
    MaxcutSplit {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        copies: Option<u64>,
        #[arg(long)]
        unsound_scale: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Random connected G(n, p).
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_pair(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected `u,v`")?;
    let num = |x: &str| match x.trim().parse::<usize>() {
        Ok(v) if v >= 1 => Ok(v - 1),
        _ => Err(format!("`{x}` is not a 1-based vertex id")),
    };
    Ok((num(a)?, num(b)?))
}

enum Outcome {
    Yes,
    No,
}

fn read_graph(path: &Path) -> Result<Graph> {
    parse_gr(&fs::read_to_string(path)?)
}

fn solve(args: SolveArgs) -> Result<Outcome> {
    let g = read_graph(&args.graph)?;
    let problem = Problem::from_tag(&args.problem, args.st)?;
    let algorithm = match args.algo.as_str() {
        "auto" => None,
        other => Some(other.parse::<Algorithm>()?),
    };
    if let (Some(k), None) = (args.k, algorithm) {
        let decision = driver::solve_k(&g, k, problem)?;
        out!("{}", decision.report.to_json());
        return Ok(if decision.yes { Outcome::Yes } else { Outcome::No });
    }
    let opts = SolveOptions {
        algorithm,
        decomposition: args.td.as_deref().map(|p| Ok::<_, Error>(parse_td(&fs::read_to_string(p)?)?)).transpose()?,
        expression: args.cwd.as_deref().map(|p| Ok::<_, Error>(parse_cw(&fs::read_to_string(p)?)?)).transpose()?,
        repeats: args.repeats,
        seed: args.seed,
        deadline: args.budget_ms.map_or(Deadline::none(), |ms| Deadline::after(Duration::from_millis(ms))),
        timing: args.timing,
    };
    let report = driver::solve(&g, problem, &opts)?;
    out!("{}", report.to_json());
    let yes = match args.k {
        Some(k) => report.optimum.is_some_and(|v| v >= k as u64),
        None => report.optimum.is_some(),
    };
    Ok(if yes { Outcome::Yes } else { Outcome::No })
}

fn verify(graph: &Path, report: &Path) -> Result<Outcome> {
    let g = read_graph(graph)?;
    let r = SolveReport::from_json(&fs::read_to_string(report)?)?;
    match verify_report(&g, &r) {
        Ok(()) => {
            out!("ok");
            Ok(Outcome::Yes)
        }
        Err(Error::Report(msg)) => {
            out!("rejected: {msg}");
            Ok(Outcome::No)
        }
        Err(e) => Err(e),
    }
}

fn write_instance(inst: &ReducedInstance, out: &Path) -> Result<()> {
    fs::write(out.with_extension("gr"), write_gr(&inst.graph))?;
    fs::write(out.with_extension("json"), inst.sidecar_json())?;
    eprintln!(
        "wrote {} ({} vertices, {} edges)",
        out.with_extension("gr").display(),
        inst.graph.n(),
        inst.graph.m()
    );
    Ok(())
}

fn parse_triples(text: &str) -> Result<Vec<[usize; 3]>> {
    text.split([';', '\n'])
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let ids: Vec<usize> = t
                .split_whitespace()
                .map(|x| x.parse::<usize>().ok().filter(|&v| v >= 1).map(|v| v - 1))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::Reduction(format!("bad triple `{t}`")))?;
            ids.try_into().map_err(|_| Error::Reduction(format!("`{t}` is not a triple")))
        })
        .collect()
}

fn gen(cmd: GenCommand) -> Result<Outcome> {
    match cmd {
        GenCommand::Pm3sat { vars, clauses, k, unsound_scale, out } => {
            let formula = MonotoneFormula::parse(vars, &clauses)?;
            let k = k.unwrap_or_else(|| reductions::default_pm3sat_k(formula.m()));
            write_instance(&reductions::gen_pm3sat_cmc(&formula, k, unsound_scale)?, &out)?;
        }
        GenCommand::Subdivision { graph, out } => {
            write_instance(&reductions::gen_subdivision_mmc(&read_graph(&graph)?)?, &out)?;
        }
        GenCommand::X3c { elements, triples, pendants, unsound_scale, out } => {
            let triples = parse_triples(&triples)?;
            write_instance(&reductions::gen_x3c_cmc(elements, &triples, pendants, unsound_scale)?, &out)?;
        }
        GenCommand::MaxcutSplit { graph, copies, unsound_scale, out } => {
            let g = read_graph(&graph)?;
            write_instance(&reductions::gen_maxcut_mmc_split(&g, copies, unsound_scale)?, &out)?;
        }
        GenCommand::Random { n, p, seed, out } => {
            let text = write_gr(&generate::random_connected(n, p, seed));
            match out {
                Some(path) => fs::write(path, text)?,
                None => out_raw!("{text}"),
            }
        }
    }
    Ok(Outcome::Yes)
}

fn decompose(graph: &Path, nice: bool, anchors: Option<(usize, usize)>) -> Result<Outcome> {
    let g = read_graph(graph)?;
    let td = heuristic_decompose(&g);
    if !nice {
        out_raw!("{}", write_td(&td));
        return Ok(Outcome::Yes);
    }
    let anchors: Vec<usize> = anchors.map_or(Vec::new(), |(s, t)| vec![s, t]);
    let nice = treedec::to_nice(&g, &td, &anchors)?;
    out!("c nice decomposition: {} nodes, width {}", nice.nodes.len(), nice.width());
    for (i, node) in nice.nodes.iter().enumerate() {
        let kind = match node.kind {
            NodeKind::Leaf => "leaf".to_string(),
            NodeKind::IntroduceVertex(v) => format!("introduce-vertex {}", v + 1),
            NodeKind::IntroduceEdge(u, v) => format!("introduce-edge {} {}", u + 1, v + 1),
            NodeKind::Forget(v) => format!("forget {}", v + 1),
            NodeKind::Join => "join".to_string(),
        };
        let bag: Vec<String> = node.bag.iter().map(|v| (v + 1).to_string()).collect();
        let children: Vec<String> = node.children.iter().map(|c| (c + 1).to_string()).collect();
        out!("{} {kind} | bag {} | children {}", i + 1, bag.join(" "), children.join(" "));
    }
    Ok(Outcome::Yes)
}

fn run_bench(manifest_path: &Path, out: &Path) -> Result<Outcome> {
    let manifest = Manifest::from_toml(&fs::read_to_string(manifest_path)?)?;
    let base = manifest_path.parent().unwrap_or(Path::new("."));
    let outcome = bench::run(&manifest, base)?;
    bench::write_outputs(&outcome, &manifest, base, out)?;
    out!("{}", outcome.summary_json());
    Ok(Outcome::Yes)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(args) => solve(args),
        Command::Verify { graph, report } => verify(&graph, &report),
        Command::Gen(cmd) => gen(cmd),
        Command::Decompose { graph, nice, anchors } => decompose(&graph, nice, anchors),
        Command::Bench { manifest, out } => run_bench(&manifest, &out),
    };
    match result {
        Ok(Outcome::Yes) => ExitCode::SUCCESS,
        Ok(Outcome::No) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Timeout | Error::BudgetExceeded { .. } | Error::WidthExceeded { .. } | Error::TooLarge { .. } => {
                    ExitCode::from(3)
                }
                Error::Disagreement(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
