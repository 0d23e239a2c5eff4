//! Cross-validation harness: runs a manifest's instances through every listed
//! algorithm, compares against the oracle and writes CSV plus a JSON summary.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::Deadline;
use crate::driver::{self, SolveOptions};
use crate::error::{Error, Result};
use crate::generate;
use crate::graph::{named, parse_gr, write_gr, Graph};
use crate::oracle;
use crate::report::{verify_report, Algorithm, Problem, SolveReport};

pub const WORKERS_ENV: &str = "CUTCRAFT_WORKERS";

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum InstanceSpec {
    /// Connected graphs on `n_min..=n_max` vertices, at most `cap` per size.
    Exhaustive {
        #[serde(default = "one")]
        n_min: usize,
        n_max: usize,
        #[serde(default = "default_cap")]
        cap: usize,
    },
    Random {
        n: usize,
        p: f64,
        #[serde(default = "one")]
        count: usize,
    },
    Sparse {
        n: usize,
        extra: usize,
        #[serde(default = "one")]
        count: usize,
    },
    Named {
        name: String,
    },
    File {
        path: PathBuf,
    },
}

fn one() -> usize {
    1
}

fn default_cap() -> usize {
    5000
}

fn default_problems() -> Vec<String> {
    vec!["cmc".into(), "mmc".into()]
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    #[serde(default)]
    pub seed: u64,
    pub algorithms: Vec<String>,
    #[serde(default = "default_problems")]
    pub problems: Vec<String>,
    #[serde(default)]
    pub repeats: Option<u32>,
    /// Per-cell wall-clock budget.
    #[serde(default)]
    pub time_budget_ms: Option<u64>,
    /// Record elapsed times. Off by default so reruns are byte-identical.
    #[serde(default)]
    pub timing: bool,
    pub instances: Vec<InstanceSpec>,
}

impl Manifest {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Report(format!("manifest: {e}")))
    }
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub id: String,
    pub params: String,
    pub graph: Graph,
}

/// Expands the instance list in manifest order. Relative file paths resolve
/// against `base`.
pub fn expand(manifest: &Manifest, base: &Path) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for (block, spec) in manifest.instances.iter().enumerate() {
        let seed = manifest.seed.wrapping_add(block as u64);
        match spec {
            InstanceSpec::Exhaustive { n_min, n_max, cap } => {
                for n in *n_min..=*n_max {
                    for (i, graph) in generate::connected_sample(n, *cap, seed).into_iter().enumerate() {
                        out.push(Instance { id: format!("ex{n}-{i}"), params: format!("n={n} cap={cap}"), graph });
                    }
                }
            }
            InstanceSpec::Random { n, p, count } => {
                for i in 0..*count {
                    let s = seed.wrapping_mul(1_000_003).wrapping_add(i as u64);
                    out.push(Instance {
                        id: format!("gnp{block}-{i}"),
                        params: format!("n={n} p={p} seed={s}"),
                        graph: generate::random_connected(*n, *p, s),
                    });
                }
            }
            InstanceSpec::Sparse { n, extra, count } => {
                for i in 0..*count {
                    let s = seed.wrapping_mul(1_000_003).wrapping_add(i as u64);
                    out.push(Instance {
                        id: format!("sparse{block}-{i}"),
                        params: format!("n={n} extra={extra} seed={s}"),
                        graph: generate::random_sparse(*n, *extra, s),
                    });
                }
            }
            InstanceSpec::Named { name } => {
                out.push(Instance { id: name.clone(), params: String::new(), graph: named_graph(name)? });
            }
            InstanceSpec::File { path } => {
                let full = base.join(path);
                let graph = parse_gr(&fs::read_to_string(&full)?)?;
                out.push(Instance { id: path.display().to_string(), params: String::new(), graph });
            }
        }
    }
    Ok(out)
}

/// Graphs by name: `petersen`, `path-N`, `cycle-N`, `complete-N`, `star-N`,
/// `grid-RxC`, `kab-AxB`.
pub fn named_graph(name: &str) -> Result<Graph> {
    let bad = || Error::Report(format!("unknown named graph `{name}`"));
    if name == "petersen" {
        return Ok(named::petersen());
    }
    let (family, arg) = name.split_once('-').ok_or_else(bad)?;
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
    let dims = || -> Result<(usize, usize)> {
        let (a, b) = arg.split_once('x').ok_or_else(bad)?;
        Ok((num(a)?, num(b)?))
    };
    Ok(match family {
        "path" => named::path(num(arg)?),
        "cycle" => named::cycle(num(arg)?),
        "complete" => named::complete(num(arg)?),
        "star" => named::star(num(arg)?),
        "grid" => {
            let (r, c) = dims()?;
            named::grid(r, c)
        }
        "kab" => {
            let (a, b) = dims()?;
            named::complete_bipartite(a, b)
        }
        _ => return Err(bad()),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BenchRecord {
    pub instance: String,
    pub params: String,
    pub n: usize,
    pub m: usize,
    pub problem: String,
    pub algorithm: String,
    /// `ok`, `timeout`, `unsupported` or `error`.
    pub status: String,
    pub optimum: Option<u64>,
    pub elapsed_ms: u64,
    pub peak_cells: u64,
    /// Agreement with the oracle, when both ran.
    pub agrees: Option<bool>,
    pub note: String,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct BenchSummary {
    pub cells: usize,
    pub ok: usize,
    pub timeouts: usize,
    pub unsupported: usize,
    pub errors: usize,
    pub compared: usize,
    pub disagreements: usize,
}

#[derive(Clone, Debug)]
pub struct BenchOutcome {
    pub records: Vec<BenchRecord>,
    pub reports: Vec<SolveReport>,
    pub summary: BenchSummary,
}

impl BenchOutcome {
    pub fn csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.records {
            w.serialize(r).map_err(|e| Error::Report(format!("csv: {e}")))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Report(format!("csv: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv is utf-8"))
    }

    pub fn summary_json(&self) -> String {
        serde_json::to_string_pretty(&self.summary).expect("summary serializes")
    }

    /// One compact report per line, in record order.
    pub fn reports_jsonl(&self) -> String {
        self.reports.iter().map(|r| serde_json::to_string(r).expect("report serializes") + "\n").collect()
    }
}

/// Worker cap from the environment, if set to a positive integer.
pub fn worker_cap() -> Option<usize> {
    std::env::var(WORKERS_ENV).ok()?.parse().ok().filter(|&w| w > 0)
}

struct Cell<'a> {
    instance: &'a Instance,
    problem: Problem,
    algorithm: Algorithm,
}

fn run_cell(cell: &Cell, manifest: &Manifest) -> (BenchRecord, Option<SolveReport>) {
    let g = &cell.instance.graph;
    let opts = SolveOptions {
        algorithm: Some(cell.algorithm),
        repeats: manifest.repeats,
        seed: manifest.seed,
        deadline: manifest.time_budget_ms.map_or(Deadline::none(), |ms| Deadline::after(Duration::from_millis(ms))),
        timing: manifest.timing,
        ..Default::default()
    };
    let result = driver::solve(g, cell.problem, &opts).and_then(|r| verify_report(g, &r).map(|_| r));
    let mut record = BenchRecord {
        instance: cell.instance.id.clone(),
        params: cell.instance.params.clone(),
        n: g.n(),
        m: g.m(),
        problem: cell.problem.tag().into(),
        algorithm: cell.algorithm.tag().into(),
        status: "ok".into(),
        optimum: None,
        elapsed_ms: 0,
        peak_cells: 0,
        agrees: None,
        note: String::new(),
    };
    match result {
        Ok(report) => {
            record.optimum = report.optimum;
            record.elapsed_ms = report.elapsed_ms;
            record.peak_cells = report.peak_cells;
            (record, Some(report))
        }
        Err(e) => {
            record.status = match e {
                Error::Timeout => "timeout",
                Error::BudgetExceeded { .. }
                | Error::WidthExceeded { .. }
                | Error::TooLarge { .. }
                | Error::Expression(_)
                | Error::Report(_) => "unsupported",
                _ => "error",
            }
            .into();
            record.note = e.to_string();
            (record, None)
        }
    }
}

fn problems(manifest: &Manifest) -> Result<Vec<Problem>> {
    manifest.problems.iter().map(|p| Problem::from_tag(p, None)).collect()
}

/// Runs the cross product of instances, problems and algorithms. Cells run
/// in parallel; records come back in manifest order. The oracle column is
/// added automatically whenever the graph is small enough.
pub fn run(manifest: &Manifest, base: &Path) -> Result<BenchOutcome> {
    let instances = expand(manifest, base)?;
    let problems = problems(manifest)?;
    let mut algorithms: Vec<Algorithm> =
        manifest.algorithms.iter().map(|a| a.parse()).collect::<Result<_>>()?;
    algorithms.retain(|&a| a != Algorithm::WinWin);
    algorithms.sort();
    algorithms.dedup();
    if !algorithms.contains(&Algorithm::Oracle) {
        algorithms.insert(0, Algorithm::Oracle);
    }
    let cells: Vec<Cell> = instances
        .iter()
        .flat_map(|instance| {
            let algorithms = &algorithms;
            problems.iter().flat_map(move |&problem| {
                algorithms
                    .iter()
                    .filter(move |&&a| a != Algorithm::Oracle || instance.graph.n() <= oracle::DEFAULT_LIMIT)
                    .map(move |&algorithm| Cell { instance, problem, algorithm })
            })
        })
        .collect();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = worker_cap() {
        builder = builder.num_threads(w);
    }
    let pool = builder.build().map_err(|e| Error::Report(format!("thread pool: {e}")))?;
    let results: Vec<(BenchRecord, Option<SolveReport>)> =
        pool.install(|| cells.par_iter().map(|c| run_cell(c, manifest)).collect());

    let mut records = Vec::with_capacity(results.len());
    let mut reports = Vec::new();
    let mut summary = BenchSummary { cells: results.len(), ..Default::default() };
    let mut reference: Option<(String, String, Option<u64>)> = None;
    for (mut record, report) in results {
        if record.algorithm == Algorithm::Oracle.tag() {
            reference = (record.status == "ok")
                .then(|| (record.instance.clone(), record.problem.clone(), record.optimum));
        } else if record.status == "ok" {
            if let Some((inst, prob, opt)) = &reference {
                if *inst == record.instance && *prob == record.problem {
                    let agrees = record.optimum == *opt;
                    record.agrees = Some(agrees);
                    summary.compared += 1;
                    summary.disagreements += usize::from(!agrees);
                }
            }
        }
        match record.status.as_str() {
            "ok" => summary.ok += 1,
            "timeout" => summary.timeouts += 1,
            "unsupported" => summary.unsupported += 1,
            _ => summary.errors += 1,
        }
        records.push(record);
        reports.extend(report);
    }
    Ok(BenchOutcome { records, reports, summary })
}

/// Writes `results.csv`, `summary.json` and `reports.jsonl` into `out`. On an
/// oracle disagreement, also writes a repro bundle for the first one and
/// returns an error naming it.
pub fn write_outputs(outcome: &BenchOutcome, manifest: &Manifest, base: &Path, out: &Path) -> Result<()> {
    fs::create_dir_all(out)?;
    fs::write(out.join("results.csv"), outcome.csv()?)?;
    fs::write(out.join("summary.json"), outcome.summary_json())?;
    fs::write(out.join("reports.jsonl"), outcome.reports_jsonl())?;
    let Some(bad) = outcome.records.iter().find(|r| r.agrees == Some(false)) else {
        return Ok(());
    };
    let instances = expand(manifest, base)?;
    let inst = instances.iter().find(|i| i.id == bad.instance).expect("instance of a record exists");
    let dir = out.join("repro");
    fs::create_dir_all(&dir)?;
    fs::write(dir.join("graph.gr"), write_gr(&inst.graph))?;
    let info = serde_json::json!({
        "instance": bad.instance,
        "params": bad.params,
        "problem": bad.problem,
        "algorithm": bad.algorithm,
        "seed": manifest.seed,
        "repeats": manifest.repeats,
        "optimum": bad.optimum,
    });
    fs::write(dir.join("repro.json"), serde_json::to_string_pretty(&info)?)?;
    Err(Error::Disagreement(format!(
        "{} disagrees with the oracle on {} ({}); repro bundle in {}",
        bad.algorithm,
        bad.instance,
        bad.problem,
        dir.display()
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = r#"
seed = 7
algorithms = ["twdp", "rank", "cutcount", "twincover", "cliquewidth"]
repeats = 15

[[instances]]
kind = "exhaustive"
n_max = 4

[[instances]]
kind = "random"
n = 9
p = 0.4
count = 3

[[instances]]
kind = "named"
name = "petersen"
"#;

    #[test]
    fn small_manifest_agrees() {
        let m = Manifest::from_toml(SMALL).unwrap();
        let out = run(&m, Path::new(".")).unwrap();
        assert_eq!(out.summary.disagreements, 0, "{}", out.csv().unwrap());
        assert_eq!(out.summary.errors, 0);
        assert!(out.summary.compared > 0);
        assert!(out.records.iter().all(|r| r.status != "ok" || r.algorithm == "oracle" || r.agrees.is_some()));
    }

    #[test]
    fn csv_is_reproducible() {
        let m = Manifest::from_toml(SMALL).unwrap();
        let a = run(&m, Path::new(".")).unwrap();
        let b = run(&m, Path::new(".")).unwrap();
        assert_eq!(a.csv().unwrap(), b.csv().unwrap());
        assert_eq!(a.reports_jsonl(), b.reports_jsonl());
    }

    #[test]
    fn exhausted_budget_is_a_timeout_row() {
        let m = Manifest::from_toml(
            r#"
algorithms = ["twdp"]
problems = ["cmc"]
time_budget_ms = 0
[[instances]]
kind = "named"
name = "grid-3x3"
"#,
        )
        .unwrap();
        let out = run(&m, Path::new(".")).unwrap();
        let row = out.records.iter().find(|r| r.algorithm == "twdp").unwrap();
        assert_eq!(row.status, "timeout");
        assert_eq!(out.summary.timeouts, out.records.len());
    }

    #[test]
    fn unknown_names_are_rejected() {
        assert!(named_graph("grid-3").is_err());
        assert!(named_graph("wheel-5").is_err());
        assert_eq!(named_graph("kab-2x3").unwrap().m(), 6);
        assert!(Manifest::from_toml("algorithms = []\ninstances = []\nbogus = 1").is_err());
    }
}
