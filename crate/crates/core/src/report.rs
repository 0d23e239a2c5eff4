use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{cut_size, is_minimal_cut, side_from_vertices, vertices_of, Graph};

/// Which cut variant to optimize. Anchored variants fix `s` in S and `t` outside S.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Problem {
    Cmc,
    Mmc,
    CmcSt { s: usize, t: usize },
    MmcSt { s: usize, t: usize },
}

impl Problem {
    pub fn tag(&self) -> &'static str {
        match self {
            Problem::Cmc => "cmc",
            Problem::Mmc => "mmc",
            Problem::CmcSt { .. } => "cmc-st",
            Problem::MmcSt { .. } => "mmc-st",
        }
    }

    pub fn anchors(&self) -> Option<(usize, usize)> {
        match *self {
            Problem::CmcSt { s, t } | Problem::MmcSt { s, t } => Some((s, t)),
            _ => None,
        }
    }

    /// Whether the complement side must also be connected.
    pub fn is_minimal(&self) -> bool {
        matches!(self, Problem::Mmc | Problem::MmcSt { .. })
    }

    /// Builds a problem from its tag and optional 0-based anchors.
    pub fn from_tag(tag: &str, anchors: Option<(usize, usize)>) -> Result<Problem> {
        let need = |a: Option<(usize, usize)>| {
            a.ok_or_else(|| Error::Report(format!("problem {tag} needs --s and --t")))
        };
        Ok(match tag {
            "cmc" => Problem::Cmc,
            "mmc" => Problem::Mmc,
            "cmc-st" => {
                let (s, t) = need(anchors)?;
                Problem::CmcSt { s, t }
            }
            "mmc-st" => {
                let (s, t) = need(anchors)?;
                Problem::MmcSt { s, t }
            }
            _ => return Err(Error::Report(format!("unknown problem `{tag}`"))),
        })
    }

    pub fn check_anchors(&self, n: usize) -> Result<()> {
        match self.anchors() {
            Some((s, t)) if s >= n || t >= n || s == t => Err(Error::BadAnchors { n }),
            _ => Ok(()),
        }
    }

    /// Feasibility of the cut whose S side is `side[v] == true`.
    pub fn is_feasible(&self, g: &Graph, side: &[bool]) -> bool {
        if let Some((s, t)) = self.anchors() {
            if !side[s] || side[t] {
                return false;
            }
        }
        if self.is_minimal() {
            is_minimal_cut(g, side)
        } else {
            g.side_connected(side, true)
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Oracle,
    DpPartition,
    RankBased,
    CutCount,
    TwinCover,
    CliqueWidth,
    WinWin,
}

impl Algorithm {
    pub const ALL: [Algorithm; 7] = [
        Algorithm::Oracle,
        Algorithm::DpPartition,
        Algorithm::RankBased,
        Algorithm::CutCount,
        Algorithm::TwinCover,
        Algorithm::CliqueWidth,
        Algorithm::WinWin,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            Algorithm::Oracle => "oracle",
            Algorithm::DpPartition => "twdp",
            Algorithm::RankBased => "rank",
            Algorithm::CutCount => "cutcount",
            Algorithm::TwinCover => "twincover",
            Algorithm::CliqueWidth => "cliquewidth",
            Algorithm::WinWin => "winwin",
        }
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.tag() == s)
            .ok_or_else(|| Error::Report(format!("unknown algorithm `{s}`")))
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Result of one solver run. Vertex ids in `witness` and `anchors` are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    pub problem: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchors: Option<[usize; 2]>,
    pub algorithm: String,
    pub n: usize,
    pub m: usize,
    /// `None` when no feasible cut exists.
    pub optimum: Option<u64>,
    pub witness: Option<Vec<usize>>,
    pub seed: Option<u64>,
    pub repeats: Option<u32>,
    pub elapsed_ms: u64,
    /// Largest DP table seen, for benchmarking.
    #[serde(skip)]
    pub peak_cells: u64,
}

impl SolveReport {
    pub fn new(
        problem: Problem,
        algorithm: Algorithm,
        g: &Graph,
        optimum: Option<u64>,
        side: Option<&[bool]>,
    ) -> Self {
        SolveReport {
            problem: problem.tag().to_string(),
            anchors: problem.anchors().map(|(s, t)| [s + 1, t + 1]),
            algorithm: algorithm.tag().to_string(),
            n: g.n(),
            m: g.m(),
            optimum,
            witness: side.map(|s| vertices_of(s).into_iter().map(|v| v + 1).collect()),
            seed: None,
            repeats: None,
            elapsed_ms: 0,
            peak_cells: 0,
        }
    }

    pub fn parsed_problem(&self) -> Result<Problem> {
        let anchors = self.anchors.map(|[s, t]| (s.wrapping_sub(1), t.wrapping_sub(1)));
        Problem::from_tag(&self.problem, anchors)
    }

    /// Witness as a side vector over `0..n`.
    pub fn witness_side(&self) -> Option<Vec<bool>> {
        self.witness.as_ref().map(|w| {
            let zero: Vec<usize> = w.iter().map(|&v| v - 1).collect();
            side_from_vertices(self.n, &zero)
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Checks that a report is consistent with `g`: the witness is feasible and
/// its cut size equals the claimed optimum.
pub fn verify_report(g: &Graph, report: &SolveReport) -> Result<()> {
    let bad = |msg: String| Err(Error::Report(msg));
    if report.n != g.n() || report.m != g.m() {
        return bad(format!(
            "report is for n={} m={}, graph has n={} m={}",
            report.n,
            report.m,
            g.n(),
            g.m()
        ));
    }
    let problem = report.parsed_problem()?;
    problem.check_anchors(g.n())?;
    match (&report.optimum, &report.witness) {
        (None, Some(_)) => bad("witness given without an optimum".into()),
        (None, None) => Ok(()),
        (Some(_), None) if report.algorithm == Algorithm::CutCount.tag() => Ok(()),
        (Some(_), None) => bad("optimum given without a witness".into()),
        (Some(opt), Some(w)) => {
            if let Some(&v) = w.iter().find(|&&v| v == 0 || v > g.n()) {
                return bad(format!("witness vertex {v} out of range"));
            }
            let side = report.witness_side().unwrap();
            if !problem.is_feasible(g, &side) {
                return bad(format!("witness is not a feasible {} cut", problem.tag()));
            }
            let size = cut_size(g, &side) as u64;
            if size != *opt {
                return bad(format!("witness cuts {size} edges, report claims {opt}"));
            }
            Ok(())
        }
    }
}
