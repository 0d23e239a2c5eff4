//! Simple undirected graphs, the PACE `.gr` format and cut predicates.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from 0-based edges. Duplicates collapse; loops are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut norm = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        norm.dedup();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &norm {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: norm,
            adj,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Number of connected components (0 for the empty graph).
    pub fn component_count(&self) -> usize {
        let mut seen = vec![false; self.n];
        let mut count = 0;
        for v in 0..self.n {
            if !seen[v] {
                count += 1;
                self.flood(v, &mut seen, |_| true);
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    pub fn require_connected(&self) -> Result<()> {
        match self.component_count() {
            0 | 1 => Ok(()),
            c => Err(Error::Disconnected(c)),
        }
    }

    fn flood(&self, start: usize, seen: &mut [bool], allowed: impl Fn(usize) -> bool) {
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if !seen[w] && allowed(w) {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }

    /// Whether the subgraph induced by `side[v] == want` is connected.
    /// The empty vertex set counts as connected.
    pub fn side_connected(&self, side: &[bool], want: bool) -> bool {
        let Some(start) = (0..self.n).find(|&v| side[v] == want) else {
            return true;
        };
        let mut seen = vec![false; self.n];
        self.flood(start, &mut seen, |w| side[w] == want);
        (0..self.n).all(|v| side[v] != want || seen[v])
    }

    /// Subgraph induced by `keep`, with vertices renumbered in increasing order.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let edges: Vec<_> = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]))
            .collect();
        Graph::from_edges(keep.len(), &edges).expect("induced edges are valid")
    }

    /// Adjacency bitmasks, for graphs with at most 64 vertices.
    pub fn adjacency_masks(&self) -> Vec<u64> {
        assert!(self.n <= 64);
        self.adj
            .iter()
            .map(|l| l.iter().fold(0u64, |m, &w| m | (1 << w)))
            .collect()
    }
}

/// Number of edges with exactly one endpoint on the `true` side.
pub fn cut_size(g: &Graph, side: &[bool]) -> usize {
    g.edges().iter().filter(|&&(u, v)| side[u] != side[v]).count()
}

/// `G[S]` is connected (S = the `true` side).
pub fn is_connected_subset(g: &Graph, side: &[bool]) -> bool {
    g.side_connected(side, true)
}

/// Both sides are non-empty and each induces a connected subgraph.
pub fn is_minimal_cut(g: &Graph, side: &[bool]) -> bool {
    side.iter().any(|&b| b)
        && side.iter().any(|&b| !b)
        && g.side_connected(side, true)
        && g.side_connected(side, false)
}

pub fn side_from_vertices(n: usize, vertices: &[usize]) -> Vec<bool> {
    let mut side = vec![false; n];
    for &v in vertices {
        side[v] = true;
    }
    side
}

pub fn vertices_of(side: &[bool]) -> Vec<usize> {
    (0..side.len()).filter(|&v| side[v]).collect()
}

/// Parses the PACE `.gr` format (1-based vertex ids).
pub fn parse_gr(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let err = |msg: &str| Error::Parse {
            line: line_no,
            msg: msg.to_string(),
        };
        if toks[0] == "p" {
            if header.is_some() {
                return Err(err("duplicate header"));
            }
            if toks.len() != 4 || toks[1] != "tw" {
                return Err(err("expected `p tw <n> <m>`"));
            }
            let n = toks[2].parse().map_err(|_| err("bad vertex count"))?;
            let m = toks[3].parse().map_err(|_| err("bad edge count"))?;
            header = Some((n, m));
            continue;
        }
        let Some((n, _)) = header else {
            return Err(err("edge before header"));
        };
        if toks.len() != 2 {
            return Err(err("expected two endpoints"));
        }
        let mut ends = [0usize; 2];
        for (slot, tok) in ends.iter_mut().zip(&toks) {
            let v: usize = tok.parse().map_err(|_| err("bad vertex id"))?;
            if v == 0 || v > n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            *slot = v - 1;
        }
        if ends[0] == ends[1] {
            return Err(Error::SelfLoop(ends[0] + 1));
        }
        edges.push((ends[0], ends[1]));
    }
    let Some((n, m)) = header else {
        return Err(Error::Parse {
            line: 0,
            msg: "missing header".into(),
        });
    };
    let g = Graph::from_edges(n, &edges)?;
    if g.m() != edges.len() {
        log::warn!("{} duplicate edges collapsed", edges.len() - g.m());
    }
    if edges.len() != m {
        log::warn!("header announces {m} edges, found {}", edges.len());
    }
    Ok(g)
}

/// Canonical `.gr` text: header, then sorted edges.
pub fn write_gr(g: &Graph) -> String {
    let mut out = format!("p tw {} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        writeln!(out, "{} {}", u + 1, v + 1).unwrap();
    }
    out
}

/// Common small graphs used by tests and examples.
pub mod named {
    use super::Graph;

    pub fn path(n: usize) -> Graph {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        let mut e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        if n > 2 {
            e.push((n - 1, 0));
        }
        Graph::from_edges(n, &e).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        Graph::from_edges(n, &e).unwrap()
    }

    pub fn star(leaves: usize) -> Graph {
        let e: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &e).unwrap()
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut e = Vec::new();
        for u in 0..a {
            for v in 0..b {
                e.push((u, a + v));
            }
        }
        Graph::from_edges(a + b, &e).unwrap()
    }

    pub fn grid(rows: usize, cols: usize) -> Graph {
        let mut e = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    e.push((v, v + 1));
                }
                if r + 1 < rows {
                    e.push((v, v + cols));
                }
            }
        }
        Graph::from_edges(rows * cols, &e).unwrap()
    }

    pub fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, &e).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_canonical_write() {
        let g = parse_gr("c hello\np tw 3 2\n1 2\n2 3\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(write_gr(&g), "p tw 3 2\n1 2\n2 3\n");
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = parse_gr("p tw 2 2\n1 2\n2 1\n").unwrap();
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn malformed_input_is_rejected() {
        assert!(matches!(parse_gr("p tw 2 1\n1 1\n"), Err(Error::SelfLoop(1))));
        assert!(matches!(
            parse_gr("p tw 2 1\n1 3\n"),
            Err(Error::VertexOutOfRange { vertex: 3, n: 2 })
        ));
        assert!(matches!(parse_gr("p td 2 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_gr("1 2\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn predicates_on_path() {
        let g = named::path(3);
        assert_eq!(cut_size(&g, &[false, true, false]), 2);
        assert!(is_connected_subset(&g, &[false, true, false]));
        assert!(!is_minimal_cut(&g, &[false, true, false]));
        assert!(is_minimal_cut(&g, &[true, false, false]));
        assert!(!is_connected_subset(&g, &[true, false, true]));
    }

    #[test]
    fn components() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(g.component_count(), 2);
        assert!(matches!(g.require_connected(), Err(Error::Disconnected(2))));
        assert!(named::petersen().is_connected());
        assert_eq!(named::petersen().m(), 15);
    }
}
