//! Tree decompositions: PACE `.td` I/O, validation, a min-fill heuristic and
//! conversion to nice form with optional anchor vertices.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    /// Number of graph vertices the decomposition refers to.
    pub n: usize,
    pub bags: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotATree,
    UnknownVertex(usize),
    VertexCoverage(usize),
    EdgeCoverage(usize, usize),
    SubtreeConnectivity(usize),
}

impl fmt::Display for Violation {
    // Vertices are shown 1-based, as in the file formats.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotATree => write!(f, "bags do not form a tree"),
            Violation::UnknownVertex(v) => write!(f, "bag mentions unknown vertex {}", v + 1),
            Violation::VertexCoverage(v) => write!(f, "vertex coverage violated: {}", v + 1),
            Violation::EdgeCoverage(u, v) => {
                write!(f, "edge coverage violated: {} {}", u + 1, v + 1)
            }
            Violation::SubtreeConnectivity(v) => {
                write!(f, "subtree connectivity violated: {}", v + 1)
            }
        }
    }
}

impl TreeDecomposition {
    /// Largest bag size minus one (-1 style widths clamp to 0).
    pub fn width(&self) -> usize {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(1).max(1) - 1
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }
}

/// Checks the three decomposition properties, reporting the first violation
/// in the order: tree shape, vertex coverage, edge coverage, connectivity.
pub fn validate(g: &Graph, td: &TreeDecomposition) -> std::result::Result<(), Violation> {
    let k = td.bags.len();
    if k == 0 {
        return if g.n() == 0 { Ok(()) } else { Err(Violation::VertexCoverage(0)) };
    }
    if td.edges.len() != k - 1 || td.edges.iter().any(|&(a, b)| a >= k || b >= k) {
        return Err(Violation::NotATree);
    }
    let adj = td.adjacency();
    let mut seen = vec![false; k];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    if seen.iter().any(|&s| !s) {
        return Err(Violation::NotATree);
    }
    let mut holders = vec![Vec::new(); g.n()];
    for (i, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            if v >= g.n() {
                return Err(Violation::UnknownVertex(v));
            }
            holders[v].push(i);
        }
    }
    if let Some(v) = (0..g.n()).find(|&v| holders[v].is_empty()) {
        return Err(Violation::VertexCoverage(v));
    }
    let mut membership: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); g.n()];
    for v in 0..g.n() {
        membership[v].extend(holders[v].iter().copied());
    }
    for &(u, v) in g.edges() {
        if membership[u].is_disjoint(&membership[v]) {
            return Err(Violation::EdgeCoverage(u, v));
        }
    }
    for v in 0..g.n() {
        let inside = &membership[v];
        let start = *inside.iter().next().unwrap();
        let mut reached = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if inside.contains(&y) && reached.insert(y) {
                    stack.push(y);
                }
            }
        }
        if reached.len() != inside.len() {
            return Err(Violation::SubtreeConnectivity(v));
        }
    }
    Ok(())
}

/// Parses the PACE `.td` format.
pub fn parse_td(text: &str) -> Result<TreeDecomposition> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let toks: Vec<&str> = line.split_whitespace().collect();
        let num = |t: &str| -> Result<usize> {
            t.parse().map_err(|_| err(format!("bad number `{t}`")))
        };
        match toks[0] {
            "s" => {
                if toks.len() != 5 || toks[1] != "td" {
                    return Err(err("expected `s td <bags> <max bag> <n>`".into()));
                }
                if header.is_some() {
                    return Err(err("duplicate header".into()));
                }
                let h = (num(toks[2])?, num(toks[3])?, num(toks[4])?);
                bags = vec![None; h.0];
                header = Some(h);
            }
            "b" => {
                let Some((k, max_bag, n)) = header else {
                    return Err(err("bag before header".into()));
                };
                if toks.len() < 2 {
                    return Err(err("bag without id".into()));
                }
                let id = num(toks[1])?;
                if id == 0 || id > k {
                    return Err(err(format!("bag id {id} outside 1..={k}")));
                }
                if bags[id - 1].is_some() {
                    return Err(err(format!("bag {id} defined twice")));
                }
                let mut bag = Vec::new();
                for t in &toks[2..] {
                    let v = num(t)?;
                    if v == 0 || v > n {
                        return Err(err(format!("bag references vertex {v} of a {n}-vertex graph")));
                    }
                    bag.push(v - 1);
                }
                bag.sort_unstable();
                bag.dedup();
                if bag.len() > max_bag {
                    return Err(err(format!("bag {id} larger than announced {max_bag}")));
                }
                bags[id - 1] = Some(bag);
            }
            _ => {
                let Some((k, _, _)) = header else {
                    return Err(err("edge before header".into()));
                };
                if toks.len() != 2 {
                    return Err(err("expected two bag ids".into()));
                }
                let (a, b) = (num(toks[0])?, num(toks[1])?);
                if a == 0 || b == 0 || a > k || b > k {
                    return Err(err(format!("tree edge {a} {b} names a missing bag")));
                }
                edges.push((a - 1, b - 1));
            }
        }
    }
    let Some((_, _, n)) = header else {
        return Err(Error::Parse { line: 0, msg: "missing header".into() });
    };
    let bags = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| {
            b.ok_or_else(|| Error::Parse { line: 0, msg: format!("bag {} never defined", i + 1) })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TreeDecomposition { n, bags, edges })
}

/// Canonical `.td` text: sorted bag contents and sorted tree edges.
pub fn write_td(td: &TreeDecomposition) -> String {
    let max_bag = td.bags.iter().map(|b| b.len()).max().unwrap_or(0);
    let mut out = format!("s td {} {} {}\n", td.bags.len(), max_bag, td.n);
    for (i, bag) in td.bags.iter().enumerate() {
        let mut b = bag.clone();
        b.sort_unstable();
        write!(out, "b {}", i + 1).unwrap();
        for v in b {
            write!(out, " {}", v + 1).unwrap();
        }
        out.push('\n');
    }
    let mut edges: Vec<_> = td.edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    edges.sort_unstable();
    for (a, b) in edges {
        writeln!(out, "{} {}", a + 1, b + 1).unwrap();
    }
    out
}

/// Elimination order by minimum fill-in, ties to the smallest vertex id.
pub fn min_fill_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best: Option<(usize, usize)> = None;
        for v in (0..n).filter(|&v| alive[v]) {
            let nb: Vec<usize> = adj[v].iter().copied().collect();
            let mut fill = 0;
            for (i, &a) in nb.iter().enumerate() {
                for &b in &nb[i + 1..] {
                    if !adj[a].contains(&b) {
                        fill += 1;
                    }
                }
            }
            if best.map_or(true, |(f, _)| fill < f) {
                best = Some((fill, v));
                if fill == 0 {
                    break;
                }
            }
        }
        let v = best.unwrap().1;
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        for (i, &a) in nb.iter().enumerate() {
            adj[a].remove(&v);
            for &b in &nb[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        adj[v].clear();
        alive[v] = false;
        order.push(v);
    }
    order
}

/// Tree decomposition from an elimination order.
pub fn from_elimination_order(g: &Graph, order: &[usize]) -> TreeDecomposition {
    let n = g.n();
    if n == 0 {
        return TreeDecomposition { n, bags: vec![Vec::new()], edges: Vec::new() };
    }
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut higher: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for &(u, v) in g.edges() {
        let (lo, hi) = if pos[u] < pos[v] { (u, v) } else { (v, u) };
        higher[lo].insert(hi);
    }
    let mut bags = Vec::with_capacity(n);
    let mut parent = vec![None; n];
    for &v in order {
        let nb: Vec<usize> = higher[v].iter().copied().collect();
        if let Some(&p) = nb.iter().min_by_key(|&&u| pos[u]) {
            parent[pos[v]] = Some(pos[p]);
            for &u in &nb {
                if u != p {
                    higher[p].insert(u);
                }
            }
        }
        let mut bag = nb;
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
    }
    // Components left without a parent hang off the last bag.
    let mut edges = Vec::new();
    for i in 0..n - 1 {
        edges.push((i, parent[i].unwrap_or(n - 1)));
    }
    compress(TreeDecomposition { n, bags, edges })
}

/// Contracts tree edges whose bags are nested, keeping the larger bag.
fn compress(td: TreeDecomposition) -> TreeDecomposition {
    let k = td.bags.len();
    let mut rep: Vec<usize> = (0..k).collect();
    fn find(rep: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while rep[r] != r {
            r = rep[r];
        }
        let mut y = x;
        while rep[y] != r {
            let next = rep[y];
            rep[y] = r;
            y = next;
        }
        r
    }
    let mut bags: Vec<BTreeSet<usize>> = td.bags.iter().map(|b| b.iter().copied().collect()).collect();
    for &(a, b) in &td.edges {
        let (ra, rb) = (find(&mut rep, a), find(&mut rep, b));
        if bags[ra].is_subset(&bags[rb]) {
            rep[ra] = rb;
        } else if bags[rb].is_subset(&bags[ra]) {
            rep[rb] = ra;
        }
    }
    let mut index = vec![usize::MAX; k];
    let mut new_bags = Vec::new();
    for i in 0..k {
        if find(&mut rep, i) == i {
            index[i] = new_bags.len();
            new_bags.push(std::mem::take(&mut bags[i]).into_iter().collect::<Vec<_>>());
        }
    }
    let mut edges = Vec::new();
    for &(a, b) in &td.edges {
        let (ra, rb) = (find(&mut rep, a), find(&mut rep, b));
        if ra != rb {
            edges.push((index[ra], index[rb]));
        }
    }
    TreeDecomposition { n: td.n, bags: new_bags, edges }
}

/// Min-fill heuristic decomposition.
pub fn heuristic_decompose(g: &Graph) -> TreeDecomposition {
    from_elimination_order(g, &min_fill_order(g))
}

/// Path decomposition from a greedy vertex-separation order.
pub fn greedy_path_decomposition(g: &Graph) -> TreeDecomposition {
    let n = g.n();
    if n == 0 {
        return TreeDecomposition { n, bags: vec![Vec::new()], edges: Vec::new() };
    }
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let boundary_after = |placed: &[bool], v: usize| -> usize {
        // Placed vertices (with v) that still have an unplaced neighbour.
        (0..n)
            .filter(|&u| placed[u] || u == v)
            .filter(|&u| g.neighbors(u).iter().any(|&w| !placed[w] && w != v))
            .count()
    };
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .min_by_key(|&v| (boundary_after(&placed, v), g.degree(v), v))
            .unwrap();
        placed[v] = true;
        order.push(v);
    }
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let last_nb: Vec<usize> =
        (0..n).map(|u| g.neighbors(u).iter().map(|&w| pos[w]).max().unwrap_or(0)).collect();
    let mut bags = Vec::with_capacity(n);
    for (i, &v) in order.iter().enumerate() {
        let mut bag: Vec<usize> = order[..i].iter().copied().filter(|&u| last_nb[u] >= i).collect();
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
    }
    let edges = (1..n).map(|i| (i - 1, i)).collect();
    compress(TreeDecomposition { n, bags, edges })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Leaf,
    IntroduceVertex(usize),
    IntroduceEdge(usize, usize),
    Forget(usize),
    Join,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceNode {
    pub kind: NodeKind,
    /// Sorted bag contents.
    pub bag: Vec<usize>,
    pub children: Vec<usize>,
}

/// Nice tree decomposition. Every node's children have smaller indices, so
/// iterating `nodes` in order is a bottom-up traversal; the root is last.
#[derive(Clone, Debug)]
pub struct NiceTreeDecomposition {
    pub nodes: Vec<NiceNode>,
    /// Sorted anchor vertices present in every bag.
    pub anchors: Vec<usize>,
    /// The first anchor as passed in, which solvers place in S.
    pub s_anchor: Option<usize>,
}

impl NiceTreeDecomposition {
    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn width(&self) -> usize {
        self.nodes.iter().map(|x| x.bag.len()).max().unwrap_or(1).max(1) - 1
    }

    pub fn max_bag(&self) -> usize {
        self.nodes.iter().map(|x| x.bag.len()).max().unwrap_or(0)
    }

    /// The same tree viewed as a plain decomposition.
    pub fn as_plain(&self, n: usize) -> TreeDecomposition {
        let mut edges = Vec::new();
        for (i, node) in self.nodes.iter().enumerate() {
            for &c in &node.children {
                edges.push((c, i));
            }
        }
        TreeDecomposition { n, bags: self.nodes.iter().map(|x| x.bag.clone()).collect(), edges }
    }
}

struct NiceBuilder<'a> {
    g: &'a Graph,
    anchors: Vec<usize>,
    nodes: Vec<NiceNode>,
}

impl NiceBuilder<'_> {
    fn push(&mut self, kind: NodeKind, bag: Vec<usize>, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode { kind, bag, children });
        self.nodes.len() - 1
    }

    fn bag_of(&self, idx: usize) -> Vec<usize> {
        self.nodes[idx].bag.clone()
    }

    /// Introduces the edges from `v` to the rest of the current bag, then forgets `v`.
    fn forget(&mut self, mut top: usize, v: usize) -> usize {
        let bag = self.bag_of(top);
        for &u in &bag {
            if u != v && self.g.has_edge(u, v) {
                top = self.push(NodeKind::IntroduceEdge(u.min(v), u.max(v)), bag.clone(), vec![top]);
            }
        }
        let reduced: Vec<usize> = bag.into_iter().filter(|&x| x != v).collect();
        self.push(NodeKind::Forget(v), reduced, vec![top])
    }

    fn introduce(&mut self, top: usize, v: usize) -> usize {
        let mut bag = self.bag_of(top);
        bag.push(v);
        bag.sort_unstable();
        self.push(NodeKind::IntroduceVertex(v), bag, vec![top])
    }

    /// Moves from the child's bag to `target` (anchors included in both).
    fn adapt(&mut self, mut top: usize, target: &[usize]) -> usize {
        let current = self.bag_of(top);
        for v in current {
            if !target.contains(&v) {
                top = self.forget(top, v);
            }
        }
        for &v in target {
            if !self.nodes[top].bag.contains(&v) {
                top = self.introduce(top, v);
            }
        }
        top
    }
}

/// Converts a valid decomposition into nice form. Every bag additionally
/// holds the `anchors`; leaves and the root carry exactly the anchors.
pub fn to_nice(g: &Graph, td: &TreeDecomposition, anchors: &[usize]) -> Result<NiceTreeDecomposition> {
    validate(g, td).map_err(Error::InvalidDecomposition)?;
    let s_anchor = anchors.first().copied();
    let mut anchors: Vec<usize> = anchors.to_vec();
    anchors.sort_unstable();
    anchors.dedup();
    if anchors.iter().any(|&a| a >= g.n()) {
        return Err(Error::BadAnchors { n: g.n() });
    }
    let k = td.bags.len();
    let adj = td.adjacency();
    // Iterative post-order from bag 0.
    let mut parent = vec![usize::MAX; k];
    let mut order = Vec::with_capacity(k);
    let mut stack = vec![0];
    let mut seen = vec![false; k];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        order.push(x);
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                parent[y] = x;
                stack.push(y);
            }
        }
    }
    let target_bag = |i: usize| -> Vec<usize> {
        let mut b: Vec<usize> = td.bags[i].iter().copied().chain(anchors.iter().copied()).collect();
        b.sort_unstable();
        b.dedup();
        b
    };
    let mut b = NiceBuilder { g, anchors: anchors.clone(), nodes: Vec::new() };
    let mut built: Vec<Option<usize>> = vec![None; k];
    let mut child_tops: Vec<Vec<usize>> = vec![Vec::new(); k];
    for &x in order.iter().rev() {
        let target = target_bag(x);
        let mut tops = std::mem::take(&mut child_tops[x]);
        tops.sort_unstable();
        let mut adapted: Vec<usize> = tops.into_iter().map(|t| b.adapt(t, &target)).collect();
        let top = if adapted.is_empty() {
            let leaf = b.push(NodeKind::Leaf, b.anchors.clone(), Vec::new());
            b.adapt(leaf, &target)
        } else {
            let mut acc = adapted.remove(0);
            for other in adapted {
                acc = b.push(NodeKind::Join, target.clone(), vec![acc, other]);
            }
            acc
        };
        built[x] = Some(top);
        if parent[x] != usize::MAX {
            child_tops[parent[x]].push(top);
        }
    }
    let mut top = built[0].unwrap();
    let anchor_target = anchors.clone();
    top = b.adapt(top, &anchor_target);
    if anchors.len() == 2 && g.has_edge(anchors[0], anchors[1]) {
        top = b.push(NodeKind::IntroduceEdge(anchors[0], anchors[1]), anchors.clone(), vec![top]);
    }
    debug_assert_eq!(top, b.nodes.len() - 1);
    Ok(NiceTreeDecomposition { nodes: b.nodes, anchors, s_anchor })
}

/// Heuristic decomposition made nice, with anchors.
pub fn nice_for(g: &Graph, anchors: &[usize]) -> Result<NiceTreeDecomposition> {
    to_nice(g, &heuristic_decompose(g), anchors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn heuristic_widths() {
        assert_eq!(heuristic_decompose(&named::path(3)).width(), 1);
        assert_eq!(heuristic_decompose(&named::cycle(4)).width(), 2);
        assert_eq!(heuristic_decompose(&named::complete(4)).width(), 3);
        assert_eq!(heuristic_decompose(&named::star(5)).width(), 1);
    }

    #[test]
    fn td_text_round_trip() {
        let g = named::grid(3, 3);
        let td = heuristic_decompose(&g);
        let text = write_td(&td);
        let back = parse_td(&text).unwrap();
        assert_eq!(write_td(&back), text);
        validate(&g, &back).unwrap();
    }

    #[test]
    fn bad_td_files() {
        let e = parse_td("s td 1 2 4\nb 1 1 5\n").unwrap_err();
        assert!(e.to_string().contains("vertex 5 of a 4-vertex graph"));
        assert!(parse_td("s td 2 2 4\nb 1 1 2\nb 2 2 3\n1 3\n").is_err());
    }

    #[test]
    fn violations_are_reported() {
        let g = named::path(3);
        let td = TreeDecomposition { n: 3, bags: vec![vec![0, 1], vec![1]], edges: vec![(0, 1)] };
        assert_eq!(validate(&g, &td), Err(Violation::VertexCoverage(2)));
        assert_eq!(Violation::VertexCoverage(2).to_string(), "vertex coverage violated: 3");
        let td = TreeDecomposition { n: 3, bags: vec![vec![0, 1], vec![2]], edges: vec![(0, 1)] };
        assert_eq!(validate(&g, &td), Err(Violation::EdgeCoverage(1, 2)));
        let td = TreeDecomposition {
            n: 3,
            bags: vec![vec![0, 1], vec![1, 2], vec![0]],
            edges: vec![(0, 1), (1, 2)],
        };
        assert_eq!(validate(&g, &td), Err(Violation::SubtreeConnectivity(0)));
    }

    fn check_nice(g: &Graph, nice: &NiceTreeDecomposition) {
        validate(g, &nice.as_plain(g.n())).unwrap();
        let mut introduced = Vec::new();
        for (i, node) in nice.nodes.iter().enumerate() {
            assert!(node.children.iter().all(|&c| c < i));
            let child_bag = |j: usize| &nice.nodes[node.children[j]].bag;
            match node.kind {
                NodeKind::Leaf => assert_eq!(node.bag, nice.anchors),
                NodeKind::IntroduceVertex(v) => {
                    let mut b = child_bag(0).clone();
                    b.push(v);
                    b.sort_unstable();
                    assert_eq!(b, node.bag);
                    assert!(!nice.anchors.contains(&v));
                }
                NodeKind::Forget(v) => {
                    assert!(child_bag(0).contains(&v));
                    assert!(!node.bag.contains(&v));
                }
                NodeKind::IntroduceEdge(u, v) => {
                    assert_eq!(child_bag(0), &node.bag);
                    assert!(node.bag.contains(&u) && node.bag.contains(&v));
                    introduced.push((u, v));
                }
                NodeKind::Join => {
                    assert_eq!(child_bag(0), &node.bag);
                    assert_eq!(child_bag(1), &node.bag);
                }
            }
        }
        assert_eq!(nice.nodes[nice.root()].bag, nice.anchors);
        introduced.sort_unstable();
        assert_eq!(introduced, g.edges());
    }

    #[test]
    fn nice_conversion_properties() {
        for g in [named::grid(3, 4), named::petersen(), named::complete(5), named::star(4)] {
            check_nice(&g, &nice_for(&g, &[]).unwrap());
            check_nice(&g, &nice_for(&g, &[0, 3]).unwrap());
            let base = heuristic_decompose(&g).width();
            assert!(nice_for(&g, &[0, 3]).unwrap().width() <= base + 2);
            let pd = greedy_path_decomposition(&g);
            validate(&g, &pd).unwrap();
        }
    }

    #[test]
    fn node_count_is_linear() {
        for (r, c) in [(2, 10), (3, 12), (4, 8)] {
            let g = named::grid(r, c);
            let nice = nice_for(&g, &[]).unwrap();
            assert!(nice.nodes.len() <= 4 * (g.n() + g.m()), "{} nodes", nice.nodes.len());
        }
    }
}
