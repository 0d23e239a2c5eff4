//! Clique-width expressions and a DP over their decomposition trees.
//!
//! The tree follows the unions of an expression. At each node the vertices
//! built so far split into twin-classes (same neighbourhood outside the
//! node). States record how many vertices of each class lie in S and, per
//! side, the multiset of class-sets spanned by the side's components
//! (multiplicities capped at two). Components from different children merge
//! when they contain adjacent classes, which is exact because adjacency
//! between twin-classes is all-or-nothing.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::graph::{cut_size, Graph};
use crate::report::{Algorithm, Problem, SolveReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CwExpr {
    Intro { vertex: usize, label: u8 },
    Union(Box<CwExpr>, Box<CwExpr>),
    Join { a: u8, b: u8, inner: Box<CwExpr> },
    Relabel { from: u8, to: u8, inner: Box<CwExpr> },
}

impl CwExpr {
    pub fn intro(vertex: usize, label: u8) -> Self {
        CwExpr::Intro { vertex, label }
    }

    pub fn union(a: CwExpr, b: CwExpr) -> Self {
        CwExpr::Union(Box::new(a), Box::new(b))
    }

    pub fn join(a: u8, b: u8, inner: CwExpr) -> Self {
        CwExpr::Join { a, b, inner: Box::new(inner) }
    }

    pub fn relabel(from: u8, to: u8, inner: CwExpr) -> Self {
        CwExpr::Relabel { from, to, inner: Box::new(inner) }
    }

    /// Largest label mentioned.
    pub fn width(&self) -> u8 {
        match self {
            CwExpr::Intro { label, .. } => *label,
            CwExpr::Union(a, b) => a.width().max(b.width()),
            CwExpr::Join { a, b, inner } => (*a).max(*b).max(inner.width()),
            CwExpr::Relabel { from, to, inner } => (*from).max(*to).max(inner.width()),
        }
    }

    fn collect_vertices(&self, out: &mut Vec<usize>) {
        match self {
            CwExpr::Intro { vertex, .. } => out.push(*vertex),
            CwExpr::Union(a, b) => {
                a.collect_vertices(out);
                b.collect_vertices(out);
            }
            CwExpr::Join { inner, .. } | CwExpr::Relabel { inner, .. } => inner.collect_vertices(out),
        }
    }
}

fn tokenize(text: &str) -> Vec<String> {
    text.replace('(', " ( ").replace(')', " ) ").split_whitespace().map(str::to_string).collect()
}

/// Parses `(intro v l)`, `(union E E ...)`, `(join a b E)` and `(relabel from to E)`.
/// Vertex ids are 1-based; labels start at 1.
pub fn parse_cw(text: &str) -> Result<CwExpr> {
    let toks = tokenize(text);
    let mut pos = 0;
    let expr = parse_expr(&toks, &mut pos)?;
    if pos != toks.len() {
        return Err(Error::Expression(format!("trailing input at token {}", pos + 1)));
    }
    Ok(expr)
}

fn parse_expr(toks: &[String], pos: &mut usize) -> Result<CwExpr> {
    let err = |m: &str| Error::Expression(m.to_string());
    let next = |pos: &mut usize| -> Result<&String> {
        let t = toks.get(*pos).ok_or_else(|| err("unexpected end of input"))?;
        *pos += 1;
        Ok(t)
    };
    let number = |pos: &mut usize| -> Result<usize> {
        let t = next(pos)?;
        t.parse().map_err(|_| Error::Expression(format!("expected a number, found `{t}`")))
    };
    let label = |pos: &mut usize| -> Result<u8> {
        let l = number(pos)?;
        if l == 0 || l > u8::MAX as usize {
            return Err(Error::Expression(format!("label {l} out of range")));
        }
        Ok(l as u8)
    };
    if next(pos)? != "(" {
        return Err(err("expected `(`"));
    }
    let head = next(pos)?.clone();
    let expr = match head.as_str() {
        "intro" => {
            let v = number(pos)?;
            if v == 0 {
                return Err(err("vertex ids start at 1"));
            }
            CwExpr::intro(v - 1, label(pos)?)
        }
        "union" => {
            let mut parts = Vec::new();
            while toks.get(*pos).map(String::as_str) == Some("(") {
                parts.push(parse_expr(toks, pos)?);
            }
            if parts.len() < 2 {
                return Err(err("union needs at least two operands"));
            }
            let mut it = parts.into_iter();
            let first = it.next().unwrap();
            it.fold(first, CwExpr::union)
        }
        "join" => {
            let (a, b) = (label(pos)?, label(pos)?);
            if a == b {
                return Err(err("join needs two different labels"));
            }
            CwExpr::join(a, b, parse_expr(toks, pos)?)
        }
        "relabel" => {
            let (from, to) = (label(pos)?, label(pos)?);
            CwExpr::relabel(from, to, parse_expr(toks, pos)?)
        }
        other => return Err(Error::Expression(format!("unknown operation `{other}`"))),
    };
    if next(pos)? != ")" {
        return Err(err("expected `)`"));
    }
    Ok(expr)
}

pub fn write_cw(expr: &CwExpr) -> String {
    let mut out = String::new();
    fn rec(e: &CwExpr, out: &mut String) {
        match e {
            CwExpr::Intro { vertex, label } => write!(out, "(intro {} {label})", vertex + 1).unwrap(),
            CwExpr::Union(a, b) => {
                out.push_str("(union ");
                rec(a, out);
                out.push(' ');
                rec(b, out);
                out.push(')');
            }
            CwExpr::Join { a, b, inner } => {
                write!(out, "(join {a} {b} ").unwrap();
                rec(inner, out);
                out.push(')');
            }
            CwExpr::Relabel { from, to, inner } => {
                write!(out, "(relabel {from} {to} ").unwrap();
                rec(inner, out);
                out.push(')');
            }
        }
    }
    rec(expr, &mut out);
    out
}

/// The graph an expression builds. Vertex ids must be exactly `0..n`, each once.
pub fn evaluate(expr: &CwExpr) -> Result<Graph> {
    let mut vertices = Vec::new();
    expr.collect_vertices(&mut vertices);
    let n = vertices.len();
    let mut seen = vec![false; n];
    for &v in &vertices {
        if v >= n {
            return Err(Error::Expression(format!("vertex {} leaves a gap in 1..={n}", v + 1)));
        }
        if seen[v] {
            return Err(Error::Expression(format!("vertex {} introduced twice", v + 1)));
        }
        seen[v] = true;
    }
    let mut edges = Vec::new();
    fn rec(e: &CwExpr, edges: &mut Vec<(usize, usize)>) -> Vec<(usize, u8)> {
        match e {
            CwExpr::Intro { vertex, label } => vec![(*vertex, *label)],
            CwExpr::Union(a, b) => {
                let mut l = rec(a, edges);
                l.extend(rec(b, edges));
                l
            }
            CwExpr::Join { a, b, inner } => {
                let l = rec(inner, edges);
                for &(u, lu) in &l {
                    if lu != *a {
                        continue;
                    }
                    for &(v, lv) in &l {
                        if lv == *b {
                            edges.push((u, v));
                        }
                    }
                }
                l
            }
            CwExpr::Relabel { from, to, inner } => {
                let mut l = rec(inner, edges);
                for x in &mut l {
                    if x.1 == *from {
                        x.1 = *to;
                    }
                }
                l
            }
        }
    }
    rec(expr, &mut edges);
    Graph::from_edges(n, &edges)
}

/// Width-2 expression for a cograph, or `None` if `g` is not one.
pub fn cograph_expression(g: &Graph) -> Option<CwExpr> {
    fn build(g: &Graph, vs: &[usize]) -> Option<CwExpr> {
        if vs.len() == 1 {
            return Some(CwExpr::intro(vs[0], 1));
        }
        let parts = split(g, vs, false);
        if parts.len() > 1 {
            let mut exprs = parts.iter().map(|p| build(g, p));
            let first = exprs.next().unwrap()?;
            return exprs.try_fold(first, |acc, e| Some(CwExpr::union(acc, e?)));
        }
        let parts = split(g, vs, true);
        if parts.len() < 2 {
            return None;
        }
        let mut exprs = parts.iter().map(|p| build(g, p));
        let first = exprs.next().unwrap()?;
        exprs.try_fold(first, |acc, e| {
            let e = CwExpr::relabel(1, 2, e?);
            Some(CwExpr::relabel(2, 1, CwExpr::join(1, 2, CwExpr::union(acc, e))))
        })
    }
    /// Components of `vs` in the graph or, with `complement`, in its complement.
    fn split(g: &Graph, vs: &[usize], complement: bool) -> Vec<Vec<usize>> {
        let mut seen = vec![false; vs.len()];
        let mut parts = Vec::new();
        for i in 0..vs.len() {
            if seen[i] {
                continue;
            }
            seen[i] = true;
            let mut comp = vec![i];
            let mut k = 0;
            while k < comp.len() {
                let x = comp[k];
                for j in 0..vs.len() {
                    if !seen[j] && g.has_edge(vs[x], vs[j]) != complement {
                        seen[j] = true;
                        comp.push(j);
                    }
                }
                k += 1;
            }
            let mut part: Vec<usize> = comp.into_iter().map(|x| vs[x]).collect();
            part.sort_unstable();
            parts.push(part);
        }
        parts
    }
    if g.n() == 0 {
        return None;
    }
    build(g, &(0..g.n()).collect::<Vec<_>>())
}

/// Largest vertex count the exact linear search accepts.
pub const LINEAR_SEARCH_LIMIT: usize = 16;

fn class_keys(adj: &[u64], prefix: u64, full: u64) -> Vec<(u64, usize)> {
    let outside = full & !prefix;
    let mut keys: Vec<(u64, usize)> = Vec::new();
    let mut rest = prefix;
    while rest != 0 {
        let u = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        keys.push((adj[u] & outside, u));
    }
    keys.sort_unstable();
    keys
}

fn class_count(adj: &[u64], prefix: u64, full: u64) -> usize {
    let keys = class_keys(adj, prefix, full);
    keys.iter().enumerate().filter(|&(i, k)| i == 0 || keys[i - 1].0 != k.0).count()
}

/// Labels needed to add `x` after `prefix`.
fn step_cost(adj: &[u64], prefix: u64, full: u64, x: usize) -> usize {
    let c = class_count(adj, prefix, full);
    let after = full & !prefix & !(1 << x);
    let joins_existing = adj[x] & prefix == 0 && {
        let want = adj[x] & after;
        let mut rest = prefix;
        let mut hit = false;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            hit |= adj[u] & after == want;
        }
        hit
    };
    if joins_existing {
        c
    } else {
        c + 1
    }
}

/// Minimum-width linear expression (every union adds one vertex), if its
/// width is at most `max_width`.
pub fn linear_expression(g: &Graph, max_width: usize) -> Option<CwExpr> {
    let n = g.n();
    if n == 0 || n > LINEAR_SEARCH_LIMIT {
        return None;
    }
    let adj = g.adjacency_masks();
    let full = (1u64 << n) - 1;
    let size = 1usize << n;
    let mut best = vec![usize::MAX; size];
    let mut last = vec![usize::MAX; size];
    best[0] = 0;
    for set in 1..size as u64 {
        let mut rest = set;
        while rest != 0 {
            let x = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let prev = set & !(1 << x);
            if best[prev as usize] > max_width {
                continue;
            }
            let w = best[prev as usize].max(step_cost(&adj, prev, full, x));
            if w < best[set as usize] {
                best[set as usize] = w;
                last[set as usize] = x;
            }
        }
    }
    if best[full as usize] > max_width {
        return None;
    }
    let mut order = Vec::with_capacity(n);
    let mut set = full;
    while set != 0 {
        let x = last[set as usize];
        order.push(x);
        set &= !(1 << x);
    }
    order.reverse();
    Some(expression_from_order(g, &order))
}

/// Linear expression adding vertices in `order`, reusing labels of merged classes.
pub fn expression_from_order(g: &Graph, order: &[usize]) -> CwExpr {
    let n = g.n();
    assert!(n <= 64 && !order.is_empty());
    let adj = g.adjacency_masks();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut label = vec![0u8; n];
    let mut prefix = 0u64;
    let mut expr: Option<CwExpr> = None;
    for &x in order {
        let after = full & !prefix & !(1 << x);
        let in_use: Vec<u8> = {
            let mut l: Vec<u8> = (0..n).filter(|&u| prefix >> u & 1 == 1).map(|u| label[u]).collect();
            l.sort_unstable();
            l.dedup();
            l
        };
        let existing = if adj[x] & prefix == 0 {
            (0..n).find(|&u| prefix >> u & 1 == 1 && adj[u] & after == adj[x] & after).map(|u| label[u])
        } else {
            None
        };
        let fresh = existing.unwrap_or_else(|| (1..).find(|l| !in_use.contains(l)).unwrap());
        label[x] = fresh;
        let mut e = match expr.take() {
            None => CwExpr::intro(x, fresh),
            Some(prev) => CwExpr::union(prev, CwExpr::intro(x, fresh)),
        };
        if existing.is_none() {
            for &l in &in_use {
                let rep = (0..n).find(|&u| prefix >> u & 1 == 1 && label[u] == l).unwrap();
                if adj[x] >> rep & 1 == 1 {
                    e = CwExpr::join(l, fresh, e);
                }
            }
        }
        prefix |= 1 << x;
        // Merge labels whose classes now coincide.
        let mut target: BTreeMap<u64, u8> = BTreeMap::new();
        let outside = full & !prefix;
        for u in (0..n).filter(|&u| prefix >> u & 1 == 1) {
            let t = target.entry(adj[u] & outside).or_insert(label[u]);
            *t = (*t).min(label[u]);
        }
        let mut renames: Vec<(u8, u8)> = Vec::new();
        for u in (0..n).filter(|&u| prefix >> u & 1 == 1) {
            let t = target[&(adj[u] & outside)];
            if label[u] != t && !renames.contains(&(label[u], t)) {
                renames.push((label[u], t));
            }
        }
        renames.sort_unstable();
        for &(from, to) in &renames {
            e = CwExpr::relabel(from, to, e);
            for l in label.iter_mut() {
                if *l == from {
                    *l = to;
                }
            }
        }
        expr = Some(e);
    }
    expr.unwrap()
}

/// Narrowest expression found by the cograph or linear search, within `max_width`.
pub fn find_expression(g: &Graph, max_width: usize) -> Option<CwExpr> {
    let linear = linear_expression(g, max_width);
    let cograph = if max_width >= 2 { cograph_expression(g) } else { None };
    match (linear, cograph) {
        (Some(l), Some(c)) => Some(if c.width() < l.width() { c } else { l }),
        (l, c) => l.or(c),
    }
}

/// Node of the decomposition tree: the vertices built below it and their
/// twin-classes. Children have smaller indices; the root is last.
#[derive(Clone, Debug)]
pub struct CwNode {
    pub vertices: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
    pub children: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct CwTree {
    pub nodes: Vec<CwNode>,
}

impl CwTree {
    /// Largest number of twin-classes at a node.
    pub fn module_width(&self) -> usize {
        self.nodes.iter().map(|x| x.classes.len()).max().unwrap_or(0)
    }
}

/// Twin-classes of `set` in `g`, ordered by smallest member.
pub fn twin_classes(g: &Graph, set: &[usize]) -> Vec<Vec<usize>> {
    let mut inside = vec![false; g.n()];
    for &v in set {
        inside[v] = true;
    }
    let mut groups: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for &v in set {
        let out: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| !inside[w]).collect();
        groups.entry(out).or_default().push(v);
    }
    let mut classes: Vec<Vec<usize>> = groups
        .into_values()
        .map(|mut c| {
            c.sort_unstable();
            c
        })
        .collect();
    classes.sort();
    classes
}

/// Decomposition tree of `expr`, which must build `g`.
pub fn decomposition_tree(g: &Graph, expr: &CwExpr) -> Result<CwTree> {
    let built = evaluate(expr)?;
    if built != *g {
        return Err(Error::Expression("expression does not build the given graph".into()));
    }
    let mut nodes = Vec::new();
    fn rec(g: &Graph, e: &CwExpr, nodes: &mut Vec<CwNode>) -> usize {
        match e {
            CwExpr::Intro { vertex, .. } => {
                nodes.push(CwNode { vertices: vec![*vertex], classes: vec![vec![*vertex]], children: vec![] });
            }
            CwExpr::Union(a, b) => {
                let (x, y) = (rec(g, a, nodes), rec(g, b, nodes));
                let mut vertices: Vec<usize> =
                    nodes[x].vertices.iter().chain(&nodes[y].vertices).copied().collect();
                vertices.sort_unstable();
                let classes = twin_classes(g, &vertices);
                nodes.push(CwNode { vertices, classes, children: vec![x, y] });
            }
            CwExpr::Join { inner, .. } | CwExpr::Relabel { inner, .. } => return rec(g, inner, nodes),
        }
        nodes.len() - 1
    }
    rec(g, expr, &mut nodes);
    Ok(CwTree { nodes })
}

/// Components of one side: class-set bitmask with multiplicity 1 or 2.
pub(crate) type Signature = Vec<(u32, u8)>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct State {
    counts: Vec<u16>,
    s_sig: Signature,
    t_sig: Signature,
}

/// Merges the components of two children. `adjacent[i][j]` tells whether
/// class `i` of the first child sees class `j` of the second; `map_a`/`map_b`
/// send child classes to parent classes.
pub(crate) fn merge_signatures(
    a: &Signature,
    b: &Signature,
    adjacent: &[Vec<bool>],
    map_a: &[usize],
    map_b: &[usize],
) -> Signature {
    let entries: Vec<(bool, u32, u8)> =
        a.iter().map(|&(m, k)| (true, m, k)).chain(b.iter().map(|&(m, k)| (false, m, k))).collect();
    let mut parent: Vec<usize> = (0..entries.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        r
    }
    let touches = |ma: u32, mb: u32| {
        (0..32).filter(|&i| ma >> i & 1 == 1).any(|i| (0..32).any(|j| mb >> j & 1 == 1 && adjacent[i][j]))
    };
    for i in 0..entries.len() {
        for j in 0..entries.len() {
            let (ea, eb) = (entries[i], entries[j]);
            if ea.0 && !eb.0 && touches(ea.1, eb.1) {
                let (x, y) = (find(&mut parent, i), find(&mut parent, j));
                if x != y {
                    parent[x.max(y)] = x.min(y);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..entries.len() {
        groups.entry(find(&mut parent, i)).or_default().push(i);
    }
    let lift = |from_a: bool, mask: u32| -> u32 {
        let map = if from_a { map_a } else { map_b };
        (0..32).filter(|&i| mask >> i & 1 == 1).fold(0, |acc, i| acc | 1 << map[i])
    };
    let mut out: BTreeMap<u32, u8> = BTreeMap::new();
    for members in groups.values() {
        let (mask, mult) = if members.len() == 1 {
            let e = entries[members[0]];
            (lift(e.0, e.1), e.2)
        } else {
            let mask = members.iter().fold(0, |acc, &i| acc | lift(entries[i].0, entries[i].1));
            (mask, 1)
        };
        let slot = out.entry(mask).or_insert(0);
        *slot = (*slot + mult).min(2);
    }
    out.into_iter().collect()
}

fn single_component(sig: &Signature) -> bool {
    sig.len() == 1 && sig[0].1 == 1
}

struct Entry {
    state: State,
    value: u32,
    back: Option<(usize, usize)>,
}

/// Solves CMC or MMC along the decomposition tree of `expr`.
pub fn solve(g: &Graph, expr: &CwExpr, problem: Problem) -> Result<SolveReport> {
    if !matches!(problem, Problem::Cmc | Problem::Mmc) {
        return Err(Error::Report("clique-width solver handles cmc and mmc".into()));
    }
    g.require_connected()?;
    let tree = decomposition_tree(g, expr)?;
    if tree.module_width() > 32 {
        return Err(Error::WidthExceeded { size: tree.module_width(), max: 32 });
    }
    let minimal = problem.is_minimal();
    let mut tables: Vec<Vec<Entry>> = Vec::with_capacity(tree.nodes.len());
    for node in &tree.nodes {
        let table = if node.children.is_empty() {
            let mut t = vec![Entry {
                state: State { counts: vec![1], s_sig: vec![(1, 1)], t_sig: vec![] },
                value: 0,
                back: None,
            }];
            let t_sig = if minimal { vec![(1, 1)] } else { vec![] };
            t.push(Entry { state: State { counts: vec![0], s_sig: vec![], t_sig }, value: 0, back: None });
            t
        } else {
            combine(g, &tree, node, &tables, minimal)
        };
        tables.push(table);
    }
    let root = tables.len() - 1;
    let mut best: Option<(u32, usize)> = None;
    for (i, e) in tables[root].iter().enumerate() {
        let s_ok = single_component(&e.state.s_sig);
        let ok = if minimal {
            s_ok && single_component(&e.state.t_sig)
        } else {
            s_ok || e.state.s_sig.is_empty()
        };
        if ok && best.map_or(true, |(v, _)| e.value > v) {
            best = Some((e.value, i));
        }
    }
    let side = best.map(|(_, idx)| {
        let mut side = vec![false; g.n()];
        let mut stack = vec![(root, idx)];
        while let Some((x, i)) = stack.pop() {
            let node = &tree.nodes[x];
            match tables[x][i].back {
                None => side[node.vertices[0]] = tables[x][i].state.counts[0] == 1,
                Some((l, r)) => {
                    stack.push((node.children[0], l));
                    stack.push((node.children[1], r));
                }
            }
        }
        side
    });
    if let (Some((v, _)), Some(s)) = (best, &side) {
        debug_assert_eq!(cut_size(g, s), v as usize);
    }
    Ok(SolveReport::new(problem, Algorithm::CliqueWidth, g, best.map(|(v, _)| v as u64), side.as_deref()))
}

fn class_map(child: &CwNode, parent: &CwNode) -> Vec<usize> {
    child
        .classes
        .iter()
        .map(|c| parent.classes.iter().position(|p| p.binary_search(&c[0]).is_ok()).unwrap())
        .collect()
}

fn combine(g: &Graph, tree: &CwTree, node: &CwNode, tables: &[Vec<Entry>], minimal: bool) -> Vec<Entry> {
    let (ia, ib) = (node.children[0], node.children[1]);
    let (na, nb) = (&tree.nodes[ia], &tree.nodes[ib]);
    let (map_a, map_b) = (class_map(na, node), class_map(nb, node));
    let adjacent: Vec<Vec<bool>> = na
        .classes
        .iter()
        .map(|ca| nb.classes.iter().map(|cb| g.has_edge(ca[0], cb[0])).collect())
        .collect();
    let sizes_a: Vec<usize> = na.classes.iter().map(Vec::len).collect();
    let sizes_b: Vec<usize> = nb.classes.iter().map(Vec::len).collect();
    let mut out: Vec<Entry> = Vec::new();
    let mut index: FxHashMap<State, usize> = FxHashMap::default();
    for (i, ea) in tables[ia].iter().enumerate() {
        for (j, eb) in tables[ib].iter().enumerate() {
            let mut cross = 0usize;
            for (x, row) in adjacent.iter().enumerate() {
                for (y, &adj) in row.iter().enumerate() {
                    if adj {
                        let (pa, pb) = (ea.state.counts[x] as usize, eb.state.counts[y] as usize);
                        cross += pa * (sizes_b[y] - pb) + pb * (sizes_a[x] - pa);
                    }
                }
            }
            let mut counts = vec![0u16; node.classes.len()];
            for (x, &c) in ea.state.counts.iter().enumerate() {
                counts[map_a[x]] += c;
            }
            for (y, &c) in eb.state.counts.iter().enumerate() {
                counts[map_b[y]] += c;
            }
            let s_sig = merge_signatures(&ea.state.s_sig, &eb.state.s_sig, &adjacent, &map_a, &map_b);
            let t_sig = if minimal {
                merge_signatures(&ea.state.t_sig, &eb.state.t_sig, &adjacent, &map_a, &map_b)
            } else {
                Vec::new()
            };
            let state = State { counts, s_sig, t_sig };
            let value = ea.value + eb.value + cross as u32;
            match index.get(&state) {
                Some(&k) if out[k].value >= value => {}
                Some(&k) => {
                    out[k].value = value;
                    out[k].back = Some((i, j));
                }
                None => {
                    index.insert(state.clone(), out.len());
                    out.push(Entry { state, value, back: Some((i, j)) });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use crate::oracle;

    #[test]
    fn parse_and_evaluate() {
        let text = "(join 1 2 (union (intro 1 1) (intro 2 2) (intro 3 2)))";
        let e = parse_cw(text).unwrap();
        assert_eq!(e.width(), 2);
        assert_eq!(evaluate(&e).unwrap(), named::star(2));
        let back = parse_cw(&write_cw(&e)).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn malformed_expressions() {
        assert!(parse_cw("(intro 1 0)").is_err());
        assert!(parse_cw("(join 1 1 (intro 1 1))").is_err());
        assert!(parse_cw("(frob 1)").is_err());
        assert!(evaluate(&parse_cw("(union (intro 1 1) (intro 1 2))").unwrap()).is_err());
        assert!(evaluate(&parse_cw("(union (intro 1 1) (intro 3 2))").unwrap()).is_err());
    }

    #[test]
    fn found_expressions_build_the_graph() {
        for g in [named::path(5), named::cycle(6), named::complete(4), named::grid(2, 3), named::star(4)] {
            let e = find_expression(&g, 4).unwrap();
            assert_eq!(evaluate(&e).unwrap(), g);
        }
        assert_eq!(cograph_expression(&named::complete_bipartite(2, 3)).unwrap().width(), 2);
        assert!(cograph_expression(&named::path(4)).is_none());
        assert_eq!(linear_expression(&named::path(4), 3).unwrap().width(), 3);
    }

    #[test]
    fn matches_oracle() {
        for g in [named::path(6), named::cycle(6), named::complete(5), named::star(4), named::grid(2, 4)] {
            let e = find_expression(&g, 4).unwrap();
            for problem in [Problem::Cmc, Problem::Mmc] {
                let r = solve(&g, &e, problem).unwrap();
                assert_eq!(r.optimum, oracle::optimum(&g, problem), "{problem}");
            }
        }
    }

    #[test]
    fn double_star_needs_cross_class_connectivity() {
        // x=0, y=1 joined; w's hang off x, z's off y. S = {x, y} cuts all six leaves,
        // and x, y sit in different classes of the same child.
        let edges = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (1, 6), (1, 7)];
        let g = Graph::from_edges(8, &edges).unwrap();
        let xy = CwExpr::join(1, 2, CwExpr::union(CwExpr::intro(0, 1), CwExpr::intro(1, 2)));
        let mut e = xy;
        for w in 2..5 {
            e = CwExpr::union(e, CwExpr::intro(w, 3));
        }
        e = CwExpr::relabel(3, 4, CwExpr::join(1, 3, e));
        for z in 5..8 {
            e = CwExpr::union(e, CwExpr::intro(z, 3));
        }
        e = CwExpr::join(2, 3, e);
        assert_eq!(evaluate(&e).unwrap(), g);
        assert_eq!(solve(&g, &e, Problem::Cmc).unwrap().optimum, Some(6));
        assert_eq!(oracle::optimum(&g, Problem::Cmc), Some(6));
    }
}
