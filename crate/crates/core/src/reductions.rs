//! Hard-instance generators: each maps a source problem instance to a cut
//! instance together with the threshold that certifies equivalence.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::report::Problem;

fn reject<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Reduction(msg.into()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    pub positive: bool,
    /// Sorted, distinct, 0-based.
    pub vars: Vec<usize>,
}

impl Clause {
    pub fn new(positive: bool, vars: &[usize]) -> Self {
        let mut vars = vars.to_vec();
        vars.sort_unstable();
        Clause { positive, vars }
    }

    fn span(&self) -> (usize, usize) {
        (self.vars[0], *self.vars.last().unwrap())
    }

    /// Whether this clause fits inside a gap between consecutive variables
    /// of `outer`.
    fn nested_in(&self, outer: &Clause) -> bool {
        let (lo, hi) = self.span();
        outer.vars.windows(2).any(|w| w[0] <= lo && hi <= w[1])
    }

    fn touches_or_apart(&self, other: &Clause) -> bool {
        let (a, b) = (self.span(), other.span());
        a.1 <= b.0 || b.1 <= a.0
    }
}

/// A CNF formula whose clauses are all-positive or all-negative, drawn with
/// variables on a line and each clause on the side of its sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneFormula {
    pub n: usize,
    pub clauses: Vec<Clause>,
    /// Clause indices, every clause after the clauses nested inside it.
    pub nesting: Vec<usize>,
}

impl MonotoneFormula {
    /// Builds a formula and derives a nesting order (narrowest span first).
    pub fn new(n: usize, clauses: Vec<Clause>) -> Result<Self> {
        let mut nesting: Vec<usize> = (0..clauses.len()).collect();
        nesting.sort_by_key(|&j| {
            let c = &clauses[j];
            if c.vars.is_empty() {
                (0, j)
            } else {
                let (lo, hi) = c.span();
                (hi - lo, j)
            }
        });
        Self::with_nesting(n, clauses, nesting)
    }

    pub fn with_nesting(n: usize, clauses: Vec<Clause>, nesting: Vec<usize>) -> Result<Self> {
        let f = MonotoneFormula { n, clauses, nesting };
        f.validate()?;
        Ok(f)
    }

    /// Parses clauses such as `+1 3 4; -2 3` (1-based variables).
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let mut clauses = Vec::new();
        for chunk in text.split([';', '\n']).map(str::trim).filter(|c| !c.is_empty()) {
            let (positive, rest) = match chunk.as_bytes()[0] {
                b'+' => (true, &chunk[1..]),
                b'-' => (false, &chunk[1..]),
                _ => return reject(format!("clause `{chunk}` must start with + or -")),
            };
            let vars = rest
                .split_whitespace()
                .map(|t| match t.parse::<usize>() {
                    Ok(v) if v >= 1 => Ok(v - 1),
                    _ => reject(format!("bad variable `{t}` in clause `{chunk}`")),
                })
                .collect::<Result<Vec<_>>>()?;
            clauses.push(Clause::new(positive, &vars));
        }
        Self::new(n, clauses)
    }

    pub fn validate(&self) -> Result<()> {
        for (j, c) in self.clauses.iter().enumerate() {
            if c.vars.is_empty() || c.vars.len() > 3 {
                return reject(format!("clause {} has {} literals", j + 1, c.vars.len()));
            }
            if c.vars.windows(2).any(|w| w[0] == w[1]) {
                return reject(format!("clause {} repeats a variable", j + 1));
            }
            if let Some(&v) = c.vars.iter().find(|&&v| v >= self.n) {
                return reject(format!("clause {} uses variable {} of {}", j + 1, v + 1, self.n));
            }
        }
        let mut rank = vec![usize::MAX; self.clauses.len()];
        for (pos, &j) in self.nesting.iter().enumerate() {
            if j >= rank.len() || rank[j] != usize::MAX {
                return reject("nesting order is not a permutation of the clauses");
            }
            rank[j] = pos;
        }
        if self.nesting.len() != self.clauses.len() {
            return reject("nesting order is not a permutation of the clauses");
        }
        for (a, ca) in self.clauses.iter().enumerate() {
            for (b, cb) in self.clauses.iter().enumerate().skip(a + 1) {
                if ca.positive != cb.positive || ca.touches_or_apart(cb) {
                    continue;
                }
                let (inner, outer) = if ca.nested_in(cb) {
                    (a, b)
                } else if cb.nested_in(ca) {
                    (b, a)
                } else {
                    return reject(format!("clauses {} and {} cross in the layout", a + 1, b + 1));
                };
                if rank[inner] > rank[outer] {
                    return reject(format!(
                        "clause {} is drawn inside clause {} but comes after it",
                        inner + 1,
                        outer + 1
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn m(&self) -> usize {
        self.clauses.len()
    }

    pub fn evaluate(&self, assignment: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.vars.iter().any(|&v| assignment[v] == c.positive))
    }

    /// A satisfying assignment by exhaustive search.
    pub fn satisfying_assignment(&self) -> Option<Vec<bool>> {
        assert!(self.n < 32);
        (0u32..1 << self.n)
            .map(|bits| (0..self.n).map(|i| bits >> i & 1 == 1).collect::<Vec<_>>())
            .find(|a| self.evaluate(a))
    }
}

/// A generated cut instance. Vertex ids are grouped contiguously by role.
#[derive(Clone, Debug)]
pub struct ReducedInstance {
    pub construction: &'static str,
    pub graph: Graph,
    pub problem: Problem,
    /// Cut size a yes-certificate reaches. Constructions that map a source
    /// value `k` to `k * scale` leave this empty.
    pub threshold: Option<u64>,
    pub scale: u64,
    pub roles: BTreeMap<String, Vec<usize>>,
    pub params: BTreeMap<String, u64>,
}

#[derive(Serialize)]
struct Sidecar<'a> {
    construction: &'a str,
    problem: &'a str,
    n: usize,
    m: usize,
    threshold: Option<u64>,
    scale: u64,
    params: &'a BTreeMap<String, u64>,
    roles: BTreeMap<&'a str, Vec<usize>>,
}

impl ReducedInstance {
    pub fn role(&self, name: &str) -> &[usize] {
        self.roles.get(name).map_or(&[], Vec::as_slice)
    }

    pub fn threshold_for(&self, source_value: u64) -> u64 {
        source_value * self.scale
    }

    /// Provenance as JSON, with 1-based vertex ids to match the .gr file.
    pub fn sidecar_json(&self) -> String {
        let sidecar = Sidecar {
            construction: self.construction,
            problem: self.problem.tag(),
            n: self.graph.n(),
            m: self.graph.m(),
            threshold: self.threshold,
            scale: self.scale,
            params: &self.params,
            roles: self
                .roles
                .iter()
                .map(|(k, v)| (k.as_str(), v.iter().map(|&x| x + 1).collect()))
                .collect(),
        };
        serde_json::to_string_pretty(&sidecar).expect("sidecar serializes")
    }
}

/// Hands out consecutive vertex ids and records the role of each block.
struct Layout {
    next: usize,
    roles: BTreeMap<String, Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl Layout {
    fn new() -> Self {
        Layout { next: 0, roles: BTreeMap::new(), edges: Vec::new() }
    }

    fn block(&mut self, role: &str, count: usize) -> std::ops::Range<usize> {
        let range = self.next..self.next + count;
        self.next += count;
        self.roles.entry(role.to_string()).or_default().extend(range.clone());
        range
    }

    fn pendants(&mut self, role: &str, owner: usize, count: usize) {
        for p in self.block(role, count) {
            self.edges.push((owner, p));
        }
    }

    fn finish(self) -> Result<(Graph, BTreeMap<String, Vec<usize>>)> {
        Ok((Graph::from_edges(self.next, &self.edges)?, self.roles))
    }
}

fn exact_sqrt(k: u64) -> Option<u64> {
    let r = (k as f64).sqrt().round() as u64;
    (r.checked_mul(r) == Some(k)).then_some(r)
}

/// Smallest valid `K` for `m` clauses: the first perfect square above `m²`.
pub fn default_pm3sat_k(m: usize) -> u64 {
    let r = m as u64 + 1;
    r * r
}

/// Connected max cut instance that reaches its threshold iff `formula` is
/// satisfiable. `k` must be a perfect square; values `k <= m²` need
/// `unsound_scale`.
pub fn gen_pm3sat_cmc(formula: &MonotoneFormula, k: u64, unsound_scale: bool) -> Result<ReducedInstance> {
    formula.validate()?;
    let (n, m) = (formula.n, formula.m());
    let Some(root) = exact_sqrt(k).filter(|&r| r > 0) else {
        return reject(format!("K = {k} is not a positive perfect square"));
    };
    if k <= (m * m) as u64 && !unsound_scale {
        return reject(format!("K = {k} must exceed m² = {} (pass unsound scale to override)", m * m));
    }
    let (ku, root_u) = (k as usize, root as usize);
    let mut lay = Layout::new();
    let literals = lay.block("literal", 2 * n);
    let pos = |i: usize| literals.start + 2 * i;
    let neg = |i: usize| literals.start + 2 * i + 1;
    let helpers = lay.block("helper", n * ku);
    for i in 0..n {
        for h in helpers.start + i * ku..helpers.start + (i + 1) * ku {
            lay.edges.push((h, pos(i)));
            lay.edges.push((h, neg(i)));
        }
    }
    for h in helpers.clone() {
        lay.pendants("helper_pendant", h, ku);
    }
    let clauses = lay.block("clause", m);
    for (j, c) in formula.clauses.iter().enumerate() {
        for &v in &c.vars {
            let lit = if c.positive { pos(v) } else { neg(v) };
            lay.edges.push((clauses.start + j, lit));
        }
    }
    for cv in clauses.clone() {
        lay.pendants("clause_pendant", cv, root_u);
    }
    let bridges = lay.block("bridge", n.saturating_sub(1));
    for (i, b) in bridges.clone().enumerate() {
        for lit in [pos(i), neg(i), pos(i + 1), neg(i + 1)] {
            lay.edges.push((b, lit));
        }
    }
    for b in bridges {
        lay.pendants("bridge_pendant", b, ku);
    }
    let (graph, roles) = lay.finish()?;
    let (n64, m64) = (n as u64, m as u64);
    let threshold = m64 * root + n64 * k * k + (2 * n64).saturating_sub(1) * k + 2 * n64.saturating_sub(1);
    Ok(ReducedInstance {
        construction: "pm3sat",
        graph,
        problem: Problem::Cmc,
        threshold: Some(threshold),
        scale: 1,
        roles,
        params: BTreeMap::from([("n".into(), n64), ("m".into(), m64), ("K".into(), k)]),
    })
}

/// Side built from a satisfying assignment: true literals, every clause,
/// helper and bridge vertex.
pub fn pm3sat_witness(inst: &ReducedInstance, assignment: &[bool]) -> Vec<bool> {
    let mut side = vec![false; inst.graph.n()];
    let literals = inst.role("literal");
    for (i, &value) in assignment.iter().enumerate() {
        side[literals[2 * i + usize::from(!value)]] = true;
    }
    for role in ["clause", "helper", "bridge"] {
        for &v in inst.role(role) {
            side[v] = true;
        }
    }
    side
}

/// Replaces every edge by a path of length two. Maximum minimal cut values
/// above 2 carry over unchanged.
pub fn gen_subdivision_mmc(g: &Graph) -> Result<ReducedInstance> {
    g.require_connected()?;
    let mut lay = Layout::new();
    let original = lay.block("original", g.n());
    let middles = lay.block("subdivision", g.m());
    for (&(u, w), mid) in g.edges().iter().zip(middles) {
        lay.edges.push((original.start + u, mid));
        lay.edges.push((original.start + w, mid));
    }
    let (graph, roles) = lay.finish()?;
    Ok(ReducedInstance {
        construction: "subdivision",
        graph,
        problem: Problem::Mmc,
        threshold: None,
        scale: 1,
        roles,
        params: BTreeMap::from([("source_n".into(), g.n() as u64), ("source_m".into(), g.m() as u64)]),
    })
}

/// Lifts a cut of the source graph: a subdivision vertex leaves `side`
/// only when both endpoints do.
pub fn subdivision_witness(source: &Graph, inst: &ReducedInstance, side: &[bool]) -> Vec<bool> {
    let mut lifted = vec![false; inst.graph.n()];
    for (v, &s) in inst.role("original").iter().zip(side) {
        lifted[*v] = s;
    }
    for (&(u, w), &mid) in source.edges().iter().zip(inst.role("subdivision")) {
        lifted[mid] = side[u] || side[w];
    }
    lifted
}

/// Exact cover by 3-sets to connected max cut on a split graph.
///
/// `elements` must be a multiple of 3. Triples are copied until every element
/// lies in at least `3(n + 2)` of them; copies are appended, so indices into
/// the original family stay valid. `pendants` defaults to `3n + 1` and may go
/// lower only with `unsound_scale`.
pub fn gen_x3c_cmc(
    elements: usize,
    triples: &[[usize; 3]],
    pendants: Option<usize>,
    unsound_scale: bool,
) -> Result<ReducedInstance> {
    if elements == 0 || elements % 3 != 0 {
        return reject(format!("element count {elements} is not a positive multiple of 3"));
    }
    let n = elements / 3;
    for (i, t) in triples.iter().enumerate() {
        if t.iter().any(|&x| x >= elements) || t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
            return reject(format!("triple {} is not three distinct elements", i + 1));
        }
    }
    let min_m = 3 * n + 1;
    let big_m = pendants.unwrap_or(min_m);
    if big_m < min_m && !unsound_scale {
        return reject(format!("M = {big_m} is below 3n+1 = {min_m} (pass unsound scale to override)"));
    }
    let family = pad_family(elements, triples, 3 * (n + 2))?;
    let m = family.len();
    let mut lay = Layout::new();
    let us = lay.block("triple", m);
    let padding = lay.block("padding", m - 2 * n);
    let xs = lay.block("element", elements);
    let clique: Vec<usize> = us.clone().chain(padding.clone()).collect();
    for (i, &a) in clique.iter().enumerate() {
        for &b in &clique[i + 1..] {
            lay.edges.push((a, b));
        }
    }
    for (u, t) in us.zip(&family) {
        for &x in t {
            lay.edges.push((u, xs.start + x));
        }
    }
    for u in padding {
        lay.pendants("pendant", u, big_m);
    }
    let (graph, roles) = lay.finish()?;
    let (n64, m64, big) = (n as u64, m as u64, big_m as u64);
    let threshold = (m64 - n64).pow(2) + 3 * m64 - 3 * n64 + (m64 - 2 * n64) * big;
    Ok(ReducedInstance {
        construction: "x3c",
        graph,
        problem: Problem::Cmc,
        threshold: Some(threshold),
        scale: 1,
        roles,
        params: BTreeMap::from([
            ("n".into(), n64),
            ("m".into(), m64),
            ("source_m".into(), triples.len() as u64),
            ("M".into(), big),
        ]),
    })
}

fn pad_family(elements: usize, triples: &[[usize; 3]], need: usize) -> Result<Vec<[usize; 3]>> {
    let mut family = triples.to_vec();
    let mut count = vec![0usize; elements];
    for t in triples {
        for &x in t {
            count[x] += 1;
        }
    }
    for x in 0..elements {
        let Some(&first) = triples.iter().find(|t| t.contains(&x)) else {
            return reject(format!("element {} lies in no triple", x + 1));
        };
        while count[x] < need {
            family.push(first);
            for &y in &first {
                count[y] += 1;
            }
        }
    }
    Ok(family)
}

/// Side built from an exact cover (indices into the original family): the
/// chosen triple vertices, all padding vertices and every element.
pub fn x3c_witness(inst: &ReducedInstance, cover: &[usize]) -> Vec<bool> {
    let mut side = vec![false; inst.graph.n()];
    for &i in cover {
        side[inst.role("triple")[i]] = true;
    }
    for role in ["padding", "element"] {
        for &v in inst.role(role) {
            side[v] = true;
        }
    }
    side
}

/// Max cut to maximum minimal cut on a split graph: the source vertices form
/// a clique and each edge gets `copies` independent vertices adjacent to
/// both endpoints. A source cut of size `k` maps to `k * copies`. The default
/// `n³` copies is the smallest count for which the converse holds; fewer need
/// `unsound_scale`.
pub fn gen_maxcut_mmc_split(g: &Graph, copies: Option<u64>, unsound_scale: bool) -> Result<ReducedInstance> {
    let n = g.n() as u64;
    let cube = n.pow(3);
    let copies = copies.unwrap_or(cube);
    if copies == 0 {
        return reject("copy count must be at least 1");
    }
    if copies < cube && !unsound_scale {
        return reject(format!("{copies} copies is below n³ = {cube} (pass unsound scale to override)"));
    }
    let per = copies as usize;
    let mut lay = Layout::new();
    let vs = lay.block("vertex", g.n());
    for a in vs.clone() {
        for b in a + 1..vs.end {
            lay.edges.push((a, b));
        }
    }
    let copies_block = lay.block("edge_copy", g.m() * per);
    for (j, &(u, w)) in g.edges().iter().enumerate() {
        for c in copies_block.start + j * per..copies_block.start + (j + 1) * per {
            lay.edges.push((u, c));
            lay.edges.push((w, c));
        }
    }
    let (graph, roles) = lay.finish()?;
    Ok(ReducedInstance {
        construction: "maxcut-split",
        graph,
        problem: Problem::Mmc,
        threshold: None,
        scale: copies,
        roles,
        params: BTreeMap::from([
            ("source_n".into(), n),
            ("source_m".into(), g.m() as u64),
            ("copies".into(), copies),
        ]),
    })
}

/// Lifts a source cut: an edge copy leaves `side` only when both endpoints do.
pub fn maxcut_split_witness(source: &Graph, inst: &ReducedInstance, side: &[bool]) -> Vec<bool> {
    let per = inst.scale as usize;
    let mut lifted = vec![false; inst.graph.n()];
    lifted[..source.n()].copy_from_slice(side);
    let copies = inst.role("edge_copy");
    for (j, &(u, w)) in source.edges().iter().enumerate() {
        for &c in &copies[j * per..(j + 1) * per] {
            lifted[c] = side[u] || side[w];
        }
    }
    lifted
}

pub fn is_bipartite(g: &Graph) -> bool {
    let mut color = vec![u8::MAX; g.n()];
    let mut queue = VecDeque::new();
    for start in 0..g.n() {
        if color[start] != u8::MAX {
            continue;
        }
        color[start] = 0;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[v];
                    queue.push_back(w);
                } else if color[w] == color[v] {
                    return false;
                }
            }
        }
    }
    true
}

/// Degree-sequence test for split graphs.
pub fn is_split(g: &Graph) -> bool {
    let mut deg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    deg.sort_unstable_by(|a, b| b.cmp(a));
    let k = deg.iter().enumerate().filter(|&(i, &d)| d >= i).count();
    let head: usize = deg[..k].iter().sum();
    let tail: usize = deg[k..].iter().sum();
    head == k * k.saturating_sub(1) + tail
}

/// A clique / independent set split, if one exists, taking the highest-degree
/// vertices as the clique.
pub fn split_partition(g: &Graph) -> Option<(Vec<usize>, Vec<usize>)> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let k = order.iter().enumerate().filter(|&(i, &v)| g.degree(v) >= i).count();
    let (clique, rest) = order.split_at(k);
    let ok = clique.iter().enumerate().all(|(i, &a)| clique[i + 1..].iter().all(|&b| g.has_edge(a, b)))
        && rest.iter().enumerate().all(|(i, &a)| rest[i + 1..].iter().all(|&b| !g.has_edge(a, b)));
    ok.then(|| (clique.to_vec(), rest.to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cut_size, is_connected_subset, is_minimal_cut, named};
    use crate::oracle;

    fn three_var_formula() -> MonotoneFormula {
        MonotoneFormula::parse(3, "+1 2 3; -1 2 3").unwrap()
    }

    #[test]
    fn pm3sat_counts_and_threshold() {
        let f = three_var_formula();
        let inst = gen_pm3sat_cmc(&f, 9, false).unwrap();
        assert_eq!(inst.graph.n(), 6 + 27 + 243 + 2 + 6 + 2 + 18);
        assert_eq!(inst.graph.n(), 304);
        assert_eq!(inst.threshold, Some(2 * 3 + 3 * 81 + 5 * 9 + 4));
        assert_eq!(inst.threshold, Some(298));
        assert!(is_bipartite(&inst.graph));
        assert!(inst.graph.is_connected());
    }

    #[test]
    fn pm3sat_parameter_checks() {
        let f = three_var_formula();
        assert!(gen_pm3sat_cmc(&f, 8, false).is_err());
        assert!(gen_pm3sat_cmc(&f, 4, false).is_err());
        assert!(gen_pm3sat_cmc(&f, 4, true).is_ok());
    }

    #[test]
    fn pm3sat_witness_reaches_threshold() {
        let f = three_var_formula();
        let inst = gen_pm3sat_cmc(&f, 9, false).unwrap();
        let a = f.satisfying_assignment().unwrap();
        let side = pm3sat_witness(&inst, &a);
        assert!(is_connected_subset(&inst.graph, &side));
        // Every literal of a clause that evaluates false adds one more cut edge.
        let false_literals: usize = f
            .clauses
            .iter()
            .map(|c| c.vars.iter().filter(|&&v| a[v] != c.positive).count())
            .sum();
        let size = cut_size(&inst.graph, &side) as u64;
        assert_eq!(size, inst.threshold.unwrap() + false_literals as u64);
    }

    #[test]
    fn layout_rejects_crossing_clauses() {
        assert!(MonotoneFormula::parse(4, "+1 3; +2 4").is_err());
        assert!(MonotoneFormula::parse(4, "+1 3; -2 4").is_ok());
        assert!(MonotoneFormula::parse(4, "+1 4; +2 3").is_ok());
        assert!(MonotoneFormula::parse(4, "+1 2 3; +1 2 3").is_err());
        let inner_last = vec![Clause::new(true, &[0, 3]), Clause::new(true, &[1, 2])];
        assert!(MonotoneFormula::with_nesting(4, inner_last.clone(), vec![0, 1]).is_err());
        assert!(MonotoneFormula::with_nesting(4, inner_last, vec![1, 0]).is_ok());
        assert!(MonotoneFormula::parse(2, "+1 3").is_err());
    }

    #[test]
    fn subdivision_small_cases() {
        let k4 = named::complete(4);
        let inst = gen_subdivision_mmc(&k4).unwrap();
        assert_eq!(inst.graph.n(), 10);
        assert!(is_bipartite(&inst.graph));
        assert_eq!(oracle::optimum(&k4, Problem::Mmc), Some(4));
        assert_eq!(oracle::optimum(&inst.graph, Problem::Mmc), Some(4));
        let c3 = named::cycle(3);
        let c6 = gen_subdivision_mmc(&c3).unwrap();
        assert_eq!(oracle::optimum(&c6.graph, Problem::Mmc), Some(2));
        assert_eq!(oracle::optimum(&c3, Problem::Mmc), Some(2));
    }

    #[test]
    fn subdivision_witness_is_minimal() {
        let g = named::petersen();
        let (opt, mask) = oracle::best_cut_mask(&g, Problem::Mmc).unwrap();
        let side: Vec<bool> = (0..g.n()).map(|v| mask >> v & 1 == 1).collect();
        let inst = gen_subdivision_mmc(&g).unwrap();
        let lifted = subdivision_witness(&g, &inst, &side);
        assert!(is_minimal_cut(&inst.graph, &lifted));
        assert_eq!(cut_size(&inst.graph, &lifted) as u64, opt);
    }

    #[test]
    fn x3c_counts_and_witness() {
        let inst = gen_x3c_cmc(3, &[[0, 1, 2]], None, false).unwrap();
        assert_eq!(inst.params["m"], 9);
        assert_eq!(inst.role("triple").len() + inst.role("padding").len(), 16);
        assert_eq!(inst.role("pendant").len(), 28);
        assert_eq!(inst.threshold, Some(116));
        assert!(is_split(&inst.graph));
        let side = x3c_witness(&inst, &[0]);
        assert!(is_connected_subset(&inst.graph, &side));
        assert_eq!(cut_size(&inst.graph, &side) as u64, 116);
        assert!(gen_x3c_cmc(4, &[[0, 1, 2]], None, false).is_err());
        assert!(gen_x3c_cmc(6, &[[0, 1, 2]], None, false).is_err());
        assert!(gen_x3c_cmc(3, &[[0, 1, 2]], Some(2), false).is_err());
    }

    #[test]
    fn maxcut_split_counts_and_witness() {
        let k3 = named::complete(3);
        let inst = gen_maxcut_mmc_split(&k3, Some(27), false).unwrap();
        assert_eq!(inst.graph.n(), 84);
        assert!(is_split(&inst.graph));
        assert!(split_partition(&inst.graph).is_some());
        let side = [true, false, false];
        let lifted = maxcut_split_witness(&k3, &inst, &side);
        assert!(is_minimal_cut(&inst.graph, &lifted));
        let size = cut_size(&inst.graph, &lifted) as u64;
        assert_eq!(size, inst.threshold_for(2) + 2);
        assert!(size >= 54);
        assert!(gen_maxcut_mmc_split(&k3, Some(8), false).is_err());
    }

    #[test]
    fn maxcut_split_k2_by_oracle() {
        let inst = gen_maxcut_mmc_split(&named::complete(2), Some(8), false).unwrap();
        assert_eq!(inst.graph.n(), 10);
        // 8 copy edges plus the clique edge between the two sides.
        assert_eq!(oracle::optimum(&inst.graph, Problem::Mmc), Some(9));
    }

    #[test]
    fn split_and_bipartite_validators() {
        assert!(is_split(&named::star(4)));
        assert!(is_split(&named::complete(5)));
        assert!(!is_split(&named::cycle(4)));
        assert!(!is_split(&named::cycle(5)));
        assert!(split_partition(&named::cycle(5)).is_none());
        assert!(is_bipartite(&named::cycle(6)));
        assert!(!is_bipartite(&named::cycle(5)));
    }
}
