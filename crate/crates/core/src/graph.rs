//! Simple undirected graphs on dense vertex indices `0..n`, vertex subsets,
//! induced subgraphs and k-core peeling.
//!
//! Graphs are immutable once built. Adjacency is stored as one sorted
//! neighbor list per vertex, which keeps membership tests at `O(log deg)` and
//! makes iteration order (and therefore every downstream computation)
//! deterministic.

use std::collections::BTreeSet;
use std::fmt;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a graph from an edge list, rejecting self-loops, duplicate
    /// edges (in either orientation) and out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        let mut edge_count = 0;
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::input(format!(
                    "edge ({u}, {v}) has an endpoint outside [0, {n})"
                )));
            }
            if u == v {
                return Err(Error::input(format!("self-loop at vertex {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
            edge_count += 1;
        }
        for (u, nbrs) in adjacency.iter_mut().enumerate() {
            nbrs.sort_unstable();
            if let Some(w) = nbrs.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::input(format!("duplicate edge ({u}, {})", w[0])));
            }
        }
        Ok(Graph {
            adjacency,
            edge_count,
        })
    }

    /// Builds a graph from edges already known to be valid and distinct.
    /// Each edge must be listed once.
    pub(crate) fn from_valid_edges<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        let mut edge_count = 0;
        for (u, v) in edges {
            debug_assert!(u != v && u < n && v < n);
            adjacency[u].push(v);
            adjacency[v].push(u);
            edge_count += 1;
        }
        for nbrs in adjacency.iter_mut() {
            nbrs.sort_unstable();
        }
        Graph {
            adjacency,
            edge_count,
        }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_valid_edges(n, edges)
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        Graph::from_valid_edges(n, (1..n).map(|v| (v - 1, v)))
    }

    /// Cycle on `n >= 3` vertices; smaller `n` yields a path.
    pub fn cycle(n: usize) -> Self {
        if n < 3 {
            return Graph::path(n);
        }
        Graph::from_valid_edges(n, (1..n).map(|v| (v - 1, v)).chain([(n - 1, 0)]))
    }

    /// Star with center 0 and leaves `1..n`.
    pub fn star(n: usize) -> Self {
        Graph::from_valid_edges(n, (1..n).map(|v| (0, v)))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Sorted neighbors of `v`. Panics if `v` is out of range.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        degree(self, v)
    }

    /// Graph obtained by renaming vertex `i` to `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        debug_assert_eq!(perm.len(), self.n());
        Graph::from_valid_edges(self.n(), self.edges().map(|(u, v)| (perm[u], perm[v])))
    }
}

/// A subset of `0..n`, stored as a sorted list of distinct members.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexSet {
    n: usize,
    members: Vec<usize>,
}

impl VertexSet {
    pub fn new<I: IntoIterator<Item = usize>>(n: usize, members: I) -> Result<Self> {
        let set: BTreeSet<usize> = members.into_iter().collect();
        if let Some(&bad) = set.iter().next_back().filter(|&&m| m >= n) {
            return Err(Error::input(format!("vertex {bad} outside [0, {n})")));
        }
        Ok(VertexSet {
            n,
            members: set.into_iter().collect(),
        })
    }

    /// `members` must be strictly increasing and below `n`.
    pub(crate) fn from_sorted(n: usize, members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(members.last().is_none_or(|&m| m < n));
        VertexSet { n, members }
    }

    pub(crate) fn from_mask(mask: &[bool]) -> Self {
        let members = mask
            .iter()
            .enumerate()
            .filter_map(|(v, &keep)| keep.then_some(v))
            .collect();
        VertexSet {
            n: mask.len(),
            members,
        }
    }

    pub fn empty(n: usize) -> Self {
        VertexSet {
            n,
            members: Vec::new(),
        }
    }

    pub fn full(n: usize) -> Self {
        VertexSet {
            n,
            members: (0..n).collect(),
        }
    }

    /// Ambient size.
    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn complement(&self) -> Self {
        let mut mask = vec![true; self.n];
        for &v in &self.members {
            mask[v] = false;
        }
        VertexSet::from_mask(&mask)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.members.iter().all(|&v| other.contains(v))
    }

    pub fn mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.n];
        for &v in &self.members {
            mask[v] = true;
        }
        mask
    }

    fn check_for(&self, g: &Graph) -> Result<()> {
        if self.n != g.n() {
            return Err(Error::input(format!(
                "vertex set over [0, {}) used with a graph on {} vertices",
                self.n,
                g.n()
            )));
        }
        Ok(())
    }
}

/// A graph on local indices `0..labels.len()` together with the global
/// vertex each local index stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    pub graph: Graph,
    /// `labels[local] = global`, strictly increasing.
    pub labels: Vec<usize>,
}

impl LabeledGraph {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Global vertex set of this subgraph within a universe of size `n`.
    pub fn vertex_set(&self, n: usize) -> VertexSet {
        VertexSet::from_sorted(n, self.labels.clone())
    }

    /// Maps a set of local indices back to global indices.
    pub fn to_global(&self, local: &VertexSet, n: usize) -> VertexSet {
        VertexSet::from_sorted(n, local.iter().map(|v| self.labels[v]).collect())
    }

    /// Local index of a global vertex, if present.
    pub fn local_of(&self, global: usize) -> Option<usize> {
        self.labels.binary_search(&global).ok()
    }
}

pub fn degree(g: &Graph, v: usize) -> Result<usize> {
    if v >= g.n() {
        return Err(Error::input(format!(
            "vertex {v} outside [0, {})",
            g.n()
        )));
    }
    Ok(g.adjacency[v].len())
}

pub fn min_degree(g: &Graph) -> Result<usize> {
    g.adjacency
        .iter()
        .map(Vec::len)
        .min()
        .ok_or_else(|| Error::input("minimum degree of a graph with no vertices"))
}

/// `G{S}`, reindexed so that local vertex `a` is the `a`-th smallest member
/// of `s`.
pub fn induced_subgraph(g: &Graph, s: &VertexSet) -> Result<LabeledGraph> {
    s.check_for(g)?;
    let mut local = vec![usize::MAX; g.n()];
    for (a, v) in s.iter().enumerate() {
        local[v] = a;
    }
    let adjacency: Vec<Vec<usize>> = s
        .iter()
        .map(|v| {
            // Global neighbor order is sorted and the relabeling is monotone,
            // so local lists come out sorted.
            g.neighbors(v)
                .iter()
                .filter_map(|&w| (local[w] != usize::MAX).then_some(local[w]))
                .collect()
        })
        .collect();
    let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
    Ok(LabeledGraph {
        graph: Graph {
            adjacency,
            edge_count,
        },
        labels: s.members.clone(),
    })
}

pub fn edge_count_within(g: &Graph, s: &VertexSet) -> Result<usize> {
    s.check_for(g)?;
    let mask = s.mask();
    Ok(s.iter()
        .map(|v| g.neighbors(v).iter().filter(|&&w| w > v && mask[w]).count())
        .sum())
}

/// The k-core: the largest vertex set whose induced subgraph has minimum
/// degree at least `k`. The 0-core is every vertex.
///
/// Runs in `O(n + m)` by peeling from a worklist of vertices whose current
/// degree has dropped below `k`.
pub fn k_core(g: &Graph, k: usize) -> VertexSet {
    let n = g.n();
    if k == 0 {
        return VertexSet::full(n);
    }
    let mut deg: Vec<usize> = (0..n).map(|v| g.neighbors(v).len()).collect();
    let mut alive = vec![true; n];
    let mut stack: Vec<usize> = (0..n).filter(|&v| deg[v] < k).collect();
    for &v in &stack {
        alive[v] = false;
    }
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if alive[w] {
                deg[w] -= 1;
                if deg[w] < k {
                    alive[w] = false;
                    stack.push(w);
                }
            }
        }
    }
    VertexSet::from_mask(&alive)
}

/// Core number of every vertex (largest `k` such that the vertex lies in
/// the k-core), via bucket-queue peeling in `O(n + m)`.
pub fn core_numbers(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.neighbors(v).len()).collect();
    let max_deg = deg.iter().copied().max().unwrap_or(0);

    // bin[d] = first position in `order` holding a vertex of degree d.
    let mut bin = vec![0usize; max_deg + 2];
    for &d in &deg {
        bin[d + 1] += 1;
    }
    for d in 1..bin.len() {
        bin[d] += bin[d - 1];
    }
    let mut next = bin.clone();
    let mut order = vec![0usize; n];
    let mut pos = vec![0usize; n];
    for v in 0..n {
        let d = deg[v];
        pos[v] = next[d];
        order[next[d]] = v;
        next[d] += 1;
    }

    for i in 0..n {
        let v = order[i];
        for &u in g.neighbors(v) {
            if deg[u] > deg[v] {
                let du = deg[u];
                let pu = pos[u];
                let pw = bin[du];
                let w = order[pw];
                if u != w {
                    order.swap(pu, pw);
                    pos[u] = pw;
                    pos[w] = pu;
                }
                bin[du] += 1;
                deg[u] -= 1;
            }
        }
    }
    deg
}

/// Parses the edge-list text format: a header line `n m`, then `m` lines
/// `u v`. Blank lines and lines starting with `#` are ignored.
pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Graph> {
    let parse_err = |line: usize, msg: String| Error::Parse {
        kind: "edge list",
        line,
        msg,
    };
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut seen = BTreeSet::new();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| parse_err(lineno, e.to_string()))?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(parse_err(
                lineno,
                format!("expected two fields, found {}", fields.len()),
            ));
        }
        let a: usize = fields[0]
            .parse()
            .map_err(|_| parse_err(lineno, format!("not an index: {:?}", fields[0])))?;
        let b: usize = fields[1]
            .parse()
            .map_err(|_| parse_err(lineno, format!("not an index: {:?}", fields[1])))?;
        let Some((n, _)) = header else {
            header = Some((a, b));
            continue;
        };
        if a >= n || b >= n {
            return Err(parse_err(lineno, format!("edge ({a}, {b}) outside [0, {n})")));
        }
        if a == b {
            return Err(parse_err(lineno, format!("self-loop at {a}")));
        }
        let key = (a.min(b), a.max(b));
        if !seen.insert(key) {
            return Err(parse_err(lineno, format!("duplicate edge ({}, {})", key.0, key.1)));
        }
        edges.push(key);
    }
    let (n, m) = header.ok_or_else(|| parse_err(0, "missing `n m` header".into()))?;
    if edges.len() != m {
        return Err(parse_err(
            0,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    Ok(Graph::from_valid_edges(n, edges))
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    read_edge_list(text.as_bytes())
}

pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{} {}", g.n(), g.edge_count())?;
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

pub fn edge_list_string(g: &Graph) -> String {
    let mut buf = Vec::new();
    write_edge_list(g, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("edge list is ASCII")
}
