//! Partial vertex matchings between two graphs, intersection graphs, the
//! k-core estimator, and the error analysis of wrong matchings.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{k_core, Graph, LabeledGraph, VertexSet};
use crate::models::{CorrelatedPair, Permutation};

/// Default vertex-count ceiling for [`brute_force_k_core_estimator`].
pub const BRUTE_FORCE_LIMIT: usize = 8;
/// Default vertex-count ceiling for [`enumerate_pi_star_maximal`].
pub const ENUMERATION_LIMIT: usize = 7;

/// A partial injective map `mu: M -> [0, n)`, stored as `(i, mu(i))` pairs
/// sorted by `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "MatchingRepr", into = "MatchingRepr")]
pub struct Matching {
    pairs: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct MatchingRepr {
    pairs: Vec<(usize, usize)>,
}

impl TryFrom<MatchingRepr> for Matching {
    type Error = Error;
    fn try_from(r: MatchingRepr) -> Result<Self> {
        Matching::new(r.pairs)
    }
}

impl From<Matching> for MatchingRepr {
    fn from(m: Matching) -> Self {
        MatchingRepr { pairs: m.pairs }
    }
}

impl Matching {
    /// Rejects repeated domain vertices and repeated images, naming the
    /// offending pair.
    pub fn new(mut pairs: Vec<(usize, usize)>) -> Result<Self> {
        pairs.sort_unstable();
        let mut images = BTreeMap::new();
        for (idx, &(i, mi)) in pairs.iter().enumerate() {
            if idx > 0 && pairs[idx - 1].0 == i {
                return Err(Error::input(format!(
                    "pair [{i}, {mi}]: vertex {i} is matched twice"
                )));
            }
            if let Some(prev) = images.insert(mi, i) {
                return Err(Error::input(format!(
                    "pair [{i}, {mi}]: image {mi} is already used by vertex {prev}"
                )));
            }
        }
        Ok(Matching { pairs })
    }

    pub fn empty() -> Self {
        Matching::default()
    }

    /// The total matching `i -> pi(i)`.
    pub fn from_permutation(pi: &Permutation) -> Self {
        Matching {
            pairs: (0..pi.len()).map(|i| (i, pi.apply(i))).collect(),
        }
    }

    /// `pi` restricted to `domain`.
    pub fn restrict(pi: &Permutation, domain: &VertexSet) -> Self {
        Matching {
            pairs: domain.iter().map(|i| (i, pi.apply(i))).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn get(&self, i: usize) -> Option<usize> {
        self.pairs
            .binary_search_by_key(&i, |&(a, _)| a)
            .ok()
            .map(|idx| self.pairs[idx].1)
    }

    pub fn domain(&self, n: usize) -> VertexSet {
        VertexSet::from_sorted(n, self.pairs.iter().map(|&(i, _)| i).collect())
    }

    /// Vertices of `M` that `mu` sends somewhere other than `pi_star`.
    pub fn mismatched(&self, pi_star: &Permutation) -> Vec<usize> {
        self.pairs
            .iter()
            .filter(|&&(i, mi)| pi_star.apply(i) != mi)
            .map(|&(i, _)| i)
            .collect()
    }

    pub fn error_count(&self, pi_star: &Permutation) -> usize {
        self.mismatched(pi_star).len()
    }

    /// Checks every pair lies in `[0, n)`.
    pub fn check_within(&self, n: usize) -> Result<()> {
        match self.pairs.iter().find(|&&(i, mi)| i >= n || mi >= n) {
            Some(&(i, mi)) => Err(Error::input(format!(
                "pair [{i}, {mi}] is outside [0, {n})"
            ))),
            None => Ok(()),
        }
    }

    /// Dense lookup table `table[i] = Some(mu(i))`.
    fn table(&self, n: usize) -> Vec<Option<usize>> {
        let mut t = vec![None; n];
        for &(i, mi) in &self.pairs {
            t[i] = Some(mi);
        }
        t
    }
}

fn check_pair(g1: &Graph, g2: &Graph, mu: &Matching) -> Result<usize> {
    if g1.n() != g2.n() {
        return Err(Error::input(format!(
            "graphs have {} and {} vertices",
            g1.n(),
            g2.n()
        )));
    }
    mu.check_within(g1.n())?;
    Ok(g1.n())
}

fn check_perm(pi_star: &Permutation, n: usize) -> Result<()> {
    if pi_star.len() != n {
        return Err(Error::input(format!(
            "permutation has length {}, expected {n}",
            pi_star.len()
        )));
    }
    Ok(())
}

/// `G1 ∧_mu G2` on vertex set `M`: `(i, j)` is an edge iff it is an edge of
/// `g1` and `(mu(i), mu(j))` is an edge of `g2`. Local vertex `a` is the
/// `a`-th smallest member of `M`.
pub fn intersection_graph(g1: &Graph, g2: &Graph, mu: &Matching) -> Result<LabeledGraph> {
    let n = check_pair(g1, g2, mu)?;
    let table = mu.table(n);
    let domain = mu.domain(n);
    let mut local = vec![usize::MAX; n];
    for (a, i) in domain.iter().enumerate() {
        local[i] = a;
    }
    let mut edges = Vec::new();
    for &(i, mi) in mu.pairs() {
        for &j in g1.neighbors(i) {
            if j <= i {
                continue;
            }
            if let Some(mj) = table[j] {
                if g2.has_edge(mi, mj) {
                    edges.push((local[i], local[j]));
                }
            }
        }
    }
    Ok(LabeledGraph {
        graph: Graph::from_valid_edges(mu.len(), edges),
        labels: domain.members().to_vec(),
    })
}

/// `G1 ∧_{pi*} G2` for the total ground-truth matching, on all `n` vertices.
pub fn true_intersection(pair: &CorrelatedPair) -> Graph {
    let pi = &pair.pi_star;
    Graph::from_valid_edges(
        pair.g1.n(),
        pair.g1
            .edges()
            .filter(|&(u, v)| pair.g2.has_edge(pi.apply(u), pi.apply(v))),
    )
}

/// True iff every vertex of `G1 ∧_mu G2` has degree at least `k`. The empty
/// matching counts as a k-core matching of size 0.
pub fn is_k_core_matching(g1: &Graph, g2: &Graph, mu: &Matching, k: usize) -> Result<bool> {
    let h = intersection_graph(g1, g2, mu)?;
    Ok((0..h.len()).all(|v| h.graph.neighbors(v).len() >= k))
}

pub fn brute_force_k_core_estimator(g1: &Graph, g2: &Graph, k: usize) -> Result<Matching> {
    brute_force_k_core_estimator_with_limit(g1, g2, k, BRUTE_FORCE_LIMIT)
}

/// Maximum-cardinality k-core matching by exhaustive search.
///
/// Candidate domains `M` are scanned by size descending, then in
/// lexicographic order; for each `M` the injections are scanned in
/// lexicographic order of `(mu(M[0]), mu(M[1]), ...)`. The first k-core
/// matching found is returned, so ties resolve to the lexicographically
/// smallest one. Returns the empty matching when none exists.
pub fn brute_force_k_core_estimator_with_limit(
    g1: &Graph,
    g2: &Graph,
    k: usize,
    limit: usize,
) -> Result<Matching> {
    let n = check_pair(g1, g2, &Matching::empty())?;
    if n > limit {
        return Err(Error::Capacity {
            what: "brute-force estimator vertex count",
            got: n,
            limit,
        });
    }
    if k == 0 {
        return Err(Error::input("core order k must be at least 1"));
    }
    // A target of degree < k in g2 can never carry a vertex of the core.
    let targets: Vec<usize> = (0..n).filter(|&t| g2.neighbors(t).len() >= k).collect();
    let sources: Vec<usize> = (0..n).filter(|&i| g1.neighbors(i).len() >= k).collect();

    for size in (k + 1..=sources.len().min(targets.len())).rev() {
        let mut found = None;
        for_each_combination(&sources, size, |m| {
            if found.is_some() {
                return false;
            }
            if let Some(images) = search_injection(g1, g2, m, &targets, k) {
                found = Some(Matching {
                    pairs: m.iter().copied().zip(images).collect(),
                });
                return false;
            }
            true
        });
        if let Some(mu) = found {
            return Ok(mu);
        }
    }
    Ok(Matching::empty())
}

/// Visits the `size`-subsets of `items` in lexicographic order until `visit`
/// returns false.
fn for_each_combination(items: &[usize], size: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    let len = items.len();
    if size > len {
        return;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    let mut chosen: Vec<usize> = idx.iter().map(|&i| items[i]).collect();
    loop {
        if !visit(&chosen) {
            return;
        }
        let Some(p) = (0..size).rev().find(|&p| idx[p] != p + len - size) else {
            return;
        };
        idx[p] += 1;
        for q in p + 1..size {
            idx[q] = idx[q - 1] + 1;
        }
        for q in p..size {
            chosen[q] = items[idx[q]];
        }
    }
}

/// Depth-first search for the lexicographically first injection of `m`
/// into `targets` whose intersection graph has minimum degree `>= k`.
fn search_injection(
    g1: &Graph,
    g2: &Graph,
    m: &[usize],
    targets: &[usize],
    k: usize,
) -> Option<Vec<usize>> {
    let size = m.len();
    let g1_adj: Vec<Vec<bool>> = m
        .iter()
        .map(|&a| m.iter().map(|&b| g1.has_edge(a, b)).collect())
        .collect();
    if g1_adj
        .iter()
        .any(|row| row.iter().filter(|&&e| e).count() < k)
    {
        return None;
    }
    // later[a][p]: g1-neighbors of position a among positions p+1..size.
    let mut later = vec![vec![0usize; size]; size];
    for a in 0..size {
        let mut acc = 0;
        for p in (0..size).rev() {
            later[a][p] = acc;
            if g1_adj[a][p] {
                acc += 1;
            }
        }
    }

    struct Search<'a> {
        g2: &'a Graph,
        g1_adj: Vec<Vec<bool>>,
        later: Vec<Vec<usize>>,
        targets: &'a [usize],
        k: usize,
        images: Vec<usize>,
        confirmed: Vec<usize>,
        used: Vec<bool>,
    }

    impl Search<'_> {
        fn place(&mut self, p: usize) -> bool {
            let size = self.g1_adj.len();
            if p == size {
                return true;
            }
            for ti in 0..self.targets.len() {
                if self.used[ti] {
                    continue;
                }
                let t = self.targets[ti];
                let mut touched = Vec::new();
                for a in 0..p {
                    if self.g1_adj[a][p] && self.g2.has_edge(self.images[a], t) {
                        self.confirmed[a] += 1;
                        self.confirmed[p] += 1;
                        touched.push(a);
                    }
                }
                let feasible =
                    (0..=p).all(|a| self.confirmed[a] + self.later[a][p] >= self.k);
                if feasible {
                    self.used[ti] = true;
                    self.images.push(t);
                    if self.place(p + 1) {
                        return true;
                    }
                    self.images.pop();
                    self.used[ti] = false;
                }
                for a in touched {
                    self.confirmed[a] -= 1;
                    self.confirmed[p] -= 1;
                }
            }
            false
        }
    }

    let mut search = Search {
        g2,
        g1_adj,
        later,
        targets,
        k,
        images: Vec::with_capacity(size),
        confirmed: vec![0; size],
        used: vec![false; targets.len()],
    };
    search.place(0).then_some(search.images)
}

/// `(core_k(G1 ∧_{pi*} G2), pi* restricted to it)`.
pub fn ground_truth_core_matching(pair: &CorrelatedPair, k: usize) -> Matching {
    let core = k_core(&true_intersection(pair), k);
    Matching::restrict(&pair.pi_star, &core)
}

/// Sum of `G1 ∧_mu G2` degrees over the vertices that `mu` maps away from
/// `pi_star`.
pub fn f_statistic(g1: &Graph, g2: &Graph, mu: &Matching, pi_star: &Permutation) -> Result<usize> {
    let n = check_pair(g1, g2, mu)?;
    check_perm(pi_star, n)?;
    let table = mu.table(n);
    let mut total = 0;
    for &(i, mi) in mu.pairs() {
        if mi == pi_star.apply(i) {
            continue;
        }
        total += g1
            .neighbors(i)
            .iter()
            .filter(|&&j| table[j].is_some_and(|mj| g2.has_edge(mi, mj)))
            .count();
    }
    Ok(total)
}

/// `f(mu) >= k * (number of mismatched vertices)`.
pub fn is_weak_k_core_matching(
    g1: &Graph,
    g2: &Graph,
    mu: &Matching,
    pi_star: &Permutation,
    k: usize,
) -> Result<bool> {
    let f = f_statistic(g1, g2, mu, pi_star)?;
    Ok(f >= k * mu.error_count(pi_star))
}

/// Every vertex is matched, or its true partner is already used as an image.
pub fn is_pi_star_maximal(mu: &Matching, pi_star: &Permutation, n: usize) -> bool {
    let table = mu.table(n);
    let mut image_used = vec![false; n];
    for &(_, mi) in mu.pairs() {
        image_used[mi] = true;
    }
    (0..n).all(|i| table[i].is_some() || image_used[pi_star.apply(i)])
}

/// The full matching that agrees with `pi_star` except on `cycle`, where
/// `cycle[t]` is sent to `pi_star(cycle[t + 1])` cyclically. With at least
/// two distinct vertices it is pi*-maximal with exactly `cycle.len()` errors.
pub fn rotate_on(pi_star: &Permutation, cycle: &[usize]) -> Result<Matching> {
    let n = pi_star.len();
    let mut seen = vec![false; n];
    for &v in cycle {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(Error::input(format!("cycle vertex {v} is repeated or out of range")));
        }
    }
    let mut image: Vec<usize> = pi_star.image().to_vec();
    for (t, &v) in cycle.iter().enumerate() {
        image[v] = pi_star.apply(cycle[(t + 1) % cycle.len()]);
    }
    Ok(Matching {
        pairs: image.into_iter().enumerate().collect(),
    })
}

pub fn enumerate_pi_star_maximal(n: usize, pi_star: &Permutation, d: usize) -> Result<Vec<Matching>> {
    enumerate_pi_star_maximal_with_limit(n, pi_star, d, ENUMERATION_LIMIT)
}

/// All pi*-maximal matchings with exactly `d` mismatched vertices. Order:
/// depth first over vertices `0..n`, trying "unmatched" before targets in
/// increasing order.
pub fn enumerate_pi_star_maximal_with_limit(
    n: usize,
    pi_star: &Permutation,
    d: usize,
    limit: usize,
) -> Result<Vec<Matching>> {
    if n > limit {
        return Err(Error::Capacity {
            what: "pi*-maximal enumeration vertex count",
            got: n,
            limit,
        });
    }
    check_perm(pi_star, n)?;
    let mut out = Vec::new();
    let mut pairs = Vec::new();
    let mut used = vec![false; n];
    enumerate_rec(0, n, pi_star, d, 0, &mut pairs, &mut used, &mut out);
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_rec(
    i: usize,
    n: usize,
    pi_star: &Permutation,
    d: usize,
    errors: usize,
    pairs: &mut Vec<(usize, usize)>,
    used: &mut [bool],
    out: &mut Vec<Matching>,
) {
    if i == n {
        if errors == d {
            let mu = Matching {
                pairs: pairs.clone(),
            };
            if is_pi_star_maximal(&mu, pi_star, n) {
                out.push(mu);
            }
        }
        return;
    }
    enumerate_rec(i + 1, n, pi_star, d, errors, pairs, used, out);
    for t in 0..n {
        if used[t] {
            continue;
        }
        let e = errors + usize::from(t != pi_star.apply(i));
        if e > d {
            continue;
        }
        used[t] = true;
        pairs.push((i, t));
        enumerate_rec(i + 1, n, pi_star, d, e, pairs, used, out);
        pairs.pop();
        used[t] = false;
    }
}

/// Split of the ordered pairs touching mismatched vertices, with the
/// dependency graph on the non-swap part and its 3-coloring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ErrorDecomposition {
    /// Number of mismatched vertices.
    pub d: usize,
    /// Ordered `(i, j)` in `M x M` with `mu(i) != pi*(i)`.
    pub set_a: Vec<(usize, usize)>,
    /// Members of `set_a` with `mu(i) = pi*(j)` and `mu(j) = pi*(i)`.
    pub set_b: Vec<(usize, usize)>,
    pub set_c: Vec<(usize, usize)>,
    /// Vertices of the dependency graph: unordered pairs `{i, j}`, `i < j`,
    /// for which `(i, j)` or `(j, i)` is in `set_c`.
    pub dependency_vertices: Vec<(usize, usize)>,
    /// Adjacency lists over indices into `dependency_vertices`.
    pub dependency_edges: Vec<Vec<usize>>,
    /// Color in `{1, 2, 3}` per dependency vertex.
    pub coloring: Vec<u8>,
}

impl ErrorDecomposition {
    pub fn max_dependency_degree(&self) -> usize {
        self.dependency_edges.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn coloring_is_proper(&self) -> bool {
        self.coloring.iter().all(|&c| (1..=3).contains(&c))
            && self
                .dependency_edges
                .iter()
                .enumerate()
                .all(|(v, nbrs)| nbrs.iter().all(|&w| self.coloring[v] != self.coloring[w]))
    }

    /// Color of an ordered member `(i, j)` of `set_c`.
    pub fn color_of(&self, i: usize, j: usize) -> Option<u8> {
        let key = (i.min(j), i.max(j));
        self.dependency_vertices
            .binary_search(&key)
            .ok()
            .map(|idx| self.coloring[idx])
    }
}

pub fn decompose_errors(mu: &Matching, pi_star: &Permutation, n: usize) -> Result<ErrorDecomposition> {
    mu.check_within(n)?;
    check_perm(pi_star, n)?;
    let table = mu.table(n);
    let mut preimage = vec![None; n];
    for &(i, mi) in mu.pairs() {
        preimage[mi] = Some(i);
    }
    let pi_inv = pi_star.inverse();
    let domain: Vec<usize> = mu.pairs().iter().map(|&(i, _)| i).collect();

    let mut set_a = Vec::new();
    let mut set_b = Vec::new();
    let mut set_c = Vec::new();
    let mut h_set = BTreeSet::new();
    let mut d = 0;
    for &(i, mi) in mu.pairs() {
        if mi == pi_star.apply(i) {
            continue;
        }
        d += 1;
        for &j in &domain {
            let mj = table[j].expect("j is in the domain");
            set_a.push((i, j));
            if mi == pi_star.apply(j) && mj == pi_star.apply(i) {
                set_b.push((i, j));
            } else {
                set_c.push((i, j));
                if i != j {
                    h_set.insert((i.min(j), i.max(j)));
                }
            }
        }
    }

    let vertices: Vec<(usize, usize)> = h_set.into_iter().collect();
    let index_of = |pair: (usize, usize)| {
        let key = (pair.0.min(pair.1), pair.0.max(pair.1));
        vertices.binary_search(&key).ok()
    };
    let mut adjacency: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); vertices.len()];
    for (v, &(i, j)) in vertices.iter().enumerate() {
        let mi = table[i].expect("domain");
        let mj = table[j].expect("domain");
        // {mu(i), mu(j)} = {pi*(a), pi*(b)}
        let by_image = Some((pi_inv.apply(mi), pi_inv.apply(mj)));
        // {mu(a), mu(b)} = {pi*(i), pi*(j)}
        let by_preimage = preimage[pi_star.apply(i)].zip(preimage[pi_star.apply(j)]);
        for w in [by_image, by_preimage].into_iter().flatten().filter_map(index_of) {
            if w != v {
                adjacency[v].insert(w);
                adjacency[w].insert(v);
            }
        }
    }
    let dependency_edges: Vec<Vec<usize>> =
        adjacency.into_iter().map(|s| s.into_iter().collect()).collect();

    let mut coloring = vec![0u8; vertices.len()];
    for v in 0..vertices.len() {
        let color = (1..=3u8)
            .find(|&c| dependency_edges[v].iter().all(|&w| coloring[w] != c))
            .ok_or_else(|| {
                Error::Internal(format!(
                    "dependency vertex {:?} has {} neighbors; greedy 3-coloring failed",
                    vertices[v],
                    dependency_edges[v].len()
                ))
            })?;
        coloring[v] = color;
    }

    Ok(ErrorDecomposition {
        d,
        set_a,
        set_b,
        set_c,
        dependency_vertices: vertices,
        dependency_edges,
        coloring,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(pairs: &[(usize, usize)]) -> Matching {
        Matching::new(pairs.to_vec()).unwrap()
    }

    fn id(n: usize) -> Permutation {
        Permutation::identity(n)
    }

    #[test]
    fn matching_validation_names_pair() {
        let err = Matching::new(vec![(0, 1), (2, 1)]).unwrap_err().to_string();
        assert!(err.contains("[2, 1]"), "{err}");
        let err = Matching::new(vec![(0, 1), (0, 2)]).unwrap_err().to_string();
        assert!(err.contains("matched twice"), "{err}");
        assert!(m(&[(5, 0)]).check_within(3).is_err());
    }

    #[test]
    fn matching_json_shape() {
        let mu = m(&[(2, 0), (0, 1)]);
        assert_eq!(serde_json::to_string(&mu).unwrap(), r#"{"pairs":[[0,1],[2,0]]}"#);
        let back: Matching = serde_json::from_str(r#"{"pairs":[[2,0],[0,1]]}"#).unwrap();
        assert_eq!(back, mu);
        assert!(serde_json::from_str::<Matching>(r#"{"pairs":[[0,1],[1,1]]}"#).is_err());
    }

    #[test]
    fn intersection_examples() {
        let g = Graph::cycle(5);
        let full = Matching::from_permutation(&id(5));
        assert_eq!(intersection_graph(&g, &g, &full).unwrap().graph, g);

        let g1 = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let g2 = Graph::from_edges(4, [(0, 2), (1, 3)]).unwrap();
        let h = intersection_graph(&g1, &g2, &Matching::from_permutation(&id(4))).unwrap();
        assert_eq!(h.graph.edge_count(), 0);

        // path 0-1-2 against edges {1,2},{2,0}: only {1,2} is shared.
        let g1 = Graph::path(3);
        let g2 = Graph::from_edges(3, [(1, 2), (2, 0)]).unwrap();
        let h = intersection_graph(&g1, &g2, &Matching::from_permutation(&id(3))).unwrap();
        assert_eq!(h.graph.edge_count(), 1);
        let (a, b) = h.graph.edges().next().unwrap();
        assert_eq!((h.labels[a], h.labels[b]), (1, 2));
    }

    #[test]
    fn k_core_matching_examples() {
        let k4 = Graph::complete(4);
        let full = Matching::from_permutation(&id(4));
        assert!(is_k_core_matching(&k4, &k4, &full, 3).unwrap());
        let small = m(&[(0, 0), (1, 1), (2, 2)]);
        assert!(!is_k_core_matching(&k4, &k4, &small, 3).unwrap());
        let c5 = Graph::cycle(5);
        let full = Matching::from_permutation(&id(5));
        assert!(is_k_core_matching(&c5, &c5, &full, 2).unwrap());
        assert!(!is_k_core_matching(&c5, &c5, &full, 3).unwrap());
        assert!(is_k_core_matching(&c5, &c5, &Matching::empty(), 3).unwrap());
    }

    #[test]
    fn estimator_examples() {
        let empty = Graph::empty(5);
        let any = Graph::complete(5);
        assert!(brute_force_k_core_estimator(&empty, &any, 1).unwrap().is_empty());

        let k4 = Graph::complete(4);
        let est = brute_force_k_core_estimator(&k4, &k4, 3).unwrap();
        assert_eq!(est, Matching::from_permutation(&id(4)));

        let big = Graph::empty(9);
        assert!(matches!(
            brute_force_k_core_estimator(&big, &big, 1),
            Err(Error::Capacity { .. })
        ));
        assert!(brute_force_k_core_estimator(&k4, &k4, 0).is_err());
    }

    #[test]
    fn estimator_picks_lexicographically_first_tie() {
        // g1 = triangle on {0,1,2} plus isolated 3; g2 = triangle on {1,2,3}.
        let g1 = Graph::from_edges(4, [(0, 1), (0, 2), (1, 2)]).unwrap();
        let g2 = Graph::from_edges(4, [(1, 2), (1, 3), (2, 3)]).unwrap();
        let est = brute_force_k_core_estimator(&g1, &g2, 2).unwrap();
        assert_eq!(est, m(&[(0, 1), (1, 2), (2, 3)]));
    }

    #[test]
    fn f_statistic_three_cycle() {
        let k3 = Graph::complete(3);
        let mu = m(&[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(f_statistic(&k3, &k3, &mu, &id(3)).unwrap(), 6);
        assert!(is_weak_k_core_matching(&k3, &k3, &mu, &id(3), 2).unwrap());
        assert!(!is_weak_k_core_matching(&k3, &k3, &mu, &id(3), 3).unwrap());

        let correct = Matching::from_permutation(&id(3));
        assert_eq!(f_statistic(&k3, &k3, &correct, &id(3)).unwrap(), 0);
        assert!(is_weak_k_core_matching(&k3, &k3, &correct, &id(3), 5).unwrap());
        let e = Graph::empty(3);
        assert_eq!(f_statistic(&e, &e, &mu, &id(3)).unwrap(), 0);
    }

    #[test]
    fn pi_star_maximal_examples() {
        let any = m(&[(0, 2), (1, 0), (2, 1)]);
        assert!(is_pi_star_maximal(&any, &id(3), 3));
        assert!(!is_pi_star_maximal(&Matching::empty(), &id(3), 3));
        assert!(is_pi_star_maximal(&m(&[(0, 2), (1, 1)]), &id(3), 3));
        assert!(!is_pi_star_maximal(&m(&[(0, 0), (1, 1)]), &id(3), 3));
    }

    #[test]
    fn enumerate_zero_errors_contains_truth() {
        let pi = Permutation::new(vec![1, 2, 0]).unwrap();
        let list = enumerate_pi_star_maximal(3, &pi, 0).unwrap();
        assert!(list.contains(&Matching::from_permutation(&pi)));
        for mu in &list {
            assert_eq!(mu.error_count(&pi), 0);
            assert!(is_pi_star_maximal(mu, &pi, 3));
        }
        assert!(enumerate_pi_star_maximal(8, &id(8), 1).is_err());
    }

    #[test]
    fn decompose_identity_is_empty() {
        let dec = decompose_errors(&Matching::from_permutation(&id(4)), &id(4), 4).unwrap();
        assert_eq!(dec.d, 0);
        assert!(dec.set_a.is_empty() && dec.set_b.is_empty() && dec.set_c.is_empty());
    }

    #[test]
    fn decompose_swap() {
        let dec = decompose_errors(&m(&[(0, 1), (1, 0)]), &id(2), 2).unwrap();
        assert_eq!(dec.d, 2);
        assert_eq!(dec.set_a, vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
        assert_eq!(dec.set_b, vec![(0, 1), (1, 0)]);
        assert_eq!(dec.set_c, vec![(0, 0), (1, 1)]);
        assert!(dec.dependency_vertices.is_empty());
    }

    #[test]
    fn decompose_three_cycle_dependency() {
        // mu = (0->1, 1->2, 2->0) under identity: pairs {0,1},{0,2},{1,2}.
        let dec = decompose_errors(&m(&[(0, 1), (1, 2), (2, 0)]), &id(3), 3).unwrap();
        assert_eq!(dec.d, 3);
        assert!(dec.set_b.is_empty());
        assert_eq!(dec.dependency_vertices, vec![(0, 1), (0, 2), (1, 2)]);
        // {mu(0), mu(1)} = {1, 2} = pi*{1, 2}: {0,1} depends on {1,2}, etc.
        assert!(dec.max_dependency_degree() <= 2);
        assert!(dec.coloring_is_proper());
        assert!(dec.color_of(1, 0).is_some());
    }

    #[test]
    fn ground_truth_core_examples() {
        use crate::models::{build_probabilities, sample_correlated_pair, ModelSpec};
        use crate::rng::RngStream;

        let probs = build_probabilities(&ModelSpec::er(5, 1.0)).unwrap();
        let pair = sample_correlated_pair(&probs, 1.0, &RngStream::new(1, 1)).unwrap();
        assert_eq!(
            ground_truth_core_matching(&pair, 3),
            Matching::from_permutation(&pair.pi_star)
        );

        let probs = build_probabilities(&ModelSpec::er(5, 0.0)).unwrap();
        let pair = sample_correlated_pair(&probs, 1.0, &RngStream::new(1, 1)).unwrap();
        assert!(ground_truth_core_matching(&pair, 1).is_empty());
    }
}
