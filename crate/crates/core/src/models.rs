//! Edge-probability models and the correlated-pair sampler.
//!
//! Every model is conditioned on its latent variables (block assignment,
//! weights, positions): those are inputs here, never sampled, except for the
//! uniform sphere points helper used to set up geometric instances.

use std::path::Path;

use log::warn;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{RngStream, SubStream};

/// Largest vertex count for which probabilities are materialized as a
/// packed triangular array. Above it only structured models are accepted and
/// entries are computed on demand.
pub const DENSE_LIMIT: usize = 4096;

const UNIT_NORM_TOL: f64 = 1e-9;

/// Parameters of a random graph model. Serialized with a `model`
/// discriminator: `irg`, `sbm`, `chung_lu`, `rgg` or `er`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum ModelSpec {
    /// Explicit symmetric matrix; the diagonal is ignored.
    Irg { p: Vec<Vec<f64>> },
    /// Stochastic block model: `blocks` partitions the vertex set and
    /// `q[a][b]` is the edge probability between blocks `a` and `b`.
    Sbm {
        blocks: Vec<Vec<usize>>,
        q: Vec<Vec<f64>>,
    },
    /// Chung-Lu: `p_ij = w_i w_j / sum_k w_k`.
    ChungLu { weights: Vec<f64> },
    /// Noisy geometric graph on the unit sphere:
    /// `p_ij = p * 1(|x_i - x_j| <= r)`.
    Rgg { points: Vec<Vec<f64>>, r: f64, p: f64 },
    Er { n: usize, p: f64 },
}

fn check_probability(what: &str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::input(format!("{what} = {value} is not in [0, 1]")));
    }
    Ok(())
}

fn check_symmetric_square(name: &str, m: &[Vec<f64>]) -> Result<()> {
    let size = m.len();
    for (a, row) in m.iter().enumerate() {
        if row.len() != size {
            return Err(Error::input(format!(
                "{name} row {a} has {} entries, expected {size}",
                row.len()
            )));
        }
    }
    for a in 0..size {
        for b in 0..size {
            if a != b || name == "q" {
                check_probability(&format!("{name}[{a}][{b}]"), m[a][b])?;
            }
            if m[a][b] != m[b][a] {
                return Err(Error::input(format!(
                    "{name} is not symmetric at ({a}, {b}): {} vs {}",
                    m[a][b], m[b][a]
                )));
            }
        }
    }
    Ok(())
}

impl ModelSpec {
    pub fn er(n: usize, p: f64) -> Self {
        ModelSpec::Er { n, p }
    }

    pub fn n(&self) -> usize {
        match self {
            ModelSpec::Irg { p } => p.len(),
            ModelSpec::Sbm { blocks, .. } => blocks.iter().map(Vec::len).sum(),
            ModelSpec::ChungLu { weights } => weights.len(),
            ModelSpec::Rgg { points, .. } => points.len(),
            ModelSpec::Er { n, .. } => *n,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ModelSpec::Irg { .. } => "irg",
            ModelSpec::Sbm { .. } => "sbm",
            ModelSpec::ChungLu { .. } => "chung_lu",
            ModelSpec::Rgg { .. } => "rgg",
            ModelSpec::Er { .. } => "er",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ModelSpec::Irg { p } => {
                if p.len() > DENSE_LIMIT {
                    return Err(Error::Capacity {
                        what: "explicit probability matrix size",
                        got: p.len(),
                        limit: DENSE_LIMIT,
                    });
                }
                check_symmetric_square("p", p)
            }
            ModelSpec::Sbm { blocks, q } => {
                if q.len() != blocks.len() {
                    return Err(Error::input(format!(
                        "q is {}x{} but there are {} blocks",
                        q.len(),
                        q.len(),
                        blocks.len()
                    )));
                }
                check_symmetric_square("q", q)?;
                let n = self.n();
                let mut owner = vec![usize::MAX; n];
                for (a, block) in blocks.iter().enumerate() {
                    for &v in block {
                        if v >= n {
                            return Err(Error::input(format!(
                                "block {a} contains vertex {v} outside [0, {n})"
                            )));
                        }
                        if owner[v] != usize::MAX {
                            return Err(Error::input(format!(
                                "vertex {v} appears in blocks {} and {a}",
                                owner[v]
                            )));
                        }
                        owner[v] = a;
                    }
                }
                Ok(())
            }
            ModelSpec::ChungLu { weights } => {
                for (i, &w) in weights.iter().enumerate() {
                    if !(w.is_finite() && w > 0.0) {
                        return Err(Error::input(format!("weight {i} = {w} is not positive")));
                    }
                }
                let total: f64 = weights.iter().sum();
                if let Some((i, &w)) = weights
                    .iter()
                    .enumerate()
                    .find(|(_, &w)| w > total.sqrt() * (1.0 + 1e-12))
                {
                    return Err(Error::input(format!(
                        "weight {i} = {w} exceeds sqrt(sum of weights) = {}",
                        total.sqrt()
                    )));
                }
                Ok(())
            }
            ModelSpec::Rgg { points, r, p } => {
                if !(0.0..=2.0).contains(r) {
                    return Err(Error::input(format!("radius r = {r} is not in [0, 2]")));
                }
                check_probability("p", *p)?;
                let d = points.first().map_or(1, Vec::len);
                if d == 0 {
                    return Err(Error::input("points have dimension 0"));
                }
                for (i, x) in points.iter().enumerate() {
                    if x.len() != d {
                        return Err(Error::input(format!(
                            "point {i} has dimension {}, expected {d}",
                            x.len()
                        )));
                    }
                    let norm = x.iter().map(|c| c * c).sum::<f64>().sqrt();
                    if (norm - 1.0).abs() > UNIT_NORM_TOL {
                        return Err(Error::input(format!("point {i} has norm {norm}, not 1")));
                    }
                }
                Ok(())
            }
            ModelSpec::Er { p, .. } => check_probability("p", *p),
        }
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let spec: ModelSpec = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json_str(&text)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Structured {
    Er { p: f64 },
    Sbm { block_of: Vec<usize>, q: Vec<Vec<f64>> },
    ChungLu { weights: Vec<f64>, total: f64 },
    Rgg { points: Vec<Vec<f64>>, r: f64, p: f64 },
}

impl Structured {
    fn get(&self, i: usize, j: usize) -> f64 {
        match self {
            Structured::Er { p } => *p,
            Structured::Sbm { block_of, q } => q[block_of[i]][block_of[j]],
            Structured::ChungLu { weights, total } => {
                let raw = weights[i] * weights[j] / total;
                if raw > 1.0 {
                    warn!("Chung-Lu probability for ({i}, {j}) is {raw}; clamped to 1");
                    1.0
                } else {
                    raw
                }
            }
            Structured::Rgg { points, r, p } => {
                if *r >= 2.0 || euclidean(&points[i], &points[j]) <= *r {
                    *p
                } else {
                    0.0
                }
            }
        }
    }
}

fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

#[derive(Clone, Debug, PartialEq)]
enum Storage {
    /// Strict upper triangle, row-major: `(0,1), (0,2), ..., (1,2), ...`.
    Packed(Vec<f64>),
    OnDemand(Structured),
}

/// Symmetric matrix of edge probabilities with zero diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeProbabilities {
    n: usize,
    storage: Storage,
}

#[inline]
fn packed_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

impl EdgeProbabilities {
    /// Builds from an explicit symmetric matrix (diagonal ignored).
    pub fn from_matrix(p: &[Vec<f64>]) -> Result<Self> {
        build_probabilities(&ModelSpec::Irg { p: p.to_vec() })
    }

    fn from_structured(n: usize, model: Structured) -> Self {
        if n <= DENSE_LIMIT {
            let mut packed = Vec::with_capacity(n * n.saturating_sub(1) / 2);
            for i in 0..n {
                for j in i + 1..n {
                    packed.push(model.get(i, j));
                }
            }
            EdgeProbabilities {
                n,
                storage: Storage::Packed(packed),
            }
        } else {
            EdgeProbabilities {
                n,
                storage: Storage::OnDemand(model),
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_materialized(&self) -> bool {
        matches!(self.storage, Storage::Packed(_))
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return 0.0;
        }
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        match &self.storage {
            Storage::Packed(v) => v[packed_index(self.n, a, b)],
            Storage::OnDemand(m) => m.get(a, b),
        }
    }

    /// Calls `f(i, j, p_ij)` for every pair `i < j` in row-major order.
    pub fn for_each_pair(&self, mut f: impl FnMut(usize, usize, f64)) {
        match &self.storage {
            Storage::Packed(v) => {
                let mut idx = 0;
                for i in 0..self.n {
                    for j in i + 1..self.n {
                        f(i, j, v[idx]);
                        idx += 1;
                    }
                }
            }
            Storage::OnDemand(m) => {
                for i in 0..self.n {
                    for j in i + 1..self.n {
                        f(i, j, m.get(i, j));
                    }
                }
            }
        }
    }

    /// Expected degree of every vertex, `sum_j p_ij`.
    pub fn row_sums(&self) -> Vec<f64> {
        let mut sums = vec![0.0; self.n];
        self.for_each_pair(|i, j, p| {
            sums[i] += p;
            sums[j] += p;
        });
        sums
    }

    pub fn p_max(&self) -> f64 {
        let mut best = 0.0f64;
        self.for_each_pair(|_, _, p| best = best.max(p));
        best
    }

    /// Same matrix with every entry multiplied by `factor` (used to move
    /// between parent and intersection-graph edge rates).
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&factor) {
            return Err(Error::input(format!("scale factor {factor} is not in [0, 1]")));
        }
        let mut packed = Vec::with_capacity(self.n * self.n.saturating_sub(1) / 2);
        self.for_each_pair(|_, _, p| packed.push(p * factor));
        Ok(EdgeProbabilities {
            n: self.n,
            storage: Storage::Packed(packed),
        })
    }

    pub fn to_matrix(&self) -> Vec<Vec<f64>> {
        let mut m = vec![vec![0.0; self.n]; self.n];
        self.for_each_pair(|i, j, p| {
            m[i][j] = p;
            m[j][i] = p;
        });
        m
    }
}

pub fn build_probabilities(spec: &ModelSpec) -> Result<EdgeProbabilities> {
    spec.validate()?;
    let n = spec.n();
    let structured = match spec {
        ModelSpec::Irg { p } => {
            let mut packed = Vec::with_capacity(n * n.saturating_sub(1) / 2);
            for (i, row) in p.iter().enumerate() {
                packed.extend_from_slice(&row[i + 1..]);
            }
            return Ok(EdgeProbabilities {
                n,
                storage: Storage::Packed(packed),
            });
        }
        ModelSpec::Er { p, .. } => Structured::Er { p: *p },
        ModelSpec::Sbm { blocks, q } => {
            let mut block_of = vec![0; n];
            for (a, block) in blocks.iter().enumerate() {
                for &v in block {
                    block_of[v] = a;
                }
            }
            Structured::Sbm {
                block_of,
                q: q.clone(),
            }
        }
        ModelSpec::ChungLu { weights } => Structured::ChungLu {
            weights: weights.clone(),
            total: weights.iter().sum(),
        },
        ModelSpec::Rgg { points, r, p } => Structured::Rgg {
            points: points.clone(),
            r: *r,
            p: *p,
        },
    };
    Ok(EdgeProbabilities::from_structured(n, structured))
}

/// A bijection on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PermutationRepr", into = "PermutationRepr")]
pub struct Permutation {
    image: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct PermutationRepr {
    image: Vec<usize>,
}

impl TryFrom<PermutationRepr> for Permutation {
    type Error = Error;
    fn try_from(r: PermutationRepr) -> Result<Self> {
        Permutation::new(r.image)
    }
}

impl From<Permutation> for PermutationRepr {
    fn from(p: Permutation) -> Self {
        PermutationRepr { image: p.image }
    }
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for (i, &v) in image.iter().enumerate() {
            if v >= n || seen[v] {
                return Err(Error::input(format!(
                    "image[{i}] = {v} breaks the bijection on [0, {n})"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { image })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n).collect(),
        }
    }

    /// Uniform permutation by Fisher-Yates.
    pub fn uniform<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut image: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.random_range(0..=i);
            image.swap(i, j);
        }
        Permutation { image }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.image.len()];
        for (i, &v) in self.image.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { image: inv }
    }
}

/// Two correlated observations of a common parent graph. Vertex `i` of
/// `g1` corresponds to vertex `pi_star(i)` of `g2`.
#[derive(Clone, Debug, PartialEq)]
pub struct CorrelatedPair {
    pub g1: Graph,
    pub g2: Graph,
    pub pi_star: Permutation,
    pub s: f64,
}

/// How the latent permutation is chosen; `Identity` exists for tests that
/// need to compare the two graphs edge by edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PermutationMode {
    #[default]
    Uniform,
    Identity,
}

fn sample_edges(probs: &EdgeProbabilities, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    probs.for_each_pair(|i, j, p| {
        if rng.random::<f64>() < p {
            edges.push((i, j));
        }
    });
    edges
}

/// Samples `G ~ G(p)`: one uniform draw per pair `i < j` in row-major order
/// from the parent-edge sub-stream.
pub fn sample_graph(probs: &EdgeProbabilities, rng: &RngStream) -> Graph {
    let mut r = rng.rng(SubStream::ParentEdges);
    Graph::from_valid_edges(probs.n(), sample_edges(probs, &mut r))
}

/// `n` independent uniform points on the unit sphere in `R^d`, as
/// normalized standard Gaussian vectors.
pub fn sample_sphere_points(n: usize, d: usize, rng: &RngStream) -> Result<Vec<Vec<f64>>> {
    if d == 0 {
        return Err(Error::input("sphere dimension d must be at least 1"));
    }
    let mut r = rng.rng(SubStream::Points);
    let mut points = Vec::with_capacity(n);
    while points.len() < n {
        let x: Vec<f64> = (0..d).map(|_| r.sample::<f64, _>(StandardNormal)).collect();
        let norm = x.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm > 0.0 {
            points.push(x.into_iter().map(|c| c / norm).collect());
        }
    }
    Ok(points)
}

pub fn sample_correlated_pair(
    probs: &EdgeProbabilities,
    s: f64,
    rng: &RngStream,
) -> Result<CorrelatedPair> {
    sample_correlated_pair_with(probs, s, rng, PermutationMode::Uniform).map(|(pair, _)| pair)
}

/// Draws the parent, two independent `s`-subsamples of its edges and the
/// latent permutation, each from its own sub-stream. Returns the pair and
/// the parent graph.
pub fn sample_correlated_pair_with(
    probs: &EdgeProbabilities,
    s: f64,
    rng: &RngStream,
    mode: PermutationMode,
) -> Result<(CorrelatedPair, Graph)> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::input(format!("subsampling probability s = {s} is not in [0, 1]")));
    }
    let n = probs.n();
    let parent_edges = sample_edges(probs, &mut rng.rng(SubStream::ParentEdges));

    let keep = |sub: SubStream| {
        let mut r = rng.rng(sub);
        parent_edges
            .iter()
            .copied()
            .filter(|_| r.random::<f64>() < s)
            .collect::<Vec<_>>()
    };
    let first = keep(SubStream::FirstSubsample);
    let second = keep(SubStream::SecondSubsample);

    let pi_star = match mode {
        PermutationMode::Uniform => Permutation::uniform(n, &mut rng.rng(SubStream::Permutation)),
        PermutationMode::Identity => Permutation::identity(n),
    };
    let g1 = Graph::from_valid_edges(n, first);
    let g2 = Graph::from_valid_edges(
        n,
        second
            .into_iter()
            .map(|(u, v)| (pi_star.apply(u), pi_star.apply(v))),
    );
    let parent = Graph::from_valid_edges(n, parent_edges);
    Ok((CorrelatedPair { g1, g2, pi_star, s }, parent))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn constant(n: usize, p: f64) -> Vec<Vec<f64>> {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { 0.0 } else { p }).collect())
            .collect()
    }

    #[test]
    fn sbm_single_block_is_er() {
        let spec = ModelSpec::Sbm {
            blocks: vec![vec![0, 1, 2, 3]],
            q: vec![vec![0.3]],
        };
        assert_eq!(build_probabilities(&spec).unwrap().to_matrix(), constant(4, 0.3));
    }

    #[test]
    fn chung_lu_constant_weights() {
        let n = 10;
        let w = 3.0;
        let probs = build_probabilities(&ModelSpec::ChungLu {
            weights: vec![w; n],
        })
        .unwrap();
        for i in 0..n {
            for j in 0..n {
                let expected = if i == j { 0.0 } else { w / n as f64 };
                assert!((probs.get(i, j) - expected).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn rgg_full_radius_is_constant() {
        let points = sample_sphere_points(20, 3, &RngStream::new(5, 0)).unwrap();
        let probs = build_probabilities(&ModelSpec::Rgg {
            points,
            r: 2.0,
            p: 0.4,
        })
        .unwrap();
        assert_eq!(probs.to_matrix(), constant(20, 0.4));
    }

    #[test]
    fn rgg_radius_filters_pairs() {
        let points = vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![-1.0, 0.0]];
        let probs = build_probabilities(&ModelSpec::Rgg { points, r: 1.5, p: 0.5 }).unwrap();
        assert_eq!(probs.get(0, 1), 0.5);
        assert_eq!(probs.get(1, 2), 0.5);
        assert_eq!(probs.get(0, 2), 0.0);
    }

    #[test]
    fn invalid_specs_name_offender() {
        let err = ModelSpec::Er { n: 3, p: 1.5 }.validate().unwrap_err();
        assert!(err.to_string().contains("1.5"));
        let err = ModelSpec::Sbm {
            blocks: vec![vec![0, 1], vec![1]],
            q: vec![vec![0.1, 0.1], vec![0.1, 0.1]],
        }
        .validate()
        .unwrap_err();
        assert!(err.to_string().contains("vertex 1"));
        let err = ModelSpec::ChungLu {
            weights: vec![1.0, 1.0, 10.0],
        }
        .validate()
        .unwrap_err();
        assert!(err.to_string().contains("weight 2"));
        let err = ModelSpec::Rgg {
            points: vec![vec![1.0, 0.0], vec![0.5, 0.0]],
            r: 1.0,
            p: 0.5,
        }
        .validate()
        .unwrap_err();
        assert!(err.to_string().contains("point 1"));
        let err = ModelSpec::Irg {
            p: vec![vec![0.0, 0.2], vec![0.3, 0.0]],
        }
        .validate()
        .unwrap_err();
        assert!(err.to_string().contains("symmetric"));
    }

    #[test]
    fn large_structured_models_stay_on_demand() {
        let probs = build_probabilities(&ModelSpec::er(DENSE_LIMIT + 1, 0.001)).unwrap();
        assert!(!probs.is_materialized());
        assert_eq!(probs.get(0, DENSE_LIMIT), 0.001);
        assert_eq!(probs.get(3, 3), 0.0);
    }

    #[test]
    fn json_discriminator() {
        let spec = ModelSpec::from_json_str(r#"{"model":"er","n":5,"p":0.2}"#).unwrap();
        assert_eq!(spec, ModelSpec::er(5, 0.2));
        let spec = ModelSpec::from_json_str(
            r#"{"model":"sbm","blocks":[[0,2],[1]],"q":[[0.1,0.2],[0.2,0.3]]}"#,
        )
        .unwrap();
        assert_eq!(spec.n(), 3);
        let spec = ModelSpec::from_json_str(r#"{"model":"chung_lu","weights":[1,1,1,1]}"#).unwrap();
        assert_eq!(spec.name(), "chung_lu");
        assert!(ModelSpec::from_json_str(r#"{"model":"ws","n":5}"#).is_err());
    }

    #[test]
    fn sample_graph_extremes() {
        let rng = RngStream::new(1, 2);
        let zero = build_probabilities(&ModelSpec::er(30, 0.0)).unwrap();
        assert_eq!(sample_graph(&zero, &rng).edge_count(), 0);
        let one = build_probabilities(&ModelSpec::er(30, 1.0)).unwrap();
        assert_eq!(sample_graph(&one, &rng), Graph::complete(30));
    }

    #[test]
    fn sphere_points_are_unit_and_deterministic() {
        let rng = RngStream::new(3, 4);
        let pts = sample_sphere_points(200, 4, &rng).unwrap();
        for x in &pts {
            let norm = x.iter().map(|c| c * c).sum::<f64>().sqrt();
            assert!((norm - 1.0).abs() <= 1e-9);
        }
        assert_eq!(pts, sample_sphere_points(200, 4, &rng).unwrap());
        assert!(sample_sphere_points(3, 0, &rng).is_err());
    }

    #[test]
    fn circle_points_are_centered() {
        let pts = sample_sphere_points(10_000, 2, &RngStream::new(11, 0)).unwrap();
        let mx = pts.iter().map(|x| x[0]).sum::<f64>() / 1e4;
        let my = pts.iter().map(|x| x[1]).sum::<f64>() / 1e4;
        assert!((mx * mx + my * my).sqrt() <= 0.05);
    }

    #[test]
    fn correlated_pair_extremes() {
        let probs = build_probabilities(&ModelSpec::er(25, 0.3)).unwrap();
        let rng = RngStream::new(8, 1);
        let (pair, parent) =
            sample_correlated_pair_with(&probs, 1.0, &rng, PermutationMode::Uniform).unwrap();
        assert_eq!(pair.g1, parent);
        assert_eq!(pair.g2, parent.relabel(pair.pi_star.image()));

        let pair = sample_correlated_pair(&probs, 0.0, &rng).unwrap();
        assert_eq!(pair.g1.edge_count() + pair.g2.edge_count(), 0);
        assert!(sample_correlated_pair(&probs, 1.2, &rng).is_err());
    }

    #[test]
    fn permutation_validation_and_inverse() {
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        let p = Permutation::new(vec![2, 0, 1]).unwrap();
        let inv = p.inverse();
        for i in 0..3 {
            assert_eq!(inv.apply(p.apply(i)), i);
        }
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"image":[2,0,1]}"#);
        assert!(serde_json::from_str::<Permutation>(r#"{"image":[1,1]}"#).is_err());
    }
}
