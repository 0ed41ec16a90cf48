//! Closed-form bounds and recovery conditions for the k-core estimator, and
//! the combinatorial constructions used to control the size of the k-core
//! (low-degree sets, the small-set density event, and the expansion sets).
//!
//! Asymptotic hypotheses are replaced by explicit finite-n surrogates:
//! `p_max <= n^-alpha` for the sparsity assumption and `gamma = n * p_max`
//! for the density scale. Reports always carry the raw quantities next to
//! the verdicts.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{k_core, Graph, VertexSet};
use crate::models::{build_probabilities, EdgeProbabilities, ModelSpec};

/// Core order required by the partial-recovery guarantee.
pub const PARTIAL_CORE_ORDER: usize = 13;
/// Minimum intersection degree required by the partial-recovery guarantee.
pub const PARTIAL_DEGREE_FLOOR: f64 = 154.0;
/// Denominator in the exponent of the matched-fraction bound.
pub const PARTIAL_EXPONENT_DIVISOR: f64 = 7.0;
/// `n^2 * xi` below this value is reported as vanishing.
pub const XI_VANISHING_TOLERANCE: f64 = 1.0;
/// Upper limit on subsets visited by [`luczak_density_check`].
pub const LUCZAK_SUBSET_BUDGET: u64 = 50_000_000;

/// Tuning constants shared by the bounds.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundParams {
    /// Chernoff tilt in `(0, 1)`.
    pub c: f64,
    /// Exponential tilt for the f(mu) bound, `> 0`.
    pub theta: f64,
    /// Sparsity exponent in `(1/2, 1]`.
    pub alpha: f64,
    /// Slack in the exact-recovery degree condition, `> 0`.
    pub epsilon: f64,
    pub k: usize,
    /// Density scale with `p_max <= gamma / n`.
    pub gamma: f64,
}

impl Default for BoundParams {
    fn default() -> Self {
        BoundParams {
            c: 0.5,
            theta: 1.0,
            alpha: 1.0,
            epsilon: 0.1,
            k: PARTIAL_CORE_ORDER,
            gamma: 1.0,
        }
    }
}

impl BoundParams {
    pub fn validate(&self) -> Result<()> {
        check_tilt(self.c)?;
        check_theta(self.theta)?;
        check_alpha(self.alpha)?;
        if !(self.epsilon > 0.0) {
            return Err(Error::input(format!("epsilon = {} must be positive", self.epsilon)));
        }
        if self.k == 0 {
            return Err(Error::input("k must be at least 1"));
        }
        if !(self.gamma > 0.0) {
            return Err(Error::input(format!("gamma = {} must be positive", self.gamma)));
        }
        Ok(())
    }
}

fn check_tilt(c: f64) -> Result<()> {
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::input(format!("tilt c = {c} is not in (0, 1)")));
    }
    Ok(())
}

fn check_theta(theta: f64) -> Result<()> {
    if !(theta > 0.0 && theta.is_finite()) {
        return Err(Error::input(format!("theta = {theta} must be positive")));
    }
    Ok(())
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.5 && alpha <= 1.0) {
        return Err(Error::input(format!("alpha = {alpha} is not in (1/2, 1]")));
    }
    Ok(())
}

fn check_s(s: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::input(format!("s = {s} is not in [0, 1]")));
    }
    Ok(())
}

/// `min_i sum_j p_ij`; zero for an empty vertex set.
pub fn min_expected_degree(probs: &EdgeProbabilities) -> f64 {
    probs
        .row_sums()
        .into_iter()
        .reduce(f64::min)
        .unwrap_or(0.0)
}

/// `R = (n - 1) p_max / d_min`.
pub fn heterogeneity_r(probs: &EdgeProbabilities) -> Result<f64> {
    let d_min = min_expected_degree(probs);
    if d_min <= 0.0 {
        return Err(Error::Undefined(
            "heterogeneity ratio needs a positive minimum expected degree".into(),
        ));
    }
    Ok((probs.n() as f64 - 1.0) * probs.p_max() / d_min)
}

fn tilted_sum(row_sums: &[f64], scale: f64, c: f64) -> f64 {
    row_sums.iter().map(|&r| (-c * scale * r).exp()).sum()
}

/// Upper bound on `E|Z_k|`: `(1/(1-c))^k sum_i exp(-c sum_j p_ij)`.
pub fn zk_expectation_bound(probs: &EdgeProbabilities, k: usize, c: f64) -> Result<f64> {
    check_tilt(c)?;
    let factor = (1.0 / (1.0 - c)).powi(k as i32);
    Ok(factor * tilted_sum(&probs.row_sums(), 1.0, c))
}

/// Leading term of the bound on `P(mu_hat_k != pi*)`:
/// `(1/(1-c))^(k-1) sum_i exp(-c s^2 sum_j p_ij)`.
pub fn exact_recovery_error_bound(
    probs: &EdgeProbabilities,
    s: f64,
    k: usize,
    c: f64,
) -> Result<f64> {
    check_tilt(c)?;
    check_s(s)?;
    if k == 0 {
        return Err(Error::input("k must be at least 1"));
    }
    let factor = (1.0 / (1.0 - c)).powi(k as i32 - 1);
    Ok(factor * tilted_sum(&probs.row_sums(), s * s, c))
}

/// Vertices of degree at most `k`.
pub fn compute_zk(g: &Graph, k: usize) -> VertexSet {
    let mask: Vec<bool> = (0..g.n()).map(|v| g.neighbors(v).len() <= k).collect();
    VertexSet::from_mask(&mask)
}

/// Vertices outside the k-core.
pub fn compute_fk(g: &Graph, k: usize) -> VertexSet {
    k_core(g, k).complement()
}

/// Outcome of the exhaustive small-set density check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensityCheck {
    pub passed: bool,
    /// Largest subset size examined.
    pub size_limit: usize,
    pub subsets_checked: u64,
    /// Smallest violating set (by size, then lexicographically).
    pub witness: Option<VertexSet>,
}

fn binomial_saturating(n: u64, k: u64) -> u64 {
    let k = k.min(n - k.min(n));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Checks that every `S` with `|S| <= min(floor(3n / (4 gamma^2)), size_cap)`
/// induces at most `2|S|` edges, by visiting every such subset.
pub fn luczak_density_check(g: &Graph, gamma: f64, size_cap: usize) -> Result<DensityCheck> {
    if !(gamma > 0.0) {
        return Err(Error::input(format!("gamma = {gamma} must be positive")));
    }
    let n = g.n();
    let by_gamma = (3.0 * n as f64 / (4.0 * gamma * gamma)).floor();
    let size_limit = (by_gamma.min(n as f64) as usize).min(size_cap);
    let mut total: u64 = 0;
    for s in 1..=size_limit as u64 {
        total = total.saturating_add(binomial_saturating(n as u64, s));
    }
    if total > LUCZAK_SUBSET_BUDGET {
        return Err(Error::Capacity {
            what: "subsets for the density check",
            got: usize::try_from(total).unwrap_or(usize::MAX),
            limit: LUCZAK_SUBSET_BUDGET as usize,
        });
    }

    struct Walk<'a> {
        g: &'a Graph,
        in_set: Vec<bool>,
        chosen: Vec<usize>,
        depth_limit: usize,
        visited: u64,
        witness: Option<Vec<usize>>,
    }

    impl Walk<'_> {
        fn extend(&mut self, from: usize, edges: usize) {
            for v in from..self.g.n() {
                if self.chosen.len() >= self.depth_limit {
                    return;
                }
                let added = self
                    .g
                    .neighbors(v)
                    .iter()
                    .filter(|&&w| self.in_set[w])
                    .count();
                let e = edges + added;
                self.chosen.push(v);
                self.in_set[v] = true;
                self.visited += 1;
                if e > 2 * self.chosen.len() {
                    // Pre-order visits sets of a given size lexicographically,
                    // so this is the first violation of this size; only
                    // strictly smaller sets can improve on it.
                    self.witness = Some(self.chosen.clone());
                    self.depth_limit = self.chosen.len() - 1;
                } else {
                    self.extend(v + 1, e);
                }
                self.in_set[v] = false;
                self.chosen.pop();
            }
        }
    }

    let mut walk = Walk {
        g,
        in_set: vec![false; n],
        chosen: Vec::new(),
        depth_limit: size_limit,
        visited: 0,
        witness: None,
    };
    walk.extend(0, 0);
    Ok(DensityCheck {
        passed: walk.witness.is_none(),
        size_limit,
        subsets_checked: walk.visited,
        witness: walk.witness.map(|w| VertexSet::from_sorted(n, w)),
    })
}

/// The chain `U_0 ⊆ U_1 ⊆ ... ⊆ U_l` grown from `U_0 = Z_{k+1}` by adding,
/// one at a time, the smallest vertex outside with at least 3 neighbors
/// inside.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpansionTrace {
    pub initial: VertexSet,
    /// Vertex added at each step, in order.
    pub added: Vec<usize>,
}

impl ExpansionTrace {
    /// Number of growth steps `l`.
    pub fn steps(&self) -> usize {
        self.added.len()
    }

    /// `U_m` for `m <= steps()`.
    pub fn set_at(&self, m: usize) -> VertexSet {
        let mut mask = self.initial.mask();
        for &v in &self.added[..m] {
            mask[v] = true;
        }
        VertexSet::from_mask(&mask)
    }

    pub fn final_set(&self) -> VertexSet {
        self.set_at(self.steps())
    }

    /// All sets of the chain, `U_0` first.
    pub fn sets(&self) -> Vec<VertexSet> {
        (0..=self.steps()).map(|m| self.set_at(m)).collect()
    }
}

pub fn expansion_construction(g: &Graph, k: usize) -> ExpansionTrace {
    let n = g.n();
    let initial = compute_zk(g, k + 1);
    let mut inside = initial.mask();
    let mut count = vec![0usize; n];
    for v in initial.iter() {
        for &w in g.neighbors(v) {
            count[w] += 1;
        }
    }
    let mut ready: BTreeSet<usize> = (0..n).filter(|&v| !inside[v] && count[v] >= 3).collect();
    let mut added = Vec::new();
    while let Some(v) = ready.pop_first() {
        inside[v] = true;
        added.push(v);
        for &w in g.neighbors(v) {
            count[w] += 1;
            if !inside[w] && count[w] >= 3 {
                ready.insert(w);
            }
        }
    }
    ExpansionTrace { initial, added }
}

/// Exponent `theta k - e^{2 theta} p_max s^2 - n e^{6 theta} p_max^2 s^2`.
pub fn f_bound_exponent(p_max: f64, s: f64, n: usize, k: usize, theta: f64) -> f64 {
    let s2 = s * s;
    theta * k as f64
        - (2.0 * theta).exp() * p_max * s2
        - n as f64 * (6.0 * theta).exp() * p_max * p_max * s2
}

/// `3 exp(-d * exponent)`: bound on `P(f(mu) >= k d)` for a pi*-maximal
/// matching making `d` errors.
pub fn f_probability_upper_bound(
    p_max: f64,
    s: f64,
    n: usize,
    k: usize,
    d: usize,
    theta: f64,
) -> Result<f64> {
    check_theta(theta)?;
    if d == 0 {
        return Err(Error::input("error count d must be at least 1"));
    }
    Ok(3.0 * (-(d as f64) * f_bound_exponent(p_max, s, n, k, theta)).exp())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct XiReport {
    /// `3 exp(-E(theta*))`, the leading term of the bound on xi (the
    /// vanishing correction in the exponent has no finite-n form).
    pub xi: f64,
    pub theta: f64,
    pub exponent: f64,
    pub n_squared_xi: f64,
    /// `n^2 xi` below [`XI_VANISHING_TOLERANCE`].
    pub vanishing: bool,
    pub leading_term_only: bool,
}

/// Best leading-term bound on xi over a grid of tilts. Since the f(mu)
/// bound is `3 exp(-d E(theta))`, the `d`-th root is at most
/// `3 exp(-E(theta))` with `d = 1` the worst case.
pub fn xi_bound(p_max: f64, s: f64, n: usize, k: usize, theta_grid: &[f64]) -> Result<XiReport> {
    if theta_grid.is_empty() {
        return Err(Error::input("theta grid is empty"));
    }
    let mut best: Option<(f64, f64)> = None;
    for &theta in theta_grid {
        check_theta(theta)?;
        let e = f_bound_exponent(p_max, s, n, k, theta);
        if best.is_none_or(|(_, be)| e > be) {
            best = Some((theta, e));
        }
    }
    let (theta, exponent) = best.expect("grid is nonempty");
    let xi = 3.0 * (-exponent).exp();
    let n_squared_xi = (n as f64).powi(2) * xi;
    Ok(XiReport {
        xi,
        theta,
        exponent,
        n_squared_xi,
        vanishing: n_squared_xi < XI_VANISHING_TOLERANCE,
        leading_term_only: true,
    })
}

/// `theta = c log n` for ten evenly spaced `c` from `2.1/k` to
/// `(2 alpha - 1)/6`. Fails when that range is empty, i.e. when `k` is too
/// small for `alpha`.
pub fn default_theta_grid(n: usize, k: usize, alpha: f64) -> Result<Vec<f64>> {
    check_alpha(alpha)?;
    if k == 0 || n < 2 {
        return Err(Error::input("default theta grid needs k >= 1 and n >= 2"));
    }
    let lo = 2.1 / k as f64;
    let hi = (2.0 * alpha - 1.0) / 6.0;
    if lo > hi {
        return Err(Error::input(format!(
            "no tilt in [2.1/k, (2 alpha - 1)/6] = [{lo}, {hi}]; k = {k} is too small"
        )));
    }
    let log_n = (n as f64).ln();
    Ok((0..10)
        .map(|i| (lo + (hi - lo) * i as f64 / 9.0) * log_n)
        .collect())
}

/// `max(0, 1 - 3 exp(-d_min s^2 / 7))`.
pub fn partial_fraction_bound(d_min: f64, s: f64) -> f64 {
    (1.0 - 3.0 * (-d_min * s * s / PARTIAL_EXPONENT_DIVISOR).exp()).max(0.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Satisfied,
    Violated,
}

impl Verdict {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Satisfied
        } else {
            Verdict::Violated
        }
    }

    pub fn holds(self) -> bool {
        self == Verdict::Satisfied
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Satisfied => "satisfied",
            Verdict::Violated => "violated",
        }
    }
}

/// One inequality with both sides and the signed slack (positive means the
/// inequality holds with room to spare).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Clause {
    pub condition_name: String,
    pub verdict: Verdict,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
}

impl Clause {
    fn at_least(name: &str, lhs: f64, rhs: f64) -> Self {
        Clause {
            condition_name: name.into(),
            verdict: Verdict::from_bool(lhs >= rhs),
            lhs,
            rhs,
            margin: lhs - rhs,
        }
    }

    fn at_most(name: &str, lhs: f64, rhs: f64) -> Self {
        Clause {
            condition_name: name.into(),
            verdict: Verdict::from_bool(lhs <= rhs),
            lhs,
            rhs,
            margin: rhs - lhs,
        }
    }

    fn greater_than(name: &str, lhs: f64, rhs: f64) -> Self {
        Clause {
            condition_name: name.into(),
            verdict: Verdict::from_bool(lhs > rhs),
            lhs,
            rhs,
            margin: lhs - rhs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Surrogates {
    pub d_min: f64,
    #[serde(rename = "R")]
    pub r: Option<f64>,
    pub p_max: f64,
    pub n: usize,
    /// Everything else worth printing: `gamma = n p_max`, the diagonal gap
    /// `p_max s^2` between corollary-form and generic degree sums, slack
    /// columns for vanishing terms.
    #[serde(flatten)]
    pub extra: BTreeMap<String, f64>,
}

/// Model-specific form of a condition.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorollaryReport {
    pub model: String,
    pub verdict: Verdict,
    pub clauses: Vec<Clause>,
}

impl CorollaryReport {
    fn new(model: &str, clauses: Vec<Clause>) -> Self {
        CorollaryReport {
            model: model.into(),
            verdict: Verdict::from_bool(clauses.iter().all(|c| c.verdict.holds())),
            clauses,
        }
    }

    pub fn clause(&self, name: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.condition_name == name)
    }
}

/// Verdict on a recovery condition. The top-level `lhs`, `rhs` and `margin`
/// describe the degree inequality; `verdict` is the conjunction of all
/// generic clauses.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionReport {
    pub condition_name: String,
    pub verdict: Verdict,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub surrogates: Surrogates,
    pub clauses: Vec<Clause>,
    pub corollary: Option<CorollaryReport>,
    /// Guaranteed matched fraction (partial recovery only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fraction_bound: Option<f64>,
}

impl ConditionReport {
    fn assemble(
        name: &str,
        clauses: Vec<Clause>,
        surrogates: Surrogates,
        corollary: Option<CorollaryReport>,
        fraction_bound: Option<f64>,
    ) -> Self {
        let degree = clauses[0].clone();
        ConditionReport {
            condition_name: name.into(),
            verdict: Verdict::from_bool(clauses.iter().all(|c| c.verdict.holds())),
            lhs: degree.lhs,
            rhs: degree.rhs,
            margin: degree.margin,
            surrogates,
            clauses,
            corollary,
            fraction_bound,
        }
    }

    pub fn clause(&self, name: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.condition_name == name)
    }
}

/// Per-vertex count of points within distance `r`, the vertex itself
/// included.
fn rgg_ball_counts(points: &[Vec<f64>], r: f64) -> Vec<usize> {
    let n = points.len();
    let mut counts = vec![1usize; n];
    for i in 0..n {
        for j in i + 1..n {
            let dist = points[i]
                .iter()
                .zip(&points[j])
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            if r >= 2.0 || dist <= r {
                counts[i] += 1;
                counts[j] += 1;
            }
        }
    }
    counts
}

/// `min_a sum_b |V_b| q_ab` over nonempty blocks, with `q_max` and `q_min`.
fn sbm_summary(blocks: &[Vec<usize>], q: &[Vec<f64>]) -> (f64, f64, f64) {
    let sizes: Vec<f64> = blocks.iter().map(|b| b.len() as f64).collect();
    let min_row = (0..blocks.len())
        .filter(|&a| !blocks[a].is_empty())
        .map(|a| (0..blocks.len()).map(|b| sizes[b] * q[a][b]).sum::<f64>())
        .reduce(f64::min)
        .unwrap_or(0.0);
    let all = q.iter().flatten().copied();
    let q_max = all.clone().fold(0.0f64, f64::max);
    let q_min = all.fold(f64::INFINITY, f64::min);
    (min_row, q_max, q_min)
}

fn surrogates(probs: &EdgeProbabilities, s: f64) -> Surrogates {
    let d_min = min_expected_degree(probs);
    let p_max = probs.p_max();
    let n = probs.n();
    let r = (d_min > 0.0).then(|| (n as f64 - 1.0) * p_max / d_min);
    let mut extra = BTreeMap::new();
    extra.insert("s".into(), s);
    extra.insert("d_min_s2".into(), d_min * s * s);
    extra.insert("gamma".into(), n as f64 * p_max);
    extra.insert("diagonal_gap".into(), p_max * s * s);
    Surrogates {
        d_min,
        r,
        p_max,
        n,
        extra,
    }
}

/// Exact-recovery hypotheses: `d_min s^2 >= (1 + eps) log n`,
/// `p_max <= n^-alpha` and `k > 12 / (2 alpha - 1)`, plus the
/// model-specific corollary form where one exists.
pub fn check_exact_condition(
    spec: &ModelSpec,
    s: f64,
    alpha: f64,
    epsilon: f64,
    k: usize,
) -> Result<ConditionReport> {
    check_s(s)?;
    check_alpha(alpha)?;
    if !(epsilon > 0.0) {
        return Err(Error::input(format!("epsilon = {epsilon} must be positive")));
    }
    let probs = build_probabilities(spec)?;
    let n = probs.n();
    if n < 2 {
        return Err(Error::input("conditions need at least two vertices"));
    }
    let s2 = s * s;
    let nf = n as f64;
    let log_rhs = (1.0 + epsilon) * nf.ln();
    let sparsity = nf.powf(-alpha);
    let k_floor = 12.0 / (2.0 * alpha - 1.0);
    let mut sur = surrogates(&probs, s);
    sur.extra.insert("concentration_slack".into(), nf.powf(0.75));

    let clauses = vec![
        Clause::at_least("min_degree", sur.d_min * s2, log_rhs),
        Clause::at_most("p_max", sur.p_max, sparsity),
        Clause::greater_than("core_order", k as f64, k_floor),
    ];
    let k_clause = clauses[2].clone();

    let corollary = match spec {
        ModelSpec::Irg { .. } => None,
        ModelSpec::Er { p, .. } => Some(CorollaryReport::new(
            "er",
            vec![
                Clause::at_least("min_degree", nf * p * s2, log_rhs),
                Clause::at_most("p_max", *p, sparsity),
                k_clause,
            ],
        )),
        ModelSpec::Sbm { blocks, q } => {
            let (min_row, q_max, _) = sbm_summary(blocks, q);
            Some(CorollaryReport::new(
                "sbm",
                vec![
                    Clause::at_least("min_degree", min_row * s2, log_rhs),
                    Clause::at_most("p_max", q_max, sparsity),
                    k_clause,
                ],
            ))
        }
        ModelSpec::ChungLu { weights } => {
            let total: f64 = weights.iter().sum();
            let w_min = weights.iter().copied().fold(f64::INFINITY, f64::min);
            let w_max = weights.iter().copied().fold(0.0f64, f64::max);
            Some(CorollaryReport::new(
                "chung_lu",
                vec![
                    Clause::at_least("min_degree", w_min * s2, log_rhs),
                    Clause::at_most("p_max", w_max, nf.powf(-alpha / 2.0) * total.sqrt()),
                    k_clause,
                ],
            ))
        }
        ModelSpec::Rgg { points, r, p } => {
            let ball = rgg_ball_counts(points, *r).into_iter().min().unwrap_or(0);
            Some(CorollaryReport::new(
                "rgg",
                vec![
                    Clause::at_least("min_degree", p * s2 * ball as f64, log_rhs),
                    Clause::at_most("p_max", *p, sparsity),
                    k_clause,
                ],
            ))
        }
    };
    Ok(ConditionReport::assemble(
        "exact_recovery",
        clauses,
        sur,
        corollary,
        None,
    ))
}

/// Partial-recovery hypothesis `d_min s^2 >= max{R, 154}` at `k = 13`, the
/// model-specific surrogate, and the guaranteed matched fraction.
pub fn check_partial_condition(spec: &ModelSpec, s: f64) -> Result<ConditionReport> {
    check_s(s)?;
    let probs = build_probabilities(spec)?;
    let n = probs.n();
    if n < 2 {
        return Err(Error::input("conditions need at least two vertices"));
    }
    let s2 = s * s;
    let nf = n as f64;
    let mut sur = surrogates(&probs, s);
    sur.extra.insert("k".into(), PARTIAL_CORE_ORDER as f64);
    sur.extra.insert("concentration_slack".into(), nf.powf(0.75));
    let r_value = sur.r.unwrap_or(f64::INFINITY);
    let clauses = vec![Clause::at_least(
        "min_degree",
        sur.d_min * s2,
        r_value.max(PARTIAL_DEGREE_FLOOR),
    )];

    let corollary = match spec {
        ModelSpec::Irg { .. } => None,
        ModelSpec::Er { p, .. } => Some(CorollaryReport::new(
            "er",
            vec![Clause::at_least(
                "min_degree",
                nf * p * s2,
                1f64.max(PARTIAL_DEGREE_FLOOR),
            )],
        )),
        ModelSpec::Sbm { blocks, q } => {
            let (min_row, q_max, q_min) = sbm_summary(blocks, q);
            let ratio = if q_min > 0.0 { q_max / q_min } else { f64::INFINITY };
            Some(CorollaryReport::new(
                "sbm",
                vec![Clause::at_least(
                    "min_degree",
                    min_row * s2,
                    ratio.max(PARTIAL_DEGREE_FLOOR),
                )],
            ))
        }
        ModelSpec::ChungLu { weights } => {
            let w_min = weights.iter().copied().fold(f64::INFINITY, f64::min);
            let w_max = weights.iter().copied().fold(0.0f64, f64::max);
            Some(CorollaryReport::new(
                "chung_lu",
                vec![Clause::at_least(
                    "min_degree",
                    w_min * s2,
                    ((w_max / w_min).powi(2)).max(PARTIAL_DEGREE_FLOOR),
                )],
            ))
        }
        ModelSpec::Rgg { points, r, p } => {
            let ball = rgg_ball_counts(points, *r).into_iter().min().unwrap_or(0);
            Some(CorollaryReport::new(
                "rgg",
                vec![Clause::at_least(
                    "min_degree",
                    p * s2 * ball as f64,
                    (s * (nf * p).sqrt()).max(PARTIAL_DEGREE_FLOOR),
                )],
            ))
        }
    };
    let fraction = partial_fraction_bound(sur.d_min, s);
    Ok(ConditionReport::assemble(
        "partial_recovery",
        clauses,
        sur,
        corollary,
        Some(fraction),
    ))
}
