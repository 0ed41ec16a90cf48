//! Desk-scale checks of the lemma-level statements: each samples or
//! enumerates small instances and compares a measured quantity with its
//! bound.

use std::path::Path;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{induced_subgraph, Graph};
use crate::harness::config::ExperimentConfig;
use crate::matching::{
    decompose_errors, f_statistic, is_k_core_matching, is_weak_k_core_matching, rotate_on,
    Matching,
};
use crate::models::{build_probabilities, sample_correlated_pair, sample_graph, ModelSpec, Permutation};
use crate::rng::{RngStream, SubStream};
use crate::stats::{variance_std_error, Welford};
use crate::theory::{
    compute_fk, compute_zk, exact_recovery_error_bound, expansion_construction,
    f_probability_upper_bound, luczak_density_check, partial_fraction_bound,
    zk_expectation_bound, PARTIAL_DEGREE_FLOOR, PARTIAL_EXPONENT_DIVISOR,
};

/// Names of the checks, in report order.
pub const LEMMA_CHECKS: [&str; 13] = [
    "zk_monotone_in_k",
    "zk_expectation_bound",
    "zk_variance_bound",
    "expansion_covers_fk",
    "expansion_size_bound",
    "f_mu_tail_bound",
    "dependency_graph_max_degree",
    "dependency_graph_coloring",
    "error_set_sizes",
    "exact_bound_identity",
    "fraction_bound_monotone",
    "degree_floor_inequality",
    "weak_core_implication",
];

/// `theta` from 0.05 to 3.0 in steps of 0.05.
pub fn uniform_theta_grid() -> Vec<f64> {
    (1..=60).map(|i| i as f64 * 0.05).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LemmaCheck {
    pub name: String,
    pub passed: bool,
    pub measured: f64,
    pub bound: f64,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LemmaReport {
    pub master_seed: u64,
    pub all_passed: bool,
    pub checks: Vec<LemmaCheck>,
}

impl LemmaReport {
    pub fn check(&self, name: &str) -> Option<&LemmaCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self)?;
        std::fs::write(path, text + "\n").map_err(|e| Error::io(path, e))
    }
}

fn check(name: &str, passed: bool, measured: f64, bound: f64, detail: String) -> LemmaCheck {
    LemmaCheck {
        name: name.into(),
        passed,
        measured,
        bound,
        detail,
    }
}

/// Stream for sample `i` of check number `id`; checks never share streams.
fn stream(seed: u64, id: u64, i: u64) -> RngStream {
    RngStream::new(seed, (id << 40) | i)
}

fn er_graphs(seed: u64, id: u64, n: usize, p: f64, count: u64) -> Result<Vec<Graph>> {
    let probs = build_probabilities(&ModelSpec::er(n, p))?;
    Ok((0..count)
        .map(|i| sample_graph(&probs, &stream(seed, id, i)))
        .collect())
}

fn zk_monotone(seed: u64) -> Result<LemmaCheck> {
    let mut violations = 0;
    for g in er_graphs(seed, 0, 60, 0.05, 50)? {
        for k in 0..8 {
            if !compute_zk(&g, k).is_subset(&compute_zk(&g, k + 1)) {
                violations += 1;
            }
        }
    }
    Ok(check(
        LEMMA_CHECKS[0],
        violations == 0,
        violations as f64,
        0.0,
        "Z_k within Z_(k+1), 50 ER(60, 0.05) graphs, k = 0..7".into(),
    ))
}

fn zk_expectation(seed: u64) -> Result<LemmaCheck> {
    let (n, p, samples) = (200, 0.02, 500);
    let probs = build_probabilities(&ModelSpec::er(n, p))?;
    let graphs = er_graphs(seed, 1, n, p, samples)?;
    let mut worst: Option<(f64, f64, usize, f64)> = None;
    for k in 1..=5 {
        let w: Welford = graphs.iter().map(|g| compute_zk(g, k).len() as f64).collect();
        for c in [0.3, 0.5, 0.7] {
            let limit = zk_expectation_bound(&probs, k, c)? + 3.0 * w.std_error();
            let slack = limit - w.mean();
            if worst.is_none_or(|(s, ..)| slack < s) {
                worst = Some((slack, w.mean(), k, c));
            }
        }
    }
    let (slack, mean, k, c) = worst.expect("grid is nonempty");
    Ok(check(
        LEMMA_CHECKS[1],
        slack >= 0.0,
        mean,
        mean + slack,
        format!("tightest at k = {k}, c = {c}; ER({n}, {p}), {samples} samples, bound + 3 SE"),
    ))
}

fn zk_variance(seed: u64) -> Result<LemmaCheck> {
    let n = 400usize;
    let p = (n as f64).powf(-0.6);
    let k = 3;
    let sizes: Vec<f64> = er_graphs(seed, 2, n, p, 300)?
        .iter()
        .map(|g| compute_zk(g, k).len() as f64)
        .collect();
    let w: Welford = sizes.iter().copied().collect();
    let se = variance_std_error(&sizes);
    let bound = w.mean() + 3.0 * (n as f64).powi(2) * p + 4.0 * se;
    Ok(check(
        LEMMA_CHECKS[2],
        w.variance() <= bound,
        w.variance(),
        bound,
        format!("ER({n}, n^-0.6), k = {k}, 300 samples, bound includes 4 SE of the variance"),
    ))
}

/// Edge probabilities cycled through by the expansion checks: the sparse
/// `gamma / n` regime plus denser graphs, where the hypotheses of the size
/// bound (few low-degree vertices, no dense small sets) actually occur.
pub fn expansion_edge_probability(n: usize, gamma: f64, trial: u64) -> f64 {
    const LADDER: [f64; 4] = [0.2, 0.25, 0.3, 0.35];
    match trial % 5 {
        0 => gamma / n as f64,
        r => LADDER[r as usize - 1],
    }
}

pub struct ExpansionTally {
    pub containment_violations: usize,
    pub size_violations: usize,
    pub conditioned: usize,
    pub skipped: usize,
    pub trials: usize,
}

/// Runs the expansion construction on `per_gamma` random graphs on 16
/// vertices for each gamma in {1, 1.2}, and k in {1, 2} on each graph.
pub fn expansion_tally(seed: u64, per_gamma: u64) -> Result<ExpansionTally> {
    let n = 16usize;
    let mut t = ExpansionTally {
        containment_violations: 0,
        size_violations: 0,
        conditioned: 0,
        skipped: 0,
        trials: 0,
    };
    for (cell, gamma) in [1.0f64, 1.2].into_iter().enumerate() {
        for i in 0..per_gamma {
            let p = expansion_edge_probability(n, gamma, i);
            let probs = build_probabilities(&ModelSpec::er(n, p))?;
            let g = sample_graph(&probs, &stream(seed, 3 + cell as u64, i));
            for k in 1..=2usize {
                t.trials += 1;
                let trace = expansion_construction(&g, k);
                let last = trace.final_set();
                let fk = compute_fk(&g, k);
                let outside = last.complement();
                let outside_ok = outside.is_empty() || {
                    let sub = induced_subgraph(&g, &outside)?;
                    (0..sub.graph.n()).all(|v| sub.graph.neighbors(v).len() >= k)
                };
                if !fk.is_subset(&last) || !outside_ok {
                    t.containment_violations += 1;
                }
                let z = trace.initial.len();
                let dense_ok = luczak_density_check(&g, gamma, n)?.passed;
                if dense_ok && (z as f64) <= n as f64 / (4.0 * gamma * gamma) {
                    t.conditioned += 1;
                    if fk.len() > 3 * z {
                        t.size_violations += 1;
                    }
                } else {
                    t.skipped += 1;
                }
            }
        }
    }
    Ok(t)
}

fn luczak_cap_note(t: &ExpansionTally) -> String {
    format!(
        "{} graphs, {} met the density and |Z_(k+1)| conditions, {} skipped",
        t.trials, t.conditioned, t.skipped
    )
}

fn f_mu_tail(seed: u64) -> Result<LemmaCheck> {
    let (n, p, s, k, d) = (50usize, 0.05, 0.8, 3usize, 5usize);
    let trials = 20_000u64;
    let probs = build_probabilities(&ModelSpec::er(n, p))?;
    let cycle: Vec<usize> = (0..d).collect();
    let mut hits = Welford::new();
    for i in 0..trials {
        let pair = sample_correlated_pair(&probs, s, &stream(seed, 5, i))?;
        let mu = rotate_on(&pair.pi_star, &cycle)?;
        let f = f_statistic(&pair.g1, &pair.g2, &mu, &pair.pi_star)?;
        hits.push(if f >= k * d { 1.0 } else { 0.0 });
    }
    let bound = uniform_theta_grid()
        .into_iter()
        .map(|theta| f_probability_upper_bound(p, s, n, k, d, theta))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    let limit = bound + 3.0 * hits.std_error();
    Ok(check(
        LEMMA_CHECKS[5],
        hits.mean() <= limit,
        hits.mean(),
        limit,
        format!("P(f >= {}) over {trials} pairs, ER({n}, {p}), s = {s}, d = {d}", k * d),
    ))
}

/// A uniform permutation and a random partial injection on `n` vertices.
pub fn random_matching_pair<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (Matching, Permutation) {
    let pi_star = Permutation::uniform(n, rng);
    let mut targets: Vec<usize> = (0..n).collect();
    targets.shuffle(rng);
    let pairs = (0..n)
        .zip(targets)
        .filter(|_| rng.random_bool(0.75))
        .collect();
    let mu = Matching::new(pairs).expect("distinct sources and targets");
    (mu, pi_star)
}

struct DecompositionTally {
    max_degree: usize,
    improper: usize,
    size_violations: usize,
}

fn decomposition_tally(seed: u64) -> Result<DecompositionTally> {
    let n = 8;
    let mut t = DecompositionTally {
        max_degree: 0,
        improper: 0,
        size_violations: 0,
    };
    for i in 0..100 {
        let mut rng = stream(seed, 6, i).rng(SubStream::Aux);
        let (mu, pi_star) = random_matching_pair(n, &mut rng);
        let dec = decompose_errors(&mu, &pi_star, n)?;
        t.max_degree = t.max_degree.max(dec.max_dependency_degree());
        if !dec.coloring_is_proper() {
            t.improper += 1;
        }
        if dec.set_b.len() > dec.d || dec.set_a.len() > dec.d * n {
            t.size_violations += 1;
        }
    }
    Ok(t)
}

fn exact_identity() -> Result<LemmaCheck> {
    let mut worst = 0.0f64;
    for (n, p) in [(30usize, 0.1), (80, 0.05), (200, 0.3)] {
        let probs = build_probabilities(&ModelSpec::er(n, p))?;
        for s in [0.3, 0.7, 1.0] {
            let scaled = probs.scaled(s * s)?;
            for k in 1..6 {
                for c in [0.2, 0.5, 0.8] {
                    let a = exact_recovery_error_bound(&probs, s, k, c)?;
                    let b = zk_expectation_bound(&scaled, k - 1, c)?;
                    worst = worst.max((a - b).abs() / b.abs().max(1e-300));
                }
            }
        }
    }
    Ok(check(
        LEMMA_CHECKS[9],
        worst <= 1e-12,
        worst,
        1e-12,
        "relative gap between the exact-recovery bound and the order k-1 bound on s^2 p".into(),
    ))
}

fn fraction_monotone() -> LemmaCheck {
    let mut violations = 0;
    let d_grid: Vec<f64> = (0..=60).map(|i| i as f64 * 5.0).collect();
    let s_grid: Vec<f64> = (0..=20).map(|i| i as f64 * 0.05).collect();
    for &s in &s_grid {
        for w in d_grid.windows(2) {
            if partial_fraction_bound(w[1], s) < partial_fraction_bound(w[0], s) {
                violations += 1;
            }
        }
    }
    for &d in &d_grid {
        for w in s_grid.windows(2) {
            if partial_fraction_bound(d, w[1]) < partial_fraction_bound(d, w[0]) {
                violations += 1;
            }
        }
    }
    check(
        LEMMA_CHECKS[10],
        violations == 0,
        violations as f64,
        0.0,
        "grid over d_min in [0, 300] and s in [0, 1]".into(),
    )
}

fn degree_floor() -> LemmaCheck {
    let x = PARTIAL_DEGREE_FLOOR;
    let lhs = (-x / PARTIAL_EXPONENT_DIVISOR).exp();
    let rhs = 1.0 / (6.0 * x.powi(4));
    check(
        LEMMA_CHECKS[11],
        lhs <= rhs,
        lhs,
        rhs,
        format!("exp(-x/7) <= 1/(6 x^4) at x = {x}"),
    )
}

/// Every partial injection on `n` vertices.
fn all_matchings(n: usize) -> Vec<Matching> {
    fn rec(i: usize, n: usize, used: &mut [bool], pairs: &mut Vec<(usize, usize)>, out: &mut Vec<Matching>) {
        if i == n {
            out.push(Matching::new(pairs.clone()).expect("injective by construction"));
            return;
        }
        rec(i + 1, n, used, pairs, out);
        for t in 0..n {
            if !used[t] {
                used[t] = true;
                pairs.push((i, t));
                rec(i + 1, n, used, pairs, out);
                pairs.pop();
                used[t] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(0, n, &mut vec![false; n], &mut Vec::new(), &mut out);
    out
}

fn weak_core(seed: u64) -> Result<LemmaCheck> {
    let n = 4;
    let matchings = all_matchings(n);
    let probs = build_probabilities(&ModelSpec::er(n, 0.8))?;
    let mut checked = 0usize;
    let mut violations = 0usize;
    for i in 0..20 {
        let pair = sample_correlated_pair(&probs, 0.9, &stream(seed, 7, i))?;
        for mu in &matchings {
            for k in 1..=3 {
                if is_k_core_matching(&pair.g1, &pair.g2, mu, k)? {
                    checked += 1;
                    if !is_weak_k_core_matching(&pair.g1, &pair.g2, mu, &pair.pi_star, k)? {
                        violations += 1;
                    }
                }
            }
        }
    }
    Ok(check(
        LEMMA_CHECKS[12],
        violations == 0,
        violations as f64,
        0.0,
        format!("{checked} k-core matchings over all partial injections on {n} vertices, 20 pairs"),
    ))
}

/// Runs every check in [`LEMMA_CHECKS`]. `config.inject_fault` names a
/// check whose verdict is inverted.
pub fn verify_lemmas(config: &ExperimentConfig) -> Result<LemmaReport> {
    if let Some(name) = &config.inject_fault {
        if !LEMMA_CHECKS.contains(&name.as_str()) {
            return Err(Error::input(format!("unknown lemma check {name:?}")));
        }
    }
    let seed = config.master_seed;
    let expansion = expansion_tally(seed, 250)?;
    let dec = decomposition_tally(seed)?;
    let mut checks = vec![
        zk_monotone(seed)?,
        zk_expectation(seed)?,
        zk_variance(seed)?,
        check(
            LEMMA_CHECKS[3],
            expansion.containment_violations == 0,
            expansion.containment_violations as f64,
            0.0,
            format!("{} graphs on 16 vertices", expansion.trials),
        ),
        check(
            LEMMA_CHECKS[4],
            expansion.size_violations == 0,
            expansion.size_violations as f64,
            0.0,
            luczak_cap_note(&expansion),
        ),
        f_mu_tail(seed)?,
        check(
            LEMMA_CHECKS[6],
            dec.max_degree <= 2,
            dec.max_degree as f64,
            2.0,
            "100 random (mu, pi*) on 8 vertices".into(),
        ),
        check(
            LEMMA_CHECKS[7],
            dec.improper == 0,
            dec.improper as f64,
            0.0,
            "improper greedy 3-colorings".into(),
        ),
        check(
            LEMMA_CHECKS[8],
            dec.size_violations == 0,
            dec.size_violations as f64,
            0.0,
            "instances with |B| > d or |A| > d n".into(),
        ),
        exact_identity()?,
        fraction_monotone(),
        degree_floor(),
        weak_core(seed)?,
    ];
    if let Some(name) = &config.inject_fault {
        for c in checks.iter_mut().filter(|c| &c.name == name) {
            c.passed = !c.passed;
            c.detail.push_str(" [fault injected]");
        }
    }
    Ok(LemmaReport {
        master_seed: seed,
        all_passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_injections_on_three_vertices() {
        // sum_j C(3, j)^2 j! = 1 + 9 + 18 + 6
        assert_eq!(all_matchings(3).len(), 34);
    }

    #[test]
    fn names_are_unique() {
        let mut names = LEMMA_CHECKS.to_vec();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), LEMMA_CHECKS.len());
    }

    fn lemma_config(fault: Option<&str>) -> ExperimentConfig {
        ExperimentConfig {
            model: ModelSpec::er(10, 0.5),
            s: 1.0,
            k: 3,
            trials: 1,
            master_seed: 2024,
            sweep: None,
            mode: crate::harness::Mode::Lemmas,
            output_path: None,
            alpha: 1.0,
            epsilon: 0.1,
            min_degree_threshold: None,
            timing: false,
            inject_fault: fault.map(String::from),
        }
    }

    #[test]
    fn default_run_passes_and_fault_flips_one() {
        let clean = verify_lemmas(&lemma_config(None)).unwrap();
        for c in &clean.checks {
            assert!(c.passed, "{c:?}");
        }
        assert!(clean.checks.len() >= 8);
        let faulty = verify_lemmas(&lemma_config(Some("zk_variance_bound"))).unwrap();
        let failed: Vec<_> = faulty.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        assert_eq!(failed, vec!["zk_variance_bound"]);
        assert!(!faulty.all_passed);
        assert!(verify_lemmas(&lemma_config(Some("no_such_check"))).is_err());
    }
}
