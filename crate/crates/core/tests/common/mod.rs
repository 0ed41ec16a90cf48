//! Independent exhaustive oracles shared by the integration tests.

#![allow(dead_code)]

use corematch::graph::Graph;
use corematch::models::{build_probabilities, sample_correlated_pair, CorrelatedPair, ModelSpec};
use corematch::RngStream;

/// Degree of every matched vertex in the intersection graph, in `pairs`
/// order, computed straight from the definition.
pub fn intersection_degrees(g1: &Graph, g2: &Graph, pairs: &[(usize, usize)]) -> Vec<usize> {
    pairs
        .iter()
        .map(|&(i, mi)| {
            pairs
                .iter()
                .filter(|&&(j, mj)| j != i && g1.has_edge(i, j) && g2.has_edge(mi, mj))
                .count()
        })
        .collect()
}

/// Calls `visit` with every partial injection on `n` vertices, given as
/// `(i, mu(i))` pairs sorted by `i`, by scanning all `(n + 1)^n` maps into
/// `{0, ..., n - 1, unmatched}` and discarding the non-injective ones.
pub fn for_each_partial_injection(n: usize, mut visit: impl FnMut(&[(usize, usize)])) {
    let total = (n as u64 + 1).pow(n as u32);
    let mut pairs = Vec::with_capacity(n);
    for code in 0..total {
        pairs.clear();
        let mut c = code;
        let mut used = 0u64;
        let mut injective = true;
        for i in 0..n {
            let t = (c % (n as u64 + 1)) as usize;
            c /= n as u64 + 1;
            if t < n {
                if used >> t & 1 == 1 {
                    injective = false;
                    break;
                }
                used |= 1 << t;
                pairs.push((i, t));
            }
        }
        if injective {
            visit(&pairs);
        }
    }
}

/// Largest k-core matching, ties broken by the sorted domain and then by
/// the image sequence, both lexicographically. Empty when none exists.
pub fn best_core_matching(g1: &Graph, g2: &Graph, k: usize) -> Vec<(usize, usize)> {
    let mut best: Option<(usize, Vec<usize>, Vec<usize>)> = None;
    for_each_partial_injection(g1.n(), |pairs| {
        if pairs.is_empty() || intersection_degrees(g1, g2, pairs).iter().any(|&d| d < k) {
            return;
        }
        let key = (
            pairs.len(),
            pairs.iter().map(|p| p.0).collect::<Vec<_>>(),
            pairs.iter().map(|p| p.1).collect::<Vec<_>>(),
        );
        let better = match &best {
            None => true,
            Some((size, dom, img)) => {
                key.0 > *size || (key.0 == *size && (&key.1, &key.2) < (dom, img))
            }
        };
        if better {
            best = Some(key);
        }
    });
    best.map(|(_, dom, img)| dom.into_iter().zip(img).collect())
        .unwrap_or_default()
}

pub fn er_pair(n: usize, p: f64, s: f64, seed: u64, index: u64) -> CorrelatedPair {
    let probs = build_probabilities(&ModelSpec::er(n, p)).unwrap();
    sample_correlated_pair(&probs, s, &RngStream::new(seed, index)).unwrap()
}
