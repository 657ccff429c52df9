//! Brute-force reference implementations used by the test suites.
//!
//! These re-derive quantities along deliberately different code paths than
//! the production operations (path enumeration instead of label-setting
//! search, recursive DFS instead of BFS) and must stay independent of them.

use crate::graph::{DirectedGraph, SeedSet};
use crate::ic::LiveEdgeSample;

/// Influence likelihoods by exhaustive enumeration of simple seed-to-node
/// paths: for each node, the best value of `1 - sum of (1 - p)` along any
/// path, clamped at 0; 1 for seeds. Exponential — use on tiny graphs only.
pub fn pi_by_path_enumeration(g: &DirectedGraph, s: &SeedSet) -> Vec<f64> {
    let n = g.node_count();
    let mut best = vec![f64::INFINITY; n];
    let mut on_path = vec![false; n];
    for &seed in s.ids() {
        best[seed] = 0.0;
        on_path[seed] = true;
        walk(g, seed, 0.0, &mut on_path, &mut best);
        on_path[seed] = false;
    }
    (0..n)
        .map(|i| {
            if s.contains(i) {
                1.0
            } else {
                (1.0 - best[i]).max(0.0)
            }
        })
        .collect()
}

fn walk(g: &DirectedGraph, node: usize, acc: f64, on_path: &mut [bool], best: &mut [f64]) {
    for &(next, eidx) in g.out_edges(node) {
        if on_path[next] {
            continue;
        }
        let acc_next = acc + (1.0 - g.edges()[eidx].p);
        if acc_next < best[next] {
            best[next] = acc_next;
        }
        on_path[next] = true;
        walk(g, next, acc_next, on_path, best);
        on_path[next] = false;
    }
}

/// Live-edge influence count by recursive DFS; cross-checks the BFS route.
pub fn count_influenced_dfs(g: &DirectedGraph, c: &LiveEdgeSample, s: &SeedSet) -> usize {
    let mut seen = vec![false; g.node_count()];
    for &v in s.ids() {
        if !seen[v] {
            seen[v] = true;
            dfs(g, c, v, &mut seen);
        }
    }
    seen.iter().filter(|&&x| x).count()
}

fn dfs(g: &DirectedGraph, c: &LiveEdgeSample, node: usize, seen: &mut [bool]) {
    for &(next, eidx) in g.out_edges(node) {
        if c.is_live(eidx) && !seen[next] {
            seen[next] = true;
            dfs(g, c, next, seen);
        }
    }
}
