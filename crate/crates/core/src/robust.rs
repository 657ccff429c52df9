//! Worst-case (correlation-robust) influence evaluation.
//!
//! Over all joint edge-activation distributions consistent with the edge
//! marginals, the worst-case probability that node i is influenced equals
//! `max(1 - d_i, 0)`, where `d_i` is the multi-source shortest-path distance
//! from the seed set under edge weights `1 - p`. Summing these likelihoods
//! gives the worst-case expected influence, and the likelihood vector is an
//! optimal solution of the potential-style linear program whose feasibility
//! [`verify_lp_feasibility`] checks directly.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::io::Write;

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, SeedSet};

/// Absolute tolerance for detecting tight edges during path enumeration.
pub const TIGHT_EDGE_TOL: f64 = 1e-12;

/// Default cap on enumerated best paths; ties can blow up combinatorially.
pub const DEFAULT_PATH_CAP: usize = 10_000;

/// Per-node robust distances and influence likelihoods for a fixed seed set.
#[derive(Debug, Clone)]
pub struct InfluenceProfile {
    seeds: SeedSet,
    /// Shortest-path distance under weights 1-p; +inf when unreachable.
    /// Values >= 1 may be overestimates (the search prunes there).
    d: Vec<f64>,
    /// pi_i = max(1 - d_i, 0); exactly 1 for seeds.
    pi: Vec<f64>,
    /// Node-order sum of pi; equals the worst-case expected influence.
    sum_pi: f64,
}

impl InfluenceProfile {
    pub fn seeds(&self) -> &SeedSet {
        &self.seeds
    }

    pub fn distances(&self) -> &[f64] {
        &self.d
    }

    pub fn likelihoods(&self) -> &[f64] {
        &self.pi
    }

    pub fn node_count(&self) -> usize {
        self.pi.len()
    }

    /// Sum of likelihoods over all nodes = worst-case expected influence.
    pub fn total(&self) -> f64 {
        self.sum_pi
    }

    /// Assembles a profile from raw vectors, for feeding diagnostics like
    /// [`verify_lp_feasibility`] with hand-built candidates. No invariants
    /// are enforced.
    pub fn from_raw(seeds: SeedSet, d: Vec<f64>, pi: Vec<f64>) -> Self {
        let sum_pi = pi.iter().sum();
        InfluenceProfile {
            seeds,
            d,
            pi,
            sum_pi,
        }
    }

    /// Adds `v` as a seed in place: one pruned relaxation pass from `v`
    /// touching only nodes whose distance improves. The resulting profile is
    /// value-identical to recomputing from scratch for the extended set.
    pub fn add_seed(&mut self, g: &DirectedGraph, v: usize) {
        if self.d[v] > 0.0 {
            self.d[v] = 0.0;
            relax_from(g, &mut self.d, [v]);
        }
        self.seeds = self.seeds.with_node(v);
        for (i, &d) in self.d.iter().enumerate() {
            self.pi[i] = if self.seeds.contains(i) {
                1.0
            } else {
                (1.0 - d).max(0.0)
            };
        }
        self.sum_pi = self.pi.iter().sum();
    }
}

#[derive(Debug, Clone, Copy)]
struct HeapEntry {
    dist: f64,
    node: usize,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.dist == other.dist && self.node == other.node
    }
}
impl Eq for HeapEntry {}
impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // reversed for a min-heap; distances are never NaN
        other
            .dist
            .partial_cmp(&self.dist)
            .unwrap()
            .then_with(|| other.node.cmp(&self.node))
    }
}
impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Label-setting relaxation from `sources` (whose `d` must already be set),
/// pruning expansion once a node's distance reaches 1: its likelihood clips
/// to 0 and nonnegative weights keep it irrelevant for any closer node.
fn relax_from(g: &DirectedGraph, d: &mut [f64], sources: impl IntoIterator<Item = usize>) {
    let mut heap = BinaryHeap::new();
    for v in sources {
        heap.push(HeapEntry { dist: d[v], node: v });
    }
    while let Some(HeapEntry { dist, node }) = heap.pop() {
        if dist > d[node] {
            continue; // stale entry
        }
        if dist >= 1.0 {
            continue;
        }
        for &(next, eidx) in g.out_edges(node) {
            let nd = dist + (1.0 - g.edges()[eidx].p);
            if nd < d[next] {
                d[next] = nd;
                heap.push(HeapEntry {
                    dist: nd,
                    node: next,
                });
            }
        }
    }
}

/// Robust distances and likelihoods of every node for seed set `s`.
pub fn influence_profile(g: &DirectedGraph, s: &SeedSet) -> InfluenceProfile {
    let n = g.node_count();
    let mut d = vec![f64::INFINITY; n];
    for &v in s.ids() {
        d[v] = 0.0;
    }
    relax_from(g, &mut d, s.ids().iter().copied());
    let pi: Vec<f64> = d
        .iter()
        .enumerate()
        .map(|(i, &di)| if s.contains(i) { 1.0 } else { (1.0 - di).max(0.0) })
        .collect();
    let sum_pi = pi.iter().sum();
    InfluenceProfile {
        seeds: s.clone(),
        d,
        pi,
        sum_pi,
    }
}

/// Worst-case expected influence of seed set `s`.
pub fn f_corr(g: &DirectedGraph, s: &SeedSet) -> f64 {
    influence_profile(g, s).total()
}

/// Gain of adding `v` to the profile's seed set, computed incrementally.
/// Equals `f_corr(S + v) - f_corr(S)` exactly, bit for bit.
pub fn marginal_gain_corr(g: &DirectedGraph, base: &InfluenceProfile, v: usize) -> Result<f64> {
    if base.seeds.contains(v) {
        return Err(Error::domain(format!("node {v} is already a seed")));
    }
    let mut updated = base.clone();
    updated.add_seed(g, v);
    Ok(updated.sum_pi - base.sum_pi)
}

/// One violated constraint of the robust-influence linear program.
#[derive(Debug, Clone, PartialEq)]
pub enum LpViolation {
    /// pi of a seed differs from 1.
    SeedLikelihood { node: usize, pi: f64 },
    /// pi outside [0, 1].
    Range { node: usize, pi: f64 },
    /// pi_i - pi_j > 1 - p_ij on an edge (i, j).
    EdgeSlack {
        src: usize,
        dst: usize,
        excess: f64,
    },
}

/// Checks the profile against the LP constraints: seeds pinned to 1,
/// 0 <= pi <= 1, and pi_i - pi_j <= 1 - p_ij on every edge, all within
/// `tol`. Violations come back as data; an empty list means feasible.
pub fn verify_lp_feasibility(
    g: &DirectedGraph,
    profile: &InfluenceProfile,
    tol: f64,
) -> Vec<LpViolation> {
    let pi = &profile.pi;
    let mut violations = Vec::new();
    for &v in profile.seeds.ids() {
        if (pi[v] - 1.0).abs() > tol {
            violations.push(LpViolation::SeedLikelihood { node: v, pi: pi[v] });
        }
    }
    for (i, &p) in pi.iter().enumerate() {
        if p < -tol || p > 1.0 + tol {
            violations.push(LpViolation::Range { node: i, pi: p });
        }
    }
    for e in g.edges() {
        let excess = (pi[e.src] - pi[e.dst]) - (1.0 - e.p);
        if excess > tol {
            violations.push(LpViolation::EdgeSlack {
                src: e.src,
                dst: e.dst,
                excess,
            });
        }
    }
    violations
}

/// All optimal (distance-achieving) seed-to-target paths for one node.
#[derive(Debug, Clone)]
pub struct PathSet {
    pub target: usize,
    /// Best path objective 1 - d_target; negative or -inf when the target
    /// is beyond reach of any positive-likelihood path.
    pub value: f64,
    /// Node sequences from a seed to the target, in discovery order.
    pub paths: Vec<Vec<usize>>,
    /// Set when enumeration stopped at the cap.
    pub truncated: bool,
}

/// Enumerates every path achieving the robust distance of `target` by
/// backward traversal over tight edges, stopping after `cap` paths.
pub fn best_paths(
    g: &DirectedGraph,
    s: &SeedSet,
    target: usize,
    cap: usize,
) -> Result<PathSet> {
    let profile = influence_profile(g, s);
    best_paths_from_profile(g, &profile, target, cap)
}

/// As [`best_paths`], reusing an already-computed profile.
pub fn best_paths_from_profile(
    g: &DirectedGraph,
    profile: &InfluenceProfile,
    target: usize,
    cap: usize,
) -> Result<PathSet> {
    if profile.seeds.contains(target) {
        return Err(Error::domain(format!("target {target} is a seed")));
    }
    let d = &profile.d;
    let value = 1.0 - d[target];
    if profile.pi[target] <= 0.0 {
        return Ok(PathSet {
            target,
            value,
            paths: Vec::new(),
            truncated: false,
        });
    }

    // Depth-first backward walk over tight edges. Every maximal tight chain
    // from the target back to a seed is a distance-achieving path.
    let mut paths = Vec::new();
    let mut truncated = false;
    let mut stack_path = vec![target];
    let mut on_path = vec![false; g.node_count()];
    on_path[target] = true;
    backward_dfs(
        g,
        profile,
        target,
        cap,
        &mut stack_path,
        &mut on_path,
        &mut paths,
        &mut truncated,
    );
    Ok(PathSet {
        target,
        value,
        paths,
        truncated,
    })
}

#[allow(clippy::too_many_arguments)]
fn backward_dfs(
    g: &DirectedGraph,
    profile: &InfluenceProfile,
    node: usize,
    cap: usize,
    stack_path: &mut Vec<usize>,
    on_path: &mut [bool],
    paths: &mut Vec<Vec<usize>>,
    truncated: &mut bool,
) {
    if *truncated {
        return;
    }
    if profile.seeds.contains(node) {
        if paths.len() == cap {
            *truncated = true;
            return;
        }
        paths.push(stack_path.iter().rev().copied().collect());
        return;
    }
    let d = &profile.d;
    for &(pred, eidx) in g.in_edges(node) {
        if on_path[pred] {
            continue;
        }
        let w = 1.0 - g.edges()[eidx].p;
        if (d[node] - (d[pred] + w)).abs() <= TIGHT_EDGE_TOL {
            stack_path.push(pred);
            on_path[pred] = true;
            backward_dfs(g, profile, pred, cap, stack_path, on_path, paths, truncated);
            stack_path.pop();
            on_path[pred] = false;
            if *truncated {
                return;
            }
        }
    }
}

/// Profile CSV: `node_id,d,pi` with original dataset ids.
pub fn write_profile_csv(
    g: &DirectedGraph,
    profile: &InfluenceProfile,
    mut out: impl Write,
) -> Result<()> {
    writeln!(out, "node_id,d,pi")?;
    for i in 0..profile.node_count() {
        writeln!(
            out,
            "{},{},{}",
            g.original_id(i),
            profile.d[i],
            profile.pi[i]
        )?;
    }
    Ok(())
}
