//! The worst-case coupling of edge activations.
//!
//! A single uniform draw `q` pins down an entire edge realization: an edge
//! (k, j) is live iff
//!
//! - `pi_k > pi_j` and `q` lies outside the closed interval
//!   `[pi_k - 1 + p_kj, pi_k]`, or
//! - `pi_k <= pi_j` and `q` is in `(0, p_kj]`,
//!
//! and the influenced set is `{i : q < pi_i}`. Because edge and node states
//! only change at finitely many critical values of `q`, expectations over
//! the coupling integrate exactly over the cells between breakpoints.

use std::io::Write;

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::ic::{reachable_set, IcEstimate, LiveEdgeSample};
use crate::rng::{stream_rng, StreamPurpose};
use crate::robust::{InfluenceProfile, PathSet};

/// Cells narrower than this merge into a neighbor; open-cell midpoints then
/// stay safely away from the breakpoints themselves.
pub const MIN_CELL_WIDTH: f64 = 1e-15;

/// The edge realization and influenced set induced by one draw of `q`.
#[derive(Debug, Clone)]
pub struct CouplingDraw {
    pub q: f64,
    pub live: LiveEdgeSample,
    /// Nodes with `q < pi_i`, ascending.
    pub active: Vec<usize>,
}

/// Evaluates the coupling at a fixed `q` in [0, 1].
pub fn draw_coupling(
    g: &DirectedGraph,
    prof: &InfluenceProfile,
    q: f64,
) -> Result<CouplingDraw> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::domain(format!("q = {q} outside [0, 1]")));
    }
    let pi = prof.likelihoods();
    let mut live = LiveEdgeSample::zeros(g.edge_count());
    for (idx, e) in g.edges().iter().enumerate() {
        let (pk, pj) = (pi[e.src], pi[e.dst]);
        let is_live = if pk > pj {
            !(q >= pk - 1.0 + e.p && q <= pk)
        } else {
            q > 0.0 && q <= e.p
        };
        if is_live {
            live.set_live(idx);
        }
    }
    let active = (0..g.node_count()).filter(|&i| q < pi[i]).collect();
    Ok(CouplingDraw { q, live, active })
}

/// Sorted critical values of `q` in [0, 1], always starting at 0 and ending
/// at 1. Edge and node states are constant on each open cell in between.
#[derive(Debug, Clone)]
pub struct BreakpointPartition {
    points: Vec<f64>,
}

impl BreakpointPartition {
    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn cell_count(&self) -> usize {
        self.points.len() - 1
    }

    /// (lo, hi) pairs of consecutive breakpoints.
    pub fn cells(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.points.windows(2).map(|w| (w[0], w[1]))
    }
}

/// Collects every value of `q` at which some edge or node can change state:
/// all likelihoods, the removal-interval endpoints of steeper edges, and the
/// raw probabilities of the rest, clipped to [0, 1].
pub fn breakpoints(g: &DirectedGraph, prof: &InfluenceProfile) -> BreakpointPartition {
    let pi = prof.likelihoods();
    let mut raw: Vec<f64> = Vec::with_capacity(pi.len() + 2 * g.edge_count() + 2);
    raw.extend_from_slice(pi);
    for e in g.edges() {
        let (pk, pj) = (pi[e.src], pi[e.dst]);
        if pk > pj {
            raw.push(pk - 1.0 + e.p);
            raw.push(pk);
        } else {
            raw.push(e.p);
        }
    }
    raw.retain(|x| (0.0..=1.0).contains(x));
    raw.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let mut points = vec![0.0];
    for x in raw {
        if x - points.last().unwrap() >= MIN_CELL_WIDTH {
            points.push(x);
        }
    }
    let last = *points.last().unwrap();
    if last < 1.0 {
        if 1.0 - last < MIN_CELL_WIDTH {
            *points.last_mut().unwrap() = 1.0;
        } else {
            points.push(1.0);
        }
    }
    BreakpointPartition { points }
}

/// Expected influenced count under the coupling, integrated exactly:
/// the sum over cells of cell length times the influenced count at the cell
/// midpoint. Matches the worst-case expected influence to within rounding.
pub fn exact_expected_influence(g: &DirectedGraph, prof: &InfluenceProfile) -> f64 {
    let pi = prof.likelihoods();
    breakpoints(g, prof)
        .cells()
        .map(|(lo, hi)| {
            let mid = 0.5 * (lo + hi);
            let count = pi.iter().filter(|&&x| mid < x).count();
            (hi - lo) * count as f64
        })
        .sum()
}

/// Lebesgue measure of `{q : edge is live}`, evaluated from the interval
/// rules. Equals `p` exactly unless the removal interval of a steeper edge
/// clips at 0, in which case the measure is `1 - pi_k` (a diagnostic that
/// the stated construction over-serves such edges).
pub fn edge_marginal(g: &DirectedGraph, prof: &InfluenceProfile, edge: usize) -> f64 {
    let e = &g.edges()[edge];
    let pi = prof.likelihoods();
    let (pk, pj) = (pi[e.src], pi[e.dst]);
    if pk > pj {
        let lo = pk - 1.0 + e.p;
        if lo >= 0.0 {
            e.p
        } else {
            1.0 - pk
        }
    } else {
        e.p
    }
}

/// One cell on which the influenced set differed from live-edge
/// reachability.
#[derive(Debug, Clone)]
pub struct ReachabilityViolation {
    pub cell: (f64, f64),
    pub q: f64,
    /// Active per `q < pi` but not reachable along live edges.
    pub only_active: Vec<usize>,
    /// Reachable along live edges but not active.
    pub only_reachable: Vec<usize>,
}

/// Outcome of checking `{i : q < pi_i} =` live-edge reachability per cell.
#[derive(Debug, Clone)]
pub struct ReachabilityReport {
    pub cells_checked: usize,
    pub violations: Vec<ReachabilityViolation>,
}

impl ReachabilityReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first_violation(&self) -> Option<&ReachabilityViolation> {
        self.violations.first()
    }
}

/// Verifies on every cell midpoint that the influenced set equals the set of
/// nodes reachable from the seeds along live edges.
pub fn check_reachability_identity(
    g: &DirectedGraph,
    prof: &InfluenceProfile,
) -> ReachabilityReport {
    let mut report = ReachabilityReport {
        cells_checked: 0,
        violations: Vec::new(),
    };
    for (lo, hi) in breakpoints(g, prof).cells() {
        report.cells_checked += 1;
        let q = 0.5 * (lo + hi);
        let draw = draw_coupling(g, prof, q).expect("midpoint in [0,1]");
        let reached = reachable_set(g, &draw.live, prof.seeds());
        let mut active = vec![false; g.node_count()];
        for &v in &draw.active {
            active[v] = true;
        }
        if active != reached {
            let only_active = (0..g.node_count())
                .filter(|&i| active[i] && !reached[i])
                .collect();
            let only_reachable = (0..g.node_count())
                .filter(|&i| reached[i] && !active[i])
                .collect();
            report.violations.push(ReachabilityViolation {
                cell: (lo, hi),
                q,
                only_active,
                only_reachable,
            });
        }
    }
    report
}

/// Verifies the path-existence structure for a target's best paths: on each
/// cell, all of them are simultaneously present iff `q < pi_target`, and no
/// single path is ever missing more than one arc.
pub fn check_path_dominance(
    g: &DirectedGraph,
    prof: &InfluenceProfile,
    paths: &PathSet,
) -> bool {
    let pi_target = prof.likelihoods()[paths.target];
    if pi_target <= 0.0 || paths.paths.is_empty() {
        return false;
    }
    let arc_lists: Vec<Vec<usize>> = paths
        .paths
        .iter()
        .map(|path| {
            path.windows(2)
                .map(|w| edge_index(g, w[0], w[1]).expect("path follows graph edges"))
                .collect()
        })
        .collect();
    for (lo, hi) in breakpoints(g, prof).cells() {
        let q = 0.5 * (lo + hi);
        let draw = draw_coupling(g, prof, q).expect("midpoint in [0,1]");
        let mut all_present = true;
        for arcs in &arc_lists {
            let missing = arcs.iter().filter(|&&e| !draw.live.is_live(e)).count();
            if missing > 1 {
                return false;
            }
            if missing > 0 {
                all_present = false;
            }
        }
        if all_present != (q < pi_target) {
            return false;
        }
    }
    true
}

fn edge_index(g: &DirectedGraph, src: usize, dst: usize) -> Option<usize> {
    g.out_edges(src)
        .iter()
        .find(|&&(next, _)| next == dst)
        .map(|&(_, eidx)| eidx)
}

/// Monte Carlo estimate of the expected influenced count by sampling `q`;
/// exists for demonstration and convergence testing only — use
/// [`exact_expected_influence`] for real work.
pub fn mc_expected_influence(
    prof: &InfluenceProfile,
    draws: usize,
    seed: u64,
) -> Result<IcEstimate> {
    use rand::Rng;
    if draws == 0 {
        return Err(Error::domain("need at least 1 draw"));
    }
    let pi = prof.likelihoods();
    let counts: Vec<u64> = (0..draws)
        .map(|i| {
            let mut rng = stream_rng(seed, StreamPurpose::CascadeSample, i as u64);
            let q: f64 = rng.gen();
            pi.iter().filter(|&&x| q < x).count() as u64
        })
        .collect();
    Ok(crate::ic::estimate_from_counts(&counts))
}

/// Cell report CSV: `q_lo,q_hi,active_count,live_edge_count` per cell.
pub fn write_cell_report_csv(
    g: &DirectedGraph,
    prof: &InfluenceProfile,
    mut out: impl Write,
) -> Result<()> {
    writeln!(out, "q_lo,q_hi,active_count,live_edge_count")?;
    for (lo, hi) in breakpoints(g, prof).cells() {
        let draw = draw_coupling(g, prof, 0.5 * (lo + hi))?;
        writeln!(
            out,
            "{},{},{},{}",
            lo,
            hi,
            draw.active.len(),
            draw.live.live_count()
        )?;
    }
    Ok(())
}

/// Single-draw CSV: the value of q, the live edges, then the active nodes,
/// all in original ids.
pub fn write_coupling_draw_csv(
    g: &DirectedGraph,
    draw: &CouplingDraw,
    mut out: impl Write,
) -> Result<()> {
    writeln!(out, "q,{}", draw.q)?;
    let live: Vec<String> = draw
        .live
        .live_indices()
        .map(|idx| {
            let e = &g.edges()[idx];
            format!("{}:{}", g.original_id(e.src), g.original_id(e.dst))
        })
        .collect();
    writeln!(out, "live_edges,{}", live.join(";"))?;
    let active: Vec<String> = draw
        .active
        .iter()
        .map(|&v| g.original_id(v).to_string())
        .collect();
    writeln!(out, "active_nodes,{}", active.join(";"))?;
    Ok(())
}

/// Per-edge marginal CSV with the discrepancy column `marginal - p`.
pub fn write_edge_marginals_csv(
    g: &DirectedGraph,
    prof: &InfluenceProfile,
    mut out: impl Write,
) -> Result<()> {
    writeln!(out, "src,dst,p,marginal,discrepancy")?;
    for (idx, e) in g.edges().iter().enumerate() {
        let marginal = edge_marginal(g, prof, idx);
        writeln!(
            out,
            "{},{},{},{},{}",
            g.original_id(e.src),
            g.original_id(e.dst),
            e.p,
            marginal,
            marginal - e.p
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Edge, SeedSet};
    use crate::robust::{best_paths, influence_profile, DEFAULT_PATH_CAP};

    fn graph(n: usize, edges: &[(usize, usize, f64)]) -> DirectedGraph {
        let edges = edges
            .iter()
            .map(|&(src, dst, p)| Edge { src, dst, p })
            .collect();
        DirectedGraph::from_parts(n, edges, None).unwrap()
    }

    fn seeds(ids: &[usize], n: usize) -> SeedSet {
        SeedSet::new(ids.to_vec(), n).unwrap()
    }

    fn chain075() -> (DirectedGraph, InfluenceProfile) {
        let g = graph(3, &[(0, 1, 0.75), (1, 2, 0.75)]);
        let prof = influence_profile(&g, &seeds(&[0], 3));
        (g, prof)
    }

    #[test]
    fn draw_single_edge() {
        let g = graph(2, &[(0, 1, 0.1)]);
        let prof = influence_profile(&g, &seeds(&[0], 2));
        let draw = draw_coupling(&g, &prof, 0.05).unwrap();
        assert!(draw.live.is_live(0));
        assert_eq!(draw.active, vec![0, 1]);
    }

    #[test]
    fn draw_chain_midrange() {
        let (g, prof) = chain075();
        let draw = draw_coupling(&g, &prof, 0.6).unwrap();
        assert!(draw.live.is_live(0));
        assert!(!draw.live.is_live(1)); // q inside [0.5, 0.75]
        assert_eq!(draw.active, vec![0, 1]);
    }

    #[test]
    fn draw_high_q_leaves_only_seeds() {
        let (g, prof) = chain075();
        let draw = draw_coupling(&g, &prof, 0.999).unwrap();
        assert_eq!(draw.active, vec![0]);
        assert!(draw_coupling(&g, &prof, 1.2).is_err());
    }

    #[test]
    fn breakpoints_examples() {
        let g = graph(2, &[(0, 1, 0.1)]);
        let prof = influence_profile(&g, &seeds(&[0], 2));
        let pts = breakpoints(&g, &prof);
        assert_eq!(pts.points().len(), 3);
        for (got, want) in pts.points().iter().zip(&[0.0, 0.1, 1.0]) {
            assert!((got - want).abs() <= 1e-12);
        }

        let empty = graph(2, &[]);
        let prof = influence_profile(&empty, &seeds(&[0], 2));
        assert_eq!(breakpoints(&empty, &prof).points(), &[0.0, 1.0]);

        let (g, prof) = chain075();
        assert_eq!(breakpoints(&g, &prof).points(), &[0.0, 0.5, 0.75, 1.0]);
    }

    #[test]
    fn exact_expectation_examples() {
        let (g, prof) = chain075();
        assert_eq!(exact_expected_influence(&g, &prof), 2.25);

        let g = graph(3, &[(0, 1, 0.4), (1, 2, 0.9)]);
        let s = seeds(&[0, 1, 2], 3);
        let prof = influence_profile(&g, &s);
        assert_eq!(exact_expected_influence(&g, &prof), 3.0);

        let p = 1.0 - 1.0 / 3.0;
        let series = graph(3, &[(0, 1, p), (1, 2, p)]);
        let prof = influence_profile(&series, &seeds(&[0], 3));
        assert!((exact_expected_influence(&series, &prof) - 2.0).abs() <= 1e-12);
    }

    #[test]
    fn expectation_matches_f_corr_on_random_graphs() {
        use rand::Rng;
        let mut rng = stream_rng(31, StreamPurpose::InstanceGen, 2);
        for _ in 0..50 {
            let n = rng.gen_range(2..9);
            let mut edges = Vec::new();
            for a in 0..n {
                for b in 0..n {
                    if a != b && rng.gen_bool(0.35) {
                        edges.push((a, b, rng.gen::<f64>()));
                    }
                }
            }
            let g = graph(n, &edges);
            let s = seeds(&[0], n);
            let prof = influence_profile(&g, &s);
            let diff = (exact_expected_influence(&g, &prof) - prof.total()).abs();
            assert!(diff <= 1e-9, "gap {diff}");
        }
    }

    #[test]
    fn marginal_cases() {
        // pi_k <= pi_j: exactly p
        let g = graph(3, &[(0, 1, 0.3), (0, 2, 0.3), (1, 2, 0.5)]);
        let prof = influence_profile(&g, &seeds(&[0], 3));
        let pi = prof.likelihoods();
        assert!(pi[1] <= pi[2] || pi[1] > pi[2]); // both cases covered below
        for idx in 0..g.edge_count() {
            let e = &g.edges()[idx];
            if pi[e.src] <= pi[e.dst] {
                assert_eq!(edge_marginal(&g, &prof, idx), e.p);
            }
        }

        // unclipped steeper edge: exactly p
        let (g, prof) = chain075();
        assert_eq!(edge_marginal(&g, &prof, 0), 0.75);
        assert_eq!(edge_marginal(&g, &prof, 1), 0.75);

        // clipped case: s -> k with p = 0.1, then k -> j with p = 0.5
        let g = graph(3, &[(0, 1, 0.1), (1, 2, 0.5)]);
        let prof = influence_profile(&g, &seeds(&[0], 3));
        let m = edge_marginal(&g, &prof, 1);
        assert!((m - 0.9).abs() <= 1e-12);
        assert!(m != 0.5);
    }

    #[test]
    fn reachability_identity_on_chain_and_certain_edges() {
        let (g, prof) = chain075();
        let report = check_reachability_identity(&g, &prof);
        assert_eq!(report.cells_checked, 3);
        assert!(report.holds());

        let g = graph(3, &[(0, 1, 1.0), (1, 2, 1.0)]);
        let prof = influence_profile(&g, &seeds(&[0], 3));
        assert!(check_reachability_identity(&g, &prof).holds());
    }

    #[test]
    fn reachability_identity_survives_clipping() {
        let g = graph(3, &[(0, 1, 0.1), (1, 2, 0.5)]);
        let prof = influence_profile(&g, &seeds(&[0], 3));
        assert!(check_reachability_identity(&g, &prof).holds());
    }

    #[test]
    fn path_dominance_chain_and_diamond() {
        let (g, prof) = chain075();
        let ps = best_paths(&g, prof.seeds(), 2, DEFAULT_PATH_CAP).unwrap();
        assert!(check_path_dominance(&g, &prof, &ps));

        let g = graph(2, &[(0, 1, 0.4)]);
        let prof = influence_profile(&g, &seeds(&[0], 2));
        let ps = best_paths(&g, prof.seeds(), 1, DEFAULT_PATH_CAP).unwrap();
        assert!(check_path_dominance(&g, &prof, &ps));

        let g = graph(
            4,
            &[(0, 1, 0.75), (0, 2, 0.75), (1, 3, 0.75), (2, 3, 0.75)],
        );
        let prof = influence_profile(&g, &seeds(&[0], 4));
        let ps = best_paths(&g, prof.seeds(), 3, DEFAULT_PATH_CAP).unwrap();
        assert_eq!(ps.paths.len(), 2);
        assert!(check_path_dominance(&g, &prof, &ps));
    }

    #[test]
    fn active_sets_shrink_as_q_grows() {
        use rand::Rng;
        let mut rng = stream_rng(41, StreamPurpose::InstanceGen, 6);
        let mut edges = Vec::new();
        for a in 0..7usize {
            for b in 0..7 {
                if a != b && rng.gen_bool(0.4) {
                    edges.push((a, b, rng.gen::<f64>()));
                }
            }
        }
        let g = graph(7, &edges);
        let prof = influence_profile(&g, &seeds(&[0, 3], 7));
        let mut prev: Option<Vec<usize>> = None;
        for step in 0..=10 {
            let q = step as f64 / 10.0;
            let active = draw_coupling(&g, &prof, q).unwrap().active;
            if let Some(prev) = &prev {
                assert!(active.iter().all(|v| prev.contains(v)), "not nested at q={q}");
            }
            prev = Some(active);
        }
    }

    #[test]
    fn mc_over_q_converges() {
        let (g, prof) = chain075();
        let est = mc_expected_influence(&prof, 100_000, 13).unwrap();
        let exact = exact_expected_influence(&g, &prof);
        assert!(
            (est.mean - exact).abs() <= 3.0 * est.stderr,
            "mean {} exact {} se {}",
            est.mean,
            exact,
            est.stderr
        );
    }
}
