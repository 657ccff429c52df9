//! Directed graphs with per-edge activation probabilities.
//!
//! Covers dataset ingestion (SNAP-style edge lists, optionally reversed),
//! the probability models used in the experiments, CSV round-tripping, and
//! structural statistics of seed sets. Graphs are immutable once built and
//! safe to share across threads.

use std::collections::{HashMap, HashSet, VecDeque};
use std::io::{BufRead, Write};

use rand::Rng;

use crate::error::{Error, Result};
use crate::rng::{stream_rng, StreamPurpose};

/// One directed edge with its activation probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub p: f64,
}

/// How duplicate (src, dst) pairs in raw input are resolved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DedupPolicy {
    /// Keep the first occurrence, drop the rest.
    #[default]
    KeepFirst,
    /// Treat a duplicate as malformed input.
    Reject,
}

/// Which degree the weighted-cascade model divides by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DegreeConvention {
    /// p_ij = 1 / (in-degree + out-degree of the source i).
    #[default]
    SourceTotalDegree,
    /// p_ij = 1 / in-degree of the target j (the classical cascade choice).
    TargetInDegree,
}

/// Edge-probability assignment models.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProbabilityModel {
    /// Every edge gets the same probability.
    Identical(f64),
    /// Each p_ij drawn i.i.d. from Unif(0,1).
    Uniform01,
    /// Each p_ij drawn uniformly from {0.1, 0.01, 0.001}.
    Trivalency,
    /// p_ij = 1/deg under the chosen degree convention.
    WeightedCascade(DegreeConvention),
}

impl ProbabilityModel {
    pub fn label(&self) -> String {
        match self {
            ProbabilityModel::Identical(p) => format!("identical:{p}"),
            ProbabilityModel::Uniform01 => "unif01".to_string(),
            ProbabilityModel::Trivalency => "trivalency".to_string(),
            ProbabilityModel::WeightedCascade(DegreeConvention::SourceTotalDegree) => {
                "wcascade:source-total".to_string()
            }
            ProbabilityModel::WeightedCascade(DegreeConvention::TargetInDegree) => {
                "wcascade:target-in".to_string()
            }
        }
    }
}

/// Immutable directed graph over dense node ids `0..node_count`.
///
/// Original dataset ids are retained so user-facing output never leaks the
/// dense internal numbering.
#[derive(Debug, Clone)]
pub struct DirectedGraph {
    node_count: usize,
    edges: Vec<Edge>,
    /// node -> [(successor, edge index)]
    out_adj: Vec<Vec<(usize, usize)>>,
    /// node -> [(predecessor, edge index)]
    in_adj: Vec<Vec<(usize, usize)>>,
    /// dense id -> original dataset id
    original_ids: Vec<u64>,
    /// original dataset id -> dense id
    id_index: HashMap<u64, usize>,
}

impl DirectedGraph {
    /// Builds a graph from already-normalized parts: dense ids, no
    /// duplicate (src, dst) pairs, no self-loops, probabilities in [0,1].
    pub fn from_parts(
        node_count: usize,
        edges: Vec<Edge>,
        original_ids: Option<Vec<u64>>,
    ) -> Result<Self> {
        let original_ids =
            original_ids.unwrap_or_else(|| (0..node_count as u64).collect::<Vec<_>>());
        if original_ids.len() != node_count {
            return Err(Error::domain("original id table length != node count"));
        }
        let mut seen = HashSet::with_capacity(edges.len());
        for e in &edges {
            if e.src >= node_count || e.dst >= node_count {
                return Err(Error::domain(format!(
                    "edge ({}, {}) out of range for {} nodes",
                    e.src, e.dst, node_count
                )));
            }
            if e.src == e.dst {
                return Err(Error::domain(format!("self-loop on node {}", e.src)));
            }
            if !(0.0..=1.0).contains(&e.p) {
                return Err(Error::domain(format!(
                    "edge probability {} outside [0,1]",
                    e.p
                )));
            }
            if !seen.insert((e.src, e.dst)) {
                return Err(Error::domain(format!(
                    "duplicate edge ({}, {})",
                    e.src, e.dst
                )));
            }
        }
        let mut out_adj = vec![Vec::new(); node_count];
        let mut in_adj = vec![Vec::new(); node_count];
        for (idx, e) in edges.iter().enumerate() {
            out_adj[e.src].push((e.dst, idx));
            in_adj[e.dst].push((e.src, idx));
        }
        let id_index = original_ids
            .iter()
            .enumerate()
            .map(|(dense, &orig)| (orig, dense))
            .collect();
        Ok(DirectedGraph {
            node_count,
            edges,
            out_adj,
            in_adj,
            original_ids,
            id_index,
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn out_edges(&self, v: usize) -> &[(usize, usize)] {
        &self.out_adj[v]
    }

    pub fn in_edges(&self, v: usize) -> &[(usize, usize)] {
        &self.in_adj[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_adj[v].len()
    }

    /// Total degree: in-degree + out-degree.
    pub fn degree(&self, v: usize) -> usize {
        self.out_adj[v].len() + self.in_adj[v].len()
    }

    pub fn original_id(&self, dense: usize) -> u64 {
        self.original_ids[dense]
    }

    /// Maps original dataset ids back to dense ids, naming any unknown id.
    pub fn resolve_original_ids(&self, ids: &[u64]) -> Result<Vec<usize>> {
        ids.iter()
            .map(|id| {
                self.id_index
                    .get(id)
                    .copied()
                    .ok_or_else(|| Error::domain(format!("unknown node id {id}")))
            })
            .collect()
    }

    /// Merged in/out neighbor lists; used for undirected-projection walks.
    pub fn undirected_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.node_count];
        for e in &self.edges {
            adj[e.src].push(e.dst);
            adj[e.dst].push(e.src);
        }
        adj
    }
}

/// Sorted set of distinct seed nodes, all within the host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedSet {
    ids: Vec<usize>,
}

impl SeedSet {
    pub fn new(mut ids: Vec<usize>, node_count: usize) -> Result<Self> {
        ids.sort_unstable();
        ids.dedup();
        if let Some(&v) = ids.iter().find(|&&v| v >= node_count) {
            return Err(Error::domain(format!(
                "seed {v} out of range for {node_count} nodes"
            )));
        }
        Ok(SeedSet { ids })
    }

    pub fn empty() -> Self {
        SeedSet { ids: Vec::new() }
    }

    pub fn from_original_ids(g: &DirectedGraph, ids: &[u64]) -> Result<Self> {
        SeedSet::new(g.resolve_original_ids(ids)?, g.node_count())
    }

    pub fn ids(&self) -> &[usize] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.ids.binary_search(&v).is_ok()
    }

    /// The set extended with `v`; no-op clone when already present.
    pub fn with_node(&self, v: usize) -> SeedSet {
        if self.contains(v) {
            return self.clone();
        }
        let mut ids = self.ids.clone();
        let pos = ids.partition_point(|&u| u < v);
        ids.insert(pos, v);
        SeedSet { ids }
    }

    /// Original-id rendering for user-facing output.
    pub fn display_original(&self, g: &DirectedGraph) -> String {
        let parts: Vec<String> = self
            .ids
            .iter()
            .map(|&v| g.original_id(v).to_string())
            .collect();
        parts.join(";")
    }
}

/// Degree and diameter summary of a seed set (Table-2 style columns).
#[derive(Debug, Clone, PartialEq)]
pub struct SeedSetStats {
    pub min_degree: usize,
    pub mean_degree: f64,
    pub max_degree: usize,
    /// Undirected hop diameter between seed pairs; `None` when some pair is
    /// unreachable in the undirected projection.
    pub diameter: Option<usize>,
}

/// Parses a whitespace-separated "src dst" edge list.
///
/// Lines starting with '#' are comments. Node ids may be arbitrary
/// nonnegative integers; they are remapped to dense ids `0..n-1` in first-
/// appearance order. Self-loops are dropped and duplicate pairs collapse per
/// `dedup`. With `reverse` every (i, j) is stored as (j, i). Probabilities
/// are left at 0 until [`assign_probabilities`] runs.
pub fn load_edge_list(
    source: impl BufRead,
    reverse: bool,
    dedup: DedupPolicy,
) -> Result<DirectedGraph> {
    let mut original_ids: Vec<u64> = Vec::new();
    let mut id_index: HashMap<u64, usize> = HashMap::new();
    let mut edges: Vec<Edge> = Vec::new();
    let mut seen: HashSet<(usize, usize)> = HashSet::new();

    let mut intern = |orig: u64, original_ids: &mut Vec<u64>| -> usize {
        *id_index.entry(orig).or_insert_with(|| {
            original_ids.push(orig);
            original_ids.len() - 1
        })
    };

    for (lineno, line) in source.lines().enumerate() {
        let line = line?;
        let lineno = lineno + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let parse = |tok: Option<&str>, lineno: usize| -> Result<u64> {
            let tok = tok.ok_or(Error::Parse {
                line: lineno,
                message: "expected two integer tokens".to_string(),
            })?;
            tok.parse::<u64>().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("non-integer token {tok:?}"),
            })
        };
        let src_orig = parse(tokens.next(), lineno)?;
        let dst_orig = parse(tokens.next(), lineno)?;
        if tokens.next().is_some() {
            return Err(Error::Parse {
                line: lineno,
                message: "expected exactly two tokens per line".to_string(),
            });
        }
        let mut src = intern(src_orig, &mut original_ids);
        let mut dst = intern(dst_orig, &mut original_ids);
        if src == dst {
            continue; // self-loops never change reachability
        }
        if reverse {
            std::mem::swap(&mut src, &mut dst);
        }
        if !seen.insert((src, dst)) {
            match dedup {
                DedupPolicy::KeepFirst => continue,
                DedupPolicy::Reject => {
                    return Err(Error::Parse {
                        line: lineno,
                        message: format!("duplicate edge ({src_orig}, {dst_orig})"),
                    })
                }
            }
        }
        edges.push(Edge { src, dst, p: 0.0 });
    }

    DirectedGraph::from_parts(original_ids.len(), edges, Some(original_ids))
}

/// Convenience wrapper over [`load_edge_list`] for a filesystem path.
pub fn load_edge_list_path(
    path: impl AsRef<std::path::Path>,
    reverse: bool,
    dedup: DedupPolicy,
) -> Result<DirectedGraph> {
    let file = std::fs::File::open(path)?;
    load_edge_list(std::io::BufReader::new(file), reverse, dedup)
}

/// Assigns edge probabilities per the model, leaving structure untouched.
///
/// Random variants draw edge `i` from RNG stream `(seed, i)`, so the result
/// is bit-identical across runs and independent of evaluation order.
pub fn assign_probabilities(
    g: &DirectedGraph,
    model: ProbabilityModel,
    seed: u64,
) -> Result<DirectedGraph> {
    const TRIVALENCY_LEVELS: [f64; 3] = [0.1, 0.01, 0.001];
    let mut edges = g.edges.clone();
    match model {
        ProbabilityModel::Identical(p) => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::domain(format!("identical({p}) outside [0,1]")));
            }
            for e in &mut edges {
                e.p = p;
            }
        }
        ProbabilityModel::Uniform01 => {
            for (idx, e) in edges.iter_mut().enumerate() {
                let mut rng = stream_rng(seed, StreamPurpose::EdgeProbability, idx as u64);
                e.p = rng.gen::<f64>();
            }
        }
        ProbabilityModel::Trivalency => {
            for (idx, e) in edges.iter_mut().enumerate() {
                let mut rng = stream_rng(seed, StreamPurpose::EdgeProbability, idx as u64);
                e.p = TRIVALENCY_LEVELS[rng.gen_range(0..3)];
            }
        }
        ProbabilityModel::WeightedCascade(conv) => {
            for e in &mut edges {
                let deg = match conv {
                    DegreeConvention::SourceTotalDegree => g.degree(e.src),
                    DegreeConvention::TargetInDegree => g.in_degree(e.dst),
                };
                // deg >= 1: the edge itself is incident to both endpoints
                e.p = 1.0 / deg as f64;
            }
        }
    }
    DirectedGraph::from_parts(g.node_count, edges, Some(g.original_ids.clone()))
}

/// Degree and diameter statistics of a nonempty seed set.
///
/// Degrees are in+out degree in `g`; the diameter is the maximum undirected
/// hop distance over seed pairs in the whole graph's undirected projection.
pub fn seed_set_stats(g: &DirectedGraph, s: &SeedSet) -> Result<SeedSetStats> {
    if s.is_empty() {
        return Err(Error::domain("seed set statistics need a nonempty set"));
    }
    let degrees: Vec<usize> = s.ids().iter().map(|&v| g.degree(v)).collect();
    let min_degree = *degrees.iter().min().unwrap();
    let max_degree = *degrees.iter().max().unwrap();
    let mean_degree = degrees.iter().sum::<usize>() as f64 / degrees.len() as f64;

    let adj = g.undirected_adjacency();
    let mut diameter = Some(0usize);
    for &src in s.ids() {
        let dist = bfs_hops(&adj, src);
        for &dst in s.ids() {
            match (dist[dst], &mut diameter) {
                (Some(h), Some(d)) => *d = (*d).max(h),
                (None, _) => diameter = None,
                _ => {}
            }
        }
        if diameter.is_none() {
            break;
        }
    }
    Ok(SeedSetStats {
        min_degree,
        mean_degree,
        max_degree,
        diameter,
    })
}

fn bfs_hops(adj: &[Vec<usize>], src: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    dist[src] = Some(0);
    let mut queue = VecDeque::new();
    queue.push_back(src);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for &v in &adj[u] {
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Writes the graph as CSV `src,dst,p` with original ids and
/// 17-significant-digit probabilities, preceded by a `# nodes=` comment so
/// isolated nodes survive a round trip.
pub fn write_graph_csv(g: &DirectedGraph, mut out: impl Write) -> Result<()> {
    writeln!(out, "# nodes={}", g.node_count)?;
    writeln!(out, "src,dst,p")?;
    for e in &g.edges {
        writeln!(
            out,
            "{},{},{:.16e}",
            g.original_ids[e.src], g.original_ids[e.dst], e.p
        )?;
    }
    Ok(())
}

/// Reads the CSV produced by [`write_graph_csv`].
///
/// Ids are remapped by first appearance, as in [`load_edge_list`]. When the
/// file declares `# nodes=` and all ids already lie in `0..n`, ids are taken
/// as dense so isolated nodes are preserved.
pub fn read_graph_csv(source: impl BufRead) -> Result<DirectedGraph> {
    let mut declared_nodes: Option<usize> = None;
    let mut rows: Vec<(u64, u64, f64)> = Vec::new();
    let mut header_seen = false;
    for (lineno, line) in source.lines().enumerate() {
        let line = line?;
        let lineno = lineno + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('#') {
            if let Some(n) = rest.trim().strip_prefix("nodes=") {
                declared_nodes = n.trim().parse::<usize>().ok();
            }
            continue;
        }
        if !header_seen {
            header_seen = true;
            if trimmed == "src,dst,p" {
                continue;
            }
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected header 'src,dst,p', got {trimmed:?}"),
            });
        }
        let mut fields = trimmed.split(',');
        let mut next = |what: &str| {
            fields.next().ok_or(Error::Parse {
                line: lineno,
                message: format!("missing {what} field"),
            })
        };
        let src: u64 = next("src")?.trim().parse().map_err(|_| Error::Parse {
            line: lineno,
            message: "non-integer src".to_string(),
        })?;
        let dst: u64 = next("dst")?.trim().parse().map_err(|_| Error::Parse {
            line: lineno,
            message: "non-integer dst".to_string(),
        })?;
        let p: f64 = next("p")?.trim().parse().map_err(|_| Error::Parse {
            line: lineno,
            message: "malformed probability".to_string(),
        })?;
        rows.push((src, dst, p));
    }

    let dense_ok = declared_nodes.is_some_and(|n| {
        rows.iter()
            .all(|&(s, d, _)| (s as usize) < n && (d as usize) < n)
    });
    if dense_ok {
        let n = declared_nodes.unwrap();
        let edges = rows
            .into_iter()
            .map(|(s, d, p)| Edge {
                src: s as usize,
                dst: d as usize,
                p,
            })
            .collect();
        return DirectedGraph::from_parts(n, edges, None);
    }

    let mut original_ids: Vec<u64> = Vec::new();
    let mut id_index: HashMap<u64, usize> = HashMap::new();
    let mut intern = |orig: u64, original_ids: &mut Vec<u64>| -> usize {
        *id_index.entry(orig).or_insert_with(|| {
            original_ids.push(orig);
            original_ids.len() - 1
        })
    };
    let edges = rows
        .into_iter()
        .map(|(s, d, p)| Edge {
            src: intern(s, &mut original_ids),
            dst: intern(d, &mut original_ids),
            p,
        })
        .collect();
    DirectedGraph::from_parts(original_ids.len(), edges, Some(original_ids))
}

/// Writes the structure back out as a SNAP-style edge list, dense ids.
pub fn write_edge_list(g: &DirectedGraph, mut out: impl Write) -> Result<()> {
    for e in &g.edges {
        writeln!(out, "{} {}", e.src, e.dst)?;
    }
    Ok(())
}

/// Seeded synthetic digraph with exactly `n` nodes and `m` distinct non-loop
/// edges: a ring covering every node plus uniformly sampled extra pairs.
/// Probabilities start at 0 (assign a model afterwards).
pub fn gen_random_graph(n: usize, m: usize, seed: u64) -> Result<DirectedGraph> {
    if n < 2 {
        return Err(Error::domain("random graph needs at least 2 nodes"));
    }
    let max_edges = n * (n - 1);
    if m < n || m > max_edges {
        return Err(Error::domain(format!(
            "edge count {m} outside [{n}, {max_edges}] for {n} nodes"
        )));
    }
    let mut edges: Vec<Edge> = Vec::with_capacity(m);
    let mut seen: HashSet<(usize, usize)> = HashSet::with_capacity(m);
    for i in 0..n {
        let j = (i + 1) % n;
        seen.insert((i, j));
        edges.push(Edge {
            src: i,
            dst: j,
            p: 0.0,
        });
    }
    let mut rng = stream_rng(seed, StreamPurpose::InstanceGen, 0);
    while edges.len() < m {
        let src = rng.gen_range(0..n);
        let dst = rng.gen_range(0..n);
        if src != dst && seen.insert((src, dst)) {
            edges.push(Edge {
                src,
                dst,
                p: 0.0,
            });
        }
    }
    DirectedGraph::from_parts(n, edges, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    fn load(lines: &str, reverse: bool) -> DirectedGraph {
        load_edge_list(Cursor::new(lines), reverse, DedupPolicy::KeepFirst).unwrap()
    }

    #[test]
    fn load_plain() {
        let g = load("0 1\n1 2\n", false);
        assert_eq!(g.node_count(), 3);
        let pairs: Vec<_> = g.edges().iter().map(|e| (e.src, e.dst)).collect();
        assert_eq!(pairs, vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn load_reversed() {
        let g = load("0 1\n1 2\n", true);
        let pairs: Vec<_> = g.edges().iter().map(|e| (e.src, e.dst)).collect();
        assert_eq!(pairs, vec![(1, 0), (2, 1)]);
    }

    #[test]
    fn load_dedup_and_self_loop() {
        let g = load("0 1\n0 1\n2 2\n", false);
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 1);
        assert_eq!((g.edges()[0].src, g.edges()[0].dst), (0, 1));
    }

    #[test]
    fn load_remaps_sparse_ids() {
        let g = load("# comment\n10 500\n500 7\n", false);
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.original_id(0), 10);
        assert_eq!(g.original_id(1), 500);
        assert_eq!(g.original_id(2), 7);
    }

    #[test]
    fn dedup_reject_policy_errors() {
        let err =
            load_edge_list(Cursor::new("0 1\n0 1\n"), false, DedupPolicy::Reject).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn load_rejects_bad_token() {
        let err = load_edge_list(Cursor::new("0 1\nx 2\n"), false, DedupPolicy::KeepFirst)
            .unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn load_empty_input_is_empty_graph() {
        let g = load("", false);
        assert_eq!(g.node_count(), 0);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn load_is_idempotent_on_reserialized_output() {
        let g1 = load("5 3\n3 9\n9 5\n2 9\n", true);
        let mut buf = Vec::new();
        write_edge_list(&g1, &mut buf).unwrap();
        let g2 = load_edge_list(Cursor::new(&buf), false, DedupPolicy::KeepFirst).unwrap();
        let mut buf2 = Vec::new();
        write_edge_list(&g2, &mut buf2).unwrap();
        let g3 = load_edge_list(Cursor::new(&buf2), false, DedupPolicy::KeepFirst).unwrap();
        assert_eq!(g2.node_count(), g3.node_count());
        let p2: Vec<_> = g2.edges().iter().map(|e| (e.src, e.dst)).collect();
        let p3: Vec<_> = g3.edges().iter().map(|e| (e.src, e.dst)).collect();
        assert_eq!(p2, p3);
    }

    #[test]
    fn identical_assignment() {
        let g = load("0 1\n1 2\n", false);
        let g = assign_probabilities(&g, ProbabilityModel::Identical(0.5), 0).unwrap();
        assert!(g.edges().iter().all(|e| e.p == 0.5));
        assert!(assign_probabilities(&g, ProbabilityModel::Identical(1.5), 0).is_err());
    }

    #[test]
    fn trivalency_draws_from_levels() {
        let g = load("0 1\n1 2\n2 0\n0 2\n", false);
        let g = assign_probabilities(&g, ProbabilityModel::Trivalency, 7).unwrap();
        for e in g.edges() {
            assert!(
                e.p == 0.1 || e.p == 0.01 || e.p == 0.001,
                "unexpected level {}",
                e.p
            );
        }
    }

    #[test]
    fn uniform01_is_seed_deterministic() {
        let g = load("0 1\n1 2\n2 0\n", false);
        let a = assign_probabilities(&g, ProbabilityModel::Uniform01, 42).unwrap();
        let b = assign_probabilities(&g, ProbabilityModel::Uniform01, 42).unwrap();
        for (ea, eb) in a.edges().iter().zip(b.edges()) {
            assert_eq!(ea.p.to_bits(), eb.p.to_bits());
        }
        let c = assign_probabilities(&g, ProbabilityModel::Uniform01, 43).unwrap();
        assert!(a.edges().iter().zip(c.edges()).any(|(x, y)| x.p != y.p));
    }

    #[test]
    fn weighted_cascade_chain() {
        // chain 0 -> 1 -> 2 under source total degree: deg(0)=1, deg(1)=2
        let g = load("0 1\n1 2\n", false);
        let g = assign_probabilities(
            &g,
            ProbabilityModel::WeightedCascade(DegreeConvention::SourceTotalDegree),
            0,
        )
        .unwrap();
        assert_eq!(g.edges()[0].p, 1.0);
        assert_eq!(g.edges()[1].p, 0.5);
    }

    #[test]
    fn weighted_cascade_matches_reciprocal_exactly() {
        let g = gen_random_graph(60, 400, 11).unwrap();
        let wc = assign_probabilities(
            &g,
            ProbabilityModel::WeightedCascade(DegreeConvention::SourceTotalDegree),
            0,
        )
        .unwrap();
        for e in wc.edges() {
            assert_eq!(e.p.to_bits(), (1.0 / g.degree(e.src) as f64).to_bits());
        }
        let ki = assign_probabilities(
            &g,
            ProbabilityModel::WeightedCascade(DegreeConvention::TargetInDegree),
            0,
        )
        .unwrap();
        for e in ki.edges() {
            assert_eq!(e.p.to_bits(), (1.0 / g.in_degree(e.dst) as f64).to_bits());
        }
    }

    #[test]
    fn stats_chain_endpoints() {
        let g = load("0 1\n1 2\n", false);
        let s = SeedSet::new(vec![0, 2], 3).unwrap();
        let stats = seed_set_stats(&g, &s).unwrap();
        assert_eq!(stats.min_degree, 1);
        assert_eq!(stats.max_degree, 1);
        assert_eq!(stats.mean_degree, 1.0);
        assert_eq!(stats.diameter, Some(2));
    }

    #[test]
    fn stats_singleton_and_disconnected() {
        let g = load("0 1\n1 2\n", false);
        let s = SeedSet::new(vec![1], 3).unwrap();
        assert_eq!(seed_set_stats(&g, &s).unwrap().diameter, Some(0));

        let iso = DirectedGraph::from_parts(2, vec![], None).unwrap();
        let s = SeedSet::new(vec![0, 1], 2).unwrap();
        assert_eq!(seed_set_stats(&iso, &s).unwrap().diameter, None);

        assert!(seed_set_stats(&g, &SeedSet::empty()).is_err());
    }

    #[test]
    fn stats_diameter_symmetric() {
        let g = load("0 1\n1 2\n0 3\n3 4\n", false);
        let a = seed_set_stats(&g, &SeedSet::new(vec![2, 4], 5).unwrap()).unwrap();
        let b = seed_set_stats(&g, &SeedSet::new(vec![4, 2], 5).unwrap()).unwrap();
        assert_eq!(a.diameter, b.diameter);
        assert_eq!(a.diameter, Some(4));
    }

    #[test]
    fn graph_csv_roundtrip() {
        let g = load("0 1\n1 2\n2 2\n", false);
        let g = assign_probabilities(&g, ProbabilityModel::Uniform01, 5).unwrap();
        let mut buf = Vec::new();
        write_graph_csv(&g, &mut buf).unwrap();
        let back = read_graph_csv(Cursor::new(&buf)).unwrap();
        assert_eq!(back.node_count(), g.node_count());
        assert_eq!(back.edge_count(), g.edge_count());
        for (a, b) in g.edges().iter().zip(back.edges()) {
            assert_eq!((a.src, a.dst), (b.src, b.dst));
            assert_eq!(a.p.to_bits(), b.p.to_bits());
        }
    }

    #[test]
    fn random_graph_has_exact_counts() {
        let g = gen_random_graph(50, 300, 3).unwrap();
        assert_eq!(g.node_count(), 50);
        assert_eq!(g.edge_count(), 300);
        let again = gen_random_graph(50, 300, 3).unwrap();
        let a: Vec<_> = g.edges().iter().map(|e| (e.src, e.dst)).collect();
        let b: Vec<_> = again.edges().iter().map(|e| (e.src, e.dst)).collect();
        assert_eq!(a, b);
    }
}
