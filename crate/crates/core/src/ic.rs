//! Independent cascade estimation: live-edge sampling, reachability
//! counting, Monte Carlo estimation with sample reuse for greedy, and a
//! brute-force exact oracle for tiny graphs.

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, SeedSet};
use crate::rng::{stream_rng, StreamPurpose};

/// Default Monte Carlo sample count per estimate.
pub const DEFAULT_SAMPLE_COUNT: usize = 10_000;

/// Largest edge count accepted by [`f_ic_exact`].
pub const EXACT_EDGE_LIMIT: usize = 20;

/// One binary realization of the edge states, aligned to the edge index.
#[derive(Debug, Clone)]
pub struct LiveEdgeSample {
    bits: Vec<u64>,
    len: usize,
}

impl LiveEdgeSample {
    pub fn zeros(len: usize) -> Self {
        LiveEdgeSample {
            bits: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_live(&self, edge: usize) -> bool {
        debug_assert!(edge < self.len);
        self.bits[edge / 64] >> (edge % 64) & 1 == 1
    }

    pub fn set_live(&mut self, edge: usize) {
        debug_assert!(edge < self.len);
        self.bits[edge / 64] |= 1 << (edge % 64);
    }

    pub fn live_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn live_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&e| self.is_live(e))
    }
}

/// Draws each edge independently live with its probability.
pub fn sample_live_edges(g: &DirectedGraph, rng: &mut impl Rng) -> LiveEdgeSample {
    let mut sample = LiveEdgeSample::zeros(g.edge_count());
    for (idx, e) in g.edges().iter().enumerate() {
        if rng.gen::<f64>() < e.p {
            sample.set_live(idx);
        }
    }
    sample
}

/// Marks every node reachable from the seeds along live edges (seeds
/// included).
pub fn reachable_set(g: &DirectedGraph, c: &LiveEdgeSample, s: &SeedSet) -> Vec<bool> {
    let mut reached = vec![false; g.node_count()];
    let mut stack: Vec<usize> = Vec::new();
    for &v in s.ids() {
        reached[v] = true;
        stack.push(v);
    }
    while let Some(u) = stack.pop() {
        for &(next, eidx) in g.out_edges(u) {
            if c.is_live(eidx) && !reached[next] {
                reached[next] = true;
                stack.push(next);
            }
        }
    }
    reached
}

/// Number of nodes reachable from `s` along live edges, seeds included.
pub fn count_influenced(g: &DirectedGraph, c: &LiveEdgeSample, s: &SeedSet) -> usize {
    reachable_set(g, c, s).iter().filter(|&&r| r).count()
}

/// Monte Carlo influence estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IcEstimate {
    pub mean: f64,
    /// Standard error of the mean (unbiased sample variance); 0 when R = 1.
    pub stderr: f64,
    pub samples: usize,
}

/// Mean influence over `r` independent live-edge samples. Sample `i` draws
/// from RNG stream `(seed, i)`, so the estimate is reproducible under any
/// parallel schedule.
pub fn f_ic_estimate(g: &DirectedGraph, s: &SeedSet, r: usize, seed: u64) -> Result<IcEstimate> {
    f_ic_estimate_offset(g, s, r, seed, 0)
}

fn f_ic_estimate_offset(
    g: &DirectedGraph,
    s: &SeedSet,
    r: usize,
    seed: u64,
    stream_offset: u64,
) -> Result<IcEstimate> {
    if r == 0 {
        return Err(Error::domain("Monte Carlo estimate needs at least 1 sample"));
    }
    let counts: Vec<u64> = (0..r)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, StreamPurpose::CascadeSample, stream_offset + i as u64);
            let sample = sample_live_edges(g, &mut rng);
            count_influenced(g, &sample, s) as u64
        })
        .collect();
    Ok(estimate_from_counts(&counts))
}

pub(crate) fn estimate_from_counts(counts: &[u64]) -> IcEstimate {
    let r = counts.len();
    let sum: u64 = counts.iter().sum();
    let mean = sum as f64 / r as f64;
    let stderr = if r > 1 {
        let sum_sq: u64 = counts.iter().map(|&c| c * c).sum();
        let var = (sum_sq as f64 - r as f64 * mean * mean) / (r as f64 - 1.0);
        (var.max(0.0) / r as f64).sqrt()
    } else {
        0.0
    };
    IcEstimate {
        mean,
        stderr,
        samples: r,
    }
}

/// Repeated-set estimate: `sets` independent estimates of `r` samples each,
/// reporting both the within-set standard errors and the spread across set
/// means.
#[derive(Debug, Clone)]
pub struct IcEstimateBatch {
    pub per_set: Vec<IcEstimate>,
    /// Mean of the set means.
    pub mean: f64,
    /// Standard error across set means; 0 with a single set.
    pub between_stderr: f64,
}

pub fn f_ic_estimate_sets(
    g: &DirectedGraph,
    s: &SeedSet,
    r: usize,
    sets: usize,
    seed: u64,
) -> Result<IcEstimateBatch> {
    if sets == 0 {
        return Err(Error::domain("need at least 1 estimate set"));
    }
    let per_set: Vec<IcEstimate> = (0..sets)
        .map(|j| f_ic_estimate_offset(g, s, r, seed, (j * r) as u64))
        .collect::<Result<_>>()?;
    let mean = per_set.iter().map(|e| e.mean).sum::<f64>() / sets as f64;
    let between_stderr = if sets > 1 {
        let var = per_set
            .iter()
            .map(|e| (e.mean - mean) * (e.mean - mean))
            .sum::<f64>()
            / (sets as f64 - 1.0);
        (var / sets as f64).sqrt()
    } else {
        0.0
    };
    Ok(IcEstimateBatch {
        per_set,
        mean,
        between_stderr,
    })
}

/// Exact expected influence by enumerating all 2^|E| edge realizations.
/// Refuses graphs with more than [`EXACT_EDGE_LIMIT`] edges.
pub fn f_ic_exact(g: &DirectedGraph, s: &SeedSet) -> Result<f64> {
    let m = g.edge_count();
    if m > EXACT_EDGE_LIMIT {
        return Err(Error::Budget {
            what: "exact cascade enumeration over edge realizations".to_string(),
            required: 1u128 << m,
            limit: 1u128 << EXACT_EDGE_LIMIT,
        });
    }

    // Only edge endpoints can change state; everything else contributes
    // |S| regardless of the realization. Endpoints fit in a u64 mask.
    let mut active: Vec<usize> = Vec::new();
    {
        let mut seen = vec![false; g.node_count()];
        for e in g.edges() {
            for v in [e.src, e.dst] {
                if !seen[v] {
                    seen[v] = true;
                    active.push(v);
                }
            }
        }
    }
    active.sort_unstable();
    let bit_of = |v: usize| active.binary_search(&v).ok();
    let edges: Vec<(u64, u64, f64)> = g
        .edges()
        .iter()
        .map(|e| {
            (
                1u64 << bit_of(e.src).unwrap(),
                1u64 << bit_of(e.dst).unwrap(),
                e.p,
            )
        })
        .collect();
    let mut seed_mask = 0u64;
    for &v in s.ids() {
        if let Some(b) = bit_of(v) {
            seed_mask |= 1 << b;
        }
    }

    // Half-split probability tables: one multiply per realization.
    let lo_bits = m / 2;
    let lo_table = half_products(&edges[..lo_bits]);
    let hi_table = half_products(&edges[lo_bits..]);

    let base = s.len() as f64;
    let mut total = 0.0;
    for mask in 0u64..(1u64 << m) {
        let prob = lo_table[(mask & ((1 << lo_bits) - 1)) as usize]
            * hi_table[(mask >> lo_bits) as usize];
        let mut reached = seed_mask;
        loop {
            let mut next = reached;
            for (idx, &(src_bit, dst_bit, _)) in edges.iter().enumerate() {
                if mask >> idx & 1 == 1 && next & src_bit != 0 {
                    next |= dst_bit;
                }
            }
            if next == reached {
                break;
            }
            reached = next;
        }
        let newly = (reached & !seed_mask).count_ones() as f64;
        total += prob * (base + newly);
    }
    Ok(total)
}

fn half_products(edges: &[(u64, u64, f64)]) -> Vec<f64> {
    let bits = edges.len();
    let mut table = vec![0.0; 1 << bits];
    for (mask, slot) in table.iter_mut().enumerate() {
        let mut prob = 1.0;
        for (idx, &(_, _, p)) in edges.iter().enumerate() {
            prob *= if mask >> idx & 1 == 1 { p } else { 1.0 - p };
        }
        *slot = prob;
    }
    table
}

/// Fixed bank of live-edge samples with per-sample activation state, for
/// greedy seed selection that reuses one set of realizations throughout.
///
/// Per-sample activation always equals the nodes reachable from the
/// committed seeds in that sample, so bank values match [`f_ic_estimate`]
/// on the same seed/stream exactly.
#[derive(Debug, Clone)]
pub struct SampleBank {
    samples: Vec<LiveEdgeSample>,
    activated: Vec<Vec<bool>>,
    /// Sum over samples of activated-node counts.
    activated_total: u64,
    committed: Vec<usize>,
}

impl SampleBank {
    /// Draws `r` samples from streams `(master_seed, 0..r)`.
    pub fn build(g: &DirectedGraph, r: usize, master_seed: u64) -> Result<Self> {
        if r == 0 {
            return Err(Error::domain("sample bank needs at least 1 sample"));
        }
        let samples: Vec<LiveEdgeSample> = (0..r)
            .into_par_iter()
            .map(|i| {
                let mut rng = stream_rng(master_seed, StreamPurpose::CascadeSample, i as u64);
                sample_live_edges(g, &mut rng)
            })
            .collect();
        Ok(SampleBank {
            samples,
            activated: vec![vec![false; g.node_count()]; r],
            activated_total: 0,
            committed: Vec::new(),
        })
    }

    pub fn sample_count(&self) -> usize {
        self.samples.len()
    }

    pub fn committed(&self) -> &[usize] {
        &self.committed
    }

    /// Mean activated count = the IC estimate of the committed seed set.
    pub fn value(&self) -> f64 {
        self.activated_total as f64 / self.samples.len() as f64
    }

    /// Estimated gain of committing `v`: mean count of nodes newly reachable
    /// from `v`, pruning traversal at already-activated nodes. Exactly equals
    /// `value(after commit) - value(before)` for these fixed samples.
    pub fn marginal_gain(&self, g: &DirectedGraph, v: usize) -> f64 {
        let newly: u64 = self
            .samples
            .par_iter()
            .zip(self.activated.par_iter())
            .map(|(sample, activated)| count_newly_reached(g, sample, activated, v))
            .sum();
        let r = self.samples.len() as f64;
        (self.activated_total + newly) as f64 / r - self.activated_total as f64 / r
    }

    /// Activates `v` and everything newly reachable from it in every sample.
    /// Committing an already-activated node is a harmless no-op gain of 0.
    pub fn commit(&mut self, g: &DirectedGraph, v: usize) {
        let mut newly_total = 0u64;
        for (sample, activated) in self.samples.iter().zip(self.activated.iter_mut()) {
            newly_total += activate_from(g, sample, activated, v);
        }
        self.activated_total += newly_total;
        self.committed.push(v);
    }
}

fn count_newly_reached(
    g: &DirectedGraph,
    sample: &LiveEdgeSample,
    activated: &[bool],
    v: usize,
) -> u64 {
    if activated[v] {
        return 0;
    }
    let mut seen = vec![false; g.node_count()];
    let mut stack = vec![v];
    seen[v] = true;
    let mut count = 1u64;
    while let Some(u) = stack.pop() {
        for &(next, eidx) in g.out_edges(u) {
            if sample.is_live(eidx) && !seen[next] && !activated[next] {
                seen[next] = true;
                count += 1;
                stack.push(next);
            }
        }
    }
    count
}

fn activate_from(
    g: &DirectedGraph,
    sample: &LiveEdgeSample,
    activated: &mut [bool],
    v: usize,
) -> u64 {
    if activated[v] {
        return 0;
    }
    let mut stack = vec![v];
    activated[v] = true;
    let mut count = 1u64;
    while let Some(u) = stack.pop() {
        for &(next, eidx) in g.out_edges(u) {
            if sample.is_live(eidx) && !activated[next] {
                activated[next] = true;
                count += 1;
                stack.push(next);
            }
        }
    }
    count
}

/// Estimate CSV row: `seed_set,R,mean,stderr,seed` with original ids.
pub fn write_estimate_csv(
    g: &DirectedGraph,
    s: &SeedSet,
    est: &IcEstimate,
    seed: u64,
    mut out: impl std::io::Write,
) -> Result<()> {
    writeln!(out, "seed_set,R,mean,stderr,seed")?;
    writeln!(
        out,
        "{},{},{},{},{}",
        s.display_original(g),
        est.samples,
        est.mean,
        est.stderr,
        seed
    )?;
    Ok(())
}
