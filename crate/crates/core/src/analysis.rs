//! Price-of-correlations and correlation-gap analysis: extreme-case
//! instance generators, closed-form benchmarks, POC reports, and the
//! misspecification table rows.

use std::io::Write;

use crate::error::{Error, Result};
use crate::graph::{seed_set_stats, DirectedGraph, Edge, SeedSet};
use crate::ic::{f_ic_estimate, f_ic_exact};
use crate::maximize::{
    exhaustive_opt, lazy_greedy, CorrEvaluator, IcBankEvaluator, IcExactEvaluator,
};
use crate::robust::f_corr;

/// Directed chain `0 -> 1 -> ... -> n-1` with every edge probability
/// `1 - 1/n`.
pub fn gen_series(n: usize) -> Result<DirectedGraph> {
    if n < 2 {
        return Err(Error::domain("series graph needs n >= 2"));
    }
    let p = 1.0 - 1.0 / n as f64;
    let edges = (0..n - 1)
        .map(|i| Edge {
            src: i,
            dst: i + 1,
            p,
        })
        .collect();
    DirectedGraph::from_parts(n, edges, None)
}

/// The root-and-paths tree with its node-type labels: type 0 is the root,
/// type t is the t-th node down each of the `l` disjoint paths.
#[derive(Debug, Clone)]
pub struct PocTree {
    pub graph: DirectedGraph,
    /// node -> type (depth); the root is type 0.
    pub node_types: Vec<usize>,
}

impl PocTree {
    pub fn nodes_of_type(&self, t: usize) -> Vec<usize> {
        (0..self.node_types.len())
            .filter(|&v| self.node_types[v] == t)
            .collect()
    }
}

/// Root with `l` disjoint directed paths of `m + 2` nodes each. The two
/// shallowest edges on every path have probability 0.5, all deeper edges 1.
///
/// The interesting regime is `4m/(m+3) <= l <= 2m` (the root is then the
/// independence-optimal singleton while a type-2 node is the robust one);
/// outside it the call fails unless `allow_any_regime` is set.
pub fn gen_poc_tree(l: usize, m: usize, allow_any_regime: bool) -> Result<PocTree> {
    if l < 1 || m < 1 {
        return Err(Error::domain("poc tree needs l >= 1 and m >= 1"));
    }
    let in_regime = 4 * m <= l * (m + 3) && l <= 2 * m;
    if !in_regime && !allow_any_regime {
        return Err(Error::domain(format!(
            "(l, m) = ({l}, {m}) outside the regime 4m/(m+3) <= l <= 2m"
        )));
    }
    let node_count = l * (m + 2) + 1;
    let mut edges = Vec::with_capacity(l * (m + 2));
    let mut node_types = vec![0usize; node_count];
    for path in 0..l {
        let base = 1 + path * (m + 2);
        for t in 1..=m + 2 {
            node_types[base + t - 1] = t;
        }
        edges.push(Edge {
            src: 0,
            dst: base,
            p: 0.5,
        });
        edges.push(Edge {
            src: base,
            dst: base + 1,
            p: 0.5,
        });
        for t in 2..m + 2 {
            edges.push(Edge {
                src: base + t - 1,
                dst: base + t,
                p: 1.0,
            });
        }
    }
    let graph = DirectedGraph::from_parts(node_count, edges, None)?;
    Ok(PocTree { graph, node_types })
}

/// Closed forms for the series instance seeded at its head.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesClosedForm {
    pub f_corr: f64,
    pub f_ic: f64,
    pub kappa: f64,
}

/// `f_corr = 1 + (n-1)/2`, `f_ic = 1 + sum_{i=1}^{n-1} (1 - 1/n)^i`, and
/// their ratio.
pub fn series_closed_form(n: usize) -> Result<SeriesClosedForm> {
    if n < 2 {
        return Err(Error::domain("series closed form needs n >= 2"));
    }
    let f_corr = 1.0 + (n as f64 - 1.0) / 2.0;
    let p = 1.0 - 1.0 / n as f64;
    let mut f_ic = 1.0;
    let mut term = 1.0;
    for _ in 1..n {
        term *= p;
        f_ic += term;
    }
    Ok(SeriesClosedForm {
        f_corr,
        f_ic,
        kappa: f_corr / f_ic,
    })
}

/// The expected POC of the in-regime tree with k = 1: `(1 + l/2) / (m + 1)`.
pub fn poc_tree_expected_poc(l: usize, m: usize) -> f64 {
    (1.0 + 0.5 * l as f64) / (m as f64 + 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PocMode {
    /// Exhaustive optima under both objectives; requires tiny instances.
    Exact,
    /// Lazy-greedy surrogate sets, flagged in the report.
    Greedy,
}

/// Monte Carlo parameters for the independence-side evaluations.
#[derive(Debug, Clone, Copy)]
pub struct IcParams {
    pub samples: usize,
    pub seed: u64,
}

/// Price-of-correlations summary for one instance and budget.
#[derive(Debug, Clone)]
pub struct PocReport {
    pub k: usize,
    /// False when the seed sets are greedy surrogates.
    pub exact: bool,
    pub s_corr: SeedSet,
    pub s_ic: SeedSet,
    pub f_corr_of_s_corr: f64,
    pub f_corr_of_s_ic: f64,
    pub f_ic_of_s_ic: f64,
    pub f_ic_of_s_corr: f64,
    /// f_corr(S_ic) / f_corr(S_corr).
    pub poc: f64,
    /// Correlation gap at S_ic: f_corr(S_ic) / f_ic(S_ic).
    pub kappa_s_ic: f64,
    /// f_ic(S_corr) / f_ic(S_ic).
    pub misspec_of_s_corr: f64,
    /// 0 <= kappa <= POC <= 1; checked only in exact mode.
    pub chain_ok: Option<bool>,
    pub ic_estimator: String,
}

/// Computes optimal (or greedy-surrogate) seed sets under both objectives
/// and every ratio between them. Exact mode uses exhaustive search plus the
/// exact cascade oracle and records whether the ratio chain held.
pub fn poc_report(
    g: &DirectedGraph,
    k: usize,
    mode: PocMode,
    ic: IcParams,
    budget: u128,
) -> Result<PocReport> {
    const CHAIN_TOL: f64 = 1e-9;
    let (s_corr, s_ic, f_ic_of_s_ic, f_ic_of_s_corr, exact, estimator) = match mode {
        PocMode::Exact => {
            let corr_eval = CorrEvaluator::new(g);
            let (s_corr, _) = exhaustive_opt(&corr_eval, g, k, budget)?;
            let ic_eval = IcExactEvaluator::new(g)?;
            let (s_ic, f_ic_of_s_ic) = exhaustive_opt(&ic_eval, g, k, budget)?;
            let f_ic_of_s_corr = f_ic_exact(g, &s_corr)?;
            (
                s_corr,
                s_ic,
                f_ic_of_s_ic,
                f_ic_of_s_corr,
                true,
                "exact".to_string(),
            )
        }
        PocMode::Greedy => {
            let corr_eval = CorrEvaluator::new(g);
            let s_corr = lazy_greedy(&corr_eval, g, k)?.seed_set(g.node_count());
            let ic_eval = IcBankEvaluator::new(g, ic.samples, ic.seed)?;
            let s_ic = lazy_greedy(&ic_eval, g, k)?.seed_set(g.node_count());
            let f_ic_of_s_ic = f_ic_estimate(g, &s_ic, ic.samples, ic.seed)?.mean;
            let f_ic_of_s_corr = f_ic_estimate(g, &s_corr, ic.samples, ic.seed)?.mean;
            (
                s_corr,
                s_ic,
                f_ic_of_s_ic,
                f_ic_of_s_corr,
                false,
                format!("mc:samples={},seed={}", ic.samples, ic.seed),
            )
        }
    };

    let f_corr_of_s_corr = f_corr(g, &s_corr);
    let f_corr_of_s_ic = f_corr(g, &s_ic);
    let poc = f_corr_of_s_ic / f_corr_of_s_corr;
    let kappa_s_ic = f_corr_of_s_ic / f_ic_of_s_ic;
    let misspec_of_s_corr = f_ic_of_s_corr / f_ic_of_s_ic;
    let chain_ok = exact.then(|| {
        -CHAIN_TOL <= kappa_s_ic && kappa_s_ic <= poc + CHAIN_TOL && poc <= 1.0 + CHAIN_TOL
    });
    Ok(PocReport {
        k,
        exact,
        s_corr,
        s_ic,
        f_corr_of_s_corr,
        f_corr_of_s_ic,
        f_ic_of_s_ic,
        f_ic_of_s_corr,
        poc,
        kappa_s_ic,
        misspec_of_s_corr,
        chain_ok,
        ic_estimator: estimator,
    })
}

/// One row of the misspecification table.
#[derive(Debug, Clone)]
pub struct MisspecRow {
    pub dataset: String,
    /// "corr" or "ic" — which greedy produced the seed set.
    pub seed_set_kind: &'static str,
    pub prob_model: String,
    /// corr row: f_ic(S_corr)/f_ic(S_ic); ic row: f_corr(S_ic)/f_corr(S_corr).
    pub misspec_ratio: f64,
    pub min_deg: usize,
    pub avg_deg: f64,
    pub max_deg: usize,
    pub diameter: Option<usize>,
    pub estimator: String,
    pub samples: usize,
    pub seed: u64,
    /// Relative Monte Carlo standard error of the ratio; 0 for exact parts.
    pub ratio_rel_stderr: f64,
}

/// Runs lazy greedy under both objectives and emits one row per seed set:
/// the misspecification ratio under the *other* model plus degree and
/// diameter statistics.
pub fn misspec_table_rows(
    g: &DirectedGraph,
    dataset: &str,
    prob_model: &str,
    k: usize,
    ic: IcParams,
) -> Result<Vec<MisspecRow>> {
    let corr_eval = CorrEvaluator::new(g);
    let s_corr = lazy_greedy(&corr_eval, g, k)?.seed_set(g.node_count());
    let ic_eval = IcBankEvaluator::new(g, ic.samples, ic.seed)?;
    let s_ic = lazy_greedy(&ic_eval, g, k)?.seed_set(g.node_count());

    let ic_of_corr = f_ic_estimate(g, &s_corr, ic.samples, ic.seed)?;
    let ic_of_ic = f_ic_estimate(g, &s_ic, ic.samples, ic.seed)?;
    let corr_of_corr = f_corr(g, &s_corr);
    let corr_of_ic = f_corr(g, &s_ic);

    let corr_stats = seed_set_stats(g, &s_corr)?;
    let ic_stats = seed_set_stats(g, &s_ic)?;

    let rel = |est: &crate::ic::IcEstimate| est.stderr / est.mean;
    let mc_rel_stderr =
        (rel(&ic_of_corr) * rel(&ic_of_corr) + rel(&ic_of_ic) * rel(&ic_of_ic)).sqrt();

    Ok(vec![
        MisspecRow {
            dataset: dataset.to_string(),
            seed_set_kind: "corr",
            prob_model: prob_model.to_string(),
            misspec_ratio: ic_of_corr.mean / ic_of_ic.mean,
            min_deg: corr_stats.min_degree,
            avg_deg: corr_stats.mean_degree,
            max_deg: corr_stats.max_degree,
            diameter: corr_stats.diameter,
            estimator: "mc".to_string(),
            samples: ic.samples,
            seed: ic.seed,
            ratio_rel_stderr: mc_rel_stderr,
        },
        MisspecRow {
            dataset: dataset.to_string(),
            seed_set_kind: "ic",
            prob_model: prob_model.to_string(),
            misspec_ratio: corr_of_ic / corr_of_corr,
            min_deg: ic_stats.min_degree,
            avg_deg: ic_stats.mean_degree,
            max_deg: ic_stats.max_degree,
            diameter: ic_stats.diameter,
            estimator: "exact".to_string(),
            samples: ic.samples,
            seed: ic.seed,
            ratio_rel_stderr: 0.0,
        },
    ])
}

/// Table CSV: one row per seed set and probability model, with estimator
/// metadata appended after the structural columns.
pub fn write_table_csv(rows: &[MisspecRow], mut out: impl Write) -> Result<()> {
    writeln!(
        out,
        "dataset,seed_set_kind,prob_model,misspec_ratio,min_deg,avg_deg,max_deg,diam,\
         estimator,samples,seed,ratio_rel_stderr"
    )?;
    for row in rows {
        let diam = match row.diameter {
            Some(d) => d.to_string(),
            None => "disconnected".to_string(),
        };
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            row.dataset,
            row.seed_set_kind,
            row.prob_model,
            row.misspec_ratio,
            row.min_deg,
            row.avg_deg,
            row.max_deg,
            diam,
            row.estimator,
            row.samples,
            row.seed,
            row.ratio_rel_stderr
        )?;
    }
    Ok(())
}

/// POC report CSV, single data row.
pub fn write_poc_csv(g: &DirectedGraph, report: &PocReport, mut out: impl Write) -> Result<()> {
    writeln!(
        out,
        "k,mode,s_corr,s_ic,f_corr_s_corr,f_corr_s_ic,f_ic_s_ic,f_ic_s_corr,poc,kappa_s_ic,\
         misspec_s_corr,chain_ok,ic_estimator"
    )?;
    writeln!(
        out,
        "{},{},{},{},{},{},{},{},{},{},{},{},{}",
        report.k,
        if report.exact { "exact" } else { "greedy" },
        report.s_corr.display_original(g),
        report.s_ic.display_original(g),
        report.f_corr_of_s_corr,
        report.f_corr_of_s_ic,
        report.f_ic_of_s_ic,
        report.f_ic_of_s_corr,
        report.poc,
        report.kappa_s_ic,
        report.misspec_of_s_corr,
        report
            .chain_ok
            .map(|ok| ok.to_string())
            .unwrap_or_else(|| "n/a".to_string()),
        report.ic_estimator
    )?;
    Ok(())
}
