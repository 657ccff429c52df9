//! Subcommand implementations and shared plumbing.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::Args;
use serde::Serialize;

use corrmax_core::adversary::{
    draw_coupling, exact_expected_influence, write_cell_report_csv, write_coupling_draw_csv,
    write_edge_marginals_csv,
};
use corrmax_core::analysis::{
    gen_poc_tree, gen_series, misspec_table_rows, poc_report, write_poc_csv, write_table_csv,
    IcParams, PocMode,
};
use corrmax_core::graph::{
    assign_probabilities, gen_random_graph, load_edge_list_path, read_graph_csv,
    write_graph_csv, DedupPolicy, DegreeConvention, DirectedGraph, ProbabilityModel, SeedSet,
};
use corrmax_core::ic::{f_ic_estimate_sets, write_estimate_csv, DEFAULT_SAMPLE_COUNT};
use corrmax_core::maximize::{
    lazy_greedy, write_trace_csv, CorrEvaluator, GreedyTrace, IcBankEvaluator,
    DEFAULT_EXHAUSTIVE_LIMIT,
};
use corrmax_core::robust::{influence_profile, write_profile_csv};

/// Flags shared by every subcommand that consumes a graph.
#[derive(Args, Debug, Clone)]
pub struct GraphArgs {
    /// Dataset path (.csv graph or SNAP edge list) or a generator spec:
    /// series:<n> | poctree:<l>,<m> | random:<n>,<m>.
    #[arg(long)]
    pub graph: String,

    /// Store each edge (i, j) of an edge-list file as (j, i).
    #[arg(long, default_value_t = false)]
    pub reverse_edges: bool,

    /// identical:<p> | unif01 | trivalency | wcascade[:<source-total|target-in>]
    #[arg(long)]
    pub prob_model: Option<String>,

    /// Master seed for probability models and Monte Carlo sampling.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Serialize)]
pub struct RunConfig {
    pub subcommand: String,
    pub graph: String,
    pub reverse_edges: bool,
    pub prob_model: Option<String>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seeds: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evaluator: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sets: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
    pub out: String,
}

impl RunConfig {
    fn new(subcommand: &str, g: &GraphArgs, out: &Path, threads: Option<usize>) -> Self {
        RunConfig {
            subcommand: subcommand.to_string(),
            graph: g.graph.clone(),
            reverse_edges: g.reverse_edges,
            prob_model: g.prob_model.clone(),
            seed: g.seed,
            seeds: None,
            k: None,
            evaluator: None,
            samples: None,
            sets: None,
            q: None,
            mode: None,
            budget: None,
            threads,
            out: out.display().to_string(),
        }
    }
}

pub fn parse_prob_model(s: &str) -> Result<ProbabilityModel> {
    if let Some(p) = s.strip_prefix("identical:") {
        let p: f64 = p.parse().context("identical:<p> needs a number")?;
        return Ok(ProbabilityModel::Identical(p));
    }
    match s {
        "unif01" => Ok(ProbabilityModel::Uniform01),
        "trivalency" => Ok(ProbabilityModel::Trivalency),
        "wcascade" | "wcascade:source-total" => Ok(ProbabilityModel::WeightedCascade(
            DegreeConvention::SourceTotalDegree,
        )),
        "wcascade:target-in" => Ok(ProbabilityModel::WeightedCascade(
            DegreeConvention::TargetInDegree,
        )),
        other => bail!(
            "unknown probability model {other:?}; expected identical:<p>, unif01, trivalency, \
             or wcascade[:<source-total|target-in>]"
        ),
    }
}

fn parse_pair(spec: &str, what: &str) -> Result<(usize, usize)> {
    let (a, b) = spec
        .split_once(',')
        .with_context(|| format!("{what} expects two comma-separated integers"))?;
    Ok((
        a.trim().parse().with_context(|| format!("bad {what}"))?,
        b.trim().parse().with_context(|| format!("bad {what}"))?,
    ))
}

/// Resolves a graph spec: generator specs first, then files by extension.
pub fn load_graph(args: &GraphArgs) -> Result<DirectedGraph> {
    let g = if let Some(n) = args.graph.strip_prefix("series:") {
        gen_series(n.trim().parse().context("series:<n> needs an integer")?)?
    } else if let Some(spec) = args.graph.strip_prefix("poctree:") {
        let (l, m) = parse_pair(spec, "poctree:<l>,<m>")?;
        gen_poc_tree(l, m, false)?.graph
    } else if let Some(spec) = args.graph.strip_prefix("random:") {
        let (n, m) = parse_pair(spec, "random:<n>,<m>")?;
        gen_random_graph(n, m, args.seed)?
    } else if args.graph.ends_with(".csv") {
        let file = fs::File::open(&args.graph)
            .with_context(|| format!("opening {}", args.graph))?;
        read_graph_csv(std::io::BufReader::new(file))?
    } else {
        load_edge_list_path(&args.graph, args.reverse_edges, DedupPolicy::KeepFirst)
            .with_context(|| format!("loading {}", args.graph))?
    };
    match &args.prob_model {
        Some(spec) => Ok(assign_probabilities(&g, parse_prob_model(spec)?, args.seed)?),
        None => Ok(g),
    }
}

fn prepare_out(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))
}

fn write_file(path: &Path, write: impl FnOnce(&mut Vec<u8>) -> Result<()>) -> Result<()> {
    let mut buf = Vec::new();
    write(&mut buf)?;
    fs::write(path, buf).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn write_config(dir: &Path, config: &RunConfig) -> Result<()> {
    let json = serde_json::to_string_pretty(config)?;
    fs::write(dir.join("config.json"), json + "\n")?;
    Ok(())
}

fn parse_seed_ids(spec: &str) -> Result<Vec<u64>> {
    spec.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<u64>()
                .with_context(|| format!("bad seed id {tok:?}"))
        })
        .collect()
}

// ---------------------------------------------------------------- eval

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[command(flatten)]
    pub graph: GraphArgs,

    /// Seed node ids (original dataset ids), comma separated.
    #[arg(long)]
    pub seeds: String,

    /// Monte Carlo samples per estimate set.
    #[arg(long, default_value_t = DEFAULT_SAMPLE_COUNT)]
    pub samples: usize,

    /// Number of independent estimate sets (spread reported across sets).
    #[arg(long, default_value_t = 1)]
    pub sets: usize,

    #[arg(long)]
    pub out: PathBuf,
}

pub fn cmd_eval(args: EvalArgs, threads: Option<usize>) -> Result<()> {
    let g = load_graph(&args.graph)?;
    let ids = parse_seed_ids(&args.seeds)?;
    let s = SeedSet::from_original_ids(&g, &ids)?;
    prepare_out(&args.out)?;
    let mut config = RunConfig::new("eval", &args.graph, &args.out, threads);
    config.seeds = Some(ids);
    config.samples = Some(args.samples);
    config.sets = Some(args.sets);
    write_config(&args.out, &config)?;

    let profile = influence_profile(&g, &s);
    write_file(&args.out.join("profile.csv"), |buf| {
        Ok(write_profile_csv(&g, &profile, buf)?)
    })?;

    let batch = f_ic_estimate_sets(&g, &s, args.samples, args.sets, args.graph.seed)?;
    write_file(&args.out.join("estimate.csv"), |buf| {
        Ok(write_estimate_csv(
            &g,
            &s,
            &batch.per_set[0],
            args.graph.seed,
            buf,
        )?)
    })?;

    write_file(&args.out.join("eval.csv"), |buf| {
        use std::io::Write;
        writeln!(buf, "metric,value")?;
        writeln!(buf, "f_corr,{}", profile.total())?;
        writeln!(buf, "ic_mean,{}", batch.mean)?;
        writeln!(buf, "ic_within_stderr,{}", batch.per_set[0].stderr)?;
        writeln!(buf, "ic_between_stderr,{}", batch.between_stderr)?;
        writeln!(buf, "ic_samples,{}", args.samples)?;
        writeln!(buf, "ic_sets,{}", args.sets)?;
        Ok(())
    })?;
    println!(
        "eval: f_corr = {}, ic = {} (within-set stderr {})",
        profile.total(),
        batch.mean,
        batch.per_set[0].stderr
    );
    Ok(())
}

// ------------------------------------------------------------ maximize

#[derive(Args, Debug)]
pub struct MaximizeArgs {
    #[command(flatten)]
    pub graph: GraphArgs,

    /// Seed-set budget.
    #[arg(long)]
    pub k: usize,

    /// corr | ic | both
    #[arg(long, default_value = "both")]
    pub evaluator: String,

    /// Monte Carlo samples for the ic evaluator's bank.
    #[arg(long, default_value_t = DEFAULT_SAMPLE_COUNT)]
    pub samples: usize,

    #[arg(long)]
    pub out: PathBuf,
}

pub fn cmd_maximize(args: MaximizeArgs, threads: Option<usize>) -> Result<()> {
    let g = load_graph(&args.graph)?;
    prepare_out(&args.out)?;
    let mut config = RunConfig::new("maximize", &args.graph, &args.out, threads);
    config.k = Some(args.k);
    config.evaluator = Some(args.evaluator.clone());
    config.samples = Some(args.samples);
    write_config(&args.out, &config)?;

    let run_corr = matches!(args.evaluator.as_str(), "corr" | "both");
    let run_ic = matches!(args.evaluator.as_str(), "ic" | "both");
    if !run_corr && !run_ic {
        bail!("unknown evaluator {:?}; expected corr, ic, or both", args.evaluator);
    }

    let mut timings: Vec<(usize, &str, f64)> = Vec::new();
    let mut emit = |label: &'static str, trace: &GreedyTrace| -> Result<()> {
        write_file(&args.out.join(format!("trace_{label}.csv")), |buf| {
            Ok(write_trace_csv(&g, trace, buf)?)
        })?;
        timings.push((
            args.k,
            label,
            trace.total_elapsed().as_secs_f64() * 1e3,
        ));
        println!(
            "maximize[{label}]: value {} with {} evaluations in {:?}",
            trace.final_value(),
            trace.total_evaluations(),
            trace.total_elapsed()
        );
        Ok(())
    };

    if run_corr {
        let e = CorrEvaluator::new(&g);
        let trace = lazy_greedy(&e, &g, args.k)?;
        emit("corr", &trace)?;
    }
    if run_ic {
        let e = IcBankEvaluator::new(&g, args.samples, args.graph.seed)?;
        let trace = lazy_greedy(&e, &g, args.k)?;
        emit("ic", &trace)?;
    }

    write_file(&args.out.join("timings.csv"), |buf| {
        use std::io::Write;
        writeln!(buf, "k,evaluator,elapsed_ms")?;
        for (k, label, ms) in &timings {
            writeln!(buf, "{k},{label},{ms}")?;
        }
        Ok(())
    })?;
    Ok(())
}

// ------------------------------------------------------------ coupling

#[derive(Args, Debug)]
pub struct CouplingArgs {
    #[command(flatten)]
    pub graph: GraphArgs,

    /// Seed node ids (original dataset ids), comma separated.
    #[arg(long)]
    pub seeds: String,

    /// Also write the single coupling draw at this q.
    #[arg(long)]
    pub q: Option<f64>,

    #[arg(long)]
    pub out: PathBuf,
}

pub fn cmd_coupling(args: CouplingArgs, threads: Option<usize>) -> Result<()> {
    let g = load_graph(&args.graph)?;
    let ids = parse_seed_ids(&args.seeds)?;
    let s = SeedSet::from_original_ids(&g, &ids)?;
    prepare_out(&args.out)?;
    let mut config = RunConfig::new("coupling", &args.graph, &args.out, threads);
    config.seeds = Some(ids);
    config.q = args.q;
    write_config(&args.out, &config)?;

    let prof = influence_profile(&g, &s);
    write_file(&args.out.join("cells.csv"), |buf| {
        Ok(write_cell_report_csv(&g, &prof, buf)?)
    })?;
    write_file(&args.out.join("marginals.csv"), |buf| {
        Ok(write_edge_marginals_csv(&g, &prof, buf)?)
    })?;

    let expected = exact_expected_influence(&g, &prof);
    let max_discrepancy = (0..g.edge_count())
        .map(|idx| {
            (corrmax_core::adversary::edge_marginal(&g, &prof, idx) - g.edges()[idx].p).abs()
        })
        .fold(0.0f64, f64::max);
    write_file(&args.out.join("coupling.csv"), |buf| {
        use std::io::Write;
        writeln!(buf, "metric,value")?;
        writeln!(buf, "expected_influence,{expected}")?;
        writeln!(buf, "f_corr,{}", prof.total())?;
        writeln!(buf, "abs_gap,{}", (expected - prof.total()).abs())?;
        writeln!(buf, "max_marginal_discrepancy,{max_discrepancy}")?;
        Ok(())
    })?;

    if let Some(q) = args.q {
        let draw = draw_coupling(&g, &prof, q)?;
        write_file(&args.out.join("draw.csv"), |buf| {
            Ok(write_coupling_draw_csv(&g, &draw, buf)?)
        })?;
    }
    println!(
        "coupling: expected influence {expected} (f_corr {}), max marginal discrepancy \
         {max_discrepancy}",
        prof.total()
    );
    Ok(())
}

// ----------------------------------------------------------------- poc

#[derive(Args, Debug)]
pub struct PocArgs {
    #[command(flatten)]
    pub graph: GraphArgs,

    #[arg(long)]
    pub k: usize,

    /// exact | greedy
    #[arg(long, default_value = "exact")]
    pub mode: String,

    /// Monte Carlo samples for greedy-mode IC values.
    #[arg(long, default_value_t = DEFAULT_SAMPLE_COUNT)]
    pub samples: usize,

    /// Cap on exhaustively enumerated subsets in exact mode.
    #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_LIMIT as u64)]
    pub budget: u64,

    #[arg(long)]
    pub out: PathBuf,
}

pub fn cmd_poc(args: PocArgs, threads: Option<usize>) -> Result<()> {
    let g = load_graph(&args.graph)?;
    let mode = match args.mode.as_str() {
        "exact" => PocMode::Exact,
        "greedy" => PocMode::Greedy,
        other => bail!("unknown mode {other:?}; expected exact or greedy"),
    };
    prepare_out(&args.out)?;
    let mut config = RunConfig::new("poc", &args.graph, &args.out, threads);
    config.k = Some(args.k);
    config.mode = Some(args.mode.clone());
    config.samples = Some(args.samples);
    config.budget = Some(args.budget);
    write_config(&args.out, &config)?;

    let report = poc_report(
        &g,
        args.k,
        mode,
        IcParams {
            samples: args.samples,
            seed: args.graph.seed,
        },
        args.budget as u128,
    )?;
    write_file(&args.out.join("poc.csv"), |buf| {
        Ok(write_poc_csv(&g, &report, buf)?)
    })?;
    println!(
        "poc: POC = {}, kappa(S_ic) = {}, chain_ok = {:?}",
        report.poc, report.kappa_s_ic, report.chain_ok
    );
    Ok(())
}

// -------------------------------------------------------------- table2

#[derive(Args, Debug)]
pub struct Table2Args {
    #[command(flatten)]
    pub graph: GraphArgs,

    #[arg(long)]
    pub k: usize,

    /// Comma-separated probability models for the rows.
    #[arg(long, default_value = "unif01,trivalency,wcascade")]
    pub models: String,

    /// Monte Carlo samples for the ic greedy bank and estimates.
    #[arg(long, default_value_t = DEFAULT_SAMPLE_COUNT)]
    pub samples: usize,

    /// Dataset label for the first CSV column (defaults to the graph spec).
    #[arg(long)]
    pub dataset_label: Option<String>,

    #[arg(long)]
    pub out: PathBuf,
}

pub fn cmd_table2(args: Table2Args, threads: Option<usize>) -> Result<()> {
    let base = load_graph(&GraphArgs {
        prob_model: None,
        ..args.graph.clone()
    })?;
    if args.graph.prob_model.is_some() {
        bail!("table2 assigns its own models; use --models instead of --prob-model");
    }
    prepare_out(&args.out)?;
    let mut config = RunConfig::new("table2", &args.graph, &args.out, threads);
    config.k = Some(args.k);
    config.samples = Some(args.samples);
    write_config(&args.out, &config)?;

    let label = args.dataset_label.clone().unwrap_or_else(|| args.graph.graph.clone());
    let mut rows = Vec::new();
    for model_spec in args.models.split(',') {
        let model = parse_prob_model(model_spec.trim())?;
        let assigned = assign_probabilities(&base, model, args.graph.seed)?;
        rows.extend(misspec_table_rows(
            &assigned,
            &label,
            &model.label(),
            args.k,
            IcParams {
                samples: args.samples,
                seed: args.graph.seed,
            },
        )?);
    }
    write_file(&args.out.join("table2.csv"), |buf| {
        Ok(write_table_csv(&rows, buf)?)
    })?;
    println!("table2: {} rows written", rows.len());
    Ok(())
}

// ----------------------------------------------------------------- gen

#[derive(Args, Debug)]
pub struct GenArgs {
    /// series:<n> | poctree:<l>,<m> | random:<n>,<m>
    #[arg(long)]
    pub kind: String,

    /// Optional probability model to assign before writing.
    #[arg(long)]
    pub prob_model: Option<String>,

    /// Permit poctree parameters outside the interesting regime.
    #[arg(long, default_value_t = false)]
    pub allow_any_regime: bool,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Output graph CSV path.
    #[arg(long)]
    pub out: PathBuf,
}

pub fn cmd_gen(args: GenArgs, threads: Option<usize>) -> Result<()> {
    let g = if let Some(n) = args.kind.strip_prefix("series:") {
        gen_series(n.trim().parse().context("series:<n> needs an integer")?)?
    } else if let Some(spec) = args.kind.strip_prefix("poctree:") {
        let (l, m) = parse_pair(spec, "poctree:<l>,<m>")?;
        gen_poc_tree(l, m, args.allow_any_regime)?.graph
    } else if let Some(spec) = args.kind.strip_prefix("random:") {
        let (n, m) = parse_pair(spec, "random:<n>,<m>")?;
        gen_random_graph(n, m, args.seed)?
    } else {
        bail!("unknown kind {:?}", args.kind);
    };
    let g = match &args.prob_model {
        Some(spec) => assign_probabilities(&g, parse_prob_model(spec)?, args.seed)?,
        None => g,
    };
    if let Some(parent) = args.out.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    write_file(&args.out, |buf| Ok(write_graph_csv(&g, buf)?))?;

    let config = RunConfig {
        subcommand: "gen".to_string(),
        graph: args.kind.clone(),
        reverse_edges: false,
        prob_model: args.prob_model.clone(),
        seed: args.seed,
        seeds: None,
        k: None,
        evaluator: None,
        samples: None,
        sets: None,
        q: None,
        mode: None,
        budget: None,
        threads,
        out: args.out.display().to_string(),
    };
    let sidecar = args.out.with_extension("config.json");
    fs::write(&sidecar, serde_json::to_string_pretty(&config)? + "\n")?;
    println!(
        "gen: wrote {} ({} nodes, {} edges)",
        args.out.display(),
        g.node_count(),
        g.edge_count()
    );
    Ok(())
}
