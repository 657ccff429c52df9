//! Correlation-robust influence evaluation and maximization on directed
//! graphs.
//!
//! Given per-edge activation probabilities but no assumption on how the
//! activations are correlated, the worst-case expected influence of a seed
//! set reduces to shortest-path computations and remains monotone
//! submodular, so greedy selection carries the usual (1 - 1/e) guarantee.
//! This crate implements that evaluation ([`robust`]), the adversarial
//! coupling realizing the worst case ([`adversary`]), independent-cascade
//! baselines ([`ic`]), seed-set optimization ([`maximize`]), and
//! price-of-correlations analysis ([`analysis`]).

pub mod adversary;
pub mod analysis;
pub mod error;
pub mod graph;
pub mod ic;
pub mod maximize;
pub mod oracle;
pub mod rng;
pub mod robust;

pub use adversary::{BreakpointPartition, CouplingDraw};
pub use error::{Error, Result};
pub use graph::{
    DedupPolicy, DegreeConvention, DirectedGraph, Edge, ProbabilityModel, SeedSet, SeedSetStats,
};
pub use ic::{IcEstimate, LiveEdgeSample, SampleBank};
pub use maximize::{EvaluatorKind, GreedyTrace, InfluenceEvaluator};
pub use robust::{InfluenceProfile, PathSet};
