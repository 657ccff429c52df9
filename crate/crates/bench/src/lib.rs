//! Shared instance builders for the benchmark targets.

use corrmax_core::graph::{assign_probabilities, gen_random_graph, DirectedGraph, ProbabilityModel};

/// ~wikivote-shaped instance scaled down for quick iteration.
pub fn medium_graph(p: ProbabilityModel) -> DirectedGraph {
    let g = gen_random_graph(2000, 12_000, 7).unwrap();
    assign_probabilities(&g, p, 7).unwrap()
}

/// Small instance where exact enumeration is feasible.
pub fn tiny_graph() -> DirectedGraph {
    let g = gen_random_graph(12, 18, 3).unwrap();
    assign_probabilities(&g, ProbabilityModel::Uniform01, 3).unwrap()
}
