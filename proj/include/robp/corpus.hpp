#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "robp/bp.hpp"
#include "robp/graph.hpp"

namespace robp {

using Rng = std::mt19937_64;

/// Canonical edge code of g: the lexicographically least upper-triangle bit
/// string over relabellings that respect the colour-refinement partition.
/// Equal codes iff isomorphic. Requires n <= 11.
std::uint64_t canonical_code(const Graph& g);

/// One representative per isomorphism class of graphs on n vertices, sorted
/// by canonical code. Requires n <= 8.
std::vector<Graph> nonisomorphic_graphs(int n);

/// Connected classes on exactly n vertices.
std::vector<Graph> connected_graphs(int n);

/// Connected classes on 2..max_n vertices, by size then canonical code.
std::vector<Graph> connected_corpus(int max_n);

/// Connected graph on n >= 2 vertices with maximum degree <= max_degree
/// (at least 2): a random tree plus each remaining admissible pair with
/// probability extra_edge_p.
Graph random_bounded_degree_graph(int n, int max_degree, double extra_edge_p, Rng& rng);

/// Read-once program with nodes in topological order, root 0 and leaf
/// num_nodes - 1. Each edge reads a random variable not yet seen on any
/// path into its tail, or is unlabelled when none is left or with
/// probability 1/4. Always passes validate_nrobp.
Nrobp random_nrobp(int num_nodes, int num_vars, int extra_edges, Rng& rng);

}  // namespace robp
