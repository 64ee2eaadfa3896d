#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "robp/errors.hpp"
#include "robp/graph.hpp"
#include "robp/rational.hpp"

namespace robp {

/// Split of V(G) into a prefix V1 and the complementary suffix V2.
class PrefixPartition {
 public:
  /// Throws InvalidInput on out-of-range or repeated prefix vertices.
  PrefixPartition(int num_vertices, std::span<const Vertex> prefix);
  static PrefixPartition from_mask(int num_vertices, std::uint64_t prefix_mask);

  int num_vertices() const { return static_cast<int>(in_prefix_.size()); }
  bool in_prefix(Vertex v) const { return in_prefix_.at(v) != 0; }
  std::size_t prefix_size() const { return prefix_size_; }
  VertexSet prefix() const;
  VertexSet suffix() const;

 private:
  std::vector<char> in_prefix_;
  std::size_t prefix_size_ = 0;
};

struct WidthResult {
  int value = 0;
  std::vector<Vertex> witness_order;
  /// Cut value of each proper prefix of witness_order (lengths 1..n-1).
  std::vector<int> witness_cuts;
};

/// Edges of g with exactly one end in the prefix.
std::vector<Edge> cross_edges(const Graph& g, const PrefixPartition& part);

/// Maximum matching among cross edges, by augmenting paths. Each returned
/// edge has its prefix endpoint first.
Matching max_cut_matching(const Graph& g, const PrefixPartition& part);
int cut_matching_size(const Graph& g, const PrefixPartition& part);

/// Maximum distant matching among cross edges by branch and bound. Throws
/// CapExceeded when the cross-edge count exceeds cross_edge_cap (at most 64).
Matching max_cut_distant_matching(const Graph& g, const PrefixPartition& part,
                                  std::size_t cross_edge_cap = Caps{}.cross_edges);
int cut_distant_matching_size(const Graph& g, const PrefixPartition& part,
                              std::size_t cross_edge_cap = Caps{}.cross_edges);

/// mw(G) by dynamic programming over vertex subsets.
WidthResult mw_exact(const Graph& g, std::size_t subset_cap = Caps{}.subset);
/// dmw(G) by the same recurrence with the distant cut function.
WidthResult dmw_exact(const Graph& g, std::size_t subset_cap = Caps{}.subset,
                      std::size_t cross_edge_cap = Caps{}.cross_edges);

/// 2c^2 + 2c + 1.
int distant_factor(int max_degree);

/// Scans m in order, keeping each edge distant from all edges kept so far.
/// Throws InvalidMatching if m is not a matching of g.
Matching greedy_distant_extraction(const Graph& g, std::span<const Edge> m);

/// Smallest c with 2^c >= p, for p >= 1.
int ceil_log2(std::int64_t p);

/// (r + 1 - ceil(log2 p)) * p / 2. Requires p >= 1 and r >= ceil(log2 p).
Rational mw_structural_lower_bound(int r, int p);

}  // namespace robp
