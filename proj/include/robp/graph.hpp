#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "robp/errors.hpp"

namespace robp {

using Vertex = int;
using VertexSet = std::vector<Vertex>;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  // Same edge with endpoints in ascending order.
  Edge normalized() const { return u <= v ? Edge{u, v} : Edge{v, u}; }
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

using Matching = std::vector<Edge>;

/// Undirected simple graph on vertices 0..n-1 stored as sorted adjacency
/// lists. Immutable after construction.
class Graph {
 public:
  Graph() = default;
  /// Throws InvalidInput on self-loops, parallel edges or out-of-range ids.
  Graph(int num_vertices, std::span<const Edge> edges);

  int num_vertices() const { return static_cast<int>(adjacency_.size()); }
  std::size_t num_edges() const { return num_edges_; }
  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_.at(v); }
  int degree(Vertex v) const { return static_cast<int>(adjacency_.at(v).size()); }
  int max_degree() const;
  bool has_edge(Vertex u, Vertex v) const;
  bool share_neighbor(Vertex u, Vertex v) const;
  /// u == v, adjacent, or with a common neighbour.
  bool within_distance_two(Vertex u, Vertex v) const;
  bool contains(Vertex v) const { return v >= 0 && v < num_vertices(); }

  /// All edges with u < v, lexicographically sorted.
  std::vector<Edge> edges() const;
  std::optional<Vertex> first_isolated() const;
  bool is_connected() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::vector<Vertex>> adjacency_;
  std::size_t num_edges_ = 0;
};

Graph complete_graph(int n);
Graph cycle_graph(int n);
Graph path_graph(int n);

/// Distant independent set: independent, and no two members share a
/// neighbour. Throws InvalidInput on out-of-range ids.
bool is_dis(const Graph& g, std::span<const Vertex> s);

enum class MatchingDefect { kNonEdge, kSharedEndpoint };

class InvalidMatching : public InvalidInput {
 public:
  InvalidMatching(MatchingDefect defect, Edge edge, const std::string& what)
      : InvalidInput(what), defect_(defect), edge_(edge) {}
  MatchingDefect defect() const noexcept { return defect_; }
  Edge edge() const noexcept { return edge_; }

 private:
  MatchingDefect defect_;
  Edge edge_;
};

/// Throws InvalidMatching if m has a non-edge of g or two edges sharing an
/// endpoint.
void require_matching(const Graph& g, std::span<const Edge> m);

/// True iff no two endpoints of distinct edges of m are equal, adjacent, or
/// have a common neighbour. Only valid on pairwise-disjoint edges.
bool edges_are_distant(const Graph& g, Edge a, Edge b);

/// Requires m to be a matching of g (see require_matching).
bool is_distant_matching(const Graph& g, std::span<const Edge> m);

}  // namespace robp
