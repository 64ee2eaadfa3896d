#pragma once

// Brute-force reference implementations used only by the tests. Each works
// from definitions and shares no code with the library algorithms.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "robp/bp.hpp"
#include "robp/graph.hpp"

namespace oracle {

using robp::Edge;
using robp::Graph;
using robp::Vertex;

inline bool in_mask(std::uint64_t mask, int v) { return (mask >> v & 1u) != 0; }

inline std::vector<Edge> crossing(const Graph& g, std::uint64_t prefix) {
  std::vector<Edge> out;
  for (const Edge& e : g.edges())
    if (in_mask(prefix, e.u) != in_mask(prefix, e.v)) out.push_back(e);
  return out;
}

inline bool adjacent_or_share(const Graph& g, Vertex a, Vertex b) {
  if (a == b || g.has_edge(a, b)) return true;
  for (Vertex w = 0; w < g.num_vertices(); ++w)
    if (g.has_edge(a, w) && g.has_edge(b, w)) return true;
  return false;
}

// Largest subset of the cross edges forming a (distant) matching, by
// trying every subset.
inline int best_subset(const Graph& g, std::uint64_t prefix, bool distant) {
  const auto edges = crossing(g, prefix);
  const std::size_t m = edges.size();
  int best = 0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << m); ++s) {
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i)
      for (std::size_t j = i + 1; j < m && ok; ++j) {
        if (!in_mask(s, static_cast<int>(i)) || !in_mask(s, static_cast<int>(j))) continue;
        const Edge a = edges[i], b = edges[j];
        for (Vertex x : {a.u, a.v})
          for (Vertex y : {b.u, b.v}) {
            if (x == y) ok = false;
            if (distant && adjacent_or_share(g, x, y)) ok = false;
          }
      }
    if (ok) best = std::max(best, std::popcount(s));
  }
  return best;
}

inline int cut_matching(const Graph& g, std::uint64_t prefix) { return best_subset(g, prefix, false); }
inline int cut_distant_matching(const Graph& g, std::uint64_t prefix) { return best_subset(g, prefix, true); }

// Maximum cross matching by trying, for each prefix vertex in turn, to leave
// it unmatched or match it to any free suffix neighbour.
inline int cut_matching_recursive(const Graph& g, std::uint64_t prefix) {
  const int n = g.num_vertices();
  auto go = [&](auto&& self, int v, std::uint64_t used) -> int {
    while (v < n && !in_mask(prefix, v)) ++v;
    if (v == n) return 0;
    int best = self(self, v + 1, used);
    for (Vertex w : g.neighbors(v))
      if (!in_mask(prefix, w) && !in_mask(used, w))
        best = std::max(best, 1 + self(self, v + 1, used | std::uint64_t{1} << w));
    return best;
  };
  return go(go, 0, 0);
}

// Minimum over all vertex orders of the largest prefix cut value.
template <typename Cut>
int width_by_permutations(const Graph& g, Cut cut) {
  const int n = g.num_vertices();
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  int best = n;
  do {
    int w = 0;
    std::uint64_t prefix = 0;
    for (int i = 0; i + 1 < n; ++i) {
      prefix |= std::uint64_t{1} << order[i];
      w = std::max(w, cut(g, prefix));
    }
    best = std::min(best, w);
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

inline int mw(const Graph& g) { return width_by_permutations(g, cut_matching); }
inline int dmw(const Graph& g) { return width_by_permutations(g, cut_distant_matching); }

// Truth table of phi(g): masks with no edge having both ends false.
inline std::set<std::uint64_t> phi_models(const Graph& g) {
  std::set<std::uint64_t> out;
  const int n = g.num_vertices();
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    bool ok = true;
    for (const Edge& e : g.edges()) ok = ok && (in_mask(m, e.u) || in_mask(m, e.v));
    if (ok) out.insert(m);
  }
  return out;
}

// Satisfying set of a program by enumerating every root-leaf path and every
// extension of its partial assignment.
inline std::set<std::uint64_t> program_models(const robp::Nrobp& z) {
  std::set<std::uint64_t> out;
  const int n = z.num_vars();
  std::vector<int> path;
  auto walk = [&](auto&& self, int node, std::uint64_t pos, std::uint64_t neg) -> void {
    if (pos & neg) return;
    if (node == z.leaf()) {
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m)
        if ((m & pos) == pos && (m & neg) == 0) out.insert(m);
      return;
    }
    for (int id : z.out_edges(node)) {
      const auto& e = z.edge(id);
      std::uint64_t p = pos, q = neg;
      if (e.label) (e.label->positive ? p : q) |= std::uint64_t{1} << e.label->var;
      self(self, e.head, p, q);
    }
  };
  walk(walk, z.root(), 0, 0);
  return out;
}

inline std::set<std::uint64_t> as_set(const robp::AssignmentSet& s) {
  return {s.masks().begin(), s.masks().end()};
}

}  // namespace oracle
