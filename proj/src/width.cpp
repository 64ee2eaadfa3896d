#include "robp/width.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>
#include <string>

namespace robp {

PrefixPartition::PrefixPartition(int num_vertices, std::span<const Vertex> prefix)
    : in_prefix_(num_vertices, 0) {
  for (Vertex v : prefix) {
    if (v < 0 || v >= num_vertices) throw InvalidInput("prefix vertex " + std::to_string(v) + " out of range");
    if (in_prefix_[v]) throw InvalidInput("prefix repeats vertex " + std::to_string(v));
    in_prefix_[v] = 1;
  }
  prefix_size_ = prefix.size();
}

PrefixPartition PrefixPartition::from_mask(int num_vertices, std::uint64_t prefix_mask) {
  VertexSet prefix;
  for (Vertex v = 0; v < num_vertices && v < 64; ++v)
    if ((prefix_mask >> v) & 1u) prefix.push_back(v);
  return PrefixPartition(num_vertices, prefix);
}

VertexSet PrefixPartition::prefix() const {
  VertexSet out;
  for (Vertex v = 0; v < num_vertices(); ++v)
    if (in_prefix_[v]) out.push_back(v);
  return out;
}

VertexSet PrefixPartition::suffix() const {
  VertexSet out;
  for (Vertex v = 0; v < num_vertices(); ++v)
    if (!in_prefix_[v]) out.push_back(v);
  return out;
}

namespace {

void require_same_size(const Graph& g, const PrefixPartition& part) {
  if (part.num_vertices() != g.num_vertices())
    throw InvalidInput("partition covers " + std::to_string(part.num_vertices()) +
                       " vertices, graph has " + std::to_string(g.num_vertices()));
}

// Kuhn's augmenting-path matching from prefix vertices into the suffix.
class CutMatcher {
 public:
  CutMatcher(const Graph& g, const PrefixPartition& part)
      : g_(g), part_(part), match_of_(g.num_vertices(), -1), stamp_(g.num_vertices(), 0) {}

  Matching run() {
    for (Vertex u = 0; u < g_.num_vertices(); ++u) {
      if (!part_.in_prefix(u)) continue;
      ++round_;
      augment(u);
    }
    Matching m;
    for (Vertex v = 0; v < g_.num_vertices(); ++v)
      if (!part_.in_prefix(v) && match_of_[v] >= 0) m.push_back({match_of_[v], v});
    std::sort(m.begin(), m.end());
    return m;
  }

 private:
  bool augment(Vertex u) {
    for (Vertex v : g_.neighbors(u)) {
      if (part_.in_prefix(v) || stamp_[v] == round_) continue;
      stamp_[v] = round_;
      if (match_of_[v] < 0 || augment(match_of_[v])) {
        match_of_[v] = u;
        return true;
      }
    }
    return false;
  }

  const Graph& g_;
  const PrefixPartition& part_;
  std::vector<Vertex> match_of_;  // suffix vertex -> prefix partner
  std::vector<int> stamp_;
  int round_ = 0;
};

// Maximum independent set in the edge-conflict graph, edges pre-sorted.
class DistantSearch {
 public:
  DistantSearch(const Graph& g, std::vector<Edge> edges) : edges_(std::move(edges)) {
    conflict_.assign(edges_.size(), 0);
    for (std::size_t i = 0; i < edges_.size(); ++i)
      for (std::size_t j = i + 1; j < edges_.size(); ++j)
        if (!edges_are_distant(g, edges_[i], edges_[j])) {
          conflict_[i] |= std::uint64_t{1} << j;
          conflict_[j] |= std::uint64_t{1} << i;
        }
  }

  Matching run() {
    std::uint64_t all = edges_.size() == 64 ? ~std::uint64_t{0}
                                            : (std::uint64_t{1} << edges_.size()) - 1;
    search(all, 0, 0);
    Matching m;
    for (std::size_t i = 0; i < edges_.size(); ++i)
      if ((best_set_ >> i) & 1u) m.push_back(edges_[i]);
    return m;
  }

 private:
  void search(std::uint64_t candidates, std::uint64_t chosen, int size) {
    if (size + std::popcount(candidates) <= best_) return;
    if (candidates == 0) {
      best_ = size;
      best_set_ = chosen;
      return;
    }
    int i = std::countr_zero(candidates);
    std::uint64_t bit = std::uint64_t{1} << i;
    search(candidates & ~bit & ~conflict_[i], chosen | bit, size + 1);
    search(candidates & ~bit, chosen, size);
  }

  std::vector<Edge> edges_;
  std::vector<std::uint64_t> conflict_;
  int best_ = 0;
  std::uint64_t best_set_ = 0;
};

using CutFn = std::function<int(const PrefixPartition&)>;

WidthResult subset_width(const Graph& g, std::size_t subset_cap, const CutFn& cut) {
  const int n = g.num_vertices();
  const std::size_t limit = std::min<std::size_t>(subset_cap, 30);
  if (static_cast<std::size_t>(n) > limit) throw CapExceeded("subset DP: vertex count", n, limit);

  const std::uint32_t full = n == 0 ? 0u : static_cast<std::uint32_t>((std::uint64_t{1} << n) - 1);
  std::vector<std::uint8_t> cut_of(std::size_t{full} + 1);
  std::vector<std::uint8_t> best(std::size_t{full} + 1);
  for (std::uint32_t s = 0; s <= full; ++s) {
    cut_of[s] = static_cast<std::uint8_t>(cut(PrefixPartition::from_mask(n, s)));
    int inner = s == 0 ? 0 : std::numeric_limits<int>::max();
    for (std::uint32_t rest = s; rest != 0; rest &= rest - 1) {
      std::uint32_t bit = rest & (~rest + 1);
      inner = std::min<int>(inner, best[s ^ bit]);
    }
    best[s] = static_cast<std::uint8_t>(std::max<int>(cut_of[s], inner));
    if (s == full) break;
  }

  WidthResult result;
  result.value = best[full];
  std::vector<Vertex> reversed;
  for (std::uint32_t s = full; s != 0;) {
    Vertex pick = -1;
    for (Vertex v = 0; v < n; ++v) {
      std::uint32_t bit = 1u << v;
      if ((s & bit) && (pick < 0 || best[s ^ bit] < best[s ^ (1u << pick)])) pick = v;
    }
    reversed.push_back(pick);
    s ^= 1u << pick;
  }
  result.witness_order.assign(reversed.rbegin(), reversed.rend());
  std::uint32_t prefix = 0;
  for (int i = 0; i + 1 < n; ++i) {
    prefix |= 1u << result.witness_order[i];
    result.witness_cuts.push_back(cut_of[prefix]);
  }
  return result;
}

}  // namespace

std::vector<Edge> cross_edges(const Graph& g, const PrefixPartition& part) {
  require_same_size(g, part);
  std::vector<Edge> out;
  for (const Edge& e : g.edges())
    if (part.in_prefix(e.u) != part.in_prefix(e.v)) out.push_back(e);
  return out;
}

Matching max_cut_matching(const Graph& g, const PrefixPartition& part) {
  require_same_size(g, part);
  return CutMatcher(g, part).run();
}

int cut_matching_size(const Graph& g, const PrefixPartition& part) {
  return static_cast<int>(max_cut_matching(g, part).size());
}

Matching max_cut_distant_matching(const Graph& g, const PrefixPartition& part, std::size_t cross_edge_cap) {
  std::vector<Edge> edges = cross_edges(g, part);
  const std::size_t limit = std::min<std::size_t>(cross_edge_cap, 64);
  if (edges.size() > limit) throw CapExceeded("distant cut matching: cross edges", edges.size(), limit);
  std::stable_sort(edges.begin(), edges.end(), [&](const Edge& a, const Edge& b) {
    int da = g.degree(a.u) + g.degree(a.v);
    int db = g.degree(b.u) + g.degree(b.v);
    if (da != db) return da < db;
    return a < b;
  });
  return DistantSearch(g, std::move(edges)).run();
}

int cut_distant_matching_size(const Graph& g, const PrefixPartition& part, std::size_t cross_edge_cap) {
  return static_cast<int>(max_cut_distant_matching(g, part, cross_edge_cap).size());
}

WidthResult mw_exact(const Graph& g, std::size_t subset_cap) {
  return subset_width(g, subset_cap, [&](const PrefixPartition& p) { return cut_matching_size(g, p); });
}

WidthResult dmw_exact(const Graph& g, std::size_t subset_cap, std::size_t cross_edge_cap) {
  return subset_width(g, subset_cap,
                      [&](const PrefixPartition& p) { return cut_distant_matching_size(g, p, cross_edge_cap); });
}

int distant_factor(int max_degree) { return 2 * max_degree * max_degree + 2 * max_degree + 1; }

Matching greedy_distant_extraction(const Graph& g, std::span<const Edge> m) {
  require_matching(g, m);
  Matching kept;
  for (const Edge& e : m) {
    bool ok = std::all_of(kept.begin(), kept.end(), [&](const Edge& k) { return edges_are_distant(g, k, e); });
    if (ok) kept.push_back(e);
  }
  return kept;
}

int ceil_log2(std::int64_t p) {
  if (p < 1) throw InvalidInput("ceil_log2 needs p >= 1");
  int c = 0;
  while ((std::int64_t{1} << c) < p) ++c;
  return c;
}

Rational mw_structural_lower_bound(int r, int p) {
  if (p < 1) throw InvalidInput("structural bound needs p >= 1");
  int lg = ceil_log2(p);
  if (r < lg)
    throw InvalidInput("structural bound needs r >= ceil(log2 p) = " + std::to_string(lg) + ", got r = " +
                       std::to_string(r));
  return Rational(static_cast<std::int64_t>(r + 1 - lg) * p, 2);
}

}  // namespace robp
