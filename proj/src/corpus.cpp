#include "robp/corpus.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "robp/errors.hpp"

namespace robp {

namespace {

int pick(Rng& rng, int bound) { return std::uniform_int_distribution<int>(0, bound - 1)(rng); }

std::vector<int> refined_colours(const Graph& g) {
  const int n = g.num_vertices();
  std::vector<int> colour(n);
  for (int v = 0; v < n; ++v) colour[v] = g.degree(v);
  for (int classes = -1;;) {
    std::map<std::pair<int, std::vector<int>>, int> rank;
    std::vector<std::pair<int, std::vector<int>>> sig(n);
    for (int v = 0; v < n; ++v) {
      sig[v].first = colour[v];
      for (Vertex w : g.neighbors(v)) sig[v].second.push_back(colour[w]);
      std::sort(sig[v].second.begin(), sig[v].second.end());
      rank.emplace(sig[v], 0);
    }
    int next = 0;
    for (auto& [key, id] : rank) id = next++;
    for (int v = 0; v < n; ++v) colour[v] = rank[sig[v]];
    if (next == classes) return colour;
    classes = next;
  }
}

std::uint64_t code_of(const Graph& g, const std::vector<int>& position) {
  const int n = g.num_vertices();
  std::uint64_t code = 0;
  for (const Edge& e : g.edges()) {
    int a = position[e.u], b = position[e.v];
    if (a > b) std::swap(a, b);
    // Pair (a, b) with a < b gets bit index by row-major order of the upper triangle.
    const int bit = a * n - a * (a + 1) / 2 + (b - a - 1);
    code |= std::uint64_t{1} << (n * (n - 1) / 2 - 1 - bit);
  }
  return code;
}

}  // namespace

std::uint64_t canonical_code(const Graph& g) {
  const int n = g.num_vertices();
  if (n > 11) throw InvalidInput("canonical_code supports at most 11 vertices");
  const std::vector<int> colour = refined_colours(g);
  std::vector<int> by_colour(n);
  std::iota(by_colour.begin(), by_colour.end(), 0);
  std::stable_sort(by_colour.begin(), by_colour.end(), [&](int a, int b) { return colour[a] < colour[b]; });
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && colour[by_colour[j]] == colour[by_colour[i]]) ++j;
    cells.push_back({i, j});
    i = j;
  }
  std::uint64_t best = ~std::uint64_t{0};
  std::vector<int> position(n);
  // Odometer over permutations within each cell.
  auto recurse = [&](auto&& self, std::size_t c) -> void {
    if (c == cells.size()) {
      for (int i = 0; i < n; ++i) position[by_colour[i]] = i;
      best = std::min(best, code_of(g, position));
      return;
    }
    auto first = by_colour.begin() + cells[c].first;
    auto last = by_colour.begin() + cells[c].second;
    std::sort(first, last);
    do self(self, c + 1);
    while (std::next_permutation(first, last));
  };
  recurse(recurse, 0);
  return best;
}

std::vector<Graph> nonisomorphic_graphs(int n) {
  if (n < 0 || n > 8) throw InvalidInput("nonisomorphic_graphs supports 0..8 vertices");
  std::vector<Graph> level{Graph(0, {})};
  for (int size = 1; size <= n; ++size) {
    std::map<std::uint64_t, Graph> seen;
    for (const Graph& base : level) {
      const std::vector<Edge> old_edges = base.edges();
      for (std::uint32_t mask = 0; mask < (1u << (size - 1)); ++mask) {
        std::vector<Edge> edges = old_edges;
        for (int v = 0; v < size - 1; ++v)
          if (mask >> v & 1u) edges.push_back({v, size - 1});
        Graph g(size, edges);
        seen.emplace(canonical_code(g), std::move(g));
      }
    }
    level.clear();
    for (auto& [code, g] : seen) level.push_back(std::move(g));
  }
  return level;
}

std::vector<Graph> connected_graphs(int n) {
  std::vector<Graph> out;
  for (Graph& g : nonisomorphic_graphs(n))
    if (g.is_connected()) out.push_back(std::move(g));
  return out;
}

std::vector<Graph> connected_corpus(int max_n) {
  std::vector<Graph> out;
  for (int n = 2; n <= max_n; ++n)
    for (Graph& g : connected_graphs(n)) out.push_back(std::move(g));
  return out;
}

Graph random_bounded_degree_graph(int n, int max_degree, double extra_edge_p, Rng& rng) {
  if (n < 2) throw InvalidInput("random_bounded_degree_graph needs at least 2 vertices");
  if (max_degree < 2) throw InvalidInput("random_bounded_degree_graph needs max_degree >= 2");
  std::vector<int> degree(n, 0);
  std::set<Edge> edges;
  for (int v = 1; v < n; ++v) {
    std::vector<int> open;
    for (int u = 0; u < v; ++u)
      if (degree[u] < max_degree) open.push_back(u);
    const int u = open[pick(rng, static_cast<int>(open.size()))];
    edges.insert({u, v});
    ++degree[u];
    ++degree[v];
  }
  std::bernoulli_distribution coin(extra_edge_p);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      if (edges.count({u, v}) || !coin(rng)) continue;
      if (degree[u] >= max_degree || degree[v] >= max_degree) continue;
      edges.insert({u, v});
      ++degree[u];
      ++degree[v];
    }
  const std::vector<Edge> list(edges.begin(), edges.end());
  return Graph(n, list);
}

Nrobp random_nrobp(int num_nodes, int num_vars, int extra_edges, Rng& rng) {
  if (num_nodes < 2) throw InvalidInput("random_nrobp needs at least 2 nodes");
  if (num_vars < 0 || num_vars > 62) throw InvalidInput("random_nrobp supports 0..62 variables");
  const int leaf = num_nodes - 1;
  std::vector<std::pair<int, int>> arcs;
  // Every inner node gets a predecessor and a successor, so all nodes lie on
  // a root-leaf path.
  for (int v = 1; v < leaf; ++v) arcs.push_back({pick(rng, v), v});
  for (int v = 1; v < leaf; ++v) arcs.push_back({v, v + 1 + pick(rng, leaf - v)});
  arcs.push_back({0, 1 + pick(rng, leaf)});
  for (int i = 0; i < extra_edges; ++i) {
    const int a = pick(rng, leaf);
    arcs.push_back({a, a + 1 + pick(rng, leaf - a)});
  }
  std::sort(arcs.begin(), arcs.end());

  std::vector<std::uint64_t> seen(num_nodes, 0);
  std::vector<BpEdge> edges;
  for (auto [tail, head] : arcs) {
    std::vector<int> fresh;
    for (int v = 0; v < num_vars; ++v)
      if (!(seen[tail] >> v & 1u)) fresh.push_back(v);
    BpEdge e{tail, head, std::nullopt};
    std::uint64_t read = seen[tail];
    if (!fresh.empty() && pick(rng, 4) != 0) {
      const int v = fresh[pick(rng, static_cast<int>(fresh.size()))];
      e.label = Literal{v, pick(rng, 2) == 0};
      read |= std::uint64_t{1} << v;
    }
    seen[head] |= read;
    edges.push_back(e);
  }
  return Nrobp(num_nodes, num_vars, 0, leaf, std::move(edges));
}

}  // namespace robp
