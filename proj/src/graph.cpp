#include "robp/graph.hpp"

#include <algorithm>
#include <string>

namespace robp {

namespace {

std::string edge_str(Edge e) {
  return "{" + std::to_string(e.u) + "," + std::to_string(e.v) + "}";
}

}  // namespace

Graph::Graph(int num_vertices, std::span<const Edge> edges) {
  if (num_vertices < 0) throw InvalidInput("negative vertex count");
  adjacency_.resize(num_vertices);
  for (const Edge& e : edges) {
    if (!contains(e.u) || !contains(e.v))
      throw InvalidInput("edge " + edge_str(e) + " has an out-of-range vertex");
    if (e.u == e.v) throw InvalidInput("self-loop at vertex " + std::to_string(e.u));
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
  }
  for (auto& list : adjacency_) {
    std::sort(list.begin(), list.end());
    if (std::adjacent_find(list.begin(), list.end()) != list.end())
      throw InvalidInput("parallel edge in input");
  }
  num_edges_ = edges.size();
}

int Graph::max_degree() const {
  int best = 0;
  for (const auto& list : adjacency_) best = std::max(best, static_cast<int>(list.size()));
  return best;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (!contains(u) || !contains(v)) return false;
  const auto& list = adjacency_[u];
  return std::binary_search(list.begin(), list.end(), v);
}

bool Graph::share_neighbor(Vertex u, Vertex v) const {
  const auto& a = adjacency_.at(u);
  const auto& b = adjacency_.at(v);
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i; else ++j;
  }
  return false;
}

bool Graph::within_distance_two(Vertex u, Vertex v) const {
  return u == v || has_edge(u, v) || share_neighbor(u, v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges_);
  for (Vertex u = 0; u < num_vertices(); ++u)
    for (Vertex v : adjacency_[u])
      if (u < v) out.push_back({u, v});
  return out;
}

std::optional<Vertex> Graph::first_isolated() const {
  for (Vertex v = 0; v < num_vertices(); ++v)
    if (adjacency_[v].empty()) return v;
  return std::nullopt;
}

bool Graph::is_connected() const {
  if (num_vertices() == 0) return true;
  std::vector<char> seen(num_vertices(), 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    Vertex u = stack.back();
    stack.pop_back();
    for (Vertex w : adjacency_[u]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == num_vertices();
}

Graph complete_graph(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.push_back({i, j});
  return Graph(n, e);
}

Graph cycle_graph(int n) {
  if (n < 3) throw InvalidInput("cycle needs at least 3 vertices");
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
  return Graph(n, e);
}

Graph path_graph(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return Graph(n, e);
}

bool is_dis(const Graph& g, std::span<const Vertex> s) {
  for (Vertex v : s)
    if (!g.contains(v)) throw InvalidInput("vertex " + std::to_string(v) + " out of range");
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (g.within_distance_two(s[i], s[j])) return false;
  return true;
}

void require_matching(const Graph& g, std::span<const Edge> m) {
  for (const Edge& e : m)
    if (!g.has_edge(e.u, e.v))
      throw InvalidMatching(MatchingDefect::kNonEdge, e, "not an edge of the graph: " + edge_str(e));
  std::vector<Vertex> ends;
  for (const Edge& e : m) {
    ends.push_back(e.u);
    ends.push_back(e.v);
  }
  std::sort(ends.begin(), ends.end());
  auto dup = std::adjacent_find(ends.begin(), ends.end());
  if (dup != ends.end()) {
    Edge culprit{};
    for (const Edge& e : m)
      if (e.u == *dup || e.v == *dup) culprit = e;
    throw InvalidMatching(MatchingDefect::kSharedEndpoint, culprit,
                          "edges share endpoint " + std::to_string(*dup));
  }
}

bool edges_are_distant(const Graph& g, Edge a, Edge b) {
  for (Vertex x : {a.u, a.v})
    for (Vertex y : {b.u, b.v})
      if (g.within_distance_two(x, y)) return false;
  return true;
}

bool is_distant_matching(const Graph& g, std::span<const Edge> m) {
  require_matching(g, m);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (!edges_are_distant(g, m[i], m[j])) return false;
  return true;
}

}  // namespace robp
