#include "robp/instance.hpp"

#include <algorithm>
#include <stdexcept>

namespace robp {

LabeledTree::LabeledTree(std::vector<int> parent) : parent_(std::move(parent)) {
  const int n = num_nodes();
  if (n == 0) throw InvalidInput("tree needs at least one node");
  children_.resize(n);
  for (int v = 0; v < n; ++v) {
    int p = parent_[v];
    if (p == -1) {
      if (root_ != -1) throw InvalidInput("tree has more than one root");
      root_ = v;
    } else if (p < 0 || p >= n || p == v) {
      throw InvalidInput("bad parent pointer at node " + std::to_string(v));
    } else {
      children_[p].push_back(v);
    }
  }
  if (root_ == -1) throw InvalidInput("tree has no root");
  depth_.assign(n, -1);
  std::vector<int> stack{root_};
  depth_[root_] = 0;
  int seen = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int c : children_[u]) {
      depth_[c] = depth_[u] + 1;
      ++seen;
      stack.push_back(c);
    }
  }
  if (seen != n) throw InvalidInput("parent pointers contain a cycle");
}

int LabeledTree::degree(int node) const {
  return static_cast<int>(children_.at(node).size()) + (parent_.at(node) >= 0 ? 1 : 0);
}

std::vector<Edge> LabeledTree::edges() const {
  std::vector<Edge> out;
  for (int v = 0; v < num_nodes(); ++v)
    if (parent_[v] >= 0) out.push_back({parent_[v], v});
  return out;
}

std::vector<int> LabeledTree::path(int a, int b) const {
  std::vector<int> up_a, up_b;
  while (depth_.at(a) > depth_.at(b)) { up_a.push_back(a); a = parent_[a]; }
  while (depth_.at(b) > depth_.at(a)) { up_b.push_back(b); b = parent_[b]; }
  while (a != b) {
    up_a.push_back(a);
    up_b.push_back(b);
    a = parent_[a];
    b = parent_[b];
  }
  up_a.push_back(a);
  up_a.insert(up_a.end(), up_b.rbegin(), up_b.rend());
  return up_a;
}

LabeledTree complete_binary_tree(int r) {
  if (r < 0) throw InvalidInput("tree height must be non-negative");
  if (r > 40) throw InvalidInput("tree height too large to build");
  std::vector<int> parent;
  parent.reserve((std::size_t{1} << (r + 1)) - 1);
  // Preorder: a node, then its left subtree, then its right subtree.
  auto build = [&](auto&& self, int par, int height) -> void {
    int id = static_cast<int>(parent.size());
    parent.push_back(par);
    if (height == 0) return;
    self(self, id, height - 1);
    self(self, id, height - 1);
  };
  build(build, -1, r);
  return LabeledTree(std::move(parent));
}

Graph tree_product(const LabeledTree& t, const Graph& h) {
  const int m = h.num_vertices();
  if (m == 0) throw InvalidInput("pattern graph is empty");
  if (!h.is_connected()) throw InvalidInput("pattern graph must be connected");
  std::vector<Edge> edges;
  const auto pattern = h.edges();
  for (int c = 0; c < t.num_nodes(); ++c)
    for (const Edge& e : pattern) edges.push_back({c * m + e.u, c * m + e.v});
  for (const Edge& te : t.edges())
    for (int l = 0; l < m; ++l) edges.push_back({te.u * m + l, te.v * m + l});
  return Graph(t.num_nodes() * m, edges);
}

std::string FamilyParams::header() const {
  return "k=" + std::to_string(k) + " y=" + std::to_string(y) + " r=" + std::to_string(r) +
         " p=" + std::to_string(p) + " n=" + std::to_string(n);
}

int family_r_threshold(int k) { return 5 * ceil_log2(k); }

FamilyParams family_params(int k, int r, bool allow_small_r) {
  if (k < 2) throw InvalidInput("k must be at least 2");
  if (r < 0) throw InvalidInput("r must be non-negative");
  FamilyParams fp;
  fp.k = k;
  fp.y = (k + 1) % 4;
  fp.r = r;
  const int width = k - fp.y + 1;
  if (width <= 0) throw InvalidInput("k=" + std::to_string(k) + " leaves an empty path (k - y + 1 = 0)");
  fp.p = width / 4;
  fp.path_len = width / 2;
  if (!allow_small_r && r < family_r_threshold(k))
    throw InvalidInput("r=" + std::to_string(r) + " is below the family threshold r >= 5*ceil(log2 k) = " +
                       std::to_string(family_r_threshold(k)) + "; pass allow_small_r to build anyway");
  if (r > 56) throw InvalidInput("r too large: vertex count overflows");
  fp.n = ((std::int64_t{1} << (r + 1)) - 1) * fp.path_len;
  return fp;
}

FamilyInstance hard_family_instance(int k, int r, bool allow_small_r, std::int64_t max_vertices) {
  FamilyParams fp = family_params(k, r, allow_small_r);
  if (fp.n > max_vertices)
    throw CapExceeded("hard family instance: vertex count", static_cast<std::size_t>(fp.n),
                      static_cast<std::size_t>(max_vertices));
  FamilyInstance inst{Graph{}, fp, complete_binary_tree(r), path_graph(fp.path_len)};
  inst.graph = tree_product(inst.tree, inst.pattern);
  return inst;
}

int TreeDecomposition::width() const {
  std::size_t largest = 0;
  for (const auto& b : bags) largest = std::max(largest, b.size());
  return static_cast<int>(largest) - 1;
}

TreeDecomposition canonical_tree_decomposition(const LabeledTree& t, const Graph& h) {
  const int m = h.num_vertices();
  TreeDecomposition td{t, {}};
  td.bags.resize(t.num_nodes());
  for (int c = 0; c < t.num_nodes(); ++c) {
    auto& bag = td.bags[c];
    int par = t.parent(c);
    if (par >= 0)
      for (int l = 0; l < m; ++l) bag.push_back(par * m + l);
    for (int l = 0; l < m; ++l) bag.push_back(c * m + l);
    std::sort(bag.begin(), bag.end());
  }
  return td;
}

std::string TdViolation::describe() const {
  switch (rule) {
    case TdRule::kShape:
      return "shape: bag count differs from tree node count";
    case TdRule::kInvalidVertex:
      return "invalid vertex " + std::to_string(vertex) + " in bag " + std::to_string(node);
    case TdRule::kUnion:
      return "union: vertex " + std::to_string(vertex) + " is in no bag";
    case TdRule::kContainment:
      return "containment: edge {" + std::to_string(edge.u) + "," + std::to_string(edge.v) + "} is in no bag";
    case TdRule::kConnectedness:
      return "connectedness: bags holding vertex " + std::to_string(vertex) + " are not a subtree";
  }
  return "unknown";
}

TdReport validate_tree_decomposition(const Graph& g, const TreeDecomposition& td) {
  TdReport report;
  report.width = td.width();
  if (static_cast<int>(td.bags.size()) != td.tree.num_nodes()) {
    report.violations.push_back({TdRule::kShape});
    return report;
  }
  const int n = g.num_vertices();
  std::vector<std::vector<int>> holders(n);  // vertex -> tree nodes containing it
  std::vector<VertexSet> sorted(td.bags.size());
  for (int t = 0; t < td.tree.num_nodes(); ++t) {
    for (Vertex v : td.bags[t]) {
      if (!g.contains(v)) {
        report.violations.push_back({TdRule::kInvalidVertex, v, {}, t});
        continue;
      }
      sorted[t].push_back(v);
    }
    std::sort(sorted[t].begin(), sorted[t].end());
    sorted[t].erase(std::unique(sorted[t].begin(), sorted[t].end()), sorted[t].end());
    for (Vertex v : sorted[t]) holders[v].push_back(t);
  }
  auto in_bag = [&](int t, Vertex v) { return std::binary_search(sorted[t].begin(), sorted[t].end(), v); };
  for (Vertex v = 0; v < n; ++v)
    if (holders[v].empty()) report.violations.push_back({TdRule::kUnion, v});
  for (const Edge& e : g.edges()) {
    const auto& hu = holders[e.u];
    bool found = std::any_of(hu.begin(), hu.end(), [&](int t) { return in_bag(t, e.v); });
    if (!found) report.violations.push_back({TdRule::kContainment, -1, e});
  }
  // A nonempty node set of a tree induces a subtree iff exactly one member
  // has its parent outside the set.
  for (Vertex v = 0; v < n; ++v) {
    if (holders[v].empty()) continue;
    int tops = 0;
    for (int t : holders[v]) {
      int par = td.tree.parent(t);
      if (par < 0 || !in_bag(par, v)) ++tops;
    }
    if (tops != 1) report.violations.push_back({TdRule::kConnectedness, v});
  }
  return report;
}

CrossMatching cross_matching_finder(const LabeledTree& t, const Graph& h, const PrefixPartition& part, int p) {
  const int m = h.num_vertices();
  const int copies = t.num_nodes();
  if (p < 1) throw InvalidInput("p must be at least 1");
  if (!h.is_connected()) throw InvalidInput("pattern graph must be connected");
  if (part.num_vertices() != copies * m) throw InvalidInput("partition size does not match T(H)");
  if (copies < p) throw InvalidInput("tree has fewer than p nodes");
  if (m < 2 * p) throw InvalidInput("pattern has fewer than 2p vertices");
  const std::size_t need = static_cast<std::size_t>(p) * static_cast<std::size_t>(p);
  const std::size_t first = part.prefix_size();
  const std::size_t second = static_cast<std::size_t>(part.num_vertices()) - first;
  if (first < need) throw InvalidInput("prefix class has fewer than p^2 vertices");
  if (second < need) throw InvalidInput("suffix class has fewer than p^2 vertices");

  auto side = [&](int copy, int label) { return part.in_prefix(copy * m + label); };
  auto count_prefix = [&](int copy) {
    int c = 0;
    for (int l = 0; l < m; ++l) c += side(copy, l) ? 1 : 0;
    return c;
  };

  std::vector<int> mixed;
  for (int c = 0; c < copies; ++c) {
    int k = count_prefix(c);
    if (k != 0 && k != m) mixed.push_back(c);
  }

  CrossMatching out{{}, CrossMatchingBranch::kMixedCopies};
  if (static_cast<int>(mixed.size()) >= p) {
    const auto pattern = h.edges();
    for (int i = 0; i < p; ++i) {
      int c = mixed[i];
      for (const Edge& e : pattern) {
        if (side(c, e.u) != side(c, e.v)) {
          out.matching.push_back({c * m + e.u, c * m + e.v});
          break;
        }
      }
    }
    return out;
  }

  out.branch = CrossMatchingBranch::kPathWalk;
  for (int c1 = 0; c1 < copies; ++c1) {
    int k1 = count_prefix(c1);
    if (k1 != 0 && k1 != m) continue;
    const bool cls = k1 == m;
    int c2 = -1, c2_count = -1;
    for (int c = 0; c < copies; ++c) {
      int other = cls ? m - count_prefix(c) : count_prefix(c);
      if (other > c2_count) { c2 = c; c2_count = other; }
    }
    if (c2_count < p) continue;
    const std::vector<int> route = t.path(c1, c2);
    for (int l = 0; l < m && static_cast<int>(out.matching.size()) < p; ++l) {
      if (side(c2, l) == cls) continue;
      for (std::size_t i = 0; i + 1 < route.size(); ++i) {
        if (side(route[i], l) == cls && side(route[i + 1], l) != cls) {
          out.matching.push_back({route[i] * m + l, route[i + 1] * m + l});
          break;
        }
      }
    }
    return out;
  }
  throw std::logic_error("cross_matching_finder: no copy pair found although preconditions hold");
}

}  // namespace robp
