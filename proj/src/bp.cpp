#include "robp/bp.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <tuple>

#include <boost/dynamic_bitset.hpp>

namespace robp {

using VarBits = boost::dynamic_bitset<>;

Nrobp::Nrobp(int num_nodes, int num_vars, int root, int leaf, std::vector<BpEdge> edges)
    : num_nodes_(num_nodes), num_vars_(num_vars), root_(root), leaf_(leaf), edges_(std::move(edges)) {
  if (num_nodes <= 0) throw InvalidInput("branching program needs at least one node");
  if (num_vars < 0) throw InvalidInput("negative variable count");
  if (root < 0 || root >= num_nodes || leaf < 0 || leaf >= num_nodes)
    throw InvalidInput("root or leaf id out of range");
  out_.resize(num_nodes);
  in_.resize(num_nodes);
  for (int id = 0; id < static_cast<int>(edges_.size()); ++id) {
    const BpEdge& e = edges_[id];
    if (e.tail < 0 || e.tail >= num_nodes || e.head < 0 || e.head >= num_nodes)
      throw InvalidInput("edge " + std::to_string(id) + " has an out-of-range endpoint");
    out_[e.tail].push_back(id);
    in_[e.head].push_back(id);
  }
}

std::optional<std::vector<int>> topological_order(const Nrobp& z) {
  std::vector<int> indeg(z.num_nodes());
  for (const BpEdge& e : z.edges()) ++indeg[e.head];
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int v = 0; v < z.num_nodes(); ++v)
    if (indeg[v] == 0) ready.push(v);
  std::vector<int> order;
  order.reserve(z.num_nodes());
  while (!ready.empty()) {
    int v = ready.top();
    ready.pop();
    order.push_back(v);
    for (int id : z.out_edges(v))
      if (--indeg[z.edge(id).head] == 0) ready.push(z.edge(id).head);
  }
  if (static_cast<int>(order.size()) != z.num_nodes()) return std::nullopt;
  return order;
}

Nrobp renumber_topologically(const Nrobp& z) {
  const auto order = topological_order(z);
  if (!order) throw InvalidInput("program has a cycle");
  std::vector<int> rename(z.num_nodes());
  for (int i = 0; i < z.num_nodes(); ++i) rename[(*order)[i]] = i;
  std::vector<BpEdge> edges;
  edges.reserve(z.size());
  for (const BpEdge& e : z.edges()) edges.push_back({rename[e.tail], rename[e.head], e.label});
  auto key = [](const BpEdge& e) {
    int code = e.label ? 2 * e.label->var + (e.label->positive ? 0 : 1) : -1;
    return std::tuple(e.tail, e.head, code);
  };
  std::stable_sort(edges.begin(), edges.end(), [&](const BpEdge& a, const BpEdge& b) { return key(a) < key(b); });
  return Nrobp(z.num_nodes(), z.num_vars(), rename[z.root()], rename[z.leaf()], std::move(edges));
}

std::string BpViolation::describe() const {
  switch (rule) {
    case BpRule::kLabelRange: return "label variable out of range on an edge leaving node " + std::to_string(node);
    case BpRule::kRootIsLeaf: return "root and leaf coincide";
    case BpRule::kCycle: return "directed cycle";
    case BpRule::kRootNotSource: return "root has incoming edges";
    case BpRule::kLeafNotSink: return "leaf has outgoing edges";
    case BpRule::kExtraSource: return "node " + std::to_string(node) + " is a second source";
    case BpRule::kExtraSink: return "node " + std::to_string(node) + " is a second sink";
    case BpRule::kDisconnected: return "node " + std::to_string(node) + " is disconnected from the root";
    case BpRule::kReadOnce: {
      std::string s = "variable x" + std::to_string(var) + " read twice along edges";
      for (int id : witness_path) s += " " + std::to_string(id);
      return s;
    }
  }
  return "unknown";
}

namespace {

// Witness for a path carrying two edges labelled with x, or empty.
std::vector<int> read_twice_witness(const Nrobp& z, Var x) {
  std::vector<int> labelled;
  for (int id = 0; id < static_cast<int>(z.size()); ++id)
    if (z.edge(id).label && z.edge(id).label->var == x) labelled.push_back(id);
  if (labelled.size() < 2) return {};
  // Multi-source BFS from the heads of x-edges; via[v] is the edge used to
  // reach v, or -(1 + start edge) at a start node.
  std::vector<int> via(z.num_nodes(), 0);
  std::vector<char> seen(z.num_nodes(), 0);
  std::deque<int> queue;
  for (int id : labelled) {
    int h = z.edge(id).head;
    if (!seen[h]) {
      seen[h] = 1;
      via[h] = -(1 + id);
      queue.push_back(h);
    }
  }
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int id : z.out_edges(v)) {
      const BpEdge& e = z.edge(id);
      if (e.label && e.label->var == x) {
        std::vector<int> path{id};
        int cur = v;
        while (via[cur] >= 0) {
          path.push_back(via[cur]);
          cur = z.edge(via[cur]).tail;
        }
        path.push_back(-via[cur] - 1);
        std::reverse(path.begin(), path.end());
        return path;
      }
      if (!seen[e.head]) {
        seen[e.head] = 1;
        via[e.head] = id;
        queue.push_back(e.head);
      }
    }
  }
  return {};
}

VarBits label_bits(const BpEdge& e, int num_vars) {
  VarBits b(num_vars);
  if (e.label) b.set(e.label->var);
  return b;
}

}  // namespace

BpReport validate_nrobp(const Nrobp& z) {
  BpReport report;
  auto add = [&](BpRule rule, int node = -1) { report.violations.push_back({rule, node, -1, {}}); };
  bool labels_ok = true;
  for (const BpEdge& e : z.edges())
    if (e.label && (e.label->var < 0 || e.label->var >= z.num_vars())) {
      add(BpRule::kLabelRange, e.tail);
      labels_ok = false;
    }
  if (z.root() == z.leaf()) add(BpRule::kRootIsLeaf);
  const auto order = topological_order(z);
  if (!order) add(BpRule::kCycle);
  if (!z.in_edges(z.root()).empty()) add(BpRule::kRootNotSource);
  if (!z.out_edges(z.leaf()).empty()) add(BpRule::kLeafNotSink);
  for (int v = 0; v < z.num_nodes(); ++v) {
    if (v != z.root() && z.in_edges(v).empty()) add(BpRule::kExtraSource, v);
    if (v != z.leaf() && z.out_edges(v).empty()) add(BpRule::kExtraSink, v);
  }
  std::vector<char> seen(z.num_nodes(), 0);
  std::vector<int> stack{z.root()};
  seen[z.root()] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    auto visit = [&](int w) {
      if (!seen[w]) { seen[w] = 1; stack.push_back(w); }
    };
    for (int id : z.out_edges(v)) visit(z.edge(id).head);
    for (int id : z.in_edges(v)) visit(z.edge(id).tail);
  }
  for (int v = 0; v < z.num_nodes(); ++v)
    if (!seen[v]) add(BpRule::kDisconnected, v);
  if (order && labels_ok) {
    for (Var x = 0; x < z.num_vars(); ++x) {
      auto path = read_twice_witness(z, x);
      if (!path.empty()) report.violations.push_back({BpRule::kReadOnce, -1, x, std::move(path)});
    }
  }
  return report;
}

void require_valid(const Nrobp& z) {
  BpReport r = validate_nrobp(z);
  if (!r.ok()) throw InvalidInput("invalid NROBP: " + r.violations.front().describe());
}

namespace {

// Variable set read on root paths to each node; nullopt if two paths
// disagree somewhere.
std::optional<std::vector<VarBits>> path_var_sets(const Nrobp& z, const std::vector<int>& order) {
  std::vector<VarBits> sets(z.num_nodes());
  std::vector<char> known(z.num_nodes(), 0);
  sets[z.root()] = VarBits(z.num_vars());
  known[z.root()] = 1;
  for (int v : order) {
    for (int id : z.out_edges(v)) {
      const BpEdge& e = z.edge(id);
      VarBits s = sets[v] | label_bits(e, z.num_vars());
      if (!known[e.head]) {
        sets[e.head] = std::move(s);
        known[e.head] = 1;
      } else if (sets[e.head] != s) {
        return std::nullopt;
      }
    }
  }
  return sets;
}

}  // namespace

bool is_uniform(const Nrobp& z) {
  require_valid(z);
  const auto order = topological_order(z);
  auto sets = path_var_sets(z, *order);
  if (!sets) return false;
  return (*sets)[z.leaf()].all();
}

Nrobp uniformize(const Nrobp& z) {
  require_valid(z);
  const auto order = *topological_order(z);
  const int n = z.num_vars();
  std::vector<BpEdge> edges(z.edges().begin(), z.edges().end());
  int next_node = z.num_nodes();
  std::vector<VarBits> sets(z.num_nodes(), VarBits(n));

  for (int a : order) {
    if (a == z.root()) continue;
    std::vector<VarBits> reach;  // variables read on paths through each in-edge
    VarBits all(n);
    for (int id : z.in_edges(a)) {
      reach.push_back(sets[edges[id].tail] | label_bits(edges[id], n));
      all |= reach.back();
    }
    if (a == z.leaf()) all.set();
    const auto in = z.in_edges(a);
    for (std::size_t i = 0; i < in.size(); ++i) {
      VarBits missing = all - reach[i];
      if (missing.none()) continue;
      // (a', a) becomes (a', c_1) with the old label, then pairs of
      // opposite literals c_j -> c_{j+1}, the last pair ending at a.
      int cur = next_node++;
      edges[in[i]].head = cur;
      std::vector<Var> vars;
      for (auto x = missing.find_first(); x != VarBits::npos; x = missing.find_next(x))
        vars.push_back(static_cast<Var>(x));
      for (std::size_t j = 0; j < vars.size(); ++j) {
        int nxt = j + 1 == vars.size() ? a : next_node++;
        edges.push_back({cur, nxt, Literal::pos(vars[j])});
        edges.push_back({cur, nxt, Literal::neg(vars[j])});
        cur = nxt;
      }
    }
    sets[a] = all;
  }
  return Nrobp(next_node, n, z.root(), z.leaf(), std::move(edges));
}

AssignmentSet bp_satisfying_set(const Nrobp& z, std::size_t cap) {
  require_valid(z);
  require_enumerable(z.num_vars(), cap, "bp_satisfying_set");
  const auto order = *topological_order(z);
  std::vector<std::uint64_t> out;
  std::vector<char> reach(z.num_nodes());
  const std::uint64_t total = std::uint64_t{1} << z.num_vars();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::fill(reach.begin(), reach.end(), 0);
    reach[z.root()] = 1;
    for (int v : order) {
      if (!reach[v]) continue;
      for (int id : z.out_edges(v)) {
        const BpEdge& e = z.edge(id);
        if (e.label && (((mask >> e.label->var) & 1u) != 0) != e.label->positive) continue;
        reach[e.head] = 1;
      }
    }
    if (reach[z.leaf()]) out.push_back(mask);
  }
  return AssignmentSet(z.num_vars(), std::move(out));
}

bool bp_equivalence(const Nrobp& a, const Nrobp& b, std::size_t cap) {
  if (a.num_vars() != b.num_vars()) throw InvalidInput("programs have different variable universes");
  return bp_satisfying_set(a, cap) == bp_satisfying_set(b, cap);
}

std::vector<std::vector<int>> root_leaf_paths(const Nrobp& z, std::size_t cap) {
  const auto order = topological_order(z);
  if (!order) throw InvalidInput("program has a cycle");
  // Count first so an oversized request fails before allocating.
  std::vector<double> count(z.num_nodes(), 0.0);
  count[z.leaf()] = 1.0;
  for (auto it = order->rbegin(); it != order->rend(); ++it)
    for (int id : z.out_edges(*it)) count[*it] += count[z.edge(id).head];
  if (count[z.root()] > static_cast<double>(cap))
    throw CapExceeded("root_leaf_paths: path count", static_cast<std::size_t>(std::min(count[z.root()], 1e18)), cap);

  std::vector<std::vector<int>> paths;
  std::vector<int> current;
  auto walk = [&](auto&& self, int v) -> void {
    if (v == z.leaf()) {
      paths.push_back(current);
      return;
    }
    for (int id : z.out_edges(v)) {
      current.push_back(id);
      self(self, z.edge(id).head);
      current.pop_back();
    }
  };
  walk(walk, z.root());
  return paths;
}

Nfbdd::Nfbdd(Nrobp z) : program_(std::move(z)) {
  require_valid(program_);
  var_of_.assign(program_.num_nodes(), -1);
  for (int v = 0; v < program_.num_nodes(); ++v) {
    if (v == program_.leaf()) continue;
    const auto out = program_.out_edges(v);
    for (int id : out)
      if (!program_.edge(id).label) throw InvalidInput("NFBDD edge " + std::to_string(id) + " is unlabelled");
    if (out.size() > 2) throw InvalidInput("NFBDD node " + std::to_string(v) + " has out-degree above 2");
    const Literal first = *program_.edge(out[0]).label;
    if (out.size() == 2) {
      const Literal second = *program_.edge(out[1]).label;
      if (second != first.negated())
        throw InvalidInput("NFBDD node " + std::to_string(v) + " does not branch on opposite literals");
    }
    var_of_[v] = first.var;
  }
  if (!is_uniform(program_)) throw InvalidInput("NFBDD is not uniform");
}

namespace {

std::optional<int> child_with_sign(const Nrobp& z, int node, bool positive) {
  for (int id : z.out_edges(node))
    if (z.edge(id).label->positive == positive) return z.edge(id).head;
  return std::nullopt;
}

}  // namespace

std::optional<int> Nfbdd::positive_child(int node) const { return child_with_sign(program_, node, true); }
std::optional<int> Nfbdd::negative_child(int node) const { return child_with_sign(program_, node, false); }

std::vector<Var> natural_order(int num_vars) {
  std::vector<Var> order(num_vars);
  for (int i = 0; i < num_vars; ++i) order[i] = i;
  return order;
}

namespace {

void require_permutation(std::span<const Var> order, int num_vars) {
  if (static_cast<int>(order.size()) != num_vars) throw InvalidInput("order length differs from variable count");
  std::vector<char> seen(num_vars, 0);
  for (Var v : order) {
    if (v < 0 || v >= num_vars || seen[v]) throw InvalidInput("order is not a permutation of the variables");
    seen[v] = 1;
  }
}

}  // namespace

Nfbdd nfbdd_compile(const MonotoneCnf& cnf, std::span<const Var> order) {
  const int n = cnf.num_vars();
  if (n == 0) throw InvalidInput("cannot compile a formula without variables");
  require_permutation(order, n);
  std::vector<int> position(n);
  for (int i = 0; i < n; ++i) position[order[i]] = i;
  std::vector<std::vector<Var>> neighbors(n);
  for (const Edge& c : cnf.clauses()) {
    neighbors[c.u].push_back(c.v);
    neighbors[c.v].push_back(c.u);
  }

  using Forced = std::vector<Var>;  // sorted unread variables that must be true
  std::vector<BpEdge> edges;
  std::map<Forced, int> level{{Forced{}, 0}};
  int next_id = 1;
  for (int i = 0; i < n; ++i) {
    const Var v = order[i];
    std::map<Forced, int> next;
    auto child = [&](Forced f) {
      auto [it, fresh] = next.try_emplace(std::move(f), next_id);
      if (fresh) ++next_id;
      return it->second;
    };
    for (const auto& [forced, node] : level) {
      const bool must_be_true = std::binary_search(forced.begin(), forced.end(), v);
      Forced pos = forced;
      if (must_be_true) pos.erase(std::find(pos.begin(), pos.end(), v));
      edges.push_back({node, child(std::move(pos)), Literal::pos(v)});
      if (must_be_true) continue;
      Forced neg = forced;
      for (Var w : neighbors[v])
        if (position[w] > i) neg.push_back(w);
      std::sort(neg.begin(), neg.end());
      neg.erase(std::unique(neg.begin(), neg.end()), neg.end());
      edges.push_back({node, child(std::move(neg)), Literal::neg(v)});
    }
    level = std::move(next);
  }
  const int leaf = level.begin()->second;
  return Nfbdd(Nrobp(next_id, n, 0, leaf, std::move(edges)));
}

BestOrder best_order_size(const MonotoneCnf& cnf, std::size_t cap) {
  const int n = cnf.num_vars();
  const std::size_t limit = std::min<std::size_t>(cap, 20);
  if (static_cast<std::size_t>(n) > limit) throw CapExceeded("best_order_size: variable count", n, limit);
  if (n == 0) throw InvalidInput("cannot compile a formula without variables");
  std::vector<std::uint32_t> adj(n, 0);
  for (const Edge& c : cnf.clauses()) {
    adj[c.u] |= 1u << c.v;
    adj[c.v] |= 1u << c.u;
  }
  const std::uint32_t full = (1u << n) - 1;
  // After reading S, the live states are the distinct forced sets
  // N(Z) \ S over the sets Z of false variables independent in S.
  auto states_after = [&](std::uint32_t s) {
    std::vector<std::uint32_t> forced;
    for (std::uint32_t z = s;; z = (z - 1) & s) {
      std::uint32_t nbrs = 0;
      bool independent = true;
      for (std::uint32_t rest = z; rest; rest &= rest - 1) {
        std::uint32_t a = adj[std::countr_zero(rest)];
        if (a & z) { independent = false; break; }
        nbrs |= a;
      }
      if (independent) forced.push_back(nbrs & ~s);
      if (z == 0) break;
    }
    std::sort(forced.begin(), forced.end());
    forced.erase(std::unique(forced.begin(), forced.end()), forced.end());
    return forced;
  };

  constexpr std::size_t kInf = ~std::size_t{0};
  std::vector<std::size_t> best(std::size_t{full} + 1, kInf);
  std::vector<std::int8_t> last(std::size_t{full} + 1, -1);
  best[0] = 0;
  for (std::uint32_t s = 0; s < full; ++s) {
    if (best[s] == kInf) continue;
    const auto forced = states_after(s);
    for (int v = 0; v < n; ++v) {
      if (s & (1u << v)) continue;
      std::size_t cost = 0;
      for (std::uint32_t f : forced) cost += (f & (1u << v)) ? 1 : 2;
      std::uint32_t t = s | (1u << v);
      if (best[s] + cost < best[t]) {
        best[t] = best[s] + cost;
        last[t] = static_cast<std::int8_t>(v);
      }
    }
  }
  BestOrder result;
  for (std::uint32_t s = full; s != 0; s ^= 1u << last[s]) result.order.push_back(last[s]);
  std::reverse(result.order.begin(), result.order.end());
  const Nfbdd compiled = nfbdd_compile(cnf, result.order);
  result.edges = compiled.size();
  result.nodes = static_cast<std::size_t>(compiled.num_nodes());
  if (result.edges != best[full]) throw std::logic_error("best_order_size: DP cost disagrees with compilation");
  return result;
}

}  // namespace robp
