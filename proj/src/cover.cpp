#include "robp/cover.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

#include <boost/dynamic_bitset.hpp>

#include "robp/width.hpp"

namespace robp {

namespace {

// Edge ids of some root-to-a path, found by BFS from the root.
std::vector<int> some_root_path(const Nrobp& z, int a) {
  std::vector<int> via(z.num_nodes(), -2);
  via[z.root()] = -1;
  std::vector<int> queue{z.root()};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    int v = queue[i];
    for (int id : z.out_edges(v)) {
      int h = z.edge(id).head;
      if (via[h] == -2) {
        via[h] = id;
        queue.push_back(h);
      }
    }
  }
  if (via[a] == -2) throw InvalidInput("node " + std::to_string(a) + " is unreachable from the root");
  std::vector<int> path;
  for (int v = a; via[v] >= 0; v = z.edge(via[v]).tail) path.push_back(via[v]);
  std::reverse(path.begin(), path.end());
  return path;
}

bool contains(std::span<const Vertex> sorted, Vertex v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

bool subset_of(std::span<const Vertex> b, std::span<const Vertex> sorted) {
  return std::all_of(b.begin(), b.end(), [&](Vertex v) { return contains(sorted, v); });
}

VertexSet without(std::span<const Vertex> b, Vertex v) {
  VertexSet out;
  for (Vertex u : b)
    if (u != v) out.push_back(u);
  return out;
}

}  // namespace

NodeContext node_context(const Nfbdd& y, const Graph& g, int a) {
  const Nrobp& z = y.program();
  if (a < 0 || a >= z.num_nodes()) throw InvalidInput("node " + std::to_string(a) + " out of range");
  if (z.num_vars() != g.num_vertices()) throw InvalidInput("program and graph disagree on the variable count");
  const int n = g.num_vertices();
  std::vector<char> read(n, 0), blocked(n, 0);
  for (int id : some_root_path(z, a)) {
    const Literal l = *z.edge(id).label;
    read[l.var] = 1;
    if (!l.positive)
      for (Vertex w : g.neighbors(l.var)) blocked[w] = 1;
  }
  NodeContext ctx;
  ctx.node = a;
  for (Vertex v = 0; v < n; ++v) {
    if (read[v]) continue;
    ctx.vert.push_back(v);
    if (!blocked[v]) ctx.free.push_back(v);
  }
  ctx.ld.assign(n, 0);
  for (Vertex v = 0; v < n; ++v)
    for (Vertex w : g.neighbors(v)) ctx.ld[v] += read[w] ? 0 : 1;
  return ctx;
}

template <typename Scalar>
Scalar edge_weight(const Nfbdd& y, int edge_id) {
  return Scalar(1) / Scalar(y.out_degree(y.program().edge(edge_id).tail));
}

template <typename Scalar>
std::vector<Scalar> path_weights(const Nfbdd& y) {
  const Nrobp& z = y.program();
  const auto order = *topological_order(z);
  std::vector<Scalar> w(z.num_nodes(), Scalar(0));
  w[z.leaf()] = Scalar(1);
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    for (int id : z.out_edges(*it)) w[*it] += edge_weight<Scalar>(y, id) * w[z.edge(id).head];
  return w;
}

template <typename Scalar>
Scalar path_weight_total(const Nfbdd& y, int a) {
  return path_weights<Scalar>(y).at(a);
}

template <typename Scalar>
std::vector<Scalar> covered_weights(const Nfbdd& y, std::span<const Vertex> s, std::size_t cap) {
  if (s.size() > cap) throw CapExceeded("covered_weight: |S|", s.size(), cap);
  const Nrobp& z = y.program();
  std::vector<int> index(z.num_vars(), -1);
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (s[j] < 0 || s[j] >= z.num_vars()) throw InvalidInput("vertex outside the program's variables");
    index[s[j]] = static_cast<int>(j);
  }
  const std::size_t masks = std::size_t{1} << s.size();
  const std::size_t full = masks - 1;
  // table[node * masks + m]: weight of paths on which the vertices in m are
  // all positive.
  std::vector<Scalar> table(static_cast<std::size_t>(z.num_nodes()) * masks, Scalar(0));
  table[static_cast<std::size_t>(z.leaf()) * masks] = Scalar(1);
  const auto order = *topological_order(z);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int a = *it;
    for (int id : z.out_edges(a)) {
      const BpEdge& e = z.edge(id);
      const Scalar w = edge_weight<Scalar>(y, id);
      const int j = index[e.label->var];
      const Scalar* below = &table[static_cast<std::size_t>(e.head) * masks];
      Scalar* here = &table[static_cast<std::size_t>(a) * masks];
      for (std::size_t m = 0; m < masks; ++m) {
        if (j < 0) {
          here[m] += w * below[m];
        } else if (e.label->positive) {
          here[m] += w * below[m & ~(std::size_t{1} << j)];
        } else if (!((m >> j) & 1u)) {
          here[m] += w * below[m];
        }
      }
    }
  }
  std::vector<Scalar> out(z.num_nodes());
  for (int a = 0; a < z.num_nodes(); ++a) out[a] = table[static_cast<std::size_t>(a) * masks + full];
  return out;
}

template <typename Scalar>
Scalar covered_weight(const Nfbdd& y, int a, std::span<const Vertex> s, std::size_t cap) {
  return covered_weights<Scalar>(y, s, cap).at(a);
}

template <typename Scalar>
Scalar local_factor(int ld) {
  if (ld < 0 || ld > 60) throw InvalidInput("local degree out of range");
  return Scalar(1) - Scalar(1) / Scalar(std::int64_t{1} << (ld + 1));
}

template <typename Scalar>
Scalar relative_weight(const NodeContext& ctx, std::span<const Vertex> b) {
  if (!subset_of(b, ctx.vert)) throw InvalidInput("relative_weight: B is not inside Vert_a");
  Scalar product(1);
  for (Vertex v : b) product *= local_factor<Scalar>(ctx.ld.at(v));
  return product;
}

template double edge_weight<double>(const Nfbdd&, int);
template Rational edge_weight<Rational>(const Nfbdd&, int);
template std::vector<double> path_weights<double>(const Nfbdd&);
template std::vector<Rational> path_weights<Rational>(const Nfbdd&);
template double path_weight_total<double>(const Nfbdd&, int);
template Rational path_weight_total<Rational>(const Nfbdd&, int);
template std::vector<double> covered_weights<double>(const Nfbdd&, std::span<const Vertex>, std::size_t);
template std::vector<Rational> covered_weights<Rational>(const Nfbdd&, std::span<const Vertex>, std::size_t);
template double covered_weight<double>(const Nfbdd&, int, std::span<const Vertex>, std::size_t);
template Rational covered_weight<Rational>(const Nfbdd&, int, std::span<const Vertex>, std::size_t);
template double local_factor<double>(int);
template Rational local_factor<Rational>(int);
template double relative_weight<double>(const NodeContext&, std::span<const Vertex>);
template Rational relative_weight<Rational>(const NodeContext&, std::span<const Vertex>);

std::vector<VertexSet> distant_independent_sets(const Graph& g, int min_size, int max_size) {
  std::vector<VertexSet> out;
  VertexSet current;
  auto grow = [&](auto&& self, Vertex from) -> void {
    if (static_cast<int>(current.size()) >= min_size) out.push_back(current);
    if (static_cast<int>(current.size()) == max_size) return;
    for (Vertex v = from; v < g.num_vertices(); ++v) {
      bool ok = std::none_of(current.begin(), current.end(), [&](Vertex u) { return g.within_distance_two(u, v); });
      if (!ok) continue;
      current.push_back(v);
      self(self, v + 1);
      current.pop_back();
    }
  };
  grow(grow, 0);
  std::sort(out.begin(), out.end());
  return out;
}

bool onepos_holds(const Nfbdd& y) {
  for (int a = 0; a < y.num_nodes(); ++a)
    if (a != y.leaf() && y.out_degree(a) == 1 && !y.positive_child(a)) return false;
  return true;
}

namespace {

template <typename Scalar>
struct Compare;

template <>
struct Compare<double> {
  static bool le(double a, double b) { return a <= b + 1e-9; }
  static bool eq(double a, double b) { return std::abs(a - b) <= 1e-9; }
};

template <>
struct Compare<Rational> {
  static bool le(const Rational& a, const Rational& b) { return a <= b; }
  static bool eq(const Rational& a, const Rational& b) { return a == b; }
};

double as_double(double v) { return v; }
double as_double(const Rational& v) { return to_double(v); }

template <typename Scalar>
DeepcoverReport deepcover_sweep(const Nfbdd& y, const Graph& g, int max_size) {
  using Cmp = Compare<Scalar>;
  const Nrobp& z = y.program();
  std::vector<NodeContext> ctx;
  for (int a = 0; a < z.num_nodes(); ++a) ctx.push_back(node_context(y, g, a));
  DeepcoverReport report;
  auto flag = [&](const char* check, int node, VertexSet b, const Scalar& lhs, const Scalar& rhs) {
    report.violations.push_back({check, node, std::move(b), as_double(lhs), as_double(rhs)});
  };

  for (const VertexSet& b : distant_independent_sets(g, 0, max_size)) {
    const std::vector<Scalar> cw = covered_weights<Scalar>(y, b, std::max<std::size_t>(b.size(), 1));
    for (int a = 0; a < z.num_nodes(); ++a) {
      if (!subset_of(b, ctx[a].free)) continue;
      ++report.checked;
      const Scalar rw = relative_weight<Scalar>(ctx[a], b);
      if (!Cmp::le(cw[a], rw)) flag("deepcover", a, b, cw[a], rw);
      if (a == z.leaf()) continue;
      const Vertex v = y.var_of(a);
      Vertex w = -1;
      for (Vertex u : b)
        if (g.has_edge(u, v)) w = u;
      for (int id : z.out_edges(a)) {
        const int next = z.edge(id).head;
        const bool negative = !z.edge(id).label->positive;
        ++report.freeaprime_checks;
        VertexSet kept = b;
        if (contains(b, v)) {
          kept = without(b, v);
          const Scalar expect = rw / local_factor<Scalar>(ctx[a].ld[v]);
          const Scalar got = relative_weight<Scalar>(ctx[next], kept);
          if (!Cmp::eq(got, expect)) flag("rwdecomp", a, b, got, expect);
        } else if (w >= 0) {
          const VertexSet rest = without(b, w);
          const Scalar expect_rest = rw / local_factor<Scalar>(ctx[a].ld[w]);
          const Scalar got_rest = relative_weight<Scalar>(ctx[next], rest);
          if (!Cmp::eq(got_rest, expect_rest)) flag("rwdecomp", a, b, got_rest, expect_rest);
          const Scalar expect_all = rw * local_factor<Scalar>(ctx[a].ld[w] - 1) / local_factor<Scalar>(ctx[a].ld[w]);
          const Scalar got_all = relative_weight<Scalar>(ctx[next], b);
          if (!Cmp::eq(got_all, expect_all)) flag("rwdecomp", a, b, got_all, expect_all);
          if (negative) kept = rest;
        } else {
          const Scalar got = relative_weight<Scalar>(ctx[next], b);
          if (!Cmp::eq(got, rw)) flag("rwdecomp", a, b, got, rw);
        }
        if (!subset_of(kept, ctx[next].free)) flag("freeaprime", a, b, Scalar(0), Scalar(1));
      }
    }
  }
  std::sort(report.violations.begin(), report.violations.end());
  return report;
}

}  // namespace

DeepcoverReport verify_deepcover(const Nfbdd& y, const Graph& g, int max_size, bool exact) {
  if (max_size < 0) throw InvalidInput("max_size must be non-negative");
  if (static_cast<std::size_t>(max_size) > Caps{}.cover_subset)
    throw CapExceeded("verify_deepcover: |B|", max_size, Caps{}.cover_subset);
  return exact ? deepcover_sweep<Rational>(y, g, max_size) : deepcover_sweep<double>(y, g, max_size);
}

std::optional<DisCover> min_dis_cover(const Graph& g, int t, std::size_t cap) {
  if (t < 0) throw InvalidInput("t must be non-negative");
  const auto dises = distant_independent_sets(g, t, t);
  if (dises.empty()) throw InvalidInput("graph has no DIS of size " + std::to_string(t));
  const AssignmentSet sat = enumerate_satisfying(cnf_from_graph(g), cap);
  const std::size_t m = sat.size();

  using Bits = boost::dynamic_bitset<>;
  std::vector<Bits> covered_by(dises.size(), Bits(m));
  Bits reachable(m);
  for (std::size_t i = 0; i < dises.size(); ++i) {
    std::uint64_t need = 0;
    for (Vertex v : dises[i]) need |= std::uint64_t{1} << v;
    for (std::size_t j = 0; j < m; ++j)
      if ((sat.masks()[j] & need) == need) covered_by[i].set(j);
    reachable |= covered_by[i];
  }
  if (!reachable.all()) return std::nullopt;

  std::size_t widest = 0;
  for (const auto& c : covered_by) widest = std::max(widest, c.count());

  // Greedy gives the initial upper bound; branch on the uncovered assignment
  // with the fewest covering sets.
  std::vector<std::size_t> best_pick;
  {
    Bits open(m);
    open.set();
    while (open.any()) {
      std::size_t pick = 0, gain = 0;
      for (std::size_t i = 0; i < dises.size(); ++i) {
        std::size_t cnt = (covered_by[i] & open).count();
        if (cnt > gain) { gain = cnt; pick = i; }
      }
      best_pick.push_back(pick);
      open -= covered_by[pick];
    }
  }
  std::vector<std::size_t> chosen;
  auto search = [&](auto&& self, const Bits& open) -> void {
    if (open.none()) {
      if (chosen.size() < best_pick.size()) best_pick = chosen;
      return;
    }
    const std::size_t remaining = open.count();
    const std::size_t lower = (remaining + widest - 1) / widest;
    if (chosen.size() + lower >= best_pick.size()) return;
    std::size_t target = open.find_first(), fewest = ~std::size_t{0};
    for (auto j = open.find_first(); j != Bits::npos; j = open.find_next(j)) {
      std::size_t cnt = 0;
      for (const auto& c : covered_by) cnt += c.test(j) ? 1 : 0;
      if (cnt < fewest) { fewest = cnt; target = j; }
    }
    for (std::size_t i = 0; i < dises.size(); ++i) {
      if (!covered_by[i].test(target)) continue;
      chosen.push_back(i);
      self(self, open - covered_by[i]);
      chosen.pop_back();
    }
  };
  Bits all(m);
  all.set();
  search(search, all);

  DisCover result;
  result.q = static_cast<int>(best_pick.size());
  std::sort(best_pick.begin(), best_pick.end());
  for (std::size_t i : best_pick) result.cover.push_back(dises[i]);
  return result;
}

bool cover_bound_holds(std::int64_t q, int x, int t) {
  if (x < 0 || t < 0) throw InvalidInput("cover bound needs x, t >= 0");
  if ((x + 1) * t > 120) throw InvalidInput("cover bound exponent too large for exact comparison");
  // q * (2^{x+1} - 1)^t >= 2^{(x+1) t}
  using Wide = unsigned __int128;
  const Wide base = (Wide{1} << (x + 1)) - 1;
  Wide lhs = static_cast<Wide>(q);
  const Wide rhs = Wide{1} << ((x + 1) * t);
  for (int i = 0; i < t; ++i) {
    if (lhs >= rhs) return true;
    lhs *= base;
  }
  return lhs >= rhs;
}

LowerBoundConstants constants(int x) {
  if (x < 1) throw InvalidInput("max degree must be at least 1");
  if (x > 60) throw InvalidInput("max degree too large");
  LowerBoundConstants c;
  c.x = x;
  const double shrink = 1.0 - std::ldexp(1.0, -(x + 1));
  c.a_x = 1.0 / -std::log2(shrink);
  c.cover_base = 1.0 / shrink;
  const std::int64_t top = std::int64_t{1} << (x + 1);
  c.cover_base_exact = Rational(top, top - 1);
  return c;
}

AsymptoticConstants asymptotic_constants() {
  AsymptoticConstants t;
  t.distant_factor = distant_factor(5);
  t.a5 = constants(5).a_x;
  t.c = t.a5 * t.mw_factor * t.distant_factor;
  return t;
}

CutCoverCertificate extract_cut_cover(const Nrobp& z, const Graph& g, const Caps& caps) {
  if (z.num_vars() != g.num_vertices()) throw InvalidInput("program and graph disagree on the variable count");
  if (!is_uniform(z)) throw InvalidInput("extract_cut_cover needs a uniform program; uniformize first");
  if (static_cast<std::size_t>(g.num_vertices()) <= caps.vars &&
      bp_satisfying_set(z, caps.vars) != enumerate_satisfying(cnf_from_graph(g), caps.vars))
    throw InvalidInput("program does not realize phi(G)");

  CutCoverCertificate cert;
  cert.dmw = dmw_exact(g, caps.subset, caps.cross_edges).value;
  const auto paths = root_leaf_paths(z, caps.paths);
  const int n = g.num_vertices();

  std::map<std::uint64_t, Matching> cut_memo;
  auto distant_cut = [&](std::uint64_t prefix) -> const Matching& {
    auto it = cut_memo.find(prefix);
    if (it == cut_memo.end())
      it = cut_memo.emplace(prefix, max_cut_distant_matching(g, PrefixPartition::from_mask(n, prefix),
                                                             caps.cross_edges)).first;
    return it->second;
  };

  std::map<int, Matching> witness;  // cut node -> matching of size dmw
  for (const auto& path : paths) {
    std::uint64_t prefix = 0;
    int split = -1;
    for (int id : path) {
      const BpEdge& e = z.edge(id);
      if (!e.label) continue;
      prefix |= std::uint64_t{1} << e.label->var;
      const Matching& m = distant_cut(prefix);
      if (static_cast<int>(m.size()) >= cert.dmw) {
        split = e.head;
        if (!witness.count(split)) witness[split] = Matching(m.begin(), m.begin() + cert.dmw);
        break;
      }
    }
    if (split < 0) throw CutCoverFailure("no split of a root-leaf path carries a distant matching of size dmw");
  }

  for (const auto& [node, matching] : witness) {
    std::vector<Assignment> through;
    for (const auto& path : paths) {
      bool hits = std::any_of(path.begin(), path.end(), [&](int id) { return z.edge(id).head == node; });
      if (!hits) continue;
      std::vector<Literal> lits;
      for (int id : path)
        if (z.edge(id).label) lits.push_back(*z.edge(id).label);
      through.emplace_back(std::move(lits));
    }
    VertexSet dis;
    for (const Edge& e : matching) {
      Vertex lo = std::min(e.u, e.v), hi = std::max(e.u, e.v);
      Vertex pick = -1;
      for (Vertex c : {lo, hi}) {
        const Vertex single[] = {c};
        if (std::all_of(through.begin(), through.end(), [&](const Assignment& s) { return covers(s, single); })) {
          pick = c;
          break;
        }
      }
      if (pick < 0)
        throw CutCoverFailure("neither endpoint of edge {" + std::to_string(lo) + "," + std::to_string(hi) +
                              "} covers every path through node " + std::to_string(node));
      dis.push_back(pick);
    }
    std::sort(dis.begin(), dis.end());
    cert.cut_nodes.push_back(node);
    cert.dis_sets.push_back(std::move(dis));
    cert.matchings.push_back(matching);
  }
  return cert;
}

CertificateCheck check_certificate(const CutCoverCertificate& cert, const Nrobp& z, const Graph& g,
                                   std::size_t cap) {
  CertificateCheck out;
  // Cut: the leaf must be unreachable once cut nodes are removed.
  std::vector<char> blocked(z.num_nodes(), 0), seen(z.num_nodes(), 0);
  for (int u : cert.cut_nodes) blocked.at(u) = 1;
  std::vector<int> stack;
  if (!blocked[z.root()]) {
    stack.push_back(z.root());
    seen[z.root()] = 1;
  }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int id : z.out_edges(v)) {
      int h = z.edge(id).head;
      if (!blocked[h] && !seen[h]) {
        seen[h] = 1;
        stack.push_back(h);
      }
    }
  }
  out.is_cut = !seen[z.leaf()];

  out.dis_ok = cert.dis_sets.size() == cert.cut_nodes.size() && cert.matchings.size() == cert.cut_nodes.size();
  out.matchings_distant = out.dis_ok;
  for (std::size_t i = 0; out.dis_ok && i < cert.dis_sets.size(); ++i) {
    const VertexSet& b = cert.dis_sets[i];
    const Matching& m = cert.matchings[i];
    bool one_end_each = b.size() == m.size() && std::all_of(m.begin(), m.end(), [&](const Edge& e) {
      return contains(b, e.u) != contains(b, e.v);
    });
    out.dis_ok = one_end_each && static_cast<int>(b.size()) == cert.dmw && is_dis(g, b);
    try {
      out.matchings_distant = out.matchings_distant && is_distant_matching(g, m);
    } catch (const InvalidMatching&) {
      out.matchings_distant = false;
    }
  }

  const AssignmentSet sat = enumerate_satisfying(cnf_from_graph(g), cap);
  out.covers_all = std::all_of(sat.masks().begin(), sat.masks().end(), [&](std::uint64_t a) {
    return std::any_of(cert.dis_sets.begin(), cert.dis_sets.end(), [&](const VertexSet& b) {
      return std::all_of(b.begin(), b.end(), [&](Vertex v) { return ((a >> v) & 1u) != 0; });
    });
  });
  out.bound_holds = cover_bound_holds(cert.q(), std::max(1, g.max_degree()), cert.dmw);
  return out;
}

}  // namespace robp
