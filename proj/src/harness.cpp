#include "robp/harness.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "robp/bp.hpp"
#include "robp/cnf.hpp"
#include "robp/corpus.hpp"
#include "robp/cover.hpp"
#include "robp/instance.hpp"
#include "robp/io.hpp"
#include "robp/width.hpp"

namespace robp {

namespace {

Nfbdd compile_natural(const Graph& g) {
  const MonotoneCnf cnf = cnf_from_graph(g);
  const auto order = natural_order(cnf.num_vars());
  return nfbdd_compile(cnf, order);
}

}  // namespace

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config) {
  if (config.r_min < 0 || config.r_max < config.r_min) throw InvalidInput("invalid r range");
  const double a5 = constants(5).a_x;
  std::vector<ExperimentRow> rows;
  for (int r = config.r_min; r <= config.r_max; ++r) {
    const FamilyParams params = family_params(config.k, r, true);
    ExperimentRow row{params.k, params.r, params.n, {}, {}, {}, {}, {}, {}};
    rows.push_back(row);
    if (params.n > static_cast<std::int64_t>(config.max_vertices)) continue;
    const FamilyInstance inst = hard_family_instance(config.k, r, true);
    const MonotoneCnf cnf = cnf_from_graph(inst.graph);
    const std::size_t n = static_cast<std::size_t>(params.n);

    std::optional<BestOrder> best;
    if (n <= config.caps.best_order) best = best_order_size(cnf, config.caps.best_order);
    if (best) rows.back().best_edges = best->edges;

    std::vector<Var> order;
    if (config.order == OrderStrategy::kNatural)
      order = natural_order(cnf.num_vars());
    else if (best)
      order = best->order;
    else
      continue;
    const Nfbdd y = nfbdd_compile(cnf, order);
    rows.back().edges = y.size();
    rows.back().nodes = static_cast<std::size_t>(y.num_nodes());

    if (n > config.caps.subset) continue;
    const int dmw = dmw_exact(inst.graph, config.caps.subset, config.caps.cross_edges).value;
    rows.back().dmw = dmw;
    rows.back().lb = std::pow(2.0, dmw / a5);
    try {
      rows.back().q = extract_cut_cover(y.program(), inst.graph, config.caps).q();
    } catch (const CapExceeded&) {
    }
  }
  std::sort(rows.begin(), rows.end(), [](const ExperimentRow& a, const ExperimentRow& b) {
    return std::pair(a.k, a.r) < std::pair(b.k, b.r);
  });
  return rows;
}

void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
  auto cell = [&](const auto& value) {
    out << ',';
    if (value)
      out << *value;
    else
      out << '-';
  };
  out << "k,r,n,edges,nodes,best_edges,dmw,q,lb\n";
  for (const ExperimentRow& row : rows) {
    out << row.k << ',' << row.r << ',' << row.n;
    cell(row.edges);
    cell(row.nodes);
    cell(row.best_edges);
    cell(row.dmw);
    cell(row.q);
    out << ',' << (row.lb ? format_number(*row.lb) : std::string("-")) << '\n';
  }
}

bool SuiteReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

namespace {

// Accumulates a named check over many cases, keeping the first failure.
class Tally {
 public:
  explicit Tally(std::string name) : name_(std::move(name)) {}

  void expect(bool ok, const std::function<std::string()>& describe) {
    ++cases_;
    if (!ok && failures_++ == 0) first_failure_ = describe();
  }

  CheckResult result() const {
    std::ostringstream s;
    s << cases_ << " cases";
    if (failures_ > 0) s << ", " << failures_ << " failed; first: " << first_failure_;
    return {name_, failures_ == 0 && cases_ > 0, s.str()};
  }

 private:
  std::string name_;
  std::size_t cases_ = 0;
  std::size_t failures_ = 0;
  std::string first_failure_;
};

std::string graph_label(const Graph& g) {
  std::ostringstream s;
  s << "n=" << g.num_vertices() << " E={";
  for (const Edge& e : g.edges()) s << '(' << e.u << ',' << e.v << ')';
  s << '}';
  return s.str();
}

int naive_mw(const Graph& g) {
  const int n = g.num_vertices();
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  int best = n;
  do {
    int width = 0;
    for (int len = 1; len < n; ++len) {
      const PrefixPartition part(n, std::span<const Vertex>(order.data(), len));
      width = std::max(width, cut_matching_size(g, part));
    }
    best = std::min(best, width);
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

std::vector<CheckResult> graph_suite(const SuiteOptions& opt) {
  const std::vector<std::size_t> all{1, 2, 4, 11, 34, 156};
  const std::vector<std::size_t> connected{1, 1, 2, 6, 21, 112};
  Tally counts("isomorphism-classes");
  for (int n = 1; n <= 6; ++n) {
    const std::size_t a = nonisomorphic_graphs(n).size(), c = connected_graphs(n).size();
    counts.expect(a == all[n - 1] && c == connected[n - 1], [&] {
      return "n=" + std::to_string(n) + " got " + std::to_string(a) + "/" + std::to_string(c);
    });
  }
  Tally primal("primal-roundtrip"), io("edge-list-roundtrip"), dis("dis-definition");
  for (const Graph& g : connected_corpus(opt.max_graph_vertices)) {
    primal.expect(primal_graph(cnf_from_graph(g)) == g, [&] { return graph_label(g); });
    std::stringstream buf;
    write_graph(buf, g);
    io.expect(read_graph(buf) == g, [&] { return graph_label(g); });
    const int n = g.num_vertices();
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      VertexSet s;
      for (int v = 0; v < n; ++v)
        if (mask >> v & 1u) s.push_back(v);
      bool expected = true;
      for (Vertex a : s)
        for (Vertex b : s)
          if (a < b && g.within_distance_two(a, b)) expected = false;
      dis.expect(is_dis(g, s) == expected, [&] { return graph_label(g); });
    }
  }
  return {counts.result(), primal.result(), io.result(), dis.result()};
}

std::vector<CheckResult> widths_suite(const SuiteOptions& opt) {
  Tally stated("complete-and-cycle-values");
  for (int n = 4; n <= 6; ++n) {
    const Graph k = complete_graph(n);
    const int mw = mw_exact(k, opt.caps.subset).value, dmw = dmw_exact(k, opt.caps.subset).value;
    stated.expect(mw == n / 2 && dmw == 1, [&] {
      return "K" + std::to_string(n) + " mw=" + std::to_string(mw) + " dmw=" + std::to_string(dmw);
    });
  }
  const Graph c8 = cycle_graph(8);
  const int c8_mw = mw_exact(c8).value, c8_dmw = dmw_exact(c8).value;
  stated.expect(c8_mw == 2 && c8_dmw == 2,
                [&] { return "C8 mw=" + std::to_string(c8_mw) + " dmw=" + std::to_string(c8_dmw); });

  Tally naive("subset-dp-vs-permutations"), ratio("dmw-vs-mw"), witness("witness-order");
  for (const Graph& g : connected_corpus(opt.max_graph_vertices)) {
    const WidthResult mw = mw_exact(g, opt.caps.subset);
    const int dmw = dmw_exact(g, opt.caps.subset).value;
    naive.expect(naive_mw(g) == mw.value, [&] { return graph_label(g); });
    ratio.expect(dmw * distant_factor(g.max_degree()) >= mw.value, [&] { return graph_label(g); });
    const int realized = mw.witness_cuts.empty() ? 0 : *std::max_element(mw.witness_cuts.begin(), mw.witness_cuts.end());
    witness.expect(realized == mw.value, [&] { return graph_label(g); });
  }
  return {stated.result(), naive.result(), ratio.result(), witness.result()};
}

std::vector<CheckResult> family_suite(const SuiteOptions& opt) {
  Tally structure("family-structure"), finder("cross-matching");
  Rng rng(opt.seed);
  const std::vector<std::pair<int, int>> cases{{6, 1}, {6, 2}, {6, 3}, {10, 1}, {10, 2}, {50, 1}, {50, 2}, {50, 3}};
  for (auto [k, r] : cases) {
    const FamilyInstance inst = hard_family_instance(k, r, true);
    const FamilyParams& p = inst.params;
    const TreeDecomposition td = canonical_tree_decomposition(inst.tree, inst.pattern);
    const TdReport report = validate_tree_decomposition(inst.graph, td);
    const std::int64_t expected_n = ((std::int64_t{1} << (r + 1)) - 1) * (k - p.y + 1) / 2;
    structure.expect(inst.graph.max_degree() <= 5 && report.ok() && report.width <= k - p.y &&
                         inst.graph.num_vertices() == expected_n && p.n == expected_n,
                     [&] { return p.header(); });

    const int n = inst.graph.num_vertices();
    const int need = p.p * p.p;
    for (int trial = 0; trial < 20 && n >= 2 * need; ++trial) {
      const int size = std::uniform_int_distribution<int>(need, n - need)(rng);
      std::vector<Vertex> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      const PrefixPartition part(n, std::span<const Vertex>(perm.data(), size));
      const CrossMatching cm = cross_matching_finder(inst.tree, inst.pattern, part, p.p);
      bool ok = static_cast<int>(cm.matching.size()) == p.p;
      try {
        require_matching(inst.graph, cm.matching);
      } catch (const InvalidMatching&) {
        ok = false;
      }
      for (const Edge& e : cm.matching) ok = ok && part.in_prefix(e.u) != part.in_prefix(e.v);
      finder.expect(ok, [&] { return p.header() + " prefix size " + std::to_string(size); });
    }
  }
  return {structure.result(), finder.result()};
}

template <typename Scalar>
bool same(const Scalar& a, const Scalar& b) {
  if constexpr (std::is_same_v<Scalar, double>)
    return std::abs(a - b) <= 1e-12;
  else
    return a == b;
}

template <typename Scalar>
std::vector<CheckResult> weights_sweep(const SuiteOptions& opt) {
  Tally onebound("onebound"), increase("pathincrease"), onepos("onepos"), deep("deepcover");
  for (const Graph& g : connected_corpus(opt.max_graph_vertices)) {
    const Nfbdd y = compile_natural(g);
    const Nrobp& z = y.program();
    const std::vector<Scalar> w = path_weights<Scalar>(y);
    for (int a = 0; a < z.num_nodes(); ++a)
      onebound.expect(same(w[a], Scalar(1)), [&] { return graph_label(g) + " node " + std::to_string(a); });

    // Sum of per-path products of edge weights, by enumeration, against the DP.
    const std::vector<Vertex> s{0};
    const std::vector<Scalar> dp = covered_weights<Scalar>(y, s);
    Scalar total(0), covered(0);
    for (const auto& path : root_leaf_paths(z, opt.caps.paths)) {
      Scalar product(1);
      bool has_zero = false;
      for (int id : path) {
        product *= edge_weight<Scalar>(y, id);
        const auto& label = z.edge(id).label;
        if (label && label->var == 0 && label->positive) has_zero = true;
      }
      total += product;
      if (has_zero) covered += product;
    }
    increase.expect(same(total, Scalar(1)) && same(covered, dp[z.root()]),
                    [&] { return graph_label(g); });
    onepos.expect(onepos_holds(y), [&] { return graph_label(g); });
    const DeepcoverReport report = verify_deepcover(y, g, 3, opt.exact);
    deep.expect(report.ok(), [&] {
      const auto& v = report.violations.front();
      return graph_label(g) + " " + v.check + " at node " + std::to_string(v.node);
    });
  }
  return {onebound.result(), increase.result(), onepos.result(), deep.result()};
}

std::vector<CheckResult> uniformize_suite(const SuiteOptions& opt) {
  Tally equiv("equivalence"), uniform("is-uniform"), bound("size-bound");
  Rng rng(opt.seed);
  for (int trial = 0; trial < 200; ++trial) {
    const int vars = std::uniform_int_distribution<int>(1, 8)(rng);
    const int nodes = std::uniform_int_distribution<int>(2, 10)(rng);
    const int extra = std::uniform_int_distribution<int>(0, 8)(rng);
    const Nrobp z = random_nrobp(nodes, vars, extra, rng);
    const Nrobp u = uniformize(z);
    auto label = [&] { return "trial " + std::to_string(trial); };
    equiv.expect(bp_equivalence(z, u, opt.caps.vars), label);
    uniform.expect(is_uniform(u), label);
    bound.expect(u.size() <= static_cast<std::size_t>(2 * vars + 1) * z.size(), label);
  }
  return {equiv.result(), uniform.result(), bound.result()};
}

std::vector<CheckResult> cover_suite(const SuiteOptions& opt) {
  Tally lower("coverlb"), spot("k2-spot");
  const auto k2 = min_dis_cover(complete_graph(2), 1, opt.caps.vars);
  spot.expect(k2 && k2->q == 2, [] { return "K2 t=1"; });
  for (const Graph& g : connected_corpus(opt.max_graph_vertices)) {
    const int x = g.max_degree();
    for (int t = 0; t <= 3; ++t) {
      std::optional<DisCover> cover;
      try {
        cover = min_dis_cover(g, t, opt.caps.vars);
      } catch (const InvalidInput&) {
        continue;
      }
      if (!cover) continue;
      lower.expect(cover_bound_holds(cover->q, x, t),
                   [&] { return graph_label(g) + " t=" + std::to_string(t) + " q=" + std::to_string(cover->q); });
    }
  }
  return {spot.result(), lower.result()};
}

std::vector<CheckResult> certificate_suite(const SuiteOptions& opt) {
  Tally valid("certificate"), nodes("nodes-at-least-q");
  for (const Graph& g : connected_corpus(opt.max_graph_vertices)) {
    const Nfbdd y = compile_natural(g);
    const CutCoverCertificate cert = extract_cut_cover(y.program(), g, opt.caps);
    const CertificateCheck check = check_certificate(cert, y.program(), g, opt.caps.vars);
    valid.expect(check.ok(), [&] { return graph_label(g); });
    nodes.expect(y.num_nodes() >= cert.q(), [&] { return graph_label(g); });
  }
  return {valid.result(), nodes.result()};
}

using SuiteFn = std::vector<CheckResult> (*)(const SuiteOptions&);

const std::map<std::string, SuiteFn>& suite_table() {
  static const std::map<std::string, SuiteFn> table{
      {"graph", graph_suite},
      {"widths", widths_suite},
      {"family", family_suite},
      {"weights",
       [](const SuiteOptions& o) { return o.exact ? weights_sweep<Rational>(o) : weights_sweep<double>(o); }},
      {"uniformize", uniformize_suite},
      {"cover", cover_suite},
      {"certificate", certificate_suite},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"graph", "widths", "family", "weights",
                                              "uniformize", "cover", "certificate"};
  return names;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& options) {
  const auto& table = suite_table();
  const auto it = table.find(name);
  if (it == table.end()) {
    std::string known;
    for (const auto& s : suite_names()) known += (known.empty() ? "" : ", ") + s;
    throw InvalidInput("unknown suite '" + name + "'; known suites: " + known);
  }
  return {name, it->second(options)};
}

void write_report(std::ostream& out, const SuiteReport& report) {
  for (const CheckResult& c : report.checks)
    out << (c.passed ? "PASS " : "FAIL ") << report.suite << '/' << c.name << ' ' << c.detail << '\n';
}

}  // namespace robp
