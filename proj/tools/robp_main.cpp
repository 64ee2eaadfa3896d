#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <functional>
#include <span>
#include <sstream>

#include "robp/bp.hpp"
#include "robp/cnf.hpp"
#include "robp/corpus.hpp"
#include "robp/cover.hpp"
#include "robp/harness.hpp"
#include "robp/instance.hpp"
#include "robp/io.hpp"
#include "robp/width.hpp"

namespace fs = std::filesystem;
using namespace robp;

namespace {

struct Common {
  std::size_t cap_vars = Caps{}.vars;
  std::size_t cap_subset = Caps{}.subset;
  bool exact = false;
  std::uint64_t seed = 1;
  std::string out;

  Caps caps() const {
    Caps c;
    c.vars = cap_vars;
    c.subset = cap_subset;
    return c;
  }
};

// Writes to --out when given, otherwise to stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty()) return;
    file_.open(path);
    if (!file_) throw InvalidInput("cannot write " + path);
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path.string());
  body(out);
  if (!out) throw InvalidInput("write failed: " + path.string());
}

std::string join(std::span<const int> xs) {
  std::ostringstream s;
  for (std::size_t i = 0; i < xs.size(); ++i) s << (i ? " " : "") << xs[i];
  return s.str();
}

MonotoneCnf load_formula(const std::string& graph_path, const std::string& cnf_path) {
  if (!cnf_path.empty()) return read_cnf_file(cnf_path);
  return cnf_from_graph(read_graph_file(graph_path));
}

int cmd_gen(const Common& c, int k, int r, bool allow_small_r, std::int64_t max_vertices) {
  const FamilyParams params = family_params(k, r, allow_small_r);
  if (k < 50) std::cerr << "warning: k=" << k << " is below 50, where the width bound for the family is stated\n";
  const fs::path dir = c.out.empty() ? fs::path(".") : fs::path(c.out);
  fs::create_directories(dir);
  const bool build = params.n <= max_vertices;
  write_file(dir / "meta.txt", [&](std::ostream& o) {
    o << params.header() << '\n';
    o << "path_len=" << params.path_len << " threshold_r=" << family_r_threshold(k) << '\n';
    o << "materialized=" << (build ? "yes" : "no") << '\n';
  });
  std::cout << params.header() << '\n';
  if (!build) {
    std::cout << "instance exceeds " << max_vertices << " vertices; wrote metadata only\n";
    return 0;
  }
  const FamilyInstance inst = hard_family_instance(k, r, allow_small_r, max_vertices);
  const MonotoneCnf cnf = cnf_from_graph(inst.graph);
  const TreeDecomposition td = canonical_tree_decomposition(inst.tree, inst.pattern);
  write_file(dir / "graph.txt", [&](std::ostream& o) { write_graph(o, inst.graph, params.header()); });
  write_file(dir / "phi.cnf", [&](std::ostream& o) { write_cnf(o, cnf, params.header()); });
  write_file(dir / "td.txt", [&](std::ostream& o) { write_tree_decomposition(o, td, params.header()); });
  std::cout << "edges=" << inst.graph.num_edges() << " max_degree=" << inst.graph.max_degree()
            << " td_width=" << td.width() << '\n';
  return 0;
}

int cmd_compile(const Common& c, const std::string& graph, const std::string& cnf_path, const std::string& order) {
  const MonotoneCnf cnf = load_formula(graph, cnf_path);
  std::vector<Var> vars;
  if (order == "natural") {
    vars = natural_order(cnf.num_vars());
  } else if (order == "best") {
    const BestOrder best = best_order_size(cnf);
    vars = best.order;
  } else {
    std::istringstream s(order);
    std::string token;
    while (std::getline(s, token, ',')) vars.push_back(std::stoi(token));
  }
  const Nfbdd y = nfbdd_compile(cnf, vars);
  Output out(c.out);
  write_bp(out.stream(), y.program());
  std::cerr << "edges=" << y.size() << " nodes=" << y.num_nodes() << " order=" << join(vars) << '\n';
  return 0;
}

int cmd_width(const Common& c, const std::string& graph, bool distant) {
  const Graph g = read_graph_file(graph);
  const WidthResult w = distant ? dmw_exact(g, c.cap_subset) : mw_exact(g, c.cap_subset);
  Output out(c.out);
  out.stream() << (distant ? "dmw=" : "mw=") << w.value << "\norder=" << join(w.witness_order)
               << "\ncuts=" << join(w.witness_cuts) << '\n';
  return 0;
}

int cmd_uniformize(const Common& c, const std::string& bp) {
  const Nrobp z = read_bp_file(bp);
  require_valid(z);
  const Nrobp u = uniformize(z);
  Output out(c.out);
  write_bp(out.stream(), u);
  std::cerr << "input_edges=" << z.size() << " output_edges=" << u.size();
  int status = 0;
  if (static_cast<std::size_t>(z.num_vars()) <= c.cap_vars) {
    const bool same = bp_equivalence(z, u, c.cap_vars);
    std::cerr << " equivalent=" << (same ? "yes" : "no");
    status = same ? 0 : 1;
  }
  std::cerr << '\n';
  return status;
}

int cmd_verify(const Common& c, const std::string& suite, int max_graph) {
  SuiteOptions options;
  options.caps = c.caps();
  options.seed = c.seed;
  options.exact = c.exact;
  options.max_graph_vertices = max_graph;
  std::vector<std::string> names;
  if (suite == "all")
    names = suite_names();
  else
    names.push_back(suite);
  Output out(c.out);
  bool ok = true;
  for (const auto& name : names) {
    const SuiteReport report = run_suite(name, options);
    write_report(out.stream(), report);
    ok = ok && report.ok();
  }
  return ok ? 0 : 1;
}

int cmd_cover(const Common& c, const std::string& graph, int t) {
  const Graph g = read_graph_file(graph);
  const auto cover = min_dis_cover(g, t, c.cap_vars);
  Output out(c.out);
  if (!cover) {
    out.stream() << "infeasible: some satisfying assignment contains no DIS of size " << t << '\n';
    return 1;
  }
  const int x = g.max_degree();
  const bool holds = cover_bound_holds(cover->q, x, t);
  out.stream() << "q=" << cover->q << " x=" << x << " t=" << t
               << " bound=" << format_number(std::pow(constants(x).cover_base, t))
               << " holds=" << (holds ? "yes" : "no") << '\n';
  for (const VertexSet& b : cover->cover) out.stream() << "B " << join(b) << '\n';
  return holds ? 0 : 1;
}

int cmd_certify(const Common& c, const std::string& graph, const std::string& bp) {
  const Graph g = read_graph_file(graph);
  Nrobp z;
  if (bp.empty()) {
    const MonotoneCnf cnf = cnf_from_graph(g);
    z = nfbdd_compile(cnf, natural_order(cnf.num_vars())).program();
  } else {
    z = read_bp_file(bp);
  }
  const CutCoverCertificate cert = extract_cut_cover(z, g, c.caps());
  const CertificateCheck check = check_certificate(cert, z, g, c.cap_vars);
  Output out(c.out);
  write_certificate(out.stream(), cert, g.max_degree());
  out.stream() << "is_cut=" << check.is_cut << " dis_ok=" << check.dis_ok
               << " matchings_distant=" << check.matchings_distant << " covers_all=" << check.covers_all
               << " bound_holds=" << check.bound_holds << '\n';
  return check.ok() ? 0 : 1;
}

int cmd_experiment(const Common& c, ExperimentConfig config, const std::string& order) {
  config.caps = c.caps();
  if (order == "natural")
    config.order = OrderStrategy::kNatural;
  else if (order == "best")
    config.order = OrderStrategy::kBest;
  else
    throw InvalidInput("order must be natural or best");
  const auto rows = run_experiment(config);
  Output out(c.out);
  write_csv(out.stream(), rows);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Read-once branching program lower-bound toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Common c;
  app.add_option("--cap-vars", c.cap_vars, "Truth-table enumeration limit");
  app.add_option("--cap-subset", c.cap_subset, "Subset-DP vertex limit");
  app.add_flag("--exact", c.exact, "Rational arithmetic for weight checks");
  app.add_option("--seed", c.seed, "Seed for randomized sweeps");
  app.add_option("--out", c.out, "Output file (directory for gen)");

  int k = 6, r = 0, t = 1, max_graph = 6;
  std::int64_t max_vertices = std::int64_t{1} << 20;
  bool allow_small_r = false;
  std::string graph, cnf, bp, order = "natural", suite;
  ExperimentConfig experiment;

  auto* gen = app.add_subcommand("gen", "Generate a hard-family instance bundle");
  gen->add_option("-k", k, "Family parameter k")->required();
  gen->add_option("-r", r, "Tree depth")->required();
  gen->add_flag("--allow-small-r", allow_small_r, "Accept r below 5*ceil(log2 k)");
  gen->add_option("--max-vertices", max_vertices, "Write metadata only above this size");

  auto* compile = app.add_subcommand("compile", "Compile phi(G) into an NFBDD");
  auto* compile_in = compile->add_option("--graph", graph, "Edge-list file")->check(CLI::ExistingFile);
  compile->add_option("--cnf", cnf, "DIMACS file")->check(CLI::ExistingFile)->excludes(compile_in);
  compile->add_option("--order", order, "natural, best, or a comma-separated variable list");

  auto* mw = app.add_subcommand("mw", "Exact maximum matching width");
  mw->add_option("--graph", graph)->required()->check(CLI::ExistingFile);
  auto* dmw = app.add_subcommand("dmw", "Exact distant matching width");
  dmw->add_option("--graph", graph)->required()->check(CLI::ExistingFile);

  auto* uni = app.add_subcommand("uniformize", "Make a read-once program uniform");
  uni->add_option("--bp", bp)->required()->check(CLI::ExistingFile);

  auto* verify = app.add_subcommand("verify", "Run an invariant suite");
  verify->add_option("--suite", suite, "Suite name or all")->required();
  verify->add_option("--max-graph", max_graph, "Largest corpus graph for exhaustive sweeps");

  auto* cover = app.add_subcommand("cover", "Minimum DIS cover of the satisfying assignments");
  cover->add_option("--graph", graph)->required()->check(CLI::ExistingFile);
  cover->add_option("-t", t, "DIS size");

  auto* certify = app.add_subcommand("certify", "Extract and check a cut-cover certificate");
  certify->add_option("--graph", graph)->required()->check(CLI::ExistingFile);
  certify->add_option("--bp", bp, "Program to certify; compiled in natural order if omitted")
      ->check(CLI::ExistingFile);

  auto* exp = app.add_subcommand("experiment", "Size sweep over the hard family");
  exp->add_option("-k", experiment.k);
  exp->add_option("--r-min", experiment.r_min);
  exp->add_option("--r-max", experiment.r_max);
  exp->add_option("--order", order, "natural or best");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*gen) return cmd_gen(c, k, r, allow_small_r, max_vertices);
    if (*compile) {
      if (graph.empty() && cnf.empty()) throw InvalidInput("compile needs --graph or --cnf");
      return cmd_compile(c, graph, cnf, order);
    }
    if (*mw) return cmd_width(c, graph, false);
    if (*dmw) return cmd_width(c, graph, true);
    if (*uni) return cmd_uniformize(c, bp);
    if (*verify) return cmd_verify(c, suite, max_graph);
    if (*cover) return cmd_cover(c, graph, t);
    if (*certify) return cmd_certify(c, graph, bp);
    if (*exp) return cmd_experiment(c, experiment, order);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
