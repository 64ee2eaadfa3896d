#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "robp/bp.hpp"
#include "robp/corpus.hpp"
#include "robp/instance.hpp"
#include "robp/io.hpp"

using namespace robp;

namespace {

BpEdge pos(int a, int b, Var v) { return {a, b, Literal::pos(v)}; }
BpEdge neg(int a, int b, Var v) { return {a, b, Literal::neg(v)}; }
BpEdge free_edge(int a, int b) { return {a, b, std::nullopt}; }

bool has_rule(const BpReport& r, BpRule rule) {
  return std::any_of(r.violations.begin(), r.violations.end(), [&](const BpViolation& v) { return v.rule == rule; });
}

// ((x0 v x1) & (x2 v x3)) v ((x4 v x5) & (x6 v x7)): two unlabelled branches
// out of the root, each a pair of parallel "or" stages.
Nrobp two_branch_program() {
  return Nrobp(6, 8, 0, 5,
               {free_edge(0, 1), pos(1, 2, 0), pos(1, 2, 1), pos(2, 5, 2), pos(2, 5, 3), free_edge(0, 3),
                pos(3, 4, 4), pos(3, 4, 5), pos(4, 5, 6), pos(4, 5, 7)});
}

Nrobp diamond() { return Nrobp(4, 2, 0, 3, {pos(0, 1, 0), pos(0, 2, 1), free_edge(1, 3), free_edge(2, 3)}); }

Nfbdd compile(const Graph& g, std::vector<Var> order) { return nfbdd_compile(cnf_from_graph(g), order); }

Nfbdd compile_natural(const Graph& g) { return compile(g, natural_order(g.num_vertices())); }

std::size_t min_size_over_orders(const MonotoneCnf& cnf) {
  std::vector<Var> order = natural_order(cnf.num_vars());
  std::size_t best = SIZE_MAX;
  do best = std::min(best, nfbdd_compile(cnf, order).size());
  while (std::next_permutation(order.begin(), order.end()));
  return best;
}

}  // namespace

TEST_CASE("minimal programs validate") {
  const Nrobp one(2, 1, 0, 1, {pos(0, 1, 0)});
  CHECK(validate_nrobp(one).ok());
  CHECK(is_uniform(one));
  CHECK(oracle::as_set(bp_satisfying_set(one)) == std::set<std::uint64_t>{1});
}

TEST_CASE("two-branch fixture") {
  const Nrobp z = two_branch_program();
  CHECK(validate_nrobp(z).ok());
  CHECK_FALSE(is_uniform(z));
  std::set<std::uint64_t> expected;
  for (std::uint64_t m = 0; m < 256; ++m) {
    auto x = [&](int i) { return (m >> i & 1u) != 0; };
    if (((x(0) || x(1)) && (x(2) || x(3))) || ((x(4) || x(5)) && (x(6) || x(7)))) expected.insert(m);
  }
  CHECK(oracle::as_set(bp_satisfying_set(z)) == expected);
  const Nrobp u = uniformize(z);
  CHECK(is_uniform(u));
  CHECK(bp_equivalence(z, u));
}

TEST_CASE("read-once violations name the variable and path") {
  const Nrobp z(3, 1, 0, 2, {pos(0, 1, 0), neg(1, 2, 0)});
  const BpReport r = validate_nrobp(z);
  REQUIRE(has_rule(r, BpRule::kReadOnce));
  const BpViolation& v = r.violations.front();
  CHECK(v.var == 0);
  CHECK(v.witness_path == std::vector<int>{0, 1});
  CHECK(v.describe().find("x0") != std::string::npos);
  CHECK_THROWS_AS(require_valid(z), InvalidInput);
  CHECK_THROWS_AS((void)is_uniform(z), InvalidInput);
}

TEST_CASE("structural violations") {
  CHECK(has_rule(validate_nrobp(Nrobp(3, 0, 0, 2, {free_edge(0, 1), free_edge(1, 0), free_edge(1, 2)})), BpRule::kCycle));
  CHECK(has_rule(validate_nrobp(Nrobp(3, 0, 0, 2, {free_edge(0, 2), free_edge(1, 2)})), BpRule::kExtraSource));
  CHECK(has_rule(validate_nrobp(Nrobp(3, 0, 0, 2, {free_edge(0, 2), free_edge(0, 1)})), BpRule::kExtraSink));
  CHECK(has_rule(validate_nrobp(Nrobp(2, 0, 0, 0, {})), BpRule::kRootIsLeaf));
  CHECK(has_rule(validate_nrobp(Nrobp(4, 0, 0, 1, {free_edge(0, 1), free_edge(2, 3), free_edge(3, 2)})),
                 BpRule::kDisconnected));
  CHECK(has_rule(validate_nrobp(Nrobp(2, 1, 0, 1, {pos(0, 1, 3)})), BpRule::kLabelRange));
  CHECK_THROWS_AS(Nrobp(2, 1, 0, 1, {pos(0, 5, 0)}), InvalidInput);
}

TEST_CASE("uniformity") {
  CHECK(is_uniform(Nrobp(4, 3, 0, 3, {pos(0, 1, 0), neg(1, 2, 1), pos(2, 3, 2)})));
  CHECK_FALSE(is_uniform(diamond()));
}

TEST_CASE("uniformizing the diamond") {
  const Nrobp z = diamond();
  const Nrobp u = uniformize(z);
  CHECK(validate_nrobp(u).ok());
  CHECK(is_uniform(u));
  CHECK(oracle::as_set(bp_satisfying_set(u)) == std::set<std::uint64_t>{1, 2, 3});
  CHECK(bp_equivalence(z, u));
  CHECK(u.size() <= 5 * z.size());
  for (const auto& path : root_leaf_paths(u)) {
    std::set<Var> read;
    for (int id : path)
      if (u.edge(id).label) read.insert(u.edge(id).label->var);
    CHECK(read == std::set<Var>{0, 1});
  }
}

TEST_CASE("uniformize on an already uniform program keeps its function") {
  const Nfbdd y = compile_natural(cycle_graph(5));
  const Nrobp u = uniformize(y.program());
  CHECK(is_uniform(u));
  CHECK(bp_equivalence(y.program(), u));
  CHECK(u.size() <= 11 * y.size());
}

TEST_CASE("uniformize over random programs") {
  Rng rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const int vars = 1 + trial % 10;
    const Nrobp z = random_nrobp(2 + trial % 9, vars, trial % 7, rng);
    REQUIRE(validate_nrobp(z).ok());
    const Nrobp u = uniformize(z);
    CHECK(validate_nrobp(u).ok());
    CHECK(is_uniform(u));
    CHECK(oracle::as_set(bp_satisfying_set(u)) == oracle::as_set(bp_satisfying_set(z)));
    CHECK(u.size() <= static_cast<std::size_t>(2 * vars + 1) * z.size());
  }
}

TEST_CASE("satisfying sets agree with path enumeration") {
  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const Nrobp z = random_nrobp(2 + trial % 8, 1 + trial % 6, trial % 5, rng);
    CHECK(oracle::as_set(bp_satisfying_set(z)) == oracle::program_models(z));
  }
  CHECK_THROWS_AS(bp_satisfying_set(Nrobp(2, 30, 0, 1, {pos(0, 1, 0)})), CapExceeded);
}

TEST_CASE("random programs are reproducible") {
  Rng a(77), b(77);
  for (int i = 0; i < 50; ++i) {
    const Nrobp x = random_nrobp(7, 5, 4, a), y = random_nrobp(7, 5, 4, b);
    CHECK(std::equal(x.edges().begin(), x.edges().end(), y.edges().begin(), y.edges().end()));
  }
}

TEST_CASE("equivalence detects a flipped literal") {
  const Nrobp z(4, 3, 0, 3, {pos(0, 1, 0), neg(0, 1, 0), pos(1, 2, 1), pos(2, 3, 2), neg(2, 3, 2)});
  const Nrobp flipped(4, 3, 0, 3, {pos(0, 1, 0), neg(0, 1, 0), neg(1, 2, 1), pos(2, 3, 2), neg(2, 3, 2)});
  CHECK(bp_equivalence(z, z));
  CHECK_FALSE(bp_equivalence(z, flipped));
}

TEST_CASE("nfbdd type checks") {
  CHECK_THROWS_AS(Nfbdd(Nrobp(2, 1, 0, 1, {free_edge(0, 1)})), InvalidInput);
  CHECK_THROWS_AS(Nfbdd(Nrobp(2, 1, 0, 1, {pos(0, 1, 0), pos(0, 1, 0)})), InvalidInput);
  CHECK_THROWS_AS(Nfbdd(Nrobp(3, 2, 0, 2, {pos(0, 1, 0), neg(0, 1, 1), pos(1, 2, 1)})), InvalidInput);
  CHECK_THROWS_AS(Nfbdd{diamond()}, InvalidInput);
  const Nfbdd y(Nrobp(3, 2, 0, 2, {pos(0, 1, 0), neg(0, 1, 0), pos(1, 2, 1)}));
  CHECK(y.var_of(0) == 0);
  CHECK(y.var_of(2) == -1);
  CHECK(y.positive_child(0) == 1);
  CHECK(y.negative_child(1) == std::nullopt);
}

TEST_CASE("compiling phi(K2)") {
  const Nfbdd y = compile(complete_graph(2), {0, 1});
  CHECK(y.size() == 5);
  CHECK(y.num_nodes() == 4);
  CHECK(y.var_of(y.root()) == 0);
  const int p = *y.positive_child(y.root()), n = *y.negative_child(y.root());
  CHECK(y.out_degree(p) == 2);
  CHECK(y.out_degree(n) == 1);
  CHECK(y.positive_child(n).has_value());
  CHECK(bp_satisfying_set(y.program()).size() == 3);
  CHECK(compile(complete_graph(2), {1, 0}).size() == y.size());
}

TEST_CASE("frozen compiled sizes") {
  const Nfbdd c3 = compile_natural(cycle_graph(3));
  CHECK(c3.size() == 8);
  CHECK(c3.num_nodes() == 6);
  const Nfbdd c6 = compile_natural(cycle_graph(6));
  CHECK(c6.size() == 25);
  CHECK(c6.num_nodes() == 17);
  const Graph t1k2 = tree_product(complete_binary_tree(1), complete_graph(2));
  const Nfbdd t = compile_natural(t1k2);
  CHECK(t.size() == 24);
  CHECK(t.num_nodes() == 16);
}

TEST_CASE("compiled diagrams realize phi under many orders") {
  Rng rng(31);
  for (const Graph& g : connected_corpus(6)) {
    std::vector<Var> order = natural_order(g.num_vertices());
    for (int round = 0; round < 3; ++round) {
      const Nfbdd y = compile(g, order);
      CHECK(validate_nrobp(y.program()).ok());
      CHECK(is_uniform(y.program()));
      CHECK(oracle::program_models(y.program()) == oracle::phi_models(g));
      for (int a = 0; a < y.num_nodes(); ++a)
        if (a != y.leaf() && y.out_degree(a) == 1) CHECK(y.positive_child(a).has_value());
      std::shuffle(order.begin(), order.end(), rng);
    }
  }
}

TEST_CASE("compile rejects bad orders") {
  const MonotoneCnf cnf = cnf_from_graph(path_graph(3));
  const std::vector<Var> short_order{0, 1}, repeated{0, 1, 1};
  CHECK_THROWS_AS(nfbdd_compile(cnf, short_order), InvalidInput);
  CHECK_THROWS_AS(nfbdd_compile(cnf, repeated), InvalidInput);
}

TEST_CASE("best order search") {
  const BestOrder k2 = best_order_size(cnf_from_graph(complete_graph(2)));
  CHECK(k2.edges == 5);
  const BestOrder c6 = best_order_size(cnf_from_graph(cycle_graph(6)));
  CHECK(c6.edges == 25);
  CHECK(c6.nodes == 17);
  const Graph t1k2 = tree_product(complete_binary_tree(1), complete_graph(2));
  const BestOrder t = best_order_size(cnf_from_graph(t1k2));
  CHECK(t.edges == 22);
  CHECK(t.nodes == 15);
  CHECK(nfbdd_compile(cnf_from_graph(t1k2), t.order).size() == 22);
  CHECK_THROWS_AS(best_order_size(cnf_from_graph(path_graph(13))), CapExceeded);
}

TEST_CASE("best order matches exhaustive order search") {
  for (const Graph& g : connected_corpus(6)) {
    const MonotoneCnf cnf = cnf_from_graph(g);
    const BestOrder best = best_order_size(cnf);
    CHECK(best.edges == min_size_over_orders(cnf));
    CHECK(best.edges <= nfbdd_compile(cnf, natural_order(cnf.num_vars())).size());
  }
}

TEST_CASE("natural-order sizes grow with tree height") {
  std::size_t previous = 0;
  for (int r = 1; r <= 5; ++r) {
    const FamilyInstance inst = hard_family_instance(6, r, true);
    const Nfbdd y = compile_natural(inst.graph);
    CHECK(y.size() >= previous);
    previous = y.size();
  }
}

TEST_CASE("root-leaf path enumeration") {
  const Nfbdd y = compile(complete_graph(2), {0, 1});
  CHECK(root_leaf_paths(y.program()).size() == 3);
  CHECK_THROWS_AS(root_leaf_paths(y.program(), 2), CapExceeded);
}

TEST_CASE("bp text format") {
  const Nrobp z = two_branch_program();
  std::stringstream s;
  write_bp(s, z);
  CHECK(s.str().rfind("bp 6 10 8 0 5\n", 0) == 0);
  const Nrobp back = read_bp(s);
  CHECK(bp_equivalence(z, back));
  const auto order = topological_order(back);
  REQUIRE(order.has_value());
  CHECK(std::is_sorted(order->begin(), order->end()));

  std::istringstream bad("bp 2 1 1 0 1\n0 1 *0\n");
  CHECK_THROWS_AS((void)read_bp(bad), ParseError);
  std::istringstream labels("bp 2 2 2 0 1\n0 1 +1\n0 1 .\n");
  const Nrobp parsed = read_bp(labels);
  CHECK(parsed.edge(0).label == Literal::pos(1));
  CHECK_FALSE(parsed.edge(1).label.has_value());
}
