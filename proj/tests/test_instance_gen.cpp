#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "robp/cnf.hpp"
#include "robp/corpus.hpp"
#include "robp/instance.hpp"
#include "robp/io.hpp"
#include "robp/width.hpp"

using namespace robp;

namespace {

bool has_rule(const TdReport& r, TdRule rule) {
  return std::any_of(r.violations.begin(), r.violations.end(), [&](const TdViolation& v) { return v.rule == rule; });
}

void check_cross_matching(const Graph& g, const PrefixPartition& part, const CrossMatching& cm, int p) {
  CHECK(static_cast<int>(cm.matching.size()) >= p);
  CHECK_NOTHROW(require_matching(g, cm.matching));
  for (const Edge& e : cm.matching) CHECK(part.in_prefix(e.u) != part.in_prefix(e.v));
}

}  // namespace

TEST_CASE("complete binary trees") {
  CHECK(complete_binary_tree(0).num_nodes() == 1);
  CHECK(complete_binary_tree(3).num_nodes() == 15);
  const LabeledTree t = complete_binary_tree(2);
  CHECK(t.root() == 0);
  CHECK(t.children(0).size() == 2);
  int grandchildren = 0;
  for (int c : t.children(0)) grandchildren += static_cast<int>(t.children(c).size());
  CHECK(grandchildren == 4);
  const LabeledTree t4 = complete_binary_tree(4);
  for (int v = 0; v < t4.num_nodes(); ++v)
    if (t4.children(v).empty()) CHECK(t4.depth(v) == 4);
  CHECK(t.path(2, 3) == std::vector<int>{2, 1, 3});
}

TEST_CASE("labeled trees reject non-trees") {
  CHECK_THROWS_AS(LabeledTree({-1, 2, 1}), InvalidInput);
  CHECK_THROWS_AS(LabeledTree({-1, -1}), InvalidInput);
  CHECK_THROWS_AS(LabeledTree({-1, 5}), InvalidInput);
}

TEST_CASE("tree products") {
  const Graph two = tree_product(LabeledTree({-1, 0}), complete_graph(2));
  CHECK(two.num_vertices() == 4);
  CHECK(two.num_edges() == 4);
  CHECK(tree_product(LabeledTree({-1}), cycle_graph(5)) == cycle_graph(5));
  const std::vector<Edge> one{{0, 1}};
  CHECK_THROWS_AS(tree_product(LabeledTree({-1, 0}), Graph(3, one)), InvalidInput);

  const Graph t1k2 = tree_product(complete_binary_tree(1), complete_graph(2));
  CHECK(t1k2.edges() == std::vector<Edge>{{0, 1}, {0, 2}, {0, 4}, {1, 3}, {1, 5}, {2, 3}, {4, 5}});
}

TEST_CASE("tree product sizes and degrees") {
  for (int r = 0; r <= 3; ++r)
    for (int m = 1; m <= 4; ++m) {
      const LabeledTree t = complete_binary_tree(r);
      const Graph h = path_graph(m);
      const Graph g = tree_product(t, h);
      CHECK(g.num_vertices() == t.num_nodes() * m);
      for (Vertex v = 0; v < g.num_vertices(); ++v) CHECK(g.degree(v) <= h.degree(v % m) + t.degree(v / m));
    }
}

TEST_CASE("family parameters") {
  const FamilyParams p = family_params(50, 30, false);
  CHECK(p.y == 3);
  CHECK(p.path_len == 24);
  CHECK(p.p == 12);
  CHECK(p.n == ((std::int64_t{1} << 31) - 1) * 24);
  CHECK(family_r_threshold(50) == 30);
  CHECK(family_params(6, 2, true).n == 7 * 2);
  CHECK_THROWS_AS(family_params(6, 1, false), InvalidInput);
  CHECK_THROWS_AS(family_params(1, 5, true), InvalidInput);
  CHECK_THROWS_AS(family_params(2, 5, true), InvalidInput);
  CHECK_THROWS_AS(hard_family_instance(50, 30, false), CapExceeded);
}

TEST_CASE("family instances have the claimed structure") {
  for (int k : {5, 6, 7, 8, 10, 50})
    for (int r = 0; r <= 3; ++r) {
      const FamilyInstance inst = hard_family_instance(k, r, true);
      const FamilyParams& p = inst.params;
      CAPTURE(p.header());
      CHECK((k - p.y + 1) % 4 == 0);
      CHECK(p.path_len == 2 * p.p);
      CHECK(inst.graph.num_vertices() == ((1 << (r + 1)) - 1) * (k - p.y + 1) / 2);
      CHECK(inst.graph.max_degree() <= 5);
      CHECK(primal_graph(cnf_from_graph(inst.graph)) == inst.graph);
      const TdReport report = validate_tree_decomposition(inst.graph, canonical_tree_decomposition(inst.tree, inst.pattern));
      CHECK(report.ok());
      CHECK(report.width <= k - p.y);
    }
}

TEST_CASE("canonical tree decompositions") {
  const Graph h = complete_graph(2);
  const TreeDecomposition single = canonical_tree_decomposition(LabeledTree({-1}), h);
  CHECK(single.bags == std::vector<VertexSet>{{0, 1}});
  CHECK(single.width() == 1);

  const LabeledTree t = complete_binary_tree(1);
  const TreeDecomposition td = canonical_tree_decomposition(t, h);
  REQUIRE(td.bags.size() == 3);
  CHECK(td.bags[0].size() == 2);
  CHECK(td.bags[1].size() == 4);
  CHECK(td.bags[2].size() == 4);
  CHECK(td.width() == 3);
  CHECK(validate_tree_decomposition(tree_product(t, h), td).ok());
}

TEST_CASE("tree decomposition violations carry witnesses") {
  const LabeledTree t = complete_binary_tree(1);
  const Graph h = complete_graph(2);
  const Graph g = tree_product(t, h);
  const TreeDecomposition good = canonical_tree_decomposition(t, h);

  TreeDecomposition emptied = good;
  emptied.bags[2].clear();
  const TdReport u = validate_tree_decomposition(g, emptied);
  REQUIRE(has_rule(u, TdRule::kUnion));
  const auto missing = std::find_if(u.violations.begin(), u.violations.end(),
                                    [](const TdViolation& v) { return v.rule == TdRule::kUnion; });
  CHECK((missing->vertex == 4 || missing->vertex == 5));

  // Vertex 2 and 3 only in bag 1 without 0 and 1: edges {0,2} and {1,3} lose their bag.
  TreeDecomposition split = good;
  split.bags[1] = {2, 3};
  const TdReport c = validate_tree_decomposition(g, split);
  REQUIRE(has_rule(c, TdRule::kContainment));
  CHECK_FALSE(has_rule(c, TdRule::kUnion));

  TreeDecomposition scattered = good;
  scattered.bags[0] = {0, 1};
  scattered.bags[1] = {0, 1, 2, 3, 4};
  scattered.bags[2] = {0, 1, 4, 5};
  // 4 sits in bags 1 and 2, which are only joined through bag 0.
  const TdReport d = validate_tree_decomposition(g, scattered);
  REQUIRE(has_rule(d, TdRule::kConnectedness));
  CHECK_FALSE(d.violations.front().describe().empty());

  TreeDecomposition out_of_range = good;
  out_of_range.bags[0].push_back(99);
  CHECK(has_rule(validate_tree_decomposition(g, out_of_range), TdRule::kInvalidVertex));
}

TEST_CASE("tree decomposition text format round trips") {
  const FamilyInstance inst = hard_family_instance(6, 2, true);
  const TreeDecomposition td = canonical_tree_decomposition(inst.tree, inst.pattern);
  std::stringstream s;
  write_tree_decomposition(s, td, inst.params.header());
  CHECK(s.str().rfind("c k=6 y=3 r=2 p=1 n=14\ntd 7 4 14\nb 1 0 1 2\n", 0) == 0);
  const TreeDecomposition back = read_tree_decomposition(s);
  CHECK(back.bags == td.bags);
  CHECK(validate_tree_decomposition(inst.graph, back).ok());
}

TEST_CASE("cross matching finder on random partitions") {
  struct Case {
    LabeledTree t;
    Graph h;
    int p;
  };
  const std::vector<Case> cases{{complete_binary_tree(2), path_graph(4), 2},
                                {complete_binary_tree(3), complete_graph(2), 1}};
  Rng rng(17);
  for (const Case& c : cases) {
    const Graph g = tree_product(c.t, c.h);
    const int n = g.num_vertices();
    int path_walks = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      const int size = std::uniform_int_distribution<int>(c.p * c.p, n - c.p * c.p)(rng);
      std::vector<Vertex> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      // Half the trials keep copies whole to reach the path-walk branch.
      if (trial % 2 == 1) {
        std::vector<int> copies(c.t.num_nodes());
        std::iota(copies.begin(), copies.end(), 0);
        std::shuffle(copies.begin(), copies.end(), rng);
        perm.clear();
        for (int copy : copies)
          for (int l = 0; l < c.h.num_vertices(); ++l) perm.push_back(copy * c.h.num_vertices() + l);
      } else {
        std::shuffle(perm.begin(), perm.end(), rng);
      }
      const PrefixPartition part(n, std::span<const Vertex>(perm.data(), size));
      const CrossMatching cm = cross_matching_finder(c.t, c.h, part, c.p);
      check_cross_matching(g, part, cm, c.p);
      if (cm.branch == CrossMatchingBranch::kPathWalk) ++path_walks;
    }
    CHECK(path_walks > 0);
  }
}

TEST_CASE("cross matching finder walks the tree path") {
  const LabeledTree t = complete_binary_tree(2);
  const Graph h = path_graph(4);
  const Graph g = tree_product(t, h);
  const std::vector<Vertex> root_copy{0, 1, 2, 3};
  const PrefixPartition part(g.num_vertices(), root_copy);
  const CrossMatching cm = cross_matching_finder(t, h, part, 2);
  CHECK(cm.branch == CrossMatchingBranch::kPathWalk);
  check_cross_matching(g, part, cm, 2);
  for (const Edge& e : cm.matching) CHECK(e.u % 4 == e.v % 4);
}

TEST_CASE("cross matching finder preconditions") {
  const LabeledTree t = complete_binary_tree(1);
  const Graph h = path_graph(4);
  const int n = 12;
  const std::vector<Vertex> tiny{0};
  const std::vector<Vertex> half{0, 1, 2, 3, 4, 5};
  CHECK_THROWS_WITH_AS(cross_matching_finder(t, h, PrefixPartition(n, tiny), 2), doctest::Contains("prefix"),
                       InvalidInput);
  CHECK_THROWS_WITH_AS(cross_matching_finder(t, h, PrefixPartition(n, half), 3), doctest::Contains("2p"),
                       InvalidInput);
  CHECK_THROWS_AS(cross_matching_finder(t, h, PrefixPartition(n, half), 0), InvalidInput);
  CHECK_THROWS_AS(cross_matching_finder(t, h, PrefixPartition(5, half), 1), InvalidInput);
}

TEST_CASE("finder output agrees with the maximum cross matching") {
  const LabeledTree t = complete_binary_tree(1);
  const Graph h = path_graph(4);
  const Graph g = tree_product(t, h);
  for (std::uint64_t mask = 0; mask < (1u << 12); ++mask) {
    const int size = std::popcount(mask);
    if (size < 4 || size > 8) continue;
    const auto part = PrefixPartition::from_mask(12, mask);
    const CrossMatching cm = cross_matching_finder(t, h, part, 2);
    CHECK(cm.matching.size() >= 2);
    CHECK(static_cast<int>(cm.matching.size()) <= cut_matching_size(g, part));
  }
}
