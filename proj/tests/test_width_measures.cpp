#include <doctest.h>

#include "oracles.hpp"
#include "robp/corpus.hpp"
#include "robp/instance.hpp"
#include "robp/width.hpp"

using namespace robp;

namespace {

PrefixPartition prefix_of(int n, std::vector<Vertex> prefix) { return PrefixPartition(n, prefix); }

int max_of(const std::vector<int>& xs) { return xs.empty() ? 0 : *std::max_element(xs.begin(), xs.end()); }

// Frozen from the brute-force permutation oracle.
struct WidthCase {
  const char* name;
  Graph g;
  int mw;
  int dmw;
};

std::vector<WidthCase> frozen_widths() {
  return {{"K4", complete_graph(4), 2, 1}, {"K5", complete_graph(5), 2, 1}, {"K6", complete_graph(6), 3, 1},
          {"C6", cycle_graph(6), 2, 1},    {"C8", cycle_graph(8), 2, 2},    {"P4", path_graph(4), 1, 1}};
}

}  // namespace

TEST_CASE("prefix partitions") {
  const PrefixPartition p = prefix_of(5, {3, 1});
  CHECK(p.prefix() == VertexSet{1, 3});
  CHECK(p.suffix() == VertexSet{0, 2, 4});
  CHECK(PrefixPartition::from_mask(5, 0b1010).prefix() == VertexSet{1, 3});
  CHECK_THROWS_AS(prefix_of(3, {1, 1}), InvalidInput);
  CHECK_THROWS_AS(prefix_of(3, {4}), InvalidInput);
}

TEST_CASE("cut matching sizes") {
  CHECK(cut_matching_size(cycle_graph(6), prefix_of(6, {0, 1, 2})) == 2);
  CHECK(cut_matching_size(complete_graph(6), prefix_of(6, {0, 1, 2})) == 3);
  CHECK(cut_matching_size(complete_graph(6), prefix_of(6, {})) == 0);
  const Matching m = max_cut_matching(cycle_graph(6), prefix_of(6, {0, 1, 2}));
  CHECK(m.size() == 2);
  for (const Edge& e : m) CHECK(e.u <= 2);
}

TEST_CASE("cut distant matching sizes") {
  CHECK(cut_distant_matching_size(cycle_graph(8), prefix_of(8, {0, 1, 2, 3})) == 2);
  CHECK(cut_distant_matching_size(cycle_graph(8), prefix_of(8, {})) == 0);
  for (std::uint64_t mask = 0; mask < 64; ++mask)
    CHECK(cut_distant_matching_size(cycle_graph(6), PrefixPartition::from_mask(6, mask)) <= 1);
  CHECK_THROWS_AS(cut_distant_matching_size(complete_graph(6), prefix_of(6, {0, 1, 2}), 4), CapExceeded);
}

TEST_CASE("cut values agree with subset oracles on every prefix of small graphs") {
  for (const Graph& g : connected_corpus(6)) {
    const int n = g.num_vertices();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      const auto part = PrefixPartition::from_mask(n, mask);
      CHECK(cut_matching_size(g, part) == oracle::cut_matching(g, mask));
      const Matching d = max_cut_distant_matching(g, part);
      CHECK(static_cast<int>(d.size()) == oracle::cut_distant_matching(g, mask));
      CHECK(is_distant_matching(g, d));
    }
  }
}

TEST_CASE("frozen width values") {
  for (const auto& c : frozen_widths()) {
    CAPTURE(c.name);
    const WidthResult mw = mw_exact(c.g);
    const WidthResult dmw = dmw_exact(c.g);
    CHECK(mw.value == c.mw);
    CHECK(dmw.value == c.dmw);
    CHECK(mw.value == oracle::mw(c.g));
    CHECK(dmw.value == oracle::dmw(c.g));
  }
}

TEST_CASE("complete graphs have mw floor(n/2) and dmw 1") {
  for (int n = 2; n <= 8; ++n) {
    CHECK(mw_exact(complete_graph(n)).value == n / 2);
    CHECK(dmw_exact(complete_graph(n)).value == 1);
  }
}

TEST_CASE("witnesses realize the width") {
  for (const Graph& g : connected_corpus(6)) {
    for (const WidthResult& w : {mw_exact(g), dmw_exact(g)}) {
      const int n = g.num_vertices();
      REQUIRE(static_cast<int>(w.witness_order.size()) == n);
      REQUIRE(static_cast<int>(w.witness_cuts.size()) == n - 1);
      CHECK(max_of(w.witness_cuts) == w.value);
    }
    const WidthResult mw = mw_exact(g);
    std::uint64_t prefix = 0;
    for (std::size_t i = 0; i + 1 < mw.witness_order.size(); ++i) {
      prefix |= std::uint64_t{1} << mw.witness_order[i];
      CHECK(mw.witness_cuts[i] == oracle::cut_matching(g, prefix));
    }
  }
}

TEST_CASE("subset DP matches the permutation oracle on connected graphs up to 6 vertices") {
  for (const Graph& g : connected_corpus(6)) {
    CHECK(mw_exact(g).value == oracle::mw(g));
    CHECK(dmw_exact(g).value == oracle::dmw(g));
  }
}

TEST_CASE("dmw is sandwiched between mw and mw over the distant factor") {
  Rng rng(21);
  std::vector<Graph> graphs = connected_corpus(6);
  for (int i = 0; i < 100; ++i) graphs.push_back(random_bounded_degree_graph(4 + i % 7, 5, 0.4, rng));
  for (const Graph& g : graphs) {
    const int mw = mw_exact(g).value, dmw = dmw_exact(g).value;
    CHECK(dmw <= mw);
    CHECK(dmw * distant_factor(g.max_degree()) >= mw);
  }
}

TEST_CASE("caps are enforced") {
  CHECK_THROWS_AS(mw_exact(path_graph(10), 8), CapExceeded);
  CHECK_THROWS_AS(dmw_exact(path_graph(10), 8), CapExceeded);
}

TEST_CASE("greedy distant extraction") {
  const Graph c8 = cycle_graph(8);
  const Matching m{{0, 1}, {2, 3}, {4, 5}};
  CHECK(greedy_distant_extraction(c8, m) == Matching{{0, 1}, {4, 5}});
  const Matching one{{2, 3}};
  CHECK(greedy_distant_extraction(c8, one) == one);
  const Matching bad{{0, 2}};
  CHECK_THROWS_AS(greedy_distant_extraction(c8, bad), InvalidMatching);
  CHECK(distant_factor(5) == 61);
}

TEST_CASE("greedy extraction keeps the guaranteed fraction") {
  Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = random_bounded_degree_graph(6 + trial % 10, 5, 0.4, rng);
    const int n = g.num_vertices();
    const auto part = PrefixPartition::from_mask(n, rng() & ((std::uint64_t{1} << n) - 1));
    const Matching m = max_cut_matching(g, part);
    const Matching d = greedy_distant_extraction(g, m);
    CHECK(is_distant_matching(g, d));
    const int c = g.max_degree();
    CHECK(static_cast<int>(d.size()) * distant_factor(c) >= static_cast<int>(m.size()));
  }
}

TEST_CASE("structural lower bound formula") {
  CHECK(mw_structural_lower_bound(2, 1) == Rational(3, 2));
  CHECK(mw_structural_lower_bound(4, 2) == Rational(4));
  CHECK(mw_structural_lower_bound(2, 4) == Rational(2));
  CHECK_THROWS_AS(mw_structural_lower_bound(1, 4), InvalidInput);
  CHECK(ceil_log2(1) == 0);
  CHECK(ceil_log2(5) == 3);
  CHECK(ceil_log2(8) == 3);
}

TEST_CASE("tree products meet the structural bound at p = 1") {
  for (int r = 1; r <= 2; ++r) {
    const Graph g = tree_product(complete_binary_tree(r), complete_graph(2));
    CHECK(Rational(mw_exact(g).value) >= mw_structural_lower_bound(r, 1));
  }
}
