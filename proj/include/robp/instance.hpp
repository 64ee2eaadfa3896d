#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "robp/errors.hpp"
#include "robp/graph.hpp"
#include "robp/width.hpp"

namespace robp {

/// Rooted tree given by parent pointers; the root's parent is -1.
class LabeledTree {
 public:
  LabeledTree() = default;
  /// Throws InvalidInput unless the pointers form a single rooted tree.
  explicit LabeledTree(std::vector<int> parent);

  int num_nodes() const { return static_cast<int>(parent_.size()); }
  int root() const { return root_; }
  int parent(int node) const { return parent_.at(node); }
  std::span<const int> children(int node) const { return children_.at(node); }
  int depth(int node) const { return depth_.at(node); }
  int degree(int node) const;
  /// (parent, child) pairs in child order.
  std::vector<Edge> edges() const;
  /// Nodes on the unique path from a to b, both ends included.
  std::vector<int> path(int a, int b) const;

 private:
  std::vector<int> parent_;
  std::vector<std::vector<int>> children_;
  std::vector<int> depth_;
  int root_ = -1;
};

/// Complete binary tree of height r (2^{r+1}-1 nodes), numbered in preorder
/// so that every subtree occupies a contiguous id range. Root is node 0.
LabeledTree complete_binary_tree(int r);

/// T(H): one copy of H per tree node, same-label vertices of adjacent copies
/// joined. Vertex (copy, label) has id copy * |V(H)| + label. H must be
/// connected and nonempty.
Graph tree_product(const LabeledTree& t, const Graph& h);

struct FamilyParams {
  int k = 0;
  int y = 0;         // 0..3 with 4 | k - y + 1
  int r = 0;
  int p = 0;         // (k - y + 1) / 4
  int path_len = 0;  // (k - y + 1) / 2
  std::int64_t n = 0;

  std::string header() const;
};

/// 5 * ceil(log2 k).
int family_r_threshold(int k);

/// Parameters of T_r(P_{(k-y+1)/2}) without building the graph. Rejects
/// r below family_r_threshold(k) unless allow_small_r.
FamilyParams family_params(int k, int r, bool allow_small_r);

struct FamilyInstance {
  Graph graph;
  FamilyParams params;
  LabeledTree tree;
  Graph pattern;  // the path P_{path_len}
};

FamilyInstance hard_family_instance(int k, int r, bool allow_small_r,
                                    std::int64_t max_vertices = std::int64_t{1} << 24);

struct TreeDecomposition {
  LabeledTree tree;
  std::vector<VertexSet> bags;  // sorted, one per tree node

  int width() const;
};

/// Root bag is the root's copy; every other bag is its own copy plus its
/// parent's copy.
TreeDecomposition canonical_tree_decomposition(const LabeledTree& t, const Graph& h);

enum class TdRule { kShape, kInvalidVertex, kUnion, kContainment, kConnectedness };

struct TdViolation {
  TdRule rule;
  Vertex vertex = -1;  // union / connectedness / invalid vertex
  Edge edge{};         // containment
  int node = -1;       // invalid vertex

  std::string describe() const;
};

struct TdReport {
  std::vector<TdViolation> violations;
  int width = -1;

  bool ok() const { return violations.empty(); }
};

TdReport validate_tree_decomposition(const Graph& g, const TreeDecomposition& td);

enum class CrossMatchingBranch { kMixedCopies, kPathWalk };

struct CrossMatching {
  Matching matching;
  CrossMatchingBranch branch;
};

/// A matching of size p in T(H) whose edges all cross the partition. Uses
/// one split edge per copy when at least p copies are mixed, and otherwise
/// walks the tree path between a one-class copy and a copy holding at least
/// p vertices of the other class. Throws InvalidInput naming the failed
/// precondition.
CrossMatching cross_matching_finder(const LabeledTree& t, const Graph& h, const PrefixPartition& part, int p);

}  // namespace robp
