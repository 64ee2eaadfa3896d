#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "robp/cnf.hpp"
#include "robp/errors.hpp"

namespace robp {

struct BpEdge {
  int tail = 0;
  int head = 0;
  std::optional<Literal> label;

  friend bool operator==(const BpEdge&, const BpEdge&) = default;
};

/// Nondeterministic read-once branching program: a DAG with one root, one
/// leaf, parallel edges allowed, and edges optionally labelled by literals.
/// The constructor only checks ids; structural rules are checked by
/// validate_nrobp. Size is the edge count.
class Nrobp {
 public:
  Nrobp() = default;
  Nrobp(int num_nodes, int num_vars, int root, int leaf, std::vector<BpEdge> edges);

  int num_nodes() const { return num_nodes_; }
  int num_vars() const { return num_vars_; }
  int root() const { return root_; }
  int leaf() const { return leaf_; }
  std::size_t size() const { return edges_.size(); }
  std::span<const BpEdge> edges() const { return edges_; }
  const BpEdge& edge(int id) const { return edges_.at(id); }
  /// Edge ids leaving / entering a node, ascending.
  std::span<const int> out_edges(int node) const { return out_.at(node); }
  std::span<const int> in_edges(int node) const { return in_.at(node); }

 private:
  int num_nodes_ = 0;
  int num_vars_ = 0;
  int root_ = 0;
  int leaf_ = 0;
  std::vector<BpEdge> edges_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
};

/// Kahn order taking the lowest ready node id first; nullopt on a cycle.
std::optional<std::vector<int>> topological_order(const Nrobp& z);

/// Same program with node i renamed to its position in topological_order
/// and edges sorted by (tail, head, label). Throws InvalidInput on a cycle.
Nrobp renumber_topologically(const Nrobp& z);

enum class BpRule {
  kLabelRange,
  kRootIsLeaf,
  kCycle,
  kRootNotSource,
  kLeafNotSink,
  kExtraSource,
  kExtraSink,
  kDisconnected,
  kReadOnce,
};

struct BpViolation {
  BpRule rule;
  int node = -1;
  Var var = -1;
  std::vector<int> witness_path;  // edge ids, for kReadOnce

  std::string describe() const;
};

struct BpReport {
  std::vector<BpViolation> violations;
  bool ok() const { return violations.empty(); }
};

BpReport validate_nrobp(const Nrobp& z);
/// Throws InvalidInput carrying the first violation.
void require_valid(const Nrobp& z);

/// Every root-to-node path reads the same variable set and every root-leaf
/// path reads all num_vars variables. Throws InvalidInput if z is invalid.
bool is_uniform(const Nrobp& z);

/// Uniform NROBP for the same function. Non-leaf nodes are processed in
/// topological order; each in-edge is subdivided by a chain of parallel
/// opposite-literal pairs for the variables it misses, and leaf in-edges are
/// padded to all variables. Added nodes get fresh ids.
Nrobp uniformize(const Nrobp& z);

/// Full assignments extending the labels of some root-leaf path.
AssignmentSet bp_satisfying_set(const Nrobp& z, std::size_t cap = Caps{}.vars);

bool bp_equivalence(const Nrobp& a, const Nrobp& b, std::size_t cap = Caps{}.vars);

/// Every root-leaf path as a list of edge ids. Throws CapExceeded when there
/// are more than cap paths.
std::vector<std::vector<int>> root_leaf_paths(const Nrobp& z, std::size_t cap = Caps{}.paths);

/// Normalized free BDD: every edge labelled, every non-leaf node of
/// out-degree 1 or 2, degree-2 nodes carrying opposite literals of one
/// variable. Also required to be a valid, uniform NROBP.
class Nfbdd {
 public:
  /// Throws InvalidInput if z breaks any of the rules above.
  explicit Nfbdd(Nrobp z);

  const Nrobp& program() const { return program_; }
  int num_nodes() const { return program_.num_nodes(); }
  int root() const { return program_.root(); }
  int leaf() const { return program_.leaf(); }
  std::size_t size() const { return program_.size(); }
  /// Variable read at a non-leaf node; -1 at the leaf.
  Var var_of(int node) const { return var_of_.at(node); }
  int out_degree(int node) const { return static_cast<int>(program_.out_edges(node).size()); }
  /// Head of the positive / negative out-edge, if present.
  std::optional<int> positive_child(int node) const;
  std::optional<int> negative_child(int node) const;

 private:
  Nrobp program_;
  std::vector<Var> var_of_;
};

/// Ordered decision diagram of cnf under the given variable order. States at
/// a level are keyed by the unread variables forced true; dead states are
/// never created. Throws InvalidInput if order is not a permutation.
Nfbdd nfbdd_compile(const MonotoneCnf& cnf, std::span<const Var> order);

std::vector<Var> natural_order(int num_vars);

struct BestOrder {
  std::size_t edges = 0;
  std::size_t nodes = 0;
  std::vector<Var> order;
};

/// Minimum nfbdd_compile edge count over all variable orders, by dynamic
/// programming over the set of already-read variables. Throws CapExceeded
/// when num_vars > cap.
BestOrder best_order_size(const MonotoneCnf& cnf, std::size_t cap = Caps{}.best_order);

}  // namespace robp
