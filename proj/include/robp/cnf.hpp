#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "robp/errors.hpp"
#include "robp/graph.hpp"

namespace robp {

using Var = int;

struct Literal {
  Var var = 0;
  bool positive = true;

  static Literal pos(Var v) { return {v, true}; }
  static Literal neg(Var v) { return {v, false}; }
  Literal negated() const { return {var, !positive}; }
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

/// A set of literals with no variable occurring under both signs, kept
/// sorted by variable.
class Assignment {
 public:
  Assignment() = default;
  /// Throws InvalidInput if some variable occurs with both signs.
  explicit Assignment(std::vector<Literal> literals);
  /// Full assignment to variables 0..num_vars-1; bit i set means x_i true.
  static Assignment from_mask(std::uint64_t positives, int num_vars);

  std::span<const Literal> literals() const { return literals_; }
  std::optional<bool> value(Var v) const;
  bool empty() const { return literals_.empty(); }
  std::size_t size() const { return literals_.size(); }

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<Literal> literals_;
};

/// Every vertex of vs has its variable positive in s.
bool covers(const Assignment& s, std::span<const Vertex> vs);

/// Conjunction of positive 2-clauses (x_u | x_v), u != v.
class MonotoneCnf {
 public:
  MonotoneCnf() = default;
  /// Throws InvalidInput on out-of-range or repeated variables in a clause.
  MonotoneCnf(int num_vars, std::vector<Edge> clauses);

  int num_vars() const { return num_vars_; }
  std::span<const Edge> clauses() const { return clauses_; }
  bool satisfied_by(std::uint64_t positives) const;

  friend bool operator==(const MonotoneCnf&, const MonotoneCnf&) = default;

 private:
  int num_vars_ = 0;
  std::vector<Edge> clauses_;
};

/// Set of full truth assignments over variables 0..num_vars-1, each a bitmask
/// of the true variables. Sorted, without duplicates.
class AssignmentSet {
 public:
  AssignmentSet() = default;
  AssignmentSet(int num_vars, std::vector<std::uint64_t> masks);

  int num_vars() const { return num_vars_; }
  std::span<const std::uint64_t> masks() const { return masks_; }
  std::size_t size() const { return masks_.size(); }
  bool contains(std::uint64_t mask) const;

  friend bool operator==(const AssignmentSet&, const AssignmentSet&) = default;

 private:
  int num_vars_ = 0;
  std::vector<std::uint64_t> masks_;
};

/// Variable i for vertex i. Throws InvalidInput naming an isolated vertex.
MonotoneCnf cnf_from_graph(const Graph& g);
/// Duplicate clauses collapse to one edge.
Graph primal_graph(const MonotoneCnf& cnf);

/// Truth-table enumeration; throws CapExceeded when num_vars > cap.
AssignmentSet enumerate_satisfying(const MonotoneCnf& cnf, std::size_t cap = Caps{}.vars);

/// Masks are limited to 62 variables no matter what cap the caller passes.
void require_enumerable(int num_vars, std::size_t cap, const char* what);

}  // namespace robp
