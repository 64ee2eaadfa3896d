#include "robp/cnf.hpp"

#include <algorithm>
#include <string>

namespace robp {

Assignment::Assignment(std::vector<Literal> literals) : literals_(std::move(literals)) {
  std::sort(literals_.begin(), literals_.end());
  literals_.erase(std::unique(literals_.begin(), literals_.end()), literals_.end());
  for (std::size_t i = 1; i < literals_.size(); ++i)
    if (literals_[i].var == literals_[i - 1].var)
      throw InvalidInput("variable " + std::to_string(literals_[i].var) + " occurs with both signs");
}

Assignment Assignment::from_mask(std::uint64_t positives, int num_vars) {
  std::vector<Literal> lits;
  lits.reserve(num_vars);
  for (Var v = 0; v < num_vars; ++v) lits.push_back({v, ((positives >> v) & 1u) != 0});
  return Assignment(std::move(lits));
}

std::optional<bool> Assignment::value(Var v) const {
  auto it = std::lower_bound(literals_.begin(), literals_.end(), Literal::neg(v));
  if (it == literals_.end() || it->var != v) return std::nullopt;
  return it->positive;
}

bool covers(const Assignment& s, std::span<const Vertex> vs) {
  return std::all_of(vs.begin(), vs.end(), [&](Vertex v) { return s.value(v) == true; });
}

MonotoneCnf::MonotoneCnf(int num_vars, std::vector<Edge> clauses) : num_vars_(num_vars) {
  if (num_vars < 0) throw InvalidInput("negative variable count");
  clauses_.reserve(clauses.size());
  for (const Edge& c : clauses) {
    if (c.u < 0 || c.v < 0 || c.u >= num_vars || c.v >= num_vars)
      throw InvalidInput("clause variable out of range");
    if (c.u == c.v) throw InvalidInput("clause repeats variable " + std::to_string(c.u));
    clauses_.push_back(c.normalized());
  }
}

bool MonotoneCnf::satisfied_by(std::uint64_t positives) const {
  return std::all_of(clauses_.begin(), clauses_.end(), [&](const Edge& c) {
    return ((positives >> c.u) & 1u) != 0 || ((positives >> c.v) & 1u) != 0;
  });
}

AssignmentSet::AssignmentSet(int num_vars, std::vector<std::uint64_t> masks)
    : num_vars_(num_vars), masks_(std::move(masks)) {
  std::sort(masks_.begin(), masks_.end());
  masks_.erase(std::unique(masks_.begin(), masks_.end()), masks_.end());
}

bool AssignmentSet::contains(std::uint64_t mask) const {
  return std::binary_search(masks_.begin(), masks_.end(), mask);
}

MonotoneCnf cnf_from_graph(const Graph& g) {
  if (auto iso = g.first_isolated())
    throw InvalidInput("vertex " + std::to_string(*iso) + " is isolated; phi(G) needs every vertex in a clause");
  return MonotoneCnf(g.num_vertices(), g.edges());
}

Graph primal_graph(const MonotoneCnf& cnf) {
  std::vector<Edge> edges(cnf.clauses().begin(), cnf.clauses().end());
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Graph(cnf.num_vars(), edges);
}

void require_enumerable(int num_vars, std::size_t cap, const char* what) {
  const std::size_t hard = 62;
  std::size_t limit = std::min(cap, hard);
  if (static_cast<std::size_t>(num_vars) > limit)
    throw CapExceeded(std::string(what) + ": variable count", static_cast<std::size_t>(num_vars), limit);
}

AssignmentSet enumerate_satisfying(const MonotoneCnf& cnf, std::size_t cap) {
  require_enumerable(cnf.num_vars(), cap, "enumerate_satisfying");
  std::vector<std::uint64_t> out;
  const std::uint64_t total = std::uint64_t{1} << cnf.num_vars();
  for (std::uint64_t m = 0; m < total; ++m)
    if (cnf.satisfied_by(m)) out.push_back(m);
  return AssignmentSet(cnf.num_vars(), std::move(out));
}

}  // namespace robp
