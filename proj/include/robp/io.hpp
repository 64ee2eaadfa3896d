#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "robp/bp.hpp"
#include "robp/cnf.hpp"
#include "robp/cover.hpp"
#include "robp/graph.hpp"
#include "robp/instance.hpp"

namespace robp {

class ParseError : public InvalidInput {
 public:
  ParseError(int line, const std::string& what)
      : InvalidInput("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

// Graph edge list: `p edge <n> <m>` then `e <u> <v>`, ids 1-based in the file.
// Lines starting with `c` are comments.
Graph read_graph(std::istream& in);
void write_graph(std::ostream& out, const Graph& g, const std::string& comment = {});

// DIMACS CNF restricted to two positive literals per clause.
MonotoneCnf read_monotone_cnf(std::istream& in);
void write_cnf(std::ostream& out, const MonotoneCnf& cnf, const std::string& comment = {});

// `bp <nodes> <edges> <vars> <root> <leaf>`, then `<tail> <head> <label>` with
// label `+v`, `-v` (0-based variable) or `.`. Written in topological
// numbering.
Nrobp read_bp(std::istream& in);
void write_bp(std::ostream& out, const Nrobp& z);

// `td <bags> <max bag size> <vertices>`, then `b <node> <parent> <members...>`
// with 1-based node and vertex ids and parent 0 at the root.
TreeDecomposition read_tree_decomposition(std::istream& in);
void write_tree_decomposition(std::ostream& out, const TreeDecomposition& td, const std::string& comment = {});

// One `u <node> B <vertices> M <a>-<b> ...` line per cut node, then
// `q=<q> dmw=<d> bound=<2^{d/a_x}>`. 0-based ids.
void write_certificate(std::ostream& out, const CutCoverCertificate& cert, int max_degree);

/// 12 significant digits, `.` decimal point regardless of locale.
std::string format_number(double value);

Graph read_graph_file(const std::filesystem::path& path);
MonotoneCnf read_cnf_file(const std::filesystem::path& path);
Nrobp read_bp_file(const std::filesystem::path& path);

}  // namespace robp
