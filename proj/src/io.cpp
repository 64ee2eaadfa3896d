#include "robp/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <locale>
#include <ostream>
#include <sstream>
#include <vector>

namespace robp {

namespace {

// Non-comment, non-blank lines with their 1-based line numbers.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::istringstream& fields) {
    std::string text;
    while (std::getline(in_, text)) {
      ++line_;
      auto start = text.find_first_not_of(" \t\r");
      if (start == std::string::npos || text[start] == 'c' || text[start] == '%') continue;
      fields.clear();
      fields.str(text);
      fields.imbue(std::locale::classic());
      return true;
    }
    return false;
  }

  int line() const { return line_; }

 private:
  std::istream& in_;
  int line_ = 0;
};

template <typename... T>
void expect(std::istringstream& fields, int line, const char* what, T&... out) {
  if (!((fields >> out) && ...)) throw ParseError(line, std::string("malformed ") + what);
}

void write_comment(std::ostream& out, const std::string& comment) {
  if (!comment.empty()) out << "c " << comment << '\n';
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  return in;
}

}  // namespace

Graph read_graph(std::istream& in) {
  LineReader reader(in);
  std::istringstream f;
  if (!reader.next(f)) throw ParseError(reader.line(), "missing `p edge` header");
  std::string p, kind;
  int n = 0;
  std::size_t m = 0;
  expect(f, reader.line(), "header", p, kind, n, m);
  if (p != "p" || (kind != "edge" && kind != "col")) throw ParseError(reader.line(), "expected `p edge <n> <m>`");
  std::vector<Edge> edges;
  while (reader.next(f)) {
    std::string tag;
    int u = 0, v = 0;
    expect(f, reader.line(), "edge line", tag, u, v);
    if (tag != "e") throw ParseError(reader.line(), "expected `e <u> <v>`");
    if (u < 1 || v < 1 || u > n || v > n) throw ParseError(reader.line(), "vertex id out of range");
    edges.push_back({u - 1, v - 1});
  }
  if (edges.size() != m) throw ParseError(reader.line(), "header announces " + std::to_string(m) + " edges, found " +
                                                             std::to_string(edges.size()));
  return Graph(n, edges);
}

void write_graph(std::ostream& out, const Graph& g, const std::string& comment) {
  write_comment(out, comment);
  out << "p edge " << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) out << "e " << e.u + 1 << ' ' << e.v + 1 << '\n';
}

MonotoneCnf read_monotone_cnf(std::istream& in) {
  LineReader reader(in);
  std::istringstream f;
  if (!reader.next(f)) throw ParseError(reader.line(), "missing `p cnf` header");
  std::string p, kind;
  int n = 0;
  std::size_t m = 0;
  expect(f, reader.line(), "header", p, kind, n, m);
  if (p != "p" || kind != "cnf") throw ParseError(reader.line(), "expected `p cnf <vars> <clauses>`");
  std::vector<Edge> clauses;
  std::vector<long> lits;
  int clause_line = 0;
  while (reader.next(f)) {
    long lit = 0;
    if (lits.empty()) clause_line = reader.line();
    while (f >> lit) {
      if (lit != 0) {
        lits.push_back(lit);
        continue;
      }
      if (lits.size() != 2) throw ParseError(clause_line, "monotone clauses need exactly two literals");
      for (long l : lits) {
        if (l < 0) throw ParseError(clause_line, "negative literal in a monotone formula");
        if (l > n) throw ParseError(clause_line, "variable out of range");
      }
      clauses.push_back({static_cast<int>(lits[0] - 1), static_cast<int>(lits[1] - 1)});
      lits.clear();
      clause_line = reader.line();
    }
    if (!f.eof()) throw ParseError(reader.line(), "non-numeric token in clause");
  }
  if (!lits.empty()) throw ParseError(clause_line, "clause not terminated by 0");
  if (clauses.size() != m) throw ParseError(reader.line(), "header announces " + std::to_string(m) +
                                                               " clauses, found " + std::to_string(clauses.size()));
  try {
    return MonotoneCnf(n, clauses);
  } catch (const InvalidInput& e) {
    throw ParseError(reader.line(), e.what());
  }
}

void write_cnf(std::ostream& out, const MonotoneCnf& cnf, const std::string& comment) {
  write_comment(out, comment);
  out << "p cnf " << cnf.num_vars() << ' ' << cnf.clauses().size() << '\n';
  for (const Edge& c : cnf.clauses()) out << c.u + 1 << ' ' << c.v + 1 << " 0\n";
}

Nrobp read_bp(std::istream& in) {
  LineReader reader(in);
  std::istringstream f;
  if (!reader.next(f)) throw ParseError(reader.line(), "missing `bp` header");
  std::string tag;
  int nodes = 0, vars = 0, root = 0, leaf = 0;
  std::size_t m = 0;
  expect(f, reader.line(), "header", tag, nodes, m, vars, root, leaf);
  if (tag != "bp") throw ParseError(reader.line(), "expected `bp <nodes> <edges> <vars> <root> <leaf>`");
  std::vector<BpEdge> edges;
  while (reader.next(f)) {
    int tail = 0, head = 0;
    std::string label;
    expect(f, reader.line(), "edge line", tail, head, label);
    BpEdge e{tail, head, std::nullopt};
    if (label != ".") {
      if (label.size() < 2 || (label[0] != '+' && label[0] != '-'))
        throw ParseError(reader.line(), "label must be +v, -v or .");
      int var = 0;
      try {
        std::size_t used = 0;
        var = std::stoi(label.substr(1), &used);
        if (used != label.size() - 1) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ParseError(reader.line(), "bad variable in label " + label);
      }
      e.label = Literal{var, label[0] == '+'};
    }
    edges.push_back(e);
  }
  if (edges.size() != m) throw ParseError(reader.line(), "header announces " + std::to_string(m) + " edges, found " +
                                                             std::to_string(edges.size()));
  try {
    return Nrobp(nodes, vars, root, leaf, std::move(edges));
  } catch (const InvalidInput& e) {
    throw ParseError(reader.line(), e.what());
  }
}

void write_bp(std::ostream& out, const Nrobp& z) {
  const Nrobp canon = renumber_topologically(z);
  out << "bp " << canon.num_nodes() << ' ' << canon.size() << ' ' << canon.num_vars() << ' ' << canon.root() << ' '
      << canon.leaf() << '\n';
  for (const BpEdge& e : canon.edges()) {
    out << e.tail << ' ' << e.head << ' ';
    if (e.label)
      out << (e.label->positive ? '+' : '-') << e.label->var;
    else
      out << '.';
    out << '\n';
  }
}

TreeDecomposition read_tree_decomposition(std::istream& in) {
  LineReader reader(in);
  std::istringstream f;
  if (!reader.next(f)) throw ParseError(reader.line(), "missing `td` header");
  std::string tag;
  int bags = 0, largest = 0, n = 0;
  expect(f, reader.line(), "header", tag, bags, largest, n);
  if (tag != "td") throw ParseError(reader.line(), "expected `td <bags> <max bag size> <vertices>`");
  std::vector<int> parent(bags, -2);
  std::vector<VertexSet> members(bags);
  while (reader.next(f)) {
    int node = 0, par = 0;
    expect(f, reader.line(), "bag line", tag, node, par);
    if (tag != "b" || node < 1 || node > bags || par < 0 || par > bags)
      throw ParseError(reader.line(), "expected `b <node> <parent> <members...>` with valid ids");
    if (parent[node - 1] != -2) throw ParseError(reader.line(), "bag listed twice");
    parent[node - 1] = par - 1;
    int v = 0;
    while (f >> v) members[node - 1].push_back(v - 1);
    if (!f.eof()) throw ParseError(reader.line(), "non-numeric bag member");
    std::sort(members[node - 1].begin(), members[node - 1].end());
  }
  for (int p : parent)
    if (p == -2) throw ParseError(reader.line(), "missing bag line");
  try {
    return TreeDecomposition{LabeledTree(std::move(parent)), std::move(members)};
  } catch (const InvalidInput& e) {
    throw ParseError(reader.line(), e.what());
  }
}

void write_tree_decomposition(std::ostream& out, const TreeDecomposition& td, const std::string& comment) {
  write_comment(out, comment);
  int n = 0;
  for (const auto& bag : td.bags)
    for (Vertex v : bag) n = std::max(n, v + 1);
  out << "td " << td.bags.size() << ' ' << td.width() + 1 << ' ' << n << '\n';
  for (int t = 0; t < td.tree.num_nodes(); ++t) {
    out << "b " << t + 1 << ' ' << td.tree.parent(t) + 1;
    for (Vertex v : td.bags[t]) out << ' ' << v + 1;
    out << '\n';
  }
}

std::string format_number(double value) {
  std::ostringstream s;
  s.imbue(std::locale::classic());
  s.precision(12);
  s << value;
  return s.str();
}

void write_certificate(std::ostream& out, const CutCoverCertificate& cert, int max_degree) {
  for (int i = 0; i < cert.q(); ++i) {
    out << "u " << cert.cut_nodes[i] << " B";
    for (Vertex v : cert.dis_sets[i]) out << ' ' << v;
    out << " M";
    for (const Edge& e : cert.matchings[i]) out << ' ' << e.u << '-' << e.v;
    out << '\n';
  }
  const double bound = std::pow(2.0, cert.dmw / constants(std::max(1, max_degree)).a_x);
  out << "q=" << cert.q() << " dmw=" << cert.dmw << " bound=" << format_number(bound) << '\n';
}

Graph read_graph_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_graph(in);
}

MonotoneCnf read_cnf_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_monotone_cnf(in);
}

Nrobp read_bp_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_bp(in);
}

}  // namespace robp
