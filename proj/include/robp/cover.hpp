#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "robp/bp.hpp"
#include "robp/graph.hpp"
#include "robp/rational.hpp"

namespace robp {

/// What is known about the unread part of G at an NFBDD node.
struct NodeContext {
  int node = -1;
  VertexSet vert;        // vertices whose variables are unread on root paths to node
  VertexSet free;        // vertices that can still be assigned false below node
  std::vector<int> ld;   // ld[v]: neighbours of v inside vert, for every v in V(G)
};

/// Computed from one root-to-node path P1 as V(G) minus (Vert(A(P1)) plus
/// the neighbours of the negatively assigned vertices of P1). Requires y to
/// realize phi(g). Throws InvalidInput for a node id out of range.
NodeContext node_context(const Nfbdd& y, const Graph& g, int a);

/// 1 / out-degree of the edge's tail.
template <typename Scalar>
Scalar edge_weight(const Nfbdd& y, int edge_id);

/// Total weight of all node-to-leaf paths, for every node.
template <typename Scalar>
std::vector<Scalar> path_weights(const Nfbdd& y);

template <typename Scalar>
Scalar path_weight_total(const Nfbdd& y, int a);

/// Weight of the node-to-leaf paths on which every variable of s is
/// positive, for every node. DP over (node, unmet subset of s). Throws
/// CapExceeded when |s| > cap.
template <typename Scalar>
std::vector<Scalar> covered_weights(const Nfbdd& y, std::span<const Vertex> s,
                                    std::size_t cap = Caps{}.cover_subset);

template <typename Scalar>
Scalar covered_weight(const Nfbdd& y, int a, std::span<const Vertex> s,
                      std::size_t cap = Caps{}.cover_subset);

/// 1 - 2^{-(ld + 1)}.
template <typename Scalar>
Scalar local_factor(int ld);

/// Product of local_factor(ld[v]) over b. Throws InvalidInput unless b is a
/// subset of ctx.vert.
template <typename Scalar>
Scalar relative_weight(const NodeContext& ctx, std::span<const Vertex> b);

/// All DISes of g with min_size <= |B| <= max_size, each sorted, in
/// lexicographic order.
std::vector<VertexSet> distant_independent_sets(const Graph& g, int min_size, int max_size);

/// Every out-degree-1 non-leaf node leaves through a positive edge.
bool onepos_holds(const Nfbdd& y);

struct DeepcoverViolation {
  std::string check;  // "deepcover", "freeaprime" or "rwdecomp"
  int node = -1;
  VertexSet b;
  double lhs = 0.0;
  double rhs = 0.0;

  friend auto operator<=>(const DeepcoverViolation&, const DeepcoverViolation&) = default;
};

struct DeepcoverReport {
  std::size_t checked = 0;           // (node, B) pairs compared
  std::size_t freeaprime_checks = 0;  // (edge, B) pairs
  std::vector<DeepcoverViolation> violations;  // sorted

  bool ok() const { return violations.empty(); }
};

/// For every node a and every DIS B inside Free_a with |B| <= max_size,
/// checks covered_weight <= relative_weight (+1e-9 in float mode, exactly
/// with exact = true). Along each out-edge also checks the Free_{a'}
/// inclusions and the rw recurrences.
DeepcoverReport verify_deepcover(const Nfbdd& y, const Graph& g, int max_size = 3, bool exact = false);

struct DisCover {
  int q = 0;
  std::vector<VertexSet> cover;
};

/// Minimum number of size-t DISes covering every satisfying assignment of
/// phi(g), by exact set-cover search. nullopt when some satisfying
/// assignment contains no size-t DIS at all. Throws InvalidInput when g has
/// no DIS of size t.
std::optional<DisCover> min_dis_cover(const Graph& g, int t, std::size_t cap = Caps{}.vars);

/// Exact test of q >= (1 / (1 - 2^{-(x+1)}))^t.
bool cover_bound_holds(std::int64_t q, int x, int t);

struct LowerBoundConstants {
  int x = 0;
  double a_x = 0.0;
  double cover_base = 0.0;  // 1 / (1 - 2^{-(x+1)}) = 2^{1/a_x}
  Rational cover_base_exact;
};

LowerBoundConstants constants(int x);

/// Bookkeeping for the asymptotic statements: mw >= (log n * k) / 32,
/// dmw >= mw / 61 at degree 5, size >= 2^{dmw / a_5}.
struct AsymptoticConstants {
  int mw_factor = 32;
  int distant_factor = 61;
  double a5 = 0.0;
  double c = 0.0;  // a5 * 32 * 61
};

AsymptoticConstants asymptotic_constants();

struct CutCoverCertificate {
  int dmw = 0;
  std::vector<int> cut_nodes;
  std::vector<VertexSet> dis_sets;
  std::vector<Matching> matchings;

  int q() const { return static_cast<int>(cut_nodes.size()); }
};

/// Raised when neither endpoint of a matching edge covers every path through
/// its cut node.
class CutCoverFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Picks u(P) on every root-leaf path at the earliest split carrying a
/// distant cross matching of size dmw(g), then for each cut node one
/// endpoint per matching edge covering all paths through the node (lower
/// id on ties). z must be uniform and realize phi(g).
CutCoverCertificate extract_cut_cover(const Nrobp& z, const Graph& g, const Caps& caps = {});

struct CertificateCheck {
  bool is_cut = false;            // every root-leaf path meets a cut node
  bool dis_ok = false;            // each B_i is a DIS of size dmw, one end per M_i edge
  bool matchings_distant = false;
  bool covers_all = false;        // every satisfying assignment covered by some B_i
  bool bound_holds = false;       // q >= 2^{dmw / a_x}, exactly

  bool ok() const { return is_cut && dis_ok && matchings_distant && covers_all && bound_holds; }
};

CertificateCheck check_certificate(const CutCoverCertificate& cert, const Nrobp& z, const Graph& g,
                                   std::size_t cap = Caps{}.vars);

}  // namespace robp
