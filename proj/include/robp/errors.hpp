#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace robp {

// Input violates an operation's precondition.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An exhaustive routine was asked to work beyond its configured cap.
class CapExceeded : public std::length_error {
 public:
  CapExceeded(const std::string& what, std::size_t requested, std::size_t cap)
      : std::length_error(what + ": " + std::to_string(requested) +
                          " exceeds cap " + std::to_string(cap)),
        requested_(requested),
        cap_(cap) {}

  std::size_t requested() const noexcept { return requested_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t requested_;
  std::size_t cap_;
};

// Default limits for the exhaustive oracles. Every operation that takes a cap
// also accepts an explicit value.
struct Caps {
  std::size_t vars = 20;          // truth-table enumeration
  std::size_t subset = 22;        // subset DP over vertex sets
  std::size_t best_order = 12;    // variable-order search
  std::size_t cover_subset = 10;  // |S| in covered_weight
  std::size_t cross_edges = 64;   // cut_distant_matching_size search
  std::size_t paths = 1u << 20;   // root-leaf path enumeration
};

}  // namespace robp
