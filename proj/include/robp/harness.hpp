#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "robp/errors.hpp"

namespace robp {

enum class OrderStrategy { kNatural, kBest };

struct ExperimentConfig {
  int k = 6;
  int r_min = 1;
  int r_max = 5;
  OrderStrategy order = OrderStrategy::kNatural;
  Caps caps;
  std::size_t max_vertices = 1u << 16;  // larger instances are skipped entirely
};

struct ExperimentRow {
  int k = 0;
  int r = 0;
  std::int64_t n = 0;
  std::optional<std::size_t> edges;
  std::optional<std::size_t> nodes;
  std::optional<std::size_t> best_edges;
  std::optional<int> dmw;
  std::optional<int> q;
  std::optional<double> lb;  // 2^{dmw / a_5}
};

/// One row per r in [r_min, r_max], sorted by (k, r). Cells whose
/// computation would exceed a cap stay empty.
std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config);

/// Header `k,r,n,edges,nodes,best_edges,dmw,q,lb`, `-` for empty cells.
void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows);

struct SuiteOptions {
  Caps caps;
  std::uint64_t seed = 1;
  bool exact = false;
  int max_graph_vertices = 6;  // corpus size for the exhaustive sweeps
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool ok() const;
};

const std::vector<std::string>& suite_names();

/// Throws InvalidInput listing the known suites for an unknown name.
SuiteReport run_suite(const std::string& name, const SuiteOptions& options);

/// `PASS <suite>/<check> <detail>` or `FAIL ...`, one line per check.
void write_report(std::ostream& out, const SuiteReport& report);

}  // namespace robp
