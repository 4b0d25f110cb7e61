#pragma once

// Serialization of run reports (JSON document and per-PC CSV) and the
// knn-versus-fifo comparison summary.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "pathsel/engine.hpp"

namespace pathsel {

nlohmann::ordered_json config_to_json(const EngineConfig& config);
nlohmann::ordered_json report_to_json(const RunReport& report);

// Two-space indented JSON followed by a newline.
std::string report_json_text(const RunReport& report);

// Header plus one row per PC: key,mode,label,voting,outcome,seconds.
void write_csv(std::ostream& out, const RunReport& report);

struct ComparisonRow {
  std::uint64_t seed = 0;
  std::size_t knn_feasible = 0;
  std::size_t knn_infeasible = 0;
  std::size_t fifo_feasible = 0;
  std::size_t fifo_infeasible = 0;
};

struct ComparisonSummary {
  std::vector<ComparisonRow> rows;
  double knn_feasible_mean = 0.0;
  double knn_infeasible_mean = 0.0;
  double fifo_feasible_mean = 0.0;
  double fifo_infeasible_mean = 0.0;
  double ratio = 0.0;  // knn / fifo feasible means; 0 when fifo found none
};

// Runs both modes once per seed with `base` otherwise unchanged.
ComparisonSummary compare_modes(const ir::UnitDef& unit, const EngineConfig& base,
                                const std::vector<std::uint64_t>& seeds);

void print_comparison(std::ostream& out, const ComparisonSummary& summary);
void write_comparison_csv(std::ostream& out, const ComparisonSummary& summary);

}  // namespace pathsel
