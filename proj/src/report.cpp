#include "pathsel/report.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

namespace pathsel {

using nlohmann::ordered_json;

ordered_json config_to_json(const EngineConfig& c) {
  ordered_json j;
  j["mode"] = std::string(to_string(c.mode));
  j["time_budget_minutes"] = c.time_budget_minutes;
  j["workers"] = c.workers;
  j["pc_budget_seconds"] = c.pc_budget_seconds;
  j["recache_threshold"] = c.recache_threshold;
  j["master_seed"] = c.master_seed;
  j["step_limit"] = c.step_limit;
  j["bucket_probabilities"] = c.bucket_probabilities;
  j["seed_tests"] = c.seed_tests;
  j["seed_range"] = c.seed_range;
  j["clock"] = std::string(to_string(c.clock));
  j["evals_per_second"] = c.evals_per_second;
  j["hash_seed"] = c.hash_seed;
  ordered_json s;
  s["population"] = c.search.population;
  s["tournament"] = c.search.tournament;
  s["crossover_prob"] = c.search.crossover_prob;
  s["resample_prob"] = c.search.resample_prob;
  s["mutation_mean"] = c.search.mutation_mean;
  s["stagnation_restart"] = c.search.stagnation_restart;
  s["init_range"] = c.search.init_range;
  j["search"] = s;
  return j;
}

namespace {

ordered_json counters_to_json(const Counters& k) {
  ordered_json j;
  j["feasible_analyzed"] = k.feasible_analyzed;
  j["infeasible_analyzed"] = k.infeasible_analyzed;
  j["execution_evidence"] = k.execution_evidence;
  j["tests_generated"] = k.tests_generated;
  j["alternatives_synthesized"] = k.alternatives_synthesized;
  j["duplicates_suppressed"] = k.duplicates_suppressed;
  j["seed_ctor_threw"] = k.seed_ctor_threw;
  j["divergences"] = k.divergences;
  j["execution_faults"] = k.execution_faults;
  j["recaches"] = k.recaches;
  j["soundness_failures"] = k.soundness_failures;
  j["label_conflicts"] = k.label_conflicts;
  return j;
}

ordered_json classification_to_json(const std::optional<Classification>& c) {
  if (!c) return nullptr;
  ordered_json j;
  j["label"] = c->label;
  j["voting"] = c->voting;
  j["avg_similarity"] = c->avg_similarity;
  j["trained_on"] = c->trained_on;
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

ordered_json report_to_json(const RunReport& r) {
  ordered_json j;
  j["unit"] = r.unit_name;
  j["config"] = config_to_json(r.config);
  j["counters"] = counters_to_json(r.counters);
  j["coverage"] = {{"branches_covered", r.branches_covered}, {"branches_total", r.branches_total}};
  j["elapsed_seconds"] = r.elapsed_seconds;
  j["training_set_size"] = r.training_set_size;

  ordered_json pcs = ordered_json::array();
  for (const auto& p : r.pcs) {
    ordered_json e;
    e["key"] = p.key;
    e["enqueue_no"] = p.enqueue_no;
    e["clauses"] = p.clauses;
    e["sliced_clauses"] = p.sliced_clauses;
    e["classification"] = classification_to_json(p.classification);
    e["outcome"] = p.outcome;
    if (p.worker >= 0) {
      e["worker"] = p.worker;
      e["picked_at"] = p.picked_at;
      e["seconds"] = p.seconds;
      e["evaluations"] = p.evaluations;
    }
    pcs.push_back(std::move(e));
  }
  j["path_conditions"] = std::move(pcs);

  ordered_json tests = ordered_json::array();
  for (const auto& t : r.tests) {
    ordered_json e;
    e["args"] = t.args;
    e["target"] = t.target_key.empty() ? ordered_json(nullptr) : ordered_json(t.target_key);
    e["outcome"] = t.outcome;
    e["value"] = t.value;
    e["sound"] = t.sound;
    tests.push_back(std::move(e));
  }
  j["tests"] = std::move(tests);

  ordered_json timeline = ordered_json::array();
  for (const auto& ev : r.timeline) timeline.push_back({{"t", ev.t}, {"kind", ev.kind}, {"detail", ev.detail}});
  j["timeline"] = std::move(timeline);
  return j;
}

std::string report_json_text(const RunReport& report) { return report_to_json(report).dump(2) + "\n"; }

void write_csv(std::ostream& out, const RunReport& r) {
  out << "key,mode,label,voting,outcome,seconds\n";
  const std::string mode(to_string(r.config.mode));
  for (const auto& p : r.pcs) {
    out << csv_field(p.key) << ',' << mode << ',';
    if (p.classification) {
      out << p.classification->label << ',' << p.classification->voting;
    } else {
      out << ',';
    }
    out << ',' << p.outcome << ',';
    if (p.worker >= 0) out << p.seconds;
    out << '\n';
  }
}

ComparisonSummary compare_modes(const ir::UnitDef& unit, const EngineConfig& base,
                                const std::vector<std::uint64_t>& seeds) {
  ComparisonSummary s;
  for (auto seed : seeds) {
    ComparisonRow row;
    row.seed = seed;
    EngineConfig c = base;
    c.master_seed = seed;
    c.mode = Mode::kKnn;
    const RunReport knn = run(unit, c);
    c.mode = Mode::kFifo;
    const RunReport fifo = run(unit, c);
    row.knn_feasible = knn.counters.feasible_analyzed;
    row.knn_infeasible = knn.counters.infeasible_analyzed;
    row.fifo_feasible = fifo.counters.feasible_analyzed;
    row.fifo_infeasible = fifo.counters.infeasible_analyzed;
    s.rows.push_back(row);
  }
  if (!s.rows.empty()) {
    const double n = static_cast<double>(s.rows.size());
    for (const auto& r : s.rows) {
      s.knn_feasible_mean += static_cast<double>(r.knn_feasible) / n;
      s.knn_infeasible_mean += static_cast<double>(r.knn_infeasible) / n;
      s.fifo_feasible_mean += static_cast<double>(r.fifo_feasible) / n;
      s.fifo_infeasible_mean += static_cast<double>(r.fifo_infeasible) / n;
    }
  }
  s.ratio = s.fifo_feasible_mean > 0.0 ? s.knn_feasible_mean / s.fifo_feasible_mean : 0.0;
  return s;
}

void print_comparison(std::ostream& out, const ComparisonSummary& s) {
  out << std::left << std::setw(8) << "seed" << std::right << std::setw(14) << "knn-feasible" << std::setw(16)
      << "knn-infeasible" << std::setw(15) << "fifo-feasible" << std::setw(17) << "fifo-infeasible" << '\n';
  for (const auto& r : s.rows) {
    out << std::left << std::setw(8) << r.seed << std::right << std::setw(14) << r.knn_feasible << std::setw(16)
        << r.knn_infeasible << std::setw(15) << r.fifo_feasible << std::setw(17) << r.fifo_infeasible << '\n';
  }
  out << std::fixed << std::setprecision(2);
  out << std::left << std::setw(8) << "mean" << std::right << std::setw(14) << s.knn_feasible_mean << std::setw(16)
      << s.knn_infeasible_mean << std::setw(15) << s.fifo_feasible_mean << std::setw(17) << s.fifo_infeasible_mean
      << '\n';
  out << "ratio (knn/fifo feasible): " << s.ratio << '\n';
  out << std::defaultfloat;
}

void write_comparison_csv(std::ostream& out, const ComparisonSummary& s) {
  out << "seed,knn_feasible,knn_infeasible,fifo_feasible,fifo_infeasible\n";
  for (const auto& r : s.rows) {
    out << r.seed << ',' << r.knn_feasible << ',' << r.knn_infeasible << ',' << r.fifo_feasible << ','
        << r.fifo_infeasible << '\n';
  }
  std::ostringstream m;
  m << std::fixed << std::setprecision(4) << "mean," << s.knn_feasible_mean << ',' << s.knn_infeasible_mean << ','
    << s.fifo_feasible_mean << ',' << s.fifo_infeasible_mean << '\n';
  out << m.str();
}

}  // namespace pathsel
