#pragma once

// The test-generation loop: execute tests concolically, synthesize and
// slice alternative path conditions, classify them, pick one, search for an
// input that satisfies it, and feed the outcome back into the training set.
//
// Time is measured on one of two clocks. The virtual clock charges each
// fitness evaluation 1/evals_per_second seconds and replays worker
// completions in virtual-time order, so a run is a deterministic function
// of its configuration. The wall clock uses real elapsed time and real
// completion order.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pathsel/concolic.hpp"
#include "pathsel/fingerprint.hpp"
#include "pathsel/generator.hpp"
#include "pathsel/ir.hpp"
#include "pathsel/learner.hpp"
#include "pathsel/selector.hpp"
#include "pathsel/symcore.hpp"

namespace pathsel {

enum class Mode { kKnn, kFifo };
enum class ClockKind { kVirtual, kWall };

std::string_view to_string(Mode m);
std::string_view to_string(ClockKind c);

struct EngineConfig {
  Mode mode = Mode::kKnn;
  double time_budget_minutes = 3.0;
  int workers = 2;
  double pc_budget_seconds = 20.0;
  std::size_t recache_threshold = 5;
  std::uint64_t master_seed = 42;
  std::uint64_t step_limit = kDefaultStepLimit;
  BucketProbabilities bucket_probabilities = kDefaultBucketProbabilities;
  int seed_tests = 3;                  // all-zeros plus seed_tests - 1 random vectors
  std::int64_t seed_range = 100;       // random seed arguments drawn from [-r, r]
  ClockKind clock = ClockKind::kVirtual;
  double evals_per_second = 1000.0;    // virtual clock rate
  std::uint64_t hash_seed = kDefaultHashSeed;
  SearchConfig search;

  // Paper-scale budgets: 30 minutes, 180 s per path condition, 5 workers.
  static EngineConfig paper_scale();

  // Empty when usable.
  std::vector<std::string> problems() const;
};

struct PcRecord {
  std::string key;
  std::uint64_t enqueue_no = 0;
  std::size_t clauses = 0;
  std::size_t sliced_clauses = 0;
  std::optional<Classification> classification;  // at pick time (knn mode)
  std::string outcome;                           // feasible | infeasible | pending
  int worker = -1;
  double picked_at = 0.0;
  double seconds = 0.0;
  std::uint64_t evaluations = 0;
};

struct EmittedTest {
  std::vector<std::int64_t> args;
  std::string target_key;  // empty for seed tests
  std::string outcome;     // returned | assertion-violated | threw | ctor-threw | diverged | fault
  std::string value;
  bool sound = true;  // target clauses hold and prefix the observed path
};

struct TimelineEvent {
  double t = 0.0;
  std::string kind;
  std::string detail;
};

struct Counters {
  std::size_t feasible_analyzed = 0;    // label-1 additions from solved picks
  std::size_t infeasible_analyzed = 0;  // label-0 additions from exhausted picks
  std::size_t execution_evidence = 0;   // label-1 additions from executed paths
  std::size_t tests_generated = 0;      // seeds plus solved picks
  std::size_t alternatives_synthesized = 0;
  std::size_t duplicates_suppressed = 0;
  std::size_t seed_ctor_threw = 0;
  std::size_t divergences = 0;
  std::size_t execution_faults = 0;
  std::size_t recaches = 0;
  std::size_t soundness_failures = 0;
  std::size_t label_conflicts = 0;
};

struct RunReport {
  std::string unit_name;
  EngineConfig config;
  Counters counters;
  std::vector<PcRecord> pcs;  // picked entries in pick order, then leftovers
  std::vector<EmittedTest> tests;
  std::size_t branches_covered = 0;
  std::size_t branches_total = 0;
  std::vector<TimelineEvent> timeline;
  double elapsed_seconds = 0.0;
  std::size_t training_set_size = 0;
};

// Canonical clauses joined by " && ", then " @<suffix index>" (or " @-"
// for path conditions without a suffix).
std::string dedup_key(const PathCondition& pc);
// Inverse of dedup_key for keys over plain field names.
PathCondition parse_dedup_key(std::string_view key);

RunReport run(const ir::UnitDef& unit, const EngineConfig& config);

}  // namespace pathsel
