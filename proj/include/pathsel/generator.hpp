#pragma once

// Search-based input generation: a genetic search over constructor
// argument vectors whose resulting field state must satisfy a target path
// condition. Fitness rewards the length of the satisfied clause prefix plus
// a normalised branch distance on the first violated clause.

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pathsel/concolic.hpp"
#include "pathsel/ir.hpp"
#include "pathsel/random.hpp"
#include "pathsel/symcore.hpp"

namespace pathsel {

struct SearchConfig {
  int population = 50;
  int tournament = 4;
  double crossover_prob = 0.5;  // per gene, uniform crossover
  double resample_prob = 0.1;   // of a mutated gene being drawn afresh
  double mutation_mean = 16.0;  // mean magnitude of a mutation step
  int stagnation_restart = 50;  // generations without improvement
  std::int64_t init_range = std::int64_t{1} << 16;  // fresh genes in [-r, r]
  std::uint64_t step_limit = kDefaultStepLimit;
};

// Either limit may be absent; an exhausted search stops before the
// evaluation that would exceed the evaluation cap or start past the
// deadline.
struct SearchBudget {
  std::optional<std::uint64_t> max_evaluations;
  std::optional<std::chrono::steady_clock::duration> wall;
};

struct FitnessReport {
  double score = 0.0;
  std::size_t satisfied_prefix = 0;
  bool solved = false;
  bool ctor_threw = false;
  bool faulted = false;  // divergence, execution fault or unknown symbol
};

FitnessReport fitness(const ir::UnitDef& unit, const PathCondition& pc, std::span<const std::int64_t> args,
                      std::uint64_t step_limit = kDefaultStepLimit);

enum class SolveStatus { kSolved, kExhausted };

struct SolveResult {
  SolveStatus status = SolveStatus::kExhausted;
  std::optional<TestCase> test;
  std::uint64_t evaluations = 0;
  std::uint64_t generations = 0;
  std::chrono::steady_clock::duration elapsed{};
  double best_score = 0.0;

  bool solved() const { return status == SolveStatus::kSolved; }
};

// Initial population: the all-zeros vector, then `hints` (e.g. the test
// whose path produced the target), then uniform random vectors. Requires a
// non-empty pc.
SolveResult solve(const ir::UnitDef& unit, const PathCondition& pc, const SearchConfig& config,
                  const SearchBudget& budget, Rng& rng, std::span<const std::vector<std::int64_t>> hints = {});

}  // namespace pathsel
