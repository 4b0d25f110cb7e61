#include "pathsel/engine.hpp"

#include <chrono>
#include <future>
#include <map>
#include <set>
#include <thread>
#include <unordered_set>

#include "pathsel/random.hpp"
#include "pathsel/slicer.hpp"

namespace pathsel {

std::string_view to_string(Mode m) { return m == Mode::kKnn ? "knn" : "fifo"; }
std::string_view to_string(ClockKind c) { return c == ClockKind::kVirtual ? "virtual" : "wall"; }

EngineConfig EngineConfig::paper_scale() {
  EngineConfig c;
  c.time_budget_minutes = 30.0;
  c.pc_budget_seconds = 180.0;
  c.workers = 5;
  return c;
}

std::vector<std::string> EngineConfig::problems() const {
  std::vector<std::string> out;
  if (!(time_budget_minutes > 0.0)) out.emplace_back("time budget must be positive");
  if (!(pc_budget_seconds > 0.0)) out.emplace_back("per-path-condition budget must be positive");
  if (workers < 1) out.emplace_back("workers must be at least 1");
  if (recache_threshold < 1) out.emplace_back("recache threshold must be at least 1");
  if (step_limit < 1) out.emplace_back("step limit must be positive");
  if (seed_tests < 1) out.emplace_back("at least one seed test is required");
  if (seed_range < 0) out.emplace_back("seed range must be non-negative");
  if (!(evals_per_second > 0.0)) out.emplace_back("evaluation rate must be positive");
  if (!valid_probabilities(bucket_probabilities)) out.emplace_back("bucket probabilities must be >= 0 and sum to 1");
  if (search.population < 2) out.emplace_back("population must be at least 2");
  if (search.tournament < 1) out.emplace_back("tournament size must be at least 1");
  return out;
}

std::string dedup_key(const PathCondition& pc) {
  std::string key = canonical(pc);
  key += pc.suffix_index ? " @" + std::to_string(*pc.suffix_index) : std::string(" @-");
  return key;
}

PathCondition parse_dedup_key(std::string_view key) {
  const auto at = key.rfind(" @");
  if (at == std::string_view::npos) throw ClauseParseError("dedup key lacks suffix marker");
  PathCondition pc = parse_path_condition(key.substr(0, at));
  const std::string_view marker = key.substr(at + 2);
  if (marker != "-") pc.suffix_index = static_cast<std::size_t>(std::stoull(std::string(marker)));
  return pc;
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct InFlight {
  PendingEntry entry;
  std::size_t record = 0;
  double start = 0.0;
  std::future<SolveResult> future;
  std::optional<SolveResult> result;
};

class Coordinator {
 public:
  Coordinator(const ir::UnitDef& unit, const EngineConfig& config)
      : unit_(unit),
        config_(config),
        hashes_(config.hash_seed),
        select_rng_(make_rng(config.master_seed)) {
    report_.unit_name = unit.name;
    report_.config = config;
    report_.branches_total = static_cast<std::size_t>(unit.method_sites) * 2;
  }

  void bootstrap() {
    Rng seed_rng = make_rng(config_.master_seed ^ 0x5EEDC0DEULL);
    for (int i = 0; i < config_.seed_tests; ++i) {
      TestCase test;
      test.args.assign(unit_.params.size(), 0);
      if (i > 0) {
        for (auto& a : test.args) a = uniform_int(seed_rng, -config_.seed_range, config_.seed_range);
      }
      report_.tests.push_back(execute(test, nullptr));
      ++report_.counters.tests_generated;
      event(0.0, "seed", report_.tests.back().outcome);
    }
  }

  bool has_pending() const { return !pending_.empty(); }

  // Picks the next entry and opens its record.
  InFlight take(int worker, double now) {
    InFlight f;
    if (config_.mode == Mode::kFifo) {
      f.entry = std::move(pending_.front());
      pending_.erase(pending_.begin());
    } else {
      f.entry = pick(pending_, select_rng_, config_.bucket_probabilities);
    }
    PcRecord rec;
    rec.key = f.entry.key;
    rec.enqueue_no = f.entry.enqueue_no;
    rec.clauses = f.entry.pc.size();
    rec.sliced_clauses = f.entry.sliced.size();
    rec.classification = f.entry.classification;
    rec.outcome = "pending";
    rec.worker = worker;
    rec.picked_at = now;
    f.record = report_.pcs.size();
    f.start = now;
    report_.pcs.push_back(std::move(rec));
    event(now, "pick", f.entry.key);
    return f;
  }

  void complete(InFlight& f, double end) {
    const SolveResult& res = *f.result;
    PcRecord& rec = report_.pcs[f.record];
    rec.seconds = end - f.start;
    rec.evaluations = res.evaluations;
    if (res.solved()) {
      rec.outcome = "feasible";
      ++report_.counters.feasible_analyzed;
      learn(f.entry.key, f.entry.fp, 1);
      event(end, "solved", f.entry.key);
      report_.tests.push_back(execute(*res.test, &f.entry.pc));
      ++report_.counters.tests_generated;
    } else {
      rec.outcome = "infeasible";
      ++report_.counters.infeasible_analyzed;
      learn(f.entry.key, f.entry.fp, 0);
      event(end, "exhausted", f.entry.key);
    }
    maybe_recache(end);
  }

  RunReport finish(double now) {
    for (const auto& e : pending_) {
      PcRecord rec;
      rec.key = e.key;
      rec.enqueue_no = e.enqueue_no;
      rec.clauses = e.pc.size();
      rec.sliced_clauses = e.sliced.size();
      rec.classification = e.classification;
      rec.outcome = "pending";
      report_.pcs.push_back(std::move(rec));
    }
    pending_.clear();
    report_.branches_covered = covered_.size();
    report_.elapsed_seconds = now;
    report_.training_set_size = training_.size();
    return std::move(report_);
  }

  SearchBudget solve_budget() const {
    SearchBudget b;
    if (config_.clock == ClockKind::kVirtual) {
      b.max_evaluations = static_cast<std::uint64_t>(config_.pc_budget_seconds * config_.evals_per_second + 0.5);
    } else {
      b.wall = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
          std::chrono::duration<double>(config_.pc_budget_seconds));
    }
    return b;
  }

  void event(double t, std::string kind, std::string detail) {
    report_.timeline.push_back({t, std::move(kind), std::move(detail)});
  }

 private:
  EmittedTest execute(const TestCase& test, const PathCondition* target) {
    EmittedTest out;
    out.args = test.args;
    if (target != nullptr) out.target_key = dedup_key(*target);
    try {
      RunResult run = step_budgeted_run(unit_, test, config_.step_limit);
      if (run.ctor_threw()) {
        out.outcome = "ctor-threw";
        if (target == nullptr) {
          ++report_.counters.seed_ctor_threw;
        } else {
          out.sound = false;
          ++report_.counters.soundness_failures;
        }
        return out;
      }
      const ExecutionOutcome& outcome = *run.outcome;
      out.outcome = std::string(to_string(outcome.kind));
      out.value = outcome.value;
      covered_.insert(outcome.covered.begin(), outcome.covered.end());
      if (target != nullptr) {
        out.sound = satisfies(*target, *run.state, outcome.observed_pc);
        if (!out.sound) ++report_.counters.soundness_failures;
      }
      if (!outcome.observed_pc.empty()) {
        learn(dedup_key(outcome.observed_pc), fingerprint_of(outcome.observed_pc, hashes_), 1);
        ++report_.counters.execution_evidence;
        enqueue_alternatives(outcome.observed_pc, test.args);
      }
    } catch (const DivergenceError&) {
      out.outcome = "diverged";
      out.sound = target == nullptr;
      ++report_.counters.divergences;
      if (!out.sound) ++report_.counters.soundness_failures;
    } catch (const ExecutionError&) {
      out.outcome = "fault";
      out.sound = target == nullptr;
      ++report_.counters.execution_faults;
      if (!out.sound) ++report_.counters.soundness_failures;
    }
    return out;
  }

  static bool satisfies(const PathCondition& target, const ConcreteFieldState& state,
                        const PathCondition& observed) {
    try {
      if (evaluate(target, state).satisfied_prefix != target.size()) return false;
    } catch (const EvalError&) {
      return false;
    }
    if (observed.size() < target.size()) return false;
    for (std::size_t i = 0; i < target.size(); ++i) {
      if (!(observed.clauses[i] == target.clauses[i])) return false;
    }
    return true;
  }

  void learn(const std::string& key, const Fingerprint& fp, int label) {
    auto [it, inserted] = labels_.emplace(key, label);
    if (!inserted && it->second != label) ++report_.counters.label_conflicts;
    training_.add(fp, label);
  }

  void enqueue_alternatives(const PathCondition& observed, const std::vector<std::int64_t>& origin) {
    for (auto& alt : synthesize_alternatives(observed)) {
      std::string key = dedup_key(alt);
      if (!seen_.insert(key).second) {
        ++report_.counters.duplicates_suppressed;
        continue;
      }
      PendingEntry e;
      e.sliced = slice(alt);
      e.fp = fingerprint_of(e.sliced, hashes_);
      e.pc = std::move(alt);
      e.key = std::move(key);
      e.enqueue_no = next_enqueue_no_++;
      e.origin_args = origin;
      if (config_.mode == Mode::kKnn) e.classification = classify(e.fp, training_);
      pending_.push_back(std::move(e));
      ++report_.counters.alternatives_synthesized;
    }
  }

  void maybe_recache(double now) {
    if (config_.mode != Mode::kKnn || !needs_recache(training_, config_.recache_threshold)) return;
    for (auto& e : pending_) {
      if (!e.classification || e.classification->trained_on != training_.size()) {
        e.classification = classify(e.fp, training_);
      }
    }
    training_.mark_recached();
    ++report_.counters.recaches;
    event(now, "recache", std::to_string(training_.size()));
  }

  const ir::UnitDef& unit_;
  const EngineConfig& config_;
  HashFamily hashes_;
  Rng select_rng_;
  TrainingSet training_;
  std::vector<PendingEntry> pending_;  // enqueue order
  std::unordered_set<std::string> seen_;
  std::map<std::string, int> labels_;
  std::set<BranchId> covered_;
  std::uint64_t next_enqueue_no_ = 0;
  RunReport report_;
};

std::future<SolveResult> launch(const ir::UnitDef& unit, const EngineConfig& config, const PendingEntry& entry,
                                SearchBudget budget) {
  return std::async(std::launch::async, [&unit, &config, pc = entry.pc, hints = entry.origin_args,
                                         seed = config.master_seed + entry.enqueue_no, budget] {
    Rng rng = make_rng(seed);
    std::vector<std::vector<std::int64_t>> hint_list;
    if (!hints.empty()) hint_list.push_back(hints);
    return solve(unit, pc, config.search, budget, rng, hint_list);
  });
}

RunReport run_virtual(Coordinator& coord, const ir::UnitDef& unit, const EngineConfig& config) {
  const double budget = config.time_budget_minutes * 60.0;
  const SearchBudget solve_budget = coord.solve_budget();
  std::vector<std::optional<InFlight>> workers(static_cast<std::size_t>(config.workers));
  double now = 0.0;
  bool expired = false;
  for (;;) {
    if (now < budget) {
      for (std::size_t w = 0; w < workers.size() && coord.has_pending(); ++w) {
        if (workers[w]) continue;
        workers[w] = coord.take(static_cast<int>(w), now);
        workers[w]->future = launch(unit, config, workers[w]->entry, solve_budget);
      }
    } else if (!expired) {
      expired = true;
      coord.event(now, "budget-expired", "");
    }
    std::optional<std::size_t> next;
    double next_end = 0.0;
    for (std::size_t w = 0; w < workers.size(); ++w) {
      if (!workers[w]) continue;
      if (!workers[w]->result) workers[w]->result = workers[w]->future.get();
      const double end = workers[w]->start + static_cast<double>(workers[w]->result->evaluations) /
                                                 config.evals_per_second;
      if (!next || end < next_end) {
        next = w;
        next_end = end;
      }
    }
    if (!next) break;
    now = std::max(now, next_end);
    coord.complete(*workers[*next], now);
    workers[*next].reset();
  }
  return coord.finish(now);
}

RunReport run_wall(Coordinator& coord, const ir::UnitDef& unit, const EngineConfig& config) {
  const double budget = config.time_budget_minutes * 60.0;
  const SearchBudget solve_budget = coord.solve_budget();
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::optional<InFlight>> workers(static_cast<std::size_t>(config.workers));
  bool expired = false;
  for (;;) {
    double now = seconds_since(start);
    if (now < budget) {
      for (std::size_t w = 0; w < workers.size() && coord.has_pending(); ++w) {
        if (workers[w]) continue;
        workers[w] = coord.take(static_cast<int>(w), now);
        workers[w]->future = launch(unit, config, workers[w]->entry, solve_budget);
      }
    } else if (!expired) {
      expired = true;
      coord.event(now, "budget-expired", "");
    }
    bool busy = false;
    for (const auto& w : workers) busy = busy || w.has_value();
    if (!busy) return coord.finish(now);

    std::optional<std::size_t> ready;
    while (!ready) {
      for (std::size_t w = 0; w < workers.size() && !ready; ++w) {
        if (workers[w] && workers[w]->future.wait_for(std::chrono::milliseconds(1)) == std::future_status::ready) {
          ready = w;
        }
      }
    }
    workers[*ready]->result = workers[*ready]->future.get();
    coord.complete(*workers[*ready], seconds_since(start));
    workers[*ready].reset();
  }
}

}  // namespace

RunReport run(const ir::UnitDef& unit, const EngineConfig& config) {
  Coordinator coord(unit, config);
  coord.bootstrap();
  return config.clock == ClockKind::kVirtual ? run_virtual(coord, unit, config) : run_wall(coord, unit, config);
}

}  // namespace pathsel
